//! The experiment driver: predict the splitting pattern via genus theory,
//! factor H_D mod p via DDF, compare. Sweeps over ranges of (D, p), the
//! root-density experiment, and the on-disk class-polynomial cache.
//!
//! Primes dividing D are reported as `skipped_ramified` and primes where
//! H_D mod p is not squarefree (p divides disc H_D) as
//! `skipped_nonsquarefree`; the law makes no claim there. Everything else
//! must match: a mismatch is an implementation bug somewhere in the
//! pipeline.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{Ratio, Rational64};
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::classpoly::{hilbert_class_poly_with, ClassPolyOptions, ClassPolynomial};
use crate::ffpoly::{ddf, reduce_mod, roots_seeded, DEFAULT_SEED};
use crate::genus::{predict, theoretical_density, FundamentalDiscriminant, Prediction, SplittingPattern};
use crate::numtheory::{is_prime, primes_in_range};
use crate::quadforms::ClassGroup;
use crate::{Error, Result};

/// Outcome of one (D, p) comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    SkippedNonsquarefree,
    SkippedRamified,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::SkippedNonsquarefree => "skipped_nonsquarefree",
            Status::SkippedRamified => "skipped_ramified",
        })
    }
}

/// The comparison of predicted and actual splitting patterns at one prime.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub d: i64,
    pub p: u64,
    pub status: Status,
    pub prediction: Option<Prediction>,
    pub actual: Option<SplittingPattern>,
}

/// Aggregated sweep outcome; `mismatch_reports` is empty for a correct
/// implementation.
#[derive(Debug, Clone, Default)]
pub struct SweepSummary {
    pub total: u64,
    pub matches: u64,
    pub mismatches: u64,
    pub skipped_ramified: u64,
    pub skipped_nonsquarefree: u64,
    pub mismatch_reports: Vec<VerificationReport>,
}

/// Empirical vs theoretical density of primes where H_D has a root.
#[derive(Debug, Clone)]
pub struct DensityReport {
    pub d: i64,
    pub x_max: u64,
    pub primes_tested: u64,
    pub primes_with_root: u64,
    pub skipped_ramified: u64,
    pub skipped_nonsquarefree: u64,
    /// Primes where the predictor and the actual roots disagreed; always 0
    /// for a correct implementation.
    pub mismatches: u64,
    pub empirical: Ratio<u64>,
    pub theoretical: Rational64,
    pub abs_deviation: f64,
}

const CHECKSUM_MODULUS: u64 = (1 << 61) - 1;

fn checksum(coeffs: &[BigInt]) -> u64 {
    let sum: BigInt = coeffs.iter().sum();
    sum.mod_floor(&BigInt::from(CHECKSUM_MODULUS))
        .to_u64()
        .expect("reduced checksum fits")
}

/// One text record per discriminant, `hd_<|D|>.txt`:
///
/// ```text
/// D <decimal>
/// h <decimal>
/// coeffs <c_0> <c_1> ... <c_h>
/// check <decimal>
/// ```
///
/// `check` is the coefficient sum reduced mod 2^61 - 1. Writes go to a
/// temporary file and are renamed into place.
#[derive(Debug, Clone)]
pub struct HdCache {
    dir: PathBuf,
}

impl HdCache {
    pub fn new(dir: impl Into<PathBuf>) -> HdCache {
        HdCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn record_path(&self, d: i64) -> PathBuf {
        self.dir.join(format!("hd_{}.txt", d.unsigned_abs()))
    }

    pub fn store(&self, poly: &ClassPolynomial) -> Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let d = poly.disc().d();
        let coeffs: Vec<String> = poly.coeffs().iter().map(|c| c.to_string()).collect();
        let body = format!(
            "D {}\nh {}\ncoeffs {}\ncheck {}\n",
            d,
            poly.degree(),
            coeffs.join(" "),
            checksum(poly.coeffs())
        );
        let tmp = self
            .dir
            .join(format!("hd_{}.txt.tmp.{}", d.unsigned_abs(), std::process::id()));
        std::fs::write(&tmp, body)?;
        std::fs::rename(&tmp, self.record_path(d))?;
        Ok(())
    }

    /// Load and fully validate a record; `Ok(None)` when absent.
    pub fn load(&self, d: i64) -> Result<Option<ClassPolynomial>> {
        let path = self.record_path(d);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let fail = |reason: &str| Error::CacheIntegrity {
            d,
            reason: reason.to_string(),
        };
        let mut lines = text.lines();
        let d_line = lines.next().ok_or_else(|| fail("missing D line"))?;
        let h_line = lines.next().ok_or_else(|| fail("missing h line"))?;
        let c_line = lines.next().ok_or_else(|| fail("missing coeffs line"))?;
        let k_line = lines.next().ok_or_else(|| fail("missing check line"))?;

        let d_rec: i64 = d_line
            .strip_prefix("D ")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| fail("malformed D line"))?;
        if d_rec != d {
            return Err(fail(&format!("record is for discriminant {d_rec}")));
        }
        let h_rec: usize = h_line
            .strip_prefix("h ")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| fail("malformed h line"))?;
        let coeffs: Vec<BigInt> = c_line
            .strip_prefix("coeffs ")
            .ok_or_else(|| fail("malformed coeffs line"))?
            .split_whitespace()
            .map(|s| s.parse::<BigInt>().map_err(|_| fail("non-integer coefficient")))
            .collect::<std::result::Result<_, _>>()?;
        let check: u64 = k_line
            .strip_prefix("check ")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| fail("malformed check line"))?;

        if coeffs.len() != h_rec + 1 {
            return Err(fail("coefficient count does not match h"));
        }
        if coeffs.last() != Some(&BigInt::one()) {
            return Err(fail("polynomial is not monic"));
        }
        if checksum(&coeffs) != check {
            return Err(fail("checksum mismatch"));
        }
        let disc = FundamentalDiscriminant::new(d)
            .map_err(|_| fail("discriminant is not fundamental"))?;
        if h_rec as u64 != crate::quadforms::class_number(&disc) {
            return Err(fail("degree does not equal the class number"));
        }
        Ok(Some(ClassPolynomial::from_parts(disc, coeffs)?))
    }
}

struct DiscData {
    disc: FundamentalDiscriminant,
    group: ClassGroup,
    poly: ClassPolynomial,
}

/// Orchestrates prediction vs factorization, with an in-memory memo and an
/// optional on-disk cache for class polynomials.
///
/// All verification entry points are pure given the cached data, so sweeps
/// fan out over rayon and reduce into deterministic, order-independent
/// reports.
pub struct Verifier {
    cache: Option<HdCache>,
    opts: ClassPolyOptions,
    seed: u64,
    memo: Mutex<HashMap<i64, Arc<DiscData>>>,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier::new()
    }
}

impl Verifier {
    pub fn new() -> Verifier {
        Verifier {
            cache: None,
            opts: ClassPolyOptions::default(),
            seed: DEFAULT_SEED,
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// Persist class polynomials under `dir`.
    pub fn cache_dir(mut self, dir: impl Into<PathBuf>) -> Verifier {
        self.cache = Some(HdCache::new(dir));
        self
    }

    pub fn max_bits(mut self, max_bits: u32) -> Verifier {
        self.opts.max_bits = max_bits;
        self
    }

    /// Seed for the randomized root-extraction path.
    pub fn seed(mut self, seed: u64) -> Verifier {
        self.seed = seed;
        self
    }

    fn disc_data(&self, d: i64) -> Result<Arc<DiscData>> {
        if let Some(hit) = self.memo.lock().unwrap().get(&d) {
            return Ok(hit.clone());
        }
        let disc = FundamentalDiscriminant::new(d).map_err(|e| match e {
            Error::NotFundamental(d, why) => Error::Domain(format!(
                "{d} is not a fundamental discriminant: {why}"
            )),
            other => other,
        })?;
        let group = ClassGroup::enumerate(&disc);
        let poly = match &self.cache {
            Some(cache) => match cache.load(d)? {
                Some(poly) => poly,
                None => {
                    let poly = hilbert_class_poly_with(&disc, &self.opts)?;
                    cache.store(&poly)?;
                    poly
                }
            },
            None => hilbert_class_poly_with(&disc, &self.opts)?,
        };
        let data = Arc::new(DiscData { disc, group, poly });
        self.memo.lock().unwrap().entry(d).or_insert_with(|| data.clone());
        Ok(data)
    }

    /// H_D, from the caches when possible.
    pub fn class_polynomial(&self, d: i64) -> Result<ClassPolynomial> {
        Ok(self.disc_data(d)?.poly.clone())
    }

    /// Compare prediction and factorization at a single prime.
    pub fn verify_one(&self, d: i64, p: u64) -> Result<VerificationReport> {
        if p == 2 || !is_prime(p) {
            return Err(Error::Domain(format!("verification requires an odd prime, got {p}")));
        }
        // ramified primes are skipped without touching H_D
        let probe = FundamentalDiscriminant::new(d).map_err(|e| match e {
            Error::NotFundamental(d, why) => {
                Error::Domain(format!("{d} is not a fundamental discriminant: {why}"))
            }
            other => other,
        })?;
        if probe.is_ramified(p) {
            return Ok(VerificationReport {
                d,
                p,
                status: Status::SkippedRamified,
                prediction: None,
                actual: None,
            });
        }
        let data = self.disc_data(d)?;
        verify_with_data(&data, p)
    }

    /// Run `verify_one` for every discriminant in `d_set` and every odd
    /// prime `p <= p_max`. The aggregate is independent of the worker count.
    pub fn sweep(&self, d_set: &[i64], p_max: u64) -> Result<SweepSummary> {
        if p_max < 3 {
            return Err(Error::Domain(format!("sweep requires p_max >= 3, got {p_max}")));
        }
        let data: Vec<Arc<DiscData>> = d_set
            .par_iter()
            .map(|&d| self.disc_data(d))
            .collect::<Result<_>>()?;
        let primes = primes_in_range(3, p_max);
        let pairs: Vec<(&Arc<DiscData>, u64)> = data
            .iter()
            .flat_map(|dd| primes.iter().map(move |&p| (dd, p)))
            .collect();
        let reports: Vec<VerificationReport> = pairs
            .par_iter()
            .map(|&(dd, p)| {
                if dd.disc.is_ramified(p) {
                    Ok(VerificationReport {
                        d: dd.disc.d(),
                        p,
                        status: Status::SkippedRamified,
                        prediction: None,
                        actual: None,
                    })
                } else {
                    verify_with_data(dd, p)
                }
            })
            .collect::<Result<_>>()?;
        let mut summary = SweepSummary {
            total: reports.len() as u64,
            ..SweepSummary::default()
        };
        for r in reports {
            match r.status {
                Status::Match => summary.matches += 1,
                Status::Mismatch => {
                    summary.mismatches += 1;
                    summary.mismatch_reports.push(r);
                }
                Status::SkippedNonsquarefree => summary.skipped_nonsquarefree += 1,
                Status::SkippedRamified => summary.skipped_ramified += 1,
            }
        }
        Ok(summary)
    }

    /// Over odd primes p <= x_max, the fraction at which H_D mod p has a
    /// root, against the theoretical 1/(2h) + 1/2^t. The root indicator is
    /// computed from both the predictor and the actual roots; the two must
    /// agree prime by prime.
    pub fn density_experiment(&self, d: i64, x_max: u64) -> Result<DensityReport> {
        if x_max < 100 {
            return Err(Error::Domain(format!("density requires x_max >= 100, got {x_max}")));
        }
        let data = self.disc_data(d)?;
        let seed = self.seed;
        enum Obs {
            Ramified,
            Nonsquarefree,
            Tested { predicted: bool, actual: bool },
        }
        let observations: Vec<Obs> = primes_in_range(3, x_max)
            .par_iter()
            .map(|&p| -> Result<Obs> {
                if data.disc.is_ramified(p) {
                    return Ok(Obs::Ramified);
                }
                let fp = reduce_mod(&data.poly, p)?;
                if !fp.is_squarefree() {
                    return Ok(Obs::Nonsquarefree);
                }
                let predicted = predict(&data.disc, p, &data.group)?.pattern().has_linear();
                let per_prime_seed = seed ^ p.wrapping_mul(0x9E37_79B9_7F4A_7C15);
                let actual = !roots_seeded(&fp, per_prime_seed).is_empty();
                Ok(Obs::Tested { predicted, actual })
            })
            .collect::<Result<_>>()?;
        let mut report = DensityReport {
            d,
            x_max,
            primes_tested: 0,
            primes_with_root: 0,
            skipped_ramified: 0,
            skipped_nonsquarefree: 0,
            mismatches: 0,
            empirical: Ratio::new(0, 1),
            theoretical: theoretical_density(&data.disc, data.group.h()),
            abs_deviation: 0.0,
        };
        for obs in observations {
            match obs {
                Obs::Ramified => report.skipped_ramified += 1,
                Obs::Nonsquarefree => report.skipped_nonsquarefree += 1,
                Obs::Tested { predicted, actual } => {
                    report.primes_tested += 1;
                    if predicted != actual {
                        report.mismatches += 1;
                    }
                    if actual {
                        report.primes_with_root += 1;
                    }
                }
            }
        }
        if report.primes_tested > 0 {
            report.empirical = Ratio::new(report.primes_with_root, report.primes_tested);
        }
        let emp = report.primes_with_root as f64 / report.primes_tested.max(1) as f64;
        let theo = *report.theoretical.numer() as f64 / *report.theoretical.denom() as f64;
        report.abs_deviation = (emp - theo).abs();
        Ok(report)
    }
}

fn verify_with_data(data: &DiscData, p: u64) -> Result<VerificationReport> {
    let d = data.disc.d();
    let fp = reduce_mod(&data.poly, p)?;
    if !fp.is_squarefree() {
        return Ok(VerificationReport {
            d,
            p,
            status: Status::SkippedNonsquarefree,
            prediction: None,
            actual: None,
        });
    }
    let prediction = predict(&data.disc, p, &data.group)?;
    let actual = ddf(&fp)?;
    let status = if *prediction.pattern() == actual {
        Status::Match
    } else {
        Status::Mismatch
    };
    Ok(VerificationReport {
        d,
        p,
        status,
        prediction: Some(prediction),
        actual: Some(actual),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus::CaseTag;

    #[test]
    fn verify_one_spec_values() {
        let v = Verifier::new();
        let r = v.verify_one(-15, 11).unwrap();
        assert_eq!(r.status, Status::Match);
        assert_eq!(r.prediction.as_ref().unwrap().pattern().entries(), &[(1, 2)]);
        assert_eq!(r.actual.as_ref().unwrap().entries(), &[(1, 2)]);

        let r = v.verify_one(-15, 7).unwrap();
        assert_eq!(r.status, Status::SkippedNonsquarefree);
        assert!(r.prediction.is_none() && r.actual.is_none());

        let r = v.verify_one(-15, 5).unwrap();
        assert_eq!(r.status, Status::SkippedRamified);

        let r = v.verify_one(-15, 17).unwrap();
        assert_eq!(r.status, Status::Match);
        let pred = r.prediction.as_ref().unwrap();
        assert_eq!(pred.case_tag(), CaseTag::Split);
        assert_eq!(pred.f_used(), Some(2));
        assert_eq!(r.actual.as_ref().unwrap().entries(), &[(2, 1)]);
    }

    #[test]
    fn verify_one_rejects_bad_inputs() {
        let v = Verifier::new();
        assert!(v.verify_one(-15, 2).is_err());
        assert!(v.verify_one(-15, 9).is_err());
        assert!(v.verify_one(-12, 7).is_err());
    }

    #[test]
    fn sweep_h1_discriminant_always_linear() {
        let v = Verifier::new();
        let s = v.sweep(&[-4], 100).unwrap();
        assert_eq!(s.total, 24); // odd primes up to 100
        assert_eq!(s.mismatches, 0);
        assert_eq!(s.skipped_ramified, 0);
        assert_eq!(s.skipped_nonsquarefree, 0);
        assert_eq!(s.matches, 24);
    }

    #[test]
    fn sweep_empty_set() {
        let v = Verifier::new();
        let s = v.sweep(&[], 1000).unwrap();
        assert_eq!(s.total, 0);
        assert!(s.mismatch_reports.is_empty());
    }

    #[test]
    fn sweep_small_range_no_mismatches() {
        let v = Verifier::new();
        let ds: Vec<i64> = crate::genus::fundamental_range(-60, -3)
            .iter()
            .map(|d| d.d())
            .collect();
        let s = v.sweep(&ds, 200).unwrap();
        assert_eq!(s.mismatches, 0, "reports: {:?}", s.mismatch_reports);
        assert!(s.matches > 0);
    }

    #[test]
    fn density_small_spec_values() {
        let v = Verifier::new();
        let r = v.density_experiment(-4, 10_000).unwrap();
        assert_eq!(r.primes_with_root, r.primes_tested);
        assert_eq!(r.empirical, Ratio::new(1, 1));
        assert_eq!(r.theoretical, Rational64::new(1, 1));
        assert_eq!(r.abs_deviation, 0.0);
        assert_eq!(r.mismatches, 0);

        let r = v.density_experiment(-15, 10_000).unwrap();
        assert_eq!(r.theoretical, Rational64::new(1, 2));
        assert_eq!(r.skipped_ramified, 2); // 3 and 5
        assert_eq!(r.skipped_nonsquarefree, 2); // 7 and 13 divide disc(H)
        assert_eq!(r.mismatches, 0);
        assert!(r.abs_deviation < 0.05, "deviation {}", r.abs_deviation);
    }

    #[test]
    fn density_rejects_small_bounds() {
        let v = Verifier::new();
        assert!(v.density_experiment(-15, 99).is_err());
    }

    #[test]
    fn cache_roundtrip_and_validation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = HdCache::new(dir.path());
        assert!(cache.load(-163).unwrap().is_none());

        let disc = FundamentalDiscriminant::new(-15).unwrap();
        let poly = crate::classpoly::hilbert_class_poly(&disc).unwrap();
        cache.store(&poly).unwrap();
        let loaded = cache.load(-15).unwrap().unwrap();
        assert_eq!(loaded.coeffs(), poly.coeffs());

        // tamper: change h
        let path = dir.path().join("hd_15.txt");
        let body = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, body.replace("h 2", "h 3")).unwrap();
        assert!(matches!(cache.load(-15), Err(Error::CacheIntegrity { d: -15, .. })));

        // tamper: corrupt a coefficient (checksum catches it)
        cache.store(&poly).unwrap();
        let body = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, body.replace("191025", "191026")).unwrap();
        assert!(matches!(cache.load(-15), Err(Error::CacheIntegrity { .. })));
    }

    #[test]
    fn cache_record_format_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let cache = HdCache::new(dir.path());
        let disc = FundamentalDiscriminant::new(-15).unwrap();
        let poly = crate::classpoly::hilbert_class_poly(&disc).unwrap();
        cache.store(&poly).unwrap();
        let body = std::fs::read_to_string(dir.path().join("hd_15.txt")).unwrap();
        let sum: i64 = -121287375 + 191025 + 1;
        let check = (sum as i128).rem_euclid(((1u64 << 61) - 1) as i128) as u64;
        assert_eq!(
            body,
            format!("D -15\nh 2\ncoeffs -121287375 191025 1\ncheck {check}\n")
        );
    }

    #[test]
    fn verifier_uses_the_cache() {
        let dir = tempfile::tempdir().unwrap();
        let v = Verifier::new().cache_dir(dir.path());
        let _ = v.class_polynomial(-23).unwrap();
        assert!(dir.path().join("hd_23.txt").exists());

        // a fresh verifier picks the record up from disk
        let v2 = Verifier::new().cache_dir(dir.path());
        let p = v2.class_polynomial(-23).unwrap();
        assert_eq!(p.degree(), 3);
    }
}
