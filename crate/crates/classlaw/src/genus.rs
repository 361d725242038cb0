//! Genus theory as executable logic: fundamental-discriminant validation,
//! the star decomposition D = prod q*, the root criterion for inert primes,
//! the three-case splitting predictor, and the theoretical root density.
//!
//! For an odd prime p not dividing D, the prediction for H_D mod p is:
//!
//! * `split` when (D/p) = 1: h/f factors of degree f, with f the order of a
//!   prime form above p in the class group;
//! * `inert_genus` when (D/p) = -1 and (-p/q) = 1 for every odd prime q | D:
//!   exactly 2^(t-1) linear factors and (h - 2^(t-1))/2 quadratics;
//! * `inert_nongenus` otherwise: h/2 quadratic factors.

use num_rational::Rational64;

use crate::numtheory::{factorize, is_prime, kronecker};
use crate::quadforms::{prime_form, ClassGroup};
use crate::{Error, Result};

/// One prime q dividing D together with its signed prime discriminant q*:
/// q* = (-1)^((q-1)/2) * q for odd q, and one of -4, 8, -8 for q = 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeStarFactor {
    q: u64,
    qstar: i64,
}

impl PrimeStarFactor {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn qstar(&self) -> i64 {
        self.qstar
    }
}

/// A validated negative fundamental discriminant D, with its squarefree
/// kernel N (so -N is the squarefree part of D), the number t of distinct
/// primes dividing D, and the star decomposition D = prod q*.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalDiscriminant {
    d: i64,
    n: u64,
    t: u32,
    stars: Vec<PrimeStarFactor>,
}

impl FundamentalDiscriminant {
    /// Validate D: either D = 1 (mod 4) and squarefree, or D = 4m with
    /// m = 2, 3 (mod 4) and m squarefree.
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 {
            return Err(Error::NotFundamental(d, "must be negative".into()));
        }
        let abs_d = d.unsigned_abs();
        let (n, even) = match d.rem_euclid(4) {
            1 => (abs_d, false),
            0 => {
                let m = abs_d / 4;
                // D/4 = -m must be 2 or 3 (mod 4), i.e. m = 1 or 2 (mod 4)
                if m % 4 != 1 && m % 4 != 2 {
                    return Err(Error::NotFundamental(
                        d,
                        format!("D/4 = {} is not 2 or 3 (mod 4)", d / 4),
                    ));
                }
                (m, true)
            }
            _ => {
                return Err(Error::NotFundamental(d, "D is 2 or 3 (mod 4)".into()));
            }
        };
        let fac = factorize(n);
        if let Some(&(p, _)) = fac.factors().iter().find(|&&(_, e)| e > 1) {
            return Err(Error::NotFundamental(
                d,
                format!("kernel {n} is divisible by {p}^2"),
            ));
        }
        let mut stars = Vec::new();
        if even {
            let two_star = if n % 4 == 1 {
                -4
            } else if n % 8 == 2 {
                -8
            } else {
                // the remaining fundamental case is N = 6 (mod 8)
                debug_assert_eq!(n % 8, 6);
                8
            };
            stars.push(PrimeStarFactor { q: 2, qstar: two_star });
        }
        for q in fac.distinct_primes() {
            if q == 2 {
                continue; // folded into the 2* entry above
            }
            let qstar = if q % 4 == 1 { q as i64 } else { -(q as i64) };
            stars.push(PrimeStarFactor { q, qstar });
        }
        let product: i128 = stars.iter().map(|s| s.qstar as i128).product();
        if product != d as i128 {
            return Err(Error::NotFundamental(
                d,
                format!("star product {product} does not recover D"),
            ));
        }
        Ok(FundamentalDiscriminant {
            d,
            n,
            t: stars.len() as u32,
            stars,
        })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// The squarefree kernel N: D = -N or D = -4N.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Number of distinct primes dividing D.
    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn stars(&self) -> &[PrimeStarFactor] {
        &self.stars
    }

    pub fn is_ramified(&self, p: u64) -> bool {
        self.d.unsigned_abs() % p == 0
    }
}

/// All fundamental discriminants D with `lo <= D <= hi`, ordered by |D|
/// ascending.
pub fn fundamental_range(lo: i64, hi: i64) -> Vec<FundamentalDiscriminant> {
    let mut out = Vec::new();
    let mut d = hi.min(-1);
    while d >= lo {
        if let Ok(fd) = FundamentalDiscriminant::new(d) {
            out.push(fd);
        }
        d -= 1;
    }
    out
}

fn require_odd_unramified(disc: &FundamentalDiscriminant, p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Domain(format!("p must be an odd prime, got {p}")));
    }
    if disc.is_ramified(p) {
        return Err(Error::Domain(format!("p = {p} divides D = {}", disc.d())));
    }
    Ok(())
}

/// The root criterion for inert primes: true iff (-p/q) = 1 for every odd
/// prime q dividing D. Vacuously true when N has no odd prime divisor
/// (D = -4 or D = -8).
pub fn stankewicz_criterion(disc: &FundamentalDiscriminant, p: u64) -> Result<bool> {
    require_odd_unramified(disc, p)?;
    for star in disc.stars() {
        if star.q() == 2 {
            continue;
        }
        if kronecker(-(p as i64), star.q() as i64)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// prod over q | D of (q*/p) = (D/p); holds for every valid input, so a
/// `false` return signals an implementation bug.
pub fn symbol_product_identity(disc: &FundamentalDiscriminant, p: u64) -> Result<bool> {
    require_odd_unramified(disc, p)?;
    let mut prod = 1i32;
    for star in disc.stars() {
        prod *= kronecker(star.qstar(), p as i64)?;
    }
    Ok(prod == kronecker(disc.d(), p as i64)?)
}

/// The multiset of (degree, count) of the irreducible factors of a
/// polynomial over F_p, kept sorted by degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplittingPattern {
    entries: Vec<(u64, u64)>,
}

impl SplittingPattern {
    /// Build from (degree, count) pairs; merges repeats, drops zero counts.
    pub fn new(pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut map = std::collections::BTreeMap::new();
        for (d, c) in pairs {
            if c > 0 {
                *map.entry(d).or_insert(0u64) += c;
            }
        }
        SplittingPattern {
            entries: map.into_iter().collect(),
        }
    }

    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    /// Sum of degree * count, i.e. the degree of the factored polynomial.
    pub fn total_degree(&self) -> u64 {
        self.entries.iter().map(|&(d, c)| d * c).sum()
    }

    pub fn count_of_degree(&self, degree: u64) -> u64 {
        self.entries
            .iter()
            .find(|&&(d, _)| d == degree)
            .map_or(0, |&(_, c)| c)
    }

    pub fn has_linear(&self) -> bool {
        self.count_of_degree(1) > 0
    }
}

impl std::fmt::Display for SplittingPattern {
    /// Canonical notation: "d^k" terms joined by "·" in ascending d.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "1^0");
        }
        let terms: Vec<String> = self
            .entries
            .iter()
            .map(|&(d, c)| format!("{d}^{c}"))
            .collect();
        write!(f, "{}", terms.join("\u{b7}"))
    }
}

/// Which case of the splitting law applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// (D/p) = 1.
    Split,
    /// (D/p) = -1 and the root criterion holds.
    InertGenus,
    /// (D/p) = -1 and the root criterion fails.
    InertNongenus,
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CaseTag::Split => "split",
            CaseTag::InertGenus => "inert_genus",
            CaseTag::InertNongenus => "inert_nongenus",
        })
    }
}

/// The predicted splitting pattern of H_D mod p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    case_tag: CaseTag,
    pattern: SplittingPattern,
    f_used: Option<u64>,
}

impl Prediction {
    pub fn case_tag(&self) -> CaseTag {
        self.case_tag
    }

    pub fn pattern(&self) -> &SplittingPattern {
        &self.pattern
    }

    /// The order f of the prime form, present only in the split case.
    pub fn f_used(&self) -> Option<u64> {
        self.f_used
    }
}

/// Predict the splitting pattern of H_D mod p for an odd prime p not
/// dividing D. `group` must be the class group of `disc`.
pub fn predict(disc: &FundamentalDiscriminant, p: u64, group: &ClassGroup) -> Result<Prediction> {
    require_odd_unramified(disc, p)?;
    if group.disc().d() != disc.d() {
        return Err(Error::Domain(format!(
            "class group of {} passed for discriminant {}",
            group.disc().d(),
            disc.d()
        )));
    }
    let h = group.h();
    if kronecker(disc.d(), p as i64)? == 1 {
        let f = prime_form(disc, p)?.order()?;
        debug_assert_eq!(h % f, 0, "order of a class divides h");
        return Ok(Prediction {
            case_tag: CaseTag::Split,
            pattern: SplittingPattern::new([(f, h / f)]),
            f_used: Some(f),
        });
    }
    if stankewicz_criterion(disc, p)? {
        let linears = 1u64 << (disc.t() - 1);
        debug_assert!(h >= linears && (h - linears) % 2 == 0);
        Ok(Prediction {
            case_tag: CaseTag::InertGenus,
            pattern: SplittingPattern::new([(1, linears), (2, (h - linears) / 2)]),
            f_used: None,
        })
    } else {
        debug_assert_eq!(h % 2, 0, "criterion can only fail when h is even");
        Ok(Prediction {
            case_tag: CaseTag::InertNongenus,
            pattern: SplittingPattern::new([(2, h / 2)]),
            f_used: None,
        })
    }
}

/// The density of primes at which H_D has a root: 1/(2h) + 1/2^t, exact.
pub fn theoretical_density(disc: &FundamentalDiscriminant, h: u64) -> Rational64 {
    Rational64::new(1, 2 * h as i64) + Rational64::new(1, 1i64 << disc.t())
}
