//! Hilbert class polynomials H_D(X) with exact integer coefficients.
//!
//! Each reduced form (a, b, c) of discriminant D yields the CM point
//! tau = (-b + i*sqrt(|D|)) / 2a in the fundamental domain; H_D is the monic
//! product of (X - j(tau)) over the reduced forms. j is evaluated from its
//! q-expansion as E4(q)^3 / Delta(q) with Delta = q * (eta quotient)^24 via
//! the sparse pentagonal-number series, at a fixed-point working precision
//! with a height-based bound. Every coefficient must land within 1/4 of an
//! integer; if any does not, the whole computation retries at doubled
//! precision (a few times, then fails loudly).
//!
//! Conjugate forms (a, b, c) and (a, -b, c) contribute conjugate roots, so
//! only one j per pair is evaluated and the expansion runs over real linear
//! and quadratic factors.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bigfloat::{Complex, Real};
use crate::genus::FundamentalDiscriminant;
use crate::quadforms::{ClassGroup, QuadForm};
use crate::{Error, Result};

/// Limits for the class-polynomial construction.
#[derive(Debug, Clone)]
pub struct ClassPolyOptions {
    /// Hard cap on the working precision in bits.
    pub max_bits: u32,
    /// Largest |D| accepted.
    pub max_abs_disc: u64,
}

impl Default for ClassPolyOptions {
    fn default() -> Self {
        ClassPolyOptions {
            max_bits: 1 << 20,
            max_abs_disc: 1_000_000,
        }
    }
}

/// H_D(X): monic, degree h(D), exact integer coefficients (ascending).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPolynomial {
    disc: FundamentalDiscriminant,
    coeffs: Vec<BigInt>,
}

impl ClassPolynomial {
    pub(crate) fn from_parts(disc: FundamentalDiscriminant, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Domain("class polynomial must have degree >= 1".into()));
        }
        if coeffs.last() != Some(&BigInt::one()) {
            return Err(Error::Domain("class polynomial must be monic".into()));
        }
        Ok(ClassPolynomial { disc, coeffs })
    }

    pub fn disc(&self) -> &FundamentalDiscriminant {
        &self.disc
    }

    /// Coefficients in ascending degree; length = degree + 1.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

impl std::fmt::Display for ClassPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}

/// A CM point: a reduced form together with tau = (-b + i*sqrt(|D|)) / 2a.
///
/// Reducedness puts tau in the fundamental domain: Re in [-1/2, 1/2],
/// |tau| >= 1, and Im >= sqrt(3)/2.
#[derive(Debug, Clone)]
pub struct CMPoint {
    form: QuadForm,
    tau: Complex,
}

impl CMPoint {
    pub fn new(form: &QuadForm, bits: u32) -> Result<CMPoint> {
        if !form.is_reduced() {
            return Err(Error::Domain(format!("CM point requires a reduced form, got {form}")));
        }
        let two_a = form.a() * 2;
        let re = Real::from_ratio(&(-form.b()), &two_a, bits);
        let abs_d = -form.discriminant();
        let im = Real::from_bigint(&abs_d, bits).sqrt().div_bigint(&two_a);
        Ok(CMPoint {
            form: form.clone(),
            tau: Complex::new(re, im),
        })
    }

    pub fn form(&self) -> &QuadForm {
        &self.form
    }

    pub fn tau(&self) -> &Complex {
        &self.tau
    }
}

/// Working precision for H_D: total log-height of the roots plus the
/// amplification of the largest root plus a fixed margin. Always exceeds
/// the additive margin of 64 bits.
pub fn precision_bound(disc: &FundamentalDiscriminant, group: &ClassGroup) -> u32 {
    let abs_d = disc.d().unsigned_abs() as f64;
    let sum_inv_a: f64 = group
        .forms()
        .iter()
        .map(|f| 1.0 / f.a().to_f64().expect("reduced a fits in f64"))
        .sum();
    let series = std::f64::consts::PI * abs_d.sqrt() * (sum_inv_a + 1.0) / std::f64::consts::LN_2;
    series.ceil() as u32 + 10 * group.h() as u32 + 64
}

/// Sum of cubes of divisors.
fn sigma3(n: u64) -> u64 {
    let mut s = 0u64;
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            s += d * d * d;
            let e = n / d;
            if e != d {
                s += e * e * e;
            }
        }
        d += 1;
    }
    s
}

/// E4(q) = 1 + 240 * sum sigma3(n) q^n, truncated once the term drops below
/// 2^-(bits+8) of the partial sum.
fn eisenstein_e4(q: &Complex, bits: u32) -> Complex {
    let w = q.bits();
    let mut sum = Complex::one(w);
    let mut qn = q.clone();
    let mut n = 1u64;
    loop {
        let term = qn.mul_i64((240 * sigma3(n)) as i64);
        sum = &sum + &term;
        if term.mag_bits() + (bits as i64 + 8) < sum.mag_bits() {
            break;
        }
        qn = &qn * q;
        n += 1;
        assert!(n < 1 << 20, "E4 series failed to converge");
    }
    sum
}

/// The eta power series without its q^(1/24) prefactor:
/// prod (1 - q^n) = sum_k (-1)^k q^(k(3k-1)/2), over generalized pentagonal
/// exponents. Delta = q * (this)^24.
fn eta_pentagonal(q: &Complex, bits: u32) -> Complex {
    let w = q.bits();
    let mut sum = Complex::one(w);
    let mut k = 1u64;
    loop {
        let e1 = k * (3 * k - 1) / 2;
        let e2 = k * (3 * k + 1) / 2;
        let t1 = q.pow(e1);
        let t2 = q.pow(e2);
        let term = &t1 + &t2;
        if k % 2 == 1 {
            sum = &sum - &term;
        } else {
            sum = &sum + &term;
        }
        if t1.mag_bits() + (bits as i64 + 8) < sum.mag_bits() {
            break;
        }
        k += 1;
        assert!(k < 1 << 16, "eta series failed to converge");
    }
    sum
}

/// The modular j-function at tau, to relative error below 2^-bits.
///
/// Requires Im(tau) >= sqrt(3)/2 (the CM points of reduced forms satisfy
/// this) and enough precision for 1/Delta at this height: roughly twice
/// 2*pi*Im(tau)/ln 2 bits. j = E4^3 / Delta with q = exp(2*pi*i*tau).
pub fn j_invariant(tau: &Complex, bits: u32) -> Result<Complex> {
    let default_cap = ClassPolyOptions::default().max_bits;
    if bits > default_cap {
        return Err(Error::Resource(format!(
            "j at {bits} bits exceeds the maximum of {default_cap}"
        )));
    }
    let y = tau.im.to_f64();
    if y < 0.865 {
        return Err(Error::Domain(format!(
            "Im(tau) = {y:.4} is below sqrt(3)/2: tau must lie in the fundamental domain"
        )));
    }
    let q_mag_bits = 2.0 * std::f64::consts::PI * y / std::f64::consts::LN_2;
    let needed = 2 * q_mag_bits.ceil() as u32 + 32;
    if bits < needed {
        return Err(Error::Domain(format!(
            "{bits} bits is too little for Im(tau) = {y:.2}; need at least {needed}"
        )));
    }
    let w = bits + 64;
    let t = tau.with_bits(w);
    let two_pi = Real::pi(w).mul_i64(2);
    // 2*pi*i*tau = -2*pi*Im(tau) + i*2*pi*Re(tau)
    let z = Complex::new(-&(&two_pi * &t.im), &two_pi * &t.re);
    let q = Complex::exp(&z);
    debug_assert!(!q.is_zero(), "q underflowed at the working precision");
    let e4 = eisenstein_e4(&q, bits);
    let f = eta_pentagonal(&q, bits);
    let f2 = &f * &f;
    let f3 = &f2 * &f;
    let f6 = &f3 * &f3;
    let f12 = &f6 * &f6;
    let f24 = &f12 * &f12;
    let delta = &q * &f24;
    let j = (&(&e4 * &e4) * &e4).div(&delta);
    Ok(j.with_bits(bits))
}

/// Multiply the ascending-coefficient polynomial by (X - r).
fn mul_linear(coeffs: &mut Vec<Real>, r: &Real) {
    let bits = r.bits();
    let n = coeffs.len();
    let mut next = vec![Real::zero(bits); n + 1];
    for (i, c) in coeffs.iter().enumerate() {
        next[i + 1] = &next[i + 1] + c;
        next[i] = &next[i] - &(r * c);
    }
    *coeffs = next;
}

/// Multiply by the real quadratic factor X^2 + b1*X + c0.
fn mul_quadratic(coeffs: &mut Vec<Real>, b1: &Real, c0: &Real) {
    let bits = b1.bits();
    let n = coeffs.len();
    let mut next = vec![Real::zero(bits); n + 2];
    for (i, c) in coeffs.iter().enumerate() {
        next[i + 2] = &next[i + 2] + c;
        next[i + 1] = &next[i + 1] + &(b1 * c);
        next[i] = &next[i] + &(c0 * c);
    }
    *coeffs = next;
}

/// One expansion attempt at a fixed precision.
fn expand_at(disc: &FundamentalDiscriminant, group: &ClassGroup, bits: u32) -> Result<ClassPolynomial> {
    let mut real_roots: Vec<Real> = Vec::new();
    let mut quad_factors: Vec<(Real, Real)> = Vec::new();
    for form in group.forms() {
        if form.b().is_negative() {
            continue; // conjugate of the b > 0 partner
        }
        let point = CMPoint::new(form, bits)?;
        let j = j_invariant(point.tau(), bits)?;
        if form.is_ambiguous() {
            // self-inverse class: j must be real up to the error budget
            let im_mag = j.im.mag_bits();
            if im_mag + 16 >= j.re.mag_bits().max(0) {
                return Err(Error::Precision { d: disc.d(), bits });
            }
            real_roots.push(j.re);
        } else {
            quad_factors.push((j.re.mul_i64(-2), j.norm_sqr()));
        }
    }
    debug_assert_eq!(real_roots.len() + 2 * quad_factors.len(), group.h() as usize);

    let mut coeffs = vec![Real::one(bits)];
    for r in &real_roots {
        mul_linear(&mut coeffs, r);
    }
    for (b1, c0) in &quad_factors {
        mul_quadratic(&mut coeffs, b1, c0);
    }

    let mut out = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        match c.round_strict() {
            Some(z) => out.push(z),
            None => return Err(Error::Precision { d: disc.d(), bits }),
        }
    }
    if out.last() != Some(&BigInt::one()) {
        return Err(Error::Precision { d: disc.d(), bits });
    }
    ClassPolynomial::from_parts(disc.clone(), out)
}

/// H_D at an explicit precision, without retries. Used directly by the
/// precision-stability tests; most callers want [`hilbert_class_poly`].
pub fn hilbert_class_poly_at_bits(
    disc: &FundamentalDiscriminant,
    bits: u32,
    opts: &ClassPolyOptions,
) -> Result<ClassPolynomial> {
    if disc.d().unsigned_abs() > opts.max_abs_disc {
        return Err(Error::Resource(format!(
            "|D| = {} exceeds the configured maximum {}",
            disc.d().unsigned_abs(),
            opts.max_abs_disc
        )));
    }
    if bits > opts.max_bits {
        return Err(Error::Resource(format!(
            "H_{} needs {bits} bits, above the configured maximum {}",
            disc.d(),
            opts.max_bits
        )));
    }
    let group = ClassGroup::enumerate(disc);
    expand_at(disc, &group, bits)
}

/// H_D with the default limits.
pub fn hilbert_class_poly(disc: &FundamentalDiscriminant) -> Result<ClassPolynomial> {
    hilbert_class_poly_with(disc, &ClassPolyOptions::default())
}

/// H_D: expand at the height-based precision bound, retrying at doubled
/// precision (at most 3 times) if a coefficient refuses to round.
pub fn hilbert_class_poly_with(
    disc: &FundamentalDiscriminant,
    opts: &ClassPolyOptions,
) -> Result<ClassPolynomial> {
    if disc.d().unsigned_abs() > opts.max_abs_disc {
        return Err(Error::Resource(format!(
            "|D| = {} exceeds the configured maximum {}",
            disc.d().unsigned_abs(),
            opts.max_abs_disc
        )));
    }
    let group = ClassGroup::enumerate(disc);
    let mut bits = precision_bound(disc, &group);
    let mut last = 0;
    for _ in 0..4 {
        if bits > opts.max_bits {
            return Err(Error::Resource(format!(
                "H_{} needs {bits} bits, above the configured maximum {}",
                disc.d(),
                opts.max_bits
            )));
        }
        match expand_at(disc, &group, bits) {
            Ok(p) => return Ok(p),
            Err(Error::Precision { .. }) => {
                last = bits;
                bits *= 2;
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::Precision { d: disc.d(), bits: last })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus::FundamentalDiscriminant;

    fn fd(d: i64) -> FundamentalDiscriminant {
        FundamentalDiscriminant::new(d).unwrap()
    }

    fn coeffs_i64(p: &ClassPolynomial) -> Vec<i64> {
        p.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn precision_bound_spec_values() {
        let d4 = fd(-4);
        let g4 = ClassGroup::enumerate(&d4);
        assert!(precision_bound(&d4, &g4) >= 84);

        let d15 = fd(-15);
        let g15 = ClassGroup::enumerate(&d15);
        assert!(precision_bound(&d15, &g15) >= 110);

        for d in [-3i64, -7, -23, -163] {
            let disc = fd(d);
            let g = ClassGroup::enumerate(&disc);
            assert!(precision_bound(&disc, &g) > 64);
        }
    }

    #[test]
    fn j_at_i_is_1728() {
        let bits = 192;
        let tau = Complex::from_i64(0, 1, bits);
        let j = j_invariant(&tau, bits).unwrap();
        let err = (&j.re - &Real::from_i64(1728, bits)).abs();
        assert!(err.mag_bits() < -150, "re error {}", err.mag_bits());
        assert!(j.im.abs().mag_bits() < -150);
    }

    #[test]
    fn j_at_zeta3_is_zero() {
        let bits = 192;
        // tau = (1 + i*sqrt(3)) / 2
        let re = Real::from_ratio(&BigInt::from(1), &BigInt::from(2), bits);
        let im = Real::from_i64(3, bits).sqrt().div_i64(2);
        let j = j_invariant(&Complex::new(re, im), bits).unwrap();
        assert!(j.re.abs().mag_bits() < -150, "re {}", j.re.abs().mag_bits());
        assert!(j.im.abs().mag_bits() < -150);
    }

    #[test]
    fn j_is_periodic_in_the_real_direction() {
        let bits = 192;
        let re = Real::from_ratio(&BigInt::from(-1), &BigInt::from(2), bits);
        let im = Real::from_i64(15, bits).sqrt().div_i64(2);
        let tau = Complex::new(re, im);
        let shifted = &tau + &Complex::one(bits);
        let j1 = j_invariant(&tau, bits).unwrap();
        let j2 = j_invariant(&shifted, bits).unwrap();
        let diff = &j1 - &j2;
        // identical magnitudes up to the error budget of each evaluation
        assert!(diff.re.abs().mag_bits() < j1.re.mag_bits() - 150);
        assert!(diff.im.abs().mag_bits() < j1.re.mag_bits() - 150);
    }

    #[test]
    fn j_rejects_low_points_and_low_precision() {
        let bits = 192;
        let low = Complex::from_i64(0, 0, bits);
        assert!(matches!(j_invariant(&low, bits), Err(Error::Domain(_))));
        let tau = Complex::from_i64(0, 40, bits);
        assert!(matches!(j_invariant(&tau, bits), Err(Error::Domain(_))));
        let tau = Complex::from_i64(0, 1, 1 << 21);
        assert!(matches!(j_invariant(&tau, 1 << 21), Err(Error::Resource(_))));
    }

    #[test]
    fn hilbert_fixtures() {
        assert_eq!(coeffs_i64(&hilbert_class_poly(&fd(-3)).unwrap()), vec![0, 1]);
        assert_eq!(coeffs_i64(&hilbert_class_poly(&fd(-4)).unwrap()), vec![-1728, 1]);
        assert_eq!(coeffs_i64(&hilbert_class_poly(&fd(-7)).unwrap()), vec![3375, 1]);
        assert_eq!(coeffs_i64(&hilbert_class_poly(&fd(-8)).unwrap()), vec![-8000, 1]);
        assert_eq!(coeffs_i64(&hilbert_class_poly(&fd(-11)).unwrap()), vec![32768, 1]);
        assert_eq!(
            coeffs_i64(&hilbert_class_poly(&fd(-15)).unwrap()),
            vec![-121287375, 191025, 1]
        );
        assert_eq!(
            coeffs_i64(&hilbert_class_poly(&fd(-19)).unwrap()),
            vec![884736, 1]
        );
        assert_eq!(
            coeffs_i64(&hilbert_class_poly(&fd(-20)).unwrap()),
            vec![-681472000, -1264000, 1]
        );
        assert_eq!(
            coeffs_i64(&hilbert_class_poly(&fd(-163)).unwrap()),
            vec![262537412640768000, 1]
        );
    }

    #[test]
    fn hilbert_fixtures_with_larger_class_numbers() {
        let h23: Vec<BigInt> = ["12771880859375", "-5151296875", "3491750", "1"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(hilbert_class_poly(&fd(-23)).unwrap().coeffs(), &h23[..]);

        let h31: Vec<BigInt> = ["1566028350940383", "-58682638134", "39491307", "1"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(hilbert_class_poly(&fd(-31)).unwrap().coeffs(), &h31[..]);

        let h47: Vec<BigInt> = [
            "16042929600623870849609375",
            "-14982472850828613281250",
            "5115161850595703125",
            "-9987963828125",
            "2257834125",
            "1",
        ]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
        assert_eq!(hilbert_class_poly(&fd(-47)).unwrap().coeffs(), &h47[..]);
    }

    #[test]
    fn degree_equals_class_number() {
        for d in (-100..=-3i64).rev() {
            let Ok(disc) = FundamentalDiscriminant::new(d) else {
                continue;
            };
            let group = ClassGroup::enumerate(&disc);
            let p = hilbert_class_poly(&disc).unwrap();
            assert_eq!(p.degree() as u64, group.h(), "D={d}");
        }
    }

    #[test]
    fn real_root_count_matches_ambiguous_classes() {
        // h odd => exactly one real root; in general 2^(t-1) of them
        for d in [-3i64, -23, -31, -47, -56, -84, -95] {
            let disc = fd(d);
            let group = ClassGroup::enumerate(&disc);
            let ambiguous = group.forms().iter().filter(|f| f.is_ambiguous()).count();
            assert_eq!(ambiguous as u64, 1 << (disc.t() - 1), "D={d}");
            if group.h() % 2 == 1 {
                assert_eq!(ambiguous, 1, "odd h has a single real root, D={d}");
            }
        }
    }

    #[test]
    fn paired_expansion_matches_naive_complex_product() {
        for d in [-15i64, -23, -56, -84] {
            let disc = fd(d);
            let group = ClassGroup::enumerate(&disc);
            let bits = precision_bound(&disc, &group);
            // naive path: expand prod (X - j) over every form, in complex arithmetic
            let mut coeffs = vec![Complex::one(bits)];
            for form in group.forms() {
                let tau = CMPoint::new(form, bits).unwrap();
                let j = j_invariant(tau.tau(), bits).unwrap();
                let n = coeffs.len();
                let mut next = vec![Complex::zero(bits); n + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    next[i + 1] = &next[i + 1] + c;
                    next[i] = &next[i] - &(&j * c);
                }
                coeffs = next;
            }
            let naive: Vec<BigInt> = coeffs
                .iter()
                .map(|c| {
                    assert!(c.im.mag_bits() < 0, "imaginary residue too large");
                    c.re.round()
                })
                .collect();
            let paired = hilbert_class_poly(&fd(d)).unwrap();
            assert_eq!(naive, paired.coeffs(), "D={d}");
        }
    }

    #[test]
    fn constant_term_is_the_product_of_roots() {
        for d in [-15i64, -23, -56] {
            let disc = fd(d);
            let group = ClassGroup::enumerate(&disc);
            let bits = precision_bound(&disc, &group);
            let mut prod = Complex::one(bits);
            for form in group.forms() {
                let tau = CMPoint::new(form, bits).unwrap();
                prod = &prod * &j_invariant(tau.tau(), bits).unwrap();
            }
            let h = group.h();
            let poly = hilbert_class_poly(&disc).unwrap();
            let c0 = &poly.coeffs()[0];
            // (-1)^h * c0 = prod of roots, to within 2^-32 relative error
            let signed = if h % 2 == 1 { -c0 } else { c0.clone() };
            let diff = (&prod.re - &Real::from_bigint(&signed, bits)).abs();
            assert!(
                diff.mag_bits() + 32 < prod.re.mag_bits().max(0),
                "D={d}: product of roots differs from constant term"
            );
        }
    }

    #[test]
    fn stability_under_doubled_precision_small_range() {
        for d in [-15i64, -23, -47, -84] {
            let disc = fd(d);
            let group = ClassGroup::enumerate(&disc);
            let bits = precision_bound(&disc, &group);
            let opts = ClassPolyOptions::default();
            let p1 = hilbert_class_poly_at_bits(&disc, bits, &opts).unwrap();
            let p2 = hilbert_class_poly_at_bits(&disc, bits * 2, &opts).unwrap();
            assert_eq!(p1.coeffs(), p2.coeffs(), "D={d}");
        }
    }

    #[test]
    fn resource_limits_are_enforced() {
        let opts = ClassPolyOptions {
            max_bits: 80,
            max_abs_disc: 1_000_000,
        };
        assert!(matches!(
            hilbert_class_poly_with(&fd(-163), &opts),
            Err(Error::Resource(_))
        ));
        let opts = ClassPolyOptions {
            max_bits: 1 << 20,
            max_abs_disc: 100,
        };
        assert!(matches!(
            hilbert_class_poly_with(&fd(-163), &opts),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn cm_points_lie_in_the_fundamental_domain() {
        for d in [-15i64, -47, -95, -163] {
            let disc = fd(d);
            let group = ClassGroup::enumerate(&disc);
            for form in group.forms() {
                let pt = CMPoint::new(form, 96).unwrap();
                let tau = pt.tau();
                let re = tau.re.to_f64();
                let im = tau.im.to_f64();
                assert!((-0.5..=0.5).contains(&re), "Re tau in [-1/2, 1/2]");
                assert!(im >= 0.866, "Im tau >= sqrt(3)/2");
                assert!(re * re + im * im >= 0.999, "|tau| >= 1");
            }
        }
    }

    #[test]
    fn display_formats() {
        assert_eq!(hilbert_class_poly(&fd(-3)).unwrap().to_string(), "x");
        assert_eq!(hilbert_class_poly(&fd(-4)).unwrap().to_string(), "x - 1728");
        assert_eq!(hilbert_class_poly(&fd(-7)).unwrap().to_string(), "x + 3375");
        assert_eq!(
            hilbert_class_poly(&fd(-15)).unwrap().to_string(),
            "x^2 + 191025*x - 121287375"
        );
    }
}
