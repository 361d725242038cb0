//! Reduced positive-definite binary quadratic forms and the class group.
//!
//! A form (a, b, c) stands for ax^2 + bxy + cy^2 with discriminant
//! D = b^2 - 4ac. For a fundamental D < 0 the reduced forms are in bijection
//! with the ideal classes of the maximal order of Q(sqrt(D)), and Gauss
//! composition realizes the group law.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::genus::FundamentalDiscriminant;
use crate::numtheory::{is_prime, kronecker, sqrt_mod};
use crate::{Error, Result};

/// A binary quadratic form (a, b, c).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadForm {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

/// gcd = u*a + v*b, gcd >= 0.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let tmp = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, tmp);
        let tmp = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, tmp);
        let tmp = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, tmp);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// gcd = u*a + v*b + w*c, gcd >= 0.
fn ext_gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    let (g1, u1, v1) = ext_gcd(a, b);
    let (g, u2, v2) = ext_gcd(&g1, c);
    (g, &u2 * &u1, &u2 * &v1, v2)
}

impl QuadForm {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> QuadForm {
        QuadForm { a, b, c }
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> QuadForm {
        QuadForm::new(a.into(), b.into(), c.into())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// D = b^2 - 4ac.
    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a.is_positive() && self.discriminant().is_negative()
    }

    /// |b| <= a <= c, with b >= 0 whenever |b| = a or a = c.
    pub fn is_reduced(&self) -> bool {
        if !self.is_positive_definite() {
            return false;
        }
        let ab = self.b.abs();
        if ab > self.a || self.a > self.c {
            return false;
        }
        if (ab == self.a || self.a == self.c) && self.b.is_negative() {
            return false;
        }
        true
    }

    /// A form is ambiguous (its own inverse) iff b = 0, b = a, or a = c.
    pub fn is_ambiguous(&self) -> bool {
        self.b.is_zero() || self.b == self.a || self.a == self.c
    }

    /// The unique reduced form equivalent to `self`; idempotent.
    pub fn reduced(&self) -> Result<QuadForm> {
        if !self.is_positive_definite() {
            return Err(Error::Domain(format!(
                "form ({}, {}, {}) is not positive definite",
                self.a, self.b, self.c
            )));
        }
        let disc = self.discriminant();
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        let mut c = self.c.clone();
        loop {
            // translate b into (-a, a]
            if b > a || -&b >= a {
                let two_a = BigInt::from(2) * &a;
                let mut r = b.mod_floor(&two_a);
                if r > a {
                    r -= &two_a;
                }
                c = (&r * &r - &disc) / (BigInt::from(4) * &a);
                b = r;
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            break;
        }
        if b.is_negative() && (b.abs() == a || a == c) {
            b = -b;
        }
        let out = QuadForm { a, b, c };
        debug_assert!(out.is_reduced());
        debug_assert_eq!(out.discriminant(), disc);
        Ok(out)
    }

    /// The reduced inverse class: negate b and re-normalize.
    pub fn inverse(&self) -> Result<QuadForm> {
        QuadForm::new(self.a.clone(), -&self.b, self.c.clone()).reduced()
    }

    /// Gauss composition: the reduced composite of two forms sharing a
    /// discriminant. Realizes multiplication of ideal classes.
    pub fn compose(&self, other: &QuadForm) -> Result<QuadForm> {
        let disc = self.discriminant();
        if disc != other.discriminant() {
            return Err(Error::Domain(format!(
                "cannot compose forms of discriminants {} and {}",
                disc,
                other.discriminant()
            )));
        }
        // Dirichlet composition: with s = (b1+b2)/2, n = (b1-b2)/2 and
        // g = u*a1 + v*a2 + w*s, the composite is (A, B, (B^2-D)/4A) where
        // A = a1*a2/g^2 and B = b2 + 2*a2*(v*n - w*c2)/g  (mod 2A).
        let s: BigInt = (&self.b + &other.b) >> 1usize;
        let n: BigInt = (&self.b - &other.b) >> 1usize;
        let (g, _u, v, w) = ext_gcd3(&self.a, &other.a, &s);
        let g2 = &g * &g;
        let cap_a = &self.a * &other.a / &g2;
        debug_assert!((&self.a * &other.a % &g2).is_zero());
        let num = BigInt::from(2) * &other.a * (&v * &n - &w * &other.c);
        debug_assert!(num.is_multiple_of(&g));
        let b_raw = &other.b + num / &g;
        let two_a = BigInt::from(2) * &cap_a;
        let mut cap_b = b_raw.mod_floor(&two_a);
        if cap_b > cap_a {
            cap_b -= &two_a;
        }
        let num_c = &cap_b * &cap_b - &disc;
        let den_c = BigInt::from(4) * &cap_a;
        debug_assert!(num_c.is_multiple_of(&den_c));
        let cap_c = num_c / den_c;
        QuadForm::new(cap_a, cap_b, cap_c).reduced()
    }

    /// Least k >= 1 with the k-fold composite principal; divides h(D).
    pub fn order(&self) -> Result<u64> {
        let f = self.reduced()?;
        let id = principal_form(&f.discriminant());
        let mut acc = f.clone();
        let mut k = 1u64;
        while acc != id {
            acc = acc.compose(&f)?;
            k += 1;
            if k > 1 << 24 {
                return Err(Error::Domain("element order not found".into()));
            }
        }
        Ok(k)
    }
}

impl std::fmt::Display for QuadForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// The identity class: (1, 0, -D/4) for even D, (1, 1, (1-D)/4) for odd D.
pub fn principal_form(disc: &BigInt) -> QuadForm {
    if disc.mod_floor(&BigInt::from(4)).is_zero() {
        QuadForm::new(BigInt::one(), BigInt::zero(), -disc / 4)
    } else {
        QuadForm::new(BigInt::one(), BigInt::one(), (BigInt::one() - disc) / 4)
    }
}

/// The full class group of a fundamental discriminant: every reduced form,
/// sorted, with h = the count.
#[derive(Debug, Clone)]
pub struct ClassGroup {
    disc: FundamentalDiscriminant,
    forms: Vec<QuadForm>,
}

impl ClassGroup {
    /// Enumerate all reduced forms of discriminant D: a <= sqrt(|D|/3),
    /// b = D (mod 2), |b| <= a, 4a | b^2 - D, c >= a, boundary sign rules.
    pub fn enumerate(disc: &FundamentalDiscriminant) -> ClassGroup {
        let d = disc.d();
        let abs_d = d.unsigned_abs();
        let a_max = ((abs_d / 3) as f64).sqrt() as i64 + 1;
        let mut forms = Vec::new();
        for a in 1..=a_max {
            if 3 * a * a > abs_d as i64 + 3 {
                break;
            }
            for b in -a..=a {
                if (b - d).rem_euclid(2) != 0 {
                    continue;
                }
                let num = b * b - d;
                if num % (4 * a) != 0 {
                    continue;
                }
                let c = num / (4 * a);
                if c < a {
                    continue;
                }
                if (b.abs() == a || a == c) && b < 0 {
                    continue;
                }
                let f = QuadForm::from_i64(a, b, c);
                debug_assert!(f.is_reduced());
                forms.push(f);
            }
        }
        forms.sort();
        ClassGroup {
            disc: disc.clone(),
            forms,
        }
    }

    pub fn disc(&self) -> &FundamentalDiscriminant {
        &self.disc
    }

    pub fn forms(&self) -> &[QuadForm] {
        &self.forms
    }

    /// The class number h(D).
    pub fn h(&self) -> u64 {
        self.forms.len() as u64
    }

    pub fn principal(&self) -> QuadForm {
        principal_form(&BigInt::from(self.disc.d()))
    }
}

/// h(D) by enumeration.
pub fn class_number(disc: &FundamentalDiscriminant) -> u64 {
    ClassGroup::enumerate(disc).h()
}

/// The reduced class of a prime ideal above a split odd prime p: reduces
/// (p, b, (b^2 - D)/4p) where b^2 = D (mod 4p), b = D (mod 2), 0 < b < 2p,
/// taking the smaller such b.
pub fn prime_form(disc: &FundamentalDiscriminant, p: u64) -> Result<QuadForm> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Domain(format!("prime_form requires an odd prime, got {p}")));
    }
    if kronecker(disc.d(), p as i64)? != 1 {
        return Err(Error::Domain(format!(
            "prime_form requires ({}/{}) = 1: {} does not split",
            disc.d(),
            p,
            p
        )));
    }
    let r = sqrt_mod(disc.d(), p)?.expect("split prime has a square root");
    // r and p - r have opposite parities; pick the one matching D
    let d_parity = disc.d().rem_euclid(2) as u64;
    let b1 = if r % 2 == d_parity { r } else { p - r };
    let b = b1.min(2 * p - b1);
    let bb = BigInt::from(b);
    let num = &bb * &bb - BigInt::from(disc.d());
    let den = BigInt::from(4 * p);
    debug_assert!(num.is_multiple_of(&den));
    let c = num / den;
    QuadForm::new(BigInt::from(p), bb, c).reduced()
}
