//! Univariate polynomial arithmetic over F_p for odd primes p: reduction of
//! H_D mod p, squarefreeness, distinct-degree factorization (the splitting
//! pattern), and root extraction.
//!
//! Only the splitting pattern is needed to check the decomposition law, so
//! DDF does the heavy lifting and stays deterministic. The randomized
//! Cantor-Zassenhaus split sits behind the roots / explicit-factor path and
//! takes its generator seed as an explicit input.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::classpoly::ClassPolynomial;
use crate::genus::SplittingPattern;
use crate::numtheory::{addmod, is_prime, mulmod, powmod};
use crate::{Error, Result};

/// Default seed for the randomized splitting path.
pub const DEFAULT_SEED: u64 = 0x001c_1a55_1a77_5eed;

/// Primes below this use direct root scanning instead of gcd splitting.
const ROOT_SCAN_LIMIT: u64 = 10_000;

/// A polynomial over F_p, dense ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    /// Build from ascending coefficients, reducing mod p. Rejects p = 2 and
    /// composite p.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Result<FpPoly> {
        if p == 2 || !is_prime(p) {
            return Err(Error::Domain(format!("FpPoly requires an odd prime modulus, got {p}")));
        }
        let coeffs = coeffs.into_iter().map(|c| c % p).collect();
        Ok(FpPoly::raw(p, coeffs))
    }

    fn raw(p: u64, mut coeffs: Vec<u64>) -> FpPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> FpPoly {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn constant(p: u64, c: u64) -> FpPoly {
        FpPoly::raw(p, vec![c % p])
    }

    /// The monomial X.
    pub fn x(p: u64) -> FpPoly {
        FpPoly { p, coeffs: vec![0, 1] }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Ascending coefficients; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with 0 for constants and the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading_coeff(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = addmod(mulmod(acc, x, self.p), c, self.p);
        }
        acc
    }

    fn assert_same_modulus(&self, other: &FpPoly) {
        assert_eq!(self.p, other.p, "modulus mismatch");
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        self.assert_same_modulus(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = addmod(a, b, self.p);
        }
        FpPoly::raw(self.p, out)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        self.assert_same_modulus(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = addmod(a, self.p - b % self.p, self.p);
        }
        FpPoly::raw(self.p, out)
    }

    pub fn scale(&self, k: u64) -> FpPoly {
        let k = k % self.p;
        FpPoly::raw(self.p, self.coeffs.iter().map(|&c| mulmod(c, k, self.p)).collect())
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        self.assert_same_modulus(other);
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = addmod(out[i + j], mulmod(a, b, self.p), self.p);
            }
        }
        FpPoly::raw(self.p, out)
    }

    /// (quotient, remainder) with deg(remainder) < deg(divisor).
    pub fn divmod(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        self.assert_same_modulus(divisor);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.coeffs.len() < divisor.coeffs.len() {
            return (FpPoly::zero(self.p), self.clone());
        }
        let p = self.p;
        let dlen = divisor.coeffs.len();
        let inv_lead = powmod(divisor.leading_coeff(), p - 2, p);
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; rem.len() - dlen + 1];
        for i in (dlen - 1..rem.len()).rev() {
            let c = mulmod(rem[i], inv_lead, p);
            if c == 0 {
                continue;
            }
            let shift = i + 1 - dlen;
            quo[shift] = c;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let sub = mulmod(c, dc, p);
                rem[shift + j] = addmod(rem[shift + j], p - sub, p);
            }
        }
        rem.truncate(dlen - 1);
        (FpPoly::raw(p, quo), FpPoly::raw(p, rem))
    }

    pub fn rem(&self, divisor: &FpPoly) -> FpPoly {
        self.divmod(divisor).1
    }

    /// Exact division; panics if the remainder is nonzero.
    fn div_exact(&self, divisor: &FpPoly) -> FpPoly {
        let (q, r) = self.divmod(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(powmod(self.leading_coeff(), self.p - 2, self.p))
    }

    /// Monic gcd; gcd(f, 0) is the monic normalization of f.
    pub fn gcd(&self, other: &FpPoly) -> Result<FpPoly> {
        if self.p != other.p {
            return Err(Error::Domain(format!(
                "gcd of polynomials over F_{} and F_{}",
                self.p, other.p
            )));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> FpPoly {
        if self.coeffs.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, (i as u64) % self.p, self.p))
            .collect();
        FpPoly::raw(self.p, out)
    }

    /// gcd(f, f') is constant. A polynomial of degree >= 1 drops out of the
    /// law comparison when this fails (p divides disc of the integer poly).
    pub fn is_squarefree(&self) -> bool {
        if self.coeffs.len() <= 1 {
            return true;
        }
        self.gcd(&self.derivative()).expect("same modulus").degree() == 0
    }

    /// self^e mod `modulus`, square-and-multiply over the bits of e.
    pub fn pow_mod(&self, e: &BigUint, modulus: &FpPoly) -> FpPoly {
        self.assert_same_modulus(modulus);
        assert!(modulus.degree() >= 1, "pow_mod needs a modulus of degree >= 1");
        let base = self.rem(modulus);
        let mut acc = FpPoly::constant(self.p, 1);
        let nbits = e.bits();
        for i in (0..nbits).rev() {
            acc = acc.mul(&acc).rem(modulus);
            if e.bit(i) {
                acc = acc.mul(&base).rem(modulus);
            }
        }
        acc
    }
}

impl std::fmt::Display for FpPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{k}")?,
                (_, _) => write!(f, "{c}*x^{k}")?,
            }
        }
        write!(f, " (mod {})", self.p)
    }
}

/// H_D mod p: coefficientwise residues; monic stays monic.
pub fn reduce_mod(poly: &ClassPolynomial, p: u64) -> Result<FpPoly> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Domain(format!("reduction requires an odd prime, got {p}")));
    }
    let pb = BigInt::from(p);
    let coeffs = poly
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits in u64"))
        .collect();
    Ok(FpPoly::raw(p, coeffs))
}

/// X^e mod f by square-and-multiply; e may be a huge power like p^d.
pub fn powmod_x(e: &BigUint, f: &FpPoly) -> FpPoly {
    FpPoly::x(f.modulus()).pow_mod(e, f)
}

/// Distinct-degree factorization of a monic squarefree polynomial: the
/// multiset of (degree, count) of its irreducible factors.
///
/// Stage d computes gcd(f, X^(p^d) - X); the iterated Frobenius
/// w -> w^p mod f supplies X^(p^d) without big exponents. Stops early once
/// the remaining degree is below 2d, where the remainder is irreducible.
pub fn ddf(f: &FpPoly) -> Result<SplittingPattern> {
    if f.degree() < 1 {
        return Err(Error::Domain("ddf requires degree >= 1".into()));
    }
    if !f.is_monic() {
        return Err(Error::Domain("ddf requires a monic polynomial".into()));
    }
    if !f.is_squarefree() {
        return Err(Error::Domain(format!(
            "ddf requires a squarefree polynomial; gcd(f, f') is nonconstant over F_{}",
            f.modulus()
        )));
    }
    let p = BigUint::from(f.modulus());
    let x = FpPoly::x(f.modulus());
    let mut g = f.clone();
    let mut w = powmod_x(&p, &g);
    let mut entries: Vec<(u64, u64)> = Vec::new();
    let mut d = 0u64;
    loop {
        if g.degree() == 0 {
            break;
        }
        d += 1;
        if 2 * d > g.degree() as u64 {
            entries.push((g.degree() as u64, 1));
            break;
        }
        if d > 1 {
            w = w.pow_mod(&p, &g);
        }
        let sep = g.gcd(&w.sub(&x))?;
        if sep.degree() > 0 {
            entries.push((d, (sep.degree() as u64) / d));
            g = g.div_exact(&sep);
            if g.degree() >= 1 {
                w = w.rem(&g);
            }
        }
    }
    let pattern = SplittingPattern::new(entries);
    debug_assert_eq!(pattern.total_degree(), f.degree() as u64);
    Ok(pattern)
}

/// Deterministic generator for the randomized splitting path.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Cantor-Zassenhaus equal-degree factorization: factor a monic squarefree
/// product of irreducibles all of degree d into those factors, using random
/// linear shifts u = X + delta (widening to random polynomials only if a
/// long unlucky streak occurs at tiny p). Output is sorted.
pub fn equal_degree_factorization(f: &FpPoly, d: usize, seed: u64) -> Result<Vec<FpPoly>> {
    if d < 1 || f.degree() % d != 0 {
        return Err(Error::Domain(format!(
            "degree {} is not a multiple of the stage degree {d}",
            f.degree()
        )));
    }
    if !f.is_monic() || f.degree() < 1 {
        return Err(Error::Domain("equal-degree split requires a monic nonconstant input".into()));
    }
    let p = f.modulus();
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    let mut rng = SplitMix64(seed);
    let mut out = Vec::with_capacity(f.degree() / d);
    split_equal_degree(f.clone(), d, &e, &mut rng, &mut out);
    out.sort();
    Ok(out)
}

fn split_equal_degree(f: FpPoly, d: usize, e: &BigUint, rng: &mut SplitMix64, out: &mut Vec<FpPoly>) {
    if f.degree() == d {
        out.push(f.monic());
        return;
    }
    let p = f.modulus();
    let one = FpPoly::constant(p, 1);
    let mut tries = 0u32;
    loop {
        tries += 1;
        let u = if tries <= 64 {
            FpPoly::raw(p, vec![rng.next() % p, 1])
        } else {
            // tiny fields can exhaust linear shifts; fall back to random polys
            let mut cs: Vec<u64> = (0..f.degree()).map(|_| rng.next() % p).collect();
            cs.push(1);
            FpPoly::raw(p, cs)
        };
        let h = u.pow_mod(e, &f).sub(&one);
        let g = f.gcd(&h).expect("same modulus");
        if g.degree() > 0 && g.degree() < f.degree() {
            let rest = f.div_exact(&g);
            split_equal_degree(g, d, e, rng, out);
            split_equal_degree(rest, d, e, rng, out);
            return;
        }
    }
}

/// All roots of a squarefree polynomial in F_p, ascending. Scans residues
/// directly below [`ROOT_SCAN_LIMIT`]; otherwise splits gcd(f, X^p - X)
/// with the seeded Cantor-Zassenhaus path.
pub fn roots(f: &FpPoly) -> Vec<u64> {
    roots_seeded(f, DEFAULT_SEED)
}

pub fn roots_seeded(f: &FpPoly, seed: u64) -> Vec<u64> {
    let p = f.modulus();
    if f.degree() == 0 {
        return Vec::new();
    }
    if p < ROOT_SCAN_LIMIT {
        return (0..p).filter(|&r| f.eval(r) == 0).collect();
    }
    let xp = powmod_x(&BigUint::from(p), f);
    let linear_part = f.gcd(&xp.sub(&FpPoly::x(p))).expect("same modulus");
    if linear_part.degree() == 0 {
        return Vec::new();
    }
    let factors = equal_degree_factorization(&linear_part, 1, seed).expect("valid split input");
    let mut out: Vec<u64> = factors.iter().map(|g| (p - g.coeffs()[0]) % p).collect();
    out.sort_unstable();
    out
}
