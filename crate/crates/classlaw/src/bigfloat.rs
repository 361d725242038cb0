//! Fixed-point binary arithmetic with explicit mantissa-size control.
//!
//! A [`Real`] stores an integer mantissa m and a precision `bits`, and stands
//! for the value m / 2^bits. All arithmetic keeps the precision fixed, so the
//! absolute truncation error of a single operation is below one ulp (2^-bits).
//! This is exactly the contract the class-polynomial construction needs:
//! series evaluation at a working precision with a known error budget, then
//! rounding of near-integer results.
//!
//! Binary operators require equal precisions on both sides; mixing precisions
//! is a bug, not a rounding choice, so it panics.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// A fixed-point real number: `mant / 2^bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Real {
    mant: BigInt,
    bits: u32,
}

impl Real {
    pub fn zero(bits: u32) -> Real {
        Real { mant: BigInt::zero(), bits }
    }

    pub fn one(bits: u32) -> Real {
        Real::from_i64(1, bits)
    }

    pub fn from_i64(v: i64, bits: u32) -> Real {
        Real { mant: BigInt::from(v) << bits as usize, bits }
    }

    pub fn from_bigint(v: &BigInt, bits: u32) -> Real {
        Real { mant: v.clone() << bits as usize, bits }
    }

    /// num/den to `bits` of precision.
    pub fn from_ratio(num: &BigInt, den: &BigInt, bits: u32) -> Real {
        assert!(!den.is_zero(), "zero denominator");
        Real { mant: (num.clone() << bits as usize) / den, bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Real {
        Real { mant: self.mant.abs(), bits: self.bits }
    }

    /// Upper bound on log2 of the absolute value: |self| < 2^mag_bits().
    /// Very negative for zero.
    pub fn mag_bits(&self) -> i64 {
        if self.mant.is_zero() {
            i64::MIN / 2
        } else {
            self.mant.bits() as i64 - self.bits as i64
        }
    }

    /// Rescale to a different precision (exact when widening).
    pub fn with_bits(&self, bits: u32) -> Real {
        let mant = if bits >= self.bits {
            &self.mant << (bits - self.bits) as usize
        } else {
            &self.mant >> (self.bits - bits) as usize
        };
        Real { mant, bits }
    }

    /// Divide the value by 2^k, exactly representable.
    pub fn halve(&self, k: u32) -> Real {
        Real { mant: &self.mant >> k as usize, bits: self.bits }
    }

    pub fn mul_i64(&self, k: i64) -> Real {
        Real { mant: &self.mant * k, bits: self.bits }
    }

    pub fn div_i64(&self, k: i64) -> Real {
        assert!(k != 0);
        Real { mant: &self.mant / k, bits: self.bits }
    }

    pub fn div_bigint(&self, den: &BigInt) -> Real {
        assert!(!den.is_zero(), "zero denominator");
        Real { mant: &self.mant / den, bits: self.bits }
    }

    pub fn div(&self, rhs: &Real) -> Real {
        assert_eq!(self.bits, rhs.bits, "precision mismatch");
        assert!(!rhs.mant.is_zero(), "division by zero");
        Real {
            mant: (&self.mant << self.bits as usize) / &rhs.mant,
            bits: self.bits,
        }
    }

    /// Floor square root of a non-negative value.
    pub fn sqrt(&self) -> Real {
        assert!(!self.mant.is_negative(), "sqrt of a negative value");
        Real {
            mant: (&self.mant << self.bits as usize).sqrt(),
            bits: self.bits,
        }
    }

    /// Nearest integer.
    pub fn round(&self) -> BigInt {
        if self.bits == 0 {
            return self.mant.clone();
        }
        (&self.mant + (BigInt::one() << (self.bits - 1) as usize)) >> self.bits as usize
    }

    /// Nearest integer, provided the value is within 1/4 of it.
    pub fn round_strict(&self) -> Option<BigInt> {
        let n = self.round();
        let err = (&self.mant - (&n << self.bits as usize)).abs();
        if self.bits >= 2 && err < (BigInt::one() << (self.bits - 2) as usize) {
            Some(n)
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let bl = self.mant.bits() as i64;
        let shift = (bl - 64).max(0);
        let top = (&self.mant >> shift as usize).to_f64().unwrap();
        let e = shift - self.bits as i64;
        if e < -1400 {
            return 0.0;
        }
        top * 2f64.powi(e as i32)
    }

    /// pi to `bits` of precision (Machin's formula).
    pub fn pi(bits: u32) -> Real {
        let w = bits + 32;
        let mant = arctan_inv_mant(5, w) * 16 - arctan_inv_mant(239, w) * 4;
        Real { mant: mant >> 32usize, bits }
    }
}

/// Mantissa of arctan(1/x) at `bits` of fixed-point precision.
fn arctan_inv_mant(x: i64, bits: u32) -> BigInt {
    let x2 = BigInt::from(x * x);
    let mut term = (BigInt::one() << bits as usize) / x;
    let mut total = term.clone();
    let mut k = 1u64;
    loop {
        term /= &x2;
        if term.is_zero() {
            break;
        }
        let contrib = &term / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            total -= contrib;
        } else {
            total += contrib;
        }
        k += 1;
    }
    total
}

macro_rules! real_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                assert_eq!(self.bits, rhs.bits, "precision mismatch");
                Real { mant: &self.mant $op &rhs.mant, bits: self.bits }
            }
        }
    };
}

real_binop!(Add, add, +);
real_binop!(Sub, sub, -);

impl Mul for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        assert_eq!(self.bits, rhs.bits, "precision mismatch");
        Real {
            mant: (&self.mant * &rhs.mant) >> self.bits as usize,
            bits: self.bits,
        }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { mant: -&self.mant, bits: self.bits }
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<std::cmp::Ordering> {
        assert_eq!(self.bits, other.bits, "precision mismatch");
        self.mant.partial_cmp(&other.mant)
    }
}

/// A fixed-point complex number with both parts at the same precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Complex {
        assert_eq!(re.bits(), im.bits(), "precision mismatch");
        Complex { re, im }
    }

    pub fn zero(bits: u32) -> Complex {
        Complex { re: Real::zero(bits), im: Real::zero(bits) }
    }

    pub fn one(bits: u32) -> Complex {
        Complex { re: Real::one(bits), im: Real::zero(bits) }
    }

    pub fn from_i64(re: i64, im: i64, bits: u32) -> Complex {
        Complex { re: Real::from_i64(re, bits), im: Real::from_i64(im, bits) }
    }

    pub fn bits(&self) -> u32 {
        self.re.bits()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Complex {
        Complex { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Real {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn mul_i64(&self, k: i64) -> Complex {
        Complex { re: self.re.mul_i64(k), im: self.im.mul_i64(k) }
    }

    pub fn div_i64(&self, k: i64) -> Complex {
        Complex { re: self.re.div_i64(k), im: self.im.div_i64(k) }
    }

    pub fn div(&self, rhs: &Complex) -> Complex {
        let n = rhs.norm_sqr();
        let num = self * &rhs.conj();
        Complex { re: num.re.div(&n), im: num.im.div(&n) }
    }

    pub fn with_bits(&self, bits: u32) -> Complex {
        Complex { re: self.re.with_bits(bits), im: self.im.with_bits(bits) }
    }

    pub fn halve(&self, k: u32) -> Complex {
        Complex { re: self.re.halve(k), im: self.im.halve(k) }
    }

    /// max of the component magnitude bounds: |z| < 2^(mag_bits + 1).
    pub fn mag_bits(&self) -> i64 {
        self.re.mag_bits().max(self.im.mag_bits())
    }

    /// e^z by argument halving, Taylor summation, and repeated squaring.
    pub fn exp(z: &Complex) -> Complex {
        let bits = z.bits();
        let k = (z.mag_bits() + 3).max(0) as u32;
        let w = bits + k + 32;
        let zr = z.with_bits(w).halve(k);
        let mut sum = Complex::one(w);
        let mut term = Complex::one(w);
        let mut n = 1i64;
        loop {
            term = (&term * &zr).div_i64(n);
            sum = &sum + &term;
            if term.mag_bits() < -(w as i64) + 8 {
                break;
            }
            n += 1;
            assert!(n < 1 << 24, "exp series failed to converge");
        }
        for _ in 0..k {
            sum = &sum * &sum;
        }
        sum.with_bits(bits)
    }

    /// z^e for e >= 1 by binary exponentiation.
    pub fn pow(&self, e: u64) -> Complex {
        assert!(e >= 1);
        let mut base = self.clone();
        let mut e = e;
        let mut acc: Option<Complex> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc.unwrap()
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        let ac = &self.re * &rhs.re;
        let bd = &self.im * &rhs.im;
        let ad = &self.re * &rhs.im;
        let bc = &self.im * &rhs.re;
        Complex { re: &ac - &bd, im: &ad + &bc }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -&self.re, im: -&self.im }
    }
}
