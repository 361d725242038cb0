//! Exact integer primitives: Kronecker symbol, deterministic primality,
//! factorization, modular square roots, and prime iteration.
//!
//! Everything here is deterministic and exact for inputs below 2^64; larger
//! inputs are out of scope for this crate and rejected by the callers.

use crate::{Error, Result};

/// (a/2) for odd a, indexed by a mod 8.
const TAB2: [i32; 8] = [0, 1, 0, -1, 0, -1, 0, 1];

/// Kronecker symbol (a/n), the extension of the Legendre and Jacobi symbols
/// to arbitrary nonzero lower argument.
///
/// Equals the Legendre symbol when `n` is an odd prime, is completely
/// multiplicative in both arguments, and is zero exactly when
/// `gcd(a, n) != 1`. `(a/-1)` is the sign of `a`, with `(0/-1) = 1`.
pub fn kronecker(a: i64, n: i64) -> Result<i32> {
    if n == 0 {
        return Err(Error::Domain(format!("kronecker({a}, 0) is undefined")));
    }
    // i128 avoids |i64::MIN| overflow.
    let mut a = a as i128;
    let mut n = n as i128;
    let mut k = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    if n & 1 == 0 {
        if a & 1 == 0 {
            return Ok(0);
        }
        let v = n.trailing_zeros();
        n >>= v;
        if v & 1 == 1 {
            k *= TAB2[(a & 7) as usize];
        }
    }
    a = a.rem_euclid(n);
    while a != 0 {
        let v = a.trailing_zeros();
        a >>= v;
        if v & 1 == 1 {
            k *= TAB2[(n & 7) as usize];
        }
        // quadratic reciprocity flip: both a and n are odd and positive here
        if a & n & 2 != 0 {
            k = -k;
        }
        let r = n % a;
        n = a;
        a = r;
    }
    Ok(if n == 1 { k } else { 0 })
}

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn addmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test, exact for all `n < 2^64`.
///
/// Trial division by a few small primes, then Miller-Rabin with the seven
/// Sinclair witnesses that cover the full 64-bit range.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &SMALL {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &w in &[2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let w = w % n;
        if w == 0 {
            continue;
        }
        let mut x = powmod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A positive integer together with its ordered prime factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// (prime, exponent) pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn distinct_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

/// Factor `n >= 1` into primes. `factorize(1)` has an empty factor list.
///
/// Trial division up to 10^6, then Brent-cycle Pollard rho on whatever
/// remains, retrying deterministically with an incremented polynomial
/// constant whenever a cycle yields no factor.
pub fn factorize(n: u64) -> PrimeFactorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut rest = n;
    let mut primes: Vec<u64> = Vec::new();

    let strip = |rest: &mut u64, d: u64, primes: &mut Vec<u64>| {
        while *rest % d == 0 {
            *rest /= d;
            primes.push(d);
        }
    };

    strip(&mut rest, 2, &mut primes);
    strip(&mut rest, 3, &mut primes);
    let mut d = 5u64;
    let mut step = 2u64; // 5, 7, 11, 13, ... (6k +- 1)
    while d <= 1_000_000 && d * d <= rest {
        strip(&mut rest, d, &mut primes);
        d += step;
        step = 6 - step;
    }
    if rest > 1 {
        if d * d > rest {
            primes.push(rest);
        } else {
            rho_split(rest, &mut primes);
        }
    }

    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    PrimeFactorization { value: n, factors }
}

fn rho_split(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let mut c = 1u64;
    loop {
        if let Some(f) = pollard_brent(n, c) {
            rho_split(f, out);
            rho_split(n / f, out);
            return;
        }
        c += 1;
    }
}

/// One Brent cycle of Pollard rho with polynomial x^2 + c; `n` odd composite.
fn pollard_brent(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| addmod(mulmod(x, x, n), c, n);
    let m = 128u64;
    let mut y = 2u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0u64;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mulmod(q, x.abs_diff(y), n);
            }
            g = num_integer::gcd(q, n);
            k += m;
        }
        r <<= 1;
    }
    if g == n {
        // backtrack through the last block one step at a time
        loop {
            ys = f(ys);
            g = num_integer::gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    if g == n {
        None
    } else {
        Some(g)
    }
}

/// Square root of `a` modulo an odd prime `p`, if one exists.
///
/// Returns the canonical root `r = min(r, p - r)`, `Some(0)` when `p | a`,
/// and `None` when `a` is a non-residue. Tonelli-Shanks, with the
/// `a^((p+1)/4)` fast path for `p = 3 (mod 4)`.
pub fn sqrt_mod(a: i64, p: u64) -> Result<Option<u64>> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Domain(format!("sqrt_mod requires an odd prime, got {p}")));
    }
    let a = (a as i128).rem_euclid(p as i128) as u64;
    if a == 0 {
        return Ok(Some(0));
    }
    if powmod(a, (p - 1) / 2, p) != 1 {
        return Ok(None);
    }
    let r = if p % 4 == 3 {
        powmod(a, (p + 1) / 4, p)
    } else {
        tonelli_shanks(a, p)
    };
    debug_assert_eq!(mulmod(r, r, p), a);
    Ok(Some(r.min(p - r)))
}

/// `a` a nonzero quadratic residue mod `p`, `p = 1 (mod 4)`.
fn tonelli_shanks(a: u64, p: u64) -> u64 {
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    // smallest non-residue; found after ~2 candidates on average
    let mut z = 2u64;
    while powmod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mulmod(t2, t2, p);
            i += 1;
        }
        let b = powmod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    r
}

/// All primes in the closed interval `[lo, hi]`, ascending.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || hi < lo {
        return Vec::new();
    }
    const SIEVE_LIMIT: u64 = 1 << 22;
    if hi <= SIEVE_LIMIT {
        let mut composite = vec![false; (hi + 1) as usize];
        let mut out = Vec::new();
        for n in 2..=hi {
            if !composite[n as usize] {
                if n >= lo {
                    out.push(n);
                }
                let mut k = n * n;
                while k <= hi {
                    composite[k as usize] = true;
                    k += n;
                }
            }
        }
        out
    } else {
        (lo.max(2)..=hi).filter(|&n| is_prime(n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Exhaustive-search Legendre symbol: is a a nonzero square mod p?
    fn legendre_brute(a: i64, p: u64) -> i32 {
        let a = (a as i128).rem_euclid(p as i128) as u64;
        if a == 0 {
            return 0;
        }
        for r in 0..p {
            if mulmod(r, r, p) == a {
                return 1;
            }
        }
        -1
    }

    #[test]
    fn kronecker_spec_values() {
        assert_eq!(kronecker(-15, 11).unwrap(), -1);
        assert_eq!(kronecker(7, 1).unwrap(), 1);
        assert_eq!(kronecker(-123456, 1).unwrap(), 1);
        assert_eq!(kronecker(-4, 2).unwrap(), 0);
        assert_eq!(kronecker(-11, 3).unwrap(), 1);
    }

    #[test]
    fn kronecker_zero_modulus_is_error() {
        assert!(kronecker(3, 0).is_err());
    }

    #[test]
    fn kronecker_matches_brute_force_legendre() {
        for p in primes_in_range(3, 199) {
            for a in 0..p as i64 {
                assert_eq!(
                    kronecker(a, p as i64).unwrap(),
                    legendre_brute(a, p),
                    "({a}/{p})"
                );
            }
        }
    }

    #[test]
    fn kronecker_negative_lower_argument() {
        // (a/-1) is the sign of a
        assert_eq!(kronecker(5, -1).unwrap(), 1);
        assert_eq!(kronecker(-5, -1).unwrap(), -1);
        assert_eq!(kronecker(0, -1).unwrap(), 1);
        // (a/-n) = (a/-1)(a/n)
        for a in -30i64..30 {
            for n in 1i64..30 {
                let lhs = kronecker(a, -n).unwrap();
                let sign = if a < 0 { -1 } else { 1 };
                assert_eq!(lhs, sign * kronecker(a, n).unwrap(), "a={a} n={n}");
            }
        }
    }

    proptest! {
        #[test]
        fn kronecker_multiplicative_in_top(a in -500i64..500, b in -500i64..500, n in 1i64..500) {
            let lhs = kronecker(a * b, n).unwrap();
            let rhs = kronecker(a, n).unwrap() * kronecker(b, n).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn kronecker_multiplicative_in_bottom(a in -500i64..500, m in 1i64..500, n in 1i64..500) {
            let lhs = kronecker(a, m * n).unwrap();
            let rhs = kronecker(a, m).unwrap() * kronecker(a, n).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn kronecker_zero_iff_common_factor(a in -1000i64..1000, n in 1i64..1000) {
            let k = kronecker(a, n).unwrap();
            let g = num_integer::gcd(a.unsigned_abs(), n.unsigned_abs());
            prop_assert_eq!(k == 0, g != 1);
        }

        #[test]
        fn kronecker_periodic_mod_odd_prime(a in -10_000i64..10_000, i in 0usize..20) {
            let ps = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73];
            let p = ps[i];
            let r = (a as i128).rem_euclid(p as i128) as i64;
            prop_assert_eq!(kronecker(a, p as i64).unwrap(), kronecker(r, p as i64).unwrap());
        }
    }

    #[test]
    fn is_prime_small_against_sieve() {
        let sieve: std::collections::HashSet<u64> = primes_in_range(2, 10_000).into_iter().collect();
        for n in 0..=10_000u64 {
            assert_eq!(is_prime(n), sieve.contains(&n), "n={n}");
        }
    }

    #[test]
    fn is_prime_spec_values() {
        assert!(!is_prime(1));
        assert!(is_prime(2));
        assert!(!is_prime(191025)); // 3 | 191025
    }

    #[test]
    fn is_prime_large_values() {
        assert!(is_prime((1u64 << 61) - 1)); // Mersenne prime 2^61 - 1
        assert!(is_prime(18_446_744_073_709_551_557)); // largest prime < 2^64
        assert!(!is_prime(18_446_744_073_709_551_615)); // 2^64 - 1 = 3*5*17*257*641*65537*6700417
        assert!(!is_prime(561)); // Carmichael
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn factorize_spec_values() {
        assert_eq!(factorize(15).factors(), &[(3, 1), (5, 1)]);
        assert_eq!(factorize(1).factors(), &[]);
        assert_eq!(factorize(20).factors(), &[(2, 2), (5, 1)]);
    }

    #[test]
    fn factorize_large_semiprime_uses_rho() {
        let n = 1_000_000_007u64 * 1_000_000_009u64;
        let f = factorize(n);
        assert_eq!(f.factors(), &[(1_000_000_007, 1), (1_000_000_009, 1)]);
    }

    #[test]
    fn factorize_prime_power_beyond_trial_range() {
        let p = 1_000_003u64;
        let f = factorize(p * p);
        assert_eq!(f.factors(), &[(p, 2)]);
    }

    fn check_factorization(n: u64) {
        let f = factorize(n);
        assert_eq!(f.value(), n);
        let mut prod = 1u64;
        let mut last = 0u64;
        for &(p, e) in f.factors() {
            assert!(p > last, "primes must strictly increase");
            assert!(is_prime(p), "{p} must be prime");
            last = p;
            prod *= p.pow(e);
        }
        assert_eq!(prod, n);
    }

    #[test]
    fn factorize_roundtrip_exhaustive_small() {
        for n in 1..=2_000u64 {
            check_factorization(n);
        }
    }

    proptest! {
        #[test]
        fn factorize_roundtrip(n in 1u64..1_000_000) {
            check_factorization(n);
        }

        #[test]
        fn sqrt_mod_agrees_with_kronecker(a in -200i64..200, i in 0usize..12) {
            let ps = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
            let p = ps[i];
            let r = sqrt_mod(a, p).unwrap();
            let k = kronecker(a, p as i64).unwrap();
            prop_assert_eq!(r.is_some(), k >= 0);
            if let Some(r) = r {
                let am = (a as i128).rem_euclid(p as i128) as u64;
                prop_assert_eq!(mulmod(r, r, p), am);
                prop_assert!(r <= p - r || r == 0);
            }
        }
    }

    #[test]
    fn sqrt_mod_spec_values() {
        assert_eq!(sqrt_mod(2, 7).unwrap(), Some(3));
        assert_eq!(sqrt_mod(0, 7).unwrap(), Some(0));
        assert_eq!(sqrt_mod(3, 7).unwrap(), None);
    }

    #[test]
    fn sqrt_mod_rejects_non_odd_primes() {
        assert!(sqrt_mod(1, 2).is_err());
        assert!(sqrt_mod(1, 9).is_err());
        assert!(sqrt_mod(1, 1).is_err());
    }

    #[test]
    fn sqrt_mod_exercises_tonelli_shanks_branch() {
        // p = 1 (mod 4) forces the full algorithm
        for p in [5u64, 13, 17, 29, 97, 193, 577, 12289] {
            for a in 1..p.min(60) {
                if let Some(r) = sqrt_mod(a as i64, p).unwrap() {
                    assert_eq!(mulmod(r, r, p), a);
                }
            }
        }
    }

    #[test]
    fn primes_in_range_spec_values() {
        assert_eq!(primes_in_range(3, 11), vec![3, 5, 7, 11]);
        assert_eq!(primes_in_range(14, 16), Vec::<u64>::new());
        assert_eq!(primes_in_range(2, 2), vec![2]);
    }

    #[test]
    fn primes_in_range_scan_path_matches_sieve_path() {
        // force the non-sieve path by a high interval, compare on overlap logic
        let hi = (1u64 << 22) + 200;
        let scanned = primes_in_range(hi - 200, hi);
        for &p in &scanned {
            assert!(is_prime(p));
        }
        let sieved: Vec<u64> = primes_in_range(2, 5_000);
        let rescanned: Vec<u64> = (2..=5_000u64).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieved, rescanned);
    }
}
