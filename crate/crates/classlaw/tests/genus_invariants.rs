//! Exhaustive genus-theory invariants over all fundamental |D| <= 500 and
//! odd primes p <= 1000. Everything here is exact arithmetic; there are no
//! tolerances.

use classlaw::genus::{
    fundamental_range, stankewicz_criterion, symbol_product_identity, theoretical_density,
};
use classlaw::numtheory::{kronecker, primes_in_range};
use classlaw::quadforms::class_number;

#[test]
fn star_product_and_kernel_shape() {
    for disc in fundamental_range(-500, -3) {
        let prod: i128 = disc.stars().iter().map(|s| s.qstar() as i128).product();
        assert_eq!(prod, disc.d() as i128, "star product for D={}", disc.d());
        // D = -N or D = -4N
        let n = disc.n() as i64;
        assert!(disc.d() == -n || disc.d() == -4 * n, "kernel of D={}", disc.d());
        for s in disc.stars() {
            if s.q() == 2 {
                assert!([-4, 8, -8].contains(&s.qstar()));
            } else {
                let expect = if s.q() % 4 == 1 {
                    s.q() as i64
                } else {
                    -(s.q() as i64)
                };
                assert_eq!(s.qstar(), expect);
            }
        }
    }
}

#[test]
fn symbol_product_identity_holds_everywhere() {
    let primes = primes_in_range(3, 1000);
    for disc in fundamental_range(-500, -3) {
        for &p in &primes {
            if disc.is_ramified(p) {
                continue;
            }
            assert!(
                symbol_product_identity(&disc, p).unwrap(),
                "identity fails for D={} p={p}",
                disc.d()
            );
        }
    }
}

#[test]
fn genus_count_divides_class_number() {
    for disc in fundamental_range(-500, -3) {
        let h = class_number(&disc);
        let genera = 1u64 << (disc.t() - 1);
        assert_eq!(h % genera, 0, "2^(t-1) | h(D) for D={}", disc.d());
        // h is odd exactly when t = 1
        assert_eq!(h % 2 == 1, disc.t() == 1, "parity of h(D) for D={}", disc.d());
    }
}

#[test]
fn criterion_always_holds_for_inert_primes_when_t_is_1() {
    let primes = primes_in_range(3, 1000);
    for disc in fundamental_range(-500, -3) {
        if disc.t() != 1 {
            continue;
        }
        for &p in &primes {
            if disc.is_ramified(p) {
                continue;
            }
            if kronecker(disc.d(), p as i64).unwrap() == -1 {
                assert!(
                    stankewicz_criterion(&disc, p).unwrap(),
                    "criterion must hold for t=1, D={} p={p}",
                    disc.d()
                );
            }
        }
    }
}

#[test]
fn two_star_symbol_is_fixed_on_inert_criterion_primes() {
    // For inert p passing the criterion with 2 | D: (2*/p) = -1 when
    // N = 1 (mod 4) or N = 2 (mod 8), and +1 when N = 6 (mod 8).
    let primes = primes_in_range(3, 1000);
    let mut exercised = 0u32;
    for disc in fundamental_range(-500, -3) {
        if disc.d() % 2 != 0 {
            continue;
        }
        let two_star = disc
            .stars()
            .iter()
            .find(|s| s.q() == 2)
            .expect("even D has a 2* factor")
            .qstar();
        let expected = if disc.n() % 4 == 1 || disc.n() % 8 == 2 {
            -1
        } else {
            1
        };
        for &p in &primes {
            if disc.is_ramified(p) || kronecker(disc.d(), p as i64).unwrap() != -1 {
                continue;
            }
            if !stankewicz_criterion(&disc, p).unwrap() {
                continue;
            }
            assert_eq!(
                kronecker(two_star, p as i64).unwrap(),
                expected,
                "(2*/p) for D={} p={p}",
                disc.d()
            );
            exercised += 1;
        }
    }
    assert!(exercised > 1000, "the invariant must actually be exercised");
}

#[test]
fn density_formula_shapes() {
    for disc in fundamental_range(-500, -3) {
        let h = class_number(&disc);
        let dens = theoretical_density(&disc, h);
        assert!(*dens.numer() > 0);
        // 1/(2h) + 1/2^t is at most 1, with equality only for h = 1
        assert!(dens <= num_rational::Rational64::new(1, 1));
        if h == 1 {
            assert_eq!(dens, num_rational::Rational64::new(1, 1));
        }
    }
}
