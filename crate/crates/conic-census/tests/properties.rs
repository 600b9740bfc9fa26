//! Property tests over the public surface.

use proptest::prelude::*;

use conic_census::arith::{factor, gcd_u64, jacobi};
use conic_census::census::FamilyParams;
use conic_census::conic::{norm_representable, soluble_q, DiagonalConic};
use conic_census::constants::{beta_correction, gamma_correction, ratio};
use conic_census::hilbert::{hilbert, hilbert_product_check, Place};
use conic_census::FactorSieve;

fn sieve() -> &'static FactorSieve {
    use std::sync::OnceLock;
    static SIEVE: OnceLock<FactorSieve> = OnceLock::new();
    SIEVE.get_or_init(|| FactorSieve::new(1_000_000).unwrap())
}

fn nonzero() -> impl Strategy<Value = i64> {
    (1i64..=1_000_000, prop::bool::ANY).prop_map(|(v, neg)| if neg { -v } else { v })
}

fn place() -> impl Strategy<Value = Place> {
    prop_oneof![
        Just(Place::Real),
        Just(Place::Finite(2)),
        Just(Place::Finite(3)),
        Just(Place::Finite(5)),
        Just(Place::Finite(7)),
        Just(Place::Finite(13)),
    ]
}

proptest! {
    #[test]
    fn product_formula(a in nonzero(), b in nonzero()) {
        prop_assert!(hilbert_product_check(a, b, sieve()).unwrap());
    }

    #[test]
    fn hilbert_symmetry_and_bilinearity(a in nonzero(), b in nonzero(), c in -300i64..=300, v in place()) {
        prop_assume!(c != 0);
        prop_assert_eq!(hilbert(a, b, v), hilbert(b, a, v));
        prop_assert_eq!(hilbert(a, b.saturating_mul(c), v), hilbert(a, b, v) * hilbert(a, c, v));
        prop_assert_eq!(hilbert(a.saturating_mul(c * c), b, v), hilbert(a, b, v));
    }

    #[test]
    fn factorization_roundtrip(n in 1u64..=1_000_000) {
        let f = factor(n as i64, sieve()).unwrap();
        prop_assert_eq!(f.value(), n);
        for w in f.pairs.windows(2) {
            prop_assert!(w[0].0 < w[1].0);
        }
    }

    #[test]
    fn jacobi_reciprocity(m in 0u64..=5000, n in 0u64..=5000) {
        let (m, n) = (2 * m + 1, 2 * n + 1);
        prop_assume!(gcd_u64(m, n) == 1);
        let sign = if m % 4 == 3 && n % 4 == 3 { -1 } else { 1 };
        prop_assert_eq!(jacobi(m as i64, n) * jacobi(n as i64, m), sign);
    }

    #[test]
    fn solubility_scaling_and_permutation(
        t0 in -200i64..=200, t1 in -200i64..=200, t2 in -200i64..=200, lambda in -8i64..=8
    ) {
        prop_assume!(t0 != 0 && t1 != 0 && t2 != 0 && lambda != 0);
        let s = sieve();
        let base = soluble_q(&DiagonalConic::new(t0, t1, t2).unwrap(), s).unwrap();
        let scaled = soluble_q(&DiagonalConic::new(lambda * t0, lambda * t1, lambda * t2).unwrap(), s).unwrap();
        prop_assert_eq!(base, scaled);
        let permuted = soluble_q(&DiagonalConic::new(t2, t0, t1).unwrap(), s).unwrap();
        prop_assert_eq!(base, permuted);
    }

    #[test]
    fn norms_closed_under_products(t1 in 1i64..=400, t2 in 1i64..=400, a in -30i64..=30) {
        prop_assume!(a != 0 && a != 1 && a != 4 && a != 9 && a != 16 && a != 25);
        let s = sieve();
        let r1 = norm_representable(t1, 1, a, s).unwrap();
        let r2 = norm_representable(t2, 1, a, s).unwrap();
        if r1 && r2 {
            prop_assert!(norm_representable(t1 * t2, 1, a, s).unwrap());
        }
    }

    #[test]
    fn beta_and_gamma_corrections_in_unit_interval(
        b1 in 1u64..=20, b2 in 1u64..=20, b3 in 1u64..=20,
        m12 in 1u64..=10, m13 in 1u64..=10, m23 in 1u64..=10
    ) {
        let Ok(params) = FamilyParams::new([b1, b2, b3], [m12, m13, m23]) else {
            return Ok(());
        };
        let s = sieve();
        let corr = beta_correction(&params, s).unwrap();
        prop_assert!(corr > ratio(0, 1) && corr <= ratio(1, 1));
        let d = [2 * b1 as i64 - 1, 2 * b2 as i64 - 1, 2 * b3 as i64 - 1];
        let g = gamma_correction(d, s).unwrap();
        prop_assert!(g > ratio(0, 1) && g <= ratio(1, 1));
    }
}
