//! Randomised checks of the criterion, the two support routes, the ideal
//! arithmetic and the brute-force oracle against each other.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use quadnorm_core::arith::{factorize, is_prime};
use quadnorm_core::criterion::{classify_norm, relation_generators, supports, supports_exact};
use quadnorm_core::ideals::{is_principal, Field};
use quadnorm_core::oracle::{brute_is_principal, brute_unit, PrincipalVerdict, SearchBound};
use quadnorm_core::{fundamental_unit, QuadIdeal, QuadInt, Radical};

fn squarefree(max: u64) -> impl Strategy<Value = Radical> {
    (2..=max).prop_filter_map("squarefree", |m| Radical::new(m).ok())
}

/// Squarefree radicals with every odd prime `1 mod 4`, built from primes so
/// that large ranges are not mostly rejected.
fn global_norm(max_primes: usize) -> impl Strategy<Value = Radical> {
    let pool: Vec<u64> = (5..10_000u64).step_by(4).filter(|&p| is_prime(p)).collect();
    (prop::sample::subsequence(pool, 1..=max_primes), any::<bool>()).prop_filter_map(
        "in range",
        |(ps, two)| {
            let m = ps.iter().try_fold(if two { 2u64 } else { 1 }, |acc, &p| acc.checked_mul(p))?;
            (m < 1 << 40).then(|| Radical::new(m).ok()).flatten()
        },
    )
}

/// An invertible ideal of norm `a` over `D`, when `D` is a square mod `4a`.
fn ideal_of_norm(a: u64, d: u64) -> Option<QuadIdeal> {
    (0..2 * a)
        .find(|&p| (p * p) % (4 * a) == d % (4 * a))
        .and_then(|p| QuadIdeal::new(a, p, d).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn predicted_sign_is_the_unit_norm(r in global_norm(4)) {
        let res = classify_norm(&r).unwrap();
        let fu = fundamental_unit(&r);
        prop_assert_eq!(res.predicted_s, fu.norm_sign);
        prop_assert_eq!(BigInt::from(fu.norm_sign), fu.eps.norm());
        if res.predicted_s == 1 {
            prop_assert_eq!(res.m * res.n, r.get());
        }
    }

    #[test]
    fn generators_have_the_support_norms(r in global_norm(5)) {
        let res = classify_norm(&r).unwrap();
        if let Ok((alpha, beta)) = relation_generators(&res) {
            prop_assert_eq!(alpha.norm().abs(), BigInt::from(res.m));
            prop_assert_eq!(beta.norm().abs(), BigInt::from(res.n));
            // alpha beta is sqrt M up to a unit
            let prod = alpha.mul(&beta).unwrap();
            prop_assert_eq!(prod.norm().abs(), BigInt::from(r.get()));
        }
    }

    #[test]
    fn residue_route_matches_exact_route(r in squarefree(20_000_000)) {
        let fast = supports(&r);
        let exact = supports_exact(&r);
        prop_assert_eq!((fast.m, fast.m_prime, fast.b_odd), (exact.m, exact.m_prime, exact.b_odd));
    }

    #[test]
    fn unit_identity_for_norm_one(r in squarefree(200_000)) {
        let eps = fundamental_unit(&r).eps;
        prop_assume!(eps.norm().is_positive());
        prop_assert_eq!(eps.add_int(1), eps.mul(&eps.conj().add_int(1)).unwrap());
    }

    #[test]
    fn even_radicals_have_s_minus_one_iff_b_odd(r in global_norm(4)) {
        prop_assume!(r.is_even());
        let res = classify_norm(&r).unwrap();
        let b_odd = (fundamental_unit(&r).eps.v() >> 1u32).bit(0);
        prop_assert_eq!(res.predicted_s == -1, b_odd);
    }

    #[test]
    fn ideal_times_conjugate_is_principal(r in squarefree(100_000), a in 2u64..200) {
        let d = r.discriminant();
        let Some(ideal) = ideal_of_norm(a, d) else { return Ok(()) };
        let (prod, e) = ideal.compose(&ideal.conj()).unwrap();
        prop_assert!(prod.is_unit() || is_principal(&prod).unwrap());
        prop_assert_eq!(u128::from(e) * u128::from(prod.norm()), u128::from(a));
    }

    #[test]
    fn composition_commutes_up_to_class(r in squarefree(2_000), a in 2u64..40, b in 2u64..40) {
        let d = r.discriminant();
        let (Some(i), Some(j)) = (ideal_of_norm(a, d), ideal_of_norm(b, d)) else {
            return Ok(());
        };
        let (ij, _) = i.compose(&j).unwrap();
        let (ji, _) = j.compose(&i).unwrap();
        prop_assert_eq!(ij.reduce().0, ji.reduce().0);
    }

    #[test]
    fn principality_agrees_with_oracle(r in squarefree(2_000), a in 2u64..60) {
        let d = r.discriminant();
        let Some(ideal) = ideal_of_norm(a, d) else { return Ok(()) };
        let fast = Field::new(r.clone()).is_principal(&ideal);
        match brute_is_principal(&ideal, SearchBound::new(50_000)) {
            PrincipalVerdict::Inconclusive => {}
            PrincipalVerdict::Principal(g) => {
                prop_assert!(fast);
                prop_assert_eq!(g.norm().abs(), BigInt::from(ideal.norm()));
            }
            PrincipalVerdict::NotPrincipal => prop_assert!(!fast),
        }
    }
}

#[test]
fn brute_unit_agrees_within_its_bound() {
    let bound = SearchBound::new(100_000);
    let mut found = 0;
    for m in 2..=2000u64 {
        let Ok(r) = Radical::new(m) else { continue };
        let eps = fundamental_unit(&r).eps;
        let fits = eps.v() <= &BigInt::from(bound.max_v());
        match brute_unit(&r, bound) {
            Some(b) => {
                assert!(fits, "M={m}: oracle found {b}, unit is {eps}");
                assert_eq!(b, eps, "M={m}");
                found += 1;
            }
            None => assert!(!fits, "M={m}: oracle missed {eps}"),
        }
    }
    assert!(found > 600, "{found}");
}

#[test]
fn norm_sign_is_period_parity() {
    for m in (2..=100_000u64).step_by(7) {
        let Ok(r) = Radical::new(m) else { continue };
        let fu = fundamental_unit(&r);
        assert_eq!(fu.norm_sign, if fu.period_length % 2 == 0 { 1 } else { -1 });
        assert_eq!(fu.eps.norm(), BigInt::from(fu.norm_sign), "M={m}");
    }
}

#[test]
fn factorizations_multiply_back() {
    let mut n = 1u64;
    for _ in 0..2000 {
        n = n.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let x = n >> 4;
        if x == 0 {
            continue;
        }
        let f = factorize(x).unwrap();
        assert_eq!(f.product(), u128::from(x));
        assert!(f.primes().all(is_prime));
    }
}

#[test]
fn elements_of_the_ring() {
    let r = Radical::new(13).unwrap();
    let half = QuadInt::new(3, 1, &r).unwrap();
    assert!(half.is_half());
    assert!(QuadInt::new(2, 1, &r).is_err());
    assert!(QuadInt::new(0, 0, &r).unwrap().norm().is_zero());
}
