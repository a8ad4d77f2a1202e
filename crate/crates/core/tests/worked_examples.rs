//! Three fields worked by hand, with every intermediate integer pinned.

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use quadnorm_core::arith::factorize;
use quadnorm_core::criterion::classify_norm;
use quadnorm_core::ideals::{ideal_product, Field};
use quadnorm_core::{fundamental_unit, Radical};

fn big(s: &str) -> BigInt {
    s.parse().unwrap()
}

#[test]
fn m_15170_relation_from_eps_minus_one() {
    let r = Radical::new(15170).unwrap();
    let res = classify_norm(&r).unwrap();
    let eps = &res.unit.eps;
    assert_eq!((eps.u(), eps.v()), (&big("1478"), &big("12")));
    assert_eq!(res.unit.norm_sign, 1);

    assert_eq!(res.plus.g, BigUint::from(2u32));
    assert_eq!((res.plus.a.to_string(), res.plus.b.to_string()), ("370".into(), "3".into()));
    assert_eq!(res.minus.g, BigUint::from(6u32));
    assert_eq!((res.minus.a.to_string(), res.minus.b.to_string()), ("123".into(), "1".into()));
    assert_eq!((res.m, res.m_prime, res.n), (370, 41, 41));
    assert_eq!(res.predicted_s, 1);

    let field = Field::new(r.clone());
    let (q41, _) = ideal_product(&[41], &r).unwrap();
    assert!(field.is_principal(&q41));
}

#[test]
fn m_141245_two_relations() {
    let r = Radical::new(141245).unwrap();
    let res = classify_norm(&r).unwrap();
    assert_eq!((res.unit.eps.u(), res.unit.eps.v()), (&big("99218"), &big("264")));

    assert_eq!(res.plus.g, BigUint::from(22u32));
    assert_eq!((res.plus.a.to_string(), res.plus.b.to_string()), ("2255".into(), "6".into()));
    assert_eq!(res.minus.g, BigUint::from(12u32));
    assert_eq!((res.minus.a.to_string(), res.minus.b.to_string()), ("4134".into(), "11".into()));
    assert_eq!((res.m, res.m_prime), (5 * 41, 13 * 53));

    let field = Field::new(r.clone());
    for pair in [[5, 41], [13, 53]] {
        assert!(field.is_principal(&ideal_product(&pair, &r).unwrap().0), "{pair:?}");
    }
    assert!(!field.is_principal(&ideal_product(&[5], &r).unwrap().0));
}

const EPS_PLUS_ONE_U: &str = concat!(
    "11109636935777158836160759499956087745610931184259730878643242570969499893",
    "0608609351188823863817034706422630544237192750927410464023060264033743426",
);
const EPS_PLUS_ONE_V: &str = concat!(
    "111106036003421265074388547121779710827974912909282096975471217501055084",
    "481117390502436801341332286005566466631729812289759396153149523058885768",
);
const GCD: &str = "21082286734619551653000708969094423248037542899079230940776043942241398";
const GCD_LARGE_FACTOR: &str = "7289235104943832975100088612482411236091543240227619";
const A: &str = "5269654604181931962753271711433450204598096091653697788648087227648861999187";
const B: &str = "5270113123970195868835491287611281655343354587474034791159597224413298316";

#[test]
fn m_999826_large_unit() {
    let r = Radical::new(999826).unwrap();
    assert_eq!(r.primes(), &[2, 41, 89, 137]);
    let res = classify_norm(&r).unwrap();

    // D = 4M, so the stored coordinates are twice a and b.
    let eps = &res.unit.eps;
    assert_eq!(eps.u() / 2 + 1, big(EPS_PLUS_ONE_U));
    assert_eq!(eps.v() / 2, big(EPS_PLUS_ONE_V));
    assert_eq!(res.unit.norm_sign, 1);

    assert_eq!(BigInt::from(res.plus.g.clone()), big(GCD));
    let cofactor = BigInt::from(2 * 3 * 43 * 11210269457991049u64) * big(GCD_LARGE_FACTOR);
    assert_eq!(cofactor, big(GCD));

    assert_eq!(res.plus.a.to_integer(), Some(big(A)));
    assert_eq!(res.plus.b.to_integer(), Some(big(B)));
    assert_eq!(res.m, 41 * 89 * 137);
    assert_eq!(res.m_prime, 2);
    assert_eq!(res.predicted_s, 1);

    let gen = res.plus.cofactor(r.get());
    assert_eq!(gen.norm().abs(), BigInt::from(41u64 * 89 * 137));
    assert_eq!(factorize(res.m).unwrap().primes().collect::<Vec<_>>(), vec![41, 89, 137]);

    // q41 q89 q137 and q2 differ by sqrt M, so both are principal.
    let field = Field::new(r.clone());
    assert!(field.is_principal(&ideal_product(&[41, 89, 137], &r).unwrap().0));
    assert!(field.is_principal(&ideal_product(&[2], &r).unwrap().0));
    assert_eq!(fundamental_unit(&r), res.unit);
}
