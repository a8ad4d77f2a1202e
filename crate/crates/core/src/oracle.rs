//! Brute-force ground truth for small fields, by direct search over the
//! coordinate `v` of `(u + v sqrt M)/2`. Independent of the continued
//! fraction code; meant for tests and cross-checks only.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::ideals::QuadIdeal;
use crate::quadfield::{QuadInt, Radical};

/// Inclusive limit on `|v|` in `(u + v sqrt M)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBound {
    max_v: u64,
}

impl SearchBound {
    /// Panics if `max_v` is zero.
    pub fn new(max_v: u64) -> Self {
        assert!(max_v >= 1, "search bound must be positive");
        SearchBound { max_v }
    }

    pub fn max_v(&self) -> u64 {
        self.max_v
    }
}

fn isqrt_exact(n: u128) -> Option<u128> {
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

fn is_integral(u: u128, v: u128, m: u64) -> bool {
    if m % 4 == 1 {
        u % 2 == v % 2
    } else {
        u % 2 == 0 && v % 2 == 0
    }
}

/// Solutions `u >= 0` of `u^2 = M v^2 + k` for one `v`.
fn solve(m: u64, v: u64, k: i128) -> Option<u128> {
    let rhs = (m as i128) * (v as i128) * (v as i128) + k;
    if rhs < 0 {
        return None;
    }
    isqrt_exact(rhs as u128).filter(|&u| is_integral(u, v as u128, m))
}

fn element(u: u128, v: u64, radical: &Radical) -> QuadInt {
    QuadInt::new(BigInt::from(u), BigInt::from(v), radical)
        .expect("search only yields integral coordinates")
}

/// The smallest unit `> 1` with `v <= bound`, scanning `u^2 = Mv^2 - 4`
/// before `u^2 = Mv^2 + 4` at each `v`.
pub fn brute_unit(radical: &Radical, bound: SearchBound) -> Option<QuadInt> {
    let m = radical.get();
    (1..=bound.max_v).find_map(|v| {
        [-4i128, 4]
            .into_iter()
            .find_map(|k| solve(m, v, k).map(|u| element(u, v, radical)))
    })
}

/// Some element of norm `+target` or `-target` with `0 <= v <= bound`.
pub fn brute_norm_equation(radical: &Radical, target: i64, bound: SearchBound) -> Option<QuadInt> {
    assert!(target != 0);
    let m = radical.get();
    let t = 4 * i128::from(target).abs();
    (0..=bound.max_v).find_map(|v| {
        [-t, t]
            .into_iter()
            .find_map(|k| solve(m, v, k).map(|u| element(u, v, radical)))
    })
}

/// Outcome of a bounded generator search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrincipalVerdict {
    Principal(QuadInt),
    /// The search covered a full fundamental domain for the unit group.
    NotPrincipal,
    Inconclusive,
}

impl PrincipalVerdict {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            PrincipalVerdict::Principal(_) => Some(true),
            PrincipalVerdict::NotPrincipal => Some(false),
            PrincipalVerdict::Inconclusive => None,
        }
    }
}

/// `(u + v sqrt M)/2` lies in `[a, (P + sqrt D)/2]`: with `t = v` for
/// `D = M` and `t = v/2` for `D = 4M`, both `t` and `(u - tP)/(2a)` must be
/// integers.
fn in_ideal(u: i128, v: i128, ideal: &QuadIdeal) -> bool {
    let d = ideal.discriminant();
    let (a, p) = (ideal.norm() as i128, ideal.p() as i128);
    let t = if d % 4 == 0 {
        if v % 2 != 0 {
            return false;
        }
        v / 2
    } else {
        v
    };
    (u - t * p) % (2 * a) == 0
}

/// Searches for `alpha` with `|N(alpha)| = a` inside the ideal. A generator
/// can always be chosen with `sqrt a <= alpha < sqrt a * eps`, which bounds
/// `v sqrt M <= sqrt a (eps + 1)`; a miss is conclusive only once the scan
/// reaches that bound.
pub fn brute_is_principal(ideal: &QuadIdeal, bound: SearchBound) -> PrincipalVerdict {
    let d = ideal.discriminant();
    let m = if d % 4 == 0 { d / 4 } else { d };
    let Ok(radical) = Radical::new(m) else {
        return PrincipalVerdict::Inconclusive;
    };
    let a = ideal.norm();
    let t = 4 * a as i128;
    for v in 0..=bound.max_v {
        for k in [-t, t] {
            let Some(u) = solve(m, v, k) else { continue };
            for su in [u as i128, -(u as i128)] {
                if in_ideal(su, v as i128, ideal) {
                    let gen = QuadInt::new(BigInt::from(su), BigInt::from(v), &radical)
                        .expect("integral by construction");
                    return PrincipalVerdict::Principal(gen);
                }
            }
        }
    }
    let Some(eps) = brute_unit(&radical, bound) else {
        return PrincipalVerdict::Inconclusive;
    };
    let eps_value = {
        let u = eps.u().to_f64().unwrap_or(f64::INFINITY);
        let v = eps.v().to_f64().unwrap_or(f64::INFINITY);
        (u + v * (m as f64).sqrt()) / 2.0
    };
    let needed = (a as f64).sqrt() * (eps_value + 1.0) / (m as f64).sqrt();
    if (bound.max_v as f64) >= needed.ceil() + 1.0 {
        PrincipalVerdict::NotPrincipal
    } else {
        PrincipalVerdict::Inconclusive
    }
}
