//! Predicting `N(eps)` from gcds on `eps + 1` and `eps - 1`.
//!
//! Write `eps + s = g (A + B sqrt M)` with `g` the largest rational integer
//! leaving an algebraic integer. The supports are `m = gcd(A, M)` from
//! `s = +1` and `m' = gcd(A', M)` from `s = -1`, with `2A` used in place of
//! `A` when `A` is half-odd (then `M` is odd and the prime content agrees).
//!
//! The prediction ladder, valid when `-1` is a norm from `K`:
//!
//! * `m = 1` gives `S = -1`;
//! * `m > 2` gives `S = +1`;
//! * `m = 2` defers to `m'`: `m' > 2` gives `+1`, `m' = 2` gives `-1`.
//!
//! Surveys use [`supports`], which reads the same valuations off the
//! convergents reduced modulo a power of `M` and only falls back to the exact
//! big-integer route when the truncated valuations tie.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::isqrt;
use crate::cf;
use crate::error::{Error, Result};
use crate::quadfield::{fundamental_unit, FundamentalUnit, QuadInt, Radical};

/// An element of `(1/2) Z`, stored as twice its value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfInt {
    twice: BigInt,
}

impl HalfInt {
    pub fn from_twice(twice: BigInt) -> Self {
        HalfInt { twice }
    }

    pub fn twice(&self) -> &BigInt {
        &self.twice
    }

    pub fn is_integer(&self) -> bool {
        self.twice.is_even()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| &self.twice >> 1u32)
    }

    /// Renders as an exact decimal: `370`, `-3.5`.
    fn render(&self) -> String {
        let whole = self.twice.abs() >> 1u32;
        let sign = if self.twice.is_negative() { "-" } else { "" };
        if self.is_integer() {
            format!("{sign}{whole}")
        } else {
            format!("{sign}{whole}.5")
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `eps + sign = g (A + B sqrt M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    pub sign: i8,
    pub g: BigUint,
    pub a: HalfInt,
    pub b: HalfInt,
}

impl SplitResult {
    /// The algebraic integer `A + B sqrt M`.
    pub fn cofactor(&self, m: u64) -> QuadInt {
        QuadInt::new_unchecked(self.a.twice.clone(), self.b.twice.clone(), m)
    }

    /// `gcd(A, M)`, or `gcd(2A, M)` for half-odd `A`; `gcd(0, M) = M`.
    pub fn support(&self, m: u64) -> u64 {
        let numerator = match self.a.to_integer() {
            Some(a) => a,
            None => self.a.twice.clone(),
        };
        let r = (numerator.abs() % m).to_u64().expect("residue below M");
        r.gcd(&m)
    }
}

/// Splits `eps + sign` into its rational content and primitive part.
pub fn gcd_split(eps: &QuadInt, sign: i8) -> SplitResult {
    let m = eps.radical();
    let big_u = eps.u() + 2 * i64::from(sign);
    let big_v = eps.v().clone();
    let h = big_u.gcd(&big_v);
    debug_assert!(!h.is_zero());
    // `(U + V sqrt M)/(2g)` must stay integral: `g = h` needs `U/h = V/h`
    // mod 2, which requires `M = 1 mod 4`.
    let same_parity = (&big_u / &h).is_odd() == (&big_v / &h).is_odd();
    let g = if m % 4 == 1 && same_parity { h } else { h >> 1u32 };
    SplitResult {
        sign,
        a: HalfInt::from_twice(&big_u / &g),
        b: HalfInt::from_twice(&big_v / &g),
        g: g.magnitude().clone(),
    }
}

/// The criterion record for one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub radical: Radical,
    pub unit: FundamentalUnit,
    pub plus: SplitResult,
    pub minus: SplitResult,
    pub m: u64,
    pub m_prime: u64,
    /// `M / m`.
    pub n: u64,
    /// `A / m`.
    pub c: HalfInt,
    pub predicted_s: i8,
    /// `-1` is a norm from `K`; the ladder is only meaningful when set.
    pub global_norm: bool,
}

/// The ladder on `(m, m')`; `None` for the one combination it leaves open.
pub fn ladder(m: u64, m_prime: u64) -> Option<i8> {
    match (m, m_prime) {
        (1, _) => Some(-1),
        (2, 2) => Some(-1),
        (2, mp) if mp > 2 => Some(1),
        (2, _) => None,
        _ => Some(1),
    }
}

pub fn classify_norm(radical: &Radical) -> Result<CriterionResult> {
    let unit = fundamental_unit(radical);
    let m_val = radical.get();
    let plus = gcd_split(&unit.eps, 1);
    let minus = gcd_split(&unit.eps, -1);
    let m = plus.support(m_val);
    let m_prime = minus.support(m_val);
    let global_norm = radical.is_global_norm();
    let predicted_s = if global_norm {
        ladder(m, m_prime).ok_or(Error::Inconsistent {
            m: m_val,
            m_plus: m,
            m_minus: m_prime,
        })?
    } else {
        1
    };
    let c = HalfInt::from_twice(&plus.a.twice / BigInt::from(m));
    Ok(CriterionResult {
        radical: radical.clone(),
        unit,
        plus,
        minus,
        m,
        m_prime,
        n: m_val / m,
        c,
        predicted_s,
        global_norm,
    })
}

impl CriterionResult {
    /// The supports differ from the canonical `{1, M}`.
    pub fn has_relation(&self) -> bool {
        self.m != 1 && self.m != self.radical.get()
    }

    pub fn report(&self) -> CriterionReport {
        CriterionReport {
            m_radical: self.radical.get().to_string(),
            d: self.radical.discriminant().to_string(),
            s: self.predicted_s,
            g: self.plus.g.to_string(),
            a: self.plus.a.to_string(),
            b: self.plus.b.to_string(),
            gp: self.minus.g.to_string(),
            ap: self.minus.a.to_string(),
            bp: self.minus.b.to_string(),
            m: self.m.to_string(),
            mp: self.m_prime.to_string(),
            n: self.n.to_string(),
            global_norm: self.global_norm,
        }
    }
}

/// Serializable view of a [`CriterionResult`]; integers are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    #[serde(rename = "M")]
    pub m_radical: String,
    #[serde(rename = "D")]
    pub d: String,
    #[serde(rename = "S")]
    pub s: i8,
    pub g: String,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    pub gp: String,
    #[serde(rename = "Ap")]
    pub ap: String,
    #[serde(rename = "Bp")]
    pub bp: String,
    pub m: String,
    pub mp: String,
    pub n: String,
    pub global_norm: bool,
}

/// `alpha = C m + B sqrt M` and `beta = B n + C sqrt M`, generating the
/// products of ramified primes over `m` and `n`.
pub fn relation_generators(result: &CriterionResult) -> Result<(QuadInt, QuadInt)> {
    if result.predicted_s != 1 || !result.has_relation() {
        return Err(Error::NoRelation(result.radical.get()));
    }
    let m = result.radical.get();
    let b = &result.plus.b.twice;
    let c = &result.c.twice;
    let alpha = QuadInt::new_unchecked(c * result.m, b.clone(), m);
    let beta = QuadInt::new_unchecked(b * result.n, c.clone(), m);
    Ok((alpha, beta))
}

/// Supports for odd `M` with `-1` not a norm from `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonGlobalRelations {
    pub m: u64,
    pub m_prime: u64,
    /// `{m, m'} = {1, M}`: only the canonical relation is visible.
    pub canonical: bool,
    /// `M = 3 mod 4`, where 2 ramifies as well.
    pub two_ramified: bool,
}

pub fn relations_for_non_global_norm(radical: &Radical) -> Result<NonGlobalRelations> {
    let m_val = radical.get();
    if radical.is_even() {
        return Err(Error::WrongResidue {
            m: m_val,
            reason: "radical must be odd",
        });
    }
    if radical.is_global_norm() {
        return Err(Error::WrongResidue {
            m: m_val,
            reason: "-1 is a norm, so no prime divisor is 3 mod 4",
        });
    }
    let r = classify_norm(radical)?;
    Ok(NonGlobalRelations {
        m: r.m,
        m_prime: r.m_prime,
        canonical: !r.has_relation(),
        two_ramified: m_val % 4 == 3,
    })
}

/// The supports `(m, m')` and, for even `M`, the parity of `b` in
/// `eps = a + b sqrt M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Supports {
    pub m: u64,
    pub m_prime: u64,
    pub b_odd: bool,
    /// The residue route tied and the exact route decided.
    pub exact_fallback: bool,
}

impl Supports {
    pub fn predicted_s(&self) -> Option<i8> {
        ladder(self.m, self.m_prime)
    }
}

pub fn supports_exact(radical: &Radical) -> Supports {
    let unit = fundamental_unit(radical);
    let m = radical.get();
    let plus = gcd_split(&unit.eps, 1);
    let minus = gcd_split(&unit.eps, -1);
    Supports {
        m: plus.support(m),
        m_prime: minus.support(m),
        b_odd: radical.is_even() && (unit.eps.v() >> 1u32).is_odd(),
        exact_fallback: true,
    }
}

/// Modulus `W = M^k 2^j` for the largest `k`, then `j`, with
/// `W (isqrt(D) + 2)` inside a `u64`; `j = 0` for odd `M`. Returns the
/// valuation caps `(k, k + j)` for odd primes and for 2.
fn residue_modulus(m: u64, s: u64) -> (u32, u32, u64) {
    let limit = u64::MAX / (s + 2);
    let grow = |mut w: u64, f: u64| {
        let mut k = 0;
        while let Some(next) = w.checked_mul(f).filter(|&x| x <= limit) {
            w = next;
            k += 1;
        }
        (k, w)
    };
    let (k, w) = grow(1, m);
    if m % 2 == 1 || k == 0 {
        return (k, k, w);
    }
    // v_2(a + 1) + v_2(a - 1) = 2 v_2(b) + 1, so 2 needs the deeper cap
    let (j, w) = grow(w, 2);
    (k, k + j, w)
}

fn capped_valuation(mut r: u64, q: u64, cap: u32) -> u32 {
    if r == 0 {
        return cap;
    }
    let mut v = 0;
    while v < cap && r % q == 0 {
        r /= q;
        v += 1;
    }
    v
}

/// Product of the `q | M` with `v_q(target) > v_q(y)`, or `None` on a tie
/// at the cap where the residues cannot decide.
fn residue_support(primes: &[u64], target: u64, y: u64, caps: (u32, u32)) -> Option<u64> {
    let mut m = 1;
    for &q in primes {
        let cap = if q == 2 { caps.1 } else { caps.0 };
        let vt = capped_valuation(target, q, cap);
        let vy = capped_valuation(y, q, cap);
        if vt == cap && vy == cap {
            return None;
        }
        if vt > vy {
            m *= q;
        }
    }
    Some(m)
}

/// Radicals beyond this use the exact route; the residue walk keeps
/// `a (P - P')` in an `i64`.
const RESIDUE_LIMIT: u64 = 1 << 58;

/// Same answer as [`supports_exact`], computed from the convergents modulo
/// `M^k` when that suffices.
pub fn supports(radical: &Radical) -> Supports {
    let m = radical.get();
    let d = radical.discriminant();
    if d >= RESIDUE_LIMIT {
        return supports_exact(radical);
    }
    let s = isqrt(d);
    let (k, k2, w) = residue_modulus(m, s);
    if k == 0 {
        return supports_exact(radical);
    }
    let (p, q, _) = cf::convergent_residues(d, w);
    let sub = |x: u64, y: u64| (x + w - y % w) % w;
    let add = |x: u64, y: u64| ((x as u128 + y as u128) % w as u128) as u64;
    let (plus, minus, y) = if d % 4 == 0 {
        (add(p, 1), sub(p, 1), q)
    } else {
        let u = sub(add(p, p), q);
        (add(u, 2), sub(u, 2), q)
    };
    let primes = radical.primes();
    match (
        residue_support(primes, plus, y, (k, k2)),
        residue_support(primes, minus, y, (k, k2)),
    ) {
        (Some(mp), Some(mm)) => Supports {
            m: mp,
            m_prime: mm,
            // `w` is even whenever `M` is, so `q mod w` keeps the parity.
            b_odd: radical.is_even() && q % 2 == 1,
            exact_fallback: false,
        },
        _ => supports_exact(radical),
    }
}

/// True when both numerators of `eps + sign` are odd over 2; only possible
/// for `M = 1 mod 4`.
pub fn split_is_half(split: &SplitResult) -> bool {
    !split.a.is_integer()
}
