//! Arithmetic in the ring of integers of `Q(sqrt M)` and the fundamental unit.
//!
//! Elements are stored as `(u + v sqrt M)/2`. When `M = 1 mod 4`, `u` and `v`
//! share a parity; otherwise both are even. Trace and norm are then
//! `T = u` and `N = (u^2 - M v^2)/4`, always integers.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::factorize;
use crate::cf;
use crate::error::{Error, Result};

/// Largest supported radical (exclusive). Keeps `D = 4M` and every
/// continued-fraction intermediate inside machine words.
pub const MAX_RADICAL: u64 = 1 << 60;

/// A validated squarefree `M` with `2 <= M < 2^60`, carrying its primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Radical {
    m: u64,
    primes: Vec<u64>,
}

impl Radical {
    pub fn new(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::RadicalTooSmall(m));
        }
        if m >= MAX_RADICAL {
            return Err(Error::RadicalTooLarge(m));
        }
        let f = factorize(m)?;
        if !f.is_squarefree() {
            return Err(Error::NotSquarefree(m));
        }
        Ok(Radical {
            m,
            primes: f.primes().collect(),
        })
    }

    /// Caller guarantees `primes` is the sorted prime list of a squarefree `m`.
    pub(crate) fn from_primes(m: u64, primes: Vec<u64>) -> Self {
        debug_assert_eq!(primes.iter().product::<u64>(), m);
        Radical { m, primes }
    }

    pub fn get(&self) -> u64 {
        self.m
    }

    /// Sorted prime divisors of `M`.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `M` when `M = 1 mod 4`, `4M` otherwise.
    pub fn discriminant(&self) -> u64 {
        if self.m % 4 == 1 {
            self.m
        } else {
            4 * self.m
        }
    }

    pub fn is_even(&self) -> bool {
        self.m % 2 == 0
    }

    /// Every odd prime divisor is `1 mod 4`, i.e. `-1` is a norm from `K`.
    pub fn is_global_norm(&self) -> bool {
        self.primes.iter().all(|&p| p == 2 || p % 4 == 1)
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m)
    }
}

/// An algebraic integer `(u + v sqrt M)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadInt {
    u: BigInt,
    v: BigInt,
    m: u64,
}

fn parity_ok(u: &BigInt, v: &BigInt, m: u64) -> bool {
    if m % 4 == 1 {
        u.is_odd() == v.is_odd()
    } else {
        u.is_even() && v.is_even()
    }
}

impl QuadInt {
    /// Validates both the radical and the parity of the coordinates.
    pub fn make(u: impl Into<BigInt>, v: impl Into<BigInt>, m: u64) -> Result<Self> {
        let radical = Radical::new(m)?;
        Self::new(u, v, &radical)
    }

    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>, radical: &Radical) -> Result<Self> {
        let (u, v) = (u.into(), v.into());
        let m = radical.get();
        if !parity_ok(&u, &v, m) {
            return Err(Error::Parity {
                u: u.to_string(),
                v: v.to_string(),
                m,
            });
        }
        Ok(QuadInt { u, v, m })
    }

    pub(crate) fn new_unchecked(u: BigInt, v: BigInt, m: u64) -> Self {
        debug_assert!(parity_ok(&u, &v, m));
        QuadInt { u, v, m }
    }

    /// `a + b sqrt M` with integer `a`, `b`.
    pub fn from_integral(a: impl Into<BigInt>, b: impl Into<BigInt>, radical: &Radical) -> Self {
        let a: BigInt = a.into();
        let b: BigInt = b.into();
        QuadInt::new_unchecked(a * 2, b * 2, radical.get())
    }

    pub fn u(&self) -> &BigInt {
        &self.u
    }

    pub fn v(&self) -> &BigInt {
        &self.v
    }

    pub fn radical(&self) -> u64 {
        self.m
    }

    /// Both numerators odd, so the element is not in `Z[sqrt M]`.
    pub fn is_half(&self) -> bool {
        self.u.is_odd()
    }

    /// `(a, b)` with `self = a + b sqrt M`, if the element lies in `Z[sqrt M]`.
    pub fn integral_coords(&self) -> Option<(BigInt, BigInt)> {
        (!self.is_half()).then(|| (&self.u >> 1u32, &self.v >> 1u32))
    }

    fn same_field(&self, other: &QuadInt) -> Result<()> {
        if self.m == other.m {
            Ok(())
        } else {
            Err(Error::MixedRadicals(self.m, other.m))
        }
    }

    pub fn mul(&self, other: &QuadInt) -> Result<QuadInt> {
        self.same_field(other)?;
        // (u1 + v1 r)(u2 + v2 r)/4 = ((u1 u2 + M v1 v2)/2 + (u1 v2 + u2 v1)/2 r)/2
        let u = (&self.u * &other.u + &self.v * &other.v * self.m) >> 1u32;
        let v = (&self.u * &other.v + &other.u * &self.v) >> 1u32;
        Ok(QuadInt::new_unchecked(u, v, self.m))
    }

    pub fn add(&self, other: &QuadInt) -> Result<QuadInt> {
        self.same_field(other)?;
        Ok(QuadInt::new_unchecked(
            &self.u + &other.u,
            &self.v + &other.v,
            self.m,
        ))
    }

    /// `self + k` for a rational integer `k`.
    pub fn add_int(&self, k: i64) -> QuadInt {
        QuadInt::new_unchecked(&self.u + 2 * k, self.v.clone(), self.m)
    }

    pub fn neg(&self) -> QuadInt {
        QuadInt::new_unchecked(-&self.u, -&self.v, self.m)
    }

    pub fn conj(&self) -> QuadInt {
        QuadInt::new_unchecked(self.u.clone(), -&self.v, self.m)
    }

    pub fn trace(&self) -> BigInt {
        self.u.clone()
    }

    pub fn norm(&self) -> BigInt {
        (&self.u * &self.u - &self.v * &self.v * self.m) >> 2u32
    }

    /// Compares the real embedding (with `sqrt M > 0`) against 1.
    pub fn gt_one(&self) -> bool {
        let x: BigInt = &self.u - 2;
        let xs = x.sign();
        let vs = self.v.sign();
        match (xs, vs) {
            (Sign::Plus, Sign::Plus | Sign::NoSign) | (Sign::NoSign, Sign::Plus) => true,
            (Sign::Minus | Sign::NoSign, Sign::Minus | Sign::NoSign) => false,
            (Sign::Plus, Sign::Minus) => &x * &x > &self.v * &self.v * self.m,
            (Sign::Minus, Sign::Plus) => &self.v * &self.v * self.m > &x * &x,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    pub fn one(radical: &Radical) -> QuadInt {
        QuadInt::new_unchecked(BigInt::from(2), BigInt::zero(), radical.get())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, a: &BigInt, b: &BigInt, m: u64) -> fmt::Result {
    if b.is_zero() {
        return write!(f, "{a}");
    }
    let coeff = |f: &mut fmt::Formatter<'_>, b: &BigInt| {
        if b.abs().is_one() {
            write!(f, "sqrt({m})")
        } else {
            write!(f, "{}*sqrt({m})", b.abs())
        }
    };
    if a.is_zero() {
        if b.is_negative() {
            write!(f, "-")?;
        }
        return coeff(f, b);
    }
    write!(f, "{a} {} ", if b.is_negative() { '-' } else { '+' })?;
    coeff(f, b)
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.integral_coords() {
            Some((a, b)) => write_term(f, &a, &b, self.m),
            None => {
                write!(f, "(")?;
                write_term(f, &self.u, &self.v, self.m)?;
                write!(f, ")/2")
            }
        }
    }
}

/// The smallest unit greater than 1 with its norm and the continued-fraction
/// period it was read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalUnit {
    pub eps: QuadInt,
    /// `N(eps)`, equal to `(-1)^period_length`.
    pub norm_sign: i8,
    pub period_length: usize,
}

/// Reads the unit off the convergents `(p, q)` closing the first period of
/// `omega`. For `D = 4M` the unit is `p + q sqrt M`; for `D = M` it is
/// `p + q omega = (2p - q + q sqrt M)/2`.
pub fn fundamental_unit(radical: &Radical) -> FundamentalUnit {
    let d = radical.discriminant();
    let quotients = cf::principal_quotients(d);
    let [p, _, q, _] = cf::convergent_matrix(&quotients);
    let (p, q) = (BigInt::from(p), BigInt::from(q));
    let (u, v) = if d % 4 == 0 {
        (p * 2, q * 2)
    } else {
        (p * 2 - &q, q)
    };
    let l = quotients.len();
    FundamentalUnit {
        eps: QuadInt::new_unchecked(u, v, radical.get()),
        norm_sign: if l % 2 == 0 { 1 } else { -1 },
        period_length: l,
    }
}
