//! Primitive ideals `[a, (P + sqrt D)/2]` of the maximal order, with
//! composition, reduction and an ordinary (wide) principality test.
//!
//! An ideal is principal iff its reduced form lies on the cycle of reduced
//! complete quotients of `omega`; that cycle is walked once per field and
//! cached.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cf;
use crate::criterion::classify_norm;
use crate::error::{Error, Result};
use crate::quadfield::Radical;

/// Default bound on the number of primes scanned by [`relation_lattice`].
pub const LATTICE_CAP: usize = 12;

/// `[a, (P + sqrt D)/2]` with `P^2 = D mod 4a` and `0 <= P < 2a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadIdeal {
    a: u64,
    p: u64,
    d: u64,
}

impl QuadIdeal {
    pub fn new(a: u64, p: u64, d: u64) -> Result<Self> {
        let valid = a > 0
            && p < 2 * a
            && (p as u128 * p as u128) % (4 * a as u128) == d as u128 % (4 * a as u128);
        if valid {
            Ok(QuadIdeal { a, p, d })
        } else {
            Err(Error::InvalidIdeal { a, p, d })
        }
    }

    /// The ring of integers itself.
    pub fn unit(d: u64) -> Self {
        QuadIdeal { a: 1, p: d & 1, d }
    }

    pub fn norm(&self) -> u64 {
        self.a
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn discriminant(&self) -> u64 {
        self.d
    }

    pub fn is_unit(&self) -> bool {
        self.a == 1
    }

    pub fn conj(&self) -> Self {
        let two_a = 2 * self.a;
        QuadIdeal {
            a: self.a,
            p: (two_a - self.p % two_a) % two_a,
            d: self.d,
        }
    }

    /// Composition: `self * other = e [A, (B + sqrt D)/2]`, returned as the
    /// primitive part with the rational content `e`.
    pub fn compose(&self, other: &QuadIdeal) -> Result<(QuadIdeal, u64)> {
        debug_assert_eq!(self.d, other.d);
        let (a1, b1) = (BigInt::from(self.a), BigInt::from(self.p));
        let (a2, b2) = (BigInt::from(other.a), BigInt::from(other.p));
        let d = BigInt::from(self.d);
        let h: BigInt = (&b1 + &b2) >> 1u32;
        let g12 = a1.extended_gcd(&a2);
        let g = g12.gcd.extended_gcd(&h);
        let e = g.gcd;
        let (x1, x2, x3) = (&g.x * &g12.x, &g.x * &g12.y, g.y);
        let big_a: BigInt = &a1 * &a2 / (&e * &e);
        let numerator = &x1 * &a1 * &b2 + &x2 * &a2 * &b1 + &x3 * ((&b1 * &b2 + &d) >> 1u32);
        debug_assert!((&numerator % &e).is_zero());
        let big_b = (numerator / &e).mod_floor(&(&big_a * 2));
        let overflow = || Error::InvalidIdeal {
            a: u64::MAX,
            p: 0,
            d: self.d,
        };
        let a = big_a.to_u64().ok_or_else(overflow)?;
        let p = big_b.to_u64().ok_or_else(overflow)?;
        let e = e.abs().to_u64().ok_or_else(overflow)?;
        Ok((QuadIdeal::new(a, p, self.d)?, e))
    }

    /// The reduced ideal reached by the continued-fraction operator, with
    /// the number of steps.
    pub fn reduce(&self) -> (QuadIdeal, usize) {
        let ((p, q), steps) = raw_reduce(self);
        let a = q / 2;
        (
            QuadIdeal {
                a,
                p: p % (2 * a),
                d: self.d,
            },
            steps,
        )
    }
}

fn raw_reduce(ideal: &QuadIdeal) -> ((u64, u64), usize) {
    cf::reduce(ideal.d, ideal.p as i128, 2 * ideal.a as i128)
}

impl fmt::Display for QuadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, ({} + sqrt({}))/2]", self.a, self.p, self.d)
    }
}

/// The prime above a ramified `q`; its square is `(q)`.
pub fn ramified_ideal(q: u64, radical: &Radical) -> Result<QuadIdeal> {
    let d = radical.discriminant();
    let m = radical.get();
    if q == 2 && d % 4 == 0 {
        let p = if m % 2 == 0 { 0 } else { 2 };
        return QuadIdeal::new(2, p, d);
    }
    if q != 2 && radical.primes().binary_search(&q).is_ok() {
        let p = if d % 2 == 0 { 0 } else { q };
        return QuadIdeal::new(q, p, d);
    }
    Err(Error::NotRamified { q, d })
}

/// Primitive part of the product of the primes above `primes` (distinct,
/// each ramified), with the rational content stripped off.
pub fn ideal_product(primes: &[u64], radical: &Radical) -> Result<(QuadIdeal, u64)> {
    let mut acc = QuadIdeal::unit(radical.discriminant());
    let mut content = 1u64;
    for &q in primes {
        let (next, e) = acc.compose(&ramified_ideal(q, radical)?)?;
        acc = next;
        content *= e;
    }
    Ok((acc, content))
}

/// The reduced complete quotients of one period of `omega`.
struct PrincipalCycle {
    members: HashSet<(u64, u64)>,
    len: usize,
}

/// Per-field principality oracle; the principal cycle is computed on first
/// use and shared by later queries.
pub struct Field {
    radical: Radical,
    cycle: OnceLock<PrincipalCycle>,
}

impl Field {
    pub fn new(radical: Radical) -> Self {
        Field {
            radical,
            cycle: OnceLock::new(),
        }
    }

    pub fn radical(&self) -> &Radical {
        &self.radical
    }

    fn cycle(&self) -> &PrincipalCycle {
        self.cycle.get_or_init(|| {
            let cycle = cf::principal_cycle(self.radical.discriminant());
            PrincipalCycle {
                len: cycle.len(),
                members: cycle.into_iter().collect(),
            }
        })
    }

    /// Number of reduced ideals in the principal class.
    pub fn principal_cycle_len(&self) -> usize {
        self.cycle().len
    }

    pub fn is_principal(&self, ideal: &QuadIdeal) -> bool {
        debug_assert_eq!(ideal.d, self.radical.discriminant());
        let (reduced, _) = raw_reduce(ideal);
        self.cycle().members.contains(&reduced)
    }

    /// `0/1` vectors over the sorted primes of `M` (most significant digit
    /// first, in increasing binary order) whose ideal product is principal.
    pub fn relation_lattice(&self, cap: usize) -> Result<Vec<Vec<u8>>> {
        let primes = self.radical.primes();
        let r = primes.len();
        if r > cap {
            return Err(Error::TooManyPrimes { r, cap });
        }
        let mut out = Vec::new();
        for k in 1u32..(1 << r) {
            let digits: Vec<u8> = (0..r).map(|j| ((k >> (r - 1 - j)) & 1) as u8).collect();
            let chosen: Vec<u64> = primes
                .iter()
                .zip(&digits)
                .filter(|&(_, &e)| e == 1)
                .map(|(&q, _)| q)
                .collect();
            let (ideal, _) = ideal_product(&chosen, &self.radical)?;
            if self.is_principal(&ideal) {
                out.push(digits);
            }
        }
        Ok(out)
    }
}

pub fn is_principal(ideal: &QuadIdeal) -> Result<bool> {
    let d = ideal.d;
    let m = if d % 4 == 0 { d / 4 } else { d };
    Ok(Field::new(Radical::new(m)?).is_principal(ideal))
}

pub fn relation_lattice(radical: &Radical) -> Result<Vec<Vec<u8>>> {
    Field::new(radical.clone()).relation_lattice(LATTICE_CAP)
}

/// Class of the prime above 2 when 2 ramifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Q2Class {
    Principal,
    /// The pair of non-canonical supports, smaller first.
    NonPrincipal { m: u64, n: u64 },
}

/// Decides the principality of the prime above 2 from the cycle test and,
/// for `M = 3 mod 4`, checks it against the supports from `eps +- 1`: the
/// pair is canonical exactly when the prime above 2 is principal.
pub fn classify_q2(radical: &Radical) -> Result<Q2Class> {
    let m_val = radical.get();
    if m_val % 4 == 1 {
        return Err(Error::WrongResidue {
            m: m_val,
            reason: "2 does not ramify when M = 1 mod 4",
        });
    }
    let field = Field::new(radical.clone());
    let principal = field.is_principal(&ramified_ideal(2, radical)?);
    let r = classify_norm(radical)?;
    let (lo, hi) = (r.m.min(r.m_prime), r.m.max(r.m_prime));
    if m_val % 4 == 3 {
        let canonical = (lo, hi) == (1, m_val);
        if canonical != principal {
            return Err(Error::Inconsistent {
                m: m_val,
                m_plus: r.m,
                m_minus: r.m_prime,
            });
        }
    }
    Ok(if principal {
        Q2Class::Principal
    } else {
        Q2Class::NonPrincipal { m: lo, n: hi }
    })
}
