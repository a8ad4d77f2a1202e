//! Continued fractions of quadratic irrationals `(P + sqrt D) / Q`.
//!
//! All expansions keep the invariant `Q | D - P^2` with `Q` even, so each
//! complete quotient is the ideal `[Q/2, (P + sqrt D)/2]` up to scaling. The
//! principal expansion starts at `omega = (b + sqrt D)/2`, `b = D mod 2`, and
//! its first period ends at the first index `i >= 1` with `Q_i = 2`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::isqrt;

/// Reduced `(P_i, Q_i)` of `omega` for `i = 1..=l`, one full period.
pub(crate) fn principal_cycle(d: u64) -> Vec<(u64, u64)> {
    debug_assert!(d < 1 << 62);
    let s = isqrt(d);
    let mut p = d & 1;
    let mut q = 2u64;
    let mut cycle = Vec::new();
    loop {
        let a = (p + s) / q;
        let next_p = a * q - p;
        q = (d - next_p * next_p) / q;
        p = next_p;
        cycle.push((p, q));
        if q == 2 {
            return cycle;
        }
    }
}

/// Partial quotients `a_0..a_{l-1}` of one period of `omega`.
pub(crate) fn principal_quotients(d: u64) -> Vec<u64> {
    debug_assert!(d < 1 << 62);
    let s = isqrt(d);
    let mut p = d & 1;
    let mut q = 2u64;
    let mut quotients = Vec::new();
    loop {
        let a = (p + s) / q;
        quotients.push(a);
        let next_p = a * q - p;
        q = (d - next_p * next_p) / q;
        p = next_p;
        if q == 2 {
            return quotients;
        }
    }
}

type Mat = [BigUint; 4];

fn mat_mul(x: &Mat, y: &Mat) -> Mat {
    [
        &x[0] * &y[0] + &x[1] * &y[2],
        &x[0] * &y[1] + &x[1] * &y[3],
        &x[2] * &y[0] + &x[3] * &y[2],
        &x[2] * &y[1] + &x[3] * &y[3],
    ]
}

/// Runs of quotients are folded in machine words until the next step would
/// overflow; the word-sized blocks are then combined by a balanced product
/// tree so that large operands meet fast multiplication.
fn leaf_blocks(quotients: &[u64]) -> Vec<Mat> {
    let mut leaves = Vec::new();
    let mut acc = [1u64, 0, 0, 1];
    let mut fresh = true;
    for &a in quotients {
        let next = (|| {
            Some([
                acc[0].checked_mul(a)?.checked_add(acc[1])?,
                acc[0],
                acc[2].checked_mul(a)?.checked_add(acc[3])?,
                acc[2],
            ])
        })();
        match next {
            Some(m) => {
                acc = m;
                fresh = false;
            }
            None => {
                leaves.push(acc.map(BigUint::from));
                acc = [a, 1, 1, 0];
            }
        }
    }
    if !fresh || leaves.is_empty() {
        leaves.push(acc.map(BigUint::from));
    }
    leaves
}

/// `[[p_{l-1}, p_{l-2}], [q_{l-1}, q_{l-2}]]` for the given partial quotients.
pub(crate) fn convergent_matrix(quotients: &[u64]) -> Mat {
    let mut level = leaf_blocks(quotients);
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        let mut it = level.chunks_exact(2);
        for pair in &mut it {
            next.push(mat_mul(&pair[0], &pair[1]));
        }
        if let [last] = it.remainder() {
            next.push(last.clone());
        }
        level = next;
    }
    level
        .pop()
        .unwrap_or_else(|| [BigUint::one(), BigUint::zero(), BigUint::zero(), BigUint::one()])
}

#[inline]
fn floor_quotient(p: i128, q: i128, s: i128) -> i128 {
    if q > 0 {
        Integer::div_floor(&(p + s), &q)
    } else {
        Integer::div_floor(&(p + s + 1), &q)
    }
}

#[inline]
pub(crate) fn is_reduced(p: i128, q: i128, s: i128) -> bool {
    q > 0 && p > 0 && p <= s && q > s - p && q <= s + p
}

/// Expands `(p + sqrt d)/q` until the complete quotient is reduced and
/// returns the reduced `(P, Q)` with the number of steps taken.
pub(crate) fn reduce(d: u64, p: i128, q: i128) -> ((u64, u64), usize) {
    let d = d as i128;
    let s = isqrt(d as u64) as i128;
    debug_assert!((d - p * p) % q == 0);
    let (mut p, mut q) = (p, q);
    let mut steps = 0;
    while !is_reduced(p, q, s) {
        let a = floor_quotient(p, q, s);
        let next_p = a * q - p;
        q = (d - next_p * next_p) / q;
        p = next_p;
        steps += 1;
    }
    ((p as u64, q as u64), steps)
}

/// Residues of the convergent pair `(p_{l-1}, q_{l-1})` modulo `modulus`,
/// with the period length `l`. `modulus * (isqrt(d) + 1)` must fit in a
/// `u64`, which keeps every intermediate in machine words.
pub(crate) fn convergent_residues(d: u64, modulus: u64) -> (u64, u64, usize) {
    let s = isqrt(d);
    debug_assert!(modulus.checked_mul(s + 2).is_some());
    let mut p = (d & 1) as i64;
    let mut q = 2i64;
    // Q_{-1} = (D - P_0^2) / Q_0
    let mut q_prev = ((d - (d & 1)) / 2) as i64;
    let (mut p1, mut p0) = (1u64 % modulus, 0u64);
    let (mut q1, mut q0) = (0u64, 1u64 % modulus);
    let mut len = 0usize;
    let s = s as i64;
    loop {
        let a = (p + s) / q;
        let au = a as u64;
        let np = (au * p1 + p0) % modulus;
        p0 = p1;
        p1 = np;
        let nq = (au * q1 + q0) % modulus;
        q0 = q1;
        q1 = nq;
        len += 1;
        let next_p = a * q - p;
        let next_q = q_prev + a * (p - next_p);
        q_prev = q;
        p = next_p;
        q = next_q;
        if q == 2 {
            return (p1, q1, len);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_periods() {
        // sqrt 2 = [1; 2, 2, ...] and omega for D = 5 is the golden ratio
        assert_eq!(principal_quotients(8), vec![1]);
        assert_eq!(principal_quotients(5), vec![1]);
        assert_eq!(principal_quotients(12), vec![1, 1]);
        // sqrt 51 = [7; 7, 14]
        assert_eq!(principal_quotients(204), vec![7, 7]);
    }

    #[test]
    fn residues_match_exact_convergents() {
        for d in [5u64, 8, 12, 13, 21, 204, 4 * 94, 4 * 15170, 141245] {
            let quotients = principal_quotients(d);
            let m = convergent_matrix(&quotients);
            let modulus = 1_000_003u64;
            let (p, q, len) = convergent_residues(d, modulus);
            assert_eq!(len, quotients.len());
            assert_eq!(BigUint::from(p), &m[0] % modulus);
            assert_eq!(BigUint::from(q), &m[2] % modulus);
            assert_eq!(principal_cycle(d).len(), len);
        }
    }

    #[test]
    fn product_tree_matches_naive_recurrence() {
        let quotients: Vec<u64> = (0..500).map(|i| (i * 7919 % 1000) as u64 + 1).collect();
        let (mut p1, mut p0) = (BigUint::one(), BigUint::zero());
        let (mut q1, mut q0) = (BigUint::zero(), BigUint::one());
        for &a in &quotients {
            let np = &p1 * a + &p0;
            p0 = std::mem::replace(&mut p1, np);
            let nq = &q1 * a + &q0;
            q0 = std::mem::replace(&mut q1, nq);
        }
        let m = convergent_matrix(&quotients);
        assert_eq!(m, [p1, p0, q1, q0]);
    }

    #[test]
    fn reduction_lands_in_principal_cycle() {
        // the unit ideal [1, (b + sqrt D)/2] reduces into its own cycle
        for d in [5u64, 8, 12, 60, 204, 221, 4 * 15170] {
            let cycle = principal_cycle(d);
            let b = (d & 1) as i128;
            let (reduced, _) = reduce(d, b, 2);
            assert!(cycle.contains(&reduced), "D={d}");
        }
    }
}
