//! Exact integer utilities: primality, factorization, squarefree cores and
//! the test for `-1` being a norm from `Q(sqrt M)`.
//!
//! Factorization is trial division by the primes below 1000, followed by a
//! deterministic Miller-Rabin test and Pollard's rho (Brent variant) on the
//! remaining cofactor. Every input fits in a `u64`, which is far beyond the
//! values the surveys produce (`t^2 + 4` stays below `10^15`).

use std::sync::OnceLock;

use num_integer::Integer;

use crate::error::{Error, Result};

const TRIAL_BOUND: u64 = 1000;

/// Witnesses making Miller-Rabin deterministic below 3.3 * 10^24.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_BOUND as usize;
        let mut composite = vec![false; n];
        let mut out = Vec::new();
        for i in 2..n {
            if !composite[i] {
                out.push(i as u64);
                let mut j = i * i;
                while j < n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

/// A complete prime factorization of a positive integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Number of distinct prime divisors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Multiplies the factors back together.
    pub fn product(&self) -> u128 {
        self.factors
            .iter()
            .map(|&(p, e)| (p as u128).pow(e))
            .product()
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test valid for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Finds a nontrivial factor of an odd composite `n` (Brent's cycle search
/// with batched gcds).
fn rho_brent(n: u64) -> u64 {
    const BATCH: u64 = 128;
    for c in 1..n {
        let step = |x: u64| -> u64 {
            let y = mul_mod(x, x, n) + c;
            if y >= n {
                y - n
            } else {
                y
            }
        };
        let mut y = 2 % n;
        let mut x = y;
        let mut ys = y;
        let mut q = 1u64;
        let mut r = 1u64;
        let mut g = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = step(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            r <<= 1;
        }
        if g == n {
            // The batch overshot: replay one step at a time.
            loop {
                ys = step(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho_brent called on a prime or unit")
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    if let Some(r) = exact_sqrt(n) {
        split_into(r, out);
        split_into(r, out);
        return;
    }
    let d = rho_brent(n);
    split_into(d, out);
    split_into(n / d, out);
}

fn collect(mut primes: Vec<u64>) -> Vec<(u64, u32)> {
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Complete prime factorization of `n >= 1`; `factorize(1)` is empty.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut rest = n;
    let mut factors = Vec::new();
    for &p in small_primes() {
        if p * p > rest {
            break;
        }
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if rest > 1 {
        if rest < TRIAL_BOUND * TRIAL_BOUND {
            factors.push((rest, 1));
        } else {
            let mut big = Vec::new();
            split_into(rest, &mut big);
            factors.extend(collect(big));
        }
    }
    Ok(Factorization { value: n, factors })
}

/// Writes `n = core * cofactor^2` with `core` squarefree.
pub fn squarefree_core(n: u64) -> Result<(u64, u64)> {
    let f = factorize(n)?;
    let mut core = 1u64;
    let mut cofactor = 1u64;
    for &(p, e) in f.factors() {
        if e % 2 == 1 {
            core *= p;
        }
        cofactor *= p.pow(e / 2);
    }
    Ok((core, cofactor))
}

/// Number of distinct prime divisors of `n >= 1`.
pub fn omega(n: u64) -> Result<usize> {
    Ok(factorize(n)?.omega())
}

/// True iff `-1` is a norm from `Q(sqrt M)`, i.e. every odd prime divisor of
/// the squarefree `M` is `1 mod 4`.
pub fn is_global_norm_minus_one(m: u64) -> Result<bool> {
    let f = factorize(m)?;
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree(m));
    }
    let ok = f.primes().filter(|&p| p != 2).all(|p| p % 4 == 1);
    Ok(ok)
}

/// Screens a survey candidate: returns the sorted primes of `n` when `n` is
/// squarefree and all its odd primes are `1 mod 4`, `None` otherwise. Exits
/// as soon as a square factor or a prime `3 mod 4` shows up.
pub fn global_norm_radical(n: u64) -> Option<Vec<u64>> {
    if n < 2 {
        return None;
    }
    let mut rest = n;
    let mut primes = Vec::new();
    for &p in small_primes() {
        if p * p > rest {
            break;
        }
        if rest % p == 0 {
            rest /= p;
            if rest % p == 0 || (p != 2 && p % 4 == 3) {
                return None;
            }
            primes.push(p);
        }
    }
    if rest > 1 {
        if rest < TRIAL_BOUND * TRIAL_BOUND {
            if rest % 4 == 3 {
                return None;
            }
            primes.push(rest);
        } else {
            // All remaining primes are odd; a square factor or a mixed
            // residue is only visible after splitting.
            let f = factorize(rest).ok()?;
            if !f.is_squarefree() || f.primes().any(|p| p % 4 == 3) {
                return None;
            }
            primes.extend(f.primes());
        }
    }
    Some(primes)
}

/// Exact square root when `n` is a perfect square.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

/// Floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).map_or(true, |s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).map_or(false, |s| s <= n) {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_examples() {
        let f = factorize(15170).unwrap();
        assert_eq!(f.factors(), &[(2, 1), (5, 1), (37, 1), (41, 1)]);
        let f = factorize(999826).unwrap();
        assert_eq!(f.factors(), &[(2, 1), (41, 1), (89, 1), (137, 1)]);
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(0), Err(Error::Zero));
    }

    #[test]
    fn factor_large_semiprimes() {
        let p = 1_000_000_007u64;
        let q = 998_244_353u64;
        assert_eq!(factorize(p * q).unwrap().factors(), &[(q, 1), (p, 1)]);
        let r = 4_294_967_291u64; // largest prime below 2^32
        assert_eq!(factorize(r * r).unwrap().factors(), &[(r, 2)]);
        assert_eq!(
            factorize(u64::MAX).unwrap().product(),
            u64::MAX as u128
        );
        // t^2 + 4 at the top of the trace survey
        let t = 999_999u64;
        let f = factorize(t * t + 4).unwrap();
        assert_eq!(f.product(), (t * t + 4) as u128);
        assert!(f.primes().all(is_prime));
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..100).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes.len(), 25);
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn core_examples() {
        assert_eq!(squarefree_core(12).unwrap(), (3, 2));
        assert_eq!(squarefree_core(8).unwrap(), (2, 2));
        assert_eq!(squarefree_core(5).unwrap(), (5, 1));
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(15170).unwrap(), 4);
        assert_eq!(omega(1).unwrap(), 0);
        assert_eq!(omega(51).unwrap(), 2);
    }

    #[test]
    fn global_norm_examples() {
        assert!(is_global_norm_minus_one(34).unwrap());
        assert!(!is_global_norm_minus_one(15).unwrap());
        assert!(is_global_norm_minus_one(2).unwrap());
        assert_eq!(is_global_norm_minus_one(12), Err(Error::NotSquarefree(12)));
    }

    #[test]
    fn small_range_invariants() {
        for n in 1..=1_000_000u64 {
            let f = factorize(n).unwrap();
            assert_eq!(f.product(), n as u128);
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            let (core, co) = squarefree_core(n).unwrap();
            assert_eq!(core * co * co, n);
            assert!(factorize(core).unwrap().is_squarefree());
        }
    }

    #[test]
    fn screening_agrees_with_direct_residue_checks() {
        for m in 2..=100_000u64 {
            let f = factorize(m).unwrap();
            let direct = f.is_squarefree()
                && f.primes().all(|p| p == 2 || p % 4 == 1);
            assert_eq!(global_norm_radical(m).is_some(), direct, "{m}");
            if f.is_squarefree() {
                assert_eq!(is_global_norm_minus_one(m).unwrap(), direct);
            }
        }
    }
}
