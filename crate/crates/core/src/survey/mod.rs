//! Exact counting surveys over ranges of radicals, discriminants and traces.
//!
//! Every survey splits its range into fixed blocks, scans the blocks on a
//! dedicated thread pool and merges the per-block results in block order on
//! the calling thread, so counters and record streams do not depend on the
//! number of workers.

mod constants;
mod fop;
mod main_survey;
mod parity;
mod partial;

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::arith::global_norm_radical;
use crate::quadfield::Radical;

pub use constants::{reference_constants, ReferenceConstants};
pub use fop::{fop_survey, FopCounters, FopEntry, FopSurvey};
pub use main_survey::{survey_main, MainCounters, MainRecord, MainSurvey};
pub use parity::{parity_survey, ParityCounters};
pub use partial::{survey_partial, PartialCounters};

/// Called with `(done, total)` items after each finished block.
pub type ProgressFn<'a> = &'a (dyn Fn(u64, u64) + Sync);

#[derive(Clone, Copy)]
pub struct SurveyOptions<'a> {
    /// Worker threads; 0 is treated as 1.
    pub jobs: usize,
    pub progress: Option<ProgressFn<'a>>,
}

impl Default for SurveyOptions<'_> {
    fn default() -> Self {
        SurveyOptions {
            jobs: 1,
            progress: None,
        }
    }
}

impl<'a> SurveyOptions<'a> {
    pub fn with_jobs(jobs: usize) -> Self {
        SurveyOptions {
            jobs,
            progress: None,
        }
    }
}

const BLOCK: u64 = 1 << 14;

/// `M` as a radical when it is squarefree with every odd prime `1 mod 4`.
pub(crate) fn global_norm_field(m: u64) -> Option<Radical> {
    global_norm_radical(m).map(|primes| Radical::from_primes(m, primes))
}

/// Maps `f` over the blocks of `[lo, hi]` and returns the results in block
/// order.
pub(crate) fn par_blocks<T, F>(lo: u64, hi: u64, opts: &SurveyOptions<'_>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
{
    if lo > hi {
        return Vec::new();
    }
    let total = hi - lo + 1;
    let blocks: Vec<(u64, u64)> = (0..total.div_ceil(BLOCK))
        .map(|i| {
            let start = lo + i * BLOCK;
            (start, (start + BLOCK - 1).min(hi))
        })
        .collect();
    let done = AtomicU64::new(0);
    let run = || {
        blocks
            .par_iter()
            .map(|&(start, end)| {
                let out = f(start, end);
                let n = done.fetch_add(end - start + 1, Ordering::Relaxed) + end - start + 1;
                if let Some(report) = opts.progress {
                    report(n, total);
                }
                out
            })
            .collect()
    };
    match rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
    {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}

/// `num / den` to 10 significant digits, rounded half up; `None` for
/// `den = 0`.
pub fn ratio(num: u64, den: u64) -> Option<String> {
    const DIGITS: u32 = 10;
    if den == 0 {
        return None;
    }
    if num == 0 {
        return Some("0".to_string());
    }
    let (n, d) = (num as u128, den as u128);
    // Find k with 10^(DIGITS-1) <= n 10^k / d < 10^DIGITS.
    let mut k: i32 = 0;
    let low = 10u128.pow(DIGITS - 1);
    let high = 10u128.pow(DIGITS);
    let scaled = |k: i32| -> (u128, u128) {
        if k >= 0 {
            (n * 10u128.pow(k as u32), d)
        } else {
            (n, d * 10u128.pow((-k) as u32))
        }
    };
    loop {
        let (a, b) = scaled(k);
        let q = a / b;
        if q < low {
            k += 1;
        } else if q >= high {
            k -= 1;
        } else {
            break;
        }
    }
    let (a, b) = scaled(k);
    let mut q = (2 * a + b) / (2 * b);
    if q == high {
        q /= 10;
        k -= 1;
    }
    let digits = q.to_string();
    // value = q * 10^-k, with `int_len` digits before the point
    let int_len = DIGITS as i32 - k;
    Some(if int_len <= 0 {
        format!("0.{}{}", "0".repeat((-int_len) as usize), digits)
    } else if int_len as u32 >= DIGITS {
        format!("{}{}", digits, "0".repeat((int_len - DIGITS as i32) as usize))
    } else {
        let (i, f) = digits.split_at(int_len as usize);
        format!("{i}.{f}")
    })
}
