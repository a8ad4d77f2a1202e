use serde::Serialize;

use super::{par_blocks, ratio, SurveyOptions};
use crate::arith::factorize;

/// A field met by ascending trace: `M` is the squarefree core of `t^2 + 4`
/// (`sign = -1`) or of `t^2 - 4` (`sign = +1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FopEntry {
    #[serde(rename = "M")]
    pub radical: u64,
    pub sign: i8,
    pub t: u64,
}

impl FopEntry {
    pub const CSV_HEADER: &'static str = "M,sign,t";

    pub fn csv_row(&self) -> String {
        format!("{},{},{}", self.radical, self.sign, self.t)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FopCounters {
    #[serde(rename = "Cp")]
    pub cp: u64,
    #[serde(rename = "Cm")]
    pub cm: u64,
    pub total: u64,
}

impl FopCounters {
    pub fn densities(&self) -> [(&'static str, Option<String>); 2] {
        [
            ("dp", ratio(self.cp, self.total)),
            ("dm", ratio(self.cm, self.total)),
        ]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FopSurvey {
    /// One entry per radical, sorted by `M`.
    pub entries: Vec<FopEntry>,
    pub counters: FopCounters,
}

/// Squarefree core of the product of `parts`, factoring each part alone.
fn core_of(parts: &[u64]) -> u64 {
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for &n in parts {
        let f = factorize(n).expect("nonzero");
        factors.extend_from_slice(f.factors());
    }
    factors.sort_unstable();
    let mut core = 1u64;
    let mut i = 0;
    while i < factors.len() {
        let p = factors[i].0;
        let mut e = 0;
        while i < factors.len() && factors[i].0 == p {
            e += factors[i].1;
            i += 1;
        }
        if e % 2 == 1 {
            core *= p;
        }
    }
    core
}

/// Entries appended for trace `t`, in append order.
fn entries_at(t: u64, out: &mut Vec<FopEntry>) {
    out.push(FopEntry {
        radical: core_of(&[t * t + 4]),
        sign: -1,
        t,
    });
    if t >= 3 {
        let core = core_of(&[t - 2, t + 2]);
        let eligible = factorize(core)
            .expect("nonzero")
            .primes()
            .all(|p| p == 2 || p % 4 == 1);
        if eligible {
            out.push(FopEntry {
                radical: core,
                sign: 1,
                t,
            });
        }
    }
}

/// Appends the entries of `t = 1, 2, ...`, keeps the first `b` of them,
/// and retains the earliest entry for each radical.
pub fn fop_survey(b: u64, opts: &SurveyOptions<'_>) -> FopSurvey {
    // Every trace appends at least one entry, so `t <= b` suffices.
    let blocks = par_blocks(1, b, opts, |lo, hi| {
        let mut out = Vec::new();
        for t in lo..=hi {
            entries_at(t, &mut out);
        }
        out
    });
    let mut entries: Vec<FopEntry> = blocks.into_iter().flatten().take(b as usize).collect();
    entries.sort_by_key(|e| e.radical);
    entries.dedup_by_key(|e| e.radical);
    let cp = entries.iter().filter(|e| e.sign == 1).count() as u64;
    let total = entries.len() as u64;
    FopSurvey {
        counters: FopCounters {
            cp,
            cm: total - cp,
            total,
        },
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn single_trace() {
        let s = fop_survey(1, &SurveyOptions::default());
        assert_eq!(
            s.entries,
            vec![FopEntry {
                radical: 5,
                sign: -1,
                t: 1
            }]
        );
    }

    #[test]
    fn listing_prefix() {
        let s = fop_survey(100, &SurveyOptions::default());
        let head: Vec<(u64, i8)> = s.entries.iter().take(9).map(|e| (e.radical, e.sign)).collect();
        assert_eq!(
            head,
            vec![
                (2, -1),
                (5, -1),
                (10, -1),
                (13, -1),
                (17, -1),
                (26, -1),
                (29, -1),
                (34, 1),
                (37, -1)
            ]
        );
    }

    #[test]
    fn minus_entry_wins_ties() {
        // t = 3 gives t^2 - 4 = 5, already met at t = 1 with sign -1
        let s = fop_survey(50, &SurveyOptions::default());
        let five = s.entries.iter().find(|e| e.radical == 5).unwrap();
        assert_eq!((five.sign, five.t), (-1, 1));
    }

    #[test]
    fn dedup_and_jobs_invariance() {
        let a = fop_survey(10_000, &SurveyOptions::with_jobs(1));
        let b = fop_survey(10_000, &SurveyOptions::with_jobs(4));
        assert_eq!(a, b);
        let unique: HashSet<u64> = a.entries.iter().map(|e| e.radical).collect();
        assert_eq!(unique.len(), a.entries.len());
        assert!(a.entries.windows(2).all(|w| w[0].radical < w[1].radical));
        assert_eq!(a.counters.cp + a.counters.cm, a.counters.total);
    }

    #[test]
    fn cores_from_split_factors() {
        for t in 3..2000u64 {
            let direct = crate::arith::squarefree_core(t * t - 4).unwrap().0;
            assert_eq!(core_of(&[t - 2, t + 2]), direct);
        }
    }
}
