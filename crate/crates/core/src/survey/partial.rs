use serde::Serialize;

use super::{global_norm_field, par_blocks, ratio, SurveyOptions};
use crate::criterion::supports;

/// Six-way split of radicals with `-1` a norm. Even `M` land in the first
/// four counters by `(m = 2 or > 2, m' = 2 or > 2)`; odd `M` in `CC11`
/// (`m = m' = 1`) or `CCmp` (`m, m' > 2`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PartialCounters {
    #[serde(rename = "CM")]
    pub cm: u64,
    #[serde(rename = "C22")]
    pub c22: u64,
    #[serde(rename = "C2p")]
    pub c2p: u64,
    #[serde(rename = "Cm2")]
    pub cm2: u64,
    #[serde(rename = "Cmp")]
    pub cmp: u64,
    #[serde(rename = "CC11")]
    pub cc11: u64,
    #[serde(rename = "CCmp")]
    pub ccmp: u64,
}

impl PartialCounters {
    pub const CSV_HEADER: &'static str = "bM,BM,CM,C22,C2p,Cm2,Cmp,CC11,CCmp";

    pub fn merge(&mut self, o: &PartialCounters) {
        self.cm += o.cm;
        self.c22 += o.c22;
        self.c2p += o.c2p;
        self.cm2 += o.cm2;
        self.cmp += o.cmp;
        self.cc11 += o.cc11;
        self.ccmp += o.ccmp;
    }

    fn add(&mut self, even: bool, m: u64, mp: u64) {
        self.cm += 1;
        if even {
            match (m == 2, mp == 2, m > 2, mp > 2) {
                (true, true, _, _) => self.c22 += 1,
                (true, _, _, true) => self.c2p += 1,
                (_, true, true, _) => self.cm2 += 1,
                (_, _, true, true) => self.cmp += 1,
                _ => {}
            }
        } else if m == 1 && mp == 1 {
            self.cc11 += 1;
        } else if m > 2 && mp > 2 {
            self.ccmp += 1;
        }
    }

    /// The six classes should exhaust `CM`.
    pub fn class_sum(&self) -> u64 {
        self.c22 + self.c2p + self.cm2 + self.cmp + self.cc11 + self.ccmp
    }

    /// Number of even radicals scanned.
    pub fn even_total(&self) -> u64 {
        self.c22 + self.c2p + self.cm2 + self.cmp
    }

    /// Partial densities `d22 .. ddmp` relative to `CM`.
    pub fn densities(&self) -> [(&'static str, Option<String>); 6] {
        [
            ("d22", ratio(self.c22, self.cm)),
            ("d2p", ratio(self.c2p, self.cm)),
            ("dm2", ratio(self.cm2, self.cm)),
            ("dmp", ratio(self.cmp, self.cm)),
            ("dd11", ratio(self.cc11, self.cm)),
            ("ddmp", ratio(self.ccmp, self.cm)),
        ]
    }

    pub fn csv_row(&self, bm: u64, big_m: u64) -> String {
        format!(
            "{bm},{big_m},{},{},{},{},{},{},{}",
            self.cm, self.c22, self.c2p, self.cm2, self.cmp, self.cc11, self.ccmp
        )
    }
}

/// Scans radicals `M` in `[bm, big_m]`.
pub fn survey_partial(bm: u64, big_m: u64, opts: &SurveyOptions<'_>) -> PartialCounters {
    let blocks = par_blocks(bm.max(2), big_m, opts, |lo, hi| {
        let mut c = PartialCounters::default();
        for m in lo..=hi {
            if !matches!(m % 8, 1 | 2 | 5) {
                continue;
            }
            let Some(field) = global_norm_field(m) else { continue };
            let sup = supports(&field);
            c.add(field.is_even(), sup.m, sup.m_prime);
        }
        c
    });
    let mut out = PartialCounters::default();
    for c in &blocks {
        out.merge(c);
    }
    out
}
