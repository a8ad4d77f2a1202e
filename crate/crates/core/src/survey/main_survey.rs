use serde::Serialize;

use super::{global_norm_field, par_blocks, ratio, SurveyOptions};
use crate::criterion::supports;

/// One discriminant of the main survey.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MainRecord {
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(rename = "M")]
    pub radical: u64,
    pub m: u64,
    pub mp: u64,
    /// `None` only for the `(m, m') = (2, 1)` combination the ladder leaves
    /// open; such records are not counted.
    #[serde(rename = "S")]
    pub s: Option<i8>,
}

impl MainRecord {
    /// The listing line, omitted for `m = 1` like the original output.
    pub fn text_line(&self) -> Option<String> {
        let head = format!("D={} M={} relations:", self.d, self.radical);
        match (self.m, self.s) {
            (1, _) | (_, None) => None,
            (2, Some(-1)) => Some(format!("{head} , , S=-1, m=mp=2")),
            (2, Some(s)) => Some(format!("{head} 2,{}, S={s}", self.mp)),
            (m, Some(s)) => Some(format!("{head} {m},{}, S={s}", self.radical / m)),
        }
    }

    pub const CSV_HEADER: &'static str = "D,M,m,mp,S";

    pub fn csv_row(&self) -> String {
        let s = self.s.map_or(String::new(), |s| s.to_string());
        format!("{},{},{},{},{s}", self.d, self.radical, self.m, self.mp)
    }
}

/// Counts over discriminants `D` with `-1` a norm.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MainCounters {
    #[serde(rename = "CD")]
    pub cd: u64,
    #[serde(rename = "Cm")]
    pub cm: u64,
    #[serde(rename = "Cp")]
    pub cp: u64,
    #[serde(rename = "C22")]
    pub c22: u64,
}

impl MainCounters {
    pub fn merge(&mut self, other: &MainCounters) {
        self.cd += other.cd;
        self.cm += other.cm;
        self.cp += other.cp;
        self.c22 += other.c22;
    }

    fn add(&mut self, r: &MainRecord) {
        self.cd += 1;
        match (r.m, r.s) {
            (2, Some(-1)) => {
                self.cm += 1;
                self.c22 += 1;
            }
            (_, Some(-1)) => self.cm += 1,
            (_, Some(_)) => self.cp += 1,
            (_, None) => {}
        }
    }

    /// `Cm/CD`, `Cp/CD`, `C22/CD`, `C22/Cm`.
    pub fn ratios(&self) -> [(&'static str, Option<String>); 4] {
        [
            ("Cm/CD", ratio(self.cm, self.cd)),
            ("Cp/CD", ratio(self.cp, self.cd)),
            ("C22/CD", ratio(self.c22, self.cd)),
            ("C22/Cm", ratio(self.c22, self.cm)),
        ]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MainSurvey {
    pub counters: MainCounters,
    /// Every eligible discriminant, ascending.
    pub records: Vec<MainRecord>,
}

/// The radical behind `D` when `D` is a fundamental discriminant with
/// `v_2(D)` in `{0, 3}` and `M != 3 mod 4`.
fn radical_of(d: u64) -> Option<u64> {
    if d % 2 == 1 {
        (d % 4 == 1).then_some(d)
    } else {
        (d % 16 == 8).then_some(d / 4)
    }
}

/// Scans `D` in `[5, bd]`.
pub fn survey_main(bd: u64, opts: &SurveyOptions<'_>) -> MainSurvey {
    let blocks = par_blocks(5, bd, opts, |lo, hi| {
        let mut counters = MainCounters::default();
        let mut records = Vec::new();
        for d in lo..=hi {
            let Some(field) = radical_of(d).and_then(global_norm_field) else {
                continue;
            };
            let sup = supports(&field);
            let r = MainRecord {
                d,
                radical: field.get(),
                m: sup.m,
                mp: sup.m_prime,
                s: sup.predicted_s(),
            };
            counters.add(&r);
            records.push(r);
        }
        (counters, records)
    });
    let mut out = MainSurvey::default();
    for (c, r) in blocks {
        out.counters.merge(&c);
        out.records.extend(r);
    }
    out
}
