use serde::Serialize;

use super::{global_norm_field, par_blocks, ratio, SurveyOptions};
use crate::criterion::supports;

/// Parity of `b` in `eps = a + b sqrt M` over `M = 2 mod 8`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ParityCounters {
    #[serde(rename = "CM")]
    pub cm: u64,
    /// `b` even.
    #[serde(rename = "CP")]
    pub cp: u64,
    /// `b` odd.
    #[serde(rename = "CI")]
    pub ci: u64,
}

impl ParityCounters {
    pub const CSV_HEADER: &'static str = "bM,BM,CM,CP,CI,rho";

    pub fn merge(&mut self, o: &ParityCounters) {
        self.cm += o.cm;
        self.cp += o.cp;
        self.ci += o.ci;
    }

    /// `CI/CP`, undefined while `CP = 0`.
    pub fn rho(&self) -> Option<String> {
        ratio(self.ci, self.cp)
    }

    pub fn csv_row(&self, bm: u64, big_m: u64) -> String {
        let rho = self.rho().unwrap_or_default();
        format!("{bm},{big_m},{},{},{},{rho}", self.cm, self.cp, self.ci)
    }
}

/// Scans `M` in `(bm, big_m]`.
pub fn parity_survey(bm: u64, big_m: u64, opts: &SurveyOptions<'_>) -> ParityCounters {
    let blocks = par_blocks(bm + 1, big_m, opts, |lo, hi| {
        let mut c = ParityCounters::default();
        // first M = 2 mod 8 in the block
        let start = lo + (10 - lo % 8) % 8;
        for m in (start..=hi).step_by(8) {
            let Some(field) = global_norm_field(m) else { continue };
            c.cm += 1;
            if supports(&field).b_odd {
                c.ci += 1;
            } else {
                c.cp += 1;
            }
        }
        c
    });
    let mut out = ParityCounters::default();
    for c in &blocks {
        out.merge(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_interval() {
        // M = 2 and M = 10 both have b odd (1 + sqrt 2, 3 + sqrt 10)
        let c = parity_survey(0, 10, &SurveyOptions::default());
        assert_eq!((c.cm, c.cp, c.ci), (2, 0, 2));
        assert_eq!(c.rho(), None);
        let c = parity_survey(0, 9, &SurveyOptions::default());
        assert_eq!((c.cm, c.cp, c.ci), (1, 0, 1));
    }

    #[test]
    fn jobs_invariant() {
        let a = parity_survey(0, 200_000, &SurveyOptions::with_jobs(1));
        let b = parity_survey(0, 200_000, &SurveyOptions::with_jobs(2));
        assert_eq!(a, b);
        assert_eq!(a.cp + a.ci, a.cm);
    }
}
