//! Text, JSON and CSV renderings. Exact integers go into JSON as decimal
//! strings; densities are 10-digit strings.

use std::fmt::Write as _;

use quadnorm_core::criterion::{classify_norm, relation_generators};
use quadnorm_core::ideals::{classify_q2, relation_lattice, Q2Class};
use quadnorm_core::survey::{
    self, reference_constants, FopEntry, MainRecord, PartialCounters, ParityCounters,
    SurveyOptions,
};
use quadnorm_core::{fundamental_unit, CriterionReport, Radical};
use serde_json::{json, Map, Value};

use crate::{Failure, Format};

type Rendered = Result<String, Failure>;

fn to_json(v: &impl serde::Serialize) -> Rendered {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Failure::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn densities(pairs: &[(&str, Option<String>)]) -> Map<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone().map_or(Value::Null, Value::String)))
        .collect()
}

fn density_line(pairs: &[(&str, Option<String>)]) -> String {
    let cells: Vec<String> = pairs
        .iter()
        .map(|(k, v)| format!("{k}={}", v.as_deref().unwrap_or("n/a")))
        .collect();
    cells.join(" ")
}

pub(crate) fn unit(r: &Radical, format: Format) -> Rendered {
    let fu = fundamental_unit(r);
    Ok(match format {
        Format::Text => format!("{}, N={}\n", fu.eps, fu.norm_sign),
        Format::Json => to_json(&json!({
            "M": r.get().to_string(),
            "D": r.discriminant().to_string(),
            "eps": fu.eps.to_string(),
            "u": fu.eps.u().to_string(),
            "v": fu.eps.v().to_string(),
            "N": fu.norm_sign,
            "period": fu.period_length,
        }))?,
        Format::Csv => format!(
            "M,u,v,N,period\n{},{},{},{},{}\n",
            r.get(),
            fu.eps.u(),
            fu.eps.v(),
            fu.norm_sign,
            fu.period_length
        ),
    })
}

const CRITERION_HEADER: &str = "M,D,S,g,A,B,gp,Ap,Bp,m,mp,n,global_norm";

fn criterion_row(p: &CriterionReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        p.m_radical, p.d, p.s, p.g, p.a, p.b, p.gp, p.ap, p.bp, p.m, p.mp, p.n, p.global_norm
    )
}

pub(crate) fn criterion(r: &Radical, format: Format) -> Rendered {
    let res = classify_norm(r)?;
    let p = res.report();
    Ok(match format {
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "M={} D={}", p.m_radical, p.d).unwrap();
            writeln!(s, "eps={}, N={}", res.unit.eps, res.unit.norm_sign).unwrap();
            writeln!(s, "eps+1: g={} A={} B={} m={}", p.g, p.a, p.b, p.m).unwrap();
            writeln!(s, "eps-1: g={} A={} B={} m'={}", p.gp, p.ap, p.bp, p.mp).unwrap();
            if p.global_norm {
                writeln!(s, "S={}", p.s).unwrap();
            } else {
                writeln!(s, "S={} (-1 is not a norm)", p.s).unwrap();
            }
            s
        }
        Format::Json => to_json(&p)?,
        Format::Csv => format!("{CRITERION_HEADER}\n{}\n", criterion_row(&p)),
    })
}

fn primes_of(r: &Radical, support: u64) -> Vec<u64> {
    r.primes().iter().copied().filter(|q| support % q == 0).collect()
}

pub(crate) fn relations(r: &Radical, generators: bool, format: Format) -> Rendered {
    let res = classify_norm(r)?;
    let canonical = !res.has_relation() || res.predicted_s == -1;
    let pair = if generators && !canonical {
        Some(relation_generators(&res)?)
    } else {
        None
    };
    Ok(match format {
        Format::Text => {
            let mut s = String::new();
            if canonical {
                writeln!(s, "M={}: canonical relation only", r.get()).unwrap();
            } else {
                writeln!(
                    s,
                    "m={} {:?} n={} {:?}",
                    res.m,
                    primes_of(r, res.m),
                    res.n,
                    primes_of(r, res.n)
                )
                .unwrap();
            }
            if let Some((alpha, beta)) = &pair {
                writeln!(s, "alpha={}, N={}", alpha, alpha.norm()).unwrap();
                writeln!(s, "beta={}, N={}", beta, beta.norm()).unwrap();
            }
            s
        }
        Format::Json => {
            let mut v = json!({
                "M": r.get().to_string(),
                "S": res.predicted_s,
                "canonical": canonical,
                "m": res.m.to_string(),
                "n": res.n.to_string(),
                "m_primes": primes_of(r, res.m),
                "n_primes": primes_of(r, res.n),
            });
            if let Some((alpha, beta)) = &pair {
                v["alpha"] = json!({ "value": alpha.to_string(), "N": alpha.norm().to_string() });
                v["beta"] = json!({ "value": beta.to_string(), "N": beta.norm().to_string() });
            }
            to_json(&v)?
        }
        Format::Csv => {
            let mut s = String::from("M,S,m,n");
            if pair.is_some() {
                s.push_str(",alpha,N_alpha,beta,N_beta");
            }
            write!(s, "\n{},{},{},{}", r.get(), res.predicted_s, res.m, res.n).unwrap();
            if let Some((alpha, beta)) = &pair {
                write!(s, ",{},{},{},{}", alpha, alpha.norm(), beta, beta.norm()).unwrap();
            }
            s.push('\n');
            s
        }
    })
}

pub(crate) fn lattice(r: &Radical, format: Format) -> Rendered {
    let vectors = relation_lattice(r)?;
    let bits = |v: &[u8]| v.iter().map(|b| char::from(b'0' + b)).collect::<String>();
    Ok(match format {
        Format::Text => {
            let mut s = format!("M={:?}\n", r.primes());
            for v in &vectors {
                writeln!(s, "L={v:?}").unwrap();
            }
            s
        }
        Format::Json => to_json(&json!({
            "M": r.get().to_string(),
            "primes": r.primes(),
            "vectors": vectors,
        }))?,
        Format::Csv => {
            let mut s = String::from("M,vector\n");
            for v in &vectors {
                writeln!(s, "{},{}", r.get(), bits(v)).unwrap();
            }
            s
        }
    })
}

pub(crate) fn q2(r: &Radical, format: Format) -> Rendered {
    let class = classify_q2(r)?;
    let (principal, pair) = match class {
        Q2Class::Principal => (true, None),
        Q2Class::NonPrincipal { m, n } => (false, Some((m, n))),
    };
    Ok(match format {
        Format::Text => match pair {
            None => "q2 principal\n".to_string(),
            Some((m, n)) => format!("q2 non principal, relations {m} and {n}\n"),
        },
        Format::Json => {
            let mut v = json!({ "M": r.get().to_string(), "principal": principal });
            if let Some((m, n)) = pair {
                v["m"] = json!(m.to_string());
                v["n"] = json!(n.to_string());
            }
            to_json(&v)?
        }
        Format::Csv => {
            let (m, n) = pair.map_or((String::new(), String::new()), |(m, n)| {
                (m.to_string(), n.to_string())
            });
            format!("M,principal,m,n\n{},{principal},{m},{n}\n", r.get())
        }
    })
}

pub(crate) fn constants(format: Format) -> Rendered {
    let entries = reference_constants().entries();
    Ok(match format {
        Format::Text => entries.iter().map(|(k, v)| format!("{k} {v}\n")).collect(),
        Format::Json => {
            let map: Map<String, Value> = entries
                .iter()
                .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
                .collect();
            to_json(&map)?
        }
        Format::Csv => {
            let mut s = String::from("name,value\n");
            for (k, v) in &entries {
                writeln!(s, "{k},{v}").unwrap();
            }
            s
        }
    })
}

pub(crate) fn survey_main(bound: u64, opts: &SurveyOptions<'_>, format: Format) -> Rendered {
    let s = survey::survey_main(bound, opts);
    let c = s.counters;
    let ratios = c.ratios();
    Ok(match format {
        Format::Text => {
            let mut out = String::new();
            for line in s.records.iter().filter_map(MainRecord::text_line) {
                out.push_str(&line);
                out.push('\n');
            }
            writeln!(out, "CD={} Cm={} Cp={} C22={}", c.cd, c.cm, c.cp, c.c22).unwrap();
            writeln!(out, "{}", density_line(&ratios)).unwrap();
            out
        }
        Format::Json => to_json(&json!({
            "bound": bound.to_string(),
            "counters": c,
            "ratios": densities(&ratios),
            "records": s.records,
        }))?,
        Format::Csv => {
            let mut out = format!("{}\n", MainRecord::CSV_HEADER);
            for r in &s.records {
                writeln!(out, "{}", r.csv_row()).unwrap();
            }
            out
        }
    })
}

pub(crate) fn survey_partial(min: u64, max: u64, opts: &SurveyOptions<'_>, format: Format) -> Rendered {
    let c = survey::survey_partial(min, max, opts);
    let d = c.densities();
    Ok(match format {
        Format::Text => format!(
            "CM={} C22={} C2p={} Cm2={} Cmp={} CC11={} CCmp={}\n{}\n",
            c.cm,
            c.c22,
            c.c2p,
            c.cm2,
            c.cmp,
            c.cc11,
            c.ccmp,
            density_line(&d)
        ),
        Format::Json => to_json(&json!({
            "bM": min.to_string(),
            "BM": max.to_string(),
            "counters": c,
            "densities": densities(&d),
        }))?,
        Format::Csv => format!("{}\n{}\n", PartialCounters::CSV_HEADER, c.csv_row(min, max)),
    })
}

pub(crate) fn survey_fop(bound: u64, opts: &SurveyOptions<'_>, format: Format) -> Rendered {
    let s = survey::fop_survey(bound, opts);
    let c = s.counters;
    let d = c.densities();
    Ok(match format {
        Format::Text => format!(
            "#VM={} Cp={} Cm={} {}\n",
            c.total,
            c.cp,
            c.cm,
            density_line(&d)
        ),
        Format::Json => to_json(&json!({
            "bound": bound.to_string(),
            "counters": c,
            "densities": densities(&d),
            "entries": s.entries,
        }))?,
        Format::Csv => {
            let mut out = format!("{}\n", FopEntry::CSV_HEADER);
            for e in &s.entries {
                writeln!(out, "{}", e.csv_row()).unwrap();
            }
            out
        }
    })
}

pub(crate) fn survey_parity(min: u64, max: u64, opts: &SurveyOptions<'_>, format: Format) -> Rendered {
    let c = survey::parity_survey(min, max, opts);
    let rho = c.rho();
    Ok(match format {
        Format::Text => format!(
            "CM={} CP={} CI={} rho={}\n",
            c.cm,
            c.cp,
            c.ci,
            rho.as_deref().unwrap_or("n/a")
        ),
        Format::Json => to_json(&json!({
            "bM": min.to_string(),
            "BM": max.to_string(),
            "counters": c,
            "rho": rho,
        }))?,
        Format::Csv => format!("{}\n{}\n", ParityCounters::CSV_HEADER, c.csv_row(min, max)),
    })
}
