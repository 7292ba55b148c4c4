//! Tables and JSON reports for decompositions.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::Result;
use crate::hamming::HammingGraph;
use crate::terwilliger::{decompose_standard_module, DecompositionReport};

/// Alphabet sizes used to fit multiplicities to `c (q-2)^e`.
pub const SWEEP_Q: [usize; 3] = [3, 4, 5];

pub fn format_support(support: &[usize]) -> String {
    let items: Vec<String> = support.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

/// `c (q-2)^e` written as `1`, `3`, `(q-2)`, `3(q-2)`, `(q-2)^3`, `3(q-2)^2`.
pub fn power_expression(c: u64, e: u32) -> String {
    let power = match e {
        0 => return c.to_string(),
        1 => "(q-2)".to_string(),
        _ => format!("(q-2)^{e}"),
    };
    if c == 1 {
        power
    } else {
        format!("{c}{power}")
    }
}

/// Fits multiplicities at `q = 3, 4, 5` to `c (q-2)^e`.
pub fn fit_power(values: [u64; 3]) -> Option<(u64, u32)> {
    let c = values[0];
    if c == 0 || values[1] % c != 0 {
        return None;
    }
    let ratio = values[1] / c;
    if !ratio.is_power_of_two() {
        return None;
    }
    let e = ratio.trailing_zeros();
    (c.checked_mul(3u64.checked_pow(e)?)? == values[2]).then_some((c, e))
}

fn pad_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|j| rows.iter().map(|r| r[j].len()).chain([header[j].len()]).max().unwrap())
        .collect();
    let line = |cells: Vec<&str>| -> String {
        let last = cells.len() - 1;
        let mut s = String::new();
        for (j, c) in cells.into_iter().enumerate() {
            if j == last {
                s.push_str(c);
            } else {
                s.push_str(&format!("{c:<w$}  ", w = widths[j]));
            }
        }
        s.trim_end().to_string()
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

/// Classes in table order: descending `d`, then ascending `r`.
fn dr_order(report: &DecompositionReport) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..report.classes.len()).collect();
    idx.sort_by_key(|&i| {
        let d = &report.classes[i].descriptor;
        (std::cmp::Reverse(d.d), d.r)
    });
    idx
}

/// Columns `D, d, r, support, multiplicity`.
pub fn dr_table(report: &DecompositionReport) -> String {
    let rows: Vec<Vec<String>> = dr_order(report)
        .into_iter()
        .map(|i| {
            let d = &report.classes[i].descriptor;
            vec![
                report.dim.to_string(),
                d.d.to_string(),
                d.r.to_string(),
                format_support(&d.support),
                d.multiplicity.to_string(),
            ]
        })
        .collect();
    pad_table(&["D", "d", "r", "support", "multiplicity"], &rows)
}

/// Columns `p, k, dim, multiplicity, support`.
pub fn pk_table(report: &DecompositionReport) -> String {
    let rows: Vec<Vec<String>> = report
        .classes
        .iter()
        .map(|c| {
            let d = &c.descriptor;
            vec![
                d.p.to_string(),
                d.k.to_string(),
                d.dim.to_string(),
                d.multiplicity.to_string(),
                format_support(&d.support),
            ]
        })
        .collect();
    pad_table(&["p", "k", "dim", "multiplicity", "support"], &rows)
}

pub fn report_json(report: &DecompositionReport) -> Value {
    let classes: Vec<Value> = report
        .classes
        .iter()
        .map(|c| {
            let d = &c.descriptor;
            let checks: Map<String, Value> = c
                .checks
                .iter()
                .map(|ch| (ch.name.clone(), Value::Bool(ch.passed)))
                .collect();
            json!({
                "p": d.p, "k": d.k, "d": d.d, "r": d.r, "dim": d.dim,
                "multiplicity": d.multiplicity, "support": d.support, "checks": checks,
            })
        })
        .collect();
    json!({
        "D": report.dim,
        "q": report.q,
        "classes": classes,
        "total_dim": report.total_dim(),
        "all_passed": report.all_passed(),
        "checks": report.checks,
    })
}

/// One `(d, r)` row across the swept alphabet sizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub d: usize,
    pub r: usize,
    pub p: usize,
    pub k: usize,
    pub support: Vec<usize>,
    pub multiplicities: [u64; 3],
    /// `None` when the values do not fit `c (q-2)^e`.
    pub expression: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QSweep {
    pub dim: usize,
    pub rows: Vec<SweepRow>,
    pub all_passed: bool,
    /// First failed check of each decomposition that did not pass.
    pub failures: Vec<String>,
}

/// Decomposes `V(D)` for `q = 3, 4, 5` and fits every multiplicity.
pub fn q_sweep(dim: usize) -> Result<QSweep> {
    let reports = SWEEP_Q
        .iter()
        .map(|&q| decompose_standard_module(&HammingGraph::new(dim, q)?))
        .collect::<Result<Vec<_>>>()?;
    let mut failures = Vec::new();
    for r in &reports {
        if let Some(c) = r.failures().first() {
            failures.push(format!("q = {}: {}: {}", r.q, c.name, c.detail.clone().unwrap_or_default()));
        }
    }
    let mut support_agrees = true;
    let rows: Vec<SweepRow> = dr_order(&reports[0])
        .into_iter()
        .map(|i| {
            let d = &reports[0].classes[i].descriptor;
            let per_q: Vec<_> = reports.iter().map(|r| &r.classes[i].descriptor).collect();
            support_agrees &= per_q.iter().all(|x| x.support == d.support);
            let multiplicities = [per_q[0].multiplicity, per_q[1].multiplicity, per_q[2].multiplicity];
            SweepRow {
                d: d.d,
                r: d.r,
                p: d.p,
                k: d.k,
                support: d.support.clone(),
                multiplicities,
                expression: fit_power(multiplicities).map(|(c, e)| power_expression(c, e)),
            }
        })
        .collect();
    if !support_agrees {
        failures.push("supports differ between alphabet sizes".into());
    }
    if let Some(r) = rows.iter().find(|r| r.expression.is_none()) {
        failures.push(format!(
            "(d, r) = ({}, {}): multiplicities {:?} do not fit c(q-2)^e",
            r.d, r.r, r.multiplicities
        ));
    }
    Ok(QSweep {
        dim,
        all_passed: failures.is_empty(),
        rows,
        failures,
    })
}

pub fn sweep_table(sweep: &QSweep) -> String {
    let rows: Vec<Vec<String>> = sweep
        .rows
        .iter()
        .map(|r| {
            vec![
                sweep.dim.to_string(),
                r.d.to_string(),
                r.r.to_string(),
                format_support(&r.support),
                r.expression.clone().unwrap_or_else(|| {
                    let v: Vec<String> = r.multiplicities.iter().map(u64::to_string).collect();
                    format!("unfitted {}", v.join("/"))
                }),
            ]
        })
        .collect();
    pad_table(&["D", "d", "r", "support", "multiplicity"], &rows)
}

pub fn sweep_json(sweep: &QSweep) -> Value {
    json!({
        "D": sweep.dim,
        "q_values": SWEEP_Q,
        "classes": sweep.rows,
        "all_passed": sweep.all_passed,
        "failures": sweep.failures,
    })
}
