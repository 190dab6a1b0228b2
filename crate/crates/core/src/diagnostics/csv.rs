//! Tidy CSV output of diagnostics records.
//!
//! Floats are written with `{:?}`: the shortest decimal that parses back to the
//! same bits, switching to exponent form for very large or small magnitudes.

use std::io::{self, Write};

use super::record::{DiagnosticsPlan, DiagnosticsRecord};

pub fn header(plan: &DiagnosticsPlan, dim: usize) -> String {
    let mut cols: Vec<String> = [
        "step",
        "t",
        "dt",
        "energy",
        "dissipation_rate",
        "enstrophy",
        "production",
        "max_velocity",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for m in &plan.reported_moments {
        for i in 1..=dim {
            cols.push(format!("M{m}_c{i}"));
        }
    }
    for b in &plan.sobolev_orders {
        cols.push(format!("H{b}"));
    }
    cols.push("tail_fraction".into());
    cols.push("flags".into());
    cols.join(",")
}

fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn row(plan: &DiagnosticsPlan, rec: &DiagnosticsRecord, dim: usize) -> String {
    let mut cols = vec![
        rec.step.to_string(),
        num(rec.t),
        num(rec.dt),
        num(rec.energy),
        num(rec.dissipation_rate),
        num(rec.enstrophy),
        num(rec.enstrophy_production),
        num(rec.max_velocity),
    ];
    for &m in &plan.reported_moments {
        for i in 0..dim {
            cols.push(rec.moment(i, m as f64).map_or("NaN".into(), num));
        }
    }
    for &b in &plan.sobolev_orders {
        cols.push(rec.sobolev(b).map_or("NaN".into(), num));
    }
    cols.push(num(rec.tail_fraction));
    cols.push(rec.flags.label().to_string());
    cols.join(",")
}

pub fn write_csv<W: Write>(
    mut w: W,
    plan: &DiagnosticsPlan,
    dim: usize,
    records: &[DiagnosticsRecord],
) -> io::Result<()> {
    writeln!(w, "{}", header(plan, dim))?;
    for r in records {
        writeln!(w, "{}", row(plan, r, dim))?;
    }
    w.flush()
}
