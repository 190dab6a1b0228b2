//! Monitor for the Fourier-moment differential inequality
//!
//! ```text
//! d/dt M_m(û_i) ≤ Σ_j Σ_{ℓ≤m} C(m,ℓ) M_ℓ(û_j) M_{m−ℓ+1}(û_i) − ν M_{2α+m}(û_i) + C_{i,m}
//! ```
//!
//! with `C_{i,m} = Σ|k|^{m+1}|p̂|`. The left side comes from finite differences of
//! recorded moments.

use num_integer::binomial;
use serde::Serialize;

use super::record::DiagnosticsRecord;
use crate::error::{Error, Result};

/// Order of the dissipative moment, `2α + m`.
pub fn dissipative_order(alpha: f64, m: u32) -> f64 {
    2.0 * alpha + m as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Prop1Terms {
    pub nonlinear: f64,
    pub dissipative: f64,
    pub pressure: f64,
    pub rhs: f64,
}

fn need(v: Option<f64>, what: impl FnOnce() -> String) -> Result<f64> {
    v.ok_or_else(|| Error::MissingDiagnostic(what()))
}

/// Right-hand side for component `i` and order `m` from one record.
pub fn prop1_terms(
    rec: &DiagnosticsRecord,
    i: usize,
    m: u32,
    alpha: f64,
    nu: f64,
) -> Result<Prop1Terms> {
    let dim = rec.moments.first().map(|(_, v)| v.len()).unwrap_or(0);
    let mut nonlinear = 0.0;
    for j in 0..dim {
        for l in 0..=m {
            let a = need(rec.moment(j, l as f64), || format!("M{l}_c{}", j + 1))?;
            let b = need(rec.moment(i, (m - l + 1) as f64), || format!("M{}_c{}", m - l + 1, i + 1))?;
            nonlinear += binomial(m, l) as f64 * a * b;
        }
    }
    let s = dissipative_order(alpha, m);
    let dissipative = nu * need(rec.moment(i, s), || format!("M{s}_c{}", i + 1))?;
    let pressure = need(rec.pressure_moment((m + 1) as f64), || format!("pressure moment {}", m + 1))?;
    Ok(Prop1Terms { nonlinear, dissipative, pressure, rhs: nonlinear - dissipative + pressure })
}

/// One evaluation of the inequality.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Prop1Sample {
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`; the inequality says this is non-negative.
    pub residual: f64,
    pub tolerance: f64,
    /// Derivative taken from a one-sided difference at a run end.
    pub one_sided: bool,
}

impl Prop1Sample {
    pub fn holds(&self) -> bool {
        self.residual >= -self.tolerance
    }
}

/// Derivative at `at ∈ {0,1,2}` and a second-derivative estimate from three
/// samples on an uneven grid.
fn three_point(t: [f64; 3], f: [f64; 3], at: usize) -> (f64, f64) {
    let (h1, h2) = (t[1] - t[0], t[2] - t[1]);
    let d2 = 2.0 * (h1 * f[2] - (h1 + h2) * f[1] + h2 * f[0]) / (h1 * h2 * (h1 + h2));
    let d1 = match at {
        0 => {
            -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * f[0] + (h1 + h2) / (h1 * h2) * f[1]
                - h1 / (h2 * (h1 + h2)) * f[2]
        }
        1 => -h2 / (h1 * (h1 + h2)) * f[0] + (h2 - h1) / (h1 * h2) * f[1] + h1 / (h2 * (h1 + h2)) * f[2],
        _ => {
            h2 / (h1 * (h1 + h2)) * f[0] - (h1 + h2) / (h1 * h2) * f[1]
                + (h1 + 2.0 * h2) / (h2 * (h1 + h2)) * f[2]
        }
    };
    (d1, d2)
}

fn sample(
    window: &[DiagnosticsRecord],
    at: usize,
    i: usize,
    m: u32,
    alpha: f64,
    nu: f64,
) -> Result<Prop1Sample> {
    let t = [window[0].t, window[1].t, window[2].t];
    let mut f = [0.0; 3];
    for (slot, r) in f.iter_mut().zip(window) {
        *slot = need(r.moment(i, m as f64), || format!("M{m}_c{}", i + 1))?;
    }
    let (lhs, d2) = three_point(t, f, at);
    let rhs = prop1_terms(&window[at], i, m, alpha, nu)?.rhs;
    let h = (t[1] - t[0]).max(t[2] - t[1]);
    // |f''|·h bounds the truncation error of both the centered and the
    // one-sided stencils once h is small.
    let allowance = d2.abs() * h;
    Ok(Prop1Sample {
        t: t[at],
        lhs,
        rhs,
        residual: rhs - lhs,
        tolerance: 1e-6 * (1.0 + rhs.abs()) + allowance,
        one_sided: at != 1,
    })
}

/// Residual at the middle of three consecutive records.
pub fn prop1_residual(
    window: &[DiagnosticsRecord],
    i: usize,
    m: u32,
    alpha: f64,
    nu: f64,
) -> Result<Prop1Sample> {
    if window.len() < 3 {
        return Err(Error::NotEnoughSamples { needed: 3, got: window.len() });
    }
    sample(&window[..3], 1, i, m, alpha, nu)
}

/// Residual at every record: centered inside, one-sided at the two ends.
pub fn prop1_series(
    records: &[DiagnosticsRecord],
    i: usize,
    m: u32,
    alpha: f64,
    nu: f64,
) -> Result<Vec<Prop1Sample>> {
    let n = records.len();
    if n < 3 {
        return Err(Error::NotEnoughSamples { needed: 3, got: n });
    }
    let mut out = Vec::with_capacity(n);
    out.push(sample(&records[..3], 0, i, m, alpha, nu)?);
    for w in records.windows(3) {
        out.push(sample(w, 1, i, m, alpha, nu)?);
    }
    out.push(sample(&records[n - 3..], 2, i, m, alpha, nu)?);
    Ok(out)
}
