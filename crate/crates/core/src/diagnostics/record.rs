use serde::Serialize;

use super::norms;
use crate::dynamics::compute_pressure;
use crate::spectral::SpectralVectorField;

/// Energy fraction in the last retained shell above which a run is flagged.
pub const RESOLUTION_LOSS_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub diverged: bool,
    pub resolution_loss: bool,
}

impl Flags {
    /// `none`, `diverged`, `resolution_loss` or both joined by `|`.
    pub fn label(&self) -> &'static str {
        match (self.diverged, self.resolution_loss) {
            (false, false) => "none",
            (true, false) => "diverged",
            (false, true) => "resolution_loss",
            (true, true) => "diverged|resolution_loss",
        }
    }
}

/// Which quantities a record carries beyond the fixed scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticsPlan {
    pub alpha: f64,
    pub nu: f64,
    /// Integer orders written to CSV.
    pub reported_moments: Vec<u32>,
    /// Every moment order computed, including the ones the moment inequality needs.
    pub moment_orders: Vec<f64>,
    /// Orders of `Σ|k|^s |p̂|`; empty means the pressure is never computed.
    pub pressure_orders: Vec<f64>,
    pub sobolev_orders: Vec<f64>,
}

fn push_unique(v: &mut Vec<f64>, x: f64) {
    if !v.contains(&x) {
        v.push(x);
    }
}

impl DiagnosticsPlan {
    pub fn new(alpha: f64, nu: f64, moments: &[u32], sobolev: &[f64]) -> Self {
        let mut moment_orders = Vec::new();
        for &m in moments {
            push_unique(&mut moment_orders, m as f64);
        }
        Self {
            alpha,
            nu,
            reported_moments: moments.to_vec(),
            moment_orders,
            pressure_orders: Vec::new(),
            sobolev_orders: sobolev.to_vec(),
        }
    }

    /// Also track everything the the moment inequality right-hand side needs for these `m`.
    pub fn with_prop1(mut self, orders: &[u32]) -> Self {
        for &m in orders {
            for l in 0..=m + 1 {
                push_unique(&mut self.moment_orders, l as f64);
            }
            push_unique(&mut self.moment_orders, super::prop1::dissipative_order(self.alpha, m));
            push_unique(&mut self.pressure_orders, (m + 1) as f64);
        }
        self
    }

    pub fn record(&self, u: &SpectralVectorField, step: u64, dt: f64) -> DiagnosticsRecord {
        let dim = u.dim();
        let moments = self
            .moment_orders
            .iter()
            .map(|&s| (s, (0..dim).map(|i| norms::moment_norm(u, i, s)).collect()))
            .collect();
        let pressure_moments = if self.pressure_orders.is_empty() {
            Vec::new()
        } else {
            let p = compute_pressure(u);
            self.pressure_orders
                .iter()
                .map(|&s| (s, norms::moment_of(u.lattice(), p.coeffs(), s)))
                .collect()
        };
        let tail = norms::tail_fraction(u);
        let mut rec = DiagnosticsRecord {
            t: u.time,
            step,
            dt,
            energy: norms::energy(u),
            dissipation_rate: norms::dissipation_rate(u, self.alpha, self.nu),
            enstrophy: norms::enstrophy(u).unwrap_or(f64::NAN),
            enstrophy_production: norms::enstrophy_production(u).unwrap_or(f64::NAN),
            max_velocity: u.to_physical().max_abs(),
            moments,
            pressure_moments,
            sobolev: self.sobolev_orders.iter().map(|&b| (b, norms::sobolev_norm(u, b))).collect(),
            tail_fraction: tail,
            flags: Flags::default(),
        };
        rec.flags = blowup_indicator(&rec);
        rec
    }
}

/// One snapshot of a run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub step: u64,
    pub dt: f64,
    pub energy: f64,
    pub dissipation_rate: f64,
    pub enstrophy: f64,
    pub enstrophy_production: f64,
    /// `max_i max_x |u_i(x)|` over the grid.
    pub max_velocity: f64,
    /// `(order, [M_order(û_i) for each component])`
    pub moments: Vec<(f64, Vec<f64>)>,
    /// `(order, Σ|k|^order |p̂(k)|)`
    pub pressure_moments: Vec<(f64, f64)>,
    /// `(β, ‖u‖_{H^β})`
    pub sobolev: Vec<(f64, f64)>,
    pub tail_fraction: f64,
    pub flags: Flags,
}

impl DiagnosticsRecord {
    pub fn moment(&self, component: usize, order: f64) -> Option<f64> {
        self.moments
            .iter()
            .find(|(s, _)| *s == order)
            .and_then(|(_, v)| v.get(component).copied())
    }

    pub fn pressure_moment(&self, order: f64) -> Option<f64> {
        self.pressure_moments.iter().find(|(s, _)| *s == order).map(|(_, v)| *v)
    }

    pub fn sobolev(&self, beta: f64) -> Option<f64> {
        self.sobolev.iter().find(|(b, _)| *b == beta).map(|(_, v)| *v)
    }

    fn scalars(&self) -> impl Iterator<Item = f64> + '_ {
        [
            self.t,
            self.dt,
            self.energy,
            self.dissipation_rate,
            self.enstrophy,
            self.enstrophy_production,
            self.max_velocity,
            self.tail_fraction,
        ]
        .into_iter()
        .chain(self.moments.iter().flat_map(|(_, v)| v.iter().copied()))
        .chain(self.pressure_moments.iter().map(|(_, v)| *v))
        .chain(self.sobolev.iter().map(|(_, v)| *v))
    }
}

/// Discrete stand-ins for blow-up. Neither flag proves a singularity.
pub fn blowup_indicator(record: &DiagnosticsRecord) -> Flags {
    Flags {
        diverged: record.scalars().any(|x| !x.is_finite()),
        resolution_loss: record.tail_fraction > RESOLUTION_LOSS_THRESHOLD,
    }
}
