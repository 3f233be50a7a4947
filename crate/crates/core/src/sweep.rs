//! Parameter sweeps and the pump-strength search.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dispersion::{evaluate, DispersionPoint};
use crate::doppler::{check_grid, QuadratureConfig};
use crate::error::{Error, Result};
use crate::params::{MediumParams, ProbeParams, PumpParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    /// δ, rad/s
    ProbeDetuning,
    /// G, rad/s
    PumpRabi,
    /// Δ, rad/s
    PumpDetuning,
}

impl SweepVariable {
    pub fn column_name(self) -> &'static str {
        match self {
            SweepVariable::ProbeDetuning => "delta_rad_per_s",
            SweepVariable::PumpRabi => "rabi_G_rad_per_s",
            SweepVariable::PumpDetuning => "pump_detuning_rad_per_s",
        }
    }
}

/// Groups of derived columns a sweep can report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepOutput {
    /// re_S, im_S
    Susceptibility,
    GroupIndex,
    Theta,
    /// attenuation_exponent, transmission
    Transmission,
}

impl SweepOutput {
    pub const ALL: [SweepOutput; 4] = [
        SweepOutput::Susceptibility,
        SweepOutput::GroupIndex,
        SweepOutput::Theta,
        SweepOutput::Transmission,
    ];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub grid: Vec<f64>,
    pub medium: MediumParams,
    /// Pump settings for everything not swept.
    pub pump: PumpParams,
    pub probe: ProbeParams,
    pub quadrature: QuadratureConfig,
    pub outputs: Vec<SweepOutput>,
}

impl SweepSpec {
    pub fn new(
        variable: SweepVariable,
        grid: Vec<f64>,
        medium: MediumParams,
        pump: PumpParams,
        probe: ProbeParams,
    ) -> Self {
        SweepSpec {
            variable,
            grid,
            medium,
            pump,
            probe,
            quadrature: QuadratureConfig::default(),
            outputs: SweepOutput::ALL.to_vec(),
        }
    }

    fn point_params(&self, value: f64) -> Result<(f64, PumpParams)> {
        match self.variable {
            SweepVariable::ProbeDetuning => Ok((value, self.pump)),
            SweepVariable::PumpRabi => Ok((self.probe.detuning, PumpParams::new(value, self.pump.detuning)?)),
            SweepVariable::PumpDetuning => Ok((self.probe.detuning, PumpParams::new(self.pump.rabi, value)?)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointFailure {
    pub category: String,
    pub message: String,
}

impl From<Error> for PointFailure {
    fn from(e: Error) -> Self {
        PointFailure {
            category: e.category().to_string(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: f64,
    pub outcome: std::result::Result<DispersionPoint, PointFailure>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn points(&self) -> impl Iterator<Item = (f64, &DispersionPoint)> {
        self.rows
            .iter()
            .filter_map(|r| r.outcome.as_ref().ok().map(|p| (r.value, p)))
    }

    pub fn failures(&self) -> impl Iterator<Item = (f64, &PointFailure)> {
        self.rows
            .iter()
            .filter_map(|r| r.outcome.as_ref().err().map(|e| (r.value, e)))
    }
}

/// Evaluates every grid point (in parallel); rows follow the grid order and
/// a failing point is recorded in its row without stopping the sweep.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    check_grid(&spec.grid)?;
    spec.quadrature.validate()?;
    if spec.outputs.is_empty() {
        return Err(Error::invalid("outputs", "at least one output column is required"));
    }
    let rows = spec
        .grid
        .par_iter()
        .map(|&value| {
            let outcome = spec
                .point_params(value)
                .and_then(|(delta, pump)| evaluate(delta, &pump, &spec.medium, &spec.quadrature))
                .map_err(PointFailure::from);
            SweepRow { value, outcome }
        })
        .collect();
    Ok(SweepTable {
        spec: spec.clone(),
        rows,
    })
}

/// Search interval and constraint for [`optimize_pump`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PumpSearch {
    /// Rabi frequency bounds, rad/s.
    pub g_lo: f64,
    pub g_hi: f64,
    /// Lower bound on the intensity transmission at the probe detuning.
    pub min_transmission: f64,
    pub pump_detuning: f64,
    pub probe_detuning: f64,
}

impl PumpSearch {
    pub fn new(g_lo: f64, g_hi: f64, min_transmission: f64) -> Self {
        PumpSearch {
            g_lo,
            g_hi,
            min_transmission,
            pump_detuning: 0.0,
            probe_detuning: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PumpOptimum {
    pub rabi: f64,
    pub group_index: f64,
    pub transmission: f64,
    /// True when the transmission constraint, not the group-index peak,
    /// fixes the answer.
    pub constraint_binding: bool,
    pub evaluations: usize,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`,
/// stopping once the bracket is narrower than `tol`. Returns the best point
/// seen (endpoints included) and its value.
pub fn golden_section_max<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let mut best = (lo, f(lo)?);
    let consider = |x: f64, v: f64, best: &mut (f64, f64)| {
        if v > best.1 {
            *best = (x, v);
        }
    };
    let v_hi = f(hi)?;
    consider(hi, v_hi, &mut best);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    consider(x1, f1, &mut best);
    consider(x2, f2, &mut best);
    Ok(best)
}

/// Maximizes the group index over the pump Rabi frequency subject to a
/// minimum transmission, to a resolution of `10⁻³/T2` in G.
///
/// The group index is assumed unimodal in G over the interval. If its
/// unconstrained maximizer violates the constraint, the answer is the
/// feasibility boundary between it and the most transparent point, located
/// by bisection.
pub fn optimize_pump(search: &PumpSearch, medium: &MediumParams, quad: &QuadratureConfig) -> Result<PumpOptimum> {
    let PumpSearch {
        g_lo,
        g_hi,
        min_transmission,
        pump_detuning,
        probe_detuning,
    } = *search;
    if !(g_lo >= 0.0) || !(g_hi >= g_lo) || !g_hi.is_finite() {
        return Err(Error::invalid(
            "bounds",
            format!("need 0 <= G_lo <= G_hi, got [{g_lo}, {g_hi}]"),
        ));
    }
    if !(0.0..=1.0).contains(&min_transmission) {
        return Err(Error::invalid("min_transmission", "must lie in [0, 1]"));
    }
    let tol = 1e-3 * medium.homogeneous_width();
    let evaluations = std::cell::Cell::new(0usize);
    let metrics = |g: f64| -> Result<DispersionPoint> {
        evaluations.set(evaluations.get() + 1);
        evaluate(probe_detuning, &PumpParams::new(g, pump_detuning)?, medium, quad)
    };
    let report = |g: f64, p: DispersionPoint, binding: bool| PumpOptimum {
        rabi: g,
        group_index: p.group_index,
        transmission: p.transmission,
        constraint_binding: binding,
        evaluations: evaluations.get(),
    };

    let (g_star, _) = golden_section_max(|g| Ok(metrics(g)?.group_index), g_lo, g_hi, tol)?;
    let at_star = metrics(g_star)?;
    if at_star.transmission >= min_transmission {
        return Ok(report(g_star, at_star, false));
    }

    let (g_clear, t_max) = golden_section_max(|g| Ok(metrics(g)?.transmission), g_lo, g_hi, tol)?;
    if t_max < min_transmission {
        return Err(Error::Infeasible {
            max_transmission: t_max,
        });
    }
    // Bisect between the infeasible peak and the feasible clear point.
    let (mut bad, mut good) = (g_star, g_clear);
    let mut at_good = metrics(good)?;
    while (good - bad).abs() > tol {
        let mid = 0.5 * (good + bad);
        let p = metrics(mid)?;
        if p.transmission >= min_transmission {
            good = mid;
            at_good = p;
        } else {
            bad = mid;
        }
    }
    Ok(report(good, at_good, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::RB87_GAMMA;

    #[test]
    fn golden_section_finds_interior_and_boundary_maxima() {
        let (x, v) = golden_section_max(|x| Ok(-(x - 0.3) * (x - 0.3)), 0.0, 1.0, 1e-9).unwrap();
        assert!((x - 0.3).abs() < 1e-8 && v <= 0.0);
        let (x, _) = golden_section_max(Ok, 0.0, 1.0, 1e-9).unwrap();
        assert_eq!(x, 1.0);
        let (x, _) = golden_section_max(Ok, 0.5, 0.5, 1e-9).unwrap();
        assert_eq!(x, 0.5);
    }

    #[test]
    fn sweep_rejects_bad_spec() {
        let m = MediumParams::rb87_cell();
        let pump = PumpParams::resonant(0.4 * RB87_GAMMA).unwrap();
        let mut spec = SweepSpec::new(SweepVariable::ProbeDetuning, vec![], m, pump, ProbeParams::default());
        assert!(run_sweep(&spec).is_err());
        spec.grid = vec![0.0, -1.0];
        assert!(run_sweep(&spec).is_err());
        spec.grid = vec![0.0];
        spec.outputs.clear();
        assert!(run_sweep(&spec).is_err());
    }

    #[test]
    fn failing_points_are_recorded_in_row() {
        let m = MediumParams::rb87_cell();
        let pump = PumpParams::resonant(0.4 * RB87_GAMMA).unwrap();
        let spec = SweepSpec::new(
            SweepVariable::PumpRabi,
            vec![-1.0, 0.1 * RB87_GAMMA],
            m,
            pump,
            ProbeParams::default(),
        );
        let table = run_sweep(&spec).unwrap();
        assert_eq!(table.rows.len(), 2);
        assert_eq!(table.failures().count(), 1);
        assert_eq!(table.failures().next().unwrap().1.category, "invalid-parameter");
        assert_eq!(table.points().count(), 1);
    }

    #[test]
    fn optimizer_argument_checks() {
        let m = MediumParams::rb87_cell();
        let q = QuadratureConfig::default();
        assert!(optimize_pump(&PumpSearch::new(0.5, 0.4, 0.0), &m, &q).is_err());
        assert!(optimize_pump(&PumpSearch::new(-0.1, 0.4, 0.0), &m, &q).is_err());
        assert!(optimize_pump(&PumpSearch::new(0.1, 0.4, 1.5), &m, &q).is_err());
    }

    #[test]
    fn degenerate_interval_returns_the_point() {
        let m = MediumParams::rb87_cell();
        let q = QuadratureConfig::default();
        let g = 0.4 * RB87_GAMMA;
        let r = optimize_pump(&PumpSearch::new(g, g, 0.0), &m, &q).unwrap();
        assert_eq!(r.rabi, g);
        let direct = evaluate(0.0, &PumpParams::resonant(g).unwrap(), &m, &q).unwrap();
        assert_eq!(r.group_index, direct.group_index);
        assert!(!r.constraint_binding);
    }

    #[test]
    fn unit_transmission_is_infeasible() {
        let m = MediumParams::rb87_cell();
        let q = QuadratureConfig::default();
        let r = optimize_pump(&PumpSearch::new(0.3 * RB87_GAMMA, 0.5 * RB87_GAMMA, 1.0), &m, &q);
        match r {
            Err(Error::Infeasible { max_transmission }) => assert!(max_transmission < 1.0),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }
}
