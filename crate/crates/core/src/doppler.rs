//! Maxwell–Boltzmann average of the single-class susceptibility.
//!
//! `S(δ) = ∫ χ(Δ + kv, δ − 2kv) P(kv) d(kv)` with `P` the normal density of
//! width `D`, integrated over `|kv| ≤ W·D`. The integrand carries structure
//! on the homogeneous scale `1/T2` (tens of MHz) inside a window of
//! several GHz, so the adaptive rule is seeded with breakpoints at every
//! `kv` where a denominator of χ has vanishing real part, plus a geometric
//! ladder of points around each of them.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::params::{MediumParams, PumpParams};
use crate::quadrature::{self, GaussLegendre};
use crate::susceptibility::{Kernel, MAX_DETUNING};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Half-width of the kv window in units of the Doppler width D.
    pub integration_halfwidth: f64,
    /// Relative tolerance; the absolute error bound on both Re S and Im S is
    /// `rel_tolerance·|S|`.
    pub rel_tolerance: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            integration_halfwidth: 6.0,
            rel_tolerance: 1e-8,
            max_subdivisions: 10_000,
        }
    }
}

impl QuadratureConfig {
    pub fn new(integration_halfwidth: f64, rel_tolerance: f64, max_subdivisions: usize) -> Result<Self> {
        let q = QuadratureConfig {
            integration_halfwidth,
            rel_tolerance,
            max_subdivisions,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.integration_halfwidth >= 4.0) || !self.integration_halfwidth.is_finite() {
            return Err(Error::invalid("integration_halfwidth", "must be >= 4 (units of D)"));
        }
        if !(self.rel_tolerance > 0.0 && self.rel_tolerance <= 1e-2) {
            return Err(Error::invalid("rel_tolerance", "must lie in (0, 1e-2]"));
        }
        if self.max_subdivisions < 100 {
            return Err(Error::invalid("max_subdivisions", "must be >= 100"));
        }
        Ok(())
    }
}

/// Averaged susceptibility sampled on a probe-detuning grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexSpectrum {
    pub delta_grid: Vec<f64>,
    pub s_values: Vec<Complex64>,
    pub medium: MediumParams,
    pub pump: PumpParams,
    pub quadrature: QuadratureConfig,
}

/// kv values where a denominator of χ(Δ + kv, δ − 2kv) has zero real part.
pub fn resonance_loci(pump_detuning: f64, delta: f64) -> [f64; 4] {
    [
        // Δ_v = 0: pump-resonant class
        -pump_detuning,
        // Δ_v + δ_v = 0: probe-resonant class
        pump_detuning + delta,
        // δ_v − Δ_v = 0
        (delta - pump_detuning) / 3.0,
        // δ_v = 0: population and Raman-like factors
        delta / 2.0,
    ]
}

// Multiples of 1/T2 at which extra breakpoints are placed around each locus.
const LADDER: [f64; 5] = [2.0, 16.0, 128.0, 1024.0, 8192.0];

fn breakpoints(pump_detuning: f64, delta: f64, window: f64, homogeneous: f64) -> Vec<f64> {
    let mut pts = vec![-window, window];
    for x0 in resonance_loci(pump_detuning, delta) {
        pts.push(x0);
        for m in LADDER {
            pts.push(x0 - m * homogeneous);
            pts.push(x0 + m * homogeneous);
        }
    }
    pts.retain(|x| x.abs() <= window);
    pts.sort_by(f64::total_cmp);
    let min_gap = 1e-3 * homogeneous;
    let mut out: Vec<f64> = Vec::with_capacity(pts.len());
    for x in pts {
        match out.last() {
            Some(&last) if x - last <= min_gap => {}
            _ => out.push(x),
        }
    }
    if *out.last().unwrap() < window {
        out.pop();
        out.push(window);
    }
    out
}

struct Setup {
    kernel: Kernel,
    window: f64,
    norm: f64,
    inv_two_var: f64,
    homogeneous: f64,
}

fn setup(delta: f64, pump: &PumpParams, medium: &MediumParams, quad: &QuadratureConfig) -> Result<Setup> {
    quad.validate()?;
    let d = medium.doppler_width();
    let window = quad.integration_halfwidth * d;
    let extreme = pump.detuning.abs() + delta.abs() + 3.0 * window;
    if !delta.is_finite() || !(extreme <= MAX_DETUNING) || !(pump.rabi <= MAX_DETUNING) {
        return Err(Error::NumericRange(format!(
            "detunings reach {extreme:e} rad/s over the velocity window"
        )));
    }
    Ok(Setup {
        kernel: Kernel::new(pump.rabi, medium),
        window,
        norm: 1.0 / (2.0 * PI * d * d).sqrt(),
        inv_two_var: 1.0 / (2.0 * d * d),
        homogeneous: medium.homogeneous_width(),
    })
}

fn average_with<F>(
    delta: f64,
    pump: &PumpParams,
    medium: &MediumParams,
    quad: &QuadratureConfig,
    eval: F,
) -> Result<Complex64>
where
    F: Fn(&Kernel, f64, f64) -> Complex64,
{
    let s = setup(delta, pump, medium, quad)?;
    if medium.prefactor() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let big = pump.detuning;
    let pts = breakpoints(big, delta, s.window, s.homogeneous);
    let integrand = |kv: f64| eval(&s.kernel, big + kv, delta - 2.0 * kv) * (s.norm * (-kv * kv * s.inv_two_var).exp());
    let est = quadrature::adaptive(integrand, &pts, quad.rel_tolerance, quad.max_subdivisions)
        .map_err(|e| e.at_delta(delta))?;
    Ok(est.value)
}

/// Doppler-averaged susceptibility `S` at probe detuning `delta` (rad/s).
pub fn average_s(delta: f64, pump: &PumpParams, medium: &MediumParams, quad: &QuadratureConfig) -> Result<Complex64> {
    average_with(delta, pump, medium, quad, |k, big, small| k.chi(big, small))
}

/// `∂S/∂ω` at fixed pump frequency, (rad/s)⁻¹; the velocity average of the
/// analytic single-class derivative.
pub fn average_ds_domega(
    delta: f64,
    pump: &PumpParams,
    medium: &MediumParams,
    quad: &QuadratureConfig,
) -> Result<Complex64> {
    average_with(delta, pump, medium, quad, |k, big, small| k.dchi(big, small))
}

/// `S` over a strictly increasing grid of probe detunings. Points are
/// evaluated in parallel; each is independent, so the result does not depend
/// on the thread count.
pub fn spectrum_scan(
    delta_grid: &[f64],
    pump: &PumpParams,
    medium: &MediumParams,
    quad: &QuadratureConfig,
) -> Result<ComplexSpectrum> {
    check_grid(delta_grid)?;
    let s_values = delta_grid
        .par_iter()
        .map(|&d| average_s(d, pump, medium, quad))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComplexSpectrum {
        delta_grid: delta_grid.to_vec(),
        s_values,
        medium: *medium,
        pump: *pump,
        quadrature: *quad,
    })
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid("grid", "must not be empty"));
    }
    if grid.iter().any(|x| !x.is_finite()) || grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::invalid("grid", "must be finite and strictly increasing"));
    }
    Ok(())
}

/// Same average as [`average_s`] by a fixed graded composite Gauss–Legendre
/// rule (no adaptivity, no shared nodes). Used to cross-check the adaptive path.
pub fn average_s_fixed_rule(
    delta: f64,
    pump: &PumpParams,
    medium: &MediumParams,
    quad: &QuadratureConfig,
) -> Result<Complex64> {
    let s = setup(delta, pump, medium, quad)?;
    if medium.prefactor() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let big = pump.detuning;
    let mesh = quadrature::graded_mesh(
        -s.window,
        s.window,
        &resonance_loci(big, delta),
        0.125 * s.homogeneous,
        1.25,
    );
    let rule = GaussLegendre::new(16);
    Ok(quadrature::graded_gauss_legendre(
        |kv| s.kernel.chi(big + kv, delta - 2.0 * kv) * (s.norm * (-kv * kv * s.inv_two_var).exp()),
        &mesh,
        &rule,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::RB87_GAMMA;

    fn preset(g: f64) -> (PumpParams, MediumParams, QuadratureConfig) {
        (
            PumpParams::resonant(g * RB87_GAMMA).unwrap(),
            MediumParams::rb87_cell(),
            QuadratureConfig::default(),
        )
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::new(3.0, 1e-8, 1000).is_err());
        assert!(QuadratureConfig::new(6.0, 0.0, 1000).is_err());
        assert!(QuadratureConfig::new(6.0, 0.1, 1000).is_err());
        assert!(QuadratureConfig::new(6.0, 1e-8, 99).is_err());
        assert!(QuadratureConfig::new(4.0, 1e-2, 100).is_ok());
    }

    #[test]
    fn empty_medium_gives_zero() {
        let (pump, m, q) = preset(0.4);
        let m = m.with_density(0.0).unwrap();
        assert_eq!(average_s(1e7, &pump, &m, &q).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(average_ds_domega(1e7, &pump, &m, &q).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn regression_at_line_center() {
        // Frozen from tests/oracle/frozen_values.py (mpmath tanh-sinh, 20 digits).
        let (pump, m, q) = preset(0.4);
        let s = average_s(0.0, &pump, &m, &q).unwrap();
        assert!((s.im - 4.346_069_279_788_73e-6).abs() < 1e-8 * 4.35e-6, "{s}");
        assert!(s.re.abs() < 1e-8 * 4.35e-6);
        let ds = average_ds_domega(0.0, &pump, &m, &q).unwrap();
        assert!((ds.re - 2.501_766_106_123_94e-14).abs() < 1e-7 * 2.5e-14, "{ds}");
    }

    #[test]
    fn regression_detuned_pump() {
        let (_, m, q) = preset(0.4);
        let pump = PumpParams::new(0.4 * RB87_GAMMA, RB87_GAMMA).unwrap();
        let s = average_s(3.0 * RB87_GAMMA, &pump, &m, &q).unwrap();
        let expected = Complex64::new(1.200_136_282_632_24e-7, 4.842_004_177_741_01e-6);
        assert!((s - expected).norm() < 1e-8 * expected.norm(), "{s}");
    }

    #[test]
    fn fixed_rule_agrees_with_adaptive() {
        let (pump, m, q) = preset(0.3);
        for delta in [-7.0e7, 0.0, 2.5e6, 4.0e8] {
            let a = average_s(delta, &pump, &m, &q).unwrap();
            let b = average_s_fixed_rule(delta, &pump, &m, &q).unwrap();
            assert!((a - b).norm() < 1e-7 * a.norm(), "delta {delta}: {a} vs {b}");
        }
    }

    #[test]
    fn window_six_vs_eight() {
        let (pump, m, q6) = preset(0.4);
        let q8 = QuadratureConfig {
            integration_halfwidth: 8.0,
            rel_tolerance: 1e-11,
            ..q6
        };
        let q6 = QuadratureConfig {
            rel_tolerance: 1e-11,
            ..q6
        };
        for delta in [0.0, 3.0e7] {
            let a = average_s(delta, &pump, &m, &q6).unwrap();
            let b = average_s(delta, &pump, &m, &q8).unwrap();
            assert!((a - b).norm() < 1e-10 * b.norm(), "{a} vs {b}");
        }
    }

    #[test]
    fn scan_rejects_bad_grid() {
        let (pump, m, _) = preset(0.4);
        let q = QuadratureConfig::default();
        assert!(spectrum_scan(&[], &pump, &m, &q).is_err());
        assert!(spectrum_scan(&[1.0, 1.0], &pump, &m, &q).is_err());
    }

    #[test]
    fn single_point_scan_matches_direct_call() {
        let (pump, m, q) = preset(0.2);
        let spec = spectrum_scan(&[1.5e7], &pump, &m, &q).unwrap();
        assert_eq!(spec.s_values[0], average_s(1.5e7, &pump, &m, &q).unwrap());
    }

    #[test]
    fn breakpoints_are_sorted_and_inside_window() {
        let pts = breakpoints(3e7, -1e7, 8e9, 9.4e6);
        assert_eq!(pts[0], -8e9);
        assert_eq!(*pts.last().unwrap(), 8e9);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }
}
