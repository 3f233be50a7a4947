//! Propagation of a Gaussian pulse and of a modulated probe through the cell.
//!
//! The medium acts on each spectral component as
//! `H(ω) = exp[i (ω/c)(1 + 2π S(ω)) l]`. Both output waveforms are expressed
//! in the retarded frame `t' = t − l/c`, where the common vacuum factor
//! `exp[i ω l / c]` drops out: the vacuum reference is the input envelope and
//! the medium output is the envelope filtered by `exp[i (ω/c) 2π S(ω) l]`.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::dispersion::{probe_frequency, DispersionPoint};
use crate::doppler::{average_ds_domega, average_s, QuadratureConfig};
use crate::error::{Error, Result};
use crate::params::{consts, MediumParams, ProbeParams, PumpParams};

/// Transform-limited Gaussian envelope
/// `E(t) = (E0/2π) exp(−t²/τ²)`, `E(Ω) = E0/√(πΓ²) exp(−Ω²/Γ²)`, `Γτ = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianPulseSpec {
    /// Spectral width Γ, rad/s.
    pub gamma: f64,
    /// Temporal width τ, s.
    pub tau: f64,
    /// Probe detuning δ of the carrier, rad/s.
    pub carrier_delta: f64,
    pub amplitude: f64,
}

impl GaussianPulseSpec {
    pub fn new(gamma: f64, tau: f64, carrier_delta: f64, amplitude: f64) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::invalid("Gamma", format!("must be finite and > 0, got {gamma}")));
        }
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(Error::invalid("tau", format!("must be finite and > 0, got {tau}")));
        }
        if ((gamma * tau) - 2.0).abs() > 1e-9 {
            return Err(Error::invalid(
                "tau",
                format!("a transform-limited Gaussian needs Gamma*tau = 2, got {}", gamma * tau),
            ));
        }
        if !carrier_delta.is_finite() || !amplitude.is_finite() {
            return Err(Error::invalid("pulse", "carrier detuning and amplitude must be finite"));
        }
        Ok(GaussianPulseSpec {
            gamma,
            tau,
            carrier_delta,
            amplitude,
        })
    }

    /// Pulse of spectral width `gamma` (rad/s) with `τ = 2/Γ`.
    pub fn from_spectral_width(gamma: f64, carrier_delta: f64, amplitude: f64) -> Result<Self> {
        Self::new(gamma, 2.0 / gamma, carrier_delta, amplitude)
    }

    /// Spectral amplitude at offset `omega` from the carrier.
    pub fn spectrum(&self, omega: f64) -> f64 {
        self.amplitude / (PI * self.gamma * self.gamma).sqrt() * (-(omega * omega) / (self.gamma * self.gamma)).exp()
    }

    /// Temporal envelope.
    pub fn envelope(&self, t: f64) -> f64 {
        self.amplitude / (2.0 * PI) * (-(t * t) / (self.tau * self.tau)).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingConfig {
    /// FFT length; a power of two, at least 4096.
    pub samples: usize,
    /// Half-width of the sampled frequency window around the carrier, rad/s.
    /// `None` picks `max(8Γ, 40/T2, 100πΓ)`; the last term keeps the time
    /// step at or below τ/200.
    pub halfwidth: Option<f64>,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            samples: 1 << 14,
            halfwidth: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropagationResult {
    /// Retarded time `t − l/c`, s.
    pub time_grid: Vec<f64>,
    pub intensity_vacuum: Vec<f64>,
    pub intensity_medium: Vec<f64>,
    /// Intensity-centroid delay of the medium output relative to vacuum, s.
    pub measured_delay: f64,
    /// Peak-to-peak delay (parabolic peak interpolation), s.
    pub peak_delay: f64,
    /// Peak intensity ratio medium/vacuum.
    pub measured_transmission: f64,
    /// Pulse energy ratio medium/vacuum.
    pub energy_transmission: f64,
    pub delay_method: String,
    pub transmission_method: String,
    /// Largest relative mismatch between spectral and temporal energy.
    pub parseval_error: f64,
    pub frequency_halfwidth: f64,
    pub time_step: f64,
}

/// Smallest allowed frequency half-width in units of Γ.
const MIN_HALFWIDTH_GAMMAS: f64 = 8.0;
const MAX_LEAKAGE: f64 = 1e-8;
const PARSEVAL_TOLERANCE: f64 = 1e-6;

fn resolve_halfwidth(pulse: &GaussianPulseSpec, medium: &MediumParams, sampling: &SamplingConfig) -> Result<f64> {
    if sampling.samples < 4096 || !sampling.samples.is_power_of_two() {
        return Err(Error::Configuration(format!(
            "sample count must be a power of two >= 4096, got {}",
            sampling.samples
        )));
    }
    let w = sampling.halfwidth.unwrap_or_else(|| {
        (MIN_HALFWIDTH_GAMMAS * pulse.gamma)
            .max(40.0 * medium.homogeneous_width())
            .max(100.0 * PI * pulse.gamma)
    });
    if !(w >= MIN_HALFWIDTH_GAMMAS * pulse.gamma) || !w.is_finite() {
        return Err(Error::Configuration(format!(
            "frequency window half-width {w:e} rad/s is below 8 Gamma = {:e} rad/s",
            MIN_HALFWIDTH_GAMMAS * pulse.gamma
        )));
    }
    // Share of the pulse energy outside ±w: |E(Ω)|² ∝ exp(−2Ω²/Γ²).
    let leakage = libm::erfc(std::f64::consts::SQRT_2 * w / pulse.gamma);
    if leakage > MAX_LEAKAGE {
        return Err(Error::Configuration(format!(
            "spectral leakage {leakage:e} outside the window exceeds {MAX_LEAKAGE:e}"
        )));
    }
    Ok(w)
}

/// Inverse transform `e(t_k) = Σ_j X(Ω_j) e^{−iΩ_j t_k} dΩ/2π` on centred grids.
fn synthesize(spectrum: &[Complex64], d_omega: f64, planner: &mut FftPlanner<f64>) -> Vec<Complex64> {
    let n = spectrum.len();
    let sign = |j: usize| if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut buf: Vec<Complex64> = spectrum.iter().enumerate().map(|(j, x)| x * sign(j)).collect();
    planner.plan_fft_forward(n).process(&mut buf);
    let scale = d_omega / (2.0 * PI);
    // (−1)^(N/2) = 1 for N divisible by 4.
    buf.iter().enumerate().map(|(k, x)| x * (scale * sign(k))).collect()
}

fn centroid(t: &[f64], intensity: &[f64]) -> f64 {
    let total: f64 = intensity.iter().sum();
    t.iter().zip(intensity).map(|(t, i)| t * i).sum::<f64>() / total
}

/// Peak position and value by a parabola through the largest sample and its
/// neighbours.
fn peak(t: &[f64], intensity: &[f64]) -> (f64, f64) {
    let k = intensity
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, _)| k)
        .unwrap();
    if k == 0 || k + 1 == intensity.len() {
        return (t[k], intensity[k]);
    }
    let (y0, y1, y2) = (intensity[k - 1], intensity[k], intensity[k + 1]);
    let denom = y0 - 2.0 * y1 + y2;
    if denom == 0.0 {
        return (t[k], y1);
    }
    let offset = 0.5 * (y0 - y2) / denom;
    let dt = t[k + 1] - t[k];
    (t[k] + offset * dt, y1 - 0.25 * (y0 - y2) * offset)
}

fn edge_fraction(intensity: &[f64]) -> f64 {
    let n = intensity.len();
    let edge = n / 16;
    let total: f64 = intensity.iter().sum();
    if total == 0.0 {
        return 0.0;
    }
    let outer: f64 = intensity[..edge].iter().chain(&intensity[n - edge..]).sum();
    outer / total
}

/// Propagates a Gaussian pulse through the pumped cell by multiplying its
/// spectrum with the medium transfer function and transforming back.
pub fn propagate_pulse(
    pulse: &GaussianPulseSpec,
    pump: &PumpParams,
    medium: &MediumParams,
    quad: &QuadratureConfig,
    sampling: &SamplingConfig,
) -> Result<PropagationResult> {
    let halfwidth = resolve_halfwidth(pulse, medium, sampling)?;
    let n = sampling.samples;
    let d_omega = 2.0 * halfwidth / n as f64;
    let dt = 2.0 * PI / (n as f64 * d_omega);
    let offsets: Vec<f64> = (0..n).map(|j| (j as f64 - (n / 2) as f64) * d_omega).collect();
    let time_grid: Vec<f64> = (0..n).map(|k| (k as f64 - (n / 2) as f64) * dt).collect();

    let input: Vec<Complex64> = offsets
        .iter()
        .map(|&w| Complex64::new(pulse.spectrum(w), 0.0))
        .collect();
    let l = medium.length();
    // Components whose amplitude underflows to zero contribute nothing and
    // are skipped.
    let output: Vec<Complex64> = input
        .par_iter()
        .zip(offsets.par_iter())
        .map(|(&x, &w)| {
            if x == Complex64::new(0.0, 0.0) {
                return Ok(x);
            }
            let delta = pulse.carrier_delta + w;
            let s = average_s(delta, pump, medium, quad)?;
            let omega = probe_frequency(delta, pump, medium);
            let phase = Complex64::new(0.0, omega / consts::C * 2.0 * PI * l) * s;
            Ok(x * phase.exp())
        })
        .collect::<Result<Vec<_>>>()?;

    let mut planner = FftPlanner::new();
    let vacuum = synthesize(&input, d_omega, &mut planner);
    let medium_out = synthesize(&output, d_omega, &mut planner);

    let spectral_energy = |x: &[Complex64]| x.iter().map(Complex64::norm_sqr).sum::<f64>() * d_omega / (2.0 * PI);
    let temporal_energy = |x: &[Complex64]| x.iter().map(Complex64::norm_sqr).sum::<f64>() * dt;
    let mut parseval_error: f64 = 0.0;
    for (spec, wave) in [(&input, &vacuum), (&output, &medium_out)] {
        let es = spectral_energy(spec);
        if es > 0.0 {
            parseval_error = parseval_error.max((temporal_energy(wave) - es).abs() / es);
        }
    }
    if parseval_error > PARSEVAL_TOLERANCE {
        return Err(Error::NumericRange(format!(
            "spectral and temporal pulse energies differ by {parseval_error:e}"
        )));
    }

    let intensity_vacuum: Vec<f64> = vacuum.iter().map(Complex64::norm_sqr).collect();
    let intensity_medium: Vec<f64> = medium_out.iter().map(Complex64::norm_sqr).collect();
    for (label, i) in [("vacuum", &intensity_vacuum), ("medium", &intensity_medium)] {
        let frac = edge_fraction(i);
        if frac > MAX_LEAKAGE {
            return Err(Error::Configuration(format!(
                "{label} waveform leaves {frac:e} of its energy at the edges of the time window; increase samples or reduce the frequency half-width"
            )));
        }
    }

    let energy_vacuum: f64 = intensity_vacuum.iter().sum();
    let energy_medium: f64 = intensity_medium.iter().sum();
    let (t_vac, peak_vac) = peak(&time_grid, &intensity_vacuum);
    let (t_med, peak_med) = peak(&time_grid, &intensity_medium);
    let measured_delay = if energy_medium > 0.0 {
        centroid(&time_grid, &intensity_medium) - centroid(&time_grid, &intensity_vacuum)
    } else {
        f64::NAN
    };

    Ok(PropagationResult {
        measured_delay,
        peak_delay: t_med - t_vac,
        measured_transmission: peak_med / peak_vac,
        energy_transmission: energy_medium / energy_vacuum,
        delay_method: "intensity-centroid".into(),
        transmission_method: "peak-intensity-ratio".into(),
        parseval_error,
        frequency_halfwidth: halfwidth,
        time_step: dt,
        time_grid,
        intensity_vacuum,
        intensity_medium,
    })
}

/// Carrier and sideband report for an amplitude-modulated probe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulationReport {
    pub carrier: DispersionPoint,
    /// Modulation delay θ from the carrier slope, s.
    pub theta: f64,
    /// Delay from the exact sideband phase difference at fixed carrier ω, s;
    /// `None` for an unmodulated probe.
    pub sideband_delay: Option<f64>,
    pub s_upper: Complex64,
    pub s_lower: Complex64,
    pub s_upper_linear: Complex64,
    pub s_lower_linear: Complex64,
    /// `max± |S(ω±ν) − (S ± ν ∂S/∂ω)| / |S|`.
    pub linearization_error: f64,
    /// Whether the first-order sideband expansion holds to 10⁻³.
    pub linearization_valid: bool,
    pub attenuation_upper: f64,
    pub attenuation_lower: f64,
    /// Output/input modulation depth, averaged over both sidebands.
    pub modulation_depth_ratio: f64,
}

/// Relative sideband-expansion error allowed before the linear picture is
/// declared invalid.
pub const LINEARIZATION_TOLERANCE: f64 = 1e-3;

/// Modulated probe at `probe.detuning` with sidebands at `±probe.modulation_freq`.
/// The exact sideband susceptibilities are always computed; the validity flag
/// says whether the first-order expansion would have been adequate.
pub fn propagate_modulated(
    probe: &ProbeParams,
    pump: &PumpParams,
    medium: &MediumParams,
    quad: &QuadratureConfig,
) -> Result<ModulationReport> {
    let delta = probe.detuning;
    let nu = probe.modulation_freq;
    let s = average_s(delta, pump, medium, quad)?;
    let ds = average_ds_domega(delta, pump, medium, quad)?;
    let carrier = DispersionPoint::from_parts(delta, s, ds, pump, medium);
    let (s_upper, s_lower) = if nu == 0.0 {
        (s, s)
    } else {
        let (upper, lower) = rayon::join(
            || average_s(delta + nu, pump, medium, quad),
            || average_s(delta - nu, pump, medium, quad),
        );
        (upper?, lower?)
    };
    let s_upper_linear = s + ds * nu;
    let s_lower_linear = s - ds * nu;
    let linearization_error = if s.norm() == 0.0 {
        0.0
    } else {
        (s_upper - s_upper_linear).norm().max((s_lower - s_lower_linear).norm()) / s.norm()
    };

    let omega = probe_frequency(delta, pump, medium);
    let l = medium.length();
    let exponent = |z: Complex64, w: f64| (4.0 * PI * l * w * z / consts::C).im;
    let attenuation_upper = exponent(s_upper, omega + nu);
    let attenuation_lower = exponent(s_lower, omega - nu);
    let sideband_delay =
        (nu > 0.0).then(|| 2.0 * PI * l * (omega / consts::C) * (s_upper.re - s_lower.re) / (2.0 * nu));
    let field_ratio = |a: f64| (-(a - carrier.attenuation_exponent) / 2.0).exp();
    Ok(ModulationReport {
        carrier,
        theta: carrier.theta,
        sideband_delay,
        s_upper,
        s_lower,
        s_upper_linear,
        s_lower_linear,
        linearization_error,
        linearization_valid: linearization_error < LINEARIZATION_TOLERANCE,
        attenuation_upper,
        attenuation_lower,
        modulation_depth_ratio: 0.5 * (field_ratio(attenuation_upper) + field_ratio(attenuation_lower)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::RB87_GAMMA;

    #[test]
    fn envelope_and_spectrum_are_a_transform_pair() {
        // ∫ E(Ω) e^{−iΩt} dΩ / 2π = E(t), checked by trapezoid sum.
        let p = GaussianPulseSpec::from_spectral_width(2.0, 0.0, 3.0).unwrap();
        for t in [0.0, 0.4, 1.3] {
            let h = 1e-3;
            let sum: f64 = (-20_000..=20_000)
                .map(|j| {
                    let w = j as f64 * h;
                    p.spectrum(w) * (w * t).cos()
                })
                .sum::<f64>()
                * h
                / (2.0 * PI);
            assert!((sum - p.envelope(t)).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn pulse_spec_validation() {
        assert!(GaussianPulseSpec::new(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(GaussianPulseSpec::new(0.0, 1.0, 0.0, 1.0).is_err());
        assert!(GaussianPulseSpec::new(4.0, 0.5, 0.0, 1.0).is_ok());
    }

    #[test]
    fn sampling_validation() {
        let m = MediumParams::rb87_cell();
        let p = GaussianPulseSpec::from_spectral_width(1e6, 0.0, 1.0).unwrap();
        let bad = |samples, halfwidth| resolve_halfwidth(&p, &m, &SamplingConfig { samples, halfwidth });
        assert!(matches!(bad(4000, None), Err(Error::Configuration(_))));
        assert!(matches!(bad(2048, None), Err(Error::Configuration(_))));
        assert!(matches!(bad(4096, Some(7e6)), Err(Error::Configuration(_))));
        assert!(bad(4096, Some(8e6)).is_ok());
        assert_eq!(bad(1 << 14, None).unwrap(), 40.0 * m.homogeneous_width());
        let broad = GaussianPulseSpec::from_spectral_width(4e6, 0.0, 1.0).unwrap();
        let w = resolve_halfwidth(&broad, &m, &SamplingConfig::default()).unwrap();
        assert_eq!(w, 100.0 * PI * 4e6);
    }

    #[test]
    fn synthesize_places_a_flat_spectrum_at_zero() {
        let n = 4096;
        let spectrum = vec![Complex64::new(1.0, 0.0); n];
        let mut planner = FftPlanner::new();
        let out = synthesize(&spectrum, 1.0, &mut planner);
        let peak = out
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .unwrap()
            .0;
        assert_eq!(peak, n / 2);
    }

    #[test]
    fn vacuum_cell_reproduces_input() {
        let m = MediumParams::rb87_cell().with_density(0.0).unwrap();
        let pump = PumpParams::resonant(0.4 * RB87_GAMMA).unwrap();
        let pulse = GaussianPulseSpec::from_spectral_width(2.0 * PI * 120e3, 0.0, 1.0).unwrap();
        let r = propagate_pulse(
            &pulse,
            &pump,
            &m,
            &QuadratureConfig::default(),
            &SamplingConfig::default(),
        )
        .unwrap();
        assert_eq!(r.intensity_medium, r.intensity_vacuum);
        assert_eq!(r.measured_delay, 0.0);
        assert_eq!(r.measured_transmission, 1.0);
        assert!(r.parseval_error < 1e-12);
        // The vacuum waveform is the analytic envelope.
        let k = r.time_grid.len() / 2 + 37;
        let expected = pulse.envelope(r.time_grid[k]).powi(2);
        assert!((r.intensity_vacuum[k] - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn unmodulated_probe_sidebands_coincide() {
        let m = MediumParams::rb87_cell();
        let pump = PumpParams::resonant(0.4 * RB87_GAMMA).unwrap();
        let q = QuadratureConfig::default();
        let r = propagate_modulated(&ProbeParams::unmodulated(0.0), &pump, &m, &q).unwrap();
        assert_eq!(r.s_upper, r.carrier.s);
        assert_eq!(r.s_lower, r.carrier.s);
        assert_eq!(r.theta, crate::dispersion::delay_time(0.0, &pump, &m, &q).unwrap());
        assert!(r.linearization_valid);
        assert_eq!(r.sideband_delay, None);
    }

    #[test]
    fn modulation_validity_flag() {
        let m = MediumParams::rb87_cell();
        let pump = PumpParams::resonant(0.4 * RB87_GAMMA).unwrap();
        let q = QuadratureConfig::default();
        let slow = ProbeParams::new(0.0, 0.1, 2.0 * PI * 120e3).unwrap();
        let r = propagate_modulated(&slow, &pump, &m, &q).unwrap();
        assert!(r.linearization_valid, "error {}", r.linearization_error);
        let d = r.sideband_delay.unwrap();
        assert!((d - r.theta).abs() < 1e-2 * r.theta);
        let fast = ProbeParams::new(0.0, 0.1, 10.0 * RB87_GAMMA).unwrap();
        let r = propagate_modulated(&fast, &pump, &m, &q).unwrap();
        assert!(!r.linearization_valid, "error {}", r.linearization_error);
    }
}
