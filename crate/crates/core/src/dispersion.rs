//! Group index, delay and attenuation from the averaged susceptibility.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::doppler::{average_ds_domega, average_s, QuadratureConfig};
use crate::error::Result;
use crate::params::{consts, MediumParams, PumpParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionPoint {
    /// Probe detuning δ, rad/s.
    pub delta: f64,
    pub s: Complex64,
    /// ∂S/∂ω, (rad/s)⁻¹.
    pub ds_domega: Complex64,
    pub group_index: f64,
    /// Envelope delay relative to vacuum, s.
    pub theta: f64,
    /// `Im[4π l ω S / c]`, the intensity attenuation exponent.
    pub attenuation_exponent: f64,
    /// Intensity transmission `exp(−attenuation_exponent)`.
    pub transmission: f64,
}

/// Probe angular frequency `ω_1g + Δ + δ`.
pub fn probe_frequency(delta: f64, pump: &PumpParams, medium: &MediumParams) -> f64 {
    medium.omega_1g() + pump.detuning + delta
}

impl DispersionPoint {
    /// Derives every quantity from `S` and `∂S/∂ω` at one detuning.
    pub fn from_parts(
        delta: f64,
        s: Complex64,
        ds_domega: Complex64,
        pump: &PumpParams,
        medium: &MediumParams,
    ) -> Self {
        let omega = probe_frequency(delta, pump, medium);
        let l = medium.length();
        let group_index = 1.0 + 2.0 * PI * s.re + 2.0 * PI * omega * ds_domega.re;
        let theta = 2.0 * PI * l * (omega / consts::C) * ds_domega.re;
        let attenuation_exponent = attenuation_exponent(s, omega, l);
        DispersionPoint {
            delta,
            s,
            ds_domega,
            group_index,
            theta,
            attenuation_exponent,
            transmission: (-attenuation_exponent).exp(),
        }
    }
}

fn attenuation_exponent(s: Complex64, omega: f64, length: f64) -> f64 {
    (4.0 * PI * length * omega * s / consts::C).im
}

/// Full dispersion report at probe detuning `delta`.
pub fn evaluate(
    delta: f64,
    pump: &PumpParams,
    medium: &MediumParams,
    quad: &QuadratureConfig,
) -> Result<DispersionPoint> {
    let (s, ds) = rayon::join(
        || average_s(delta, pump, medium, quad),
        || average_ds_domega(delta, pump, medium, quad),
    );
    Ok(DispersionPoint::from_parts(delta, s?, ds?, pump, medium))
}

/// `n_g = 1 + 2π Re S + 2π ω ∂Re S/∂ω`.
pub fn group_index(delta: f64, pump: &PumpParams, medium: &MediumParams, quad: &QuadratureConfig) -> Result<f64> {
    Ok(evaluate(delta, pump, medium, quad)?.group_index)
}

/// `θ = 2π l (ω/c) ∂Re S/∂ω`, seconds.
pub fn delay_time(delta: f64, pump: &PumpParams, medium: &MediumParams, quad: &QuadratureConfig) -> Result<f64> {
    let ds = average_ds_domega(delta, pump, medium, quad)?;
    let omega = probe_frequency(delta, pump, medium);
    Ok(2.0 * PI * medium.length() * (omega / consts::C) * ds.re)
}

/// Returns `(transmission, attenuation_exponent)` for intensity.
pub fn transmission(
    delta: f64,
    pump: &PumpParams,
    medium: &MediumParams,
    quad: &QuadratureConfig,
) -> Result<(f64, f64)> {
    let s = average_s(delta, pump, medium, quad)?;
    let exponent = attenuation_exponent(s, probe_frequency(delta, pump, medium), medium.length());
    Ok(((-exponent).exp(), exponent))
}
