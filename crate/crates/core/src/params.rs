//! Physical parameters of the vapor, the saturating pump and the probe.
//!
//! Everything is in Gaussian (cgs) units: lengths in cm, masses in g,
//! densities in atoms/cm³, and every frequency or detuning is an angular
//! frequency in rad/s.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Physical constants, CODATA 2018, cgs.
pub mod consts {
    /// Speed of light, cm/s.
    pub const C: f64 = 2.997_924_58e10;
    /// Reduced Planck constant, erg·s.
    pub const HBAR: f64 = 1.054_571_817e-27;
    /// Boltzmann constant, erg/K.
    pub const K_B: f64 = 1.380_649e-16;
    /// Atomic mass constant, g.
    pub const AMU: f64 = 1.660_539_066_60e-24;
}

/// Decay-rate scale of the bundled ⁸⁷Rb preset, rad/s.
pub const RB87_GAMMA: f64 = 3.0 * PI * 1.0e6;
/// Vacuum wavelength of the bundled preset's transition, cm (Rb D2).
pub const RB87_WAVELENGTH_CM: f64 = 780.24e-7;

/// Angular frequency of light with the given vacuum wavelength in cm.
pub fn angular_frequency_from_wavelength(wavelength_cm: f64) -> f64 {
    2.0 * PI * consts::C / wavelength_cm
}

/// `N|d|²/ħ` in rad/s, with the dipole moment fixed by the spontaneous
/// decay rate `1/T1` of a closed two-level transition:
/// `|d|² = 3ħc³ / (4 ω³ T1)`.
pub fn calibrate_prefactor(density: f64, t1: f64, omega_1g: f64) -> Result<f64> {
    if !(density >= 0.0) || !density.is_finite() {
        return Err(Error::invalid(
            "density",
            format!("must be finite and >= 0, got {density}"),
        ));
    }
    if !(t1 > 0.0) || !t1.is_finite() {
        return Err(Error::invalid("T1", format!("must be finite and > 0, got {t1}")));
    }
    if !(omega_1g > 0.0) || !omega_1g.is_finite() {
        return Err(Error::invalid(
            "omega_1g",
            format!("must be finite and > 0, got {omega_1g}"),
        ));
    }
    let c3 = consts::C * consts::C * consts::C;
    let dipole_sq = 3.0 * consts::HBAR * c3 / (4.0 * omega_1g.powi(3) * t1);
    Ok(density * dipole_sq / consts::HBAR)
}

/// Doppler width `D = sqrt(k_B T ω² / (M c²))` in rad/s; mass in grams.
pub fn doppler_width(temperature: f64, mass: f64, omega: f64) -> Result<f64> {
    for (name, v) in [("temperature", temperature), ("mass", mass), ("omega", omega)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::invalid(name, format!("must be finite and > 0, got {v}")));
        }
    }
    Ok((consts::K_B * temperature / mass).sqrt() * omega / consts::C)
}

/// Raw description of the medium, before validation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MediumInputs {
    /// atoms/cm³
    pub density: f64,
    /// s
    pub t1: f64,
    /// s
    pub t2: f64,
    /// rad/s
    pub omega_1g: f64,
    /// g
    pub mass: f64,
    /// K
    pub temperature: f64,
    /// cm
    pub length: f64,
}

impl MediumInputs {
    /// ⁸⁷Rb vapor as used throughout: `T1 = T2/2 = 1/(2γ)`, γ = 3π×10⁶ rad/s,
    /// N = 2×10¹¹ cm⁻³, 300 K, 1 cm cell, 780.24 nm transition.
    pub fn rb87_cell() -> Self {
        let t1 = 1.0 / (2.0 * RB87_GAMMA);
        MediumInputs {
            density: 2.0e11,
            t1,
            t2: 2.0 * t1,
            omega_1g: angular_frequency_from_wavelength(RB87_WAVELENGTH_CM),
            mass: 87.0 * consts::AMU,
            temperature: 300.0,
            length: 1.0,
        }
    }
}

/// Validated medium description with its susceptibility prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MediumSnapshot", into = "MediumSnapshot")]
pub struct MediumParams {
    inputs: MediumInputs,
    prefactor: f64,
    doppler_width: f64,
}

impl MediumParams {
    pub fn new(inputs: MediumInputs) -> Result<Self> {
        let MediumInputs {
            density,
            t1,
            t2,
            omega_1g,
            mass,
            temperature,
            length,
        } = inputs;
        if !(t2 > 0.0) || !t2.is_finite() {
            return Err(Error::invalid("T2", format!("must be finite and > 0, got {t2}")));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::invalid(
                "length",
                format!("must be finite and > 0, got {length}"),
            ));
        }
        let prefactor = calibrate_prefactor(density, t1, omega_1g)?;
        let doppler_width = doppler_width(temperature, mass, omega_1g)?;
        Ok(MediumParams {
            inputs,
            prefactor,
            doppler_width,
        })
    }

    pub fn rb87_cell() -> Self {
        Self::new(MediumInputs::rb87_cell()).expect("preset is valid")
    }

    pub fn inputs(&self) -> MediumInputs {
        self.inputs
    }

    pub fn density(&self) -> f64 {
        self.inputs.density
    }
    pub fn t1(&self) -> f64 {
        self.inputs.t1
    }
    pub fn t2(&self) -> f64 {
        self.inputs.t2
    }
    pub fn omega_1g(&self) -> f64 {
        self.inputs.omega_1g
    }
    pub fn mass(&self) -> f64 {
        self.inputs.mass
    }
    pub fn temperature(&self) -> f64 {
        self.inputs.temperature
    }
    pub fn length(&self) -> f64 {
        self.inputs.length
    }

    /// `N|d|²/ħ`, rad/s.
    pub fn prefactor(&self) -> f64 {
        self.prefactor
    }

    /// Doppler width at the transition frequency, rad/s.
    pub fn doppler_width(&self) -> f64 {
        self.doppler_width
    }

    /// Homogeneous half-width `1/T2`, rad/s.
    pub fn homogeneous_width(&self) -> f64 {
        1.0 / self.inputs.t2
    }

    pub fn with_density(&self, density: f64) -> Result<Self> {
        Self::new(MediumInputs { density, ..self.inputs })
    }

    pub fn with_length(&self, length: f64) -> Result<Self> {
        Self::new(MediumInputs { length, ..self.inputs })
    }
}

#[derive(Serialize, Deserialize)]
struct MediumSnapshot {
    #[serde(flatten)]
    inputs: MediumInputs,
    prefactor: f64,
    doppler_width: f64,
}

impl From<MediumParams> for MediumSnapshot {
    fn from(m: MediumParams) -> Self {
        MediumSnapshot {
            inputs: m.inputs,
            prefactor: m.prefactor,
            doppler_width: m.doppler_width,
        }
    }
}

impl TryFrom<MediumSnapshot> for MediumParams {
    type Error = Error;

    fn try_from(s: MediumSnapshot) -> Result<Self> {
        let m = MediumParams::new(s.inputs)?;
        if m.prefactor != s.prefactor || m.doppler_width != s.doppler_width {
            return Err(Error::invalid(
                "prefactor",
                "stored derived values disagree with the recomputed ones",
            ));
        }
        Ok(m)
    }
}

/// The saturating counter-propagating pump.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PumpParams {
    /// Rabi frequency G (half of `2 d·E/ħ`), rad/s.
    pub rabi: f64,
    /// Δ = ω_c − ω_1g, rad/s.
    pub detuning: f64,
}

impl PumpParams {
    pub fn new(rabi: f64, detuning: f64) -> Result<Self> {
        if !(rabi >= 0.0) || !rabi.is_finite() {
            return Err(Error::invalid("rabi", format!("must be finite and >= 0, got {rabi}")));
        }
        if !detuning.is_finite() {
            return Err(Error::invalid("pump detuning", "must be finite"));
        }
        Ok(PumpParams { rabi, detuning })
    }

    /// Pump tuned to the atomic line (Δ = 0).
    pub fn resonant(rabi: f64) -> Result<Self> {
        Self::new(rabi, 0.0)
    }

    pub fn with_rabi(self, rabi: f64) -> Result<Self> {
        Self::new(rabi, self.detuning)
    }
}

/// The (possibly amplitude-modulated) probe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeParams {
    /// δ = ω − ω_c, rad/s.
    pub detuning: f64,
    pub modulation_index: f64,
    /// ν, rad/s.
    pub modulation_freq: f64,
}

impl ProbeParams {
    pub fn new(detuning: f64, modulation_index: f64, modulation_freq: f64) -> Result<Self> {
        if !detuning.is_finite() {
            return Err(Error::invalid("probe detuning", "must be finite"));
        }
        if !(modulation_index >= 0.0) || !modulation_index.is_finite() {
            return Err(Error::invalid(
                "modulation_index",
                format!("must be finite and >= 0, got {modulation_index}"),
            ));
        }
        if !(modulation_freq >= 0.0) || !modulation_freq.is_finite() {
            return Err(Error::invalid(
                "modulation_freq",
                format!("must be finite and >= 0, got {modulation_freq}"),
            ));
        }
        Ok(ProbeParams {
            detuning,
            modulation_index,
            modulation_freq,
        })
    }

    pub fn unmodulated(detuning: f64) -> Self {
        ProbeParams {
            detuning,
            modulation_index: 0.0,
            modulation_freq: 0.0,
        }
    }
}

impl Default for ProbeParams {
    fn default() -> Self {
        Self::unmodulated(0.0)
    }
}
