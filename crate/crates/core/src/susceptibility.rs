//! Pump-dressed probe susceptibility of a single velocity class.
//!
//! The closed form (Mollow) is linear in the probe and exact in the pump:
//!
//! ```text
//! χ = −C (1+Δ²T2²) / [(1+Δ²T2²+4G²T1T2)(Δ+δ+i/T2)]
//!     × [1 − 2G²(Δ−i/T2)⁻¹(δ+2i/T2)(δ−Δ+i/T2)
//!            / ((δ+i/T1)(δ+Δ+i/T2)(δ−Δ+i/T2) − 4G²(δ+2i/T2))]
//! ```
//!
//! with `C = N|d|²/ħ`, Δ the pump detuning from the atom and δ the probe
//! detuning from the pump, both taken in the rest frame of the velocity
//! class. The bracket is kept in this printed form; the only rewriting is
//! for the derivative, which differentiates the same factors term by term.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::MediumParams;

/// Largest detuning magnitude accepted, rad/s.
pub const MAX_DETUNING: f64 = 1.0e18;

/// Detunings seen by one velocity class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VelocityClassInput {
    /// Δ + kv, rad/s.
    pub pump_detuning: f64,
    /// δ − 2kv, rad/s.
    pub probe_detuning: f64,
}

/// Counter-propagating Doppler shifts: the atom sees the pump at `ω_c + kv`
/// and the probe at `ω − kv`, so `Δ → Δ + kv` and `δ → δ − 2kv`.
pub fn velocity_shift(pump_detuning: f64, probe_detuning: f64, kv: f64) -> VelocityClassInput {
    VelocityClassInput {
        pump_detuning: pump_detuning + kv,
        probe_detuning: probe_detuning - 2.0 * kv,
    }
}

/// Relaxation and coupling constants hoisted out of the velocity integral.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Kernel {
    prefactor: f64,
    t1: f64,
    t2: f64,
    inv_t1: f64,
    inv_t2: f64,
    g2: f64,
}

impl Kernel {
    pub(crate) fn new(rabi: f64, medium: &MediumParams) -> Self {
        Kernel {
            prefactor: medium.prefactor(),
            t1: medium.t1(),
            t2: medium.t2(),
            inv_t1: 1.0 / medium.t1(),
            inv_t2: 1.0 / medium.t2(),
            g2: rabi * rabi,
        }
    }

    /// Saturation-weighted Lorentzian prefactor, `B = 2G²/(Δ−i/T2)` and the
    /// factors of the bracket at a given (Δ, δ).
    #[inline]
    fn parts(&self, big: f64, small: f64) -> Parts {
        let dt2 = big * self.t2;
        let sat = 1.0 + dt2 * dt2;
        let amplitude = -self.prefactor * sat / (sat + 4.0 * self.g2 * self.t1 * self.t2);
        let line = Complex64::new(big + small, self.inv_t2);
        let pump_coherence = Complex64::new(big, -self.inv_t2);
        let b = 2.0 * self.g2 / pump_coherence;
        let f_two = Complex64::new(small, 2.0 * self.inv_t2);
        let f_minus = Complex64::new(small - big, self.inv_t2);
        let f_pop = Complex64::new(small, self.inv_t1);
        let f_plus = Complex64::new(small + big, self.inv_t2);
        Parts {
            amplitude,
            line,
            b,
            f_two,
            f_minus,
            f_pop,
            f_plus,
        }
    }

    #[inline]
    pub(crate) fn chi(&self, big: f64, small: f64) -> Complex64 {
        let p = self.parts(big, small);
        let numerator = p.b * p.f_two * p.f_minus;
        let denominator = p.f_pop * p.f_plus * p.f_minus - 4.0 * self.g2 * p.f_two;
        p.amplitude / p.line * (1.0 - numerator / denominator)
    }

    /// ∂χ/∂δ at fixed Δ.
    #[inline]
    pub(crate) fn dchi(&self, big: f64, small: f64) -> Complex64 {
        let p = self.parts(big, small);
        // R = num/den, num = f_two·f_minus, den = f_pop·f_plus·f_minus − 4G²f_two;
        // each factor has unit derivative in δ.
        let num = p.f_two * p.f_minus;
        let dnum = p.f_minus + p.f_two;
        let den = p.f_pop * p.f_plus * p.f_minus - 4.0 * self.g2 * p.f_two;
        let dden = p.f_plus * p.f_minus + p.f_pop * p.f_minus + p.f_pop * p.f_plus - 4.0 * self.g2;
        let r = num / den;
        let dr = (dnum * den - num * dden) / (den * den);
        let inv_line = 1.0 / p.line;
        let bracket = 1.0 - p.b * r;
        p.amplitude * (-(inv_line * inv_line) * bracket - inv_line * p.b * dr)
    }
}

struct Parts {
    amplitude: f64,
    line: Complex64,
    b: Complex64,
    f_two: Complex64,
    f_minus: Complex64,
    f_pop: Complex64,
    f_plus: Complex64,
}

fn check_range(input: &VelocityClassInput) -> Result<()> {
    let ok = |x: f64| x.is_finite() && x.abs() <= MAX_DETUNING;
    if ok(input.pump_detuning) && ok(input.probe_detuning) {
        Ok(())
    } else {
        Err(Error::NumericRange(format!(
            "detunings ({:e}, {:e}) rad/s outside ±{MAX_DETUNING:e}",
            input.pump_detuning, input.probe_detuning
        )))
    }
}

fn check_rabi(rabi: f64) -> Result<()> {
    if rabi >= 0.0 && rabi.is_finite() && rabi <= MAX_DETUNING {
        Ok(())
    } else {
        Err(Error::NumericRange(format!("Rabi frequency {rabi:e} rad/s")))
    }
}

/// Susceptibility of one velocity class (dimensionless, Gaussian units).
pub fn chi_mollow(input: VelocityClassInput, rabi: f64, medium: &MediumParams) -> Result<Complex64> {
    check_range(&input)?;
    check_rabi(rabi)?;
    let value = Kernel::new(rabi, medium).chi(input.pump_detuning, input.probe_detuning);
    finite(value)
}

/// Analytic `∂χ/∂δ` at fixed Δ, in (rad/s)⁻¹.
pub fn dchi_ddelta(input: VelocityClassInput, rabi: f64, medium: &MediumParams) -> Result<Complex64> {
    check_range(&input)?;
    check_rabi(rabi)?;
    let value = Kernel::new(rabi, medium).dchi(input.pump_detuning, input.probe_detuning);
    finite(value)
}

fn finite(z: Complex64) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NumericRange(format!("non-finite susceptibility {z}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::RB87_GAMMA;

    fn at(big: f64, small: f64) -> VelocityClassInput {
        VelocityClassInput {
            pump_detuning: big,
            probe_detuning: small,
        }
    }

    #[test]
    fn velocity_shift_algebra() {
        assert_eq!(velocity_shift(0.0, 0.0, 0.0), at(0.0, 0.0));
        assert_eq!(velocity_shift(0.0, 0.0, 3.0), at(3.0, -6.0));
        let v = velocity_shift(5.0, 7.0, 3.0);
        assert_eq!(v, at(8.0, 1.0));
        assert_eq!(v.pump_detuning + v.probe_detuning, 5.0 + 7.0 - 3.0);
    }

    #[test]
    fn unpumped_line_center_is_pure_absorption() {
        let m = MediumParams::rb87_cell();
        let chi = chi_mollow(at(0.0, 0.0), 0.0, &m).unwrap();
        let expected = m.prefactor() * m.t2();
        assert_eq!(chi.re, 0.0);
        assert!((chi.im - expected).abs() <= 2.0 * f64::EPSILON * expected);
    }

    #[test]
    fn unpumped_lorentzian_half_width() {
        let m = MediumParams::rb87_cell();
        let hw = m.homogeneous_width();
        let peak = chi_mollow(at(0.0, 0.0), 0.0, &m).unwrap().im;
        let half = chi_mollow(at(0.3 * hw, 0.7 * hw), 0.0, &m).unwrap().im;
        assert!((half / peak - 0.5).abs() < 1e-14);
    }

    #[test]
    fn regression_at_preset_point() {
        // Frozen from tests/oracle/frozen_values.py (40-digit transcription).
        let m = MediumParams::rb87_cell();
        let g = 0.4 * RB87_GAMMA;
        let chi = chi_mollow(at(0.0, 0.0), g, &m).unwrap();
        assert!(chi.re.abs() < 1e-20);
        assert!((chi.im - 3.502_857_218_582_867_5e-4).abs() < 1e-13 * 3.5e-4);
        let d = dchi_ddelta(at(0.0, 0.0), g, &m).unwrap();
        assert!((d.re - (-3.518_865_286_440_005_6e-11)).abs() < 1e-12 * 3.52e-11);
        assert!(d.im.abs() < 1e-25);
    }

    #[test]
    fn unpumped_derivative_closed_form() {
        let m = MediumParams::rb87_cell();
        let (big, small) = (2.0e7, -5.0e6);
        let line = Complex64::new(big + small, 1.0 / m.t2());
        let expected = m.prefactor() / (line * line);
        let d = dchi_ddelta(at(big, small), 0.0, &m).unwrap();
        assert!((d - expected).norm() < 1e-14 * expected.norm());
    }

    #[test]
    fn rejects_absurd_detunings() {
        let m = MediumParams::rb87_cell();
        assert!(matches!(
            chi_mollow(at(2e18, 0.0), 1.0, &m),
            Err(Error::NumericRange(_))
        ));
        assert!(matches!(
            dchi_ddelta(at(0.0, f64::NAN), 1.0, &m),
            Err(Error::NumericRange(_))
        ));
    }
}
