use std::f64::consts::PI;

use slowlight::{
    evaluate, propagate_modulated, propagate_pulse, Error, GaussianPulseSpec, MediumParams, ProbeParams, PumpParams,
    QuadratureConfig, SamplingConfig, RB87_GAMMA,
};

fn pump() -> PumpParams {
    PumpParams::resonant(0.4 * RB87_GAMMA).unwrap()
}

#[test]
fn pulse_length_must_match_spectral_width() {
    assert!(matches!(
        GaussianPulseSpec::new(1e6, 3e-6, 0.0, 1.0),
        Err(Error::InvalidParameter { .. })
    ));
    assert!(GaussianPulseSpec::new(1e6, 2e-6, 0.0, 1.0).is_ok());
}

#[test]
fn narrow_pulses_approach_the_cw_delay() {
    let m = MediumParams::rb87_cell();
    let q = QuadratureConfig::default();
    let theta = evaluate(0.0, &pump(), &m, &q).unwrap().theta;
    let mut last = f64::INFINITY;
    for khz in [480.0, 120.0, 30.0] {
        let pulse = GaussianPulseSpec::from_spectral_width(2.0 * PI * khz * 1e3, 0.0, 1.0).unwrap();
        let r = propagate_pulse(&pulse, &pump(), &m, &q, &SamplingConfig::default()).unwrap();
        let err = (r.measured_delay / theta - 1.0).abs();
        assert!(err < last, "{khz} kHz: {err}");
        last = err;
    }
    assert!(last < 5e-4);
}

#[test]
fn log_transmission_tracks_carrier_exponent() {
    let m = MediumParams::rb87_cell();
    let q = QuadratureConfig::default();
    let cw = evaluate(0.0, &pump(), &m, &q).unwrap();
    for khz in [120.0, 60.0] {
        let pulse = GaussianPulseSpec::from_spectral_width(2.0 * PI * khz * 1e3, 0.0, 1.0).unwrap();
        let r = propagate_pulse(&pulse, &pump(), &m, &q, &SamplingConfig::default()).unwrap();
        assert!((-r.measured_transmission.ln() / cw.attenuation_exponent - 1.0).abs() < 0.03);
        assert!(r.measured_transmission > 0.0 && r.measured_transmission <= 1.5);
        assert!(r.intensity_medium.iter().chain(&r.intensity_vacuum).all(|&i| i >= 0.0));
    }
}

#[test]
fn energy_is_conserved_by_the_transform() {
    let m = MediumParams::rb87_cell();
    let pulse = GaussianPulseSpec::from_spectral_width(2.0 * PI * 120e3, 0.0, 1.0).unwrap();
    let r = propagate_pulse(
        &pulse,
        &pump(),
        &m,
        &QuadratureConfig::default(),
        &SamplingConfig::default(),
    )
    .unwrap();
    assert!(r.parseval_error < 1e-6);
    assert!(r.energy_transmission > 0.0 && r.energy_transmission < 1.0);
    let cw = evaluate(0.0, &pump(), &m, &QuadratureConfig::default()).unwrap();
    assert!((r.measured_transmission / cw.transmission - 1.0).abs() < 0.01);
}

#[test]
fn wide_window_reproduces_default() {
    let m = MediumParams::rb87_cell();
    let q = QuadratureConfig::default();
    let pulse = GaussianPulseSpec::from_spectral_width(2.0 * PI * 120e3, 0.0, 1.0).unwrap();
    let a = propagate_pulse(&pulse, &pump(), &m, &q, &SamplingConfig::default()).unwrap();
    let wide = SamplingConfig {
        samples: 1 << 15,
        halfwidth: Some(2.0 * a.frequency_halfwidth),
    };
    let b = propagate_pulse(&pulse, &pump(), &m, &q, &wide).unwrap();
    assert!((a.measured_delay - b.measured_delay).abs() < 1e-4 * a.measured_delay);
}

#[test]
fn too_few_samples_is_a_configuration_error() {
    let pulse = GaussianPulseSpec::from_spectral_width(2.0 * PI * 120e3, 0.0, 1.0).unwrap();
    let coarse = SamplingConfig {
        samples: 64,
        halfwidth: None,
    };
    let e = propagate_pulse(
        &pulse,
        &pump(),
        &MediumParams::rb87_cell(),
        &QuadratureConfig::default(),
        &coarse,
    )
    .unwrap_err();
    assert_eq!(e.category(), "configuration");
}

#[test]
fn slow_modulation_is_linear_fast_is_not() {
    let m = MediumParams::rb87_cell();
    let q = QuadratureConfig::default();
    let slow = propagate_modulated(&ProbeParams::new(0.0, 0.5, 2.0 * PI * 120e3).unwrap(), &pump(), &m, &q).unwrap();
    assert!(slow.linearization_valid);
    let delay = slow.sideband_delay.unwrap();
    assert!((delay / slow.theta - 1.0).abs() < 1e-2);
    let fast = propagate_modulated(&ProbeParams::new(0.0, 0.5, 10.0 * RB87_GAMMA).unwrap(), &pump(), &m, &q).unwrap();
    assert!(!fast.linearization_valid);
    assert!(fast.linearization_error > 1e-3 * fast.carrier.s.norm());
}

#[test]
fn zero_modulation_reproduces_delay_time() {
    let m = MediumParams::rb87_cell();
    let q = QuadratureConfig::default();
    let r = propagate_modulated(&ProbeParams::unmodulated(0.0), &pump(), &m, &q).unwrap();
    assert_eq!(r.theta, slowlight::delay_time(0.0, &pump(), &m, &q).unwrap());
    assert_eq!(r.s_upper, r.carrier.s);
    assert_eq!(r.s_lower, r.carrier.s);
}
