//! A Gaussian pulse through the pumped cell compared with the same pulse in
//! vacuum.

use std::f64::consts::PI;

use slowlight::{
    evaluate, propagate_pulse, GaussianPulseSpec, MediumParams, PumpParams, QuadratureConfig, SamplingConfig,
    RB87_GAMMA,
};

fn main() -> slowlight::Result<()> {
    let m = MediumParams::rb87_cell();
    let pump = PumpParams::resonant(0.4 * RB87_GAMMA)?;
    let quad = QuadratureConfig::default();
    let pulse = GaussianPulseSpec::from_spectral_width(2.0 * PI * 120e3, 0.0, 1.0)?;

    let r = propagate_pulse(&pulse, &pump, &m, &quad, &SamplingConfig::default())?;
    let cw = evaluate(0.0, &pump, &m, &quad)?;

    println!("pulse length tau      {:.4e} s", pulse.tau);
    println!("centroid delay        {:.4e} s", r.measured_delay);
    println!("peak delay            {:.4e} s", r.peak_delay);
    println!("theta at carrier      {:.4e} s", cw.theta);
    println!("peak transmission     {:.4e}", r.measured_transmission);
    println!("exp(-exponent)        {:.4e}", cw.transmission);
    println!("energy transmission   {:.4e}", r.energy_transmission);
    println!("Parseval error        {:.1e}", r.parseval_error);
    println!("dt = {:.3e} s over {} samples", r.time_step, r.time_grid.len());
    Ok(())
}
