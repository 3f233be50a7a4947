//! Doppler-averaged S(δ) near line center: the dip in Im S and the steep
//! positive slope of Re S through it.

use slowlight::{spectrum_scan, MediumParams, PumpParams, QuadratureConfig, RB87_GAMMA};

fn main() -> slowlight::Result<()> {
    let m = MediumParams::rb87_cell();
    let pump = PumpParams::resonant(0.4 * RB87_GAMMA)?;
    let grid: Vec<f64> = (-40..=40).map(|i| 0.25 * i as f64 * RB87_GAMMA).collect();

    let spectrum = spectrum_scan(&grid, &pump, &m, &QuadratureConfig::default())?;

    println!("delta_over_gamma,re_S,im_S");
    for (d, s) in spectrum.delta_grid.iter().zip(&spectrum.s_values) {
        println!("{:.2},{:.9e},{:.9e}", d / RB87_GAMMA, s.re, s.im);
    }

    let centre = spectrum.s_values[40].im;
    let wing = spectrum.s_values[0].im;
    eprintln!("Im S at centre / at -10 gamma = {:.4}", centre / wing);
    Ok(())
}
