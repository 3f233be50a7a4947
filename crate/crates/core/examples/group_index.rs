//! Group index, delay and transmission at the dip centre for a few pump
//! strengths.

use slowlight::{evaluate, MediumParams, PumpParams, QuadratureConfig, RB87_GAMMA};

fn main() -> slowlight::Result<()> {
    let m = MediumParams::rb87_cell();
    let quad = QuadratureConfig::default();

    println!(
        "{:>6} {:>10} {:>12} {:>10} {:>12}",
        "G/g", "n_g", "theta (s)", "exponent", "T"
    );
    for g in [0.1, 0.2, 0.3, 0.4, 0.5] {
        let pump = PumpParams::resonant(g * RB87_GAMMA)?;
        let p = evaluate(0.0, &pump, &m, &quad)?;
        println!(
            "{:>6.2} {:>10.2} {:>12.4e} {:>10.4} {:>12.4e}",
            g, p.group_index, p.theta, p.attenuation_exponent, p.transmission
        );
    }
    Ok(())
}
