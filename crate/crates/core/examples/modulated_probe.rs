//! Amplitude-modulated probe: sideband susceptibilities, exact and to first
//! order in ν.

use slowlight::{propagate_modulated, MediumParams, ProbeParams, PumpParams, QuadratureConfig, RB87_GAMMA};

fn main() -> slowlight::Result<()> {
    let m = MediumParams::rb87_cell();
    let pump = PumpParams::resonant(0.4 * RB87_GAMMA)?;
    let quad = QuadratureConfig::default();

    println!(
        "{:>10} {:>14} {:>10} {:>14}",
        "nu/g", "lin. error", "valid", "sideband delay"
    );
    for nu in [1e-4, 1e-3, 1e-2, 1e-1, 0.5] {
        let probe = ProbeParams::new(0.0, 0.5, nu * RB87_GAMMA)?;
        let r = propagate_modulated(&probe, &pump, &m, &quad)?;
        let delay = r.sideband_delay.map_or("-".to_string(), |d| format!("{d:.4e}"));
        println!(
            "{:>10.0e} {:>14.3e} {:>10} {:>14}",
            nu, r.linearization_error, r.linearization_valid, delay
        );
    }
    Ok(())
}
