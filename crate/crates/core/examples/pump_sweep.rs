//! n_g at line centre versus pump Rabi frequency, with sweep rows in grid
//! order.

use slowlight::{run_sweep, MediumParams, ProbeParams, PumpParams, SweepSpec, SweepVariable, RB87_GAMMA};

fn main() -> slowlight::Result<()> {
    let grid: Vec<f64> = (1..=20).map(|i| 0.05 * i as f64 * RB87_GAMMA).collect();
    let spec = SweepSpec::new(
        SweepVariable::PumpRabi,
        grid,
        MediumParams::rb87_cell(),
        PumpParams::resonant(0.0)?,
        ProbeParams::unmodulated(0.0),
    );
    let table = run_sweep(&spec)?;

    println!("G_over_gamma,n_g,transmission");
    for (g, p) in table.points() {
        println!("{:.2},{:.6},{:.6e}", g / RB87_GAMMA, p.group_index, p.transmission);
    }
    for (g, f) in table.failures() {
        eprintln!("G = {g:e}: {} ({})", f.message, f.category);
    }
    Ok(())
}
