//! Largest line-centre group index over a pump-strength interval, with and
//! without a floor on transmission.

use slowlight::{evaluate, optimize_pump, Error, MediumParams, PumpParams, PumpSearch, QuadratureConfig, RB87_GAMMA};

fn main() -> slowlight::Result<()> {
    let m = MediumParams::rb87_cell();
    let quad = QuadratureConfig::default();
    let (lo, hi) = (0.5 * RB87_GAMMA, 2.0 * RB87_GAMMA);

    let free = optimize_pump(&PumpSearch::new(lo, hi, 0.0), &m, &quad)?;
    println!(
        "unconstrained  G = {:.4} gamma  n_g = {:.3}  T = {:.4e}",
        free.rabi / RB87_GAMMA,
        free.group_index,
        free.transmission
    );

    let floor = evaluate(0.0, &PumpParams::resonant(1.4 * RB87_GAMMA)?, &m, &quad)?.transmission;
    let held = optimize_pump(&PumpSearch::new(lo, hi, floor), &m, &quad)?;
    println!(
        "T >= {:.4e}   G = {:.4} gamma  n_g = {:.3}  binding = {}",
        floor,
        held.rabi / RB87_GAMMA,
        held.group_index,
        held.constraint_binding
    );

    match optimize_pump(&PumpSearch::new(lo, hi, 0.5), &m, &quad) {
        Err(Error::Infeasible { max_transmission }) => {
            println!("T >= 0.5      infeasible, best T = {max_transmission:.4e}")
        }
        other => println!("T >= 0.5      {other:?}"),
    }
    Ok(())
}
