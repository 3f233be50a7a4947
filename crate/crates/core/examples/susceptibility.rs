//! Single velocity class: how the pump reshapes χ around the probe resonance.

use slowlight::{chi_mollow, velocity_shift, MediumParams, RB87_GAMMA};

fn main() -> slowlight::Result<()> {
    let m = MediumParams::rb87_cell();
    let gamma = RB87_GAMMA;

    println!(
        "{:>8} {:>14} {:>14} {:>14}",
        "delta/g", "Im chi G=0", "Im chi G=0.4g", "Re chi G=0.4g"
    );
    for i in -8..=8 {
        let delta = 0.25 * i as f64 * gamma;
        let input = velocity_shift(0.0, delta, 0.0);
        let bare = chi_mollow(input, 0.0, &m)?;
        let dressed = chi_mollow(input, 0.4 * gamma, &m)?;
        println!(
            "{:>8.2} {:>14.6e} {:>14.6e} {:>14.6e}",
            delta / gamma,
            bare.im,
            dressed.im,
            dressed.re
        );
    }

    // A moving class sees both fields shifted.
    let kv = 3.0 * gamma;
    let moving = velocity_shift(0.0, 0.0, kv);
    println!(
        "\nkv = 3g: pump detuning {:.2}g, probe detuning {:.2}g, chi = {:.6e}",
        moving.pump_detuning / gamma,
        moving.probe_detuning / gamma,
        chi_mollow(moving, 0.4 * gamma, &m)?
    );
    Ok(())
}
