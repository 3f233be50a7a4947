//! Calibrated constants of the ⁸⁷Rb preset.

use slowlight::params::consts;
use slowlight::MediumParams;

fn main() {
    let m = MediumParams::rb87_cell();
    let omega = m.omega_1g();
    let d2 = 3.0 * consts::HBAR * consts::C.powi(3) / (4.0 * omega.powi(3) * m.t1());

    println!("omega_1g            {:.6e} rad/s", omega);
    println!("1/T2 (gamma)        {:.6e} rad/s", m.homogeneous_width());
    println!("|d|^2               {:.6e} esu^2 cm^2", d2);
    println!("C = N|d|^2/hbar     {:.6e} rad/s", m.prefactor());
    println!("Doppler width D     {:.6e} rad/s", m.doppler_width());
    println!("D / gamma           {:.1}", m.doppler_width() / m.homogeneous_width());
}
