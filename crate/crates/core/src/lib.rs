//! Slow light from a Lamb dip.
//!
//! A weak probe crosses a Doppler-broadened two-level vapor while a strong
//! counter-propagating pump saturates the zero-velocity atoms. The hole burnt
//! into the inhomogeneous line gives steep normal dispersion at line center
//! and hence a large group index. This crate computes:
//!
//! * the pump-dressed susceptibility of one velocity class ([`susceptibility`]),
//! * its Maxwell–Boltzmann average `S(ω)` and `∂S/∂ω` ([`doppler`]),
//! * group index, delay time and attenuation ([`dispersion`]),
//! * full Gaussian-pulse and modulated-probe propagation ([`pulse`]),
//! * parameter sweeps and a constrained search over pump strength ([`sweep`]),
//! * plus configuration parsing and CSV/JSON output ([`config`], [`output`]).
//!
//! All quantities are in Gaussian units with angular frequencies in rad/s.
//! Runnable walkthroughs live in `examples/`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod config;
pub mod dispersion;
pub mod doppler;
pub mod error;
pub mod output;
pub mod params;
pub mod pulse;
pub mod quadrature;
pub mod susceptibility;
pub mod sweep;

pub use dispersion::{delay_time, evaluate, group_index, transmission, DispersionPoint};
pub use doppler::{average_ds_domega, average_s, spectrum_scan, ComplexSpectrum, QuadratureConfig};
pub use error::{Error, Result};
pub use params::{calibrate_prefactor, doppler_width, MediumInputs, MediumParams, ProbeParams, PumpParams, RB87_GAMMA};
pub use pulse::{propagate_modulated, propagate_pulse, GaussianPulseSpec, PropagationResult, SamplingConfig};
pub use susceptibility::{chi_mollow, dchi_ddelta, velocity_shift, VelocityClassInput};
pub use sweep::{optimize_pump, run_sweep, PumpOptimum, PumpSearch, SweepOutput, SweepSpec, SweepTable, SweepVariable};

pub use num_complex::Complex64;
