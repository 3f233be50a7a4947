//! Running a [`RunConfig`] and writing the result as CSV or JSON.
//!
//! CSV numbers use `{:.16e}` (17 significant digits). Metadata sits in
//! leading `#` lines, the first two being the program/command line and the
//! resolved configuration as one line of JSON. JSON output is a serialized
//! [`Document`]; floats are written in shortest round-trip form, so reading
//! it back with [`read_json`] gives the same bits.
//!
//! Sweep columns, in order:
//!
//! ```text
//! [variable,] delta_rad_per_s, re_S, im_S, n_g, theta_s, attenuation_exponent, transmission
//! ```
//!
//! where the leading variable column (`rabi_G_rad_per_s` or
//! `pump_detuning_rad_per_s`) is present only when the probe detuning is not
//! the swept quantity. A point that failed keeps its row with `NaN` values and
//! gets a `# failed` comment. Pulse files hold `t_s, intensity_vacuum,
//! intensity_medium`; optimisation files hold a single row.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;

use crate::config::{Command, OutputFormat, RunConfig};
use crate::error::{Error, Result};
use crate::pulse::{
    propagate_modulated, propagate_pulse, GaussianPulseSpec, ModulationReport, PropagationResult, SamplingConfig,
};
use crate::sweep::{optimize_pump, run_sweep, PumpOptimum, SweepSpec, SweepTable, SweepVariable};

pub const SWEEP_COLUMNS: [&str; 7] = [
    "delta_rad_per_s",
    "re_S",
    "im_S",
    "n_g",
    "theta_s",
    "attenuation_exponent",
    "transmission",
];
pub const PULSE_COLUMNS: [&str; 3] = ["t_s", "intensity_vacuum", "intensity_medium"];
pub const OPTIMUM_COLUMNS: [&str; 5] = [
    "rabi_G_rad_per_s",
    "n_g",
    "transmission",
    "constraint_binding",
    "evaluations",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    Sweep(SweepTable),
    Pulse {
        pulse: GaussianPulseSpec,
        result: PropagationResult,
        modulation: Option<ModulationReport>,
    },
    Optimum(PumpOptimum),
}

/// Everything a run produces, including the configuration that made it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub program: String,
    pub command: Command,
    pub config: RunConfig,
    pub payload: Payload,
}

/// Runs the configured command.
pub fn run(config: &RunConfig) -> Result<Document> {
    let command = config
        .command
        .ok_or_else(|| Error::Configuration("no command given".into()))?;
    let payload = match command {
        Command::Spectrum | Command::GroupIndex | Command::Gscan => {
            let mut spec = SweepSpec::new(
                config.scan.variable,
                config.scan.values(),
                config.medium,
                config.pump,
                config.probe,
            );
            spec.quadrature = config.quadrature;
            Payload::Sweep(run_sweep(&spec)?)
        }
        Command::Pulse => {
            let pulse = GaussianPulseSpec::from_spectral_width(
                config.pulse.gamma,
                config.probe.detuning,
                config.pulse.amplitude,
            )?;
            let sampling = SamplingConfig {
                samples: config.pulse.samples,
                halfwidth: config.pulse.halfwidth,
            };
            let result = propagate_pulse(&pulse, &config.pump, &config.medium, &config.quadrature, &sampling)?;
            let modulation = if config.probe.modulation_index > 0.0 {
                Some(propagate_modulated(
                    &config.probe,
                    &config.pump,
                    &config.medium,
                    &config.quadrature,
                )?)
            } else {
                None
            };
            Payload::Pulse {
                pulse,
                result,
                modulation,
            }
        }
        Command::Optimize => Payload::Optimum(optimize_pump(&config.optimize, &config.medium, &config.quadrature)?),
    };
    Ok(Document {
        program: format!("slowlight {}", env!("CARGO_PKG_VERSION")),
        command,
        config: config.clone(),
        payload,
    })
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn render(doc: &Document, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Csv => render_csv(doc),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(doc)?;
            s.push('\n');
            Ok(s)
        }
    }
}

pub fn render_csv(doc: &Document) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "# {} {}", doc.program, doc.command.name()).unwrap();
    writeln!(out, "# config {}", serde_json::to_string(&doc.config)?).unwrap();
    match &doc.payload {
        Payload::Sweep(table) => sweep_csv(&mut out, table),
        Payload::Pulse { result, modulation, .. } => {
            writeln!(out, "# measured_delay_s {}", num(result.measured_delay)).unwrap();
            writeln!(out, "# peak_delay_s {}", num(result.peak_delay)).unwrap();
            writeln!(out, "# measured_transmission {}", num(result.measured_transmission)).unwrap();
            writeln!(out, "# energy_transmission {}", num(result.energy_transmission)).unwrap();
            writeln!(out, "# delay_method {}", result.delay_method).unwrap();
            writeln!(out, "# transmission_method {}", result.transmission_method).unwrap();
            writeln!(out, "# parseval_error {}", num(result.parseval_error)).unwrap();
            if let Some(m) = modulation {
                writeln!(out, "# modulation {}", serde_json::to_string(m)?).unwrap();
            }
            writeln!(out, "{}", PULSE_COLUMNS.join(",")).unwrap();
            for ((t, v), m) in result
                .time_grid
                .iter()
                .zip(&result.intensity_vacuum)
                .zip(&result.intensity_medium)
            {
                writeln!(out, "{},{},{}", num(*t), num(*v), num(*m)).unwrap();
            }
        }
        Payload::Optimum(o) => {
            writeln!(out, "{}", OPTIMUM_COLUMNS.join(",")).unwrap();
            writeln!(
                out,
                "{},{},{},{},{}",
                num(o.rabi),
                num(o.group_index),
                num(o.transmission),
                o.constraint_binding,
                o.evaluations
            )
            .unwrap();
        }
    }
    Ok(out)
}

fn sweep_csv(out: &mut String, table: &SweepTable) {
    let variable = table.spec.variable;
    let lead = variable != SweepVariable::ProbeDetuning;
    for (i, row) in table.rows.iter().enumerate() {
        if let Err(f) = &row.outcome {
            writeln!(
                out,
                "# failed row {i} at {} = {}: {}: {}",
                variable.column_name(),
                num(row.value),
                f.category,
                f.message
            )
            .unwrap();
        }
    }
    let mut header = Vec::new();
    if lead {
        header.push(variable.column_name());
    }
    header.extend(SWEEP_COLUMNS);
    writeln!(out, "{}", header.join(",")).unwrap();
    for row in &table.rows {
        let mut cells = Vec::with_capacity(8);
        if lead {
            cells.push(num(row.value));
        }
        match &row.outcome {
            Ok(p) => cells.extend(
                [
                    p.delta,
                    p.s.re,
                    p.s.im,
                    p.group_index,
                    p.theta,
                    p.attenuation_exponent,
                    p.transmission,
                ]
                .map(num),
            ),
            Err(_) => {
                let delta = if lead { table.spec.probe.detuning } else { row.value };
                cells.push(num(delta));
                cells.extend(std::iter::repeat_n(num(f64::NAN), 6));
            }
        }
        writeln!(out, "{}", cells.join(",")).unwrap();
    }
}

/// Renders `doc` and writes it to `path`.
pub fn emit(doc: &Document, format: OutputFormat, path: &Path) -> Result<()> {
    std::fs::write(path, render(doc, format)?)?;
    Ok(())
}

pub fn read_json(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    fn doc(text: &str) -> Document {
        run(&parse_config(text).unwrap()).unwrap()
    }

    #[test]
    fn spectrum_csv_has_one_row_per_grid_point() {
        let d = doc("preset = rb87-cell\ncommand = spectrum\nscan.points = 7\n");
        let csv = render_csv(&d).unwrap();
        let body: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body[0], SWEEP_COLUMNS.join(","));
        assert_eq!(body.len(), 1 + 7);
        assert!(body[1..].iter().all(|l| l.split(',').count() == 7));
    }

    #[test]
    fn gscan_has_leading_variable_column() {
        let d = doc("preset = rb87-cell\ncommand = gscan\nscan.points = 3\n");
        let csv = render_csv(&d).unwrap();
        let header = csv.lines().find(|l| !l.starts_with('#')).unwrap();
        assert!(header.starts_with("rabi_G_rad_per_s,delta_rad_per_s,"));
    }

    #[test]
    fn csv_numbers_carry_seventeen_digits() {
        let d = doc("preset = rb87-cell\ncommand = spectrum\nscan.points = 3\n");
        let csv = render_csv(&d).unwrap();
        let row = csv.lines().filter(|l| !l.starts_with('#')).nth(2).unwrap();
        for cell in row.split(',') {
            let mantissa = cell.split('e').next().unwrap().trim_start_matches('-');
            assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17, "{cell}");
            let _: f64 = cell.parse().unwrap();
        }
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let d = doc("preset = rb87-cell\ncommand = groupindex\nscan.points = 5\n");
        let s = render(&d, OutputFormat::Json).unwrap();
        let back: Document = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn identical_configs_give_identical_bytes() {
        let text = "preset = rb87-cell\ncommand = optimize\n";
        let a = render(&doc(text), OutputFormat::Csv).unwrap();
        let b = render(&doc(text), OutputFormat::Csv).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.lines().filter(|l| !l.starts_with('#')).count(), 2);
    }

    #[test]
    fn missing_command_is_a_configuration_error() {
        let e = run(&parse_config("preset = rb87-cell\n").unwrap()).unwrap_err();
        assert_eq!(e.category(), "configuration");
    }
}
