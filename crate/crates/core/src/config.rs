//! Run configuration: a line-oriented `key = value [unit]` format.
//!
//! ```text
//! # ⁸⁷Rb cell, strong pump
//! preset = rb87-cell
//! command = groupindex
//! pump.rabi = 0.4 gamma
//! scan.start = -5 gamma
//! scan.stop = 5 gamma
//! scan.points = 201
//! ```
//!
//! Blank lines and `#` comments are ignored. Every key may appear once. The
//! recognised keys and their units are:
//!
//! | key | unit(s) | default |
//! |---|---|---|
//! | `preset` | `rb87-cell` or `none` | `none` |
//! | `command` | `spectrum`, `groupindex`, `gscan`, `pulse`, `optimize` | none |
//! | `output` | path | none |
//! | `format` | `csv` or `json` | `csv` |
//! | `medium.density` | `cm^-3` | preset |
//! | `medium.t1`, `medium.t2` | `s`, `ms`, `us`, `ns` | preset |
//! | `medium.wavelength` | `nm`, `um`, `cm` | preset |
//! | `medium.omega_1g` | frequency | preset |
//! | `medium.mass` | `g`, `u` | preset |
//! | `medium.temperature` | `K` | preset |
//! | `medium.length` | `cm`, `mm`, `m` | preset |
//! | `pump.rabi`, `pump.detuning` | frequency | `0.4 gamma`, `0` |
//! | `probe.detuning`, `probe.modulation_freq` | frequency | `0` |
//! | `probe.modulation_index` | dimensionless | `0` |
//! | `quad.halfwidth` | dimensionless (units of D) | `6` |
//! | `quad.rel_tolerance` | dimensionless | `1e-8` |
//! | `quad.max_subdivisions` | count | `10000` |
//! | `scan.variable` | `probe_detuning`, `pump_rabi`, `pump_detuning` | from command |
//! | `scan.start`, `scan.stop` | frequency | from command |
//! | `scan.points` | count | from command |
//! | `pulse.gamma` | frequency | `120 kHz` |
//! | `pulse.samples` | count | `16384` |
//! | `pulse.halfwidth` | frequency | automatic |
//! | `pulse.amplitude` | dimensionless | `1` |
//! | `optimize.g_lo`, `optimize.g_hi` | frequency | `0.3 gamma`, `0.5 gamma` |
//! | `optimize.min_transmission` | dimensionless | `0` |
//!
//! Frequency units are `rad/s`, `Hz`, `kHz`, `MHz`, `GHz` (ordinary
//! frequencies, multiplied by 2π) and `gamma` (multiples of the homogeneous
//! width `1/T2` of the resolved medium). Frequency values must carry a unit;
//! other quantities default to the first unit listed. For `pulse.gamma`
//! only, [`GammaUnits::Angular`] reads the Hz family as rad/s without the 2π.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::PathBuf;

use crate::doppler::QuadratureConfig;
use crate::error::{Error, Result};
use crate::params::{angular_frequency_from_wavelength, consts, MediumInputs, MediumParams, ProbeParams, PumpParams};
use crate::sweep::{PumpSearch, SweepVariable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    Rb87Cell,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Spectrum,
    GroupIndex,
    Gscan,
    Pulse,
    Optimize,
}

impl Command {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "spectrum" => Some(Command::Spectrum),
            "groupindex" => Some(Command::GroupIndex),
            "gscan" => Some(Command::Gscan),
            "pulse" => Some(Command::Pulse),
            "optimize" => Some(Command::Optimize),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::GroupIndex => "groupindex",
            Command::Gscan => "gscan",
            Command::Pulse => "pulse",
            Command::Optimize => "optimize",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// How `Hz`-family units are read for the pulse spectral width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum GammaUnits {
    /// `120 kHz` means 2π·120×10³ rad/s.
    #[default]
    Ordinary,
    /// `120 kHz` means 120×10³ rad/s.
    Angular,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanGrid {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl ScanGrid {
    /// Evenly spaced values from `start` to `stop` inclusive.
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        (0..self.points).map(|i| self.start + step * i as f64).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseSettings {
    /// Spectral width Γ, rad/s.
    pub gamma: f64,
    pub samples: usize,
    pub halfwidth: Option<f64>,
    pub amplitude: f64,
}

/// Fully resolved run description; serialized verbatim into every output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub preset: Option<Preset>,
    pub command: Option<Command>,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
    pub gamma_units: GammaUnits,
    pub medium: MediumParams,
    pub pump: PumpParams,
    pub probe: ProbeParams,
    pub quadrature: QuadratureConfig,
    pub scan: ScanGrid,
    pub pulse: PulseSettings,
    pub optimize: PumpSearch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Text,
    Frequency,
    Time,
    Length,
    Wavelength,
    Density,
    Mass,
    Temperature,
    Dimensionless,
    Count,
}

const SCHEMA: &[(&str, Kind)] = &[
    ("preset", Kind::Text),
    ("command", Kind::Text),
    ("output", Kind::Text),
    ("format", Kind::Text),
    ("medium.density", Kind::Density),
    ("medium.t1", Kind::Time),
    ("medium.t2", Kind::Time),
    ("medium.wavelength", Kind::Wavelength),
    ("medium.omega_1g", Kind::Frequency),
    ("medium.mass", Kind::Mass),
    ("medium.temperature", Kind::Temperature),
    ("medium.length", Kind::Length),
    ("pump.rabi", Kind::Frequency),
    ("pump.detuning", Kind::Frequency),
    ("probe.detuning", Kind::Frequency),
    ("probe.modulation_index", Kind::Dimensionless),
    ("probe.modulation_freq", Kind::Frequency),
    ("quad.halfwidth", Kind::Dimensionless),
    ("quad.rel_tolerance", Kind::Dimensionless),
    ("quad.max_subdivisions", Kind::Count),
    ("scan.variable", Kind::Text),
    ("scan.start", Kind::Frequency),
    ("scan.stop", Kind::Frequency),
    ("scan.points", Kind::Count),
    ("pulse.gamma", Kind::Frequency),
    ("pulse.samples", Kind::Count),
    ("pulse.halfwidth", Kind::Frequency),
    ("pulse.amplitude", Kind::Dimensionless),
    ("optimize.g_lo", Kind::Frequency),
    ("optimize.g_hi", Kind::Frequency),
    ("optimize.min_transmission", Kind::Dimensionless),
];

/// Unit name → factor to the internal unit, per kind. The first entry is the
/// internal unit.
fn units(kind: Kind) -> &'static [(&'static str, f64)] {
    const TWO_PI: f64 = 2.0 * PI;
    match kind {
        Kind::Frequency => &[
            ("rad/s", 1.0),
            ("Hz", TWO_PI),
            ("kHz", TWO_PI * 1e3),
            ("MHz", TWO_PI * 1e6),
            ("GHz", TWO_PI * 1e9),
        ],
        Kind::Time => &[("s", 1.0), ("ms", 1e-3), ("us", 1e-6), ("ns", 1e-9)],
        Kind::Length => &[("cm", 1.0), ("mm", 0.1), ("m", 100.0)],
        Kind::Wavelength => &[("nm", 1e-7), ("um", 1e-4), ("cm", 1.0)],
        Kind::Density => &[("cm^-3", 1.0), ("/cc", 1.0)],
        Kind::Mass => &[("g", 1.0), ("u", consts::AMU)],
        Kind::Temperature => &[("K", 1.0)],
        Kind::Dimensionless | Kind::Count => &[("1", 1.0)],
        Kind::Text => &[],
    }
}

#[derive(Debug, Clone)]
struct Entry {
    origin: String,
    value: String,
}

fn parse_error(origin: &str, key: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line: origin.to_string(),
        key: key.to_string(),
        message: message.into(),
    }
}

fn collect(entries: &mut BTreeMap<String, Entry>, text: &str, origin: impl Fn(usize) -> String) -> Result<()> {
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let origin = origin(i + 1);
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_error(&origin, line, "expected `key = value`"))?;
        let (key, value) = (key.trim(), value.trim());
        if !SCHEMA.iter().any(|(k, _)| *k == key) {
            return Err(parse_error(&origin, key, "unknown key"));
        }
        if value.is_empty() {
            return Err(parse_error(&origin, key, "missing value"));
        }
        if let Some(prev) = entries.get(key) {
            return Err(parse_error(
                &origin,
                key,
                format!("duplicate key (first set at {})", prev.origin),
            ));
        }
        entries.insert(
            key.to_string(),
            Entry {
                origin,
                value: value.to_string(),
            },
        );
    }
    Ok(())
}

struct Resolver {
    entries: BTreeMap<String, Entry>,
    gamma_units: GammaUnits,
    /// 1/T2 once the medium is known.
    gamma_unit: Option<f64>,
}

impl Resolver {
    fn kind(key: &str) -> Kind {
        SCHEMA.iter().find(|(k, _)| *k == key).map(|(_, kind)| *kind).unwrap()
    }

    fn text(&self, key: &str) -> Option<(&str, &str)> {
        self.entries.get(key).map(|e| (e.value.as_str(), e.origin.as_str()))
    }

    fn number(&self, key: &str) -> Result<Option<f64>> {
        let Some(entry) = self.entries.get(key) else {
            return Ok(None);
        };
        let kind = Self::kind(key);
        let err = |m: String| parse_error(&entry.origin, key, m);
        let (number, unit) =
            split_quantity(&entry.value).ok_or_else(|| err(format!("`{}` is not a number", entry.value)))?;
        if !number.is_finite() {
            return Err(err("value must be finite".into()));
        }
        let table = units(kind);
        let factor = if unit.is_empty() {
            if kind == Kind::Frequency && number != 0.0 {
                return Err(err(
                    "frequency values need an explicit unit (rad/s, Hz, kHz, MHz, GHz, gamma)".into(),
                ));
            }
            1.0
        } else if kind == Kind::Frequency && unit == "gamma" {
            self.gamma_unit.expect("medium resolved before frequencies")
        } else if let Some((_, f)) = table.iter().find(|(u, _)| *u == unit) {
            if kind == Kind::Frequency && key == "pulse.gamma" && self.gamma_units == GammaUnits::Angular {
                f / (2.0 * PI)
            } else {
                *f
            }
        } else {
            let mut expected: Vec<&str> = table.iter().map(|(u, _)| *u).collect();
            if kind == Kind::Frequency {
                expected.push("gamma");
            }
            return Err(err(format!(
                "unit `{unit}` does not fit this key (expected one of {})",
                expected.join(", ")
            )));
        };
        Ok(Some(number * factor))
    }

    fn count(&self, key: &str) -> Result<Option<usize>> {
        let Some(entry) = self.entries.get(key) else {
            return Ok(None);
        };
        entry.value.parse::<usize>().map(Some).map_err(|_| {
            parse_error(
                &entry.origin,
                key,
                format!("`{}` is not a non-negative integer", entry.value),
            )
        })
    }

    /// Wraps a validation error with the origin of `key`.
    fn blame(&self, key: &str, e: Error) -> Error {
        match self.entries.get(key) {
            Some(entry) => parse_error(&entry.origin, key, e.to_string()),
            None => e,
        }
    }
}

/// Command-line additions to a configuration file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    /// `key=value` pairs, reported as `--set N` in errors. An override may
    /// not repeat a key from the file.
    pub sets: Vec<String>,
    pub gamma_units: GammaUnits,
    /// Replaces `command` from the file.
    pub command: Option<Command>,
}

/// Splits `"3.5 MHz"` or `"3.5MHz"` into the number and the unit text.
fn split_quantity(value: &str) -> Option<(f64, String)> {
    let value = value.trim();
    let end = (1..=value.len())
        .rev()
        .filter(|&i| value.is_char_boundary(i))
        .find(|&i| value[..i].trim_end().parse::<f64>().is_ok())?;
    let number = value[..end].trim_end().parse().ok()?;
    let unit = value[end..].split_whitespace().collect::<Vec<_>>().join(" ");
    Some((number, unit))
}

/// Parses a configuration text with no command-line overrides.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    parse_config_with(text, &Overrides::default())
}

pub fn parse_config_with(text: &str, overrides: &Overrides) -> Result<RunConfig> {
    let mut entries = BTreeMap::new();
    collect(&mut entries, text, |n| format!("line {n}"))?;
    for (i, o) in overrides.sets.iter().enumerate() {
        collect(&mut entries, o, |_| format!("--set {}", i + 1))?;
    }
    let gamma_units = overrides.gamma_units;
    let mut r = Resolver {
        entries,
        gamma_units,
        gamma_unit: None,
    };

    let preset = match r.text("preset") {
        None | Some(("none", _)) => None,
        Some(("rb87-cell", _)) => Some(Preset::Rb87Cell),
        Some((other, origin)) => return Err(parse_error(origin, "preset", format!("unknown preset `{other}`"))),
    };
    let command = match r.text("command") {
        _ if overrides.command.is_some() => overrides.command,
        None => None,
        Some((s, origin)) => {
            Some(Command::parse(s).ok_or_else(|| parse_error(origin, "command", format!("unknown command `{s}`")))?)
        }
    };
    let output_format = match r.text("format") {
        None | Some(("csv", _)) => OutputFormat::Csv,
        Some(("json", _)) => OutputFormat::Json,
        Some((other, origin)) => return Err(parse_error(origin, "format", format!("unknown format `{other}`"))),
    };
    let output_path = r.text("output").map(|(p, _)| PathBuf::from(p));

    let medium = resolve_medium(&r, preset)?;
    r.gamma_unit = Some(medium.homogeneous_width());
    let gamma = medium.homogeneous_width();

    let pump = PumpParams::new(
        r.number("pump.rabi")?.unwrap_or(0.4 * gamma),
        r.number("pump.detuning")?.unwrap_or(0.0),
    )
    .map_err(|e| r.blame("pump.rabi", e))?;
    let probe = ProbeParams::new(
        r.number("probe.detuning")?.unwrap_or(0.0),
        r.number("probe.modulation_index")?.unwrap_or(0.0),
        r.number("probe.modulation_freq")?.unwrap_or(0.0),
    )
    .map_err(|e| r.blame("probe.modulation_freq", e))?;
    let default_quad = QuadratureConfig::default();
    let quadrature = QuadratureConfig::new(
        r.number("quad.halfwidth")?
            .unwrap_or(default_quad.integration_halfwidth),
        r.number("quad.rel_tolerance")?.unwrap_or(default_quad.rel_tolerance),
        r.count("quad.max_subdivisions")?
            .unwrap_or(default_quad.max_subdivisions),
    )
    .map_err(|e| r.blame("quad.rel_tolerance", e))?;

    let scan = resolve_scan(&r, command, gamma)?;

    let pulse = PulseSettings {
        gamma: r.number("pulse.gamma")?.unwrap_or(match gamma_units {
            GammaUnits::Ordinary => 2.0 * PI * 120e3,
            GammaUnits::Angular => 120e3,
        }),
        samples: r.count("pulse.samples")?.unwrap_or(1 << 14),
        halfwidth: r.number("pulse.halfwidth")?,
        amplitude: r.number("pulse.amplitude")?.unwrap_or(1.0),
    };
    if !(pulse.gamma > 0.0) {
        return Err(r.blame("pulse.gamma", Error::invalid("Gamma", "must be > 0")));
    }
    if pulse.samples < 4096 || !pulse.samples.is_power_of_two() {
        return Err(r.blame(
            "pulse.samples",
            Error::Configuration("sample count must be a power of two >= 4096".into()),
        ));
    }

    let optimize = PumpSearch {
        g_lo: r.number("optimize.g_lo")?.unwrap_or(0.3 * gamma),
        g_hi: r.number("optimize.g_hi")?.unwrap_or(0.5 * gamma),
        min_transmission: r.number("optimize.min_transmission")?.unwrap_or(0.0),
        pump_detuning: pump.detuning,
        probe_detuning: probe.detuning,
    };
    if !(optimize.g_lo >= 0.0 && optimize.g_hi >= optimize.g_lo) {
        return Err(r.blame("optimize.g_hi", Error::invalid("bounds", "need 0 <= g_lo <= g_hi")));
    }
    if !(0.0..=1.0).contains(&optimize.min_transmission) {
        return Err(r.blame(
            "optimize.min_transmission",
            Error::invalid("min_transmission", "must lie in [0, 1]"),
        ));
    }

    Ok(RunConfig {
        preset,
        command,
        output_path,
        output_format,
        gamma_units,
        medium,
        pump,
        probe,
        quadrature,
        scan,
        pulse,
        optimize,
    })
}

fn resolve_medium(r: &Resolver, preset: Option<Preset>) -> Result<MediumParams> {
    let base = preset.map(|Preset::Rb87Cell| MediumInputs::rb87_cell());
    let get = |key: &str, preset_value: Option<f64>| -> Result<f64> {
        match r.number(key)? {
            Some(v) => Ok(v),
            None => preset_value.ok_or_else(|| parse_error("config", key, "required when no preset is given")),
        }
    };
    let omega_1g = match (r.number("medium.wavelength")?, r.number("medium.omega_1g")?) {
        (Some(_), Some(_)) => {
            let origin = &r.entries["medium.omega_1g"].origin;
            return Err(parse_error(
                origin,
                "medium.omega_1g",
                "give either medium.wavelength or medium.omega_1g, not both",
            ));
        }
        (Some(lambda), None) => {
            if !(lambda > 0.0) {
                return Err(parse_error(
                    &r.entries["medium.wavelength"].origin,
                    "medium.wavelength",
                    "must be > 0",
                ));
            }
            angular_frequency_from_wavelength(lambda)
        }
        (None, Some(w)) => w,
        (None, None) => get("medium.omega_1g", base.map(|b| b.omega_1g))?,
    };
    let inputs = MediumInputs {
        density: get("medium.density", base.map(|b| b.density))?,
        t1: get("medium.t1", base.map(|b| b.t1))?,
        t2: get("medium.t2", base.map(|b| b.t2))?,
        omega_1g,
        mass: get("medium.mass", base.map(|b| b.mass))?,
        temperature: get("medium.temperature", base.map(|b| b.temperature))?,
        length: get("medium.length", base.map(|b| b.length))?,
    };
    MediumParams::new(inputs).map_err(|e| {
        let key = match &e {
            Error::InvalidParameter { name, .. } => match *name {
                "density" => "medium.density",
                "T1" => "medium.t1",
                "T2" => "medium.t2",
                "omega" | "omega_1g" => "medium.omega_1g",
                "mass" => "medium.mass",
                "temperature" => "medium.temperature",
                _ => "medium.length",
            },
            _ => "medium",
        };
        r.blame(key, e)
    })
}

fn resolve_scan(r: &Resolver, command: Option<Command>, gamma: f64) -> Result<ScanGrid> {
    let variable = match r.text("scan.variable") {
        Some(("probe_detuning", _)) => SweepVariable::ProbeDetuning,
        Some(("pump_rabi", _)) => SweepVariable::PumpRabi,
        Some(("pump_detuning", _)) => SweepVariable::PumpDetuning,
        Some((other, origin)) => {
            return Err(parse_error(
                origin,
                "scan.variable",
                format!("unknown sweep variable `{other}`"),
            ))
        }
        None if command == Some(Command::Gscan) => SweepVariable::PumpRabi,
        None => SweepVariable::ProbeDetuning,
    };
    let fixed_key = match variable {
        SweepVariable::ProbeDetuning => "probe.detuning",
        SweepVariable::PumpRabi => "pump.rabi",
        SweepVariable::PumpDetuning => "pump.detuning",
    };
    if let Some(entry) = r.entries.get(fixed_key) {
        if matches!(command, Some(Command::Spectrum | Command::GroupIndex | Command::Gscan)) {
            return Err(parse_error(
                &entry.origin,
                fixed_key,
                "this parameter is swept by scan.variable and cannot also be fixed",
            ));
        }
    }
    let (start, stop, points) = match variable {
        SweepVariable::PumpRabi => (0.05 * gamma, gamma, 20),
        SweepVariable::ProbeDetuning if command == Some(Command::GroupIndex) => (-5.0 * gamma, 5.0 * gamma, 201),
        _ => (-20.0 * gamma, 20.0 * gamma, 401),
    };
    let scan = ScanGrid {
        variable,
        start: r.number("scan.start")?.unwrap_or(start),
        stop: r.number("scan.stop")?.unwrap_or(stop),
        points: r.count("scan.points")?.unwrap_or(points),
    };
    if scan.points == 0 {
        return Err(r.blame("scan.points", Error::invalid("scan.points", "must be >= 1")));
    }
    if scan.points > 1 && !(scan.stop > scan.start) {
        return Err(r.blame("scan.stop", Error::invalid("scan.stop", "must exceed scan.start")));
    }
    Ok(scan)
}
