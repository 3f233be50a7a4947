use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use slowlight::config::{parse_config_with, Command, GammaUnits, OutputFormat, Overrides};
use slowlight::output::{render, run};
use slowlight::{Error, Result};

#[derive(Parser)]
#[command(
    name = "slowlight",
    version,
    about = "Group index, delay and transmission of a pumped Doppler-broadened vapour"
)]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,
    /// Configuration file; without one the rb87-cell preset is used.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output file (default: the config's `output`, else stdout).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Extra `key=value` setting; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    /// How Hz-family units are read for `pulse.gamma`.
    #[arg(long, value_enum, default_value = "ordinary")]
    gamma_units: Units,
}

#[derive(Clone, Copy, ValueEnum)]
enum Cmd {
    Spectrum,
    Groupindex,
    Gscan,
    Pulse,
    Optimize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Units {
    Angular,
    Ordinary,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let report = serde_json::json!({ "error": { "category": e.category(), "message": e.to_string() } });
            eprintln!("{report}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    let text = match &cli.config {
        Some(path) => std::fs::read_to_string(path)?,
        None => "preset = rb87-cell\n".to_string(),
    };
    let overrides = Overrides {
        sets: cli.sets,
        gamma_units: match cli.gamma_units {
            Units::Angular => GammaUnits::Angular,
            Units::Ordinary => GammaUnits::Ordinary,
        },
        command: Some(match cli.command {
            Cmd::Spectrum => Command::Spectrum,
            Cmd::Groupindex => Command::GroupIndex,
            Cmd::Gscan => Command::Gscan,
            Cmd::Pulse => Command::Pulse,
            Cmd::Optimize => Command::Optimize,
        }),
    };
    let config = parse_config_with(&text, &overrides)?;
    let format = match cli.format {
        Some(Format::Csv) => OutputFormat::Csv,
        Some(Format::Json) => OutputFormat::Json,
        None => config.output_format,
    };
    let doc = run(&config)?;
    let rendered = render(&doc, format)?;
    match cli.out.or(config.output_path) {
        Some(path) => std::fs::write(path, rendered)?,
        None => std::io::stdout()
            .lock()
            .write_all(rendered.as_bytes())
            .map_err(Error::from)?,
    }
    Ok(())
}
