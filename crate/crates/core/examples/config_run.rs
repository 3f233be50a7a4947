//! The configuration format and CSV output used by the command-line tool.

use slowlight::config::parse_config;
use slowlight::output::{render, run};

const CONFIG: &str = "
# line-centre group index for three pump strengths
preset = rb87-cell
command = gscan
scan.start = 0.2 gamma
scan.stop = 0.4 gamma
scan.points = 3
format = csv
";

fn main() -> slowlight::Result<()> {
    let config = parse_config(CONFIG)?;
    let doc = run(&config)?;
    print!("{}", render(&doc, config.output_format)?);

    let err = parse_config("preset = rb87-cell\ndensty = 1e11\n").unwrap_err();
    eprintln!("{} (exit code {}): {err}", err.category(), err.exit_code());
    Ok(())
}
