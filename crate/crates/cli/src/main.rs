mod args;
mod config;
mod error;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::{to_config, Cli};
use config::{Format, JobConfig};
use error::CliError;
use run::Report;

fn threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("MW_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| CliError::Config(format!("MW_THREADS=`{v}` is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))
}

fn load(cli: &Cli) -> Result<JobConfig, CliError> {
    let cfg = match (&cli.config, &cli.command) {
        (Some(_), Some(_)) => return Err(CliError::Config("--config cannot be combined with a subcommand".into())),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
        }
        (None, Some(cmd)) => to_config(cmd)?,
        (None, None) => return Err(CliError::Config("no command given; see --help".into())),
    };
    run::canonicalize(&cfg)
}

fn render(cfg: &JobConfig, report: &Report) -> Result<Vec<u8>, CliError> {
    Ok(match cfg.output().format {
        Format::Json => {
            let doc = json!({
                "schema_version": 1,
                "command": cfg.command(),
                "inputs": cfg,
                "results": report.results,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("plain data");
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Numeric(format!("csv: {e}"));
            w.write_record(&report.header).map_err(io)?;
            for row in &report.rows {
                w.write_record(row).map_err(io)?;
            }
            w.into_inner().map_err(|e| CliError::Numeric(format!("csv: {e}")))?
        }
        Format::Text => {
            let mut s = String::new();
            for line in &report.text {
                s.push_str(line);
                s.push('\n');
            }
            if report.text.is_empty() || !matches!(cfg, JobConfig::Verify { .. }) {
                for row in &report.rows {
                    s.push_str(&row.join("  "));
                    s.push('\n');
                }
            }
            s.into_bytes()
        }
    })
}

fn emit(cfg: &JobConfig, bytes: &[u8]) -> Result<(), CliError> {
    match &cfg.output().path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Config(format!("{p}: {e}"))),
        None => std::io::stdout().write_all(bytes).map_err(|e| CliError::Numeric(format!("stdout: {e}"))),
    }
}

fn main_inner() -> Result<(), CliError> {
    let cli = Cli::parse();
    threads()?;
    let cfg = load(&cli)?;
    let report = run::run(&cfg)?;
    emit(&cfg, &render(&cfg, &report)?)?;
    match report.failure {
        Some(msg) => Err(CliError::Numeric(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    match main_inner() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mellin: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
