use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, ValueEnum};
use serde_json::json;

use hotrad::config::SweepConfig;
use hotrad::sweep::{run_sweep, write_csv, write_json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Polarization sweeps of hot-electron spontaneous emission.
#[derive(Debug, Parser)]
#[command(name = "hotrad", version)]
struct Cli {
    /// JSON sweep configuration.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Run only the scenario with this name.
    #[arg(long, value_name = "NAME")]
    scenario: Option<String>,
    /// Output file; standard output when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Attach brute-force oracle reports for every sweep point.
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

fn oracle_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".oracle.json");
    PathBuf::from(s)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|source| hotrad::Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    let cfg = SweepConfig::from_path(&cli.config)?;
    let table = run_sweep(&cfg, cli.scenario.as_deref())?;
    let reports = if cli.oracle {
        if cli.format == Format::Csv && cli.out.is_none() {
            bail!("--oracle with CSV output needs --out for the report file");
        }
        Some(hotrad::sweep::oracle_reports(&cfg, cli.scenario.as_deref())?)
    } else {
        None
    };

    let mut body = Vec::new();
    match cli.format {
        Format::Csv => write_csv(&table, &mut body)?,
        Format::Json => match &reports {
            Some(r) => {
                serde_json::to_writer_pretty(&mut body, &json!({ "rows": table.rows, "oracle": r }))?;
                body.push(b'\n');
            }
            None => write_json(&table, &mut body)?,
        },
    }

    match &cli.out {
        Some(path) => {
            write_file(path, &body)?;
            if let (Format::Csv, Some(r)) = (cli.format, &reports) {
                let mut text = serde_json::to_vec_pretty(r)?;
                text.push(b'\n');
                write_file(&oracle_path(path), &text)?;
            }
        }
        None => io::stdout().lock().write_all(&body).context("writing to standard output")?,
    }
    Ok(())
}

fn report_error(kind: &str, message: String) -> ExitCode {
    let err = json!({ "error": { "kind": kind, "message": message } });
    eprintln!("{err}");
    ExitCode::FAILURE
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return report_error("usage", e.to_string().trim_end().to_string()),
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let kind = e.downcast_ref::<hotrad::Error>().map_or("cli", |h| h.kind());
            report_error(kind, format!("{e:#}"))
        }
    }
}
