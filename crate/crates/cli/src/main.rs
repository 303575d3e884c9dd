//! `psitwist`: command-line front end for the twisted L-function library.

mod commands;
mod config;
mod input;
mod lenient;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{CommandFactory, Parser, Subcommand};

use commands::*;
use config::Config;
use output::Format;

#[derive(Debug, Parser)]
#[command(name = "psitwist", version, about = "Twisted L-functions over C and Q_p")]
struct Cli {
    /// TOML file with defaults; command-line flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format [default: csv]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integer logarithm S(n) = sum of prime factors with multiplicity
    Sopfr(SopfrArgs),
    /// Number of n with S(n) = m
    Theta(ThetaArgs),
    /// All n with S(n) = m
    Preimages(PreimagesArgs),
    /// Evaluate the twisted L-function at a complex point
    Eval(EvalArgs),
    /// Evaluate the p-adic twisted series at s in Z_p
    EvalPadic(EvalPadicArgs),
    /// Pole lattice of the twisted Euler product
    Poles(PolesArgs),
    /// Lower and upper bounds for |L| on vertical lines
    Bounds(BoundsArgs),
    /// Compare the Mellin integral with the series value
    MellinCheck(MellinArgs),
    /// Coefficients of the expansion in powers of alpha
    AlphaSeries(AlphaSeriesArgs),
    /// Mahler coefficients M_0..M_n of the p-adic interpolation
    Mahler(MahlerArgs),
}

fn run(cli: Cli) -> Result<()> {
    let cmd = Cli::command();
    let cfg = match &cli.config {
        Some(path) => Config::load(path, &cmd)?,
        None => Config::empty(&cmd),
    };
    let format = match cli.format {
        Some(f) => f,
        None => cfg.global("format")?.unwrap_or(Format::Csv),
    };
    let output: Option<PathBuf> = match cli.output {
        Some(p) => Some(p),
        None => cfg.global("output")?,
    };
    let text = match &cli.command {
        Command::Sopfr(a) => sopfr_cmd(&cfg.merge("sopfr", a)?, format),
        Command::Theta(a) => theta_cmd(&cfg.merge("theta", a)?, format),
        Command::Preimages(a) => preimages_cmd(&cfg.merge("preimages", a)?, format),
        Command::Eval(a) => eval_cmd(&cfg.merge("eval", a)?, format),
        Command::EvalPadic(a) => eval_padic_cmd(&cfg.merge("eval-padic", a)?, format),
        Command::Poles(a) => poles_cmd(&cfg.merge("poles", a)?, format),
        Command::Bounds(a) => bounds_cmd(&cfg.merge("bounds", a)?, format),
        Command::MellinCheck(a) => mellin_cmd(&cfg.merge("mellin-check", a)?, format),
        Command::AlphaSeries(a) => alpha_series_cmd(&cfg.merge("alpha-series", a)?, format),
        Command::Mahler(a) => mahler_cmd(&cfg.merge("mahler", a)?, format),
    }?;
    match output {
        Some(path) => std::fs::write(&path, text)
            .with_context(|| format!("invalid argument: cannot write {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            // library errors carry the label first; surface them unwrapped
            match err.chain().find_map(|e| e.downcast_ref::<psitwist::Error>()) {
                Some(core) => eprintln!("error: {core}"),
                None => eprintln!("error: {err:#}"),
            }
            ExitCode::FAILURE
        }
    }
}
