use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use formalq_cli::{
    load_model, parse_radius, parse_weight, render, run_branch, run_check, run_induce, run_quantise, run_shift,
    run_tensor, CliError, CliResult, CHECKS,
};
use serde_json::Value;

/// Exact formal geometric quantisation from the command line.
#[derive(Parser, Debug)]
#[command(name = "formalq", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// Model definition (JSON).
    #[arg(long)]
    model: PathBuf,
    /// Truncation radius: a bound on the squared norm, e.g. `8` or `17/2`.
    #[arg(long, allow_hyphen_values = true)]
    radius: String,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Truncated formal quantisation of a model.
    Quantise(ModelArgs),
    /// Semi-formal quantisation via the shifting trick.
    Shift(ModelArgs),
    /// Quantisation of an induced model along both code paths.
    Induce(ModelArgs),
    /// Run a named verification suite.
    Verify {
        /// One of: restr-cpt, mult, module, qr-induced, shift, dres-sign.
        #[arg(long)]
        check: String,
        #[command(flatten)]
        args: ModelArgs,
    },
    /// Decompose `π_λ ⊗ π_μ`.
    Tensor {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Restrict `π_λ` along an embedding.
    Branch {
        #[arg(long)]
        group: String,
        /// `torus`, `diagonal`, `circle`, or a path to an embedding JSON file.
        #[arg(long, default_value = "torus")]
        embedding: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(report: &Value, out: Option<&PathBuf>) -> CliResult<()> {
    let text = render(report);
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Quantise(a) => {
            let report = run_quantise(&load_model(&a.model)?, parse_radius(&a.radius)?)?;
            emit(&report, a.out.as_ref())?;
        }
        Command::Shift(a) => {
            let report = run_shift(&load_model(&a.model)?, parse_radius(&a.radius)?)?;
            emit(&report, a.out.as_ref())?;
        }
        Command::Induce(a) => {
            let report = run_induce(&load_model(&a.model)?, parse_radius(&a.radius)?)?;
            emit(&report, a.out.as_ref())?;
        }
        Command::Verify { check, args } => {
            if !CHECKS.contains(&check.as_str()) {
                return Err(CliError::UnknownCheck(check));
            }
            let report = run_check(&check, &load_model(&args.model)?, parse_radius(&args.radius)?)?;
            emit(&report.to_json(), args.out.as_ref())?;
            if let Some(w) = &report.counterexample {
                eprintln!("CheckFailed: {check} first differs at {w}");
                return Ok(1);
            }
        }
        Command::Tensor { group, lambda, mu, out } => {
            let report = run_tensor(&group, &parse_weight(&lambda)?, &parse_weight(&mu)?)?;
            emit(&report, out.as_ref())?;
        }
        Command::Branch {
            group,
            embedding,
            lambda,
            out,
        } => {
            let report = run_branch(&group, &embedding, &parse_weight(&lambda)?)?;
            emit(&report, out.as_ref())?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{}", e.name());
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
