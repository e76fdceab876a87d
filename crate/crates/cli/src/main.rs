use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use polarpoints_cli::exec::{execute, ExecOptions};
use polarpoints_cli::parse::parse_system;
use polarpoints_cli::report::{rat_from_string, rat_to_string, result_file, summary_text, ConfigEcho};
use polarpoints_core::driver::{default_width, Mode};

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Practical,
    Certified,
}

#[derive(Clone, Copy, ValueEnum)]
enum OnOff {
    On,
    Off,
}

/// Computes at least one real point on every connected component of a
/// smooth real algebraic set, by random polar-variety fibers.
#[derive(Parser)]
#[command(name = "polarpoints", disable_help_flag = false)]
struct Args {
    /// Input system file (vars: line, then one polynomial per line).
    #[arg(long)]
    input: PathBuf,

    /// Failure probability budget, a rational like 1/2.
    #[arg(long, default_value = "1/2")]
    epsilon: String,

    /// practical: draws from {1..997}; certified: the full-size sample sets.
    #[arg(long, value_enum, default_value = "practical")]
    mode: ModeArg,

    /// Seed for all randomness; identical seeds give identical results.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Width cap for each coordinate enclosure, a rational. Default 2^-53.
    #[arg(long)]
    width: Option<String>,

    /// Write the JSON result here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Toggle the optional audits (mandatory checks always run).
    #[arg(long, value_enum, default_value = "on")]
    audits: OnOff,

    /// Report points and parameterizations in the random frame, skipping
    /// the map back to the input coordinates.
    #[arg(long)]
    raw_frame: bool,

    /// Trace levels and timing on standard error.
    #[arg(long)]
    verbose: bool,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("polarpoints: {}", msg);
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            // help and version are not errors
            if e.use_stderr() {
                eprint!("{}", e);
                return ExitCode::from(1);
            }
            print!("{}", e);
            return ExitCode::SUCCESS;
        }
    };

    let text = match std::fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => return fail(format_args!("cannot read {}: {}", args.input.display(), e)),
    };
    let file = match parse_system(&text) {
        Ok(f) => f,
        Err(e) => return fail(format_args!("{}: {}", args.input.display(), e)),
    };
    let variables = file.variables.clone();
    let components = file.components;
    let sys = match file.into_input_system() {
        Ok(s) => s,
        Err(e) => return fail(e),
    };

    let epsilon = match rat_from_string(&args.epsilon) {
        Ok(x) => x,
        Err(e) => return fail(format_args!("--epsilon: {}", e)),
    };
    let width = match &args.width {
        None => default_width(),
        Some(w) => match rat_from_string(w) {
            Ok(x) => x,
            Err(e) => return fail(format_args!("--width: {}", e)),
        },
    };
    let threads = match std::env::var("THREADS") {
        Err(_) => 1,
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t >= 1 => t,
            _ => return fail(format_args!("THREADS must be a positive integer, got '{}'", v)),
        },
    };
    let mode = match args.mode {
        ModeArg::Practical => Mode::Practical,
        ModeArg::Certified => Mode::Certified,
    };
    let audits = matches!(args.audits, OnOff::On);

    let opts = ExecOptions {
        epsilon: epsilon.clone(),
        mode,
        seed: args.seed,
        width: width.clone(),
        audits,
        verbose: args.verbose,
        threads,
    };
    let report = match execute(&sys, &opts) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };

    let config = ConfigEcho {
        input: args.input.display().to_string(),
        epsilon: rat_to_string(&epsilon),
        mode: mode.to_string(),
        seed: args.seed,
        width: rat_to_string(&width),
        audits,
        raw_frame: args.raw_frame,
    };
    let rf = result_file(&report, &variables, components, config);
    let mut json = serde_json::to_string_pretty(&rf).expect("result serializes");
    json.push('\n');

    let summary = summary_text(&report);
    match &args.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                return fail(format_args!("cannot write {}: {}", path.display(), e));
            }
            print!("{}", summary);
        }
        None => {
            print!("{}", json);
            eprint!("{}", summary);
        }
    }

    if report.all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
