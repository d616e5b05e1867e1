use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use condsteer_cli::analyze::{run_analyze, AnalyzeInput};
use condsteer_cli::families::{parse_convention, parse_params, Family, StateSpec};
use condsteer_cli::predicate::{Mode, Predicate};
use condsteer_cli::statefile::load_state;
use condsteer_cli::sweep::{run_sweep, SweepAxis, SweepSpec};
use condsteer_cli::threshold::{run_threshold, ThresholdSpec};
use condsteer_cli::{CliError, CliResult};

#[derive(Parser)]
#[command(
    name = "condsteer",
    about = "Conditional steerability of three-qubit states: analysis, sweeps and thresholds",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report negativities, distillability and the conditional-steering
    /// verdict of one state as JSON
    Analyze {
        /// Named state family
        #[arg(long)]
        family: Option<String>,
        /// Family parameter, repeatable: --param p=0.6
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        /// JSON state file instead of a named family
        #[arg(long, value_name = "PATH")]
        state_file: Option<PathBuf>,
        /// Measurement selection: grid scan or the family's fixed setting
        #[arg(long, default_value = "grid")]
        mode: String,
        /// Theta subdivisions of the direction grid
        #[arg(long, default_value_t = 40)]
        grid_theta_steps: usize,
        /// Also write the JSON document to this path
        #[arg(long)]
        out: Option<PathBuf>,
        /// Leading-amplitude convention for the pure family: sqrt or affine
        #[arg(long, default_value = "sqrt")]
        lambda_convention: String,
    },
    /// Sweep one or two parameters and write per-point criteria as CSV
    Sweep {
        #[arg(long)]
        family: String,
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        /// Swept axis, repeatable up to twice: --sweep p=0:1:0.001
        #[arg(long = "sweep", value_name = "KEY=LO:HI:STEP", required = true)]
        sweeps: Vec<String>,
        #[arg(long, default_value = "fixed")]
        mode: String,
        #[arg(long, default_value_t = 40)]
        grid_theta_steps: usize,
        /// Output CSV path
        #[arg(long, required = true)]
        out: PathBuf,
        #[arg(long, default_value = "sqrt")]
        lambda_convention: String,
    },
    /// Bisect one parameter for the boundary of a predicate
    Threshold {
        #[arg(long)]
        family: String,
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        /// Bracket to bisect: --bisect alpha=0:1
        #[arg(long, value_name = "KEY=LO:HI", required = true)]
        bisect: String,
        /// s1-detects, s2-detects, any-steering, chsh-nonlocal or
        /// negativity-positive (with --cut)
        #[arg(long, required = true)]
        predicate: String,
        /// Cut for negativity-positive: 1|23, 2|13 or 3|12
        #[arg(long)]
        cut: Option<String>,
        /// Bisection tolerance
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(long, default_value = "fixed")]
        mode: String,
        #[arg(long, default_value_t = 40)]
        grid_theta_steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "sqrt")]
        lambda_convention: String,
    },
}

fn emit_json<T: serde::Serialize>(doc: &T, out: Option<&PathBuf>) -> CliResult<()> {
    let text =
        serde_json::to_string_pretty(doc).map_err(|e| CliError::Validation(e.to_string()))? + "\n";
    if let Some(path) = out {
        std::fs::write(path, &text)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display())))?;
    }
    print!("{text}");
    Ok(())
}

fn build_spec(family: &str, params: &[String], convention: &str) -> CliResult<StateSpec> {
    let family: Family = family.parse()?;
    StateSpec::new(family, parse_params(params)?, parse_convention(convention)?)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Analyze {
            family,
            params,
            state_file,
            mode,
            grid_theta_steps,
            out,
            lambda_convention,
        } => {
            let mode: Mode = mode.parse()?;
            let input = match (family, state_file) {
                (Some(f), None) => {
                    AnalyzeInput::Family(build_spec(&f, &params, &lambda_convention)?)
                }
                (None, Some(path)) => AnalyzeInput::File {
                    state: load_state(&path)?,
                    path: path.display().to_string(),
                },
                _ => {
                    return Err(CliError::Validation(
                        "analyze takes exactly one of --family or --state-file".into(),
                    ))
                }
            };
            let doc = run_analyze(&input, mode, grid_theta_steps)?;
            emit_json(&doc, out.as_ref())
        }
        Command::Sweep {
            family,
            params,
            sweeps,
            mode,
            grid_theta_steps,
            out,
            lambda_convention,
        } => {
            let spec = SweepSpec {
                base: build_spec(&family, &params, &lambda_convention)?,
                axes: sweeps
                    .iter()
                    .map(|s| SweepAxis::parse(s))
                    .collect::<CliResult<Vec<_>>>()?,
                mode: mode.parse()?,
                theta_steps: grid_theta_steps,
            };
            let csv = run_sweep(&spec)?;
            std::fs::write(&out, csv)
                .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", out.display())))
        }
        Command::Threshold {
            family,
            params,
            bisect,
            predicate,
            cut,
            tol,
            mode,
            grid_theta_steps,
            out,
            lambda_convention,
        } => {
            let (key, range) = bisect.split_once('=').ok_or_else(|| {
                CliError::Validation(format!("malformed --bisect {bisect:?}; expected key=lo:hi"))
            })?;
            let (lo, hi) = range.split_once(':').ok_or_else(|| {
                CliError::Validation(format!("malformed --bisect {bisect:?}; expected key=lo:hi"))
            })?;
            let parse = |s: &str| -> CliResult<f64> {
                s.parse()
                    .map_err(|_| CliError::Validation(format!("non-numeric bound {s:?}")))
            };
            let lo = parse(lo)?;
            // seed the bisected parameter before key validation runs
            let mut param_map = parse_params(&params)?;
            param_map.entry(key.trim().to_string()).or_insert(lo);
            let base = StateSpec::new(
                family.parse()?,
                param_map,
                parse_convention(&lambda_convention)?,
            )?;
            let spec = ThresholdSpec {
                base,
                parameter: key.trim().to_string(),
                lo,
                hi: parse(hi)?,
                predicate: Predicate::parse(&predicate, cut.as_deref())?,
                cut,
                tolerance: tol,
                mode: mode.parse()?,
                theta_steps: grid_theta_steps,
            };
            let doc = run_threshold(&spec)?;
            emit_json(&doc, out.as_ref())
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
