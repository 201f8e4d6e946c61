// SPDX-License-Identifier: Apache-2.0

//! `rsplab` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use rsplab::enhancement::{self, DEFAULT_SCAN_RESOLUTION, DEFAULT_TRACE_STEPS};
use rsplab::format::round_sig;
use rsplab::oracles::{self, OracleConfig, OracleReport, SuiteCase};
use rsplab::qchannel::{apply_local, ChannelSpec, QubitChannel};
use rsplab::{measure_pair, BellDiagonalParams, StateSpec, TwoQubitState};

const THREADS_ENV: &str = "RSPLAB_THREADS";

#[derive(Parser)]
#[command(
    name = "rsplab",
    version,
    about = "RSP fidelity and geometric discord of two-qubit states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// RSP fidelity, geometric discord and their spectra
    Measure {
        /// `bell:c1,c2,c3` or a JSON state file
        #[arg(long)]
        state: String,
    },
    /// Bloch vectors and correlation matrix
    Decompose {
        #[arg(long)]
        state: String,
    },
    /// Apply local channels to a state
    Apply {
        #[arg(long)]
        state: String,
        /// Channel on the first qubit: JSON file or `name[:p]`
        #[arg(long, default_value = "identity")]
        alice: String,
        /// Channel on the second qubit: JSON file or `name[:p]`
        #[arg(long, default_value = "identity")]
        bob: String,
    },
    /// Both measures under symmetric amplitude damping over time (CSV)
    Evolve {
        #[arg(long, allow_hyphen_values = true)]
        c: BellDiagonalParams,
        #[arg(long, default_value_t = 3.0)]
        gamma_t_max: f64,
        #[arg(long, default_value_t = DEFAULT_TRACE_STEPS)]
        steps: usize,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enhancibility by symmetric amplitude damping
    Enhance {
        #[arg(long, allow_hyphen_values = true)]
        c: BellDiagonalParams,
        /// Grid size of the brute-force sweep that confirms the optimum
        #[arg(long, default_value_t = 10_001)]
        sweep_points: usize,
    },
    /// Enhancible region of the tetrahedron (CSV)
    Scan {
        #[arg(long, default_value_t = DEFAULT_SCAN_RESOLUTION)]
        resolution: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fidelity before and after optimal damping along (c1, -1, c1) (CSV)
    Profile {
        #[arg(long, default_value_t = 201)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run oracle suites; exit 1 if any contract fails
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Trial count (default depends on the suite)
        #[arg(long)]
        trials: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Protocol,
    Gmqd,
    Monotonicity,
    Witness,
    All,
}

enum Failure {
    Input(String),
    Verification,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Measure { state } => {
            let s = load_state(&state)?;
            let report = measure_pair(&s)?;
            print_json(&report)
        }
        Command::Decompose { state } => print_json(load_state(&state)?.decomposition()),
        Command::Apply { state, alice, bob } => {
            let s = load_state(&state)?;
            let out = apply_local(&load_channel(&alice)?, &load_channel(&bob)?, &s)?;
            print_json(&json!({
                "state": StateSpec::dense(&out),
                "decomposition": out.decomposition(),
                "measures": measure_pair(&out)?,
            }))
        }
        Command::Evolve {
            c,
            gamma_t_max,
            steps,
            out,
        } => {
            let trace = enhancement::trace_evolution(c, gamma_t_max, steps)?;
            with_output(out.as_deref(), |w| trace.write_csv(w))
        }
        Command::Enhance { c, sweep_points } => enhance(c, sweep_points),
        Command::Scan { resolution, out } => {
            let scan = enhancement::scan_tetrahedron(resolution)?;
            with_output(Some(&out), |w| scan.write_csv(w))?;
            print_json(&json!({
                "resolution": scan.resolution,
                "points": scan.points.len(),
                "enhancible_count": scan.enhancible_count,
                "enhancible_fraction": scan.enhancible_fraction,
                "symmetries": scan.symmetries,
            }))
        }
        Command::Profile { points, out } => {
            let prof = enhancement::profile_line(points)?;
            with_output(Some(&out), |w| enhancement::write_profile_csv(&prof, w))
        }
        Command::Verify {
            suite,
            seed,
            trials,
        } => verify(suite, seed, trials),
    }
}

fn enhance(c: BellDiagonalParams, sweep_points: usize) -> CliResult {
    if sweep_points < 2 {
        return Err(Failure::Input("sweep-points must be at least 2".into()));
    }
    let report = enhancement::analyze(c);
    let mut value = serde_json::to_value(report)?;
    if report.enhancible {
        let (p_best, f_best) = enhancement::sweep_f_max(c, sweep_points);
        let fields = value.as_object_mut().expect("report is an object");
        fields.insert("sweep_p_best".into(), json!(p_best));
        fields.insert("sweep_f_max".into(), json!(f_best));
        // nonnegative when the closed-form optimum beats every grid point
        fields.insert("optimality_margin".into(), json!(report.f_after - f_best));
    }
    print_json(&value)
}

#[derive(Serialize)]
struct SuiteOutput {
    suite: &'static str,
    passed: bool,
    cases: Vec<SuiteCase>,
}

fn suite_output(suite: &'static str, cases: Vec<SuiteCase>) -> SuiteOutput {
    SuiteOutput {
        suite,
        passed: cases.iter().all(|c| c.report.passed),
        cases,
    }
}

fn single(case: &str, report: OracleReport) -> SuiteCase {
    SuiteCase {
        case: case.to_string(),
        report,
    }
}

fn verify(suite: Suite, seed: u64, trials: Option<usize>) -> CliResult {
    let cfg = OracleConfig {
        seed,
        ..OracleConfig::default()
    };
    let run_all = suite == Suite::All;
    let mut outputs = Vec::new();
    if run_all || suite == Suite::Protocol {
        outputs.push(suite_output(
            "protocol",
            oracles::protocol_suite(trials.unwrap_or(50), cfg)?,
        ));
    }
    if run_all || suite == Suite::Gmqd {
        outputs.push(suite_output(
            "gmqd",
            oracles::gmqd_suite(trials.unwrap_or(20), cfg)?,
        ));
    }
    if run_all || suite == Suite::Monotonicity {
        let report = oracles::unital_monotonicity_suite(trials.unwrap_or(10_000), seed)?;
        outputs.push(suite_output(
            "monotonicity",
            vec![single("random unital pairs", report)],
        ));
    }
    if run_all || suite == Suite::Witness {
        outputs.push(suite_output(
            "witness",
            vec![
                single(
                    "amplitude damping on bell(-1,0,0)",
                    oracles::nonunital_increase_witness()?,
                ),
                single(
                    "discord raising on classical state",
                    oracles::discord_raising_check()?,
                ),
            ],
        ));
    }
    let passed = outputs.iter().all(|o| o.passed);
    for out in outputs.iter().filter(|o| !o.passed) {
        for case in out.cases.iter().filter(|c| !c.report.passed) {
            eprintln!(
                "FAIL {}/{}: estimate {} vs reference {} ({})",
                out.suite,
                case.case,
                case.report.estimate,
                case.report.reference,
                case.report.worst_case
            );
        }
    }
    print_json(&json!({ "passed": passed, "suites": outputs }))?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

/// `bell:c1,c2,c3` or a path to a JSON state description.
fn load_state(arg: &str) -> CliResult<TwoQubitState> {
    if let Some(c) = arg.strip_prefix("bell:") {
        let c: BellDiagonalParams = c.parse()?;
        return Ok(rsplab::qstate::bell_diagonal(c));
    }
    let text =
        std::fs::read_to_string(arg).map_err(|e| format!("cannot read state file `{arg}`: {e}"))?;
    let spec: StateSpec =
        serde_json::from_str(&text).map_err(|e| format!("invalid state file `{arg}`: {e}"))?;
    Ok(spec.build()?)
}

/// A JSON channel file, or inline `name` / `name:p` (e.g. `amplitude_damping:0.3`).
fn load_channel(arg: &str) -> CliResult<QubitChannel> {
    let spec: ChannelSpec = if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg)?;
        serde_json::from_str(&text).map_err(|e| format!("invalid channel file `{arg}`: {e}"))?
    } else {
        let value = match arg.split_once(':') {
            Some((name, p)) => {
                let p: f64 = p
                    .parse()
                    .map_err(|_| format!("invalid channel parameter in `{arg}`"))?;
                json!({ "type": name, "p": p })
            }
            None => json!({ "type": arg }),
        };
        serde_json::from_value(value).map_err(|_| format!("unknown channel `{arg}`"))?
    };
    Ok(spec.build()?)
}

fn with_output(
    path: Option<&Path>,
    write: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> CliResult {
    match path {
        Some(p) => {
            let file =
                File::create(p).map_err(|e| format!("cannot write `{}`: {e}", p.display()))?;
            let mut w = BufWriter::new(file);
            write(&mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = io::stdout().lock();
            write(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

/// Rounds every number to 12 significant digits.
fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| serde_json::Number::from_f64(round_sig(x)))
            .map_or(Value::Null, Value::Number),
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

fn print_json<T: Serialize + ?Sized>(value: &T) -> CliResult {
    let value = round_json(serde_json::to_value(value)?);
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &value)?;
    writeln!(out)?;
    Ok(())
}
