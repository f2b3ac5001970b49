//! Command-line front end.
//!
//! JSON goes to stdout (or `--output`), diagnostics to stderr. Exit codes:
//! 0 success, 1 infeasible request, 2 invalid input, 3 verification failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::error::Error;
use crate::gates::build_cnz;
use crate::herald::synthesize_herald;
use crate::io::{verify_document, MatrixDocument, SynthesisDocument};
use crate::linalg::{numerical_rank, takagi, ComplexMatrix, UNITARY_TOL};
use crate::postselect::synthesize_postselect;
use crate::selftest::{run_all, DEFAULT_SEED};
use crate::twophoton::{normalize, QuditTarget};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "biphoton", version, about = "Linear-optical two-photon state and controlled-phase gate synthesis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the rank of a two-photon state matrix.
    Rank {
        #[arg(long)]
        state: PathBuf,
        /// Relative singular-value cutoff.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Takagi-factorize a complex symmetric matrix.
    Takagi {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Synthesize a post-selected interferometer from an input state and a qudit target.
    SynthPostselect {
        /// Input two-photon state matrix.
        #[arg(long)]
        input: PathBuf,
        /// Qudit coefficient matrix `C`.
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Synthesize a heralded interferometer for a target state from single photons.
    SynthHerald {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        photons: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build a post-selected controlled-phase gate on `n` qubits.
    GateCnz {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        phi: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Re-verify a synthesis document.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Run the built-in acceptance suite.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// A failure together with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InfeasibleRank(_) | Error::SupportMismatch { .. } => EXIT_INFEASIBLE,
            Error::VerificationFailure(_) => EXIT_VERIFICATION,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: EXIT_INPUT, message }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path, field: &str) -> Result<ComplexMatrix, Failure> {
    let doc: MatrixDocument = read_json(path)?;
    Ok(doc.to_matrix(field)?)
}

fn emit<T: Serialize>(value: &T, output: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| input_error(e.to_string()))?;
    match output {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| input_error(format!("{}: {e}", path.display()))),
        None => writeln!(stdout, "{text}").map_err(|e| input_error(e.to_string())),
    }
}

#[derive(Serialize)]
struct TakagiDocument {
    v: MatrixDocument,
    d: Vec<f64>,
}

#[derive(Serialize)]
struct SelftestDocument<'a> {
    seed: u64,
    passed: bool,
    criteria: &'a [crate::selftest::CriterionOutcome],
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Rank { state, tol } => {
            let s = normalize(&read_matrix(&state, "state")?)?;
            writeln!(stdout, "{}", numerical_rank(s.matrix(), tol)).map_err(|e| input_error(e.to_string()))?;
        }
        Command::Takagi { input, output } => {
            let s = read_matrix(&input, "input")?;
            let f = takagi(&s, UNITARY_TOL)?;
            let doc = TakagiDocument { v: MatrixDocument::from_matrix(&f.v).with_label("V"), d: f.diagonal() };
            emit(&doc, output.as_deref(), stdout)?;
        }
        Command::SynthPostselect { input, target, output } => {
            let s_in = normalize(&read_matrix(&input, "input")?)?;
            let t = QuditTarget::normalized(read_matrix(&target, "target")?)?;
            let res = synthesize_postselect(&s_in, &t)?;
            let _ = writeln!(stderr, "post-selected synthesis: {} modes, p_s = {:.6e}", res.modes(), res.success_probability);
            emit(&SynthesisDocument::postselect(&res, &s_in, &t), output.as_deref(), stdout)?;
        }
        Command::SynthHerald { target, photons, output } => {
            let s_out = normalize(&read_matrix(&target, "target")?)?;
            let res = synthesize_herald(&s_out, photons)?;
            let _ = writeln!(stderr, "heralded synthesis: {} modes, p_s = {:.6e}", res.modes(), res.success_probability);
            emit(&SynthesisDocument::herald(&res, &s_out, photons), output.as_deref(), stdout)?;
        }
        Command::GateCnz { n, phi, output } => {
            let (res, spec) = build_cnz(n, phi)?;
            let _ = writeln!(stderr, "controlled-phase gate: {n} qubits, {} modes, p_s = {:.6e}", res.modes(), res.success_probability);
            emit(&SynthesisDocument::cnz(&res, &spec), output.as_deref(), stdout)?;
        }
        Command::Verify { input, tol } => {
            let doc: SynthesisDocument = read_json(&input)?;
            let outcome = verify_document(&doc, tol)?;
            emit(&outcome, None, stdout)?;
            if !outcome.passed {
                let _ = writeln!(stderr, "verification failed: fidelity {}", outcome.fidelity);
                return Ok(EXIT_VERIFICATION);
            }
        }
        Command::Selftest { seed } => {
            let outcomes = run_all(seed);
            for o in &outcomes {
                let _ = writeln!(stderr, "{o}");
            }
            let passed = outcomes.iter().all(|o| o.passed);
            emit(&SelftestDocument { seed, passed, criteria: &outcomes }, None, stdout)?;
            if !passed {
                return Ok(EXIT_VERIFICATION);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(stderr, "{rendered}") } else { write!(stdout, "{rendered}") };
            return code;
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
