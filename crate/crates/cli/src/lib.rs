//! Command-line front end for `segre-geom`.
//!
//! Every command writes one JSON document to stdout and diagnostics to
//! stderr. Exit codes: 0 success, 2 input error, 3 domain precondition
//! violated, 4 a relation check failed.

mod commands;
mod input;

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use segre_geom::{Error, DEFAULT_FLOAT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_RELATION: i32 = 4;

/// Environment variable overriding the default float tolerance.
pub const TOL_ENV: &str = "SEGRE_GEOM_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "segre-geom",
    version,
    about = "Entanglement geometry of pure multi-qubit states"
)]
pub struct Cli {
    /// Arithmetic backend.
    #[arg(long, value_enum, default_value_t = BackendArg::Exact, global = true)]
    pub backend: BackendArg,

    /// Zero tolerance. Must be 0 on the exact backend.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    Float,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a state is a product state.
    CheckSeparability(StateInput),
    /// List every flattening minor of a state.
    Minors(StateInput),
    /// Map a point of C^4 to its 2x2 matrix and check the quadric identity.
    ConifoldMap {
        /// JSON file holding `[z1, z2, z3, z4]` or `{"z": [...]}`; `-` reads stdin.
        path: PathBuf,
    },
    /// Run the commutation-relation checks on a state.
    VerifyRelations {
        #[command(flatten)]
        input: StateInput,
        /// R-matrix used for the braided form of the relation.
        #[arg(long, default_value = "kronecker")]
        rmatrix: String,
        /// Random 2xN matrices in the R-matrix comparison.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Seed for the R-matrix comparison.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Normal form of an expression in the quantum plane.
    QplaneNormalize {
        expr: String,
        /// Also substitute this numeric value for q.
        #[arg(long)]
        q: Option<String>,
    },
    /// List the bundled example states.
    FixturesList,
}

/// Where a state comes from: a file, a bundled fixture or the sampler.
#[derive(Debug, Clone, Args)]
pub struct StateInput {
    /// State document; `-` reads stdin.
    #[arg(conflicts_with_all = ["fixture", "random"])]
    pub path: Option<PathBuf>,

    /// Name of a bundled fixture.
    #[arg(long, conflicts_with = "random")]
    pub fixture: Option<String>,

    /// Random exact state, e.g. `--random m=3 seed=7`.
    #[arg(long, num_args = 1..=2, value_name = "KEY=VALUE")]
    pub random: Option<Vec<String>>,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A failed command: exit code and message for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TooFewQubits(_)
            | Error::WrongQubitCount { .. }
            | Error::ZeroState
            | Error::NoQubits
            | Error::ZeroFactor { .. }
            | Error::SlotOutOfRange { .. }
            | Error::NotUnimodular { .. }
            | Error::Singular => EXIT_DOMAIN,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Settings shared by every command.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub backend: BackendArg,
    pub tol: f64,
}

/// Resolves the tolerance: `--tol`, then `SEGRE_GEOM_TOL` (float only),
/// then the backend default.
pub fn resolve_tol(
    backend: BackendArg,
    flag: Option<f64>,
    env: Option<&str>,
) -> Result<f64, Failure> {
    let tol = match (backend, flag, env) {
        (_, Some(t), _) => t,
        (BackendArg::Exact, None, _) => 0.0,
        (BackendArg::Float, None, Some(s)) => s
            .trim()
            .parse()
            .map_err(|_| Failure::input(format!("{TOL_ENV}={s:?} is not a number")))?,
        (BackendArg::Float, None, None) => DEFAULT_FLOAT_TOL,
    };
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::NegativeTolerance(tol).into());
    }
    if backend == BackendArg::Exact && tol != 0.0 {
        return Err(Error::ToleranceOnExact(tol).into());
    }
    Ok(tol)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, env_tol: Option<&str>, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli, env_tol, stdin) {
        Ok(report) => {
            let mut stdout = serde_json::to_string_pretty(&report.json).expect("reports serialize");
            stdout.push('\n');
            Outcome {
                code: report.code,
                stdout,
                stderr: report.diagnostics,
            }
        }
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

/// A successful command's JSON and exit code.
pub(crate) struct Report {
    pub json: serde_json::Value,
    pub code: i32,
    pub diagnostics: String,
}

impl Report {
    fn ok(json: serde_json::Value) -> Self {
        Self {
            json,
            code: EXIT_OK,
            diagnostics: String::new(),
        }
    }
}

fn execute(cli: &Cli, env_tol: Option<&str>, stdin: &mut dyn Read) -> Result<Report, Failure> {
    let settings = Settings {
        backend: cli.backend,
        tol: resolve_tol(cli.backend, cli.tol, env_tol)?,
    };
    match &cli.command {
        Command::CheckSeparability(src) => {
            let doc = input::load_state(src, stdin)?;
            commands::check_separability(&doc, settings)
        }
        Command::Minors(src) => {
            let doc = input::load_state(src, stdin)?;
            commands::minors(&doc, settings)
        }
        Command::ConifoldMap { path } => {
            let value = input::load_json(path, stdin)?;
            commands::conifold_map(&value, settings)
        }
        Command::VerifyRelations {
            input: src,
            rmatrix,
            samples,
            seed,
        } => {
            let kind = segre_geom::RMatrixKind::from_name(rmatrix).ok_or_else(|| {
                Failure::input(format!(
                    "unknown R-matrix '{rmatrix}', expected kronecker or literal-epsilon"
                ))
            })?;
            let doc = input::load_state(src, stdin)?;
            commands::verify_relations(&doc, settings, kind, *samples, *seed)
        }
        Command::QplaneNormalize { expr, q } => commands::qplane_normalize(expr, q.as_deref()),
        Command::FixturesList => commands::fixtures_list(),
    }
}
