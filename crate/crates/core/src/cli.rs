//! The `lockers` command line.
//!
//! Exit codes: 0 on success, 1 on any input or usage error, 2 when `verify`
//! reports a failed claim.

use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::bits::{reduce_moves, IndexSet, LockerState, MoveSequence};
use crate::engine::{
    basis_set, closed_all, closed_all_but_one, closed_single, count_open_prefix, forward_basis,
    inverse_map, simulate, solve_from_initial, ProblemSpec,
};
use crate::error::LockerError;
use crate::verify::{run_suite, CheckReport, SuiteConfig};

const ABOUT: &str = "The generalized locker problem over GF(2).

States are strings of '0' (closed) and '1' (open); the leftmost character is
locker 1. Student lists are whitespace- or comma-separated positive integers,
and `a..b` expands to every student from a to b.";

#[derive(Parser, Debug)]
#[command(name = "lockers", version, about = ABOUT)]
struct Cli {
    /// Print states as the list of open lockers instead of a bit string.
    #[arg(long, global = true)]
    as_indices: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct MovesArg {
    /// Student turns in order; repeats allowed.
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "moves_file"
    )]
    moves: Option<String>,

    /// Read the turns from a file in the same format.
    #[arg(long, conflicts_with = "moves")]
    moves_file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Play the turns one by one from the initial state (all closed by default).
    Simulate {
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(long)]
        initial: Option<String>,
        #[command(flatten)]
        moves: MovesArg,
    },
    /// Final state when each listed student marches once, by basis peeling.
    Forward {
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        students: String,
        /// Also print each peeled index on its own line.
        #[arg(long)]
        trace: bool,
    },
    /// The unique student set that produces a state from all closed.
    Invert {
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(long)]
        state: String,
    },
    /// The student set that turns `--initial` into `--target`.
    Solve {
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(long)]
        initial: String,
        #[arg(long)]
        target: String,
    },
    /// The student set that opens locker k alone.
    Basis {
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(short = 'k')]
        k: usize,
    },
    /// Closed-form answers for special student sets.
    ClosedForm {
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[command(subcommand)]
        form: Form,
    },
    /// Students that act an odd number of times (students past n dropped).
    Reduce {
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[command(flatten)]
        moves: MovesArg,
    },
    /// Run every check and print a report.
    Verify {
        #[arg(short = 'n', long = "n", default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest m for the multiples-of-m marcher check.
        #[arg(long = "theorem8", default_value_t = 5)]
        m_max: u32,
    },
}

#[derive(Subcommand, Debug)]
enum Form {
    /// Every student marches.
    All,
    /// Only student i marches.
    Single { i: usize },
    /// Everyone but student i marches.
    AllBut { i: usize },
    /// Students 1..=p march (n/2 < p <= n); prints the open count.
    Prefix { p: usize },
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Input(#[from] LockerError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Parses a state string of exactly `n` `'0'`/`'1'` characters.
pub fn parse_state(text: &str, n: usize) -> Result<LockerState, LockerError> {
    LockerState::parse(text, n)
}

pub fn parse_moves(text: &str) -> Result<MoveSequence, LockerError> {
    MoveSequence::parse(text)
}

/// Runs one invocation against the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn read_moves(arg: &MovesArg) -> Result<MoveSequence, CliError> {
    match (&arg.moves, &arg.moves_file) {
        (_, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            Ok(parse_moves(&text)?)
        }
        (Some(text), None) => Ok(parse_moves(text)?),
        (None, None) => Ok(MoveSequence::default()),
    }
}

fn render_state(v: &LockerState, as_indices: bool) -> String {
    if as_indices {
        IndexSet::from_members(v.len(), v.open_indices())
            .expect("open indices lie in range")
            .to_string()
    } else {
        v.to_string()
    }
}

/// 2 if any non-advisory claim failed, else 0.
fn verify_exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().any(CheckReport::is_failure) {
        2
    } else {
        0
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let as_indices = cli.as_indices;
    let mut emit = |line: String| {
        let _ = writeln!(out, "{line}");
    };
    match cli.command {
        Command::Simulate { n, initial, moves } => {
            let initial = match initial {
                Some(bits) => parse_state(&bits, n)?,
                None => LockerState::zeros(n)?,
            };
            let spec = ProblemSpec::new(initial, read_moves(&moves)?);
            emit(render_state(&simulate(&spec), as_indices));
        }
        Command::Forward { n, students, trace } => {
            let u = IndexSet::from_members_truncated(n, parse_moves(&students)?.iter())?;
            let (v, peeled) = forward_basis(&u);
            emit(render_state(&v, as_indices));
            if trace {
                for k in peeled {
                    emit(k.to_string());
                }
            }
        }
        Command::Invert { n, state } => {
            emit(inverse_map(&parse_state(&state, n)?).to_string());
        }
        Command::Solve { n, initial, target } => {
            let from = parse_state(&initial, n)?;
            let to = parse_state(&target, n)?;
            emit(solve_from_initial(&from, &to)?.to_string());
        }
        Command::Basis { n, k } => emit(basis_set(k, n)?.to_string()),
        Command::ClosedForm { n, form } => match form {
            Form::All => emit(render_state(&closed_all(n)?, as_indices)),
            Form::Single { i } => emit(render_state(&closed_single(i, n)?, as_indices)),
            Form::AllBut { i } => emit(render_state(&closed_all_but_one(i, n)?, as_indices)),
            Form::Prefix { p } => emit(count_open_prefix(p, n)?.to_string()),
        },
        Command::Reduce { n, moves } => {
            emit(reduce_moves(&read_moves(&moves)?, n)?.to_string());
        }
        Command::Verify {
            n,
            trials,
            seed,
            m_max,
        } => {
            if n == 0 {
                return Err(LockerError::EmptyUniverse.into());
            }
            let cfg = SuiteConfig {
                n,
                trials,
                seed,
                torrence_m_max: m_max,
            };
            let reports = run_suite(&cfg);
            for r in &reports {
                emit(r.to_string());
            }
            emit(String::new());
            for r in &reports {
                emit(r.summary_line());
            }
            return Ok(verify_exit_code(&reports));
        }
    }
    Ok(0)
}
