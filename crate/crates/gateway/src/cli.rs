//! `lightsout` subcommands.
//!
//! Exit codes: 0 success, 1 bad input or usage, 2 unsolvable board,
//! 3 cell too large, 4 verification failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use lightsout_core::lightsout::{solve_board, BoardFile, BoardState, Graph};
use lightsout_core::rowfinite::{PeriodicSpec, RowFiniteMatrix};
use lightsout_core::transfer::{solve_prefix, PrefixPolicy, Target, TransferAutomaton, DEFAULT_MAX_CELL_SIZE};
use lightsout_core::{Error, Gf2Matrix};

use crate::verify::verify_theorem;

pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNSOLVABLE: i32 = 2;
pub const EXIT_CELL_TOO_LARGE: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "lightsout", version, about = "Lights Out and GF(2) diagonal solver")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the clicks that turn a board all off.
    SolveBoard {
        /// Board file: "rows cols", then one 0/1 line per row.
        #[arg(long)]
        board: PathBuf,
        /// Graph file (JSON); defaults to the classic grid of the board's shape.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Solve A x = diag(A) for random symmetric matrices and check each answer.
    VerifyTheorem {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..=4096))]
        max_dim: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// First p clicks lighting the self-looped vertices of an infinite periodic graph.
    Prefix(PrefixArgs),
    /// Rank of a matrix file.
    Rank {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["exact", "horizon"])))]
pub struct PrefixArgs {
    /// Periodic spec file (JSON).
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(short)]
    pub p: usize,
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub horizon: Option<usize>,
    /// Base block size for --horizon; defaults to max(p, 1).
    #[arg(short)]
    pub n: Option<usize>,
    /// Largest cell size accepted by --exact.
    #[arg(long, default_value_t = DEFAULT_MAX_CELL_SIZE)]
    pub max_cell: usize,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CellTooLarge { .. } => EXIT_CELL_TOO_LARGE,
            Error::Unsolvable { .. } => EXIT_UNSOLVABLE,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure {
        code: EXIT_INPUT,
        message: e.to_string(),
    };
    match command {
        Command::SolveBoard { board, graph } => {
            let board = BoardFile::parse(&read(&board)?)?;
            let graph = match graph {
                Some(path) => Graph::from_json(&read(&path)?)?,
                None => Graph::classic_grid(board.rows, board.cols)?,
            };
            let n = graph.vertex_count();
            if board.state.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: board.state.len(),
                }
                .into());
            }
            match solve_board(&graph, &board.state, &BoardState::all_off(n)) {
                Ok(x) => {
                    let list: Vec<String> = x.pressed().iter().map(usize::to_string).collect();
                    writeln!(out, "{}", list.join(" ")).map_err(io)?;
                    Ok(0)
                }
                Err(Error::Unsolvable { witness }) => {
                    writeln!(out, "UNSOLVABLE").map_err(io)?;
                    if let Some(z) = witness {
                        let list: Vec<String> = z.iter_ones().map(|i| (i + 1).to_string()).collect();
                        writeln!(out, "witness {}", list.join(" ")).map_err(io)?;
                    }
                    Ok(EXIT_UNSOLVABLE)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::VerifyTheorem { trials, max_dim, seed } => {
            let report = verify_theorem(trials as usize, max_dim as usize, seed);
            out.write_all(report.render().as_bytes()).map_err(io)?;
            Ok(if report.failed == 0 { 0 } else { EXIT_VERIFY_FAILED })
        }
        Command::Prefix(args) => {
            let spec = PeriodicSpec::from_json(&read(&args.spec)?)?;
            let answer = if args.exact {
                let automaton = TransferAutomaton::with_cell_bound(&spec, &Target::Diagonal, args.max_cell)?;
                let prefix = automaton.least_prefix(args.p, &automaton.live_states())?;
                format!("{prefix} EXACT")
            } else {
                let horizon = args.horizon.expect("clap requires --exact or --horizon");
                let n = args.n.unwrap_or(args.p.max(1));
                let m = RowFiniteMatrix::periodic(spec);
                let a = solve_prefix(&m, args.p, PrefixPolicy::Horizon { n, horizon }, &Target::Diagonal)?;
                format!("{} {}", a.prefix, a.certificate)
            };
            writeln!(out, "{answer}").map_err(io)?;
            Ok(0)
        }
        Command::Rank { matrix } => {
            let m = Gf2Matrix::parse_text(&read(&matrix)?)?;
            writeln!(out, "{}", m.rank()).map_err(io)?;
            Ok(0)
        }
        Command::Serve { port } => {
            let runtime = tokio::runtime::Runtime::new().map_err(io)?;
            runtime.block_on(crate::http::serve(port)).map_err(|e| Failure {
                code: EXIT_INPUT,
                message: e.to_string(),
            })?;
            Ok(0)
        }
    }
}
