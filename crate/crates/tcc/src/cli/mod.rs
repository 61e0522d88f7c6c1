//! The `tcc` command line.
//!
//! Results go to standard output as one `RESULT key=value …` line, logs go
//! to standard error. Exit codes: 0 success, 1 internal error, 2 usage or
//! unreadable input, 3 budget exhausted, 4 rejected or refuted.

mod commands;
mod relabel;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "tcc", version, about = "Exact t-circle and book crossing number toolkit")]
pub struct Cli {
    /// Search budget in milliseconds (unlimited when absent).
    #[arg(long, global = true)]
    pub budget_ms: Option<u64>,
    /// Worker threads for searches that split into root branches.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact book or cylindrical crossing number of a graph.
    Solve(SolveArgs),
    /// Decide whether a plane map has a t-curve embedding.
    Embed(EmbedArgs),
    /// Check a certificate against a graph, t and k.
    Verify(VerifyArgs),
    /// Build one of the constructions.
    Construct(ConstructArgs),
    /// Draw a book drawing, cylindrical drawing or certificate as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Book,
    Cyl,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Graph file (`n m`, then `u v` per edge).
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub pages: usize,
    /// Winding cap; the optimum is confirmed at the next cap.
    #[arg(long, default_value_t = 2)]
    pub winding: i64,
    /// Relabels the graph before searching; only the exploration order changes.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Where to write the witness drawing (defaults next to the graph).
    #[arg(long)]
    pub witness: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    /// Rotation file (`v: neighbours clockwise`).
    #[arg(long)]
    pub rotation: PathBuf,
    #[arg(long)]
    pub t: usize,
    /// Where to write the certificate when one exists.
    #[arg(long)]
    pub cert: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub cert: PathBuf,
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Stacked,
    Gt,
    Hill,
    Reduction,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Stacking rounds (stacked) or number of vertices (hill).
    #[arg(short, long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub t: usize,
    /// Number of K_{3,3} gadgets (reduction).
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    /// Input graph (reduction).
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Crossing-free 2-page drawing of the input graph (reduction); searched
    /// for when absent.
    #[arg(long)]
    pub book: Option<PathBuf>,
    /// Main artifact: rotation, drawing, cache or graph file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Certificate output (gt, reduction).
    #[arg(long)]
    pub cert: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Recompute G_t and rewrite the cache file (gt).
    #[arg(long)]
    pub regenerate: bool,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Book drawing, cylindrical drawing or certificate; the kind is read
    /// from the first line.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub svg: PathBuf,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("budget exhausted: {0}")]
    Timeout(String),
    #[error("rejected: {0}")]
    Reject(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Timeout(_) => 3,
            CliError::Reject(_) => 4,
            CliError::Internal(_) => 1,
        }
    }
}

/// Parse `argv` (program name first), run the command, and return the exit
/// code. Results are written to `out`.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match commands::dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("tcc: {e}");
            e.code()
        }
    }
}

/// [`run_with`] on standard output.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let code = run_with(argv, &mut lock);
    let _ = lock.flush();
    code
}
