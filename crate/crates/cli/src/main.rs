use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use btw_core::kernel::KernelMode;
use btw_core::{Error, Instance, ParseOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod verify;

/// Betweenness above the m/3 bound: generation, kernelization, solving,
/// verification and statistics.
#[derive(Debug, Parser)]
#[command(name = "btw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a generated instance.
    Gen(GenArgs),
    /// Find a good arrangement.
    Solve(SolveArgs),
    /// Reduce and apply the kernel threshold.
    Kernelize(KernelArgs),
    /// Decide whether m/3 + kappa constraints can be satisfied.
    Decide(DecideArgs),
    /// Recompute the moment tables, optionally checking an instance.
    Verify(VerifyArgs),
    /// Profile counts and second-moment statistics.
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Bound,
    Sharp,
}

impl From<Mode> for KernelMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Bound => KernelMode::Bound,
            Mode::Sharp => KernelMode::Sharp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Complete,
    Random,
    Planted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveMethod {
    /// Exact DP when it fits, heuristics otherwise.
    Auto,
    Dp,
    Brute,
    Heuristic,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Output path, `-` for standard output.
    #[arg(short, long, default_value = "-")]
    pub output: String,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Instance path, `-` for standard input.
    #[arg(default_value = "-")]
    pub input: String,
    /// Merge repeated constraints instead of rejecting the input.
    #[arg(long)]
    pub dedupe: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    /// Number of constraints (random and planted).
    #[arg(long)]
    pub m: Option<usize>,
    /// Fraction of planted constraints drawn at random instead.
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long, value_enum, default_value_t = SolveMethod::Auto)]
    pub method: SolveMethod,
    #[arg(long, default_value_t = btw_core::solve::DEFAULT_DP_MAX_N)]
    pub dp_max: usize,
    /// Colourings and arrangements sampled by randomized rounding.
    #[arg(long, default_value_t = 64)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long, allow_negative_numbers = true)]
    pub kappa: i64,
    #[arg(long, value_enum, default_value_t = Mode::Bound)]
    pub mode: Mode,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long, allow_negative_numbers = true)]
    pub kappa: i64,
    #[arg(long, value_enum, default_value_t = Mode::Bound)]
    pub mode: Mode,
    #[arg(long, default_value_t = btw_core::solve::DEFAULT_DP_MAX_N)]
    pub dp_max: usize,
    #[arg(long, default_value_t = 64)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Optional instance for instance-specific checks, `-` for standard input.
    pub input: Option<String>,
    #[arg(long)]
    pub dedupe: bool,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub input: Input,
    /// Monte Carlo samples.
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: Output,
}

/// A failed invocation: exit status plus a message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TooLarge { .. } => 3,
            Error::Mismatch(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl Failure {
    fn io(context: &str, e: io::Error) -> Self {
        Failure {
            code: 2,
            message: format!("{context}: {e}"),
        }
    }
}

pub fn read_instance(path: &str, dedupe: bool) -> Result<Instance, Failure> {
    let text = if path == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::io("reading standard input", e))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| Failure::io(path, e))?
    };
    Ok(btw_core::parse_instance(
        text.as_bytes(),
        ParseOptions { dedupe },
    )?)
}

fn emit(out: &Output, data: &str) -> Result<(), Failure> {
    if out.output == "-" {
        let mut stdout = io::stdout().lock();
        stdout
            .write_all(data.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|e| Failure::io("writing standard output", e))
    } else {
        fs::write(&out.output, data).map_err(|e| Failure::io(&out.output, e))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (out, data) = match &cli.command {
        Command::Gen(a) => (&a.out, commands::gen(a)?),
        Command::Solve(a) => (&a.out, commands::solve(a)?),
        Command::Kernelize(a) => (&a.out, commands::kernelize(a)?),
        Command::Decide(a) => (&a.out, commands::decide(a)?),
        Command::Verify(a) => (&a.out, verify::run(a)?),
        Command::Stats(a) => (&a.out, commands::stats(a)?),
    };
    emit(out, &data)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("btw: {}", f.message.trim_end());
            ExitCode::from(f.code)
        }
    }
}
