use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcp_core::primitives::JlFamily;
use pcp_core::sketchers::Method;

mod commands;
mod report;

/// Build, certify and audit projection-cost-preserving sketches.
#[derive(Parser, Debug)]
#[command(name = "pcp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a synthetic matrix.
    Gen {
        /// Generator spec, e.g. `powerlaw:n=40,d=200,alpha=1`.
        #[arg(long)]
        gen: String,
        /// Output matrix (`.csv` or `.pcpm`); CSV on stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a sketch and write `Ã`.
    Sketch {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        sketch: SketchArgs,
        /// Output matrix (`.csv` or `.pcpm`); the report goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Evaluate both sufficient-condition certificates for the sketch operator.
    Certify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        sketch: SketchArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Exit with status 2 unless at least one certificate holds.
        #[arg(long)]
        require_holds: bool,
    },
    /// Certify and audit the sketch against probe projections.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        sketch: SketchArgs,
        #[command(flatten)]
        probes: ProbeArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        trials: TrialArgs,
    },
    /// Solve a constrained low-rank problem on the sketch and check the transfer bound.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        sketch: SketchArgs,
        #[arg(long, value_enum, default_value_t = TaskArg::Kmeans)]
        task: TaskArg,
        /// Exact k-means by enumeration (n <= 12), giving γ = 1.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 100)]
        iters: usize,
        #[arg(long, default_value_t = 5)]
        restarts: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Time sketch construction and audit for every method.
    Bench {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        sketch: SketchArgs,
        #[command(flatten)]
        probes: ProbeArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        trials: TrialArgs,
    },
    /// Monte-Carlo estimate of a JL moment.
    JlMoment {
        #[arg(long, default_value = "gaussian")]
        family: JlFamily,
        #[arg(long, default_value_t = 100)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        ell: u32,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, env = "PCP_SEED", default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Input matrix (`.csv` or `.pcpm`).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Generator spec used instead of an input file.
    #[arg(long)]
    gen: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct SketchArgs {
    #[arg(long, default_value = "gaussian")]
    method: Method,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    /// Universal constant of the width formula.
    #[arg(long)]
    const_c: Option<f64>,
    /// Explicit sketch width.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, env = "PCP_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug, Clone)]
struct ProbeArgs {
    /// Number of Haar random probes.
    #[arg(long, default_value_t = 50)]
    n_random: usize,
    /// Add every k-cluster indicator probe (n <= 12).
    #[arg(long)]
    exhaustive: bool,
}

#[derive(Args, Debug, Clone)]
struct TrialArgs {
    /// Independent seeded trials.
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Run trials concurrently; results stay in trial order.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Report file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum TaskArg {
    Lowrank,
    Kmeans,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
