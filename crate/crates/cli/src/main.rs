use clap::{Parser, Subcommand, ValueEnum};
use selmer_cli::commands;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "selmer",
    version,
    about = "Exact Selmer multidimensional continued fraction expansions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Ssa,
    Msa,
}

impl From<AlgoArg> for selmer_core::maps::Algo {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Ssa => selmer_core::maps::Algo::Ssa,
            AlgoArg::Msa => selmer_core::maps::Algo::Msa,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<FormatArg> for commands::Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => commands::Format::Text,
            FormatArg::Json => commands::Format::Json,
            FormatArg::Csv => commands::Format::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Run an expansion and print the per-step trace.
    Expand {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        /// Field spec "min_poly:(lo,hi)", e.g. "x^3-2:(1,2)"; rationals
        /// when omitted.
        #[arg(long)]
        field: Option<String>,
        /// Comma-separated coordinate expressions in the generator `a`.
        #[arg(long)]
        point: String,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Precision target for certified decimal output.
        #[arg(long, default_value = "1e-30")]
        precision: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan the orbit for exact periodicity.
    DetectPeriod {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[arg(long, default_value = "1e-30")]
        precision: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Detect an MSA period and report convergence and approximation
    /// diagnostics of the cycle.
    Analyze {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        /// Convergence table length.
        #[arg(long, default_value_t = 40)]
        s_max: usize,
        /// Approximation table length (multiples of the period).
        #[arg(long, default_value_t = 40)]
        g_max: usize,
        /// Slack in the envelope base |rho1|(1+epsilon).
        #[arg(long, default_value = "1/20")]
        epsilon: String,
        /// Column positions to report (default: all).
        #[arg(long)]
        column: Vec<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[arg(long, default_value = "1e-30")]
        precision: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the 2-D time-1 partition and the nested cylinder images.
    Partition {
        #[arg(long, default_value_t = 5)]
        k_max: u64,
        /// Output base path; writes `<out>.svg` and `<out>.csv`.
        #[arg(long, default_value = "partition")]
        out: PathBuf,
    },
    /// Run the exact invariant suites.
    Verify {
        /// Suite: all, det, positivity, recursion, reconstruct,
        /// roundtrip, absorbing, cylinders.
        #[arg(default_value = "all")]
        suite: String,
        /// Dimension range, inclusive, e.g. "2..4".
        #[arg(long, default_value = "2..4")]
        n: String,
        /// Digit range, inclusive, e.g. "1..10".
        #[arg(long, default_value = "1..10")]
        k: String,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 500)]
        max_steps: usize,
        #[arg(long, default_value_t = 49374)]
        seed: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Expand { algo, field, point, steps, format, precision, out } => {
            commands::expand::run(&commands::expand::ExpandArgs {
                algo: algo.into(),
                field,
                point,
                steps,
                format: format.into(),
                precision,
                out,
            })
        }
        Cmd::DetectPeriod { algo, field, point, max_steps, format, precision, out } => {
            commands::detect::run(&commands::detect::DetectArgs {
                algo: algo.into(),
                field,
                point,
                max_steps,
                format: format.into(),
                precision,
                out,
            })
        }
        Cmd::Analyze {
            field,
            point,
            max_steps,
            s_max,
            g_max,
            epsilon,
            column,
            format,
            precision,
            out,
        } => commands::analyze::run(&commands::analyze::AnalyzeArgs {
            field,
            point,
            max_steps,
            s_max,
            g_max,
            epsilon,
            columns: column,
            format: format.into(),
            precision,
            out,
        }),
        Cmd::Partition { k_max, out } => commands::partition::run(k_max, &out),
        Cmd::Verify { suite, n, k, trials, max_steps, seed } => {
            commands::verify::run(&commands::verify::VerifyArgs {
                suite,
                n,
                k,
                trials,
                max_steps,
                seed,
            })
        }
    };
    match result {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code);
        }
    }
}
