use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cyclic_quiver::classifier::WitnessBounds;
use cyclic_quiver::cli::{cmd_classify, cmd_selftest, cmd_table, cmd_verify, Format, Outcome, VerifyFlags, EXIT_INVALID};

#[derive(Parser)]
#[command(name = "cyclic-quiver", version, about = "Classify fixed points of finite-order semilinear automorphisms via cyclic quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct FormatArgs {
    /// Machine-readable JSON output.
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Human-readable output (default on stdout).
    #[arg(long)]
    text: bool,
}

impl FormatArgs {
    fn resolve(self, to_file: bool) -> Format {
        if self.json || (to_file && !self.text) {
            Format::Json
        } else {
            Format::Text
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a configuration and print the quiver report.
    Classify {
        config: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Cross-check the predictions against explicit matrix setups.
    Verify {
        config: PathBuf,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Exact rational elimination instead of two random primes.
        #[arg(long)]
        exact: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Print the loop-case table with a witness configuration per row.
    Table {
        /// Witness search bounds as MAX_N,MAX_RATIO.
        #[arg(long, value_parser = parse_bounds)]
        bounds: Option<WitnessBounds>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Check that the verification harness catches a corrupted prediction.
    Selftest {
        #[command(flatten)]
        format: FormatArgs,
    },
}

fn parse_bounds(s: &str) -> Result<WitnessBounds, String> {
    let (a, b) = s.split_once(',').ok_or("expected MAX_N,MAX_RATIO")?;
    let max_n = a.trim().parse().map_err(|e| format!("MAX_N: {}", e))?;
    let max_ratio = b.trim().parse().map_err(|e| format!("MAX_RATIO: {}", e))?;
    Ok(WitnessBounds { max_n, max_ratio })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INVALID as u8) } else { ExitCode::SUCCESS };
        }
    };
    let outcome: Outcome = match cli.command {
        Command::Classify { config, output, format } => {
            cmd_classify(&config, output.as_deref(), format.resolve(output.is_some()))
        }
        Command::Verify { config, trials, seed, exact, output, format } => cmd_verify(
            &config,
            VerifyFlags { trials, seed, exact },
            output.as_deref(),
            format.resolve(output.is_some()),
        ),
        Command::Table { bounds, output, format } => cmd_table(bounds, output.as_deref(), format.resolve(output.is_some())),
        Command::Selftest { format } => cmd_selftest(format.resolve(false)),
    };
    print!("{}", outcome.stdout);
    if !outcome.stderr.is_empty() {
        eprintln!("{}", outcome.stderr);
    }
    ExitCode::from(outcome.code as u8)
}
