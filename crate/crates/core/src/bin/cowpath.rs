use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cowpath::report::{self, OutputFormat, RunConfig};
use cowpath::{parse_rational, Error, Rational, Result, Strategy};

#[derive(Parser)]
#[command(
    name = "cowpath",
    version,
    about = "Exact analysis of linear search strategies"
)]
struct Cli {
    /// Iterations scanned before a tail certificate is required.
    #[arg(long, global = true, default_value_t = cowpath::strategy::DEFAULT_HORIZON)]
    horizon_iters: usize,
    /// Largest target length for profiles, as p/q.
    #[arg(long, global = true, default_value = "100", value_parser = parse_rational)]
    horizon_length: Rational,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Geometric,
    Aggressive,
}

#[derive(clap::Args)]
struct StrategyArgs {
    /// Strategy file in TOML format.
    #[arg(conflicts_with_all = ["family", "param"])]
    file: Option<PathBuf>,
    #[arg(long, value_enum, requires = "param")]
    family: Option<FamilyArg>,
    /// alpha for geometric, t for aggressive.
    #[arg(long, value_parser = parse_rational, requires = "family")]
    param: Option<Rational>,
}

impl StrategyArgs {
    fn load(&self) -> Result<Strategy> {
        match (&self.file, self.family, &self.param) {
            (Some(path), _, _) => report::load_strategy(path),
            (None, Some(FamilyArg::Geometric), Some(alpha)) => Strategy::geometric(alpha.clone()),
            (None, Some(FamilyArg::Aggressive), Some(t)) => Strategy::aggressive(t.clone()),
            _ => Err(Error::InvalidParameter(
                "give a strategy file or --family with --param".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Segments, validity and all three ratios of one strategy.
    Eval(StrategyArgs),
    /// Recompute the reference constants and the LP cross-checks.
    Verify,
    /// Competitive versus discovery ratio for geometric strategies.
    Tradeoff {
        #[arg(long, value_parser = parse_rational)]
        alpha_min: Rational,
        #[arg(long, value_parser = parse_rational)]
        alpha_max: Rational,
        #[arg(long)]
        steps: usize,
    },
    /// Piecewise-linear discovery cost up to --horizon-length.
    Profile(StrategyArgs),
    /// Solve one of the linear programs exactly.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Minimal discovery cost of length l among 9-competitive strategies.
    MinDiscovery {
        #[arg(value_parser = parse_rational)]
        l: Rational,
        /// Largest turn count tried; defaults to the optimal turn count plus 3.
        #[arg(long)]
        n_max: Option<i64>,
    },
    /// Largest n-th segment of a 9-competitive strategy.
    MaxSegment { n: i64 },
}

fn run(cli: Cli) -> Result<i32> {
    let config = RunConfig {
        horizon_iterations: cli.horizon_iters,
        horizon_length: cli.horizon_length,
        output_format: match cli.format {
            Format::Csv => OutputFormat::Csv,
            Format::Structured => OutputFormat::Structured,
        },
        strategy_files: Vec::new(),
    };
    config.validate()?;
    let format = config.output_format;
    match cli.command {
        Command::Eval(args) => {
            let report = report::eval(&config, &args.load()?)?;
            if let Some(warning) = report.warning() {
                eprintln!("{warning}");
            }
            print!("{}", report.render(format));
        }
        Command::Verify => {
            let report = report::verify(&config)?;
            print!("{}", report.render(format));
            if !report.all_pass {
                eprintln!("verification failed");
            }
            return Ok(report.exit_code());
        }
        Command::Tradeoff {
            alpha_min,
            alpha_max,
            steps,
        } => {
            print!(
                "{}",
                report::tradeoff(&config, &alpha_min, &alpha_max, steps)?
            );
        }
        Command::Profile(args) => print!("{}", report::profile(&config, &args.load()?)?),
        Command::Oracle(OracleCommand::MinDiscovery { l, n_max }) => {
            print!("{}", report::oracle_min_discovery(&config, &l, n_max)?);
        }
        Command::Oracle(OracleCommand::MaxSegment { n }) => {
            print!("{}", report::oracle_max_segment_report(&config, n)?);
        }
    }
    Ok(report::EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = run(cli).unwrap_or_else(|err| {
        eprintln!("error: {err}");
        report::exit_code(&err)
    });
    ExitCode::from(code as u8)
}
