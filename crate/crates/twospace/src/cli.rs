//! Argument parsing and command dispatch for the `twospace` binary.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use twospace_core::montecarlo::{default_confidence, SimConfig, DEFAULT_SEED, DEFAULT_TRIALS};
use twospace_core::paradox::{monty_hall, simpson_check, two_child, MontyStrategy, TwoChildCondition};
use twospace_core::rational::{fraction_string, half, parse_rational};
use twospace_core::{Fallback, Rational, SchemeInstance, Space, Strategy};

use crate::error::CliError;
use crate::parallel;
use crate::report::{self, Format, SimRun};
use crate::scheme_file::parse_scheme;
use crate::table::parse_table;

#[derive(Debug, Parser)]
#[command(name = "twospace", version, about = "Exact analysis of two-space probabilistic encryption schemes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate a scheme exactly and report receiver and eavesdropper success.
    Analyze(AnalyzeArgs),
    /// Monte Carlo runs of a scheme, checked against the exact values.
    Simulate(SimulateArgs),
    /// Worked conditional-probability puzzles.
    #[command(subcommand)]
    Paradox(ParadoxCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    All,
    AssumeS1,
    AssumeS2,
    Mixed,
    BayesOptimal,
    ReceiverEmulation,
    TripleSampling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FallbackArg {
    Abstain,
    Uniform,
}

impl From<FallbackArg> for Fallback {
    fn from(f: FallbackArg) -> Self {
        match f {
            FallbackArg::Abstain => Fallback::Abstain,
            FallbackArg::Uniform => Fallback::UniformGuess,
        }
    }
}

#[derive(Debug, Args)]
pub struct StrategyFlags {
    /// Eavesdropper fallback for assume-space attacks outside the overlap.
    #[arg(long, value_enum, default_value = "abstain")]
    pub fallback: FallbackArg,
    /// Weight on assume-s1 for the mixed strategy, as p/q (default 1/2).
    #[arg(long, value_parser = rational_arg)]
    pub lambda: Option<Rational>,
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub path: PathBuf,
    #[arg(long, value_enum, default_value = "all")]
    pub strategy: StrategyArg,
    #[command(flatten)]
    pub flags: StrategyFlags,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    pub path: PathBuf,
    #[arg(long, value_enum, default_value = "assume-s2")]
    pub strategy: StrategyArg,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Confidence level for the Hoeffding radius, as p/q (default 999/1000).
    #[arg(long, value_parser = rational_arg)]
    pub confidence: Option<Rational>,
    /// Worker threads; results do not depend on this.
    #[arg(long)]
    pub workers: Option<usize>,
    #[command(flatten)]
    pub flags: StrategyFlags,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MontyArg {
    Stay,
    Switch,
}

#[derive(Debug, Subcommand)]
pub enum ParadoxCommand {
    MontyHall {
        #[arg(long, default_value_t = 3)]
        doors: u32,
        #[arg(long, value_enum, default_value = "switch")]
        strategy: MontyArg,
    },
    TwoChild {
        /// younger-boy, at-least-one-boy, or either followed by -<weekday>.
        #[arg(long, default_value = "younger-boy-tuesday")]
        variant: String,
    },
    Simpson {
        /// CSV with header stratum,successA,totalA,successB,totalB.
        #[arg(long)]
        table: PathBuf,
    },
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Expands a strategy flag into concrete strategies, in report order.
pub fn strategies(arg: StrategyArg, fallback: Fallback, lambda: Option<&Rational>) -> Vec<Strategy> {
    let assume = |space| Strategy::AssumeSpace { space, fallback };
    let mixed = Strategy::Mixed { lambda: lambda.cloned().unwrap_or_else(half) };
    match arg {
        StrategyArg::All => vec![
            assume(Space::S1),
            assume(Space::S2),
            mixed,
            Strategy::BayesOptimal,
            Strategy::ReceiverEmulation,
            Strategy::TripleSampling,
        ],
        StrategyArg::AssumeS1 => vec![assume(Space::S1)],
        StrategyArg::AssumeS2 => vec![assume(Space::S2)],
        StrategyArg::Mixed => vec![mixed],
        StrategyArg::BayesOptimal => vec![Strategy::BayesOptimal],
        StrategyArg::ReceiverEmulation => vec![Strategy::ReceiverEmulation],
        StrategyArg::TripleSampling => vec![Strategy::TripleSampling],
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_scheme(path: &Path) -> Result<(SchemeInstance, String), CliError> {
    let bytes = read(path)?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Parse(format!("{} is not UTF-8", path.display())))?;
    Ok((parse_scheme(&text)?, report::input_digest(&bytes)))
}

pub fn analyze(args: &AnalyzeArgs) -> Result<String, CliError> {
    let (scheme, digest) = load_scheme(&args.path)?;
    let list = strategies(args.strategy, args.flags.fallback.into(), args.flags.lambda.as_ref());
    let r = report::build_report(&scheme, digest, &list)?;
    Ok(match args.flags.format {
        Format::Human => report::report_human(&r),
        Format::Json => report::pretty(&report::report_json(&r)),
        Format::Csv => report::report_csv(&r),
    })
}

pub fn simulate(args: &SimulateArgs) -> Result<String, CliError> {
    let (scheme, digest) = load_scheme(&args.path)?;
    scheme.ensure_valid()?;
    let workers = args.workers.unwrap_or_else(parallel::default_workers).max(1);
    let confidence = args.confidence.clone().unwrap_or_else(default_confidence);
    let mut runs = Vec::new();
    for strategy in strategies(args.strategy, args.flags.fallback.into(), args.flags.lambda.as_ref()) {
        let config = SimConfig { trials: args.trials, seed: args.seed, strategy, confidence: confidence.clone() };
        let result = parallel::simulate(&scheme, &config, workers)?;
        runs.push(SimRun { config, result });
    }
    Ok(match args.flags.format {
        Format::Human => report::simulation_human(&scheme.name, &digest, &runs),
        Format::Json => report::pretty(&report::simulation_json(&scheme.name, &digest, &runs)),
        Format::Csv => report::simulation_csv(&runs),
    })
}

pub fn paradox(cmd: &ParadoxCommand) -> Result<String, CliError> {
    match cmd {
        ParadoxCommand::MontyHall { doors, strategy } => {
            let s = match strategy {
                MontyArg::Stay => MontyStrategy::Stay,
                MontyArg::Switch => MontyStrategy::Switch,
            };
            let p = monty_hall(*doors, s).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(format!("{}\n", report::show(&p)))
        }
        ParadoxCommand::TwoChild { variant } => {
            let cond: TwoChildCondition =
                variant.parse().map_err(|e: twospace_core::Error| CliError::Usage(e.to_string()))?;
            Ok(format!("{}\n", report::show(&two_child(cond)?)))
        }
        ParadoxCommand::Simpson { table } => {
            let bytes = read(table)?;
            let text = String::from_utf8(bytes)
                .map_err(|_| CliError::Parse(format!("{} is not UTF-8", table.display())))?;
            let t = parse_table(&text)?;
            let r = simpson_check(&t)?;
            let mut out = String::new();
            for c in r.strata.iter().chain(std::iter::once(&r.aggregate)) {
                out.push_str(&format!(
                    "{}: A {} vs B {}, favours {}\n",
                    c.name,
                    fraction_string(&c.rate_a),
                    fraction_string(&c.rate_b),
                    c.direction
                ));
            }
            out.push_str(&format!("reversal: {}\n", r.reversal));
            Ok(out)
        }
    }
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Simulate(s) => simulate(s),
        Command::Paradox(p) => paradox(p),
    }
}
