//! Command-line benchmark harness for the skyline engines.
//!
//! Subcommands: `generate` writes a synthetic dataset, `run` benchmarks the
//! selected algorithms with a built-in cross-check, `verify` compares every
//! algorithm against the brute-force oracle, and `trace` streams the
//! index-engine event log. Exit code is 0 on success and nonzero on any
//! failure, including a failed verification.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use skyline::baselines::{SalsaSort, DEFAULT_ORACLE_BOUND};
use skyline::bench::{self, load_rank_map, write_dataset_csv, AlgoChoice, DataSource, RunConfig};
use skyline::core::{Direction, OrderSpec};
use skyline::datagen::{generate, DistributionKind, GenSpec};
use skyline::sdi::Switching;

#[derive(Parser)]
#[command(name = "skybench", about = "Skyline query benchmark harness", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic benchmark dataset as header-less CSV.
    Generate(GenerateArgs),
    /// Run the selected algorithms on one dataset and report metrics.
    Run(RunArgs),
    /// Check every selected algorithm against the brute-force oracle.
    Verify(VerifyArgs),
    /// Run the index engine once and emit its trace stream.
    Trace(TraceArgs),
}

#[derive(Args)]
struct GenSpecArgs {
    /// Distribution: independent | correlated | anticorrelated.
    #[arg(long)]
    dist: Option<DistributionKind>,
    /// Number of tuples to generate.
    #[arg(long)]
    n: Option<usize>,
    /// Number of dimensions to generate.
    #[arg(long)]
    d: Option<usize>,
    /// RNG seed; identical seeds reproduce identical datasets.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Quantization step in (0, 1]; rounds values to multiples, forcing
    /// duplicate dimensional values.
    #[arg(long)]
    duplicate_factor: Option<f64>,
}

impl GenSpecArgs {
    fn to_spec(&self) -> Result<GenSpec> {
        let (Some(dist), Some(n), Some(d)) = (self.dist, self.n, self.d) else {
            bail!("generated input needs --dist, --n, and --d");
        };
        Ok(GenSpec {
            distribution: dist,
            n,
            d,
            seed: self.seed,
            duplicate_factor: self.duplicate_factor,
        })
    }
}

#[derive(Args)]
struct InputArgs {
    /// Dataset file (header-less CSV). Mutually exclusive with --dist/--n/--d.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    gen: GenSpecArgs,
    /// Per-dimension order, comma-separated: min | max | rankmap:<file>.
    /// Default is min (smaller-is-better) on every dimension.
    #[arg(long)]
    order: Option<String>,
}

impl InputArgs {
    fn to_source(&self) -> Result<DataSource> {
        match (&self.input, self.gen.dist) {
            (Some(path), None) => Ok(DataSource::File(path.clone())),
            (None, Some(_)) => Ok(DataSource::Generated(self.gen.to_spec()?)),
            (Some(_), Some(_)) => bail!("--input and --dist are mutually exclusive"),
            (None, None) => bail!("select an input with --input or --dist/--n/--d"),
        }
    }

    fn to_order(&self) -> Result<Option<OrderSpec>> {
        let Some(spec) = &self.order else {
            return Ok(None);
        };
        let mut directions = Vec::new();
        let mut maps = Vec::new();
        for (dim, token) in spec.split(',').enumerate() {
            match token.trim() {
                "min" => {
                    directions.push(Direction::MinIsBetter);
                    maps.push(None);
                }
                "max" => {
                    directions.push(Direction::MaxIsBetter);
                    maps.push(None);
                }
                token if token.starts_with("rankmap:") => {
                    let path = PathBuf::from(&token["rankmap:".len()..]);
                    let map = load_rank_map(&path)
                        .with_context(|| format!("loading rank map for dimension {dim}"))?;
                    directions.push(Direction::MinIsBetter);
                    maps.push(Some(map));
                }
                other => bail!(
                    "dimension {dim}: unknown order {other:?}, expected min|max|rankmap:<file>"
                ),
            }
        }
        let mut order = OrderSpec::new(directions);
        for (dim, map) in maps.into_iter().enumerate() {
            if let Some(map) = map {
                order = order.with_rank_map(dim, map);
            }
        }
        Ok(Some(order))
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    gen: GenSpecArgs,
    /// Output dataset path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AlgoArgs {
    /// Comma-separated algorithms: sdi | bnl | sfs | salsa | all.
    #[arg(long, default_value = "all")]
    algo: String,
    /// Dimension switching for the index engine: bfs | dfs | both.
    #[arg(long, default_value = "both")]
    strategy: String,
    /// Sort key for the sort-and-limit filter: min | max.
    #[arg(long, default_value = "min")]
    salsa_sort: String,
}

impl AlgoArgs {
    fn algorithms(&self) -> Result<Vec<AlgoChoice>> {
        if self.algo.trim().eq_ignore_ascii_case("all") {
            return Ok(AlgoChoice::ALL.to_vec());
        }
        let mut choices = Vec::new();
        for token in self.algo.split(',') {
            let choice: AlgoChoice = token.trim().parse().map_err(|e| anyhow!("{e}"))?;
            if !choices.contains(&choice) {
                choices.push(choice);
            }
        }
        Ok(choices)
    }

    fn strategies(&self) -> Result<Vec<Switching>> {
        match self.strategy.to_ascii_lowercase().as_str() {
            "bfs" => Ok(vec![Switching::BreadthFirst]),
            "dfs" => Ok(vec![Switching::DepthFirst]),
            "both" => Ok(vec![Switching::BreadthFirst, Switching::DepthFirst]),
            other => bail!("unknown strategy {other:?}, expected bfs|dfs|both"),
        }
    }

    fn salsa_sort(&self) -> Result<SalsaSort> {
        match self.salsa_sort.to_ascii_lowercase().as_str() {
            "min" => Ok(SalsaSort::MinValue),
            "max" => Ok(SalsaSort::MaxValue),
            other => bail!("unknown salsa sort {other:?}, expected min|max"),
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    algos: AlgoArgs,
    /// Report CSV output path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skyline member ids output path (one id per line, ascending).
    #[arg(long)]
    members_out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    algos: AlgoArgs,
    /// Cardinality guard for the quadratic oracle.
    #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
    oracle_bound: usize,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Dimension switching: bfs | dfs.
    #[arg(long, default_value = "bfs")]
    strategy: String,
    /// Trace output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn build_config(input: &InputArgs, algos: &AlgoArgs) -> Result<RunConfig> {
    let mut config = RunConfig::new(input.to_source()?);
    config.order = input.to_order()?;
    config.algorithms = algos.algorithms()?;
    config.strategies = algos.strategies()?;
    config.salsa_sort = algos.salsa_sort()?;
    Ok(config)
}

fn cmd_generate(args: &GenerateArgs) -> Result<()> {
    let spec = args.gen.to_spec()?;
    let data = generate(&spec)?;
    write_dataset_csv(&data, &args.out)
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!(
        "wrote {} tuples x {} dimensions ({}, seed {}) to {}",
        data.len(),
        data.dims(),
        spec.distribution,
        spec.seed,
        args.out.display()
    );
    Ok(())
}

fn cmd_run(args: &RunArgs) -> Result<()> {
    let mut config = build_config(&args.input, &args.algos)?;
    config.report_out = args.out.clone();
    config.members_out = args.members_out.clone();
    let outcome = bench::run_suite(&config)?;
    println!(
        "dataset: n={} d={} distribution={} skyline={}",
        outcome.context.n,
        outcome.context.d,
        outcome.context.distribution,
        outcome.skyline.len()
    );
    println!(
        "{:<14} {:>10} {:>14} {:>12} {:>12} {:>8} {:>6}",
        "algorithm", "skyline", "comparisons", "search_ms", "total_ms", "updates", "stop"
    );
    for report in &outcome.reports {
        println!(
            "{:<14} {:>10} {:>14} {:>12} {:>12} {:>8} {:>6}",
            report.label(),
            report.skyline_size,
            report.dominance_comparisons,
            bench::format_ms(report.search_time),
            bench::format_ms(report.total_time),
            report
                .stop_line_updates
                .map_or_else(|| "-".to_string(), |u| u.to_string()),
            report.early_stop
        );
    }
    if let Some(path) = &args.out {
        println!("report written to {}", path.display());
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<()> {
    let mut config = build_config(&args.input, &args.algos)?;
    config.oracle_bound = args.oracle_bound;
    let outcome = bench::verify(&config)?;
    println!("oracle skyline size: {}", outcome.oracle_size);
    for check in &outcome.checks {
        println!(
            "{:<14} {:>10} {}",
            check.label,
            check.skyline_size,
            if check.matches_oracle {
                "ok"
            } else {
                "MISMATCH"
            }
        );
    }
    if outcome.passed {
        println!("verify: pass");
        Ok(())
    } else {
        bail!("verify: fail (at least one algorithm disagrees with the oracle)");
    }
}

fn cmd_trace(args: &TraceArgs) -> Result<()> {
    let config = build_config(
        &args.input,
        &AlgoArgs {
            algo: "sdi".to_string(),
            strategy: "bfs".to_string(),
            salsa_sort: "min".to_string(),
        },
    )?;
    let switching = match args.strategy.to_ascii_lowercase().as_str() {
        "bfs" => Switching::BreadthFirst,
        "dfs" => Switching::DepthFirst,
        other => bail!("unknown strategy {other:?}, expected bfs|dfs"),
    };
    let (result, report, events) = bench::trace_run(&config, switching)?;
    let mut lines = String::new();
    for event in &events {
        lines.push_str(&event.to_string());
        lines.push('\n');
    }
    match &args.out {
        Some(path) => {
            fs::write(path, lines).with_context(|| format!("writing {}", path.display()))?
        }
        None => {
            std::io::stdout().write_all(lines.as_bytes())?;
        }
    }
    eprintln!(
        "skyline size {} in {} events, {} comparisons, early stop: {}",
        result.len(),
        events.len(),
        report.dominance_comparisons,
        report.early_stop
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Run(args) => cmd_run(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Trace(args) => cmd_trace(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
