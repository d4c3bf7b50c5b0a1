//! Benchmark harness: dataset ingestion, algorithm dispatch, cross-checked
//! metric collection, and CSV report emission.
//!
//! Dataset files are header-less CSV, one tuple per row, `d` numeric columns
//! (or quoted category tokens for dimensions that carry a rank map), UTF-8
//! with LF line endings. Report files are CSV with a fixed column order; see
//! [`REPORT_HEADER`].

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::baselines::{
    run_bnl, run_oracle_with_bound, run_salsa_with, run_sfs, OracleError, SalsaSort,
    DEFAULT_ORACLE_BOUND,
};
use crate::core::{DataError, Dataset, OrderSpec, RankMap, SkylineResult, Tuple};
use crate::datagen::{generate, GenError, GenSpec};
use crate::report::RunReport;
use crate::sdi::{run_sdi_rs, run_sdi_rs_traced, Switching, TraceEvent};

/// Fixed column order of report CSV files. Times are reported in milliseconds
/// with three decimals (microsecond resolution).
pub const REPORT_HEADER: &str = "algorithm,strategy,n,d,distribution,seed,skyline_size,\
dominance_comparisons,search_time_ms,total_time_ms,stop_line_updates,early_stop";

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: malformed csv: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{path}: file contains no rows")]
    EmptyFile { path: PathBuf },
    #[error("{path}:{line}: row has {got} columns, expected {expected}")]
    RaggedRow {
        path: PathBuf,
        line: u64,
        got: usize,
        expected: usize,
    },
    #[error("{path}:{line}: column {column}: cannot parse {token:?} as a number")]
    InvalidNumber {
        path: PathBuf,
        line: u64,
        column: usize,
        token: String,
    },
    #[error("{path}:{line}: column {column}: {token:?} is not a finite number")]
    NonFiniteNumber {
        path: PathBuf,
        line: u64,
        column: usize,
        token: String,
    },
    #[error("{path}:{line}: column {column}: category {token:?} has no rank mapping")]
    UnmappedCategory {
        path: PathBuf,
        line: u64,
        column: usize,
        token: String,
    },
    #[error("order spec covers {got} dimensions, file rows have {expected}")]
    OrderArity { got: usize, expected: usize },
    #[error(transparent)]
    Data(#[from] DataError),
}

/// Reads a header-less CSV dataset. Row order is preserved and ids are
/// assigned 0..n-1 in file order. With `order = None` every dimension defaults
/// to smaller-is-better. Dimensions carrying a rank map in the order spec are
/// resolved from category tokens to their integer ranks.
pub fn load_dataset(path: &Path, order: Option<OrderSpec>) -> Result<Dataset, LoadError> {
    let io_err = |source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = fs::File::open(path).map_err(io_err)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);

    let mut tuples: Vec<Tuple> = Vec::new();
    let mut dims: Option<usize> = None;
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|source| LoadError::Csv {
            path: path.to_path_buf(),
            source,
        })?;
        let line = record.position().map_or(row as u64 + 1, |p| p.line());
        let expected = *dims.get_or_insert_with(|| record.len());
        if record.len() != expected {
            return Err(LoadError::RaggedRow {
                path: path.to_path_buf(),
                line,
                got: record.len(),
                expected,
            });
        }
        if let Some(order) = &order {
            if order.dims() != expected {
                return Err(LoadError::OrderArity {
                    got: order.dims(),
                    expected,
                });
            }
        }
        let mut values = Vec::with_capacity(expected);
        for (column, token) in record.iter().enumerate() {
            let rank_map = order.as_ref().and_then(|o| o.rank_map(column));
            let value = match rank_map {
                Some(map) => match map.rank(token) {
                    Some(rank) => rank as f64,
                    None => {
                        return Err(LoadError::UnmappedCategory {
                            path: path.to_path_buf(),
                            line,
                            column,
                            token: token.to_string(),
                        })
                    }
                },
                None => {
                    let parsed: f64 = token.parse().map_err(|_| LoadError::InvalidNumber {
                        path: path.to_path_buf(),
                        line,
                        column,
                        token: token.to_string(),
                    })?;
                    if !parsed.is_finite() {
                        return Err(LoadError::NonFiniteNumber {
                            path: path.to_path_buf(),
                            line,
                            column,
                            token: token.to_string(),
                        });
                    }
                    parsed
                }
            };
            values.push(value);
        }
        tuples.push(Tuple::new(row as u64, values));
    }
    let Some(dims) = dims else {
        return Err(LoadError::EmptyFile {
            path: path.to_path_buf(),
        });
    };
    let order = order.unwrap_or_else(|| OrderSpec::uniform(dims, Default::default()));
    Ok(Dataset::new(tuples, order)?)
}

/// Reads a rank map file: CSV lines of `token,rank`.
pub fn load_rank_map(path: &Path) -> Result<RankMap, LoadError> {
    let io_err = |source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = fs::File::open(path).map_err(io_err)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let mut pairs = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|source| LoadError::Csv {
            path: path.to_path_buf(),
            source,
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 2 {
            return Err(LoadError::RaggedRow {
                path: path.to_path_buf(),
                line,
                got: record.len(),
                expected: 2,
            });
        }
        let rank: i64 = record[1].parse().map_err(|_| LoadError::InvalidNumber {
            path: path.to_path_buf(),
            line,
            column: 1,
            token: record[1].to_string(),
        })?;
        pairs.push((record[0].to_string(), rank));
    }
    Ok(RankMap::new(pairs)?)
}

/// Writes a dataset in the CSV format accepted by [`load_dataset`]. Values use
/// the shortest decimal form that round-trips exactly.
pub fn write_dataset_csv(data: &Dataset, path: &Path) -> std::io::Result<()> {
    let mut out = String::new();
    for t in data.tuples() {
        for (i, v) in t.values().iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    fs::write(path, out)
}

/// Where the harness gets its tuples from.
#[derive(Debug, Clone)]
pub enum DataSource {
    File(PathBuf),
    Generated(GenSpec),
}

/// Algorithm families selectable on a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgoChoice {
    Bnl,
    Sfs,
    Salsa,
    Sdi,
}

impl AlgoChoice {
    pub const ALL: [AlgoChoice; 4] = [
        AlgoChoice::Sdi,
        AlgoChoice::Bnl,
        AlgoChoice::Sfs,
        AlgoChoice::Salsa,
    ];
}

#[derive(Debug, Error)]
#[error("unknown algorithm {0:?}, expected sdi|bnl|sfs|salsa|all")]
pub struct ParseAlgoError(String);

impl std::str::FromStr for AlgoChoice {
    type Err = ParseAlgoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bnl" => Ok(AlgoChoice::Bnl),
            "sfs" => Ok(AlgoChoice::Sfs),
            "salsa" => Ok(AlgoChoice::Salsa),
            "sdi" | "sdi-rs" => Ok(AlgoChoice::Sdi),
            other => Err(ParseAlgoError(other.to_string())),
        }
    }
}

/// One harness invocation: the dataset, the algorithms to run on it, and the
/// output destinations.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub source: DataSource,
    /// Per-dimension order overrides; `None` means smaller-is-better
    /// everywhere.
    pub order: Option<OrderSpec>,
    pub algorithms: Vec<AlgoChoice>,
    /// Dimension-switching strategies to run for the index-based engine.
    pub strategies: Vec<Switching>,
    pub salsa_sort: SalsaSort,
    pub report_out: Option<PathBuf>,
    pub members_out: Option<PathBuf>,
    pub oracle_bound: usize,
}

impl RunConfig {
    pub fn new(source: DataSource) -> Self {
        Self {
            source,
            order: None,
            algorithms: AlgoChoice::ALL.to_vec(),
            strategies: vec![Switching::BreadthFirst, Switching::DepthFirst],
            salsa_sort: SalsaSort::MinValue,
            report_out: None,
            members_out: None,
            oracle_bound: DEFAULT_ORACLE_BOUND,
        }
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("no algorithm selected")]
    NoAlgorithms,
    #[error(
        "skyline mismatch: {first} found {first_size} tuples but {second} found {second_size}"
    )]
    Mismatch {
        first: String,
        first_size: usize,
        second: String,
        second_size: usize,
    },
    #[error("failed to write {path}: {source}")]
    WriteIo {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Dataset facts attached to every report row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunContext {
    pub n: usize,
    pub d: usize,
    pub distribution: String,
    pub seed: Option<u64>,
}

/// Everything a `run` invocation produces: the shared context, one report per
/// executed algorithm, and the (cross-checked) skyline.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub context: RunContext,
    pub reports: Vec<RunReport>,
    pub skyline: SkylineResult,
}

fn load_source(
    source: &DataSource,
    order: Option<OrderSpec>,
) -> Result<(Dataset, Duration, String, Option<u64>), SuiteError> {
    let start = Instant::now();
    match source {
        DataSource::File(path) => {
            let data = load_dataset(path, order)?;
            Ok((data, start.elapsed(), "file".to_string(), None))
        }
        DataSource::Generated(spec) => {
            let data = generate(spec)?;
            let data = match order {
                Some(order) => {
                    Dataset::new(data.tuples().to_vec(), order).map_err(LoadError::Data)?
                }
                None => data,
            };
            Ok((
                data,
                start.elapsed(),
                spec.distribution.to_string(),
                Some(spec.seed),
            ))
        }
    }
}

/// Checks that all member sets agree; the first divergence is a hard failure
/// naming both algorithms.
pub fn cross_check(results: &[(String, &SkylineResult)]) -> Result<(), SuiteError> {
    for pair in results.windows(2) {
        let (first, a) = (&pair[0].0, pair[0].1);
        let (second, b) = (&pair[1].0, pair[1].1);
        if a != b {
            return Err(SuiteError::Mismatch {
                first: first.clone(),
                first_size: a.len(),
                second: second.clone(),
                second_size: b.len(),
            });
        }
    }
    Ok(())
}

fn execute(
    data: &Dataset,
    config: &RunConfig,
) -> Result<Vec<(SkylineResult, RunReport)>, SuiteError> {
    if config.algorithms.is_empty() {
        return Err(SuiteError::NoAlgorithms);
    }
    let mut runs = Vec::new();
    for algo in &config.algorithms {
        match algo {
            AlgoChoice::Bnl => runs.push(run_bnl(data)),
            AlgoChoice::Sfs => runs.push(run_sfs(data)),
            AlgoChoice::Salsa => runs.push(run_salsa_with(data, config.salsa_sort, true)),
            AlgoChoice::Sdi => {
                for &switching in &config.strategies {
                    runs.push(run_sdi_rs(data, switching));
                }
            }
        }
    }
    Ok(runs)
}

/// Runs every selected algorithm on the same in-memory dataset, cross-checks
/// the member sets, and writes the requested output files. Every benchmark run
/// doubles as a correctness test through the cross-check.
pub fn run_suite(config: &RunConfig) -> Result<SuiteOutcome, SuiteError> {
    let (data, load_time, distribution, seed) = load_source(&config.source, config.order.clone())?;
    let mut runs = execute(&data, config)?;
    for (_, report) in &mut runs {
        report.total_time += load_time;
    }
    let labeled: Vec<(String, &SkylineResult)> = runs
        .iter()
        .map(|(result, report)| (report.label(), result))
        .collect();
    cross_check(&labeled)?;

    let context = RunContext {
        n: data.len(),
        d: data.dims(),
        distribution,
        seed,
    };
    let skyline = runs[0].0.clone();
    let reports: Vec<RunReport> = runs.into_iter().map(|(_, report)| report).collect();

    if let Some(path) = &config.report_out {
        write_reports(path, &context, &reports)?;
    }
    if let Some(path) = &config.members_out {
        write_members(path, &skyline)?;
    }
    Ok(SuiteOutcome {
        context,
        reports,
        skyline,
    })
}

/// One equality check of the verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyCheck {
    pub label: String,
    pub skyline_size: usize,
    pub matches_oracle: bool,
}

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub passed: bool,
    pub oracle_size: usize,
    pub checks: Vec<VerifyCheck>,
}

/// Runs the brute-force oracle plus every selected algorithm; passes iff all
/// member sets equal the oracle's.
pub fn verify(config: &RunConfig) -> Result<VerifyOutcome, SuiteError> {
    let (data, _, _, _) = load_source(&config.source, config.order.clone())?;
    let oracle = run_oracle_with_bound(&data, config.oracle_bound)?;
    let runs = execute(&data, config)?;
    let checks: Vec<VerifyCheck> = runs
        .iter()
        .map(|(result, report)| VerifyCheck {
            label: report.label(),
            skyline_size: result.len(),
            matches_oracle: *result == oracle,
        })
        .collect();
    Ok(VerifyOutcome {
        passed: checks.iter().all(|c| c.matches_oracle),
        oracle_size: oracle.len(),
        checks,
    })
}

/// Loads the configured dataset and runs the index-based engine once with the
/// trace stream enabled.
pub fn trace_run(
    config: &RunConfig,
    switching: Switching,
) -> Result<(SkylineResult, RunReport, Vec<TraceEvent>), SuiteError> {
    let (data, _, _, _) = load_source(&config.source, config.order.clone())?;
    Ok(run_sdi_rs_traced(&data, switching))
}

/// Milliseconds with three decimals from microsecond resolution.
pub fn format_ms(duration: Duration) -> String {
    let us = duration.as_micros();
    format!("{}.{:03}", us / 1000, us % 1000)
}

/// Formats one report row in [`REPORT_HEADER`] order.
pub fn report_csv_row(context: &RunContext, report: &RunReport) -> String {
    let strategy = report
        .strategy
        .map_or_else(|| "-".to_string(), |s| s.to_string());
    let seed = context
        .seed
        .map_or_else(|| "-".to_string(), |s| s.to_string());
    let updates = report
        .stop_line_updates
        .map_or_else(|| "-".to_string(), |u| u.to_string());
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        report.algorithm,
        strategy,
        context.n,
        context.d,
        context.distribution,
        seed,
        report.skyline_size,
        report.dominance_comparisons,
        format_ms(report.search_time),
        format_ms(report.total_time),
        updates,
        report.early_stop
    )
}

pub fn write_reports(
    path: &Path,
    context: &RunContext,
    reports: &[RunReport],
) -> Result<(), SuiteError> {
    let mut out = String::from(REPORT_HEADER);
    out.push('\n');
    for report in reports {
        out.push_str(&report_csv_row(context, report));
        out.push('\n');
    }
    fs::write(path, out).map_err(|source| SuiteError::WriteIo {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes skyline member ids, one per line, ascending.
pub fn write_members(path: &Path, skyline: &SkylineResult) -> Result<(), SuiteError> {
    let mut out = String::new();
    for id in skyline.iter() {
        let _ = writeln!(out, "{id}");
    }
    fs::write(path, out).map_err(|source| SuiteError::WriteIo {
        path: path.to_path_buf(),
        source,
    })
}
