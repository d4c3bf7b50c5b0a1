//! Per-run metrics: what each algorithm reports besides the skyline itself.

use std::fmt;
use std::time::Duration;

use crate::sdi::Switching;

/// Which engine produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Bnl,
    Sfs,
    Salsa,
    SdiRs,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Algorithm::Bnl => "bnl",
            Algorithm::Sfs => "sfs",
            Algorithm::Salsa => "salsa",
            Algorithm::SdiRs => "sdi-rs",
        };
        f.write_str(name)
    }
}

/// Metrics of one algorithm run.
///
/// `search_time` covers the comparison and data-access phase only;
/// `total_time` additionally includes sorting or index construction. The
/// harness adds dataset loading time to `total_time` before emitting a report
/// row, so `search_time <= total_time` always holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub algorithm: Algorithm,
    /// Dimension-switching strategy; only set for the index-based engine.
    pub strategy: Option<Switching>,
    pub skyline_size: usize,
    pub dominance_comparisons: u64,
    pub search_time: Duration,
    pub total_time: Duration,
    /// Number of times the best stop line changed; `None` where the concept
    /// does not apply.
    pub stop_line_updates: Option<u64>,
    /// Whether the run terminated through its early-stop rule rather than by
    /// exhausting the input.
    pub early_stop: bool,
}

impl RunReport {
    /// Human-readable label such as `sdi-rs(bfs)` or `bnl`.
    pub fn label(&self) -> String {
        match self.strategy {
            Some(s) => format!("{}({})", self.algorithm, s),
            None => self.algorithm.to_string(),
        }
    }
}
