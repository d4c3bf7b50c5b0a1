//! Reference competitors sharing the counted dominance test: the memory-window
//! nested loop, two presort filters, and the brute-force oracle used as ground
//! truth by the verification harness.

use std::time::Instant;

use thiserror::Error;

use crate::core::{
    dominates, dominates_raw, ComparisonCounter, Dataset, Direction, OrderSpec, SkylineResult,
    Tuple, TupleId,
};
use crate::report::{Algorithm, RunReport};

/// Unbounded candidate window. Members are pairwise non-dominating at all
/// times; exact duplicates may coexist.
#[derive(Debug, Default)]
pub struct Window {
    ids: Vec<TupleId>,
}

/// Outcome of offering a tuple to a [`Window`].
#[derive(Debug, PartialEq, Eq)]
pub enum Offer {
    /// The tuple joined the window, evicting the listed members.
    Kept { evicted: Vec<TupleId> },
    /// A window member dominates the tuple.
    Rejected,
}

impl Window {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ids(&self) -> &[TupleId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Nested-loop offer: drop the tuple at its first dominator, evict
    /// members the tuple dominates, keep it otherwise.
    pub fn offer(
        &mut self,
        t: &Tuple,
        data: &Dataset,
        order: &OrderSpec,
        counter: &ComparisonCounter,
    ) -> Offer {
        let mut evicted = Vec::new();
        let mut i = 0;
        while i < self.ids.len() {
            let member = data.tuple(self.ids[i]);
            if dominates(member, t, order, counter) {
                // Transitivity makes a dominator impossible once the tuple has
                // evicted someone; the window would not have been
                // non-dominating before the offer.
                debug_assert!(evicted.is_empty());
                return Offer::Rejected;
            }
            if dominates(t, member, order, counter) {
                evicted.push(self.ids.remove(i));
            } else {
                i += 1;
            }
        }
        self.ids.push(t.id());
        self.debug_check_new_member(t, data, order);
        Offer::Kept { evicted }
    }

    /// Offer under a dominance-compatible presort: no later tuple can dominate
    /// a window member, so there is no eviction pass and survivors are final.
    pub fn offer_presorted(
        &mut self,
        t: &Tuple,
        data: &Dataset,
        order: &OrderSpec,
        counter: &ComparisonCounter,
    ) -> bool {
        for &id in &self.ids {
            if dominates(data.tuple(id), t, order, counter) {
                return false;
            }
        }
        self.ids.push(t.id());
        self.debug_check_new_member(t, data, order);
        true
    }

    /// Debug-only invariant check: the newly kept tuple must not dominate and
    /// must not be dominated by any remaining member. Inductively this keeps
    /// the whole window pairwise non-dominating. Uses the uncounted test so
    /// debug and release builds report identical comparison counts.
    fn debug_check_new_member(&self, t: &Tuple, data: &Dataset, order: &OrderSpec) {
        if cfg!(debug_assertions) {
            for &id in &self.ids {
                if id == t.id() {
                    continue;
                }
                let member = data.tuple(id);
                debug_assert!(
                    !dominates_raw(member, t, order) && !dominates_raw(t, member, order),
                    "window invariant broken between {} and {}",
                    id,
                    t.id()
                );
            }
        }
    }
}

/// Block-nested-loop skyline: a single pass of every tuple through the window.
pub fn run_bnl(data: &Dataset) -> (SkylineResult, RunReport) {
    let total_start = Instant::now();
    let counter = ComparisonCounter::new();
    let mut window = Window::new();
    let search_start = Instant::now();
    for t in data.tuples() {
        let _ = window.offer(t, data, data.order(), &counter);
    }
    let search_time = search_start.elapsed();
    let result = SkylineResult::from_ids(window.ids().iter().copied());
    let report = RunReport {
        algorithm: Algorithm::Bnl,
        strategy: None,
        skyline_size: result.len(),
        dominance_comparisons: counter.get(),
        search_time,
        total_time: total_start.elapsed(),
        stop_line_updates: None,
        early_stop: false,
    };
    (result, report)
}

/// Per-dimension min-max normalization to [0, 1] with smaller always better.
/// Used for presort keys only; dominance always runs on raw values.
fn normalized_columns(data: &Dataset) -> Vec<Vec<f64>> {
    let d = data.dims();
    let mut mins = vec![f64::INFINITY; d];
    let mut maxs = vec![f64::NEG_INFINITY; d];
    for t in data.tuples() {
        for dim in 0..d {
            mins[dim] = mins[dim].min(t.value(dim));
            maxs[dim] = maxs[dim].max(t.value(dim));
        }
    }
    data.tuples()
        .iter()
        .map(|t| {
            (0..d)
                .map(|dim| {
                    let span = maxs[dim] - mins[dim];
                    if span == 0.0 {
                        return 0.0;
                    }
                    match data.order().direction(dim) {
                        Direction::MinIsBetter => (t.value(dim) - mins[dim]) / span,
                        Direction::MaxIsBetter => (maxs[dim] - t.value(dim)) / span,
                    }
                })
                .collect()
        })
        .collect()
}

/// Positions sorted ascending by `(key, id)`.
fn sorted_positions(data: &Dataset, keys: &[(f64, f64)]) -> Vec<usize> {
    let mut positions: Vec<usize> = (0..data.len()).collect();
    positions.sort_by(|&a, &b| {
        keys[a]
            .0
            .total_cmp(&keys[b].0)
            .then(keys[a].1.total_cmp(&keys[b].1))
            .then(data.tuples()[a].id().cmp(&data.tuples()[b].id()))
    });
    positions
}

/// Sort-filter skyline: tuples are presorted ascending by the entropy key
/// `E(t) = sum_i ln(1 + v_i)` over normalized values, then filtered in one
/// pass. The key is dominance-compatible, so kept tuples are final.
pub fn run_sfs(data: &Dataset) -> (SkylineResult, RunReport) {
    let total_start = Instant::now();
    let counter = ComparisonCounter::new();
    let norm = normalized_columns(data);
    let keys: Vec<(f64, f64)> = norm
        .iter()
        .map(|row| (row.iter().map(|v| (1.0 + v).ln()).sum(), 0.0))
        .collect();
    let positions = sorted_positions(data, &keys);

    let search_start = Instant::now();
    let mut window = Window::new();
    for &pos in &positions {
        window.offer_presorted(&data.tuples()[pos], data, data.order(), &counter);
    }
    let search_time = search_start.elapsed();
    let result = SkylineResult::from_ids(window.ids().iter().copied());
    let report = RunReport {
        algorithm: Algorithm::Sfs,
        strategy: None,
        skyline_size: result.len(),
        dominance_comparisons: counter.get(),
        search_time,
        total_time: total_start.elapsed(),
        stop_line_updates: None,
        early_stop: false,
    };
    (result, report)
}

/// Sort key choice for the sort-and-limit filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SalsaSort {
    /// Sort ascending by the minimum normalized coordinate, ties by
    /// coordinate sum. Pairs soundly with the max-coordinate stop point.
    #[default]
    MinValue,
    /// Sort ascending by the maximum normalized coordinate, ties by sum.
    /// The sort position gives no lower bound on unread coordinates, so the
    /// stop test is disabled under this key.
    MaxValue,
}

impl std::fmt::Display for SalsaSort {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SalsaSort::MinValue => "min",
            SalsaSort::MaxValue => "max",
        })
    }
}

/// Sort-and-limit skyline with the default min-coordinate sort and the
/// max-coordinate stop point.
pub fn run_salsa(data: &Dataset) -> (SkylineResult, RunReport) {
    run_salsa_with(data, SalsaSort::MinValue, true)
}

/// Sort-and-limit skyline with an explicit sort key. `early_termination`
/// exists so the stop rule can be audited against a full scan.
pub fn run_salsa_with(
    data: &Dataset,
    sort: SalsaSort,
    early_termination: bool,
) -> (SkylineResult, RunReport) {
    let total_start = Instant::now();
    let counter = ComparisonCounter::new();
    let norm = normalized_columns(data);
    let keys: Vec<(f64, f64)> = norm
        .iter()
        .map(|row| {
            let sum: f64 = row.iter().sum();
            let primary = match sort {
                SalsaSort::MinValue => row.iter().copied().fold(f64::INFINITY, f64::min),
                SalsaSort::MaxValue => row.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            };
            (primary, sum)
        })
        .collect();
    let positions = sorted_positions(data, &keys);

    let search_start = Instant::now();
    let mut window = Window::new();
    // Worst normalized coordinate of the best stop point seen so far. Under
    // the min sort, every coordinate of an unread tuple is at least the next
    // sort key, so `stop_value < key` means the stop point strictly dominates
    // everything unread. Strict comparison keeps exact duplicates of a
    // constant-coordinate stop point in the skyline.
    let mut stop_value = f64::INFINITY;
    let mut early_stop = false;
    for &pos in &positions {
        if early_termination && sort == SalsaSort::MinValue && stop_value < keys[pos].0 {
            early_stop = true;
            break;
        }
        if window.offer_presorted(&data.tuples()[pos], data, data.order(), &counter) {
            let worst = norm[pos].iter().copied().fold(f64::NEG_INFINITY, f64::max);
            stop_value = stop_value.min(worst);
        }
    }
    let search_time = search_start.elapsed();
    let result = SkylineResult::from_ids(window.ids().iter().copied());
    let report = RunReport {
        algorithm: Algorithm::Salsa,
        strategy: None,
        skyline_size: result.len(),
        dominance_comparisons: counter.get(),
        search_time,
        total_time: total_start.elapsed(),
        stop_line_updates: None,
        early_stop,
    };
    (result, report)
}

/// Default cardinality guard of the brute-force oracle.
pub const DEFAULT_ORACLE_BOUND: usize = 10_000;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("dataset has {n} tuples, exceeding the oracle safety bound of {bound}")]
    BoundExceeded { n: usize, bound: usize },
}

/// Quadratic all-pairs skyline by the literal definition: a tuple is a member
/// iff no tuple dominates it. Ground truth for every equivalence check.
pub fn run_oracle(data: &Dataset) -> Result<SkylineResult, OracleError> {
    run_oracle_with_bound(data, DEFAULT_ORACLE_BOUND)
}

pub fn run_oracle_with_bound(data: &Dataset, bound: usize) -> Result<SkylineResult, OracleError> {
    if data.len() > bound {
        return Err(OracleError::BoundExceeded {
            n: data.len(),
            bound,
        });
    }
    let order = data.order();
    let members = data
        .tuples()
        .iter()
        .filter(|t| !data.tuples().iter().any(|u| dominates_raw(u, t, order)))
        .map(Tuple::id);
    Ok(SkylineResult::from_ids(members))
}
