//! Range-bounded skyline computation over sorted dimensional indexes.
//!
//! The engine walks the blocks of the dimensional indexes in a Round-Robin
//! over the cardinality-sorted scan order. Each block is reduced to its block
//! skyline, and each surviving candidate is confirmed against only the
//! skyline tuples already traversed in the *current* dimension, never against
//! the whole skyline. A block-skyline tuple with no dominator in that range is
//! a skyline tuple outright, so the skyline grows progressively and nothing is
//! ever retracted.
//!
//! Every confirmed tuple defines a stop line: its block offsets across all
//! dimensions. Once every cursor has moved past the best stop line's blocks,
//! the skyline is complete and the run terminates early. The run also
//! terminates as soon as any single index is fully traversed.

use std::time::Instant;

use crate::baselines::{Offer, Window};
use crate::core::{dominates, ComparisonCounter, Dataset, SkylineResult, TupleId};
use crate::index::{IndexEntry, IndexSet};
use crate::report::{Algorithm, RunReport};

/// Dimension-switching strategy of the block traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Switching {
    /// Round-Robin: one block per dimension, then move on.
    BreadthFirst,
    /// Stay in a dimension while its blocks keep yielding newly confirmed
    /// skyline tuples; switch at the first block that yields none.
    DepthFirst,
}

impl std::fmt::Display for Switching {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Switching::BreadthFirst => "bfs",
            Switching::DepthFirst => "dfs",
        })
    }
}

/// Lifecycle mark of a tuple during a run. Transitions are monotone: once
/// dominated or skyline, a tuple never changes state again.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TupleStatus {
    #[default]
    Unseen,
    Dominated,
    Skyline,
}

/// The per-dimension block offsets of one skyline tuple, plus its quality key.
///
/// Lines compare by (max block offset, mean block offset), smaller first; the
/// mean is compared through the offset sum, which orders identically at fixed
/// dimensionality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopLine {
    owner: TupleId,
    block_offsets: Vec<usize>,
    max_offset: usize,
    offset_sum: usize,
}

impl StopLine {
    pub fn new(owner: TupleId, indexes: &IndexSet) -> Self {
        let block_offsets: Vec<usize> = indexes
            .indexes()
            .iter()
            .map(|index| index.block_offset_of(owner))
            .collect();
        let max_offset = block_offsets.iter().copied().max().unwrap_or(0);
        let offset_sum = block_offsets.iter().sum();
        Self {
            owner,
            block_offsets,
            max_offset,
            offset_sum,
        }
    }

    pub fn owner(&self) -> TupleId {
        self.owner
    }

    pub fn block_offsets(&self) -> &[usize] {
        &self.block_offsets
    }

    pub fn max_offset(&self) -> usize {
        self.max_offset
    }

    pub fn mean_offset(&self) -> f64 {
        self.offset_sum as f64 / self.block_offsets.len() as f64
    }

    fn quality(&self) -> (usize, usize) {
        (self.max_offset, self.offset_sum)
    }
}

/// Keeps whichever of the incumbent line and the candidate's line has the
/// smaller quality key. Ties keep the incumbent. The bool reports whether the
/// line changed (installing the first line counts as a change).
pub fn update_stop_line(
    current: Option<StopLine>,
    candidate: TupleId,
    indexes: &IndexSet,
) -> (StopLine, bool) {
    let challenger = StopLine::new(candidate, indexes);
    match current {
        None => (challenger, true),
        Some(incumbent) => {
            if challenger.quality() < incumbent.quality() {
                (challenger, true)
            } else {
                (incumbent, false)
            }
        }
    }
}

/// Number of (entry, dimension) pairs the line covers: entries whose block
/// offset strictly exceeds the line's block offset in that dimension. Entries
/// sharing the owner's block are not covered.
pub fn stop_line_coverage(line: &StopLine, indexes: &IndexSet) -> usize {
    indexes
        .indexes()
        .iter()
        .zip(line.block_offsets())
        .map(|(index, &owner_block)| {
            (owner_block + 1..index.distinct_count())
                .map(|b| index.block(b).unwrap().len())
                .sum::<usize>()
        })
        .sum()
}

/// Mutable state of one range-search run.
pub struct SkylineState<'a> {
    data: &'a Dataset,
    indexes: &'a IndexSet,
    status: Vec<TupleStatus>,
    /// Global skyline in confirmation order.
    skyline: Vec<TupleId>,
    /// Per-dimension confirmed lists: skyline tuples whose block in that
    /// dimension has been traversed, in confirmation order.
    per_dim: Vec<Vec<TupleId>>,
    /// Membership mirror of `per_dim`, keyed by dataset position.
    in_per_dim: Vec<Vec<bool>>,
    /// Next block offset to traverse, per dimension.
    cursors: Vec<usize>,
    counter: ComparisonCounter,
}

impl<'a> SkylineState<'a> {
    pub fn new(data: &'a Dataset, indexes: &'a IndexSet) -> Self {
        let n = data.len();
        let d = data.dims();
        Self {
            data,
            indexes,
            status: vec![TupleStatus::Unseen; n],
            skyline: Vec::new(),
            per_dim: vec![Vec::new(); d],
            in_per_dim: vec![vec![false; n]; d],
            cursors: vec![0; d],
            counter: ComparisonCounter::new(),
        }
    }

    pub fn status_of(&self, id: TupleId) -> TupleStatus {
        self.status[self.data.position(id)]
    }

    /// Confirmed skyline ids in confirmation order.
    pub fn skyline_ids(&self) -> &[TupleId] {
        &self.skyline
    }

    /// The confirmed list of one dimension (the comparison range).
    pub fn confirmed_in(&self, dim: usize) -> &[TupleId] {
        &self.per_dim[dim]
    }

    pub fn cursors(&self) -> &[usize] {
        &self.cursors
    }

    pub fn cursor_mut(&mut self, dim: usize) -> &mut usize {
        &mut self.cursors[dim]
    }

    pub fn comparisons(&self) -> u64 {
        self.counter.get()
    }

    fn mark(&mut self, id: TupleId, status: TupleStatus) {
        let pos = self.data.position(id);
        debug_assert!(
            self.status[pos] == TupleStatus::Unseen || self.status[pos] == status,
            "tuple {id} moved from {:?} to {status:?}",
            self.status[pos]
        );
        self.status[pos] = status;
    }

    /// Reduces a block to its block skyline. Tuples already marked dominated
    /// are skipped; tuples already confirmed as skyline stay in the nested
    /// loop because they may dominate new tuples. Freshly dominated tuples are
    /// marked. Blocks with a single surviving entry come back without any
    /// dominance comparison.
    pub fn block_skyline(&mut self, _dim: usize, block: &[IndexEntry]) -> Vec<TupleId> {
        let data = self.data;
        let order = data.order();
        let mut window = Window::new();
        let mut kept = Vec::with_capacity(block.len().min(4));
        for entry in block {
            let id = entry.tuple_id;
            if self.status[data.position(id)] == TupleStatus::Dominated {
                continue;
            }
            match window.offer(data.tuple(id), data, order, &self.counter) {
                Offer::Kept { evicted } => {
                    kept.push(id);
                    for loser in evicted {
                        kept.retain(|&k| k != loser);
                        self.mark(loser, TupleStatus::Dominated);
                    }
                }
                Offer::Rejected => self.mark(id, TupleStatus::Dominated),
            }
        }
        kept
    }

    /// Confirms or rejects a block-skyline tuple of the block just traversed
    /// in `dim`, comparing only against the dimension's confirmed list. On
    /// success the tuple joins the global skyline and the list; on failure it
    /// is marked dominated.
    pub fn confirm_skyline(&mut self, t: TupleId, dim: usize) -> bool {
        debug_assert_eq!(
            self.indexes.index(dim).block_offset_of(t) + 1,
            self.cursors[dim],
            "confirmation must happen while the tuple's block is current"
        );
        debug_assert_eq!(self.status_of(t), TupleStatus::Unseen);
        let data = self.data;
        let order = data.order();
        let candidate = data.tuple(t);
        for &s in &self.per_dim[dim] {
            if dominates(data.tuple(s), candidate, order, &self.counter) {
                self.mark(t, TupleStatus::Dominated);
                return false;
            }
        }
        self.mark(t, TupleStatus::Skyline);
        self.skyline.push(t);
        self.push_per_dim(t, dim);
        true
    }

    /// Registers an already-confirmed skyline tuple in the confirmed list of a
    /// dimension whose cursor just traversed its block, without any dominance
    /// comparison. No-op if already registered. This keeps the per-dimension
    /// range complete for later confirmations in that dimension.
    pub fn absorb_known_skyline(&mut self, t: TupleId, dim: usize) {
        debug_assert_eq!(self.status_of(t), TupleStatus::Skyline);
        self.push_per_dim(t, dim);
    }

    fn push_per_dim(&mut self, t: TupleId, dim: usize) {
        let pos = self.data.position(t);
        if !self.in_per_dim[dim][pos] {
            self.in_per_dim[dim][pos] = true;
            self.per_dim[dim].push(t);
        }
    }

    /// True iff a stop line exists and every cursor has moved past its block,
    /// i.e. each stop-line block has itself been fully traversed.
    pub fn should_stop(&self, line: Option<&StopLine>) -> bool {
        line.is_some_and(|line| {
            self.cursors
                .iter()
                .zip(line.block_offsets())
                .all(|(&cursor, &owner_block)| cursor > owner_block)
        })
    }

    fn into_result(self) -> (SkylineResult, u64) {
        let comparisons = self.counter.get();
        (SkylineResult::from_ids(self.skyline), comparisons)
    }
}

/// One record of the optional trace stream. Each event names the dimension,
/// the block offset, and the tuple concerned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceEvent {
    BlockTraversed {
        dim: usize,
        block: usize,
        tuple: TupleId,
    },
    TupleConfirmed {
        dim: usize,
        block: usize,
        tuple: TupleId,
    },
    TupleRejected {
        dim: usize,
        block: usize,
        tuple: TupleId,
    },
    StopLineUpdated {
        dim: usize,
        block: usize,
        tuple: TupleId,
    },
    Stopped {
        dim: usize,
        block: usize,
        tuple: TupleId,
    },
}

impl std::fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (name, dim, block, tuple) = match *self {
            TraceEvent::BlockTraversed { dim, block, tuple } => {
                ("block-traversed", dim, block, tuple)
            }
            TraceEvent::TupleConfirmed { dim, block, tuple } => {
                ("tuple-confirmed", dim, block, tuple)
            }
            TraceEvent::TupleRejected { dim, block, tuple } => {
                ("tuple-rejected", dim, block, tuple)
            }
            TraceEvent::StopLineUpdated { dim, block, tuple } => {
                ("stop-line-updated", dim, block, tuple)
            }
            TraceEvent::Stopped { dim, block, tuple } => ("stopped", dim, block, tuple),
        };
        write!(f, "{name} dim={dim} block={block} tuple={tuple}")
    }
}

/// Runs the range-search engine and returns the exact skyline plus metrics.
pub fn run_sdi_rs(data: &Dataset, switching: Switching) -> (SkylineResult, RunReport) {
    let (result, report, _) = run_internal(data, switching, false);
    (result, report)
}

/// As [`run_sdi_rs`], additionally collecting the trace stream.
pub fn run_sdi_rs_traced(
    data: &Dataset,
    switching: Switching,
) -> (SkylineResult, RunReport, Vec<TraceEvent>) {
    run_internal(data, switching, true)
}

fn run_internal(
    data: &Dataset,
    switching: Switching,
    trace_on: bool,
) -> (SkylineResult, RunReport, Vec<TraceEvent>) {
    let total_start = Instant::now();
    let indexes = IndexSet::build(data);
    let search_start = Instant::now();

    let mut state = SkylineState::new(data, &indexes);
    let mut line: Option<StopLine> = None;
    let mut line_updates = 0u64;
    let mut early_stop = false;
    let mut trace: Vec<TraceEvent> = Vec::new();
    let scan = indexes.scan_order().to_vec();

    'run: loop {
        for &dim in &scan {
            // In depth-first switching this inner loop eats blocks of the same
            // dimension while they keep producing new skyline tuples.
            loop {
                let block_offset = state.cursors[dim];
                let Some(block) = indexes.index(dim).block(block_offset) else {
                    // The whole index has been traversed: every tuple has been
                    // resolved, so the skyline is complete.
                    break 'run;
                };
                state.cursors[dim] = block_offset + 1;
                if trace_on {
                    trace.push(TraceEvent::BlockTraversed {
                        dim,
                        block: block_offset,
                        tuple: block[0].tuple_id,
                    });
                }

                let survivors: Vec<TupleId> = if trace_on {
                    block
                        .iter()
                        .map(|e| e.tuple_id)
                        .filter(|&id| state.status_of(id) != TupleStatus::Dominated)
                        .collect()
                } else {
                    Vec::new()
                };

                let block_sky = state.block_skyline(dim, block);

                if trace_on {
                    for id in survivors {
                        if !block_sky.contains(&id) {
                            trace.push(TraceEvent::TupleRejected {
                                dim,
                                block: block_offset,
                                tuple: id,
                            });
                        }
                    }
                }

                let mut newly_confirmed = 0usize;
                for &t in &block_sky {
                    if state.status_of(t) == TupleStatus::Skyline {
                        state.absorb_known_skyline(t, dim);
                        continue;
                    }
                    if state.confirm_skyline(t, dim) {
                        newly_confirmed += 1;
                        if trace_on {
                            trace.push(TraceEvent::TupleConfirmed {
                                dim,
                                block: block_offset,
                                tuple: t,
                            });
                        }
                        let (next, changed) = update_stop_line(line.take(), t, &indexes);
                        if changed {
                            line_updates += 1;
                            if trace_on {
                                trace.push(TraceEvent::StopLineUpdated {
                                    dim,
                                    block: block_offset,
                                    tuple: t,
                                });
                            }
                        }
                        line = Some(next);
                    } else if trace_on {
                        trace.push(TraceEvent::TupleRejected {
                            dim,
                            block: block_offset,
                            tuple: t,
                        });
                    }
                }

                if state.should_stop(line.as_ref()) {
                    early_stop = true;
                    if trace_on {
                        let owner = line.as_ref().map(|l| l.owner()).unwrap_or_default();
                        trace.push(TraceEvent::Stopped {
                            dim,
                            block: block_offset,
                            tuple: owner,
                        });
                    }
                    break 'run;
                }

                match switching {
                    Switching::BreadthFirst => break,
                    Switching::DepthFirst => {
                        if newly_confirmed == 0 {
                            break;
                        }
                    }
                }
            }
        }
    }

    let search_time = search_start.elapsed();
    let total_time = total_start.elapsed();
    let (result, comparisons) = state.into_result();
    let report = RunReport {
        algorithm: Algorithm::SdiRs,
        strategy: Some(switching),
        skyline_size: result.len(),
        dominance_comparisons: comparisons,
        search_time,
        total_time,
        stop_line_updates: Some(line_updates),
        early_stop,
    };
    (result, report, trace)
}
