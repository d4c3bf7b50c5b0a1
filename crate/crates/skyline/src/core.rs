//! Domain types shared by every skyline algorithm: tuples, per-dimension
//! total orders, and the dominance test with its comparison counter.
//!
//! A tuple `t` dominates a tuple `u` when `t` is not worse than `u` in every
//! dimension and strictly better in at least one. The skyline of a dataset is
//! the set of tuples no other tuple dominates. Each dimension carries its own
//! direction (smaller-is-better or greater-is-better), so mixed criteria never
//! require value normalization.

use std::cell::Cell;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// Stable tuple identifier, unique within a dataset.
pub type TupleId = u64;

/// Errors raised while assembling a [`Dataset`].
#[derive(Debug, Error)]
pub enum DataError {
    #[error("dataset contains no tuples")]
    Empty,
    #[error("dataset tuples have no dimensions")]
    ZeroDimensions,
    #[error("tuple {id} has {got} values, expected {expected}")]
    DimensionMismatch {
        id: TupleId,
        got: usize,
        expected: usize,
    },
    #[error("duplicate tuple id {0}")]
    DuplicateId(TupleId),
    #[error("tuple {id} has a non-finite value in dimension {dim}")]
    NonFinite { id: TupleId, dim: usize },
    #[error("order spec covers {got} dimensions, dataset has {expected}")]
    OrderArity { got: usize, expected: usize },
    #[error("rank {rank} is assigned to both {first:?} and {second:?}")]
    RankCollision {
        rank: i64,
        first: String,
        second: String,
    },
}

/// Which end of a dimension's numeric order counts as better.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Direction {
    /// Smaller values win (the usual convention for cost-like criteria).
    #[default]
    MinIsBetter,
    /// Greater values win.
    MaxIsBetter,
}

/// Injective mapping from category tokens to integer ranks, resolved at
/// ingestion so every internal comparison is numeric.
#[derive(Debug, Clone, Default)]
pub struct RankMap {
    ranks: HashMap<String, i64>,
}

impl RankMap {
    /// Builds a rank map, rejecting two tokens that share a rank.
    pub fn new<I, S>(pairs: I) -> Result<Self, DataError>
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        let mut ranks = HashMap::new();
        let mut seen: HashMap<i64, String> = HashMap::new();
        for (token, rank) in pairs {
            let token = token.into();
            if let Some(first) = seen.get(&rank) {
                if first != &token {
                    return Err(DataError::RankCollision {
                        rank,
                        first: first.clone(),
                        second: token,
                    });
                }
            }
            seen.insert(rank, token.clone());
            ranks.insert(token, rank);
        }
        Ok(Self { ranks })
    }

    pub fn rank(&self, token: &str) -> Option<i64> {
        self.ranks.get(token).copied()
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
}

/// Per-dimension ordering contract: one [`Direction`] per dimension plus an
/// optional category rank map applied when a dataset is ingested.
#[derive(Debug, Clone, Default)]
pub struct OrderSpec {
    directions: Vec<Direction>,
    rank_maps: Vec<Option<RankMap>>,
}

impl OrderSpec {
    pub fn new(directions: Vec<Direction>) -> Self {
        let rank_maps = vec![None; directions.len()];
        Self {
            directions,
            rank_maps,
        }
    }

    /// All `dims` dimensions share one direction.
    pub fn uniform(dims: usize, direction: Direction) -> Self {
        Self::new(vec![direction; dims])
    }

    pub fn with_rank_map(mut self, dim: usize, map: RankMap) -> Self {
        self.rank_maps[dim] = Some(map);
        self
    }

    pub fn dims(&self) -> usize {
        self.directions.len()
    }

    pub fn direction(&self, dim: usize) -> Direction {
        self.directions[dim]
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn rank_map(&self, dim: usize) -> Option<&RankMap> {
        self.rank_maps[dim].as_ref()
    }

    /// Same dimensions with every direction reversed.
    pub fn flipped(&self) -> Self {
        let directions = self
            .directions
            .iter()
            .map(|d| match d {
                Direction::MinIsBetter => Direction::MaxIsBetter,
                Direction::MaxIsBetter => Direction::MinIsBetter,
            })
            .collect();
        Self {
            directions,
            rank_maps: self.rank_maps.clone(),
        }
    }
}

/// One data point: a stable id plus its `d` dimensional values.
#[derive(Debug, Clone, PartialEq)]
pub struct Tuple {
    id: TupleId,
    values: Vec<f64>,
}

impl Tuple {
    pub fn new(id: TupleId, values: Vec<f64>) -> Self {
        Self { id, values }
    }

    pub fn id(&self) -> TupleId {
        self.id
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, dim: usize) -> f64 {
        self.values[dim]
    }

    pub fn dims(&self) -> usize {
        self.values.len()
    }
}

/// An immutable collection of tuples with a shared [`OrderSpec`].
#[derive(Debug, Clone)]
pub struct Dataset {
    tuples: Vec<Tuple>,
    order: OrderSpec,
    by_id: HashMap<TupleId, usize>,
}

impl Dataset {
    /// Validates and seals a dataset: equal dimensionality everywhere, unique
    /// ids, finite values. Negative zero is canonicalized to positive zero so
    /// value equality and sort order always agree.
    pub fn new(mut tuples: Vec<Tuple>, order: OrderSpec) -> Result<Self, DataError> {
        if tuples.is_empty() {
            return Err(DataError::Empty);
        }
        let dims = tuples[0].dims();
        if dims == 0 {
            return Err(DataError::ZeroDimensions);
        }
        if order.dims() != dims {
            return Err(DataError::OrderArity {
                got: order.dims(),
                expected: dims,
            });
        }
        let mut by_id = HashMap::with_capacity(tuples.len());
        for (pos, tuple) in tuples.iter_mut().enumerate() {
            if tuple.dims() != dims {
                return Err(DataError::DimensionMismatch {
                    id: tuple.id,
                    got: tuple.dims(),
                    expected: dims,
                });
            }
            for (dim, value) in tuple.values.iter_mut().enumerate() {
                if !value.is_finite() {
                    return Err(DataError::NonFinite { id: tuple.id, dim });
                }
                if *value == 0.0 {
                    *value = 0.0;
                }
            }
            if by_id.insert(tuple.id, pos).is_some() {
                return Err(DataError::DuplicateId(tuple.id));
            }
        }
        Ok(Self {
            tuples,
            order,
            by_id,
        })
    }

    /// Number of tuples (`n`).
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty datasets
    }

    /// Dimensionality (`d`).
    pub fn dims(&self) -> usize {
        self.tuples[0].dims()
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    pub fn tuples(&self) -> &[Tuple] {
        &self.tuples
    }

    /// Tuple lookup by id. Panics if the id is not part of this dataset.
    pub fn tuple(&self, id: TupleId) -> &Tuple {
        &self.tuples[self.position(id)]
    }

    /// Dense position of a tuple within the dataset, usable as a vector key.
    /// Panics if the id is not part of this dataset.
    pub fn position(&self, id: TupleId) -> usize {
        match self.by_id.get(&id) {
            Some(&pos) => pos,
            None => panic!("tuple id {id} is not part of this dataset"),
        }
    }

    pub fn contains_id(&self, id: TupleId) -> bool {
        self.by_id.contains_key(&id)
    }
}

/// A computed skyline: the set of member tuple ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SkylineResult {
    members: BTreeSet<TupleId>,
}

impl SkylineResult {
    pub fn from_ids<I: IntoIterator<Item = TupleId>>(ids: I) -> Self {
        Self {
            members: ids.into_iter().collect(),
        }
    }

    pub fn members(&self) -> &BTreeSet<TupleId> {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = TupleId> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, id: TupleId) -> bool {
        self.members.contains(&id)
    }

    /// Skyline size (`m`).
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl fmt::Display for SkylineResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, id) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "t{id}")?;
        }
        write!(f, "}}")
    }
}

/// Whole-tuple dominance comparison counter, owned by a single run.
///
/// Every [`dominates`] call bumps it by exactly one regardless of outcome, so
/// counts are comparable across algorithms and across runs.
#[derive(Debug, Default)]
pub struct ComparisonCounter {
    count: Cell<u64>,
}

impl ComparisonCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bump(&self) {
        self.count.set(self.count.get() + 1);
    }

    pub fn get(&self) -> u64 {
        self.count.get()
    }
}

/// Outcome of a single-dimension value comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueOrdering {
    Better,
    Equal,
    Worse,
}

/// Compares two values of dimension `dim` under the configured direction.
/// Antisymmetric and transitive; total on finite inputs.
pub fn compare_values(a: f64, b: f64, dim: usize, order: &OrderSpec) -> ValueOrdering {
    use std::cmp::Ordering;
    match (a.total_cmp(&b), order.direction(dim)) {
        (Ordering::Equal, _) => ValueOrdering::Equal,
        (Ordering::Less, Direction::MinIsBetter) | (Ordering::Greater, Direction::MaxIsBetter) => {
            ValueOrdering::Better
        }
        _ => ValueOrdering::Worse,
    }
}

/// Dominance test without counter bookkeeping. Shared by the counted entry
/// point, the brute-force oracle, and debug invariant checks.
///
/// Panics if the tuples disagree on dimensionality.
pub(crate) fn dominates_raw(t: &Tuple, u: &Tuple, order: &OrderSpec) -> bool {
    let tv = t.values();
    let uv = u.values();
    assert_eq!(
        tv.len(),
        uv.len(),
        "dominance requires equal dimensionality (tuple {} has {}, tuple {} has {})",
        t.id(),
        tv.len(),
        u.id(),
        uv.len()
    );
    debug_assert_eq!(order.dims(), tv.len());
    let mut strictly_better = false;
    for ((&a, &b), dir) in tv.iter().zip(uv).zip(order.directions()) {
        match dir {
            Direction::MinIsBetter => {
                if a > b {
                    return false;
                }
                if a < b {
                    strictly_better = true;
                }
            }
            Direction::MaxIsBetter => {
                if a < b {
                    return false;
                }
                if a > b {
                    strictly_better = true;
                }
            }
        }
    }
    strictly_better
}

/// True iff `t` dominates `u`: not worse everywhere and strictly better in at
/// least one dimension. Bumps `counter` exactly once per call regardless of
/// outcome. Panics if the tuples disagree on dimensionality.
pub fn dominates(t: &Tuple, u: &Tuple, order: &OrderSpec, counter: &ComparisonCounter) -> bool {
    counter.bump();
    dominates_raw(t, u, order)
}

/// True iff neither tuple dominates the other and the tuples differ. Tuples
/// with identical values are mutually non-dominating but equal, not
/// incomparable. Costs two counted comparisons unless the first short-circuits.
pub fn incomparable(t: &Tuple, u: &Tuple, order: &OrderSpec, counter: &ComparisonCounter) -> bool {
    if dominates(t, u, order, counter) || dominates(u, t, order, counter) {
        return false;
    }
    t.values() != u.values()
}
