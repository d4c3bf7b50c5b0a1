//! Skyline computation on sorted dimensional indexes.
//!
//! The skyline of a multidimensional dataset is the set of tuples no other
//! tuple dominates. This crate builds one sorted index per dimension,
//! partitions each into equal-value blocks, and confirms candidates by
//! comparing them only against the skyline tuples already traversed in a
//! single dimension — a bounded range instead of the whole skyline. Any
//! confirmed tuple additionally defines a stop line whose traversal proves the
//! skyline complete, ending the run early.
//!
//! The crate ships:
//!
//! - [`sdi`]: the range-search engine with breadth-first and depth-first
//!   dimension switching and an optional trace stream.
//! - [`baselines`]: the memory-window nested loop (BNL), two presort filters
//!   (SFS, SaLSa), and the quadratic brute-force oracle used as ground truth.
//! - [`datagen`]: a deterministic generator for independent, correlated, and
//!   anti-correlated benchmark data.
//! - [`bench`]: CSV ingestion, algorithm dispatch with result cross-checking,
//!   and report emission. The `skybench` binary exposes it on the command
//!   line.
//!
//! Every dimension carries its own order direction, and ordered categorical
//! values are rank-resolved at ingestion, so mixed criteria need no value
//! normalization anywhere in the engine.

pub mod baselines;
pub mod bench;
pub mod core;
pub mod datagen;
pub mod index;
pub mod report;
pub mod sdi;

#[cfg(test)]
mod testdata;

pub use crate::core::{
    compare_values, dominates, incomparable, ComparisonCounter, DataError, Dataset, Direction,
    OrderSpec, RankMap, SkylineResult, Tuple, TupleId, ValueOrdering,
};
pub use crate::report::{Algorithm, RunReport};
pub use crate::sdi::Switching;
