//! Per-dimension sorted indexes partitioned into equal-value blocks.
//!
//! A dimensional index orders all tuples of a dataset by their value in one
//! dimension, better values first and ties broken by ascending tuple id.
//! Consecutive entries sharing a value form a block; blocks are the traversal
//! unit of the range-search algorithm and of stop-line bookkeeping.

use std::collections::HashMap;

use crate::core::{Dataset, Direction, TupleId};

/// One index slot: the tuple's value in the indexed dimension plus its id.
/// Two 64-bit words, so an index costs exactly twice the column it covers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexEntry {
    pub value: f64,
    pub tuple_id: TupleId,
}

/// Sorted index over one dimension with block partition bookkeeping.
#[derive(Debug, Clone)]
pub struct DimensionalIndex {
    dimension: usize,
    entries: Vec<IndexEntry>,
    /// Entry offset of each block's first entry, ascending.
    block_starts: Vec<usize>,
    /// Tuple id to block offset, for O(1) `block_offset_of`.
    block_of: HashMap<TupleId, usize>,
}

impl DimensionalIndex {
    /// Builds the index for `dim`. Deterministic: entries are ordered by value
    /// under the dimension's direction, ties by ascending tuple id.
    pub fn build(data: &Dataset, dim: usize) -> Self {
        let mut entries: Vec<IndexEntry> = data
            .tuples()
            .iter()
            .map(|t| IndexEntry {
                value: t.value(dim),
                tuple_id: t.id(),
            })
            .collect();
        let direction = data.order().direction(dim);
        entries.sort_unstable_by(|a, b| {
            let by_value = match direction {
                Direction::MinIsBetter => a.value.total_cmp(&b.value),
                Direction::MaxIsBetter => b.value.total_cmp(&a.value),
            };
            by_value.then_with(|| a.tuple_id.cmp(&b.tuple_id))
        });

        let mut block_starts = Vec::new();
        let mut block_of = HashMap::with_capacity(entries.len());
        for (offset, entry) in entries.iter().enumerate() {
            // Blocks split exactly where the value changes.
            if offset == 0 || entries[offset - 1].value != entry.value {
                block_starts.push(offset);
            }
            block_of.insert(entry.tuple_id, block_starts.len() - 1);
        }
        Self {
            dimension: dim,
            entries,
            block_starts,
            block_of,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Total entry count (`n`).
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[IndexEntry] {
        &self.entries
    }

    /// Number of blocks = number of distinct values in this dimension.
    pub fn distinct_count(&self) -> usize {
        self.block_starts.len()
    }

    /// Entries carrying a value that already occurred earlier in the index.
    pub fn duplicate_count(&self) -> usize {
        self.entries.len() - self.block_starts.len()
    }

    pub fn max_block_len(&self) -> usize {
        (0..self.distinct_count())
            .map(|b| self.block_end(b) - self.block_starts[b])
            .max()
            .unwrap_or(0)
    }

    fn block_end(&self, block: usize) -> usize {
        self.block_starts
            .get(block + 1)
            .copied()
            .unwrap_or(self.entries.len())
    }

    /// Entries of block `offset`, or `None` past the last block.
    pub fn block(&self, offset: usize) -> Option<&[IndexEntry]> {
        if offset >= self.block_starts.len() {
            return None;
        }
        Some(&self.entries[self.block_starts[offset]..self.block_end(offset)])
    }

    /// Returns the block under `cursor` and advances it; `None` at the end of
    /// the index.
    pub fn next_block<'a>(&'a self, cursor: &mut usize) -> Option<&'a [IndexEntry]> {
        let block = self.block(*cursor)?;
        *cursor += 1;
        Some(block)
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[IndexEntry]> {
        (0..self.distinct_count()).map(|b| self.block(b).unwrap())
    }

    /// 0-based offset of the block containing the tuple's entry. Panics if the
    /// tuple is not indexed here.
    pub fn block_offset_of(&self, id: TupleId) -> usize {
        match self.block_of.get(&id) {
            Some(&block) => block,
            None => panic!(
                "tuple id {id} is not present in the index of dimension {}",
                self.dimension
            ),
        }
    }
}

/// All `d` dimensional indexes of a dataset plus the scan order used by the
/// range-search algorithm: most-distinct dimension first, so single-entry
/// blocks are traversed before duplicate-heavy ones.
#[derive(Debug, Clone)]
pub struct IndexSet {
    indexes: Vec<DimensionalIndex>,
    scan_order: Vec<usize>,
}

impl IndexSet {
    pub fn build(data: &Dataset) -> Self {
        let indexes: Vec<DimensionalIndex> = (0..data.dims())
            .map(|dim| DimensionalIndex::build(data, dim))
            .collect();
        let mut scan_order: Vec<usize> = (0..data.dims()).collect();
        // Descending cardinality, ties by ascending dimension id.
        scan_order.sort_by_key(|&dim| (std::cmp::Reverse(indexes[dim].distinct_count()), dim));
        Self {
            indexes,
            scan_order,
        }
    }

    pub fn dims(&self) -> usize {
        self.indexes.len()
    }

    /// The dimensional index of dimension `dim`.
    #[allow(clippy::should_implement_trait)]
    pub fn index(&self, dim: usize) -> &DimensionalIndex {
        &self.indexes[dim]
    }

    pub fn indexes(&self) -> &[DimensionalIndex] {
        &self.indexes
    }

    pub fn scan_order(&self) -> &[usize] {
        &self.scan_order
    }
}
