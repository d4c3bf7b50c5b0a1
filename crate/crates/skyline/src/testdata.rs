//! Shared fixtures for unit tests: the six-dimensional sample database used
//! throughout the module tests, plus proptest strategies for random datasets.

use proptest::prelude::*;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::core::{Dataset, Direction, OrderSpec, SkylineResult, Tuple};

/// Ten 6-dimensional tuples, smaller-is-better everywhere. Skyline is
/// {t0, t1, t3, t4, t5, t6}.
pub(crate) const SAMPLE: [[f64; 6]; 10] = [
    [7.5, 1.3, 7.5, 4.5, 5.3, 2.1],
    [4.7, 6.7, 6.7, 9.3, 3.8, 5.1],
    [8.4, 9.4, 5.3, 5.8, 6.7, 7.5],
    [5.3, 6.6, 6.7, 6.8, 5.8, 9.3],
    [8.4, 5.2, 5.1, 5.5, 4.1, 7.5],
    [9.1, 7.6, 2.6, 4.7, 7.3, 6.2],
    [5.3, 7.5, 1.9, 5.9, 3.4, 1.8],
    [5.3, 7.5, 6.7, 7.2, 6.3, 8.8],
    [6.7, 7.3, 7.6, 9.7, 5.3, 8.7],
    [7.5, 9.6, 4.8, 8.9, 9.5, 6.5],
];

pub(crate) fn sample_dataset() -> Dataset {
    let tuples = SAMPLE
        .iter()
        .enumerate()
        .map(|(id, row)| Tuple::new(id as u64, row.to_vec()))
        .collect();
    Dataset::new(tuples, OrderSpec::uniform(6, Direction::MinIsBetter)).unwrap()
}

pub(crate) fn sample_skyline() -> SkylineResult {
    SkylineResult::from_ids([0, 1, 3, 4, 5, 6])
}

/// Seeded random dataset on a value grid (grid = number of distinct values
/// per dimension; small grids force duplicates).
pub(crate) fn random_dataset(seed: u64, n: usize, d: usize, grid: u32) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tuples = (0..n)
        .map(|id| {
            let values = (0..d).map(|_| rng.random_range(0..grid) as f64).collect();
            Tuple::new(id as u64, values)
        })
        .collect();
    Dataset::new(tuples, OrderSpec::uniform(d, Direction::MinIsBetter)).unwrap()
}

pub(crate) type RawDataset = (Vec<Vec<f64>>, Vec<Direction>);

/// Random rows on a small integer grid plus random per-dimension directions.
pub(crate) fn arb_raw_dataset(n_max: usize, d_max: usize) -> impl Strategy<Value = RawDataset> {
    (1..=d_max).prop_flat_map(move |d| {
        let dirs = proptest::collection::vec(
            prop_oneof![Just(Direction::MinIsBetter), Just(Direction::MaxIsBetter)],
            d,
        );
        let rows = proptest::collection::vec(
            proptest::collection::vec((0u8..8).prop_map(f64::from), d),
            1..=n_max,
        );
        (rows, dirs)
    })
}

pub(crate) fn dataset_from_raw((rows, dirs): RawDataset) -> Dataset {
    let tuples = rows
        .into_iter()
        .enumerate()
        .map(|(id, values)| Tuple::new(id as u64, values))
        .collect();
    Dataset::new(tuples, OrderSpec::new(dirs)).unwrap()
}

/// The dataset plus its mirror image: every value negated, every direction
/// flipped. Dominance must be identical on both.
pub(crate) fn dataset_and_negated((rows, dirs): RawDataset) -> (Dataset, Dataset) {
    let negated_rows: Vec<Vec<f64>> = rows
        .iter()
        .map(|row| row.iter().map(|v| -v).collect())
        .collect();
    let data = dataset_from_raw((rows, dirs.clone()));
    let negated_tuples = negated_rows
        .into_iter()
        .enumerate()
        .map(|(id, values)| Tuple::new(id as u64, values))
        .collect();
    let flipped = Dataset::new(negated_tuples, OrderSpec::new(dirs).flipped()).unwrap();
    (data, flipped)
}
