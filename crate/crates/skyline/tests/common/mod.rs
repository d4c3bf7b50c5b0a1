//! Shared fixtures for the integration suites.

// Each integration test binary compiles this module separately and uses a
// different subset of it.
#![allow(dead_code, unused_imports)]

use std::path::PathBuf;
use std::sync::{Mutex, MutexGuard, PoisonError};

use skyline::bench::load_dataset;
use skyline::core::{Dataset, SkylineResult};

/// Path of the bundled 10-tuple, 6-dimension sample dataset.
pub fn sample_csv_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/sample.csv")
}

pub fn sample_dataset() -> Dataset {
    load_dataset(&sample_csv_path(), None).expect("bundled sample dataset loads")
}

pub fn sample_skyline() -> SkylineResult {
    SkylineResult::from_ids([0, 1, 3, 4, 5, 6])
}

static GATE: Mutex<()> = Mutex::new(());

/// Serializes timed tests within one binary so per-test wall-clock budgets are
/// not distorted by thread contention.
pub fn serial() -> MutexGuard<'static, ()> {
    GATE.lock().unwrap_or_else(PoisonError::into_inner)
}
