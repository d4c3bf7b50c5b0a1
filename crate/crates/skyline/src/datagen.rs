//! Deterministic synthetic dataset generator for the three benchmark
//! distributions: independent, correlated, and anti-correlated, all on
//! [0, 1] with smaller-is-better orders.

use std::fmt;
use std::str::FromStr;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, Normal};
use thiserror::Error;

use crate::core::{Dataset, Direction, OrderSpec, Tuple};

/// Standard deviation of the per-dimension perturbation around the shared
/// base value of a correlated tuple.
pub const CORRELATED_NOISE_SD: f64 = 0.05;

/// Standard deviation of the per-tuple offset along the all-ones diagonal for
/// anti-correlated data: the thickness of the band around the
/// `sum_i v_i = d / 2` plane. Without it every tuple would sit exactly on the
/// plane and be mutually incomparable.
pub const ANTI_PLANE_NOISE_SD: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributionKind {
    /// Every value i.i.d. uniform on [0, 1].
    Independent,
    /// One uniform base value per tuple, plus clamped Gaussian noise per
    /// dimension, so good tuples tend to be good everywhere.
    Correlated,
    /// Tuple values allocated across dimensions near the hyperplane
    /// `sum_i v_i = d / 2` with large within-plane variance, so being good in
    /// one dimension costs the others.
    AntiCorrelated,
}

impl fmt::Display for DistributionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistributionKind::Independent => "independent",
            DistributionKind::Correlated => "correlated",
            DistributionKind::AntiCorrelated => "anticorrelated",
        })
    }
}

#[derive(Debug, Error)]
#[error("unknown distribution {0:?}, expected independent|correlated|anticorrelated")]
pub struct ParseDistributionError(String);

impl FromStr for DistributionKind {
    type Err = ParseDistributionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "independent" | "indep" => Ok(DistributionKind::Independent),
            "correlated" | "corr" => Ok(DistributionKind::Correlated),
            "anticorrelated" | "anti-correlated" | "anti" => Ok(DistributionKind::AntiCorrelated),
            other => Err(ParseDistributionError(other.to_string())),
        }
    }
}

/// Full recipe for one synthetic dataset. Identical specs produce identical
/// datasets, byte for byte.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub distribution: DistributionKind,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    /// Optional quantization step: every value is rounded to the nearest
    /// multiple, forcing duplicate dimensional values.
    pub duplicate_factor: Option<f64>,
}

#[derive(Debug, Error)]
pub enum GenError {
    #[error("cardinality must be at least 1")]
    ZeroCardinality,
    #[error("dimensionality must be at least 1")]
    ZeroDimensionality,
    #[error("duplicate factor must lie in (0, 1], got {0}")]
    BadDuplicateFactor(f64),
}

/// Generates the dataset described by `spec`, with ids 0..n-1 and every
/// dimension ordered smaller-is-better.
pub fn generate(spec: &GenSpec) -> Result<Dataset, GenError> {
    if spec.n == 0 {
        return Err(GenError::ZeroCardinality);
    }
    if spec.d == 0 {
        return Err(GenError::ZeroDimensionality);
    }
    if let Some(q) = spec.duplicate_factor {
        if !(q > 0.0 && q <= 1.0) {
            return Err(GenError::BadDuplicateFactor(q));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let noise = Normal::new(0.0, CORRELATED_NOISE_SD).expect("constant parameters");
    let thickness = Normal::new(0.0, ANTI_PLANE_NOISE_SD).expect("constant parameters");
    let mut tuples = Vec::with_capacity(spec.n);
    for id in 0..spec.n {
        let mut values = match spec.distribution {
            DistributionKind::Independent => (0..spec.d)
                .map(|_| rng.random::<f64>())
                .collect::<Vec<f64>>(),
            DistributionKind::Correlated => {
                let base = rng.random::<f64>();
                (0..spec.d)
                    .map(|_| {
                        // Truncated normal by rejection: a saturating clamp
                        // would pile mass on exactly 0.0/1.0, and the
                        // resulting exact corner ties collapse the skyline as
                        // d grows. Acceptance is at least ~1/2, since base is
                        // inside [0, 1] and the noise is symmetric.
                        loop {
                            let v = base + noise.sample(&mut rng);
                            if (0.0..=1.0).contains(&v) {
                                break v;
                            }
                        }
                    })
                    .collect()
            }
            DistributionKind::AntiCorrelated => anti_correlated_row(&mut rng, spec.d, &thickness),
        };
        if let Some(q) = spec.duplicate_factor {
            for v in &mut values {
                *v = ((*v / q).round() * q).clamp(0.0, 1.0);
            }
        }
        tuples.push(Tuple::new(id as u64, values));
    }
    let order = OrderSpec::uniform(spec.d, Direction::MinIsBetter);
    Ok(Dataset::new(tuples, order).expect("generated data is structurally valid"))
}

/// One anti-correlated tuple: a symmetric Dirichlet(1) weight vector (drawn as
/// normalized unit exponentials) scaled so the row sums to d/2, shifted by the
/// shared plane-thickness offset, then clamped. With d = 1 the plane collapses
/// to the single value 0.5 plus the offset.
fn anti_correlated_row(rng: &mut ChaCha8Rng, d: usize, thickness: &Normal<f64>) -> Vec<f64> {
    let shift = thickness.sample(rng);
    if d == 1 {
        return vec![(0.5 + shift).clamp(0.0, 1.0)];
    }
    let draws: Vec<f64> = (0..d).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = draws.iter().sum();
    let scale = d as f64 / 2.0;
    draws
        .into_iter()
        .map(|e| (e / total * scale + shift).clamp(0.0, 1.0))
        .collect()
}
