//! Distances between points and between histograms.
//!
//! Three ground distances drive the engines: L1 (used directly for median
//! shift, and on cumulative vectors for the Wasserstein engines), squared
//! Euclidean (classical mean shift), and Wasserstein-1, which on a common
//! unit-spaced grid reduces to the L1 distance between cumulative vectors.

use crate::error::{Error, Result};
use crate::histogram::Histogram;
use serde::{Deserialize, Serialize};

/// Which ground distance an engine or merge step uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceKind {
    /// Sum of absolute coordinate differences.
    L1,
    /// Squared Euclidean norm of the difference (no square root).
    SquaredEuclidean,
    /// Wasserstein-1 between histograms on a shared unit-spaced grid.
    Wasserstein1,
}

/// L1 distance between two equal-length slices. Callers check lengths.
pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Squared Euclidean distance between two equal-length slices.
pub fn squared_euclidean(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Wasserstein-1 distance between two histograms on the same grid:
/// the L1 distance between their cumulative vectors.
pub fn wasserstein1(a: &Histogram, b: &Histogram) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(l1(a.cumulative().values(), b.cumulative().values()))
}

/// Distance between two raw coordinate vectors under `kind`.
///
/// For [`DistanceKind::Wasserstein1`] the slices are first validated as
/// histograms (nonnegative, unit mass), so this is the safe entry point for
/// externally supplied data; the engines themselves validate once up front
/// and then work on cumulative vectors directly.
pub fn distance(kind: DistanceKind, a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    match kind {
        DistanceKind::L1 => Ok(l1(a, b)),
        DistanceKind::SquaredEuclidean => Ok(squared_euclidean(a, b)),
        DistanceKind::Wasserstein1 => {
            let ha = as_histogram(a)?;
            let hb = as_histogram(b)?;
            Ok(l1(ha.cumulative().values(), hb.cumulative().values()))
        }
    }
}

fn as_histogram(v: &[f64]) -> Result<Histogram> {
    Histogram::new(v.to_vec()).map_err(|e| Error::InvalidHistogram {
        reason: e.to_string(),
    })
}
