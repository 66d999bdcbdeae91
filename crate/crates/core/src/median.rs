//! Coordinate-wise lower medians.
//!
//! The engines need a *deterministic* median: for an even count there is a
//! whole interval of minimizers of the summed absolute deviation, and we
//! always pick the lower one — the sorted order statistic at index
//! `(count - 1) / 2`. That choice keeps every engine output a function of
//! its input bytes alone, which the stationarity guarantees rely on.

use crate::error::{Error, Result};

/// Lower median of a nonempty slice: the `(len - 1) / 2`-th smallest value.
/// NaN-free input is assumed; ordering uses `total_cmp` so ties and signed
/// zeros stay deterministic.
pub fn lower_median(values: &[f64]) -> f64 {
    debug_assert!(!values.is_empty());
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    sorted[(sorted.len() - 1) / 2]
}

/// Coordinate-wise lower median of a nonempty set of equal-length points.
pub fn coordinate_median(points: &[Vec<f64>]) -> Result<Vec<f64>> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let dim = points[0].len();
    for p in points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.len(),
            });
        }
    }
    let indices: Vec<usize> = (0..points.len()).collect();
    Ok(coordinate_median_of(points, &indices))
}

/// Coordinate-wise lower median over a nonempty index subset of `points`.
/// This is the engines' hot path: the subset is an active set and the
/// points have already been validated for shared dimension.
pub(crate) fn coordinate_median_of(points: &[Vec<f64>], indices: &[usize]) -> Vec<f64> {
    debug_assert!(!indices.is_empty());
    let dim = points[indices[0]].len();
    let mid = (indices.len() - 1) / 2;
    let mut column = vec![0.0; indices.len()];
    (0..dim)
        .map(|c| {
            for (slot, &i) in column.iter_mut().zip(indices) {
                *slot = points[i][c];
            }
            column.sort_unstable_by(f64::total_cmp);
            column[mid]
        })
        .collect()
}
