//! A dataset of points sharing one dimension, with optional ground-truth
//! labels. Points may be plain coordinate vectors (median / mean shift) or
//! histograms (the Wasserstein engines); the histogram engines validate the
//! rows and precompute cumulative vectors through [`PointCloud::cumulatives`].

use crate::error::{Error, Result};
use crate::histogram::Histogram;

#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Vec<f64>>,
    labels: Option<Vec<i64>>,
    dim: usize,
}

impl PointCloud {
    /// Builds a cloud from raw coordinate vectors. All points must share one
    /// nonzero dimension, and labels (when given) must cover every point.
    pub fn new(points: Vec<Vec<f64>>, labels: Option<Vec<i64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(Error::EmptyInput);
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
        }
        if let Some(ref l) = labels {
            if l.len() != points.len() {
                return Err(Error::LengthMismatch {
                    left: points.len(),
                    right: l.len(),
                });
            }
        }
        Ok(Self {
            points,
            labels,
            dim,
        })
    }

    /// Builds a cloud whose rows are already-validated histograms.
    pub fn from_histograms(histograms: Vec<Histogram>, labels: Option<Vec<i64>>) -> Result<Self> {
        Self::new(
            histograms.into_iter().map(Histogram::into_bins).collect(),
            labels,
        )
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Shared dimension of every point.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn labels(&self) -> Option<&[i64]> {
        self.labels.as_deref()
    }

    /// Validates every row as a histogram and returns the cumulative vector
    /// of each. The Wasserstein engines call this once up front so that all
    /// subsequent work is plain L1 arithmetic on the cumulative side.
    pub fn cumulatives(&self) -> Result<Vec<Vec<f64>>> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                Histogram::new(p.clone())
                    .map(|h| h.cumulative().into_values())
                    .map_err(|e| Error::InvalidHistogram {
                        reason: format!("row {i}: {e}"),
                    })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_ragged_input() {
        assert!(matches!(
            PointCloud::new(vec![], None),
            Err(Error::EmptySet)
        ));
        assert!(matches!(
            PointCloud::new(vec![vec![1.0], vec![1.0, 2.0]], None),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            PointCloud::new(vec![vec![]], None),
            Err(Error::EmptyInput)
        ));
    }

    #[test]
    fn labels_must_cover_every_point() {
        assert!(matches!(
            PointCloud::new(vec![vec![1.0], vec![2.0]], Some(vec![0])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn cumulatives_validate_rows() {
        let cloud = PointCloud::new(vec![vec![0.5, 0.5], vec![0.7, 0.7]], None).unwrap();
        assert!(matches!(
            cloud.cumulatives(),
            Err(Error::InvalidHistogram { .. })
        ));

        let cloud = PointCloud::new(vec![vec![0.5, 0.5], vec![1.0, 0.0]], None).unwrap();
        let zs = cloud.cumulatives().unwrap();
        assert_eq!(zs, vec![vec![0.5, 1.0], vec![1.0, 1.0]]);
    }
}
