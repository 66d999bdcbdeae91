//! Normalized histograms and their cumulative (running-sum) form.
//!
//! A [`Histogram`] is a vector of nonnegative bin masses summing to one.
//! Its cumulative form is the key device of this crate: the Wasserstein-1
//! distance between two histograms on a common grid equals the L1 distance
//! between their cumulative vectors, so every Wasserstein computation here
//! is carried out on [`CumulativeHistogram`] values.

use crate::error::{Error, Result};

/// Tolerance on the total mass of a histogram (and on the last entry of a
/// cumulative vector). Inputs outside this band are rejected.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// Threshold under which a tiny negative value is treated as accumulated
/// rounding dust and clamped to zero instead of rejected.
pub const DUST_TOLERANCE: f64 = 1e-12;

/// Nonnegative bin masses over a fixed grid, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    bins: Vec<f64>,
}

impl Histogram {
    /// Builds a histogram from bin masses that must already be normalized:
    /// the sum has to lie within [`MASS_TOLERANCE`] of one. Values in
    /// `[-DUST_TOLERANCE, 0)` are clamped to zero; anything more negative is
    /// rejected.
    pub fn new(bins: Vec<f64>) -> Result<Self> {
        Self::build(bins, false)
    }

    /// Builds a histogram from raw nonnegative masses, dividing by their sum.
    /// Fails with [`Error::ZeroTotal`] when the sum is zero.
    pub fn renormalized(raw: Vec<f64>) -> Result<Self> {
        Self::build(raw, true)
    }

    fn build(mut bins: Vec<f64>, renormalize: bool) -> Result<Self> {
        if bins.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (index, b) in bins.iter_mut().enumerate() {
            if *b < -DUST_TOLERANCE || b.is_nan() {
                return Err(Error::NegativeMass { index, value: *b });
            }
            if *b < 0.0 {
                *b = 0.0;
            }
        }
        let sum: f64 = bins.iter().sum();
        if renormalize {
            if sum == 0.0 {
                return Err(Error::ZeroTotal);
            }
            for b in bins.iter_mut() {
                *b /= sum;
            }
        } else if (sum - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Self { bins })
    }

    pub fn bins(&self) -> &[f64] {
        &self.bins
    }

    pub fn into_bins(self) -> Vec<f64> {
        self.bins
    }

    /// Number of bins.
    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    /// Running sum of the bins. The result is nondecreasing, starts at the
    /// first bin mass, and its last entry equals the total mass.
    pub fn cumulative(&self) -> CumulativeHistogram {
        let mut values = Vec::with_capacity(self.bins.len());
        let mut acc = 0.0;
        for &b in &self.bins {
            acc += b;
            values.push(acc);
        }
        CumulativeHistogram { values }
    }
}

/// Running sums of a histogram: nondecreasing, ending at one.
///
/// Coordinate-wise lower medians of a set of cumulative vectors are again
/// nondecreasing with the same final mass, so iterating medians in this
/// representation never leaves the space — that closure is what makes the
/// Wasserstein median-shift engine work.
#[derive(Debug, Clone, PartialEq)]
pub struct CumulativeHistogram {
    values: Vec<f64>,
}

impl CumulativeHistogram {
    /// Validates an externally supplied cumulative vector: entries must be
    /// nondecreasing (dips within [`DUST_TOLERANCE`] are tolerated), the
    /// first entry nonnegative, and the last entry one within
    /// [`MASS_TOLERANCE`].
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        if values[0] < -DUST_TOLERANCE || values[0].is_nan() {
            return Err(Error::NegativeMass {
                index: 0,
                value: values[0],
            });
        }
        for k in 1..values.len() {
            if values[k] < values[k - 1] - DUST_TOLERANCE || values[k].is_nan() {
                return Err(Error::NonMonotone {
                    index: k,
                    prev: values[k - 1],
                    next: values[k],
                });
            }
        }
        let last = *values.last().expect("nonempty");
        if (last - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::NotNormalized { sum: last });
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// First differences, i.e. the inverse of [`Histogram::cumulative`]:
    /// bin k is `values[k] - values[k-1]` with an implicit leading zero.
    /// Rounding dust from tolerated micro-dips is clamped to zero.
    pub fn diff(&self) -> Histogram {
        let mut bins = Vec::with_capacity(self.values.len());
        let mut prev = 0.0;
        for &z in &self.values {
            bins.push(z - prev);
            prev = z;
        }
        Histogram::new(bins).expect("a validated cumulative vector diffs to a valid histogram")
    }
}
