//! Synthetic two-class histogram data and series binning.
//!
//! Each histogram summarizes a fixed number of samples drawn from a
//! per-histogram source distribution and binned on a common grid:
//!
//! * class 0 ("unimodal"): samples from `N(m, sigma)` with the location
//!   `m` drawn uniformly per histogram;
//! * class 1 ("contaminated"): a mixture — most samples from `N(m1, sigma)`
//!   with `m1` drawn like class 0, the remainder from `N(m2, sigma)` with
//!   `m2` drawn from a separate, well-separated range.
//!
//! The two classes overlap heavily under pointwise distances (the secondary
//! mixture component carries little mass) but are far apart in
//! Wasserstein-1, which prices mass by how far it sits from the main mode.
//! All draws come from one seeded ChaCha8 stream, so a config reproduces
//! its dataset bit for bit on every platform.

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::histogram::Histogram;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

/// Configuration of the synthetic generator. `Default` gives the standard
/// benchmark shape: 50 histograms per class, 100 samples each, 100 bins on
/// `[0, 1]`, sigma 0.02, class-0 locations in `[0.47, 0.53]`, secondary
/// locations in `[0.17, 0.23]`, mixture weights 0.8/0.2, seed 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    /// Histograms per class; the dataset has twice this many points.
    pub per_class: usize,
    /// Samples drawn for each histogram.
    pub samples_per_histogram: usize,
    /// Number of equal-width bins.
    pub bins: usize,
    /// Span of the bin grid; samples outside are clamped to the end bins.
    pub bin_range: (f64, f64),
    /// Uniform range of the class-0 (and class-1 primary) location.
    pub class1_mean_range: (f64, f64),
    /// Uniform range of the class-1 secondary location.
    pub class2_secondary_mean_range: (f64, f64),
    /// Mixture weights (primary, secondary) for class 1; must sum to one.
    pub mixture_weights: (f64, f64),
    /// Standard deviation of every normal component.
    pub sigma: f64,
    /// Seed of the ChaCha8 stream driving all draws.
    pub rng_seed: u64,
}

impl SynthConfig {
    pub fn with_seed(rng_seed: u64) -> Self {
        Self {
            rng_seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.per_class == 0 {
            return Err(Error::invalid_config("per_class must be at least 1"));
        }
        if self.samples_per_histogram == 0 {
            return Err(Error::invalid_config(
                "samples_per_histogram must be at least 1",
            ));
        }
        if self.bins == 0 {
            return Err(Error::invalid_config("bins must be at least 1"));
        }
        let (lo, hi) = self.bin_range;
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::invalid_config(format!(
                "bin_range must be a nonempty interval, got [{lo}, {hi}]"
            )));
        }
        for (name, &(a, b)) in [
            ("class1_mean_range", &self.class1_mean_range),
            (
                "class2_secondary_mean_range",
                &self.class2_secondary_mean_range,
            ),
        ] {
            if !a.is_finite() || !b.is_finite() || a > b {
                return Err(Error::invalid_config(format!(
                    "{name} must satisfy lo <= hi, got [{a}, {b}]"
                )));
            }
            if a < lo || b > hi {
                return Err(Error::invalid_config(format!(
                    "{name} [{a}, {b}] must lie inside bin_range [{lo}, {hi}]"
                )));
            }
        }
        let (w1, w2) = self.mixture_weights;
        if !w1.is_finite()
            || !w2.is_finite()
            || w1 <= 0.0
            || w2 <= 0.0
            || (w1 + w2 - 1.0).abs() > 1e-9
        {
            return Err(Error::invalid_config(format!(
                "mixture_weights must be positive and sum to 1, got ({w1}, {w2})"
            )));
        }
        if !self.sigma.is_finite() || self.sigma <= 0.0 {
            return Err(Error::invalid_config(format!(
                "sigma must be positive, got {}",
                self.sigma
            )));
        }
        Ok(())
    }
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            per_class: 50,
            samples_per_histogram: 100,
            bins: 100,
            bin_range: (0.0, 1.0),
            class1_mean_range: (0.47, 0.53),
            class2_secondary_mean_range: (0.17, 0.23),
            mixture_weights: (0.8, 0.2),
            sigma: 0.02,
            rng_seed: 0,
        }
    }
}

/// A point cloud of histograms together with its ground-truth class labels
/// (0 for the unimodal class, 1 for the contaminated class) and the config
/// that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    pub cloud: PointCloud,
    pub config: SynthConfig,
}

impl LabeledDataset {
    /// Ground-truth labels (always present on generated data).
    pub fn labels(&self) -> &[i64] {
        self.cloud.labels().expect("generated data carries labels")
    }
}

/// Generates the two-class dataset described by `config`: first all class-0
/// histograms, then all class-1, labels aligned.
pub fn gen_synthetic(config: &SynthConfig) -> Result<LabeledDataset> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let n = 2 * config.per_class;
    let mut histograms = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    let mut samples = vec![0.0; config.samples_per_histogram];

    for _ in 0..config.per_class {
        let mean = draw_uniform(&mut rng, config.class1_mean_range);
        let normal = normal(mean, config.sigma)?;
        for s in samples.iter_mut() {
            *s = normal.sample(&mut rng);
        }
        histograms.push(bin_samples(&samples, config.bins, config.bin_range));
        labels.push(0);
    }
    for _ in 0..config.per_class {
        let primary_mean = draw_uniform(&mut rng, config.class1_mean_range);
        let secondary_mean = draw_uniform(&mut rng, config.class2_secondary_mean_range);
        let primary = normal(primary_mean, config.sigma)?;
        let secondary = normal(secondary_mean, config.sigma)?;
        for s in samples.iter_mut() {
            *s = if rng.random::<f64>() < config.mixture_weights.0 {
                primary.sample(&mut rng)
            } else {
                secondary.sample(&mut rng)
            };
        }
        histograms.push(bin_samples(&samples, config.bins, config.bin_range));
        labels.push(1);
    }

    Ok(LabeledDataset {
        cloud: PointCloud::from_histograms(histograms, Some(labels))?,
        config: config.clone(),
    })
}

fn draw_uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.random_range(lo..hi)
    }
}

fn normal(mean: f64, sigma: f64) -> Result<Normal<f64>> {
    Normal::new(mean, sigma).map_err(|e| Error::invalid_config(format!("normal: {e}")))
}

/// Bins samples onto `bins` equal-width cells spanning `range` and
/// normalizes counts by the sample count. Cells are half-open except the
/// last; out-of-range samples land in the nearest end bin.
fn bin_samples(samples: &[f64], bins: usize, (lo, hi): (f64, f64)) -> Histogram {
    let mut counts = vec![0usize; bins];
    let width = (hi - lo) / bins as f64;
    for &s in samples {
        let cell = ((s - lo) / width).floor();
        let index = if cell < 0.0 {
            0
        } else if cell >= bins as f64 {
            bins - 1
        } else {
            cell as usize
        };
        counts[index] += 1;
    }
    let total = samples.len() as f64;
    Histogram::new(counts.iter().map(|&c| c as f64 / total).collect())
        .expect("normalized counts form a valid histogram")
}

/// Bins a raw series of observations into a normalized histogram on
/// `bins` equal-width cells over `range` — the ingestion path for external
/// data, using the same binning rule as the generator.
pub fn series_to_histogram(series: &[f64], bins: usize, range: (f64, f64)) -> Result<Histogram> {
    if series.is_empty() {
        return Err(Error::EmptySeries);
    }
    if bins == 0 {
        return Err(Error::invalid_config("bins must be at least 1"));
    }
    if !range.0.is_finite() || !range.1.is_finite() || range.0 >= range.1 {
        return Err(Error::EmptyRange);
    }
    Ok(bin_samples(series, bins, range))
}
