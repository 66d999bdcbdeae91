//! Flat-weight mode-seeking engines.
//!
//! All three engines iterate the same scheme: collect the *active set*
//! (data points strictly within bandwidth `h` of the current iterate), then
//! jump to the exact minimizer of the summed ground distance to those
//! points — the coordinate-wise lower median under L1, the arithmetic mean
//! under squared Euclidean. Each jump maximizes a linear lower bound of the
//! kernel density ([`crate::kernel::bound_at`]), so the density never
//! decreases along a trajectory.
//!
//! Because the L1 step is a median over a finite set, iterates live in a
//! finite grid of candidate coordinates and the iteration reaches a bitwise
//! fixed point in finitely many steps; stationarity is therefore detected by
//! exact bit equality of consecutive iterates, not by a tolerance. The mean
//! engine converges only in the limit, so it additionally stops once the
//! Euclidean step length drops below [`EngineConfig::mean_shift_epsilon`].
//!
//! The Wasserstein engine ([`run_wms`]) is the L1 median engine applied to
//! cumulative vectors: Wasserstein-1 between histograms equals L1 between
//! their running sums, and the coordinate median of cumulative vectors is
//! again a valid cumulative vector, so the iteration stays in histogram
//! space. Its trajectory records both representations.

use crate::cloud::PointCloud;
use crate::distance::{self, DistanceKind};
use crate::error::{Error, Result};
use crate::histogram::{CumulativeHistogram, Histogram};
use crate::kernel::KernelSpec;
use crate::median;
use serde::{Deserialize, Serialize};

/// Indices (ascending) of the data points strictly within bandwidth of an
/// iterate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActiveSet {
    indices: Vec<usize>,
}

impl ActiveSet {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    /// True when every member of `self` also belongs to `other`.
    pub fn is_subset_of(&self, other: &ActiveSet) -> bool {
        self.indices.iter().all(|&i| other.contains(i))
    }
}

/// Why a trajectory stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    /// Two consecutive iterates were bitwise identical.
    Stationary,
    /// The iteration cap was reached first.
    MaxIterations,
    /// The active set became empty mid-run (defensive; cannot happen when
    /// seeding at a data point).
    EmptyActiveSet,
    /// Mean shift only: the Euclidean step length fell below epsilon.
    ToleranceReached,
}

/// Full record of one engine run: every iterate, the active set and density
/// at each, and why it stopped. The last iterate is the mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeTrajectory {
    /// Iterates in the engine's input space (histograms for the Wasserstein
    /// engine, raw coordinates otherwise). Never empty; starts at the seed.
    pub iterates: Vec<Vec<f64>>,
    /// Active set at each iterate, aligned with `iterates`.
    pub active_sets: Vec<ActiveSet>,
    /// Kernel density at each iterate, aligned with `iterates`.
    pub densities: Vec<f64>,
    pub terminated: Termination,
    /// For the Wasserstein engine only: the same trajectory on the
    /// cumulative side, where the arithmetic actually happens. Bitwise
    /// comparable against an L1 median-shift run on the cumulative vectors.
    pub cumulative_iterates: Option<Vec<Vec<f64>>>,
}

impl ModeTrajectory {
    /// The final iterate.
    pub fn mode(&self) -> &[f64] {
        self.iterates.last().expect("trajectory is never empty")
    }

    /// Number of shift steps taken (iterate count minus one). A run seeded
    /// at a fixed point takes exactly one step: the confirming jump onto
    /// itself.
    pub fn steps(&self) -> usize {
        self.iterates.len() - 1
    }
}

/// Engine configuration: kernel, ground distance, iteration cap, and the
/// mean-shift stopping tolerance (ignored by the median engines, which stop
/// on exact stationarity).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub kernel: KernelSpec,
    pub distance: DistanceKind,
    pub max_iterations: usize,
    pub mean_shift_epsilon: f64,
}

impl EngineConfig {
    pub const DEFAULT_MAX_ITERATIONS: usize = 1000;
    pub const DEFAULT_MEAN_SHIFT_EPSILON: f64 = 1e-8;

    pub fn new(kernel: KernelSpec, distance: DistanceKind) -> Self {
        Self {
            kernel,
            distance,
            max_iterations: Self::DEFAULT_MAX_ITERATIONS,
            mean_shift_epsilon: Self::DEFAULT_MEAN_SHIFT_EPSILON,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.kernel.bandwidth.is_finite() || self.kernel.bandwidth <= 0.0 {
            return Err(Error::invalid_config(format!(
                "bandwidth must be positive, got {}",
                self.kernel.bandwidth
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::invalid_config("max_iterations must be at least 1"));
        }
        if !self.mean_shift_epsilon.is_finite() || self.mean_shift_epsilon <= 0.0 {
            return Err(Error::invalid_config(format!(
                "mean_shift_epsilon must be positive, got {}",
                self.mean_shift_epsilon
            )));
        }
        Ok(())
    }
}

/// Ground metrics the raw iteration loop understands. Wasserstein runs are
/// L1 runs on cumulative vectors, so only two cases exist here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum RawMetric {
    L1,
    SquaredEuclidean,
}

impl RawMetric {
    pub(crate) fn eval(self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            RawMetric::L1 => distance::l1(a, b),
            RawMetric::SquaredEuclidean => distance::squared_euclidean(a, b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum StepRule {
    /// Coordinate-wise lower median of the active points (L1 minimizer).
    LowerMedian,
    /// Arithmetic mean of the active points (squared-Euclidean minimizer).
    Mean,
}

pub(crate) struct RawRun {
    pub iterates: Vec<Vec<f64>>,
    pub active_sets: Vec<ActiveSet>,
    pub densities: Vec<f64>,
    pub terminated: Termination,
}

fn bits_equal(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits())
}

/// Active set and kernel density of `x` against `points` in one scan.
/// Membership uses the strict test `d < h`; the density adds `k(d/h)` for
/// members (the profile is zero outside the ball, so skipping non-members
/// changes nothing).
fn scan(
    x: &[f64],
    points: &[Vec<f64>],
    metric: RawMetric,
    kernel: &KernelSpec,
) -> (ActiveSet, f64) {
    let h = kernel.bandwidth;
    let mut indices = Vec::new();
    let mut density = 0.0;
    for (i, p) in points.iter().enumerate() {
        let d = metric.eval(x, p);
        if d < h {
            indices.push(i);
            density += kernel.profile.k(d / h);
        }
    }
    (ActiveSet { indices }, density)
}

fn mean_of(points: &[Vec<f64>], indices: &[usize]) -> Vec<f64> {
    debug_assert!(!indices.is_empty());
    let dim = points[indices[0]].len();
    let mut acc = vec![0.0; dim];
    for &i in indices {
        for (a, v) in acc.iter_mut().zip(&points[i]) {
            *a += v;
        }
    }
    let n = indices.len() as f64;
    for a in acc.iter_mut() {
        *a /= n;
    }
    acc
}

/// The shared iteration loop. `epsilon` enables the mean-shift step-length
/// stop; the median engines pass `None` and stop only on bit equality.
pub(crate) fn flat_run(
    seed: Vec<f64>,
    points: &[Vec<f64>],
    metric: RawMetric,
    step: StepRule,
    kernel: &KernelSpec,
    max_iterations: usize,
    epsilon: Option<f64>,
) -> Result<RawRun> {
    let (active, density) = scan(&seed, points, metric, kernel);
    if active.is_empty() {
        return Err(Error::EmptyActiveSet);
    }
    let mut iterates = vec![seed];
    let mut active_sets = vec![active];
    let mut densities = vec![density];
    let mut terminated = Termination::MaxIterations;

    for _ in 0..max_iterations {
        let current_active = active_sets.last().expect("nonempty");
        if current_active.is_empty() {
            terminated = Termination::EmptyActiveSet;
            break;
        }
        let next = match step {
            StepRule::LowerMedian => median::coordinate_median_of(points, current_active.indices()),
            StepRule::Mean => mean_of(points, current_active.indices()),
        };
        let (next_active, next_density) = scan(&next, points, metric, kernel);
        let stationary = bits_equal(&next, iterates.last().expect("nonempty"));
        let step_len = epsilon
            .map(|_| distance::squared_euclidean(&next, iterates.last().expect("nonempty")).sqrt());
        iterates.push(next);
        active_sets.push(next_active);
        densities.push(next_density);
        if stationary {
            terminated = Termination::Stationary;
            break;
        }
        if let (Some(eps), Some(len)) = (epsilon, step_len) {
            if len < eps {
                terminated = Termination::ToleranceReached;
                break;
            }
        }
    }

    Ok(RawRun {
        iterates,
        active_sets,
        densities,
        terminated,
    })
}

fn check_distance(config: &EngineConfig, expected: DistanceKind) -> Result<()> {
    if config.distance != expected {
        return Err(Error::DistanceMismatch {
            expected,
            got: config.distance,
        });
    }
    Ok(())
}

fn check_dim(cloud: &PointCloud, len: usize) -> Result<()> {
    if len != cloud.dim() {
        return Err(Error::DimensionMismatch {
            expected: cloud.dim(),
            got: len,
        });
    }
    Ok(())
}

/// Data points strictly within bandwidth of `x` under the configured
/// distance. For Wasserstein configurations, `x` and the cloud rows are
/// validated as histograms and compared through their cumulative vectors.
pub fn active_set(x: &[f64], cloud: &PointCloud, config: &EngineConfig) -> Result<ActiveSet> {
    config.validate()?;
    check_dim(cloud, x.len())?;
    let h = config.kernel.bandwidth;
    let mut indices = Vec::new();
    match config.distance {
        DistanceKind::Wasserstein1 => {
            let zs = cloud.cumulatives()?;
            let zx = histogram_from(x)?.cumulative().into_values();
            for (i, z) in zs.iter().enumerate() {
                if distance::l1(&zx, z) < h {
                    indices.push(i);
                }
            }
        }
        kind => {
            let metric = match kind {
                DistanceKind::L1 => RawMetric::L1,
                DistanceKind::SquaredEuclidean => RawMetric::SquaredEuclidean,
                DistanceKind::Wasserstein1 => unreachable!(),
            };
            for (i, p) in cloud.points().iter().enumerate() {
                if metric.eval(x, p) < h {
                    indices.push(i);
                }
            }
        }
    }
    Ok(ActiveSet { indices })
}

/// One exact shift step from `x`: the minimizer of the summed configured
/// distance to the active points. Errors with [`Error::EmptyActiveSet`]
/// when no data point is within bandwidth.
pub fn flat_step(x: &[f64], cloud: &PointCloud, config: &EngineConfig) -> Result<Vec<f64>> {
    config.validate()?;
    check_dim(cloud, x.len())?;
    match config.distance {
        DistanceKind::Wasserstein1 => {
            let zs = cloud.cumulatives()?;
            let zx = histogram_from(x)?.cumulative().into_values();
            let active = l1_ball(&zx, &zs, config.kernel.bandwidth)?;
            let zmed = median::coordinate_median_of(&zs, &active);
            Ok(cumulative_to_bins(zmed)?)
        }
        DistanceKind::L1 => {
            let active = l1_ball(x, cloud.points(), config.kernel.bandwidth)?;
            Ok(median::coordinate_median_of(cloud.points(), &active))
        }
        DistanceKind::SquaredEuclidean => {
            let mut active = Vec::new();
            for (i, p) in cloud.points().iter().enumerate() {
                if distance::squared_euclidean(x, p) < config.kernel.bandwidth {
                    active.push(i);
                }
            }
            if active.is_empty() {
                return Err(Error::EmptyActiveSet);
            }
            Ok(mean_of(cloud.points(), &active))
        }
    }
}

fn l1_ball(x: &[f64], points: &[Vec<f64>], h: f64) -> Result<Vec<usize>> {
    let active: Vec<usize> = points
        .iter()
        .enumerate()
        .filter(|(_, p)| distance::l1(x, p) < h)
        .map(|(i, _)| i)
        .collect();
    if active.is_empty() {
        return Err(Error::EmptyActiveSet);
    }
    Ok(active)
}

fn histogram_from(x: &[f64]) -> Result<Histogram> {
    Histogram::new(x.to_vec()).map_err(|e| Error::InvalidHistogram {
        reason: e.to_string(),
    })
}

fn cumulative_to_bins(z: Vec<f64>) -> Result<Vec<f64>> {
    Ok(CumulativeHistogram::new(z)?.diff().into_bins())
}

/// Median shift under L1: seeded at `seed`, jumps to the coordinate-wise
/// lower median of the active points until two consecutive iterates are
/// bitwise identical (or the iteration cap is hit). Requires
/// `config.distance == L1`.
pub fn run_median_shift(
    seed: &[f64],
    cloud: &PointCloud,
    config: &EngineConfig,
) -> Result<ModeTrajectory> {
    config.validate()?;
    check_distance(config, DistanceKind::L1)?;
    check_dim(cloud, seed.len())?;
    let raw = flat_run(
        seed.to_vec(),
        cloud.points(),
        RawMetric::L1,
        StepRule::LowerMedian,
        &config.kernel,
        config.max_iterations,
        None,
    )?;
    Ok(ModeTrajectory {
        iterates: raw.iterates,
        active_sets: raw.active_sets,
        densities: raw.densities,
        terminated: raw.terminated,
        cumulative_iterates: None,
    })
}

/// Wasserstein median shift: median shift on the cumulative vectors, with
/// iterates reported in histogram space (and kept on the cumulative side in
/// [`ModeTrajectory::cumulative_iterates`]). Requires
/// `config.distance == Wasserstein1`.
pub fn run_wms(
    seed: &Histogram,
    cloud: &PointCloud,
    config: &EngineConfig,
) -> Result<ModeTrajectory> {
    config.validate()?;
    check_distance(config, DistanceKind::Wasserstein1)?;
    check_dim(cloud, seed.len())?;
    let zs = cloud.cumulatives()?;
    let zseed = seed.cumulative().into_values();
    let raw = flat_run(
        zseed,
        &zs,
        RawMetric::L1,
        StepRule::LowerMedian,
        &config.kernel,
        config.max_iterations,
        None,
    )?;
    raw_to_wms_trajectory(raw)
}

/// Converts a cumulative-side run into the dual-representation trajectory.
pub(crate) fn raw_to_wms_trajectory(raw: RawRun) -> Result<ModeTrajectory> {
    let iterates = raw
        .iterates
        .iter()
        .map(|z| cumulative_to_bins(z.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(ModeTrajectory {
        iterates,
        active_sets: raw.active_sets,
        densities: raw.densities,
        terminated: raw.terminated,
        cumulative_iterates: Some(raw.iterates),
    })
}

/// Classical flat-kernel mean shift under squared Euclidean distance:
/// jumps to the arithmetic mean of the active points, stopping on bitwise
/// stationarity or once the Euclidean step length drops below
/// `config.mean_shift_epsilon`. Requires `config.distance == SquaredEuclidean`.
pub fn run_mean_shift(
    seed: &[f64],
    cloud: &PointCloud,
    config: &EngineConfig,
) -> Result<ModeTrajectory> {
    config.validate()?;
    check_distance(config, DistanceKind::SquaredEuclidean)?;
    check_dim(cloud, seed.len())?;
    let raw = flat_run(
        seed.to_vec(),
        cloud.points(),
        RawMetric::SquaredEuclidean,
        StepRule::Mean,
        &config.kernel,
        config.max_iterations,
        Some(config.mean_shift_epsilon),
    )?;
    Ok(ModeTrajectory {
        iterates: raw.iterates,
        active_sets: raw.active_sets,
        densities: raw.densities,
        terminated: raw.terminated,
        cumulative_iterates: None,
    })
}
