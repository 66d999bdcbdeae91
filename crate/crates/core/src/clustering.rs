//! Dataset clustering built on the engines.
//!
//! [`cluster_dataset`] runs a mode-seeking engine from *every* data point
//! (the runs are independent, so they execute in parallel when the
//! `parallel` feature is on), then merges the returned modes that fall
//! within a merge radius of each other into single-link groups; a point's
//! label is its mode's group. [`kmeans_wasserstein`] and
//! [`dbscan_wasserstein`] are the comparison baselines, both operating on
//! cumulative vectors where Wasserstein-1 is plain L1.

use crate::cloud::PointCloud;
use crate::distance::{self, DistanceKind};
use crate::error::{Error, Result};
use crate::exec;
use crate::histogram::CumulativeHistogram;
use crate::median;
use crate::modeseek::{
    flat_run, raw_to_wms_trajectory, EngineConfig, ModeTrajectory, RawMetric, StepRule,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

/// Which mode-seeking engine [`cluster_dataset`] runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EngineKind {
    /// Wasserstein median shift on histograms.
    Wms,
    /// Median shift under L1 on raw coordinates.
    MedianShift,
    /// Flat-kernel mean shift under squared Euclidean distance.
    MeanShift,
}

impl EngineKind {
    /// The ground distance this engine requires in its [`EngineConfig`].
    pub fn required_distance(self) -> DistanceKind {
        match self {
            EngineKind::Wms => DistanceKind::Wasserstein1,
            EngineKind::MedianShift => DistanceKind::L1,
            EngineKind::MeanShift => DistanceKind::SquaredEuclidean,
        }
    }
}

/// Which algorithm produced a [`ClusterResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Wms,
    MedianShift,
    MeanShift,
    Kmws,
    DbscanWs,
}

/// How close two modes must be to count as the same cluster.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MergePolicy {
    /// Modes at distance strictly below this merge. Compared under the
    /// engine's own ground distance, so for mean shift this is a threshold
    /// on the *squared* Euclidean distance, matching how the bandwidth is
    /// interpreted there.
    pub merge_radius: f64,
}

impl MergePolicy {
    pub fn new(merge_radius: f64) -> Result<Self> {
        let policy = Self { merge_radius };
        policy.validate()?;
        Ok(policy)
    }

    /// Default policy: merge radius of half the kernel bandwidth.
    pub fn from_bandwidth(bandwidth: f64) -> Self {
        Self {
            merge_radius: bandwidth / 2.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.merge_radius.is_finite() || self.merge_radius <= 0.0 {
            return Err(Error::invalid_config(format!(
                "merge_radius must be positive, got {}",
                self.merge_radius
            )));
        }
        Ok(())
    }
}

/// Snapshot of the configuration a [`ClusterResult`] was produced with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algorithm", rename_all = "kebab-case")]
pub enum AlgorithmConfig {
    ModeSeek {
        engine: EngineKind,
        engine_config: EngineConfig,
        merge: MergePolicy,
    },
    Kmws {
        k: usize,
        rng_seed: u64,
        max_iterations: usize,
    },
    DbscanWs {
        eps: f64,
        min_pts: usize,
    },
}

/// Side information about a clustering run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Seeds whose engine run failed; such points were assigned to the
    /// nearest successful mode instead.
    pub failed_seeds: Vec<usize>,
    /// K-means only: completed assign/update rounds.
    pub lloyd_iterations: Option<usize>,
    /// K-means only: objective value after each assignment phase;
    /// nonincreasing.
    pub objective_trace: Option<Vec<f64>>,
}

/// Output of every clustering entry point.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterResult {
    /// Cluster id per point; `-1` marks DBSCAN noise.
    pub labels: Vec<i64>,
    /// One representative per cluster, indexed by cluster id. For the
    /// Wasserstein algorithms these are histograms.
    pub modes: Vec<Vec<f64>>,
    /// Mode-seeking only: the engine trajectory of each successful seed, in
    /// seed order (seeds listed in `diagnostics.failed_seeds` are absent).
    pub per_seed_trajectories: Option<Vec<ModeTrajectory>>,
    pub algorithm: Algorithm,
    pub config: AlgorithmConfig,
    pub diagnostics: Diagnostics,
}

impl ClusterResult {
    /// Number of distinct non-noise labels actually assigned.
    pub fn cluster_count(&self) -> usize {
        let mut seen: Vec<i64> = self.labels.iter().copied().filter(|&l| l >= 0).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

/// Modes grouped by proximity: `assignments[i]` is the group of input mode
/// `i`, and `representatives[g]` is group `g`'s coordinate-median summary.
#[derive(Debug, Clone, PartialEq)]
pub struct MergedModes {
    pub assignments: Vec<usize>,
    pub representatives: Vec<Vec<f64>>,
}

/// Groups modes by single-link proximity: two modes join the same group
/// when a chain of pairwise distances strictly below the merge radius
/// connects them. Groups are numbered by their smallest member index. For
/// [`DistanceKind::Wasserstein1`] the modes must be valid histograms and are
/// compared through cumulative vectors, and each representative is the
/// coordinate median taken on the cumulative side, differenced back.
pub fn merge_modes(
    modes: &[Vec<f64>],
    kind: DistanceKind,
    policy: &MergePolicy,
) -> Result<MergedModes> {
    policy.validate()?;
    if modes.is_empty() {
        return Err(Error::EmptySet);
    }
    let dim = modes[0].len();
    for m in modes {
        if m.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: m.len(),
            });
        }
    }
    // Coordinates the pairwise scan runs on: cumulative vectors for
    // Wasserstein, the modes themselves otherwise.
    let coords: Vec<Vec<f64>> = match kind {
        DistanceKind::Wasserstein1 => modes
            .iter()
            .map(|m| {
                crate::histogram::Histogram::new(m.clone())
                    .map(|h| h.cumulative().into_values())
                    .map_err(|e| Error::InvalidHistogram {
                        reason: e.to_string(),
                    })
            })
            .collect::<Result<_>>()?,
        _ => modes.to_vec(),
    };
    let metric = match kind {
        DistanceKind::SquaredEuclidean => RawMetric::SquaredEuclidean,
        _ => RawMetric::L1,
    };

    let n = modes.len();
    const UNASSIGNED: usize = usize::MAX;
    let mut assignments = vec![UNASSIGNED; n];
    let mut group_count = 0;
    for i in 0..n {
        if assignments[i] != UNASSIGNED {
            continue;
        }
        let group = group_count;
        group_count += 1;
        assignments[i] = group;
        let mut stack = vec![i];
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if assignments[v] == UNASSIGNED
                    && metric.eval(&coords[u], &coords[v]) < policy.merge_radius
                {
                    assignments[v] = group;
                    stack.push(v);
                }
            }
        }
    }

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); group_count];
    for (i, &g) in assignments.iter().enumerate() {
        members[g].push(i);
    }
    let representatives = members
        .iter()
        .map(|group| group_representative(&coords, group, kind))
        .collect::<Result<Vec<_>>>()?;

    Ok(MergedModes {
        assignments,
        representatives,
    })
}

/// Coordinate-median summary of a group, in the modes' own space.
fn group_representative(
    coords: &[Vec<f64>],
    group: &[usize],
    kind: DistanceKind,
) -> Result<Vec<f64>> {
    let med = median::coordinate_median_of(coords, group);
    match kind {
        DistanceKind::Wasserstein1 => Ok(CumulativeHistogram::new(med)?.diff().into_bins()),
        _ => Ok(med),
    }
}

/// Index of the representative closest to `point_coords`, ties to the
/// lowest index. Both sides must already be in scan coordinates
/// (cumulative vectors for Wasserstein).
fn nearest_index(point_coords: &[f64], rep_coords: &[Vec<f64>], metric: RawMetric) -> usize {
    debug_assert!(!rep_coords.is_empty());
    let mut best = 0;
    let mut best_d = metric.eval(point_coords, &rep_coords[0]);
    for (i, r) in rep_coords.iter().enumerate().skip(1) {
        let d = metric.eval(point_coords, r);
        if d < best_d {
            best = i;
            best_d = d;
        }
    }
    best
}

/// Runs `engine` from every point of `cloud`, merges the resulting modes
/// under `policy`, and labels each point by its mode's group. Seeds whose
/// run fails are recorded in the diagnostics and assigned to the nearest
/// successful representative; the call errors only when every seed fails or
/// the inputs themselves are invalid.
pub fn cluster_dataset(
    cloud: &PointCloud,
    engine: EngineKind,
    config: &EngineConfig,
    policy: &MergePolicy,
) -> Result<ClusterResult> {
    config.validate()?;
    policy.validate()?;
    let required = engine.required_distance();
    if config.distance != required {
        return Err(Error::DistanceMismatch {
            expected: required,
            got: config.distance,
        });
    }

    let n = cloud.len();
    // Scan coordinates: cumulative vectors for WMS, raw points otherwise.
    let scan_coords: Vec<Vec<f64>> = match engine {
        EngineKind::Wms => cloud.cumulatives()?,
        _ => cloud.points().to_vec(),
    };
    let (metric, step, epsilon) = match engine {
        EngineKind::Wms | EngineKind::MedianShift => (RawMetric::L1, StepRule::LowerMedian, None),
        EngineKind::MeanShift => (
            RawMetric::SquaredEuclidean,
            StepRule::Mean,
            Some(config.mean_shift_epsilon),
        ),
    };

    let runs: Vec<Result<ModeTrajectory>> = {
        let coords = &scan_coords;
        exec::map_indexed(n, move |j| {
            let raw = flat_run(
                coords[j].clone(),
                coords,
                metric,
                step,
                &config.kernel,
                config.max_iterations,
                epsilon,
            )?;
            match engine {
                EngineKind::Wms => raw_to_wms_trajectory(raw),
                _ => Ok(ModeTrajectory {
                    iterates: raw.iterates,
                    active_sets: raw.active_sets,
                    densities: raw.densities,
                    terminated: raw.terminated,
                    cumulative_iterates: None,
                }),
            }
        })
    };

    let mut trajectories = Vec::with_capacity(n);
    let mut failed_seeds = Vec::new();
    // For each seed, the index of its trajectory among the successes.
    let mut run_of_seed = vec![None; n];
    for (j, run) in runs.into_iter().enumerate() {
        match run {
            Ok(t) => {
                run_of_seed[j] = Some(trajectories.len());
                trajectories.push(t);
            }
            Err(_) => failed_seeds.push(j),
        }
    }
    if trajectories.is_empty() {
        return Err(Error::NoSuccessfulSeeds);
    }

    let endpoints: Vec<Vec<f64>> = trajectories.iter().map(|t| t.mode().to_vec()).collect();
    let merged = merge_modes(&endpoints, required, policy)?;

    // Representatives in scan coordinates, for the failed-seed fallback.
    let rep_coords: Vec<Vec<f64>> = match engine {
        EngineKind::Wms => merged
            .representatives
            .iter()
            .map(|r| {
                crate::histogram::Histogram::new(r.clone()).map(|h| h.cumulative().into_values())
            })
            .collect::<Result<_>>()?,
        _ => merged.representatives.clone(),
    };

    let labels: Vec<i64> = (0..n)
        .map(|j| match run_of_seed[j] {
            Some(r) => merged.assignments[r] as i64,
            None => nearest_index(&scan_coords[j], &rep_coords, metric) as i64,
        })
        .collect();

    Ok(ClusterResult {
        labels,
        modes: merged.representatives,
        per_seed_trajectories: Some(trajectories),
        algorithm: match engine {
            EngineKind::Wms => Algorithm::Wms,
            EngineKind::MedianShift => Algorithm::MedianShift,
            EngineKind::MeanShift => Algorithm::MeanShift,
        },
        config: AlgorithmConfig::ModeSeek {
            engine,
            engine_config: *config,
            merge: *policy,
        },
        diagnostics: Diagnostics {
            failed_seeds,
            ..Diagnostics::default()
        },
    })
}

const KMEANS_INIT_ATTEMPTS: usize = 10;

/// Lloyd's K-means under Wasserstein-1. Centroids live on the cumulative
/// side, where the distance is L1 and the cost-minimizing centroid of a
/// cluster is the coordinate-wise lower median of its members — which is
/// again a valid cumulative vector, so centroids remain histograms
/// throughout. Initial centroids are `k` distinct rows drawn with the
/// seeded generator (up to [`KMEANS_INIT_ATTEMPTS`] redraws when duplicate
/// rows are hit). Assignment ties go to the lowest centroid index; a
/// cluster left empty keeps its previous centroid. Stops when the
/// assignment stops changing or after `max_iterations` rounds.
pub fn kmeans_wasserstein(
    cloud: &PointCloud,
    k: usize,
    rng_seed: u64,
    max_iterations: usize,
) -> Result<ClusterResult> {
    if k == 0 {
        return Err(Error::invalid_config("k must be at least 1"));
    }
    if max_iterations == 0 {
        return Err(Error::invalid_config("max_iterations must be at least 1"));
    }
    let n = cloud.len();
    if k > n {
        return Err(Error::KTooLarge { k, n });
    }
    let zs = cloud.cumulatives()?;

    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut centroids: Option<Vec<Vec<f64>>> = None;
    for _ in 0..KMEANS_INIT_ATTEMPTS {
        let mut order: Vec<usize> = (0..n).collect();
        let (chosen, _) = order.partial_shuffle(&mut rng, k);
        let candidate: Vec<Vec<f64>> = chosen.iter().map(|&i| zs[i].clone()).collect();
        if all_rows_distinct(&candidate) {
            centroids = Some(candidate);
            break;
        }
    }
    let mut centroids = centroids.ok_or(Error::DegenerateInit {
        k,
        attempts: KMEANS_INIT_ATTEMPTS,
    })?;

    let mut assignment: Option<Vec<usize>> = None;
    let mut objective_trace = Vec::new();
    let mut iterations = 0;
    loop {
        let new_assignment: Vec<usize> = zs
            .iter()
            .map(|z| nearest_index(z, &centroids, RawMetric::L1))
            .collect();
        let objective: f64 = zs
            .iter()
            .zip(&new_assignment)
            .map(|(z, &a)| distance::l1(z, &centroids[a]))
            .sum();
        objective_trace.push(objective);
        let converged = assignment.as_ref() == Some(&new_assignment);
        assignment = Some(new_assignment);
        if converged {
            break;
        }
        iterations += 1;
        if iterations >= max_iterations {
            break;
        }
        let assignment = assignment.as_ref().expect("just set");
        for (j, centroid) in centroids.iter_mut().enumerate() {
            let members: Vec<usize> = (0..n).filter(|&i| assignment[i] == j).collect();
            if !members.is_empty() {
                *centroid = median::coordinate_median_of(&zs, &members);
            }
        }
    }
    let assignment = assignment.expect("at least one assignment phase ran");

    let modes = centroids
        .into_iter()
        .map(|z| Ok(CumulativeHistogram::new(z)?.diff().into_bins()))
        .collect::<Result<Vec<_>>>()?;

    Ok(ClusterResult {
        labels: assignment.iter().map(|&a| a as i64).collect(),
        modes,
        per_seed_trajectories: None,
        algorithm: Algorithm::Kmws,
        config: AlgorithmConfig::Kmws {
            k,
            rng_seed,
            max_iterations,
        },
        diagnostics: Diagnostics {
            failed_seeds: Vec::new(),
            lloyd_iterations: Some(iterations),
            objective_trace: Some(objective_trace),
        },
    })
}

fn all_rows_distinct(rows: &[Vec<f64>]) -> bool {
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if rows[i]
                .iter()
                .zip(&rows[j])
                .all(|(a, b)| a.to_bits() == b.to_bits())
            {
                return false;
            }
        }
    }
    true
}

/// DBSCAN under Wasserstein-1 on the cumulative side. Neighborhoods use the
/// inclusive test `W1 <= eps` and count the point itself. Points are
/// visited in index order, so cluster ids are numbered by first core point
/// and the output is deterministic. Noise keeps the label `-1`; each
/// cluster's mode is the coordinate-median histogram of its members.
pub fn dbscan_wasserstein(cloud: &PointCloud, eps: f64, min_pts: usize) -> Result<ClusterResult> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::invalid_config(format!(
            "eps must be positive, got {eps}"
        )));
    }
    if min_pts == 0 {
        return Err(Error::invalid_config("min_pts must be at least 1"));
    }
    let zs = cloud.cumulatives()?;
    let n = cloud.len();

    let neighbors: Vec<Vec<usize>> = {
        let zs = &zs;
        exec::map_indexed(n, move |i| {
            (0..n)
                .filter(|&j| distance::l1(&zs[i], &zs[j]) <= eps)
                .collect()
        })
    };

    const UNVISITED: i64 = -2;
    const NOISE: i64 = -1;
    let mut labels = vec![UNVISITED; n];
    let mut cluster = 0i64;
    for i in 0..n {
        if labels[i] != UNVISITED {
            continue;
        }
        if neighbors[i].len() < min_pts {
            labels[i] = NOISE;
            continue;
        }
        labels[i] = cluster;
        let mut queue: VecDeque<usize> = neighbors[i].iter().copied().collect();
        while let Some(j) = queue.pop_front() {
            if labels[j] == NOISE {
                // A former noise point within reach of a core point becomes
                // a border member of this cluster.
                labels[j] = cluster;
                continue;
            }
            if labels[j] != UNVISITED {
                continue;
            }
            labels[j] = cluster;
            if neighbors[j].len() >= min_pts {
                queue.extend(neighbors[j].iter().copied());
            }
        }
        cluster += 1;
    }

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); cluster as usize];
    for (i, &l) in labels.iter().enumerate() {
        if l >= 0 {
            members[l as usize].push(i);
        }
    }
    let modes = members
        .iter()
        .map(|group| {
            let med = median::coordinate_median_of(&zs, group);
            Ok(CumulativeHistogram::new(med)?.diff().into_bins())
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ClusterResult {
        labels,
        modes,
        per_seed_trajectories: None,
        algorithm: Algorithm::DbscanWs,
        config: AlgorithmConfig::DbscanWs { eps, min_pts },
        diagnostics: Diagnostics::default(),
    })
}
