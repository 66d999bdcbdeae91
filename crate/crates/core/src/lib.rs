//! Mode-seeking clustering for histogram-valued data.
//!
//! The lead algorithm is *Wasserstein median shift*: flat-kernel mode
//! seeking where points are histograms, distances are Wasserstein-1, and
//! each shift step is a coordinate-wise median taken on cumulative vectors
//! (where Wasserstein-1 collapses to L1). Unlike mean shift, the iteration
//! reaches an exact fixed point in finitely many steps, and the kernel
//! density never decreases along a trajectory.
//!
//! The crate also provides the building blocks and baselines needed to
//! evaluate it: plain L1 median shift, classical flat-kernel mean shift,
//! K-means and DBSCAN under Wasserstein-1, the adjusted Rand index, and a
//! seeded two-class synthetic histogram generator.
//!
//! With the default `parallel` feature, per-seed engine runs and pairwise
//! distance scans run on rayon; disabling the feature swaps in sequential
//! loops with bitwise-identical results.
//!
//! ```
//! use wshift_core::{
//!     cluster_dataset, DistanceKind, EngineConfig, EngineKind, KernelSpec, MergePolicy,
//!     PointCloud,
//! };
//!
//! let rows = vec![
//!     vec![1.0, 0.0],
//!     vec![0.9, 0.1],
//!     vec![0.0, 1.0],
//! ];
//! let cloud = PointCloud::new(rows, None)?;
//! let config = EngineConfig::new(KernelSpec::triangular(0.5)?, DistanceKind::Wasserstein1);
//! let result = cluster_dataset(&cloud, EngineKind::Wms, &config, &MergePolicy::from_bandwidth(0.5))?;
//! assert_eq!(result.labels, vec![0, 0, 1]);
//! # Ok::<(), wshift_core::Error>(())
//! ```

pub mod cloud;
pub mod clustering;
pub mod datagen;
pub mod distance;
pub mod error;
pub mod evaluation;
mod exec;
pub mod histogram;
pub mod kernel;
pub mod median;
pub mod modeseek;

pub use cloud::PointCloud;
pub use clustering::{
    cluster_dataset, dbscan_wasserstein, kmeans_wasserstein, merge_modes, Algorithm,
    AlgorithmConfig, ClusterResult, Diagnostics, EngineKind, MergePolicy, MergedModes,
};
pub use datagen::{gen_synthetic, series_to_histogram, LabeledDataset, SynthConfig};
pub use distance::{distance, wasserstein1, DistanceKind};
pub use error::{Error, Result};
pub use evaluation::{adjusted_rand_index, contingency, AriScore, ContingencyTable};
pub use histogram::{CumulativeHistogram, Histogram};
pub use kernel::{bound_at, density_at, KernelSpec, Profile};
pub use median::coordinate_median;
pub use modeseek::{
    active_set, flat_step, run_mean_shift, run_median_shift, run_wms, ActiveSet, EngineConfig,
    ModeTrajectory, Termination,
};
