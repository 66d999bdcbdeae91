//! The flat-weight kernel and the density surrogate it induces.
//!
//! All engines in this crate use the triangular profile
//! `k(u) = max(1 - u, 0)` whose derivative-induced weight is flat:
//! `g(u) = 1` for `u < 1` and `0` otherwise. With bandwidth `h`, a point
//! contributes to the density at `x` iff its distance to `x` is below `h`,
//! and every contributing point counts equally in the shift step. That flat
//! weight is what lets a single median (or mean) computation solve each
//! iteration exactly.

use crate::cloud::PointCloud;
use crate::distance::{distance, DistanceKind};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Kernel profile shape. Only the triangular profile is implemented; the
/// enum exists so configs serialize with an explicit name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    Triangular,
}

impl Profile {
    /// Profile value `k(u)`.
    pub fn k(&self, u: f64) -> f64 {
        match self {
            Profile::Triangular => {
                if u < 1.0 {
                    1.0 - u
                } else {
                    0.0
                }
            }
        }
    }

    /// Shift weight `g(u)`: flat inside the unit ball, zero outside.
    pub fn weight(&self, u: f64) -> f64 {
        match self {
            Profile::Triangular => {
                if u < 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

/// A profile together with a positive bandwidth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub profile: Profile,
    pub bandwidth: f64,
}

impl KernelSpec {
    /// Triangular kernel with bandwidth `h > 0`.
    pub fn triangular(bandwidth: f64) -> Result<Self> {
        if !bandwidth.is_finite() || bandwidth <= 0.0 {
            return Err(Error::invalid_config(format!(
                "bandwidth must be positive, got {bandwidth}"
            )));
        }
        Ok(Self {
            profile: Profile::Triangular,
            bandwidth,
        })
    }
}

/// Kernel density surrogate at `x`: the plain sum of profile values
/// `sum_i k(d(x, x_i) / h)`. No normalizing factor is applied — the engines
/// only ever compare densities along one trajectory, where a constant factor
/// is irrelevant.
pub fn density_at(
    x: &[f64],
    cloud: &PointCloud,
    kind: DistanceKind,
    kernel: &KernelSpec,
) -> Result<f64> {
    if x.len() != cloud.dim() {
        return Err(Error::DimensionMismatch {
            expected: cloud.dim(),
            got: x.len(),
        });
    }
    let mut sum = 0.0;
    for p in cloud.points() {
        sum += kernel.profile.k(distance(kind, x, p)? / kernel.bandwidth);
    }
    Ok(sum)
}

/// Linear lower bound of the density, anchored at `anchor`:
///
/// `bound(x) = density(anchor) - sum_i g(d(anchor, x_i)/h) * (d(x, x_i)/h - d(anchor, x_i)/h)`.
///
/// It touches the density at the anchor and never exceeds it elsewhere, so
/// maximizing the bound (equivalently, minimizing the summed distance to the
/// anchor's active points) can only raise the density. Each engine iteration
/// maximizes this bound exactly.
pub fn bound_at(
    x: &[f64],
    anchor: &[f64],
    cloud: &PointCloud,
    kind: DistanceKind,
    kernel: &KernelSpec,
) -> Result<f64> {
    if x.len() != cloud.dim() {
        return Err(Error::DimensionMismatch {
            expected: cloud.dim(),
            got: x.len(),
        });
    }
    if anchor.len() != cloud.dim() {
        return Err(Error::DimensionMismatch {
            expected: cloud.dim(),
            got: anchor.len(),
        });
    }
    let h = kernel.bandwidth;
    let mut anchor_density = 0.0;
    let mut correction = 0.0;
    for p in cloud.points() {
        let ua = distance(kind, anchor, p)? / h;
        anchor_density += kernel.profile.k(ua);
        let g = kernel.profile.weight(ua);
        if g > 0.0 {
            let ux = distance(kind, x, p)? / h;
            correction += g * (ux - ua);
        }
    }
    Ok(anchor_density - correction)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_cloud(xs: &[f64]) -> PointCloud {
        PointCloud::new(xs.iter().map(|&x| vec![x]).collect(), None).unwrap()
    }

    #[test]
    fn profile_is_triangular_with_flat_weight() {
        let p = Profile::Triangular;
        assert_eq!(p.k(0.0), 1.0);
        assert_eq!(p.k(0.5), 0.5);
        assert_eq!(p.k(1.0), 0.0);
        assert_eq!(p.k(2.0), 0.0);
        assert_eq!(p.weight(0.999), 1.0);
        assert_eq!(p.weight(1.0), 0.0);
    }

    #[test]
    fn bandwidth_must_be_positive() {
        assert!(KernelSpec::triangular(0.0).is_err());
        assert!(KernelSpec::triangular(-1.0).is_err());
        assert!(KernelSpec::triangular(f64::NAN).is_err());
    }

    #[test]
    fn density_counts_nearby_points_with_triangular_falloff() {
        // Points 0 and 1 with h = 2 seen from 0: k(0) + k(0.5) = 1.5.
        let cloud = line_cloud(&[0.0, 1.0]);
        let kernel = KernelSpec::triangular(2.0).unwrap();
        let d = density_at(&[0.0], &cloud, DistanceKind::L1, &kernel).unwrap();
        assert!((d - 1.5).abs() < 1e-15);
    }

    #[test]
    fn density_is_zero_far_from_all_points() {
        let cloud = line_cloud(&[0.0, 1.0]);
        let kernel = KernelSpec::triangular(2.0).unwrap();
        let d = density_at(&[10.0], &cloud, DistanceKind::L1, &kernel).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn density_at_a_lone_point_is_one() {
        let cloud = line_cloud(&[3.0]);
        let kernel = KernelSpec::triangular(1.0).unwrap();
        let d = density_at(&[3.0], &cloud, DistanceKind::L1, &kernel).unwrap();
        assert_eq!(d, 1.0);
    }

    #[test]
    fn bound_touches_density_at_the_anchor() {
        let cloud = line_cloud(&[0.0, 0.6, 1.4, 5.0]);
        let kernel = KernelSpec::triangular(1.0).unwrap();
        let anchor = [0.5];
        let f = density_at(&anchor, &cloud, DistanceKind::L1, &kernel).unwrap();
        let b = bound_at(&anchor, &anchor, &cloud, DistanceKind::L1, &kernel).unwrap();
        assert!((f - b).abs() < 1e-12, "bound at anchor {b} != density {f}");
    }

    #[test]
    fn bound_never_exceeds_density() {
        let cloud = line_cloud(&[0.0, 0.6, 1.4, 5.0]);
        let kernel = KernelSpec::triangular(1.0).unwrap();
        let anchor = [0.5];
        for step in -30..=30 {
            let x = [0.5 + step as f64 * 0.1];
            let f = density_at(&x, &cloud, DistanceKind::L1, &kernel).unwrap();
            let b = bound_at(&x, &anchor, &cloud, DistanceKind::L1, &kernel).unwrap();
            assert!(b <= f + 1e-10, "bound {b} exceeds density {f} at {x:?}");
        }
    }

    #[test]
    fn bound_from_an_isolated_anchor_is_zero_everywhere() {
        // No point within h of the anchor: density 0, no correction terms.
        let cloud = line_cloud(&[0.0, 1.0]);
        let kernel = KernelSpec::triangular(0.5).unwrap();
        let b = bound_at(&[0.2], &[10.0], &cloud, DistanceKind::L1, &kernel).unwrap();
        assert_eq!(b, 0.0);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let cloud = line_cloud(&[0.0]);
        let kernel = KernelSpec::triangular(1.0).unwrap();
        assert!(density_at(&[0.0, 0.0], &cloud, DistanceKind::L1, &kernel).is_err());
        assert!(bound_at(&[0.0], &[0.0, 1.0], &cloud, DistanceKind::L1, &kernel).is_err());
    }
}
