//! Cross-checks of library results against the independent reference
//! implementations in `common`: exhaustive transport for the Wasserstein
//! distance, grid search for the coordinate median, threshold-graph
//! components for mode merging, pair counting for the adjusted Rand index,
//! and brute-force reachability for density-based clustering.

mod common;

use rand::Rng;
use wshift_core::{
    adjusted_rand_index, bound_at, cluster_dataset, coordinate_median, dbscan_wasserstein,
    density_at, kmeans_wasserstein, merge_modes, wasserstein1, DistanceKind, EngineConfig,
    EngineKind, Histogram, KernelSpec, MergePolicy, PointCloud,
};

#[test]
fn wasserstein_matches_exhaustive_transport_cost() {
    let mut rng = common::rng(11);
    for trial in 0..20 {
        let q = rng.random_range(1..=8);
        let a = common::random_histogram(&mut rng, q);
        let b = common::random_histogram(&mut rng, q);
        let got = wasserstein1(
            &Histogram::new(a.clone()).unwrap(),
            &Histogram::new(b.clone()).unwrap(),
        )
        .unwrap();
        let want = common::transport_w1(&a, &b);
        assert!(
            (got - want).abs() < 1e-10,
            "trial {trial}: cumulative route {got} vs transport {want}"
        );
    }
}

#[test]
fn coordinate_median_attains_the_grid_minimum_cost() {
    let mut rng = common::rng(23);
    for trial in 0..50 {
        let n = rng.random_range(1..=7);
        // Coarse lattice coordinates so the exhaustive candidate grid is the
        // exact search space of the separable L1 minimizer.
        let points: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                (0..2)
                    .map(|_| rng.random_range(0..5) as f64 * 0.25)
                    .collect()
            })
            .collect();
        let median = coordinate_median(&points).unwrap();
        let got = common::l1_cost(&median, &points);
        let want = common::min_l1_cost_on_grid(&points);
        assert!(
            (got - want).abs() <= 1e-12,
            "trial {trial}: median cost {got} vs grid minimum {want}"
        );
    }
}

#[test]
fn coordinate_median_cost_never_exceeds_any_input_point() {
    let mut rng = common::rng(37);
    for trial in 0..50 {
        let n = rng.random_range(1..=9);
        let q = rng.random_range(1..=5);
        let points = common::random_rows(&mut rng, n, q);
        let median = coordinate_median(&points).unwrap();
        let median_cost = common::l1_cost(&median, &points);
        for (i, p) in points.iter().enumerate() {
            let point_cost = common::l1_cost(p, &points);
            assert!(
                median_cost <= point_cost + 1e-12,
                "trial {trial}: median cost {median_cost} exceeds cost {point_cost} of point {i}"
            );
        }
    }
}

#[test]
fn mode_grouping_matches_threshold_graph_components() {
    let mut rng = common::rng(41);
    for trial in 0..30 {
        let n = rng.random_range(1..=8);
        let q = rng.random_range(1..=3);
        let modes = common::random_rows(&mut rng, n, q);
        let radius = rng.random_range(0.1..1.0);
        let policy = MergePolicy::new(radius).unwrap();
        let merged = merge_modes(&modes, DistanceKind::L1, &policy).unwrap();
        let oracle = common::l1_threshold_components(&modes, radius);
        // Both sides number groups by smallest member index, so the
        // assignments must agree exactly, not just as partitions.
        assert_eq!(
            merged.assignments, oracle,
            "trial {trial}: grouping diverged from graph components"
        );
    }
}

#[test]
fn bound_never_exceeds_density_and_touches_it_at_the_anchor() {
    let mut rng = common::rng(53);
    for trial in 0..100 {
        let kind = if trial % 2 == 0 {
            DistanceKind::L1
        } else {
            DistanceKind::SquaredEuclidean
        };
        let n = rng.random_range(2..=12);
        let q = rng.random_range(1..=3);
        let cloud = PointCloud::new(common::random_rows(&mut rng, n, q), None).unwrap();
        let kernel = KernelSpec::triangular(rng.random_range(0.2..1.5)).unwrap();
        let x: Vec<f64> = (0..q).map(|_| rng.random::<f64>()).collect();
        let anchor = cloud.point(rng.random_range(0..n)).to_vec();

        let bound = bound_at(&x, &anchor, &cloud, kind, &kernel).unwrap();
        let density = density_at(&x, &cloud, kind, &kernel).unwrap();
        assert!(
            bound <= density + 1e-10,
            "trial {trial}: bound {bound} exceeds density {density}"
        );

        let at_anchor = bound_at(&anchor, &anchor, &cloud, kind, &kernel).unwrap();
        let anchor_density = density_at(&anchor, &cloud, kind, &kernel).unwrap();
        assert!(
            (at_anchor - anchor_density).abs() <= 1e-12,
            "trial {trial}: bound at anchor {at_anchor} vs density {anchor_density}"
        );
    }
}

#[test]
fn ari_matches_direct_pair_counting() {
    let mut rng = common::rng(67);
    for trial in 0..500 {
        let n = rng.random_range(2..=12);
        let k = rng.random_range(1..=3);
        let pred = common::random_labels(&mut rng, n, k);
        let truth = common::random_labels(&mut rng, n, k);
        let got = adjusted_rand_index(&pred, &truth).unwrap().value;
        let want = common::ari_by_pairs(&pred, &truth);
        assert!(
            (got - want).abs() <= 1e-12,
            "trial {trial}: contingency route {got} vs pair counting {want} \
             (pred {pred:?}, truth {truth:?})"
        );
    }
}

#[test]
fn ari_of_random_labelings_is_centered_on_zero() {
    let mut rng = common::rng(79);
    let n = 200;
    let truth: Vec<i64> = (0..n).map(|i| (i >= n / 2) as i64).collect();
    let mut sum = 0.0;
    let draws = 1000;
    for _ in 0..draws {
        let pred = common::random_labels(&mut rng, n, 4);
        sum += adjusted_rand_index(&pred, &truth).unwrap().value;
    }
    let mean = sum / draws as f64;
    assert!(
        mean.abs() < 0.02,
        "mean score {mean} of uniform random labelings strays from 0"
    );
}

/// Objective of one candidate cluster under the exhaustive route: minimum
/// over a fine grid of two-bin histograms `[t, 1-t]` of the summed
/// transport cost to every member.
fn best_two_bin_cluster_cost(members: &[&[f64]]) -> f64 {
    let mut best = f64::INFINITY;
    for step in 0..=1000 {
        let t = step as f64 / 1000.0;
        let centroid = [t, 1.0 - t];
        let cost: f64 = members
            .iter()
            .map(|m| common::transport_w1(m, &centroid))
            .sum();
        if cost < best {
            best = cost;
        }
    }
    best
}

#[test]
fn kmeans_partition_minimizes_the_two_cluster_objective() {
    let rows = vec![vec![1.0, 0.0], vec![0.9, 0.1], vec![0.0, 1.0]];
    let cloud = PointCloud::new(rows.clone(), None).unwrap();
    let result = kmeans_wasserstein(&cloud, 2, 0, 100).unwrap();

    // Exhaustive objectives of all three ways to split three points in two.
    let splits: [(&[usize], &[usize]); 3] = [(&[0, 1], &[2]), (&[0, 2], &[1]), (&[1, 2], &[0])];
    let mut objectives = Vec::new();
    for (left, right) in splits {
        let left_rows: Vec<&[f64]> = left.iter().map(|&i| rows[i].as_slice()).collect();
        let right_rows: Vec<&[f64]> = right.iter().map(|&i| rows[i].as_slice()).collect();
        objectives
            .push(best_two_bin_cluster_cost(&left_rows) + best_two_bin_cluster_cost(&right_rows));
    }
    let best = objectives.iter().cloned().fold(f64::INFINITY, f64::min);

    // Objective of the returned partition, scored by the same exhaustive route.
    let mut parts: [Vec<&[f64]>; 2] = [Vec::new(), Vec::new()];
    for (i, &label) in result.labels.iter().enumerate() {
        parts[label as usize].push(rows[i].as_slice());
    }
    let returned = best_two_bin_cluster_cost(&parts[0]) + best_two_bin_cluster_cost(&parts[1]);
    assert!(
        (returned - best).abs() <= 1e-3,
        "returned partition costs {returned}, exhaustive best {best}"
    );
    assert!(
        common::same_partition(&result.labels, &[0i64, 0, 1]),
        "expected the two near-identical histograms grouped: {:?}",
        result.labels
    );
}

#[test]
fn dbscan_partition_matches_reachability_on_the_eps_graph() {
    let mut rng = common::rng(83);
    // Two histogram blobs: mass concentrated on the left half vs the right
    // half of six bins, with small random perturbations.
    let mut rows = Vec::new();
    for i in 0..10 {
        let jitter = rng.random_range(0.0..0.1);
        let mut row = if i < 5 {
            vec![0.5 - jitter, 0.5, jitter, 0.0, 0.0, 0.0]
        } else {
            vec![0.0, 0.0, 0.0, jitter, 0.5, 0.5 - jitter]
        };
        let sum: f64 = row.iter().sum();
        for v in &mut row {
            *v /= sum;
        }
        rows.push(row);
    }
    let eps = 1.0;
    let min_pts = 3;

    // Brute-force reachability: with every point core (blob size 5 >= 3 and
    // intra-blob distances <= eps), clusters are the connected components of
    // the inclusive eps-graph under the transport distance.
    let n = rows.len();
    for i in 0..n {
        let neighbors = (0..n)
            .filter(|&j| common::transport_w1(&rows[i], &rows[j]) <= eps)
            .count();
        assert!(neighbors >= min_pts, "point {i} is not core");
    }
    let mut component = vec![usize::MAX; n];
    let mut next = 0;
    for i in 0..n {
        if component[i] != usize::MAX {
            continue;
        }
        let mut stack = vec![i];
        component[i] = next;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if component[v] == usize::MAX && common::transport_w1(&rows[u], &rows[v]) <= eps {
                    component[v] = next;
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    assert_eq!(next, 2, "blob construction should give two components");

    let cloud = PointCloud::new(rows, None).unwrap();
    let result = dbscan_wasserstein(&cloud, eps, min_pts).unwrap();
    assert!(
        result.labels.iter().all(|&l| l >= 0),
        "no noise expected: {:?}",
        result.labels
    );
    assert!(
        common::same_partition(&result.labels, &component),
        "labels {:?} diverge from eps-graph components {component:?}",
        result.labels
    );
}

#[test]
fn blob_clustering_matches_brute_force_gap_check() {
    // Two 1-D blobs under L1 with a gap wider than the bandwidth, so no
    // active set can span the gap; verified pairwise below, not assumed.
    let rows: Vec<Vec<f64>> = [0.0, 0.1, 0.2, 5.0, 5.1, 5.2]
        .iter()
        .map(|&v| vec![v])
        .collect();
    let h = 1.0;
    for i in 0..3 {
        for j in 3..6 {
            let d = (rows[i][0] - rows[j][0]).abs();
            assert!(d > h, "cross-blob pair ({i},{j}) inside bandwidth: {d}");
        }
    }
    let cloud = PointCloud::new(rows, None).unwrap();
    let config = EngineConfig::new(KernelSpec::triangular(h).unwrap(), DistanceKind::L1);
    let policy = MergePolicy::from_bandwidth(h);
    let result = cluster_dataset(&cloud, EngineKind::MedianShift, &config, &policy).unwrap();
    assert_eq!(result.cluster_count(), 2);
    assert!(common::same_partition(
        &result.labels,
        &[0usize, 0, 0, 1, 1, 1]
    ));
}
