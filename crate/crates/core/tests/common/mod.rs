//! Independent reference implementations ("oracles") and data generators
//! shared by the integration suites. Each oracle computes its quantity by a
//! different route than the library so agreement is meaningful evidence:
//! the transport oracle moves mass greedily along the bin grid instead of
//! summing cumulative differences; the median oracle minimizes the L1 cost
//! exhaustively; the ARI oracle counts point pairs directly instead of
//! going through a contingency table.

#![allow(dead_code)] // each test binary uses its own subset

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Minimum-cost transport between two histograms on a unit-spaced bin
/// grid, solved by the greedy left-to-right (northwest-corner) sweep,
/// which is exact for this cost. Independent of the cumulative-sum route.
pub fn transport_w1(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut supply = a.to_vec();
    let mut demand = b.to_vec();
    let mut cost = 0.0;
    let (mut i, mut j) = (0, 0);
    while i < supply.len() && j < demand.len() {
        let moved = supply[i].min(demand[j]);
        cost += moved * (i as f64 - j as f64).abs();
        supply[i] -= moved;
        demand[j] -= moved;
        if supply[i] <= 1e-15 {
            i += 1;
        }
        if j < demand.len() && demand[j] <= 1e-15 {
            j += 1;
        }
    }
    cost
}

/// Summed L1 distance from `x` to every point.
pub fn l1_cost(x: &[f64], points: &[Vec<f64>]) -> f64 {
    points
        .iter()
        .map(|p| x.iter().zip(p).map(|(a, b)| (a - b).abs()).sum::<f64>())
        .sum()
}

/// Minimum of the summed L1 cost over the full cartesian grid of candidate
/// coordinates drawn from the input points (the minimizer of a separable L1
/// cost always lies on that grid). Exponential in the dimension — callers
/// keep q small.
pub fn min_l1_cost_on_grid(points: &[Vec<f64>]) -> f64 {
    let dim = points[0].len();
    let candidates: Vec<Vec<f64>> = (0..dim)
        .map(|c| points.iter().map(|p| p[c]).collect())
        .collect();
    let mut best = f64::INFINITY;
    let mut x = vec![0.0; dim];
    fn recurse(
        c: usize,
        x: &mut Vec<f64>,
        candidates: &[Vec<f64>],
        points: &[Vec<f64>],
        best: &mut f64,
    ) {
        if c == candidates.len() {
            let cost = l1_cost(x, points);
            if cost < *best {
                *best = cost;
            }
            return;
        }
        for &v in &candidates[c] {
            x[c] = v;
            recurse(c + 1, x, candidates, points, best);
        }
    }
    recurse(0, &mut x, &candidates, points, &mut best);
    best
}

/// Adjusted Rand index by direct pair counting over all C(N,2) point
/// pairs, with the same zero-denominator convention as the library
/// (degenerate agreement scores 0).
pub fn ari_by_pairs(pred: &[i64], truth: &[i64]) -> f64 {
    assert_eq!(pred.len(), truth.len());
    let n = pred.len();
    let mut both = 0.0f64;
    let mut pred_only = 0.0f64;
    let mut truth_only = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let same_pred = pred[i] == pred[j];
            let same_truth = truth[i] == truth[j];
            match (same_pred, same_truth) {
                (true, true) => both += 1.0,
                (true, false) => pred_only += 1.0,
                (false, true) => truth_only += 1.0,
                (false, false) => {}
            }
        }
    }
    let total = (n * (n - 1) / 2) as f64;
    let sum_pred = both + pred_only;
    let sum_truth = both + truth_only;
    let expected = sum_pred * sum_truth / total;
    let max = 0.5 * (sum_pred + sum_truth);
    if max - expected == 0.0 {
        0.0
    } else {
        (both - expected) / (max - expected)
    }
}

/// Connected components of the strict-threshold graph under L1, by
/// depth-first search over an explicit adjacency matrix; components are
/// numbered by smallest member index.
pub fn l1_threshold_components(points: &[Vec<f64>], radius: f64) -> Vec<usize> {
    let n = points.len();
    let adjacent =
        |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>() < radius;
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for i in 0..n {
        if comp[i] != usize::MAX {
            continue;
        }
        let mut stack = vec![i];
        comp[i] = next;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if comp[v] == usize::MAX && adjacent(&points[u], &points[v]) {
                    comp[v] = next;
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Deterministic test RNG.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random normalized histogram with `q` bins. Mixes smooth profiles with
/// sparse integer-mass ones so point masses and empty bins are exercised.
pub fn random_histogram(rng: &mut ChaCha8Rng, q: usize) -> Vec<f64> {
    loop {
        let raw: Vec<f64> = if rng.random::<f64>() < 0.3 {
            (0..q).map(|_| rng.random_range(0..4) as f64).collect()
        } else {
            (0..q).map(|_| rng.random::<f64>()).collect()
        };
        let sum: f64 = raw.iter().sum();
        if sum > 1e-3 {
            return raw.into_iter().map(|v| v / sum).collect();
        }
    }
}

/// Random cloud of histograms: `n` rows, `q` bins.
pub fn random_histogram_rows(rng: &mut ChaCha8Rng, n: usize, q: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| random_histogram(rng, q)).collect()
}

/// Random cloud of plain points with coordinates in [0, 1].
pub fn random_rows(rng: &mut ChaCha8Rng, n: usize, q: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..q).map(|_| rng.random::<f64>()).collect())
        .collect()
}

/// Random labeling with values in `0..k`.
pub fn random_labels(rng: &mut ChaCha8Rng, n: usize, k: i64) -> Vec<i64> {
    (0..n).map(|_| rng.random_range(0..k)).collect()
}

/// True when two labelings induce the same partition (ignoring label
/// values), checked pairwise.
pub fn same_partition<A: PartialEq, B: PartialEq>(a: &[A], b: &[B]) -> bool {
    assert_eq!(a.len(), b.len());
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            if (a[i] == a[j]) != (b[i] == b[j]) {
                return false;
            }
        }
    }
    true
}
