//! Clustering agreement scores.
//!
//! The adjusted Rand index is computed from the contingency table of two
//! labelings using the permutation-model adjustment: 1 for identical
//! partitions, about 0 for independent ones, negative for worse than
//! chance. Label values themselves carry no meaning — only the induced
//! partition does — so any relabeling leaves the score unchanged. A noise
//! label (`-1`) is treated as an ordinary cluster of its own.

use crate::error::{Error, Result};

/// Cross-tabulation of two labelings of the same points. Row and column
/// order follow first occurrence of each label in the inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    /// `counts[u][v]` = number of points with `u`-th predicted label and
    /// `v`-th true label.
    pub counts: Vec<Vec<usize>>,
    /// Row sums: points per predicted cluster.
    pub row_sums: Vec<usize>,
    /// Column sums: points per true cluster.
    pub col_sums: Vec<usize>,
    /// Total number of points.
    pub n: usize,
}

/// Adjusted Rand index value in `[-0.5, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AriScore {
    pub value: f64,
}

/// Builds the contingency table of two equal-length labelings.
pub fn contingency(pred: &[i64], truth: &[i64]) -> Result<ContingencyTable> {
    if pred.len() != truth.len() {
        return Err(Error::LengthMismatch {
            left: pred.len(),
            right: truth.len(),
        });
    }
    if pred.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut pred_ids: Vec<i64> = Vec::new();
    let mut truth_ids: Vec<i64> = Vec::new();
    let mut cells: Vec<(usize, usize)> = Vec::with_capacity(pred.len());
    for (&p, &t) in pred.iter().zip(truth) {
        let u = index_of(&mut pred_ids, p);
        let v = index_of(&mut truth_ids, t);
        cells.push((u, v));
    }
    let mut counts = vec![vec![0usize; truth_ids.len()]; pred_ids.len()];
    for (u, v) in cells {
        counts[u][v] += 1;
    }
    let row_sums: Vec<usize> = counts.iter().map(|row| row.iter().sum()).collect();
    let col_sums: Vec<usize> = (0..truth_ids.len())
        .map(|v| counts.iter().map(|row| row[v]).sum())
        .collect();
    Ok(ContingencyTable {
        counts,
        row_sums,
        col_sums,
        n: pred.len(),
    })
}

fn index_of(ids: &mut Vec<i64>, label: i64) -> usize {
    match ids.iter().position(|&l| l == label) {
        Some(i) => i,
        None => {
            ids.push(label);
            ids.len() - 1
        }
    }
}

fn choose2(n: usize) -> f64 {
    let n = n as f64;
    n * (n - 1.0) / 2.0
}

/// Adjusted Rand index between two labelings.
///
/// With fewer than two points, or when both labelings are trivial in the
/// same way (each a single cluster, or both all-singletons), the adjustment
/// denominator is zero; this implementation returns 0 in that case, taking
/// "no information beyond chance" over the convention of returning 1 for
/// two identical trivial partitions.
pub fn adjusted_rand_index(pred: &[i64], truth: &[i64]) -> Result<AriScore> {
    let table = contingency(pred, truth)?;
    if table.n < 2 {
        return Err(Error::TooFewPoints { n: table.n });
    }
    let sum_cells: f64 = table
        .counts
        .iter()
        .flat_map(|row| row.iter())
        .map(|&c| choose2(c))
        .sum();
    let sum_rows: f64 = table.row_sums.iter().map(|&a| choose2(a)).sum();
    let sum_cols: f64 = table.col_sums.iter().map(|&b| choose2(b)).sum();
    let expected = sum_rows * sum_cols / choose2(table.n);
    let max = 0.5 * (sum_rows + sum_cols);
    let denominator = max - expected;
    if denominator == 0.0 {
        return Ok(AriScore { value: 0.0 });
    }
    Ok(AriScore {
        value: (sum_cells - expected) / denominator,
    })
}
