//! Benchmark configuration: a plain-text `key = value` file with one key
//! per line, `#` comments, and comma-separated lists for parameter grids.
//! Every key has a default, so an empty (or absent) file runs the full
//! documented benchmark. Setting a grid to an empty value skips that
//! algorithm.
//!
//! ```text
//! # dataset
//! dataset.seed = 0
//! dataset.per_class = 50
//! dataset.samples = 100
//! dataset.bins = 100
//! dataset.sigma = 0.02
//!
//! # bandwidths for the transport engines, in bin widths
//! wms.h = 2, 5, 10, 20
//! median-shift.h = 2, 5, 10, 20
//!
//! # bandwidth for classical mean shift on raw vectors (squared-distance units)
//! mean-shift.h = 0.02, 0.05, 0.1, 0.2, 0.5
//!
//! kmws.k = 2
//! kmws.restarts = 100
//! kmws.max_iter = 100
//!
//! dbscan-ws.eps = 1, 1.5, 2, 2.5, 3
//! dbscan-ws.min_pts = 3, 5
//! ```

use std::path::Path;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub dataset_seed: u64,
    pub per_class: usize,
    pub samples: usize,
    pub bins: usize,
    pub sigma: f64,
    /// Bandwidth grid for the transport-median engine, in bin widths.
    pub wms_h: Vec<f64>,
    /// Bandwidth grid for L1 median shift on cumulative vectors (the
    /// equivalent route), in bin widths.
    pub median_shift_h: Vec<f64>,
    /// Bandwidth grid for classical mean shift on raw histogram vectors,
    /// in squared-Euclidean units.
    pub mean_shift_h: Vec<f64>,
    pub kmws_k: usize,
    pub kmws_restarts: u64,
    pub kmws_max_iter: usize,
    pub dbscan_eps: Vec<f64>,
    pub dbscan_min_pts: Vec<usize>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            dataset_seed: 0,
            per_class: 50,
            samples: 100,
            bins: 100,
            sigma: 0.02,
            wms_h: vec![2.0, 5.0, 10.0, 20.0],
            median_shift_h: vec![2.0, 5.0, 10.0, 20.0],
            mean_shift_h: vec![0.02, 0.05, 0.1, 0.2, 0.5],
            kmws_k: 2,
            kmws_restarts: 100,
            kmws_max_iter: 100,
            dbscan_eps: vec![1.0, 1.5, 2.0, 2.5, 3.0],
            dbscan_min_pts: vec![3, 5],
        }
    }
}

fn parse_scalar<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.trim().parse().map_err(|_| {
        CliError::InvalidConfig(format!("bench config: bad value for {key}: {value:?}"))
    })
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    let trimmed = value.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|item| parse_scalar(key, item))
        .collect()
}

impl BenchConfig {
    /// Parses the documented key/value format on top of the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = Self::default();
        for (number, raw_line) in text.lines().enumerate() {
            let line = raw_line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::InvalidConfig(format!(
                    "bench config line {}: expected key = value, got {raw_line:?}",
                    number + 1
                ))
            })?;
            let key = key.trim();
            match key {
                "dataset.seed" => config.dataset_seed = parse_scalar(key, value)?,
                "dataset.per_class" => config.per_class = parse_scalar(key, value)?,
                "dataset.samples" => config.samples = parse_scalar(key, value)?,
                "dataset.bins" => config.bins = parse_scalar(key, value)?,
                "dataset.sigma" => config.sigma = parse_scalar(key, value)?,
                "wms.h" => config.wms_h = parse_list(key, value)?,
                "median-shift.h" => config.median_shift_h = parse_list(key, value)?,
                "mean-shift.h" => config.mean_shift_h = parse_list(key, value)?,
                "kmws.k" => config.kmws_k = parse_scalar(key, value)?,
                "kmws.restarts" => config.kmws_restarts = parse_scalar(key, value)?,
                "kmws.max_iter" => config.kmws_max_iter = parse_scalar(key, value)?,
                "dbscan-ws.eps" => config.dbscan_eps = parse_list(key, value)?,
                "dbscan-ws.min_pts" => config.dbscan_min_pts = parse_list(key, value)?,
                _ => {
                    return Err(CliError::InvalidConfig(format!(
                        "bench config line {}: unknown key {key:?}",
                        number + 1
                    )))
                }
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    fn validate(&self) -> Result<()> {
        let positive = |name: &str, ok: bool| {
            if ok {
                Ok(())
            } else {
                Err(CliError::InvalidConfig(format!(
                    "bench config: {name} must be positive"
                )))
            }
        };
        positive("dataset.per_class", self.per_class >= 1)?;
        positive("dataset.samples", self.samples >= 1)?;
        positive("dataset.bins", self.bins >= 1)?;
        positive("dataset.sigma", self.sigma > 0.0)?;
        positive("wms.h entries", self.wms_h.iter().all(|&h| h > 0.0))?;
        positive(
            "median-shift.h entries",
            self.median_shift_h.iter().all(|&h| h > 0.0),
        )?;
        positive(
            "mean-shift.h entries",
            self.mean_shift_h.iter().all(|&h| h > 0.0),
        )?;
        positive("kmws.k", self.kmws_k >= 1)?;
        positive("kmws.restarts", self.kmws_restarts >= 1)?;
        positive("kmws.max_iter", self.kmws_max_iter >= 1)?;
        positive(
            "dbscan-ws.eps entries",
            self.dbscan_eps.iter().all(|&e| e > 0.0),
        )?;
        positive(
            "dbscan-ws.min_pts entries",
            self.dbscan_min_pts.iter().all(|&m| m >= 1),
        )?;
        Ok(())
    }

    /// The resolved configuration as JSON for the run manifest.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dataset": {
                "seed": self.dataset_seed,
                "per_class": self.per_class,
                "samples": self.samples,
                "bins": self.bins,
                "sigma": self.sigma,
            },
            "wms": { "h": self.wms_h },
            "median-shift": { "h": self.median_shift_h },
            "mean-shift": { "h": self.mean_shift_h },
            "kmws": {
                "k": self.kmws_k,
                "restarts": self.kmws_restarts,
                "max_iter": self.kmws_max_iter,
            },
            "dbscan-ws": {
                "eps": self.dbscan_eps,
                "min_pts": self.dbscan_min_pts,
            },
        })
    }
}
