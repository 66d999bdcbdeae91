//! Implementations of the five subcommands. Each writes its outputs plus a
//! `manifest.json` and returns through [`crate::error::CliError`] so `main`
//! can map failures onto documented exit codes.

use std::collections::HashSet;
use std::path::Path;
use std::time::Instant;

use wshift_core::{
    adjusted_rand_index, cluster_dataset, dbscan_wasserstein, gen_synthetic, kmeans_wasserstein,
    series_to_histogram, ClusterResult, DistanceKind, EngineConfig, EngineKind, KernelSpec,
    MergePolicy, PointCloud, SynthConfig,
};

use crate::bench_config::BenchConfig;
use crate::error::{CliError, Result};
use crate::manifest::RunManifest;
use crate::{io, AlgoArg, BenchArgs, ClusterArgs, EvalArgs, GenerateArgs, IngestArgs};

pub fn run_generate(args: &GenerateArgs) -> Result<()> {
    let started = Instant::now();
    let config = SynthConfig {
        per_class: args.per_class,
        samples_per_histogram: args.samples,
        bins: args.bins,
        sigma: args.sigma,
        rng_seed: args.seed,
        ..SynthConfig::default()
    };
    let data = gen_synthetic(&config)?;

    std::fs::create_dir_all(&args.out)?;
    let histograms = args.out.join("histograms.csv");
    let labels = args.out.join("labels.csv");
    io::write_matrix(&histograms, data.cloud.points())?;
    io::write_labels(&labels, data.labels())?;

    RunManifest::new("generate", serde_json::to_value(&config)?)
        .output(&histograms)
        .output(&labels)
        .seed(args.seed)
        .write(&args.out, started)?;
    println!(
        "wrote {} histograms with {} bins to {}",
        data.cloud.len(),
        data.cloud.dim(),
        args.out.display()
    );
    Ok(())
}

pub fn run_ingest(args: &IngestArgs) -> Result<()> {
    let started = Instant::now();
    let mut files: Vec<_> = std::fs::read_dir(&args.input)?
        .collect::<std::io::Result<Vec<_>>>()?
        .into_iter()
        .map(|entry| entry.path())
        .filter(|path| path.is_file())
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::Parse(format!(
            "{}: no series files found",
            args.input.display()
        )));
    }

    let mut rows = Vec::with_capacity(files.len());
    for path in &files {
        rows.push(read_series(path, args.bins, (args.lo, args.hi))?);
    }

    std::fs::create_dir_all(&args.out)?;
    let histograms = args.out.join("histograms.csv");
    io::write_matrix(&histograms, &rows)?;

    let mut manifest = RunManifest::new(
        "ingest",
        serde_json::json!({
            "bins": args.bins,
            "range": [args.lo, args.hi],
            "files": files.len(),
        }),
    );
    for path in &files {
        manifest = manifest.input(path);
    }
    manifest.output(&histograms).write(&args.out, started)?;
    println!(
        "ingested {} series into {}",
        files.len(),
        histograms.display()
    );
    Ok(())
}

/// One series file: plain text, one real per line, blank lines ignored.
fn read_series(path: &Path, bins: usize, range: (f64, f64)) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)?;
    let mut values = Vec::new();
    for (number, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let value: f64 = trimmed.parse().map_err(|_| {
            CliError::Parse(format!(
                "{}: line {}: not a number: {trimmed:?}",
                path.display(),
                number + 1
            ))
        })?;
        values.push(value);
    }
    let histogram = series_to_histogram(&values, bins, range)?;
    Ok(histogram.into_bins())
}

pub fn run_cluster(args: &ClusterArgs) -> Result<()> {
    let started = Instant::now();
    let rows = io::read_matrix(&args.input)?;
    let cloud = PointCloud::new(rows, None)?;

    let result = match args.algo {
        AlgoArg::Wms | AlgoArg::MedianShift | AlgoArg::MeanShift => {
            let h = args.h.ok_or(CliError::MissingParameter("--h"))?;
            let (engine, distance) = match args.algo {
                AlgoArg::Wms => (EngineKind::Wms, DistanceKind::Wasserstein1),
                AlgoArg::MedianShift => (EngineKind::MedianShift, DistanceKind::L1),
                _ => (EngineKind::MeanShift, DistanceKind::SquaredEuclidean),
            };
            let mut config = EngineConfig::new(KernelSpec::triangular(h)?, distance);
            config.max_iterations = args.max_iter;
            let policy = match args.merge_radius {
                Some(radius) => MergePolicy::new(radius)?,
                None => MergePolicy::from_bandwidth(h),
            };
            cluster_dataset(&cloud, engine, &config, &policy)?
        }
        AlgoArg::Kmws => {
            let k = args.k.ok_or(CliError::MissingParameter("--k"))?;
            kmeans_wasserstein(&cloud, k, args.seed, args.max_iter)?
        }
        AlgoArg::DbscanWs => {
            let eps = args.eps.ok_or(CliError::MissingParameter("--eps"))?;
            let min_pts = args
                .min_pts
                .ok_or(CliError::MissingParameter("--min-pts"))?;
            dbscan_wasserstein(&cloud, eps, min_pts)?
        }
    };

    std::fs::create_dir_all(&args.out)?;
    let labels = args.out.join("labels.csv");
    let modes = args.out.join("modes.csv");
    io::write_labels(&labels, &result.labels)?;
    io::write_matrix(&modes, &result.modes)?;

    RunManifest::new("cluster", serde_json::to_value(&result.config)?)
        .input(&args.input)
        .output(&labels)
        .output(&modes)
        .seed(args.seed)
        .write(&args.out, started)?;
    println!(
        "assigned {} points to {} clusters",
        result.labels.len(),
        result.cluster_count()
    );
    Ok(())
}

pub fn run_eval(args: &EvalArgs) -> Result<()> {
    let pred = io::read_labels(&args.pred)?;
    let truth = io::read_labels(&args.truth)?;
    let score = adjusted_rand_index(&pred, &truth)?;
    println!("ari={:.6}", score.value);
    if let Some(json_path) = &args.json {
        let distinct = |labels: &[i64]| labels.iter().collect::<HashSet<_>>().len();
        let summary = serde_json::json!({
            "ari": score.value,
            "n": pred.len(),
            "clusters_pred": distinct(&pred),
            "clusters_true": distinct(&truth),
        });
        std::fs::write(json_path, serde_json::to_string_pretty(&summary)? + "\n")?;
    }
    Ok(())
}

struct BenchRow {
    algorithm: &'static str,
    params: String,
    ari: Option<f64>,
    seconds: f64,
}

/// Runs one benchmark configuration, scoring against `truth`. Failures are
/// recorded as a blank ARI rather than aborting the sweep.
fn bench_row(
    algorithm: &'static str,
    params: String,
    truth: &[i64],
    run: impl FnOnce() -> wshift_core::Result<ClusterResult>,
) -> BenchRow {
    let started = Instant::now();
    let outcome = run();
    let seconds = started.elapsed().as_secs_f64();
    let ari = match outcome {
        Ok(result) => match adjusted_rand_index(&result.labels, truth) {
            Ok(score) => Some(score.value),
            Err(e) => {
                eprintln!("bench: {algorithm} {params}: scoring failed: {e}");
                None
            }
        },
        Err(e) => {
            eprintln!("bench: {algorithm} {params}: {e}");
            None
        }
    };
    BenchRow {
        algorithm,
        params,
        ari,
        seconds,
    }
}

fn shift_config(h: f64, distance: DistanceKind) -> wshift_core::Result<EngineConfig> {
    Ok(EngineConfig::new(KernelSpec::triangular(h)?, distance))
}

pub fn run_bench(args: &BenchArgs) -> Result<()> {
    let started = Instant::now();
    let config = match &args.config {
        Some(path) => BenchConfig::load(path)?,
        None => BenchConfig::default(),
    };

    let synth = SynthConfig {
        per_class: config.per_class,
        samples_per_histogram: config.samples,
        bins: config.bins,
        sigma: config.sigma,
        rng_seed: config.dataset_seed,
        ..SynthConfig::default()
    };
    let data = gen_synthetic(&synth)?;
    let cloud = &data.cloud;
    let truth = data.labels();

    let mut rows = Vec::new();

    for &h in &config.wms_h {
        rows.push(bench_row("wms", format!("h={h}"), truth, || {
            cluster_dataset(
                cloud,
                EngineKind::Wms,
                &shift_config(h, DistanceKind::Wasserstein1)?,
                &MergePolicy::from_bandwidth(h),
            )
        }));
    }

    // The equivalent route: L1 median shift on the cumulative vectors.
    if !config.median_shift_h.is_empty() {
        let cumulative_cloud = PointCloud::new(cloud.cumulatives()?, None)?;
        for &h in &config.median_shift_h {
            rows.push(bench_row(
                "median-shift-cumulative",
                format!("h={h}"),
                truth,
                || {
                    cluster_dataset(
                        &cumulative_cloud,
                        EngineKind::MedianShift,
                        &shift_config(h, DistanceKind::L1)?,
                        &MergePolicy::from_bandwidth(h),
                    )
                },
            ));
        }
    }

    for &h in &config.mean_shift_h {
        rows.push(bench_row("mean-shift", format!("h={h}"), truth, || {
            cluster_dataset(
                cloud,
                EngineKind::MeanShift,
                &shift_config(h, DistanceKind::SquaredEuclidean)?,
                &MergePolicy::from_bandwidth(h),
            )
        }));
    }

    for restart in 0..config.kmws_restarts {
        rows.push(bench_row(
            "kmws",
            format!("k={} seed={restart}", config.kmws_k),
            truth,
            || kmeans_wasserstein(cloud, config.kmws_k, restart, config.kmws_max_iter),
        ));
    }

    for &eps in &config.dbscan_eps {
        for &min_pts in &config.dbscan_min_pts {
            rows.push(bench_row(
                "dbscan-ws",
                format!("eps={eps} min_pts={min_pts}"),
                truth,
                || dbscan_wasserstein(cloud, eps, min_pts),
            ));
        }
    }

    std::fs::create_dir_all(&args.out)?;
    let report = args.out.join("report.csv");
    write_report(&report, &rows)?;
    print!("{}", render_table(&rows, &config));

    RunManifest::new("bench", config.to_json())
        .output(&report)
        .seed(config.dataset_seed)
        .write(&args.out, started)?;
    Ok(())
}

fn write_report(path: &Path, rows: &[BenchRow]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(["algorithm", "params", "ari", "seconds"])?;
    for row in rows {
        let ari = row.ari.map_or(String::new(), |v| format!("{v:.6}"));
        writer.write_record([
            row.algorithm,
            &row.params,
            &ari,
            &format!("{:.4}", row.seconds),
        ])?;
    }
    writer.flush().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

fn render_table(rows: &[BenchRow], config: &BenchConfig) -> String {
    let mut out = format!(
        "dataset: {} histograms (2 x {}), {} bins, seed {}\n\n{:<24} {:>5} {:>9}  {:<20} {}\n",
        2 * config.per_class,
        config.per_class,
        config.bins,
        config.dataset_seed,
        "algorithm",
        "rows",
        "best ARI",
        "best params",
        "notes"
    );
    let mut seen = Vec::new();
    for row in rows {
        if !seen.contains(&row.algorithm) {
            seen.push(row.algorithm);
        }
    }
    for algorithm in seen {
        let group: Vec<&BenchRow> = rows.iter().filter(|r| r.algorithm == algorithm).collect();
        let scored: Vec<(&str, f64)> = group
            .iter()
            .filter_map(|r| r.ari.map(|a| (r.params.as_str(), a)))
            .collect();
        let (best_params, best) = scored
            .iter()
            .copied()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap_or(("-", f64::NAN));
        let notes = if algorithm == "kmws" && !scored.is_empty() {
            let mean = scored.iter().map(|&(_, a)| a).sum::<f64>() / scored.len() as f64;
            let var =
                scored.iter().map(|&(_, a)| (a - mean).powi(2)).sum::<f64>() / scored.len() as f64;
            format!(
                "mean {mean:.4}, std {:.4} over {} restarts",
                var.sqrt(),
                scored.len()
            )
        } else if scored.len() < group.len() {
            format!("{} rows failed", group.len() - scored.len())
        } else {
            String::new()
        };
        out.push_str(&format!(
            "{:<24} {:>5} {:>9}  {:<20} {}\n",
            algorithm,
            group.len(),
            if best.is_nan() {
                "-".to_string()
            } else {
                format!("{best:.4}")
            },
            best_params,
            notes
        ));
    }
    out
}
