//! Command-line surface. Every subcommand prints one JSON envelope (see
//! [`crate::report::envelope`]) and writes its declared artifacts.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::clustering::{load_clustering, save_clustering};
use crate::clustermetrics::{class_distance_stats, overlap_delta, score};
use crate::error::{Error, Result};
use crate::featureset::{load_features, save_csv, save_features, subset, FeatureSet};
use crate::indicators::{
    aggregate_corruption_accuracy, correlate, corrupted_accuracy, load_records, robustness, table2, CorrelationReport,
    Indicator, ModelRecord,
};
use crate::kmeans::{kmeans_with, KmeansOptions};
use crate::multicut::{
    build_cost_graph, cluster_parallel, default_temperature, linear_grid, objective, threshold_sweep, MAX_DENSE_NODES,
};
use crate::report::{emit_scatter, envelope, projection_csv, to_json_text, SvgOptions};
use crate::spectra::{components_for_ratio, fit_pca, project2d};
use crate::synth::{class_means, corrupt, generate_mixture, nearest_mean_accuracy, CorruptionSpec, MixtureSpec};

/// Environment variable consulted when `--seed` is not given.
pub const SEED_ENV: &str = "LATENTPROBE_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "latentprobe",
    version,
    about = "Latent-space clusterability as a robustness indicator",
    arg_required_else_help = true
)]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a synthetic mixture and its corrupted copies.
    GenSynthetic(GenArgs),
    /// Lloyd's k-means with k-means++ seeding.
    Kmeans(KmeansArgs),
    /// Minimum-cost multicut, optionally with a threshold sweep.
    Multicut(MulticutArgs),
    /// Cluster accuracy, purity, singleton fraction and class overlap.
    Metrics(MetricsArgs),
    /// Per-model robustness and indicator values.
    Indicators(RecordsArgs),
    /// Correlate one indicator with robustness.
    Correlate(CorrelateArgs),
    /// PCA explained-variance profile.
    Pca(PcaArgs),
    /// Two-dimensional PCA scatter CSV.
    Project2d(Project2dArgs),
    /// R² and τ for every indicator at every severity.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum FileFormat {
    Bin,
    Csv,
}

#[derive(Debug, Args, Serialize)]
struct GenArgs {
    #[arg(long, default_value_t = 5)]
    classes: usize,
    #[arg(long, default_value_t = 8)]
    dim: usize,
    #[arg(long, default_value_t = 40)]
    per_class: usize,
    /// Distance between class means in units of the noise std.
    #[arg(long, default_value_t = 4.0)]
    separation: f64,
    #[arg(long, default_value_t = 1.0)]
    noise_std: f64,
    /// Severity levels 1..=S.
    #[arg(long, default_value_t = 5)]
    severities: u32,
    #[arg(long, default_value_t = 0.5)]
    drift_scale: f64,
    #[arg(long, default_value_t = 0.35)]
    noise_growth: f64,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    seed: u64,
    /// Seed of the drift direction and corruption noise (default: --seed).
    #[arg(long)]
    drift_seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = FileFormat::Bin)]
    format: FileFormat,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Debug, Args, Serialize)]
struct KmeansArgs {
    #[arg(long)]
    features: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 300)]
    max_iter: usize,
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    #[arg(long, default_value_t = 1)]
    restarts: usize,
    /// Clustering file to write.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Inclusive threshold grid `start:stop:step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl FromStr for SweepSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let nums: Vec<f64> = parts
            .iter()
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| format!("bad sweep `{s}`: {e}"))?;
        match nums[..] {
            [start, stop, step] => Ok(SweepSpec { start, stop, step }),
            _ => Err(format!("bad sweep `{s}`: expected start:stop:step")),
        }
    }
}

#[derive(Debug, Args, Serialize)]
struct MulticutArgs {
    #[arg(long)]
    features: PathBuf,
    /// Decision-boundary squared distance.
    #[arg(long, required_unless_present = "sweep")]
    theta: Option<f64>,
    /// Sigmoid temperature (default: std of sampled squared distances).
    #[arg(long)]
    temperature: Option<f64>,
    /// Pick theta by cluster accuracy over `start:stop:step`.
    #[arg(long)]
    sweep: Option<SweepSpec>,
    /// Disjoint chunks solved independently and then merged; raised to
    /// ceil(n / 4096) when needed.
    #[arg(long, default_value_t = 1)]
    chunks: usize,
    /// Cluster a seeded random subset of this many rows.
    #[arg(long)]
    subset_size: Option<usize>,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = crate::multicut::DEFAULT_KL_PASSES)]
    kl_passes: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    sweep_csv: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
struct MetricsArgs {
    /// Clustering file.
    #[arg(long)]
    pred: PathBuf,
    #[arg(long)]
    features: PathBuf,
    /// Report distance statistics unnormalized.
    #[arg(long)]
    raw_distances: bool,
}

#[derive(Debug, Args, Serialize)]
#[group(required = true, multiple = false, id = "source")]
struct RecordSource {
    /// Record file; `table2` / `table2.json` fall back to the bundled fixture
    /// when no such file exists.
    #[arg(long, group = "source")]
    fixture: Option<PathBuf>,
    /// Record file (object with `records` or a bare array).
    #[arg(long, group = "source")]
    records: Option<PathBuf>,
}

impl RecordSource {
    fn load(&self) -> Result<Vec<ModelRecord>> {
        match (&self.fixture, &self.records) {
            (Some(path), _) => resolve_fixture(path),
            (None, Some(path)) => load_records(path),
            (None, None) => Err(Error::InvalidParameter("one of --fixture or --records is required".into())),
        }
    }
}

/// Loads a fixture path, falling back to the bundled table for its name.
pub fn resolve_fixture(path: &Path) -> Result<Vec<ModelRecord>> {
    if path.exists() {
        return load_records(path);
    }
    match path.file_name().and_then(|n| n.to_str()) {
        Some("table2" | "table2.json") => Ok(table2().records),
        _ => load_records(path),
    }
}

#[derive(Debug, Args, Serialize)]
struct RecordsArgs {
    #[command(flatten)]
    source: RecordSource,
}

#[derive(Debug, Args, Serialize)]
struct CorrelateArgs {
    #[command(flatten)]
    source: RecordSource,
    #[arg(long, value_enum, default_value_t = Indicator::CombinedPurity)]
    indicator: Indicator,
    /// Use robustness at a single severity level.
    #[arg(long)]
    severity: Option<u32>,
    /// Scatter CSV (always written).
    #[arg(long, default_value = "scatter.csv")]
    csv: PathBuf,
    /// Scatter plot with the least-squares line.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Omit the timestamp comment from the SVG.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReduceTo {
    Auto,
    Components(usize),
}

impl FromStr for ReduceTo {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "auto" {
            return Ok(ReduceTo::Auto);
        }
        s.parse().map(ReduceTo::Components).map_err(|_| format!("expected `auto` or a count, got `{s}`"))
    }
}

#[derive(Debug, Args, Serialize)]
struct PcaArgs {
    #[arg(long)]
    features: PathBuf,
    /// Cumulative explained-variance thresholds.
    #[arg(long, value_delimiter = ',', default_value = "0.75,0.80")]
    threshold: Vec<f64>,
    /// Components to keep; `auto` uses the first threshold.
    #[arg(long)]
    reduce_to: Option<ReduceTo>,
    /// Reduced feature container (requires --reduce-to).
    #[arg(long, requires = "reduce_to")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
struct Project2dArgs {
    #[arg(long)]
    features: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
struct ReportArgs {
    #[command(flatten)]
    source: RecordSource,
    /// Directory for per-indicator scatter CSV (and SVG with --svg).
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    svg: bool,
    #[arg(long)]
    no_timestamp: bool,
}

fn error_json(kind: &str, message: &str) -> String {
    json!({ "error": { "kind": kind, "message": message } }).to_string()
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    use clap::error::ErrorKind;

    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
                _ => {
                    let _ = writeln!(err, "{}", error_json("usage", &e.render().to_string()));
                    2
                }
            };
        }
    };

    let result = match cli.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command)),
            Err(e) => Err(Error::InvalidParameter(format!("--jobs {jobs}: {e}"))),
        },
        None => dispatch(&cli.command),
    };
    match result.and_then(|v| to_json_text(&v)) {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "{}", error_json(e.kind(), &e.to_string()));
            1
        }
    }
}

fn dispatch(command: &Command) -> Result<Value> {
    match command {
        Command::GenSynthetic(a) => envelope("gen-synthetic", a, &gen_synthetic(a)?),
        Command::Kmeans(a) => envelope("kmeans", a, &run_kmeans(a)?),
        Command::Multicut(a) => envelope("multicut", a, &run_multicut(a)?),
        Command::Metrics(a) => envelope("metrics", a, &run_metrics(a)?),
        Command::Indicators(a) => envelope("indicators", a, &run_indicators(a)?),
        Command::Correlate(a) => envelope("correlate", a, &run_correlate(a)?),
        Command::Pca(a) => envelope("pca", a, &run_pca(a)?),
        Command::Project2d(a) => envelope("project2d", a, &run_project2d(a)?),
        Command::Report(a) => envelope("report", a, &run_report(a)?),
    }
}

fn write_features(fs: &FeatureSet, path: &Path, format: FileFormat) -> Result<()> {
    match format {
        FileFormat::Bin => save_features(fs, path),
        FileFormat::Csv => save_csv(fs, path),
    }
}

fn gen_synthetic(a: &GenArgs) -> Result<Value> {
    let mixture = MixtureSpec {
        class_count: a.classes,
        dim: a.dim,
        per_class: a.per_class,
        separation: a.separation,
        noise_std: a.noise_std,
        seed: a.seed,
    };
    let corruption = CorruptionSpec {
        severities: (1..=a.severities).collect(),
        drift_scale: a.drift_scale,
        noise_growth: a.noise_growth,
        drift_seed: a.drift_seed.unwrap_or(a.seed),
    };
    corruption.validate()?;
    let fs = generate_mixture(&mixture)?;
    std::fs::create_dir_all(&a.out_dir)?;
    let ext = match a.format {
        FileFormat::Bin => "lpfs",
        FileFormat::Csv => "csv",
    };
    let means = class_means(&fs);
    let overlap = |f: &FeatureSet| class_distance_stats(f, true).map(|s| overlap_delta(&s)).ok();

    let clean_path = a.out_dir.join(format!("clean.{ext}"));
    write_features(&fs, &clean_path, a.format)?;
    let mut levels = vec![json!({
        "severity": 0,
        "path": clean_path,
        "nearest_mean_accuracy": nearest_mean_accuracy(&means, &fs),
        "delta": overlap(&fs),
    })];
    for &s in &corruption.severities {
        let noisy = corrupt(&fs, &corruption, s)?;
        let path = a.out_dir.join(format!("severity-{s}.{ext}"));
        write_features(&noisy, &path, a.format)?;
        levels.push(json!({
            "severity": s,
            "path": path,
            "nearest_mean_accuracy": nearest_mean_accuracy(&means, &noisy),
            "delta": overlap(&noisy),
        }));
    }
    Ok(json!({
        "n": fs.n(),
        "d": fs.d(),
        "class_count": fs.class_count(),
        "levels": levels,
    }))
}

fn run_kmeans(a: &KmeansArgs) -> Result<Value> {
    let fs = load_features(&a.features)?;
    let opts = KmeansOptions {
        k: a.k,
        seed: a.seed,
        max_iter: a.max_iter,
        tol: a.tol,
        restarts: a.restarts,
    };
    let r = kmeans_with(&fs, &opts)?;
    if let Some(path) = &a.out {
        save_clustering(&r.clustering, path)?;
    }
    Ok(json!({
        "n": fs.n(),
        "k": a.k,
        "objective": r.objective,
        "iterations": r.iterations,
        "converged": r.converged,
        "cluster_sizes": r.clustering.sizes(),
        "scores": score(&r.clustering, fs.labels())?,
    }))
}

/// Chunk count actually used: at least enough chunks to keep each one dense.
pub fn effective_chunks(requested: usize, n: usize) -> usize {
    requested.max(n.div_ceil(MAX_DENSE_NODES)).min(n.max(1))
}

fn run_multicut(a: &MulticutArgs) -> Result<Value> {
    let full = load_features(&a.features)?;
    let (fs, subset_rows) = match a.subset_size {
        Some(size) => {
            let chunk = subset(&full, size, a.seed)?;
            (chunk.features, Some(chunk.indices.len()))
        }
        None => (full, None),
    };
    let n = fs.n();
    let temperature = match a.temperature {
        Some(t) => t,
        None => default_temperature(&fs, 100_000, a.seed),
    };

    let (theta, sweep) = match (&a.sweep, a.theta) {
        (Some(spec), _) => {
            if n > MAX_DENSE_NODES {
                return Err(Error::InvalidParameter(format!(
                    "a sweep solves the full graph; use --subset-size <= {MAX_DENSE_NODES}"
                )));
            }
            let grid = linear_grid(spec.start, spec.stop, spec.step)?;
            let r = threshold_sweep(&fs, &grid, temperature)?;
            if let Some(path) = &a.sweep_csv {
                std::fs::write(path, r.table.to_csv())?;
            }
            (r.best_theta, Some(r.table))
        }
        (None, Some(theta)) => (theta, None),
        (None, None) => return Err(Error::InvalidParameter("--theta or --sweep is required".into())),
    };

    let chunks = effective_chunks(a.chunks, n);
    let c = cluster_parallel(&fs, chunks, theta, temperature, a.seed, a.kl_passes)?;
    if let Some(path) = &a.out {
        save_clustering(&c, path)?;
    }
    let obj = if n <= MAX_DENSE_NODES {
        Some(objective(&build_cost_graph(&fs, theta, temperature)?, &c)?)
    } else {
        None
    };
    Ok(json!({
        "n": n,
        "subset_size": subset_rows,
        "theta": theta,
        "temperature": temperature,
        "chunks": chunks,
        "objective": obj,
        "cluster_count": c.cluster_count(),
        "scores": score(&c, fs.labels())?,
        "sweep": sweep,
    }))
}

fn run_metrics(a: &MetricsArgs) -> Result<Value> {
    let fs = load_features(&a.features)?;
    let pred = load_clustering(&a.pred)?;
    let scores = score(&pred, fs.labels())?;
    let (stats, delta, note) = match class_distance_stats(&fs, !a.raw_distances) {
        Ok(s) => (Some(s), Some(overlap_delta(&s)), None),
        Err(e) => (None, None, Some(e.to_string())),
    };
    Ok(json!({
        "acc": scores.acc,
        "purity": scores.purity,
        "singleton_fraction": scores.singleton_fraction,
        "cluster_count": scores.cluster_count,
        "delta": delta,
        "stats": stats,
        "stats_error": note,
    }))
}

fn run_indicators(a: &RecordsArgs) -> Result<Value> {
    let records = a.source.load()?;
    let mut models = Vec::with_capacity(records.len());
    for r in &records {
        r.validate()?;
        let per_severity = aggregate_corruption_accuracy(&r.corruption_grid)?
            .per_severity
            .iter()
            .map(|&acc| robustness(acc, r.clean_acc))
            .collect::<Result<Vec<f64>>>()?;
        let values: serde_json::Map<String, Value> = Indicator::ALL
            .iter()
            .map(|i| (i.name().to_string(), i.value(r).ok().map_or(Value::Null, Value::from)))
            .collect();
        models.push(json!({
            "name": r.name,
            "clean_acc": r.clean_acc,
            "corruption_acc_all": corrupted_accuracy(r, None)?,
            "robustness": robustness(corrupted_accuracy(r, None)?, r.clean_acc)?,
            "robustness_by_severity": per_severity,
            "indicators": values,
        }));
    }
    Ok(json!({ "models": models }))
}

fn svg_options(report: &CorrelationReport, no_timestamp: bool) -> SvgOptions {
    SvgOptions {
        title: format!(
            "{}: R² = {:.3}, τ = {:.3}",
            report.indicator, report.r_squared, report.kendall_tau
        ),
        x_label: report.indicator.name().to_string(),
        y_label: "robustness".into(),
        timestamp: !no_timestamp,
        ..SvgOptions::default()
    }
}

fn run_correlate(a: &CorrelateArgs) -> Result<Value> {
    let records = a.source.load()?;
    let report = correlate(&records, a.indicator, a.severity)?;
    emit_scatter(
        &report.points,
        &report.fit,
        &a.csv,
        a.svg.as_deref(),
        &svg_options(&report, a.no_timestamp),
    )?;
    Ok(serde_json::to_value(&report)?)
}

fn run_pca(a: &PcaArgs) -> Result<Value> {
    let fs = load_features(&a.features)?;
    let pca = fit_pca(&fs)?;
    let components = a
        .threshold
        .iter()
        .map(|&t| Ok(json!({ "threshold": t, "components": components_for_ratio(&pca.profile, t)? })))
        .collect::<Result<Vec<Value>>>()?;
    let reduced_to = match a.reduce_to {
        None => None,
        Some(ReduceTo::Components(m)) => Some(m),
        Some(ReduceTo::Auto) => {
            let t = a.threshold.first().copied().unwrap_or(0.75);
            Some(components_for_ratio(&pca.profile, t)?)
        }
    };
    if let Some(m) = reduced_to {
        let reduced = pca.project(&fs, m)?;
        if let Some(path) = &a.out {
            save_features(&reduced, path)?;
        }
    }
    Ok(json!({
        "n": fs.n(),
        "d": fs.d(),
        "profile": pca.profile,
        "components_at_threshold": components,
        "reduced_to": reduced_to,
    }))
}

fn run_project2d(a: &Project2dArgs) -> Result<Value> {
    let fs = load_features(&a.features)?;
    let coords = project2d(&fs)?;
    std::fs::write(&a.out, projection_csv(&coords, fs.labels()))?;
    Ok(json!({ "n": fs.n(), "path": a.out }))
}

fn run_report(a: &ReportArgs) -> Result<Value> {
    let records = a.source.load()?;
    let severities = records
        .iter()
        .map(|r| aggregate_corruption_accuracy(&r.corruption_grid).map(|g| g.per_severity.len()))
        .collect::<Result<Vec<usize>>>()?
        .into_iter()
        .min()
        .unwrap_or(0);
    if let Some(dir) = &a.out_dir {
        std::fs::create_dir_all(dir)?;
    }
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for indicator in Indicator::ALL {
        let all = match correlate(&records, indicator, None) {
            Ok(r) => r,
            Err(Error::MissingField { model, field }) => {
                skipped.push(json!({ "indicator": indicator, "model": model, "field": field }));
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut per_severity = Vec::with_capacity(severities);
        for s in 1..=severities as u32 {
            let r = correlate(&records, indicator, Some(s))?;
            per_severity.push(json!({ "severity": s, "r_squared": r.r_squared, "kendall_tau": r.kendall_tau }));
        }
        if let Some(dir) = &a.out_dir {
            let csv = dir.join(format!("{}.csv", indicator.name()));
            let svg = a.svg.then(|| dir.join(format!("{}.svg", indicator.name())));
            emit_scatter(&all.points, &all.fit, &csv, svg.as_deref(), &svg_options(&all, a.no_timestamp))?;
        }
        rows.push(json!({
            "indicator": indicator,
            "r_squared": all.r_squared,
            "kendall_tau": all.kendall_tau,
            "fit": all.fit,
            "per_severity": per_severity,
        }));
    }
    Ok(json!({ "models": records.len(), "rows": rows, "skipped": skipped }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn no_arguments_prints_usage_with_code_2() {
        let (code, _, err) = run_capture(&["latentprobe"]);
        assert_eq!(code, 2);
        assert!(err.contains("Usage"));
    }

    #[test]
    fn unknown_flag_is_a_json_error() {
        let (code, _, err) = run_capture(&["latentprobe", "pca", "--bogus"]);
        assert_eq!(code, 2);
        let v: Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"]["kind"], "usage");
    }

    #[test]
    fn missing_input_is_a_json_error() {
        let (code, out, err) = run_capture(&["latentprobe", "pca", "--features", "/nonexistent/x.lpfs"]);
        assert_eq!(code, 1);
        assert!(out.is_empty());
        let v: Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"]["kind"], "io");
    }

    #[test]
    fn sweep_spec_parsing() {
        assert_eq!(
            "1:5:0.5".parse::<SweepSpec>().unwrap(),
            SweepSpec {
                start: 1.0,
                stop: 5.0,
                step: 0.5
            }
        );
        assert!("1:5".parse::<SweepSpec>().is_err());
        assert!("a:b:c".parse::<SweepSpec>().is_err());
        assert_eq!("auto".parse::<ReduceTo>().unwrap(), ReduceTo::Auto);
        assert_eq!("3".parse::<ReduceTo>().unwrap(), ReduceTo::Components(3));
    }

    #[test]
    fn chunk_floor() {
        assert_eq!(effective_chunks(1, 100), 1);
        assert_eq!(effective_chunks(1, 4096), 1);
        assert_eq!(effective_chunks(1, 4097), 2);
        assert_eq!(effective_chunks(3, 10_000), 3);
        assert_eq!(effective_chunks(5, 3), 3);
    }

    #[test]
    fn bundled_fixture_fallback() {
        assert_eq!(resolve_fixture(Path::new("table2.json")).unwrap().len(), 12);
        assert!(resolve_fixture(Path::new("/nonexistent/other.json")).is_err());
    }
}
