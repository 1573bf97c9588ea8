//! Synthetic model zoos: each "model" is a Gaussian-mixture latent space with
//! a nearest-class-mean classifier, scored exactly like a real classifier's
//! features would be.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::clustermetrics::{class_distance_stats, overlap_delta, score};
use crate::error::{Error, Result};
use crate::featureset::FeatureSet;
use crate::indicators::ModelRecord;
use crate::kmeans::kmeans_with;
use crate::kmeans::KmeansOptions;
use crate::multicut::{default_temperature, pairwise_distances, threshold_sweep, SweepResult};
use crate::synth::{class_means, corrupt, generate_mixture, nearest_mean_accuracy, CorruptionSpec, MixtureSpec};

pub const CORRUPTION_NAME: &str = "drift_noise";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZooSpec {
    /// One model per entry, in units of `noise_std`.
    pub separations: Vec<f64>,
    pub class_count: usize,
    pub dim: usize,
    pub per_class: usize,
    pub noise_std: f64,
    pub corruption: CorruptionSpec,
    pub seed: u64,
}

impl ZooSpec {
    /// Five models from heavily overlapping to well separated classes.
    pub fn standard(seed: u64) -> Self {
        ZooSpec {
            separations: vec![1.5, 2.5, 3.5, 4.5, 6.0],
            class_count: 5,
            dim: 8,
            per_class: 40,
            noise_std: 1.0,
            corruption: CorruptionSpec {
                severities: vec![1, 2, 3, 4, 5],
                drift_scale: 0.5,
                noise_growth: 0.35,
                drift_seed: seed ^ 0x5eed,
            },
            seed,
        }
    }

    pub fn mixture(&self, model: usize) -> MixtureSpec {
        MixtureSpec {
            class_count: self.class_count,
            dim: self.dim,
            per_class: self.per_class,
            separation: self.separations[model],
            noise_std: self.noise_std,
            seed: self.seed.wrapping_mul(1000).wrapping_add(model as u64),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticModel {
    pub record: ModelRecord,
    /// Normalized overlap Δ of the clean features.
    pub clean_delta: f64,
    /// Normalized overlap Δ after corruption, one entry per severity.
    pub delta_by_severity: Vec<f64>,
    pub multicut_sweep: SweepResult,
}

/// Thresholds at evenly spaced lower quantiles of the pairwise distances,
/// where same-class pairs concentrate.
pub fn quantile_grid(fs: &FeatureSet, quantiles: &[f64]) -> Vec<f64> {
    let mut d = pairwise_distances(fs);
    d.sort_by(f64::total_cmp);
    let mut grid: Vec<f64> = quantiles
        .iter()
        .map(|q| d[((d.len() - 1) as f64 * q).round() as usize])
        .filter(|t| *t > 0.0)
        .collect();
    grid.dedup();
    grid
}

fn normalized_delta(fs: &FeatureSet) -> Result<f64> {
    Ok(overlap_delta(&class_distance_stats(fs, true)?))
}

/// Scores one synthetic latent space: clean and corrupted accuracy of the
/// nearest-mean classifier, k-means and multicut scores on clean features,
/// and Δ at every severity. Accuracies are percentages.
pub fn evaluate_model(name: &str, mixture: &MixtureSpec, corruption: &CorruptionSpec) -> Result<SyntheticModel> {
    let fs = generate_mixture(mixture)?;
    let means = class_means(&fs);
    let clean_acc = 100.0 * nearest_mean_accuracy(&means, &fs);

    let mut accs = Vec::with_capacity(corruption.severities.len());
    let mut delta_by_severity = Vec::with_capacity(corruption.severities.len());
    for &s in &corruption.severities {
        let noisy = corrupt(&fs, corruption, s)?;
        accs.push(100.0 * nearest_mean_accuracy(&means, &noisy));
        delta_by_severity.push(normalized_delta(&noisy)?);
    }

    let km = kmeans_with(&fs, &KmeansOptions::new(mixture.class_count, mixture.seed))?;
    let km_scores = score(&km.clustering, fs.labels())?;

    let quantiles: Vec<f64> = (1..=10).map(|i| i as f64 * 0.04).collect();
    let grid = quantile_grid(&fs, &quantiles);
    if grid.is_empty() {
        return Err(Error::DegenerateInput("no positive pairwise distance".into()));
    }
    let temperature = default_temperature(&fs, 20_000, mixture.seed);
    let sweep = threshold_sweep(&fs, &grid, temperature)?;
    let best = sweep
        .table
        .rows
        .iter()
        .find(|r| r.threshold == sweep.best_theta)
        .expect("best threshold is a grid row");

    let record = ModelRecord {
        name: name.to_string(),
        clean_acc,
        corruption_grid: BTreeMap::from([(CORRUPTION_NAME.to_string(), accs)]),
        corruption_acc_all: None,
        kmeans_acc: Some(100.0 * km_scores.acc),
        kmeans_purity: Some(100.0 * km_scores.purity),
        multicut_acc: Some(100.0 * best.cluster_accuracy),
        multicut_purity: Some(100.0 * best.purity),
        kmeans_corruption_acc_all: None,
        multicut_corruption_acc_all: None,
        delta: Some(normalized_delta(&fs)?),
    };
    Ok(SyntheticModel {
        clean_delta: record.delta.unwrap_or_default(),
        record,
        delta_by_severity,
        multicut_sweep: sweep,
    })
}

/// Evaluates every model of the zoo, named `synthetic-<i>`.
pub fn build_zoo(spec: &ZooSpec) -> Result<Vec<SyntheticModel>> {
    (0..spec.separations.len())
        .map(|m| evaluate_model(&format!("synthetic-{m}"), &spec.mixture(m), &spec.corruption))
        .collect()
}
