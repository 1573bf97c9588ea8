//! External cluster-quality metrics and the class-overlap baseline.
//!
//! | Metric                  | Range  | Notes                                         |
//! |-------------------------|--------|-----------------------------------------------|
//! | [`cluster_accuracy`]    | [0, 1] | one-to-one cluster/class matching (Hungarian) |
//! | [`purity`]              | [0, 1] | majority class per cluster; favors many clusters |
//! | [`singleton_fraction`]  | [0, 1] | share of clusters holding one sample          |
//! | [`overlap_delta`]       | real   | > 0 means intra-class spread reaches inter-class distances |
//!
//! Surplus clusters (more clusters than classes) are matched to nothing and
//! count as errors in the accuracy, so purity is never below accuracy.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::featureset::{squared_distance, FeatureSet};
use crate::hungarian::max_weight_matching;

/// `K x L` counts of samples per (cluster, class), row-major.
pub fn contingency(pred: &Clustering, truth: &[usize]) -> Result<(Vec<f64>, usize, usize)> {
    if pred.len() != truth.len() {
        return Err(Error::LengthMismatch {
            left: pred.len(),
            right: truth.len(),
        });
    }
    let k = pred.cluster_count();
    let l = truth.iter().max().map_or(0, |m| m + 1);
    let mut table = vec![0.0; k * l];
    for (&c, &t) in pred.assignment().iter().zip(truth) {
        table[c * l + t] += 1.0;
    }
    Ok((table, k, l))
}

pub fn cluster_accuracy(pred: &Clustering, truth: &[usize]) -> Result<f64> {
    let (table, k, l) = contingency(pred, truth)?;
    if truth.is_empty() {
        return Ok(0.0);
    }
    let (matched, _) = max_weight_matching(&table, k, l);
    Ok(matched / truth.len() as f64)
}

pub fn purity(pred: &Clustering, truth: &[usize]) -> Result<f64> {
    let (table, _, l) = contingency(pred, truth)?;
    if truth.is_empty() {
        return Ok(0.0);
    }
    let majority: f64 = table
        .chunks_exact(l)
        .map(|row| row.iter().copied().fold(0.0, f64::max))
        .sum();
    Ok(majority / truth.len() as f64)
}

pub fn singleton_fraction(pred: &Clustering) -> f64 {
    if pred.cluster_count() == 0 {
        return 0.0;
    }
    let singles = pred.sizes().iter().filter(|&&s| s == 1).count();
    singles as f64 / pred.cluster_count() as f64
}

/// Mean and (population) standard deviation of squared pairwise distances
/// between samples of the same class and of different classes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceStats {
    pub mu_intra: f64,
    pub sigma_intra: f64,
    pub mu_inter: f64,
    pub sigma_inter: f64,
    pub normalized: bool,
    /// Mean squared distance over all pairs; the normalization constant.
    pub global_mean: f64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: f64,
    sum: f64,
    sum_sq: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1.0;
        self.sum += x;
        self.sum_sq += x * x;
    }

    fn merge(mut self, other: Self) -> Self {
        self.count += other.count;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self
    }

    fn mean(&self) -> f64 {
        self.sum / self.count
    }

    fn std(&self) -> f64 {
        let m = self.mean();
        (self.sum_sq / self.count - m * m).max(0.0).sqrt()
    }
}

pub fn class_distance_stats(fs: &FeatureSet, normalize: bool) -> Result<DistanceStats> {
    let sizes = fs.class_sizes();
    if let Some((class, &count)) = sizes.iter().enumerate().find(|(_, &c)| c == 1) {
        return Err(Error::DegenerateClass { class, count });
    }
    let present = sizes.iter().filter(|&&c| c > 0).count();
    if present < 2 {
        return Err(Error::DegenerateInput(format!(
            "class distance statistics need at least 2 classes, found {present}"
        )));
    }

    let labels = fs.labels();
    // Per-row partials collected in order, then reduced sequentially, so the
    // result does not depend on thread scheduling.
    let partials: Vec<(Moments, Moments)> = (0..fs.n())
        .into_par_iter()
        .map(|i| {
            let mut intra = Moments::default();
            let mut inter = Moments::default();
            for j in i + 1..fs.n() {
                let d = squared_distance(fs.row(i), fs.row(j));
                if labels[i] == labels[j] {
                    intra.push(d);
                } else {
                    inter.push(d);
                }
            }
            (intra, inter)
        })
        .collect();
    let (intra, inter) = partials
        .into_iter()
        .fold((Moments::default(), Moments::default()), |(a, b), (x, y)| {
            (a.merge(x), b.merge(y))
        });

    let global_mean = intra.merge(inter).mean();
    let scale = if normalize {
        if global_mean <= 0.0 {
            return Err(Error::DegenerateInput("all samples coincide".into()));
        }
        1.0 / global_mean
    } else {
        1.0
    };
    Ok(DistanceStats {
        mu_intra: intra.mean() * scale,
        sigma_intra: intra.std() * scale,
        mu_inter: inter.mean() * scale,
        sigma_inter: inter.std() * scale,
        normalized: normalize,
        global_mean,
    })
}

/// `(mu_intra + sigma_intra) - (mu_inter + sigma_inter)`.
pub fn overlap_delta(stats: &DistanceStats) -> f64 {
    (stats.mu_intra + stats.sigma_intra) - (stats.mu_inter + stats.sigma_inter)
}

/// Everything the `metrics` report prints for one clustering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterScores {
    pub acc: f64,
    pub purity: f64,
    pub singleton_fraction: f64,
    pub cluster_count: usize,
}

pub fn score(pred: &Clustering, truth: &[usize]) -> Result<ClusterScores> {
    Ok(ClusterScores {
        acc: cluster_accuracy(pred, truth)?,
        purity: purity(pred, truth)?,
        singleton_fraction: singleton_fraction(pred),
        cluster_count: pred.cluster_count(),
    })
}
