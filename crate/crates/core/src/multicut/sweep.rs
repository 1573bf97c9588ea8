use serde::{Deserialize, Serialize};

use super::graph::{pairwise_distances, CostGraph};
use super::kl::solve;
use super::DEFAULT_KL_PASSES;
use crate::clustering::Clustering;
use crate::clustermetrics::{cluster_accuracy, purity};
use crate::error::{Error, Result};
use crate::featureset::FeatureSet;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub threshold: f64,
    pub cluster_accuracy: f64,
    pub purity: f64,
    pub cluster_count: usize,
    pub singleton_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub temperature: f64,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("threshold,cluster_accuracy,purity,cluster_count,singleton_count\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.threshold, r.cluster_accuracy, r.purity, r.cluster_count, r.singleton_count
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub best_theta: f64,
    pub table: SweepTable,
}

/// Inclusive `start, start + step, ..` grid up to `stop` (with a little
/// slack for rounding).
pub fn linear_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "bad grid {start}:{stop}:{step}; need start <= stop and step > 0"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

/// Solves the multicut for every threshold and keeps the one with the highest
/// cluster accuracy (the smallest threshold among ties).
pub fn threshold_sweep(fs: &FeatureSet, grid: &[f64], temperature: f64) -> Result<SweepResult> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("threshold grid must be strictly increasing".into()));
    }
    let distances = pairwise_distances(fs);
    let mut rows = Vec::with_capacity(grid.len());
    for &theta in grid {
        let g = CostGraph::from_distances(fs.n(), &distances, theta, temperature)?;
        let c: Clustering = solve(&g, DEFAULT_KL_PASSES);
        rows.push(SweepRow {
            threshold: theta,
            cluster_accuracy: cluster_accuracy(&c, fs.labels())?,
            purity: purity(&c, fs.labels())?,
            cluster_count: c.cluster_count(),
            singleton_count: c.sizes().iter().filter(|&&s| s == 1).count(),
        });
    }
    let mut best = &rows[0];
    for r in &rows[1..] {
        if r.cluster_accuracy > best.cluster_accuracy {
            best = r;
        }
    }
    Ok(SweepResult {
        best_theta: best.threshold,
        table: SweepTable { temperature, rows },
    })
}
