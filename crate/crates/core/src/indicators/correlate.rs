use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::record::{aggregate_corruption_accuracy, ModelRecord};
use super::stats::{kendall_tau, linear_fit, r_squared, LineFit};
use super::{combined_purity, relative_performance, robustness};
use crate::error::{Error, Result};

/// Which clean-feature measurement predicts robustness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Indicator {
    /// k-means cluster accuracy / clean accuracy.
    KmeansAcc,
    /// k-means purity / clean accuracy.
    KmeansPurity,
    /// Multicut cluster accuracy / clean accuracy.
    MulticutAcc,
    /// Multicut purity / clean accuracy.
    MulticutPurity,
    /// k-means accuracy × multicut accuracy / clean accuracy.
    CombinedAcc,
    /// k-means purity × multicut purity / clean accuracy.
    CombinedPurity,
    /// Class-overlap Δ baseline (lower predicts more robust).
    Delta,
}

impl Indicator {
    pub const ALL: [Indicator; 7] = [
        Indicator::KmeansAcc,
        Indicator::KmeansPurity,
        Indicator::MulticutAcc,
        Indicator::MulticutPurity,
        Indicator::CombinedAcc,
        Indicator::CombinedPurity,
        Indicator::Delta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Indicator::KmeansAcc => "kmeans_acc",
            Indicator::KmeansPurity => "kmeans_purity",
            Indicator::MulticutAcc => "multicut_acc",
            Indicator::MulticutPurity => "multicut_purity",
            Indicator::CombinedAcc => "combined_acc",
            Indicator::CombinedPurity => "combined_purity",
            Indicator::Delta => "delta",
        }
    }

    /// `+1` if larger values predict a more robust model, `-1` otherwise.
    pub fn orientation(self) -> f64 {
        if self == Indicator::Delta {
            -1.0
        } else {
            1.0
        }
    }

    /// Indicator value for one model, as a fraction.
    pub fn value(self, r: &ModelRecord) -> Result<f64> {
        let pct = |field: &str, v: Option<f64>| r.require(field, v);
        match self {
            Indicator::KmeansAcc => relative_performance(pct("kmeans_acc", r.kmeans_acc)?, r.clean_acc),
            Indicator::KmeansPurity => {
                relative_performance(pct("kmeans_purity", r.kmeans_purity)?, r.clean_acc)
            }
            Indicator::MulticutAcc => {
                relative_performance(pct("multicut_acc", r.multicut_acc)?, r.clean_acc)
            }
            Indicator::MulticutPurity => {
                relative_performance(pct("multicut_purity", r.multicut_purity)?, r.clean_acc)
            }
            Indicator::CombinedAcc => combined_purity(
                pct("kmeans_acc", r.kmeans_acc)?,
                pct("multicut_acc", r.multicut_acc)?,
                r.clean_acc,
            ),
            Indicator::CombinedPurity => combined_purity(
                pct("kmeans_purity", r.kmeans_purity)?,
                pct("multicut_purity", r.multicut_purity)?,
                r.clean_acc,
            ),
            Indicator::Delta => pct("delta", r.delta),
        }
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelPoint {
    pub name: String,
    /// Indicator value (fraction).
    pub indicator: f64,
    /// Corrupted / clean accuracy.
    pub robustness: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub indicator: Indicator,
    /// `None` means all severities (overall corruption accuracy).
    pub severity: Option<u32>,
    pub points: Vec<ModelPoint>,
    pub fit: LineFit,
    pub r_squared: f64,
    pub kendall_tau: f64,
    /// Model names by predicted robustness, most robust first.
    pub predicted_ranking: Vec<String>,
    /// Model names by measured robustness, most robust first.
    pub actual_ranking: Vec<String>,
}

/// Corrupted accuracy used on the robustness side: the given severity's
/// mean over corruptions, or the overall aggregate (the published value when
/// the record carries one).
pub fn corrupted_accuracy(r: &ModelRecord, severity: Option<u32>) -> Result<f64> {
    match severity {
        None => match r.corruption_acc_all {
            Some(v) => Ok(v),
            None => Ok(aggregate_corruption_accuracy(&r.corruption_grid)?.overall),
        },
        Some(s) => {
            let agg = aggregate_corruption_accuracy(&r.corruption_grid)?;
            let idx = (s as usize).checked_sub(1).filter(|&i| i < agg.per_severity.len());
            idx.map(|i| agg.per_severity[i]).ok_or(Error::UnknownSeverity(s))
        }
    }
}

fn ranking(names: &[&str], scores: &[f64]) -> Vec<String> {
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .unwrap_or(Ordering::Equal)
            .then_with(|| names[a].cmp(names[b]))
    });
    order.into_iter().map(|i| names[i].to_string()).collect()
}

/// Correlates an indicator with measured robustness across models.
pub fn correlate(records: &[ModelRecord], indicator: Indicator, severity: Option<u32>) -> Result<CorrelationReport> {
    if records.len() < 3 {
        return Err(Error::TooFewModels {
            required: 3,
            found: records.len(),
        });
    }
    let mut points = Vec::with_capacity(records.len());
    for r in records {
        r.validate()?;
        points.push(ModelPoint {
            name: r.name.clone(),
            indicator: indicator.value(r)?,
            robustness: robustness(corrupted_accuracy(r, severity)?, r.clean_acc)?,
        });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.indicator).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.robustness).collect();
    let oriented: Vec<f64> = xs.iter().map(|x| x * indicator.orientation()).collect();
    let names: Vec<&str> = points.iter().map(|p| p.name.as_str()).collect();

    Ok(CorrelationReport {
        indicator,
        severity,
        fit: linear_fit(&xs, &ys)?,
        r_squared: r_squared(&xs, &ys)?,
        kendall_tau: kendall_tau(&oriented, &ys)?,
        predicted_ranking: ranking(&names, &oriented),
        actual_ranking: ranking(&names, &ys),
        points,
    })
}
