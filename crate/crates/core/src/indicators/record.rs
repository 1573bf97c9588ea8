use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One classifier's accuracies and clean-feature clustering scores.
///
/// All accuracies are percentages, as printed in benchmark tables. The
/// corruption grid maps a corruption name to the accuracy at severities
/// `1..=S`, so the severity range is contiguous by construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelRecord {
    pub name: String,
    pub clean_acc: f64,
    #[serde(default)]
    pub corruption_grid: BTreeMap<String, Vec<f64>>,
    /// Published overall corruption accuracy, when it was reported directly.
    /// Preferred over re-aggregating the (rounded) grid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corruption_acc_all: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kmeans_acc: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kmeans_purity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multicut_acc: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multicut_purity: Option<f64>,
    /// Clustering accuracy on corrupted features (informational).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kmeans_corruption_acc_all: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multicut_corruption_acc_all: Option<f64>,
    /// Class-overlap Δ of the clean features.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
}

impl ModelRecord {
    pub fn validate(&self) -> Result<()> {
        let pct = |field: &str, v: f64| {
            if (0.0..=100.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{}: {field} = {v} is not a percentage",
                    self.name
                )))
            }
        };
        pct("clean_acc", self.clean_acc)?;
        for (field, value) in [
            ("corruption_acc_all", self.corruption_acc_all),
            ("kmeans_acc", self.kmeans_acc),
            ("kmeans_purity", self.kmeans_purity),
            ("multicut_acc", self.multicut_acc),
            ("multicut_purity", self.multicut_purity),
            ("kmeans_corruption_acc_all", self.kmeans_corruption_acc_all),
            ("multicut_corruption_acc_all", self.multicut_corruption_acc_all),
        ] {
            if let Some(v) = value {
                pct(field, v)?;
            }
        }
        for (corruption, accs) in &self.corruption_grid {
            for &v in accs {
                pct(corruption, v)?;
            }
        }
        if !self.corruption_grid.is_empty() {
            severity_count(&self.corruption_grid)?;
        }
        Ok(())
    }

    pub fn require(&self, field: &str, value: Option<f64>) -> Result<f64> {
        value.ok_or_else(|| Error::MissingField {
            model: self.name.clone(),
            field: field.to_string(),
        })
    }
}

/// Common severity count `S` of a grid; every corruption must cover `1..=S`.
pub fn severity_count(grid: &BTreeMap<String, Vec<f64>>) -> Result<usize> {
    let mut lens = grid.values().map(Vec::len);
    let first = lens.next().ok_or(Error::EmptyGrid)?;
    if first == 0 {
        return Err(Error::EmptyGrid);
    }
    if lens.any(|l| l != first) {
        return Err(Error::RaggedGrid("corruptions cover different severity ranges".into()));
    }
    Ok(first)
}

/// Overall, per-severity and per-corruption means of a corruption grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorruptionAggregate {
    /// Mean over corruptions of the mean over severities.
    pub overall: f64,
    /// Index `s - 1` holds the mean over corruptions at severity `s`.
    pub per_severity: Vec<f64>,
    pub per_corruption: BTreeMap<String, f64>,
}

pub fn aggregate_corruption_accuracy(grid: &BTreeMap<String, Vec<f64>>) -> Result<CorruptionAggregate> {
    let severities = severity_count(grid)?;
    let corruptions = grid.len() as f64;
    let per_corruption: BTreeMap<String, f64> = grid
        .iter()
        .map(|(c, accs)| (c.clone(), accs.iter().sum::<f64>() / severities as f64))
        .collect();
    let overall = per_corruption.values().sum::<f64>() / corruptions;
    let per_severity = (0..severities)
        .map(|s| grid.values().map(|accs| accs[s]).sum::<f64>() / corruptions)
        .collect();
    Ok(CorruptionAggregate {
        overall,
        per_severity,
        per_corruption,
    })
}

/// A bundle of records as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordSet {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub records: Vec<ModelRecord>,
}

fn default_schema_version() -> u32 {
    1
}

const TABLE2: &str = include_str!("../../data/table2.json");

/// The bundled benchmark table: 12 ImageNet classifiers with clean and
/// ImageNet-C accuracies and k-means / multicut scores of their features.
pub fn table2() -> RecordSet {
    serde_json::from_str(TABLE2).expect("bundled fixture is valid")
}

pub fn table2_json() -> &'static str {
    TABLE2
}

/// Parses either a `RecordSet` object or a bare array of records, validating
/// each record.
pub fn parse_records(text: &str) -> Result<Vec<ModelRecord>> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let records: Vec<ModelRecord> = if value.is_array() {
        serde_json::from_value(value)?
    } else {
        serde_json::from_value::<RecordSet>(value)?.records
    };
    for r in &records {
        r.validate()?;
    }
    Ok(records)
}

pub fn load_records(path: impl AsRef<Path>) -> Result<Vec<ModelRecord>> {
    parse_records(&std::fs::read_to_string(path)?)
}
