//! Robustness ratios, clustering-based robustness indicators and their
//! correlation with measured robustness.
//!
//! Records store percentages; every function here returns fractions.
//! R² and Kendall's τ do not depend on that choice.

mod correlate;
mod record;
mod stats;

pub use correlate::{correlate, corrupted_accuracy, CorrelationReport, Indicator, ModelPoint};
pub use record::{
    aggregate_corruption_accuracy, load_records, parse_records, severity_count, table2, table2_json,
    CorruptionAggregate, ModelRecord, RecordSet,
};
pub use stats::{kendall_tau, linear_fit, r_squared, LineFit};

use crate::error::{Error, Result};

fn positive(acc: f64) -> Result<f64> {
    if acc > 0.0 {
        Ok(acc)
    } else {
        Err(Error::ZeroAccuracy(acc))
    }
}

/// Corrupted accuracy over clean accuracy; 1 means no degradation.
pub fn robustness(acc_corrupt: f64, acc_clean: f64) -> Result<f64> {
    Ok(acc_corrupt / positive(acc_clean)?)
}

/// Clustering score relative to the model's clean classification accuracy.
pub fn relative_performance(cluster_perf: f64, model_acc: f64) -> Result<f64> {
    Ok(cluster_perf / positive(model_acc)?)
}

/// Product of the k-means and multicut scores over clean accuracy, all taken
/// as fractions.
pub fn combined_purity(kmeans_purity: f64, mc_purity: f64, model_acc: f64) -> Result<f64> {
    let model = positive(model_acc)? / 100.0;
    Ok((kmeans_purity / 100.0) * (mc_purity / 100.0) / model)
}
