//! Clusterability of classifier latent spaces as a predictor of robustness.
//!
//! Feature matrices are clustered with k-means and with a minimum-cost
//! multicut solver; the resulting accuracy and purity scores, divided by the
//! classifier's clean accuracy, are correlated with accuracy retained under
//! corruption. Runnable walkthroughs live in `examples/`.

pub mod cli;
pub mod clustering;
pub mod clustermetrics;
pub mod error;
pub mod featureset;
pub mod hungarian;
pub mod indicators;
pub mod kmeans;
pub mod multicut;
pub mod report;
pub mod spectra;
pub mod synth;
pub mod zoo;

pub use clustering::Clustering;
pub use error::{Error, Result};
pub use featureset::FeatureSet;
