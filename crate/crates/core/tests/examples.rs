//! Runs every example so the documented workflows stay working.

#[allow(dead_code)]
#[path = "../examples/cluster_metrics.rs"]
mod cluster_metrics;

#[test]
fn cluster_metrics_runs() {
    cluster_metrics::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/command_line.rs"]
mod command_line;

#[test]
fn command_line_runs() {
    command_line::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/feature_io.rs"]
mod feature_io;

#[test]
fn feature_io_runs() {
    feature_io::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/fixture_correlation.rs"]
mod fixture_correlation;

#[test]
fn fixture_correlation_runs() {
    fixture_correlation::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/kmeans_clustering.rs"]
mod kmeans_clustering;

#[test]
fn kmeans_clustering_runs() {
    kmeans_clustering::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/multicut_sweep.rs"]
mod multicut_sweep;

#[test]
fn multicut_sweep_runs() {
    multicut_sweep::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/parallel_multicut.rs"]
mod parallel_multicut;

#[test]
fn parallel_multicut_runs() {
    parallel_multicut::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/pca_spectrum.rs"]
mod pca_spectrum;

#[test]
fn pca_spectrum_runs() {
    pca_spectrum::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/synthetic_zoo.rs"]
mod synthetic_zoo;

#[test]
fn synthetic_zoo_runs() {
    synthetic_zoo::run_example().unwrap();
}
