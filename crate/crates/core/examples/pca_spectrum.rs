//! Explained-variance profile, components needed for 75% / 80% of the
//! variance, and k-means before and after reduction.
//!
//! ```bash
//! cargo run --example pca_spectrum
//! ```

use latentprobe::clustermetrics::cluster_accuracy;
use latentprobe::kmeans::kmeans;
use latentprobe::spectra::{components_for_ratio, pca_profile, reduce};
use latentprobe::synth::{generate_mixture, MixtureSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let fs = generate_mixture(&MixtureSpec {
        class_count: 4,
        dim: 16,
        per_class: 50,
        separation: 6.0,
        noise_std: 1.0,
        seed: 8,
    })?;
    let profile = pca_profile(&fs)?;
    let shown: Vec<String> = profile.cumulative.iter().take(6).map(|c| format!("{c:.3}")).collect();
    println!("cumulative ratio: {} ...", shown.join(" "));
    let m75 = components_for_ratio(&profile, 0.75)?;
    let m80 = components_for_ratio(&profile, 0.80)?;
    println!("components for 75%: {m75}, for 80%: {m80}");

    let full = kmeans(&fs, 4, 1, 300, 1e-4)?;
    let low = kmeans(&reduce(&fs, m75)?, 4, 1, 300, 1e-4)?;
    println!(
        "k-means accuracy: {} dims {:.3}, {m75} dims {:.3}",
        fs.d(),
        cluster_accuracy(&full.clustering, fs.labels())?,
        cluster_accuracy(&low.clustering, fs.labels())?
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
