//! Cluster accuracy vs purity, singleton fraction and the class-overlap Δ.
//!
//! ```bash
//! cargo run --example cluster_metrics
//! ```

use latentprobe::clustermetrics::{class_distance_stats, cluster_accuracy, overlap_delta, purity, singleton_fraction};
use latentprobe::synth::{corrupt, generate_mixture, CorruptionSpec, MixtureSpec};
use latentprobe::Clustering;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // Four clusters over three classes: {A, A, B}, {B, B}, {C}, {C}.
    let truth = [0, 0, 1, 1, 1, 2, 2];
    let pred = Clustering::new(vec![0, 0, 0, 1, 1, 2, 3])?;
    println!(
        "accuracy {:.4} (5/7), purity {:.4} (6/7), singleton fraction {:.2}",
        cluster_accuracy(&pred, &truth)?,
        purity(&pred, &truth)?,
        singleton_fraction(&pred)
    );
    let all = Clustering::singletons(truth.len());
    println!("all singletons: purity {}", purity(&all, &truth)?);

    let fs = generate_mixture(&MixtureSpec {
        class_count: 5,
        dim: 8,
        per_class: 40,
        separation: 4.0,
        noise_std: 1.0,
        seed: 2,
    })?;
    let spec = CorruptionSpec {
        severities: vec![1, 2, 3, 4, 5],
        drift_scale: 0.5,
        noise_growth: 0.35,
        drift_seed: 7,
    };
    println!("severity  delta");
    println!("0         {:+.4}", overlap_delta(&class_distance_stats(&fs, true)?));
    for &s in &spec.severities {
        let stats = class_distance_stats(&corrupt(&fs, &spec, s)?, true)?;
        println!("{s}         {:+.4}", overlap_delta(&stats));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
