//! k-means on a hand-checkable 1-D set and on a Gaussian mixture.
//!
//! ```bash
//! cargo run --example kmeans_clustering
//! ```

use latentprobe::clustermetrics::score;
use latentprobe::kmeans::{kmeans, kmeans_with, KmeansOptions};
use latentprobe::synth::{generate_mixture, MixtureSpec};
use latentprobe::FeatureSet;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let line = FeatureSet::unlabeled(1, vec![0.0, 1.0, 9.0, 10.0])?;
    let r = kmeans(&line, 2, 7, 300, 1e-4)?;
    println!(
        "{{0, 1, 9, 10}}: assignment {:?}, centroids {:?}, objective {}",
        r.clustering.assignment(),
        r.centroids,
        r.objective
    );

    let fs = generate_mixture(&MixtureSpec {
        class_count: 4,
        dim: 6,
        per_class: 50,
        separation: 5.0,
        noise_std: 1.0,
        seed: 1,
    })?;
    let mut opts = KmeansOptions::new(4, 1);
    opts.restarts = 3;
    let r = kmeans_with(&fs, &opts)?;
    let s = score(&r.clustering, fs.labels())?;
    println!(
        "mixture: {} iterations, converged = {}, objective {:.2}",
        r.iterations, r.converged, r.objective
    );
    println!("cluster accuracy {:.3}, purity {:.3}", s.acc, s.purity);
    println!("objective per iteration: {:?}", r.history.iter().map(|v| v.round()).collect::<Vec<_>>());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
