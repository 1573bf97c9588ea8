//! Chunked multicut: solve disjoint pieces in parallel, then merge their
//! clusters with a second multicut.
//!
//! ```bash
//! cargo run --example parallel_multicut
//! ```

use latentprobe::clustermetrics::cluster_accuracy;
use latentprobe::multicut::{build_cost_graph, cluster_parallel, solve, DEFAULT_KL_PASSES};
use latentprobe::synth::{generate_mixture, MixtureSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let fs = generate_mixture(&MixtureSpec {
        class_count: 2,
        dim: 2,
        per_class: 60,
        separation: 20.0,
        noise_std: 1.0,
        seed: 9,
    })?;
    // Squared distances: about 4 within a class, about 400 across.
    let (theta, temperature) = (50.0, 10.0);

    let direct = solve(&build_cost_graph(&fs, theta, temperature)?, DEFAULT_KL_PASSES);
    let one = cluster_parallel(&fs, 1, theta, temperature, 3, DEFAULT_KL_PASSES)?;
    assert_eq!(one, direct);
    println!("chunks = 1 matches the direct solve");

    for chunks in [2, 4, 8] {
        let c = cluster_parallel(&fs, chunks, theta, temperature, 3, DEFAULT_KL_PASSES)?;
        println!(
            "chunks = {chunks}: {} clusters, accuracy {:.3}",
            c.cluster_count(),
            cluster_accuracy(&c, fs.labels())?
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
