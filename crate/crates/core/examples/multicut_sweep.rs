//! Minimum-cost multicut on a mixture, choosing the decision threshold by a
//! sweep and checking the solver output.
//!
//! ```bash
//! cargo run --example multicut_sweep
//! ```

use latentprobe::multicut::{
    build_cost_graph, default_temperature, is_valid_decomposition, linear_grid, objective, solve, threshold_sweep,
    EdgeLabeling, DEFAULT_KL_PASSES,
};
use latentprobe::synth::{generate_mixture, MixtureSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let fs = generate_mixture(&MixtureSpec {
        class_count: 3,
        dim: 4,
        per_class: 30,
        separation: 5.0,
        noise_std: 1.0,
        seed: 5,
    })?;
    let temperature = default_temperature(&fs, 10_000, 5);
    let grid = linear_grid(2.0, 30.0, 2.0)?;
    let sweep = threshold_sweep(&fs, &grid, temperature)?;
    print!("{}", sweep.table.to_csv());
    println!("temperature {temperature:.3}, best theta {}", sweep.best_theta);

    let g = build_cost_graph(&fs, sweep.best_theta, temperature)?;
    let c = solve(&g, DEFAULT_KL_PASSES);
    let valid = is_valid_decomposition(&g, &EdgeLabeling::from_clustering(&c))?;
    println!(
        "{} clusters, objective {:.3}, valid decomposition: {valid}",
        c.cluster_count(),
        objective(&g, &c)?
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
