//! Minimum-cost multicut (correlation clustering) on complete graphs.
//!
//! Pairwise squared distances become edge costs `(theta - d) / temperature`
//! (the logit of the join probability under a logistic cut model). The
//! objective is the summed cost of cut edges, minimized heuristically by
//! greedy additive edge contraction followed by Kernighan–Lin moves.

mod gaec;
mod graph;
mod kl;
mod parallel;
mod sweep;

pub use gaec::solve_gaec;
pub use graph::{
    build_cost_graph, cut_probability, default_temperature, edge_cost, edge_count, edge_index,
    is_valid_decomposition, logistic, logit, objective, pairwise_distances, CostGraph, EdgeLabeling,
};
pub use kl::{refine_kl, solve};
pub use parallel::cluster_parallel;
pub use sweep::{linear_grid, threshold_sweep, SweepResult, SweepRow, SweepTable};

/// Largest node count solved as one dense graph before the CLI switches to
/// the chunked scheme.
pub const MAX_DENSE_NODES: usize = 4096;

pub const DEFAULT_KL_PASSES: usize = 10;
