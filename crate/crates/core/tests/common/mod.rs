#![allow(dead_code)]

use latentprobe::multicut::CostGraph;
use latentprobe::Clustering;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every set partition of `0..n` as a restricted growth string.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn grow(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=max + 1 {
            prefix.push(b);
            grow(prefix, max.max(b), n, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    grow(&mut vec![0], 0, n, &mut out);
    out
}

/// Cut cost of a labeling computed straight from pairwise weights.
pub fn cut_cost(g: &CostGraph, labels: &[usize]) -> f64 {
    let mut total = 0.0;
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            if labels[i] != labels[j] {
                total += g.weight(i, j);
            }
        }
    }
    total
}

/// Exhaustive minimum of the multicut objective.
pub fn brute_force_optimum(g: &CostGraph) -> (f64, Clustering) {
    let mut best = (f64::INFINITY, Vec::new());
    for p in set_partitions(g.n()) {
        let c = cut_cost(g, &p);
        if c < best.0 {
            best = (c, p);
        }
    }
    (best.0, Clustering::new(best.1).expect("restricted growth strings are contiguous"))
}

pub fn random_graph(n: usize, seed: u64) -> CostGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let costs = (0..n * (n - 1) / 2).map(|_| rng.random_range(-1.0..=1.0)).collect();
    CostGraph::from_costs(n, costs).unwrap()
}

/// Bell numbers check the enumerator: B(1..=8).
pub const BELL: [usize; 8] = [1, 2, 5, 15, 52, 203, 877, 4140];
