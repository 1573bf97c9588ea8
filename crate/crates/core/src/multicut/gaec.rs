//! Greedy additive edge contraction.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::graph::CostGraph;
use crate::clustering::Clustering;

#[derive(Debug, Clone, Copy)]
struct Candidate {
    weight: f64,
    a: usize,
    b: usize,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    // Max-heap on weight; among equal weights the lexicographically smallest
    // pair pops first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then_with(|| other.a.cmp(&self.a))
            .then_with(|| other.b.cmp(&self.b))
    }
}

/// Starts from singletons and keeps contracting the pair of clusters with the
/// largest positive summed inter-cluster cost. Stops when every remaining
/// inter-cluster sum is `<= 0`.
///
/// The graph is complete, so inter-cluster sums live in a dense symmetric
/// matrix; contracting `b` into `a` adds row `b` to row `a`. Heap entries are
/// validated lazily against the matrix.
pub fn solve_gaec(g: &CostGraph) -> Clustering {
    let n = g.n();
    let mut w = vec![0.0; n * n];
    for (i, j, c) in g.edges() {
        w[i * n + j] = c;
        w[j * n + i] = c;
    }
    let mut alive = vec![true; n];
    let mut parent: Vec<usize> = (0..n).collect();
    let mut heap: BinaryHeap<Candidate> = g
        .edges()
        .filter(|&(_, _, c)| c > 0.0)
        .map(|(a, b, weight)| Candidate { weight, a, b })
        .collect();

    while let Some(Candidate { weight, a, b }) = heap.pop() {
        if !alive[a] || !alive[b] || w[a * n + b].to_bits() != weight.to_bits() {
            continue;
        }
        // Contract b into a (a < b always).
        alive[b] = false;
        parent[b] = a;
        for x in 0..n {
            if !alive[x] || x == a {
                continue;
            }
            let merged = w[a * n + x] + w[b * n + x];
            w[a * n + x] = merged;
            w[x * n + a] = merged;
            if merged > 0.0 {
                let (lo, hi) = if a < x { (a, x) } else { (x, a) };
                heap.push(Candidate {
                    weight: merged,
                    a: lo,
                    b: hi,
                });
            }
        }
    }

    let roots: Vec<usize> = (0..n)
        .map(|mut x| {
            while parent[x] != x {
                x = parent[x];
            }
            x
        })
        .collect();
    Clustering::from_labels(&roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicut::graph::{edge_count, objective};

    #[test]
    fn all_positive_merges_everything() {
        let g = CostGraph::from_costs(5, vec![0.5; edge_count(5)]).unwrap();
        assert_eq!(solve_gaec(&g).cluster_count(), 1);
    }

    #[test]
    fn all_negative_keeps_singletons() {
        let g = CostGraph::from_costs(5, vec![-0.5; edge_count(5)]).unwrap();
        assert_eq!(solve_gaec(&g).cluster_count(), 5);
    }

    #[test]
    fn triangle_trace() {
        // w01 = -3, w02 = +1, w12 = +2: contract (1,2), then 0 sees -3 + 1.
        let g = CostGraph::from_costs(3, vec![-3.0, 1.0, 2.0]).unwrap();
        let c = solve_gaec(&g);
        assert!(c.same_partition(&Clustering::from_labels(&[0, 1, 1])));
        assert_eq!(objective(&g, &c).unwrap(), -2.0);
    }

    #[test]
    fn merge_requires_net_attraction() {
        // Two tight pairs, weakly repelled across: sums stay negative.
        let mut costs = vec![0.0; edge_count(4)];
        let g0 = CostGraph::from_costs(4, costs.clone()).unwrap();
        let idx = |i, j| crate::multicut::graph::edge_index(4, i, j);
        costs[idx(0, 1)] = 2.0;
        costs[idx(2, 3)] = 2.0;
        costs[idx(0, 2)] = 0.4;
        costs[idx(0, 3)] = -0.3;
        costs[idx(1, 2)] = -0.3;
        costs[idx(1, 3)] = -0.3;
        let g = CostGraph::from_costs(4, costs).unwrap();
        let c = solve_gaec(&g);
        assert!(c.same_partition(&Clustering::from_labels(&[0, 0, 1, 1])));
        assert_eq!(solve_gaec(&g0).cluster_count(), 4);
    }
}
