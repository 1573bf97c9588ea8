//! Chunk-parallel multicut for sets too large for one dense graph.
//!
//! The rows are split into disjoint balanced chunks, each chunk is solved on
//! its own, and the chunk-level clusters are then merged by a second multicut
//! whose nodes are those clusters. The cost between two chunk clusters `A`
//! and `B` is the total point-level cost between them, computed from
//! centroids and scatter:
//!
//! `sum_{a in A, b in B} ||a - b||² = |A| |B| (||μ_A - μ_B||² + s²_A + s²_B)`
//!
//! where `s²` is the mean squared deviation from the centroid. The merge
//! therefore optimizes the same objective restricted to unions of chunk
//! clusters.

use rayon::prelude::*;

use super::graph::{build_cost_graph, edge_cost, edge_count, CostGraph};
use super::kl::solve;
use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::featureset::{split_disjoint, FeatureSet};

/// Summary of one chunk-level cluster.
#[derive(Debug, Clone)]
struct Component {
    members: Vec<usize>,
    centroid: Vec<f64>,
    scatter: f64,
}

fn summarize(fs: &FeatureSet, members: Vec<usize>) -> Component {
    let d = fs.d();
    let mut centroid = vec![0.0; d];
    for &i in &members {
        for (c, &v) in centroid.iter_mut().zip(fs.row(i)) {
            *c += f64::from(v);
        }
    }
    let size = members.len() as f64;
    centroid.iter_mut().for_each(|c| *c /= size);
    let scatter = members
        .iter()
        .map(|&i| {
            fs.row(i)
                .iter()
                .zip(&centroid)
                .map(|(&v, c)| (f64::from(v) - c).powi(2))
                .sum::<f64>()
        })
        .sum::<f64>()
        / size;
    Component {
        members,
        centroid,
        scatter,
    }
}

fn merge_graph(parts: &[Component], theta: f64, temperature: f64) -> Result<CostGraph> {
    let m = parts.len();
    let mut costs = Vec::with_capacity(edge_count(m));
    for a in 0..m {
        for b in a + 1..m {
            let (pa, pb) = (&parts[a], &parts[b]);
            let centroid_gap: f64 = pa
                .centroid
                .iter()
                .zip(&pb.centroid)
                .map(|(x, y)| (x - y).powi(2))
                .sum();
            let mean_pair_distance = centroid_gap + pa.scatter + pb.scatter;
            let pairs = (pa.members.len() * pb.members.len()) as f64;
            costs.push(pairs * edge_cost(mean_pair_distance, theta, temperature));
        }
    }
    CostGraph::from_costs(m, costs)
}

/// Full-set multicut via disjoint chunks. `chunks == 1` is exactly the direct
/// GAEC + KL solve on the whole set.
pub fn cluster_parallel(
    fs: &FeatureSet,
    chunks: usize,
    theta: f64,
    temperature: f64,
    seed: u64,
    kl_passes: usize,
) -> Result<Clustering> {
    if chunks == 0 || chunks > fs.n() {
        return Err(Error::ChunksOutOfRange { chunks, n: fs.n() });
    }
    if chunks == 1 {
        return Ok(solve(&build_cost_graph(fs, theta, temperature)?, kl_passes));
    }

    let pieces = split_disjoint(fs, chunks, seed)?;
    // Collected in chunk order regardless of which worker finishes first.
    let solved: Vec<Clustering> = pieces
        .par_iter()
        .map(|p| build_cost_graph(&p.features, theta, temperature).map(|g| solve(&g, kl_passes)))
        .collect::<Result<_>>()?;

    let mut parts = Vec::new();
    for (piece, local) in pieces.iter().zip(&solved) {
        for members in local.members() {
            let global: Vec<usize> = members.iter().map(|&i| piece.indices[i]).collect();
            parts.push(summarize(fs, global));
        }
    }

    let merged = solve(&merge_graph(&parts, theta, temperature)?, kl_passes);
    let mut labels = vec![0usize; fs.n()];
    for (part, &cluster) in parts.iter().zip(merged.assignment()) {
        for &i in &part.members {
            labels[i] = cluster;
        }
    }
    Ok(Clustering::from_labels(&labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::featureset::squared_distance;

    #[test]
    fn aggregated_cost_equals_pairwise_sum() {
        let fs = FeatureSet::from_rows(
            &[vec![0.0, 1.0], vec![2.0, -1.0], vec![5.0, 5.0], vec![6.0, 4.5], vec![7.0, 3.0]],
            vec![0; 5],
            1,
        )
        .unwrap();
        let a = summarize(&fs, vec![0, 1]);
        let b = summarize(&fs, vec![2, 3, 4]);
        let g = merge_graph(&[a, b], 3.0, 0.5).unwrap();
        let direct: f64 = [0, 1]
            .iter()
            .flat_map(|&i| [2, 3, 4].map(|j| (i, j)))
            .map(|(i, j)| edge_cost(squared_distance(fs.row(i), fs.row(j)), 3.0, 0.5))
            .sum();
        assert!((g.weight(0, 1) - direct).abs() < 1e-9);
    }

    #[test]
    fn chunk_count_checked() {
        let fs = FeatureSet::unlabeled(1, vec![0.0, 1.0]).unwrap();
        assert!(matches!(
            cluster_parallel(&fs, 0, 1.0, 1.0, 0, 10).unwrap_err(),
            Error::ChunksOutOfRange { .. }
        ));
        assert!(cluster_parallel(&fs, 3, 1.0, 1.0, 0, 10).is_err());
    }
}
