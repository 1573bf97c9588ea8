//! Lloyd's k-means with k-means++ seeding.
//!
//! The objective is the sum over samples of the squared distance to the
//! centroid of the assigned cluster. `k` stays fixed for the whole run: an
//! empty cluster is re-seeded at the sample farthest from its own centroid.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::featureset::FeatureSet;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KmeansOptions {
    pub k: usize,
    pub seed: u64,
    pub max_iter: usize,
    /// Convergence threshold on the largest squared centroid displacement.
    pub tol: f64,
    pub restarts: usize,
}

impl KmeansOptions {
    pub fn new(k: usize, seed: u64) -> Self {
        Self {
            k,
            seed,
            max_iter: 300,
            tol: 1e-4,
            restarts: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KmeansResult {
    pub clustering: Clustering,
    /// `k x d`, row-major per centroid.
    pub centroids: Vec<Vec<f64>>,
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Objective after every centroid update.
    pub history: Vec<f64>,
}

pub fn kmeans(fs: &FeatureSet, k: usize, seed: u64, max_iter: usize, tol: f64) -> Result<KmeansResult> {
    kmeans_with(
        fs,
        &KmeansOptions {
            k,
            seed,
            max_iter,
            tol,
            restarts: 1,
        },
    )
}

/// Runs `restarts` independent seedings (`seed`, `seed + 1`, ...) and keeps
/// the lowest objective; the earliest restart wins ties.
pub fn kmeans_with(fs: &FeatureSet, opts: &KmeansOptions) -> Result<KmeansResult> {
    if opts.k == 0 || opts.k > fs.n() {
        return Err(Error::KOutOfRange { k: opts.k, n: fs.n() });
    }
    if opts.max_iter == 0 {
        return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
    }
    if !(opts.tol >= 0.0) {
        return Err(Error::InvalidParameter("tol must be >= 0".into()));
    }
    let points = Points::from(fs);
    let mut best: Option<KmeansResult> = None;
    for r in 0..opts.restarts.max(1) {
        let run = lloyd(&points, opts, opts.seed.wrapping_add(r as u64));
        if best.as_ref().is_none_or(|b| run.objective < b.objective) {
            best = Some(run);
        }
    }
    Ok(best.expect("at least one restart"))
}

struct Points {
    n: usize,
    d: usize,
    data: Vec<f64>,
}

impl From<&FeatureSet> for Points {
    fn from(fs: &FeatureSet) -> Self {
        Self {
            n: fs.n(),
            d: fs.d(),
            data: fs.data().iter().map(|&v| f64::from(v)).collect(),
        }
    }
}

impl Points {
    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Nearest centroid per sample; ties go to the lowest centroid index.
pub fn nearest_centroids(fs: &FeatureSet, centroids: &[Vec<f64>]) -> Vec<usize> {
    let points = Points::from(fs);
    assign(&points, centroids).0
}

fn assign(points: &Points, centroids: &[Vec<f64>]) -> (Vec<usize>, Vec<f64>) {
    (0..points.n)
        .into_par_iter()
        .map(|i| {
            let row = points.row(i);
            let mut best = (0, f64::INFINITY);
            for (c, centroid) in centroids.iter().enumerate() {
                let d = sq_dist(row, centroid);
                if d < best.1 {
                    best = (c, d);
                }
            }
            best
        })
        .unzip()
}

fn plus_plus_init(points: &Points, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut centroids = Vec::with_capacity(k);
    let first = rng.random_range(0..points.n);
    centroids.push(points.row(first).to_vec());
    let mut min_d: Vec<f64> = (0..points.n)
        .map(|i| sq_dist(points.row(i), &centroids[0]))
        .collect();
    while centroids.len() < k {
        let total: f64 = min_d.iter().sum();
        let pick = if total > 0.0 {
            let target = rng.random::<f64>() * total;
            let mut acc = 0.0;
            let mut chosen = points.n - 1;
            for (i, &d) in min_d.iter().enumerate() {
                acc += d;
                if acc > target && d > 0.0 {
                    chosen = i;
                    break;
                }
            }
            chosen
        } else {
            // Every sample coincides with a centroid already.
            rng.random_range(0..points.n)
        };
        let c = points.row(pick).to_vec();
        for (i, d) in min_d.iter_mut().enumerate() {
            *d = d.min(sq_dist(points.row(i), &c));
        }
        centroids.push(c);
    }
    centroids
}

/// Moves, for each empty cluster, the sample farthest from its centroid
/// (taken only from clusters that keep at least one member) into it.
fn repair_empty(points: &Points, assignment: &mut [usize], dist: &mut [f64], centroids: &mut [Vec<f64>]) {
    let k = centroids.len();
    let mut sizes = vec![0usize; k];
    for &c in assignment.iter() {
        sizes[c] += 1;
    }
    for empty in 0..k {
        if sizes[empty] > 0 {
            continue;
        }
        let mut donor = None;
        let mut far = -1.0;
        for (i, &d) in dist.iter().enumerate() {
            if sizes[assignment[i]] >= 2 && d > far {
                far = d;
                donor = Some(i);
            }
        }
        let donor = donor.expect("k <= n guarantees a cluster with two members");
        sizes[assignment[donor]] -= 1;
        sizes[empty] = 1;
        assignment[donor] = empty;
        dist[donor] = 0.0;
        centroids[empty] = points.row(donor).to_vec();
    }
}

fn means(points: &Points, assignment: &[usize], k: usize) -> Vec<Vec<f64>> {
    let mut sums = vec![vec![0.0; points.d]; k];
    let mut counts = vec![0usize; k];
    for (i, &c) in assignment.iter().enumerate() {
        counts[c] += 1;
        for (s, v) in sums[c].iter_mut().zip(points.row(i)) {
            *s += v;
        }
    }
    for (sum, &count) in sums.iter_mut().zip(&counts) {
        sum.iter_mut().for_each(|v| *v /= count as f64);
    }
    sums
}

fn objective_of(points: &Points, assignment: &[usize], centroids: &[Vec<f64>]) -> f64 {
    assignment
        .iter()
        .enumerate()
        .map(|(i, &c)| sq_dist(points.row(i), &centroids[c]))
        .sum()
}

fn lloyd(points: &Points, opts: &KmeansOptions, seed: u64) -> KmeansResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centroids = plus_plus_init(points, opts.k, &mut rng);
    let mut previous: Option<Vec<usize>> = None;
    let mut history = Vec::new();
    let mut converged = false;
    let mut iterations = 0;

    while iterations < opts.max_iter {
        iterations += 1;
        let (mut assignment, mut dist) = assign(points, &centroids);
        repair_empty(points, &mut assignment, &mut dist, &mut centroids);
        if previous.as_deref() == Some(assignment.as_slice()) {
            converged = true;
            break;
        }
        let updated = means(points, &assignment, opts.k);
        let shift = centroids
            .iter()
            .zip(&updated)
            .map(|(a, b)| sq_dist(a, b))
            .fold(0.0, f64::max);
        centroids = updated;
        history.push(objective_of(points, &assignment, &centroids));
        previous = Some(assignment);
        if shift < opts.tol {
            converged = true;
            break;
        }
    }

    let assignment = previous.expect("at least one iteration ran");
    let objective = objective_of(points, &assignment, &centroids);
    KmeansResult {
        clustering: Clustering::new(assignment).expect("repair keeps every cluster non-empty"),
        centroids,
        objective,
        iterations,
        converged,
        history,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{generate_mixture, MixtureSpec};

    fn line(values: &[f32]) -> FeatureSet {
        FeatureSet::unlabeled(1, values.to_vec()).unwrap()
    }

    /// Minimum of the k-means objective over every 2-partition, by enumeration.
    fn best_two_partition(values: &[f64]) -> f64 {
        let n = values.len();
        let mut best = f64::INFINITY;
        for mask in 1..(1u32 << n) - 1 {
            let mut cost = 0.0;
            for side in [true, false] {
                let members: Vec<f64> = (0..n)
                    .filter(|&i| ((mask >> i) & 1 == 1) == side)
                    .map(|i| values[i])
                    .collect();
                let mean = members.iter().sum::<f64>() / members.len() as f64;
                cost += members.iter().map(|v| (v - mean).powi(2)).sum::<f64>();
            }
            best = best.min(cost);
        }
        best
    }

    #[test]
    fn k1_is_column_mean() {
        let fs = FeatureSet::from_rows(
            &[vec![1.0, 2.0], vec![3.0, 6.0], vec![5.0, 1.0]],
            vec![0, 0, 0],
            1,
        )
        .unwrap();
        let r = kmeans(&fs, 1, 0, 300, 1e-4).unwrap();
        assert_eq!(r.clustering.cluster_count(), 1);
        assert!((r.centroids[0][0] - 3.0).abs() < 1e-12);
        assert!((r.centroids[0][1] - 3.0).abs() < 1e-12);
        // n * (population variance summed over columns) = 8 + 14
        assert!((r.objective - 22.0).abs() < 1e-12);
    }

    #[test]
    fn exact_fit_two_points() {
        let r = kmeans(&line(&[0.0, 10.0]), 2, 3, 300, 1e-4).unwrap();
        assert_eq!(r.clustering.cluster_count(), 2);
        assert_ne!(r.clustering.cluster_of(0), r.clustering.cluster_of(1));
        assert_eq!(r.objective, 0.0);
    }

    #[test]
    fn four_points_matches_enumeration() {
        let oracle = best_two_partition(&[0.0, 1.0, 9.0, 10.0]);
        assert_eq!(oracle, 1.0);
        for seed in 0..20 {
            let r = kmeans(&line(&[0.0, 1.0, 9.0, 10.0]), 2, seed, 300, 1e-4).unwrap();
            assert!((r.objective - oracle).abs() < 1e-12, "seed {seed}");
            let a = r.clustering.assignment();
            assert_eq!(a[0], a[1]);
            assert_eq!(a[2], a[3]);
            let mut c: Vec<f64> = r.centroids.iter().map(|c| c[0]).collect();
            c.sort_by(f64::total_cmp);
            assert_eq!(c, vec![0.5, 9.5]);
        }
    }

    #[test]
    fn k_out_of_range() {
        assert!(matches!(
            kmeans(&line(&[1.0, 2.0]), 3, 0, 10, 0.0).unwrap_err(),
            Error::KOutOfRange { k: 3, n: 2 }
        ));
        assert!(kmeans(&line(&[1.0]), 0, 0, 10, 0.0).is_err());
    }

    #[test]
    fn duplicates_keep_k_clusters() {
        let r = kmeans(&line(&[2.0, 2.0, 2.0, 2.0, 7.0]), 4, 1, 50, 0.0).unwrap();
        assert_eq!(r.clustering.cluster_count(), 4);
        assert!(r.clustering.sizes().iter().all(|&s| s >= 1));
    }

    fn mixture(seed: u64) -> FeatureSet {
        generate_mixture(&MixtureSpec {
            class_count: 5,
            dim: 6,
            per_class: 30,
            separation: 2.0,
            noise_std: 1.0,
            seed,
        })
        .unwrap()
    }

    #[test]
    fn objective_history_is_monotone_and_consistent() {
        for seed in 0..10 {
            let fs = mixture(seed);
            let r = kmeans(&fs, 7, seed, 300, 0.0).unwrap();
            for w in r.history.windows(2) {
                assert!(w[1] <= w[0] * (1.0 + 1e-12), "seed {seed}: {w:?}");
            }
            let recomputed: f64 = (0..fs.n())
                .map(|i| {
                    let c = &r.centroids[r.clustering.cluster_of(i)];
                    fs.row(i)
                        .iter()
                        .zip(c)
                        .map(|(&x, m)| (f64::from(x) - m).powi(2))
                        .sum::<f64>()
                })
                .sum();
            assert!((r.objective - recomputed).abs() <= 1e-6 * recomputed);
        }
    }

    #[test]
    fn converged_assignment_is_fixed_point() {
        for seed in 0..10 {
            let fs = mixture(seed + 100);
            let r = kmeans(&fs, 5, seed, 300, 0.0).unwrap();
            assert!(r.converged);
            assert_eq!(nearest_centroids(&fs, &r.centroids), r.clustering.assignment());
        }
    }

    #[test]
    fn translation_invariant() {
        let base: Vec<f32> = [0, 1, 2, 8, 9, 15, 16, 17, 30, 31].iter().map(|&v| v as f32).collect();
        let shifted: Vec<f32> = base.iter().map(|v| v + 1000.0).collect();
        for seed in 0..10 {
            let a = kmeans(&line(&base), 3, seed, 300, 0.0).unwrap();
            let b = kmeans(&line(&shifted), 3, seed, 300, 0.0).unwrap();
            assert_eq!(a.clustering, b.clustering);
        }
    }

    #[test]
    fn deterministic_and_restarts_never_worse() {
        let fs = mixture(4);
        let a = kmeans(&fs, 6, 42, 300, 1e-4).unwrap();
        let b = kmeans(&fs, 6, 42, 300, 1e-4).unwrap();
        assert_eq!(a, b);
        let opts = KmeansOptions {
            restarts: 5,
            ..KmeansOptions::new(6, 42)
        };
        let best = kmeans_with(&fs, &opts).unwrap();
        assert!(best.objective <= a.objective);
    }
}
