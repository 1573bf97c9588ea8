use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::featureset::{squared_distance, FeatureSet};

/// Logistic function `1 / (1 + e^-x)`.
pub fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

pub fn logit(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

/// Probability that a pair at squared distance `d` belongs to different
/// clusters: `σ((d - theta) / temperature)`.
pub fn cut_probability(d: f64, theta: f64, temperature: f64) -> f64 {
    logistic((d - theta) / temperature)
}

/// Edge cost for a pair at squared distance `d`: `logit(1 - p_cut)`, which
/// simplifies to `(theta - d) / temperature`. Close pairs are attractive
/// (positive, expensive to cut); far pairs are repulsive.
pub fn edge_cost(d: f64, theta: f64, temperature: f64) -> f64 {
    (theta - d) / temperature
}

/// Complete graph over `n` nodes with one real cost per unordered pair,
/// stored as the strict upper triangle in row order.
#[derive(Debug, Clone, PartialEq)]
pub struct CostGraph {
    n: usize,
    costs: Vec<f64>,
    theta: Option<f64>,
    temperature: Option<f64>,
}

pub fn edge_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of pair `(i, j)`, `i != j`, in the triangular edge array.
#[inline]
pub fn edge_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl CostGraph {
    pub fn from_costs(n: usize, costs: Vec<f64>) -> Result<Self> {
        if costs.len() != edge_count(n) {
            return Err(Error::LengthMismatch {
                left: costs.len(),
                right: edge_count(n),
            });
        }
        if costs.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidParameter("edge costs must be finite".into()));
        }
        Ok(Self {
            n,
            costs,
            theta: None,
            temperature: None,
        })
    }

    /// Graph for pairwise squared distances laid out like [`edge_index`].
    pub fn from_distances(n: usize, distances: &[f64], theta: f64, temperature: f64) -> Result<Self> {
        check_params(theta, temperature)?;
        if let Some(bad) = distances.iter().position(|d| !d.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite distance at edge {bad}")));
        }
        let costs = distances.iter().map(|&d| edge_cost(d, theta, temperature)).collect();
        let mut g = Self::from_costs(n, costs)?;
        g.theta = Some(theta);
        g.temperature = Some(temperature);
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    pub fn theta(&self) -> Option<f64> {
        self.theta
    }

    pub fn temperature(&self) -> Option<f64> {
        self.temperature
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.costs[edge_index(self.n, i, j)]
    }

    /// `(i, j, w)` for every pair `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| (i, j, self.weight(i, j))))
    }
}

fn check_params(theta: f64, temperature: f64) -> Result<()> {
    if !(theta > 0.0 && theta.is_finite()) {
        return Err(Error::InvalidParameter(format!("theta must be positive, got {theta}")));
    }
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    Ok(())
}

/// Squared distances for every pair, in [`edge_index`] order.
pub fn pairwise_distances(fs: &FeatureSet) -> Vec<f64> {
    let n = fs.n();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|i| (i + 1..n).map(move |j| squared_distance(fs.row(i), fs.row(j))))
        .collect()
}

pub fn build_cost_graph(fs: &FeatureSet, theta: f64, temperature: f64) -> Result<CostGraph> {
    check_params(theta, temperature)?;
    CostGraph::from_distances(fs.n(), &pairwise_distances(fs), theta, temperature)
}

/// Standard deviation of squared distances over a seeded sample of at most
/// `max_pairs` random pairs; 1.0 if the sample has no spread.
pub fn default_temperature(fs: &FeatureSet, max_pairs: usize, seed: u64) -> f64 {
    let n = fs.n();
    if n < 2 {
        return 1.0;
    }
    let all = edge_count(n);
    let sample: Vec<f64> = if all <= max_pairs {
        pairwise_distances(fs)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..max_pairs)
            .map(|_| {
                let i = rng.random_range(0..n);
                let mut j = rng.random_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                squared_distance(fs.row(i), fs.row(j))
            })
            .collect()
    };
    let mean = sample.iter().sum::<f64>() / sample.len() as f64;
    let var = sample.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / sample.len() as f64;
    let std = var.sqrt();
    if std > 0.0 && std.is_finite() {
        std
    } else {
        1.0
    }
}

/// Sum of the costs of edges whose endpoints lie in different clusters.
pub fn objective(g: &CostGraph, c: &Clustering) -> Result<f64> {
    if c.len() != g.n {
        return Err(Error::LengthMismatch {
            left: c.len(),
            right: g.n,
        });
    }
    let a = c.assignment();
    Ok(g.edges().filter(|&(i, j, _)| a[i] != a[j]).map(|(_, _, w)| w).sum())
}

/// Binary edge labels, `true` = cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabeling {
    n: usize,
    cut: Vec<bool>,
}

impl EdgeLabeling {
    pub fn new(n: usize, cut: Vec<bool>) -> Result<Self> {
        if cut.len() != edge_count(n) {
            return Err(Error::LengthMismatch {
                left: cut.len(),
                right: edge_count(n),
            });
        }
        Ok(Self { n, cut })
    }

    /// The labeling induced by a partition: cut iff endpoints differ.
    pub fn from_clustering(c: &Clustering) -> Self {
        let n = c.len();
        let a = c.assignment();
        let cut = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| a[i] != a[j]))
            .collect();
        Self { n, cut }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_cut(&self, i: usize, j: usize) -> bool {
        self.cut[edge_index(self.n, i, j)]
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.cut
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// True iff the labeling is induced by some partition of the nodes: no cut
/// edge may join two nodes that are connected through joined edges. On a
/// complete graph this is the same as every cycle having either zero or at
/// least two cut edges.
pub fn is_valid_decomposition(g: &CostGraph, y: &EdgeLabeling) -> Result<bool> {
    if y.n != g.n {
        return Err(Error::LengthMismatch { left: y.n, right: g.n });
    }
    let n = g.n;
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            if !y.is_cut(i, j) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if y.is_cut(i, j) && find(&mut parent, i) == find(&mut parent, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
