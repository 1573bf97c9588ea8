//! PCA explained-variance profiles and projections.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::featureset::FeatureSet;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarianceProfile {
    /// Covariance eigenvalues, descending, clamped at 0.
    pub eigenvalues: Vec<f64>,
    pub ratios: Vec<f64>,
    pub cumulative: Vec<f64>,
}

/// Principal axes of a feature set.
#[derive(Debug, Clone)]
pub struct Pca {
    pub mean: Vec<f64>,
    /// Row `k` is the unit component for `eigenvalues[k]`.
    pub components: Vec<Vec<f64>>,
    pub profile: VarianceProfile,
}

/// Sample covariance (`1 / (n - 1)`) of the mean-centered rows.
pub fn covariance(fs: &FeatureSet) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let (n, d) = (fs.n(), fs.d());
    if n < 2 {
        return Err(Error::DegenerateInput(format!("PCA needs at least 2 samples, got {n}")));
    }
    let mut mean = vec![0.0; d];
    for row in fs.rows() {
        for (m, &x) in mean.iter_mut().zip(row) {
            *m += x as f64;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n as f64);
    let centered = DMatrix::from_fn(n, d, |i, j| fs.row(i)[j] as f64 - mean[j]);
    let cov = centered.tr_mul(&centered) / (n - 1) as f64;
    Ok((mean, cov))
}

pub fn fit_pca(fs: &FeatureSet) -> Result<Pca> {
    let (mean, cov) = covariance(fs)?;
    let d = cov.nrows();
    let eig = SymmetricEigen::try_new(cov, 1e-12, 0)
        .ok_or_else(|| Error::DegenerateInput("eigen-solve did not converge".into()))?;

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k].max(0.0)).collect();
    let total: f64 = eigenvalues.iter().sum();
    if total <= 0.0 {
        return Err(Error::DegenerateInput("all samples are identical".into()));
    }
    let components = order
        .iter()
        .map(|&k| {
            let mut v: Vec<f64> = eig.eigenvectors.column(k).iter().copied().collect();
            // sign convention: largest-magnitude coordinate is positive
            let pivot = v
                .iter()
                .copied()
                .enumerate()
                .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()).then(b.0.cmp(&a.0)))
                .map(|(_, x)| x)
                .unwrap_or(0.0);
            if pivot < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            v
        })
        .collect();

    let ratios: Vec<f64> = eigenvalues.iter().map(|e| e / total).collect();
    let cumulative = ratios
        .iter()
        .scan(0.0, |acc, r| {
            *acc += r;
            Some(*acc)
        })
        .collect::<Vec<_>>();
    Ok(Pca {
        mean,
        components,
        profile: VarianceProfile {
            eigenvalues,
            ratios,
            cumulative,
        },
    })
}

pub fn pca_profile(fs: &FeatureSet) -> Result<VarianceProfile> {
    Ok(fit_pca(fs)?.profile)
}

/// Smallest `m` whose cumulative explained ratio reaches `threshold`.
///
/// A slack of 1e-9 absorbs round-off in the running sums, so a
/// threshold of 1.0 returns the numerical rank.
pub fn components_for_ratio(profile: &VarianceProfile, threshold: f64) -> Result<usize> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::InvalidParameter(format!("threshold {threshold} is not in (0, 1]")));
    }
    let m = profile
        .cumulative
        .iter()
        .position(|&c| c >= threshold - 1e-9)
        .map_or(profile.cumulative.len(), |i| i + 1);
    Ok(m)
}

impl Pca {
    /// Coordinates of `fs` in the top `m` components.
    pub fn project(&self, fs: &FeatureSet, m: usize) -> Result<FeatureSet> {
        if m == 0 || m > self.components.len() {
            return Err(Error::InvalidParameter(format!(
                "cannot keep {m} of {} components",
                self.components.len()
            )));
        }
        if fs.d() != self.mean.len() {
            return Err(Error::DimensionMismatch {
                expected: self.mean.len(),
                found: fs.d(),
            });
        }
        let mut data = Vec::with_capacity(fs.n() * m);
        for row in fs.rows() {
            for comp in &self.components[..m] {
                let dot: f64 = row
                    .iter()
                    .zip(&self.mean)
                    .zip(comp)
                    .map(|((&x, mu), c)| (x as f64 - mu) * c)
                    .sum();
                data.push(dot as f32);
            }
        }
        fs.with_data(m, data)
    }
}

/// Projects onto the top `m` principal components; labels are kept.
pub fn reduce(fs: &FeatureSet, m: usize) -> Result<FeatureSet> {
    fit_pca(fs)?.project(fs, m)
}

/// Two-dimensional PCA scatter (a single component is padded with zeros).
pub fn project2d(fs: &FeatureSet) -> Result<Vec<[f64; 2]>> {
    let reduced = reduce(fs, fs.d().min(2))?;
    Ok(reduced
        .rows()
        .map(|r| [r[0] as f64, r.get(1).copied().unwrap_or(0.0) as f64])
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::featureset::squared_distance;
    use crate::kmeans::kmeans;
    use crate::synth::{generate_mixture, MixtureSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Cyclic Jacobi rotations on a dense symmetric matrix.
    fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
        let d = a.len();
        for _ in 0..100 {
            let off: f64 = (0..d).flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
            if off < 1e-26 {
                break;
            }
            for p in 0..d {
                for q in p + 1..d {
                    if a[p][q].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..d {
                        let (akp, akq) = (a[k][p], a[k][q]);
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..d {
                        let (apk, aqk) = (a[p][k], a[q][k]);
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut ev: Vec<f64> = (0..d).map(|i| a[i][i]).collect();
        ev.sort_by(|x, y| y.total_cmp(x));
        ev
    }

    fn naive_covariance(fs: &FeatureSet) -> Vec<Vec<f64>> {
        let (n, d) = (fs.n(), fs.d());
        let mean: Vec<f64> = (0..d).map(|j| fs.rows().map(|r| r[j] as f64).sum::<f64>() / n as f64).collect();
        (0..d)
            .map(|a| {
                (0..d)
                    .map(|b| {
                        fs.rows().map(|r| (r[a] as f64 - mean[a]) * (r[b] as f64 - mean[b])).sum::<f64>()
                            / (n - 1) as f64
                    })
                    .collect()
            })
            .collect()
    }

    fn random_set(seed: u64, n: usize, d: usize) -> FeatureSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scales: Vec<f32> = (0..d).map(|_| rng.random_range(0.2..3.0)).collect();
        let data = (0..n * d).map(|i| rng.random_range(-1.0f32..1.0) * scales[i % d]).collect();
        FeatureSet::unlabeled(d, data).unwrap()
    }

    /// Seven exactly representable points with sample covariance diag(3, 1).
    fn diag31() -> FeatureSet {
        // zero mean; Σx² = 18 and Σy² = 6 over n - 1 = 6; x and y never both nonzero
        let rows = [[3.0, 0.0], [-3.0, 0.0], [0.0, 2.0], [0.0, -1.0], [0.0, -1.0], [0.0, 0.0], [0.0, 0.0]];
        let rows: Vec<Vec<f32>> = rows.iter().map(|r| r.to_vec()).collect();
        FeatureSet::from_rows(&rows, vec![0; 7], 1).unwrap()
    }

    #[test]
    fn diag_construction() {
        let p = pca_profile(&diag31()).unwrap();
        assert!((p.eigenvalues[0] - 3.0).abs() < 1e-12);
        assert!((p.eigenvalues[1] - 1.0).abs() < 1e-12);
        assert!((p.ratios[0] - 0.75).abs() < 1e-12);
        assert!((p.ratios[1] - 0.25).abs() < 1e-12);
        assert_eq!(components_for_ratio(&p, 0.75).unwrap(), 1);
        assert_eq!(components_for_ratio(&p, 0.80).unwrap(), 2);
        assert_eq!(components_for_ratio(&p, 1.0).unwrap(), 2);
    }

    #[test]
    fn eigenvalues_match_jacobi_oracle() {
        for d in 1..=6 {
            for seed in 0..5 {
                let fs = random_set(seed * 31 + d as u64, 12 + d, d);
                let got = pca_profile(&fs).unwrap().eigenvalues;
                let want = jacobi_eigenvalues(naive_covariance(&fs));
                for (g, w) in got.iter().zip(&want) {
                    assert!((g - w.max(0.0)).abs() < 1e-8, "d={d} seed={seed}: {g} vs {w}");
                }
            }
        }
    }

    #[test]
    fn rank_one_line() {
        let rows: Vec<Vec<f32>> = (0..6).map(|t| vec![t as f32, 2.0 * t as f32, -(t as f32)]).collect();
        let fs = FeatureSet::from_rows(&rows, vec![0; 6], 1).unwrap();
        let p = pca_profile(&fs).unwrap();
        assert!((p.ratios[0] - 1.0).abs() < 1e-9);
        for t in [0.1, 0.5, 0.999, 1.0] {
            assert_eq!(components_for_ratio(&p, t).unwrap(), 1);
        }
        let reduced = reduce(&fs, 1).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let a = fs.pairwise_distance(i, j).unwrap();
                let b = reduced.pairwise_distance(i, j).unwrap();
                assert!((a - b).abs() <= 1e-9 * a.max(1.0) + 1e-4 * a, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn profile_invariants_and_sign_convention() {
        let fs = random_set(7, 40, 5);
        let pca = fit_pca(&fs).unwrap();
        let p = &pca.profile;
        assert!((p.ratios.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        assert!(p.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        assert!(p.cumulative.windows(2).all(|w| w[0] <= w[1]));
        assert!((p.cumulative.last().unwrap() - 1.0).abs() < 1e-9);
        for c in &pca.components {
            let big = c.iter().copied().max_by(|a, b| a.abs().total_cmp(&b.abs())).unwrap();
            assert!(big > 0.0);
        }
    }

    #[test]
    fn isotropic_ratios_near_uniform() {
        let spec = MixtureSpec {
            class_count: 2,
            dim: 4,
            per_class: 2000,
            separation: 0.0,
            noise_std: 1.0,
            seed: 3,
        };
        let p = pca_profile(&generate_mixture(&spec).unwrap()).unwrap();
        for r in p.ratios {
            assert!((r - 0.25).abs() < 0.02, "{r}");
        }
    }

    #[test]
    fn full_rank_reduction_keeps_kmeans_objective() {
        let spec = MixtureSpec {
            class_count: 3,
            dim: 4,
            per_class: 20,
            separation: 4.0,
            noise_std: 1.0,
            seed: 11,
        };
        let fs = generate_mixture(&spec).unwrap();
        let rotated = reduce(&fs, 4).unwrap();
        let a = kmeans(&fs, 3, 5, 300, 1e-4).unwrap();
        let b = kmeans(&rotated, 3, 5, 300, 1e-4).unwrap();
        assert!(a.clustering.same_partition(&b.clustering));
        assert!((a.objective - b.objective).abs() <= 1e-6 * a.objective.max(1.0) * 10.0);
    }

    #[test]
    fn reduction_never_stretches_distances() {
        let fs = random_set(9, 15, 6);
        for m in 1..=6 {
            let r = reduce(&fs, m).unwrap();
            for i in 0..fs.n() {
                for j in 0..i {
                    let full = squared_distance(fs.row(i), fs.row(j));
                    let low = squared_distance(r.row(i), r.row(j));
                    assert!(low <= full * (1.0 + 1e-5) + 1e-6);
                }
            }
        }
    }

    #[test]
    fn components_monotone_in_threshold() {
        let p = pca_profile(&random_set(2, 30, 6)).unwrap();
        let counts: Vec<usize> = (1..=20).map(|t| components_for_ratio(&p, t as f64 / 20.0).unwrap()).collect();
        assert!(counts.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn errors() {
        let one = FeatureSet::unlabeled(2, vec![1.0, 2.0]).unwrap();
        assert!(pca_profile(&one).is_err());
        let same = FeatureSet::unlabeled(2, vec![1.0, 2.0, 1.0, 2.0]).unwrap();
        assert!(pca_profile(&same).is_err());
        assert!(reduce(&diag31(), 3).is_err());
        assert!(reduce(&diag31(), 0).is_err());
        let p = pca_profile(&diag31()).unwrap();
        assert!(components_for_ratio(&p, 0.0).is_err());
        assert!(components_for_ratio(&p, 1.5).is_err());
    }

    #[test]
    fn project2d_shape() {
        let pts = project2d(&diag31()).unwrap();
        assert_eq!(pts.len(), 7);
        let line = FeatureSet::unlabeled(1, vec![0.0, 1.0, 3.0]).unwrap();
        let pts = project2d(&line).unwrap();
        assert!(pts.iter().all(|p| p[1] == 0.0));
    }
}
