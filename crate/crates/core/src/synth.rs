//! Synthetic Gaussian-mixture latent spaces and a severity-parameterized
//! latent corruption model.
//!
//! The corruption is a stand-in: real corruptions act on pixels, and nothing
//! here claims to reproduce them. It shifts every feature along one common
//! direction (clusters "pulled" the same way) and inflates isotropic noise with
//! severity, which is the simplest model that makes classes overlap more as
//! severity grows.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::featureset::{squared_distance, FeatureSet};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureSpec {
    pub class_count: usize,
    pub dim: usize,
    pub per_class: usize,
    /// Euclidean distance between any two class means, in units of `noise_std`.
    pub separation: f64,
    pub noise_std: f64,
    pub seed: u64,
}

impl MixtureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.class_count < 2 {
            return Err(Error::InvalidParameter("class_count must be at least 2".into()));
        }
        if self.per_class == 0 {
            return Err(Error::InvalidParameter("per_class must be at least 1".into()));
        }
        if !(self.separation >= 0.0 && self.separation.is_finite()) {
            return Err(Error::InvalidParameter("separation must be finite and >= 0".into()));
        }
        if !(self.noise_std > 0.0 && self.noise_std.is_finite()) {
            return Err(Error::InvalidParameter("noise_std must be finite and > 0".into()));
        }
        if self.dim + 1 < self.class_count {
            return Err(Error::InvalidParameter(format!(
                "{} equidistant means need dim >= {}",
                self.class_count,
                self.class_count - 1
            )));
        }
        Ok(())
    }
}

/// Vertices of a regular simplex with the given edge length, centered at the
/// origin and embedded in the first `L - 1` of `dim` coordinates.
///
/// Coordinates come from the Helmert basis of the sum-zero subspace: basis
/// vector `j` is `(1, .., 1, -j, 0, ..) / sqrt(j (j + 1))` with `j` leading
/// ones, and vertex `k` has coordinate `h_j[k]` along it.
pub fn simplex_means(class_count: usize, dim: usize, edge: f64) -> Vec<Vec<f64>> {
    let scale = edge / std::f64::consts::SQRT_2;
    (0..class_count)
        .map(|k| {
            let mut mean = vec![0.0; dim];
            for j in 1..class_count {
                let norm = ((j * (j + 1)) as f64).sqrt();
                let h = if k < j {
                    1.0
                } else if k == j {
                    -(j as f64)
                } else {
                    0.0
                };
                mean[j - 1] = scale * h / norm;
            }
            mean
        })
        .collect()
}

/// Balanced mixture, class-major row order (`per_class` rows of class 0 first).
pub fn generate_mixture(spec: &MixtureSpec) -> Result<FeatureSet> {
    spec.validate()?;
    let means = simplex_means(spec.class_count, spec.dim, spec.separation * spec.noise_std);
    let noise = Normal::new(0.0, spec.noise_std)
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let n = spec.class_count * spec.per_class;
    let mut data = Vec::with_capacity(n * spec.dim);
    let mut labels = Vec::with_capacity(n);
    for (class, mean) in means.iter().enumerate() {
        for _ in 0..spec.per_class {
            data.extend(mean.iter().map(|&m| (m + noise.sample(&mut rng)) as f32));
            labels.push(class);
        }
    }
    FeatureSet::new(spec.dim, spec.class_count, data, labels)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorruptionSpec {
    /// Strictly increasing severity levels, e.g. `[1, 2, 3, 4, 5]`.
    pub severities: Vec<u32>,
    /// Drift length per unit severity.
    pub drift_scale: f64,
    /// Added noise standard deviation per unit severity.
    pub noise_growth: f64,
    pub drift_seed: u64,
}

impl CorruptionSpec {
    pub fn validate(&self) -> Result<()> {
        if self.severities.is_empty() {
            return Err(Error::InvalidParameter("at least one severity level is required".into()));
        }
        if self.severities.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("severities must be strictly increasing".into()));
        }
        if !self.drift_scale.is_finite() || !(self.noise_growth >= 0.0 && self.noise_growth.is_finite()) {
            return Err(Error::InvalidParameter(
                "drift_scale must be finite and noise_growth finite and >= 0".into(),
            ));
        }
        Ok(())
    }

    /// The fixed unit drift direction for a feature dimension.
    pub fn drift_direction(&self, dim: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.drift_seed);
        loop {
            let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-12 {
                return v.into_iter().map(|x| x / norm).collect();
            }
        }
    }
}

/// Applies `x + s·drift_scale·v + ε`, `ε ~ N(0, (s·noise_growth)² I)`.
///
/// The noise stream is selected by severity so each level is reproducible on
/// its own.
pub fn corrupt(fs: &FeatureSet, spec: &CorruptionSpec, severity: u32) -> Result<FeatureSet> {
    spec.validate()?;
    if !spec.severities.contains(&severity) {
        return Err(Error::UnknownSeverity(severity));
    }
    let s = f64::from(severity);
    let shift: Vec<f64> = spec
        .drift_direction(fs.d())
        .into_iter()
        .map(|v| v * s * spec.drift_scale)
        .collect();
    let sigma = s * spec.noise_growth;

    let mut rng = ChaCha8Rng::seed_from_u64(spec.drift_seed);
    rng.set_stream(u64::from(severity) + 1);
    let data = fs
        .rows()
        .flat_map(|row| {
            row.iter()
                .zip(&shift)
                .map(|(&x, &dx)| {
                    let eps = if sigma > 0.0 {
                        sigma * rng.sample::<f64, _>(StandardNormal)
                    } else {
                        0.0
                    };
                    (f64::from(x) + dx + eps) as f32
                })
                .collect::<Vec<_>>()
        })
        .collect();
    fs.with_data(fs.d(), data)
}

/// Per-class mean vectors; classes without samples get a zero mean.
pub fn class_means(fs: &FeatureSet) -> Vec<Vec<f64>> {
    let mut sums = vec![vec![0.0; fs.d()]; fs.class_count()];
    let sizes = fs.class_sizes();
    for (row, &label) in fs.rows().zip(fs.labels()) {
        for (acc, &v) in sums[label].iter_mut().zip(row) {
            *acc += f64::from(v);
        }
    }
    for (sum, &size) in sums.iter_mut().zip(&sizes) {
        if size > 0 {
            sum.iter_mut().for_each(|v| *v /= size as f64);
        }
    }
    sums
}

/// Accuracy of a nearest-class-mean classifier with the given means, in
/// `[0, 1]`. Serves as the "model" of a synthetic latent space.
pub fn nearest_mean_accuracy(means: &[Vec<f64>], fs: &FeatureSet) -> f64 {
    let means32: Vec<Vec<f32>> = means
        .iter()
        .map(|m| m.iter().map(|&v| v as f32).collect())
        .collect();
    let correct = fs
        .rows()
        .zip(fs.labels())
        .filter(|(row, &label)| {
            let mut best = (f64::INFINITY, 0);
            for (k, m) in means32.iter().enumerate() {
                let d = squared_distance(row, m);
                if d < best.0 {
                    best = (d, k);
                }
            }
            best.1 == label
        })
        .count();
    correct as f64 / fs.n() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(separation: f64, seed: u64) -> MixtureSpec {
        MixtureSpec {
            class_count: 4,
            dim: 5,
            per_class: 10,
            separation,
            noise_std: 1.5,
            seed,
        }
    }

    #[test]
    fn simplex_is_equidistant() {
        for l in 2..7 {
            let means = simplex_means(l, l + 1, 3.0);
            for a in 0..l {
                for b in a + 1..l {
                    let d: f64 = means[a]
                        .iter()
                        .zip(&means[b])
                        .map(|(x, y)| (x - y).powi(2))
                        .sum::<f64>()
                        .sqrt();
                    assert!((d - 3.0).abs() < 1e-12, "L={l} pair ({a},{b}) at {d}");
                }
            }
        }
    }

    #[test]
    fn balanced_and_deterministic() {
        let a = generate_mixture(&spec(4.0, 9)).unwrap();
        assert_eq!(a.class_sizes(), vec![10; 4]);
        assert_eq!(a, generate_mixture(&spec(4.0, 9)).unwrap());
        assert_ne!(a, generate_mixture(&spec(4.0, 10)).unwrap());
    }

    #[test]
    fn rejects_bad_specs() {
        let mut s = spec(1.0, 0);
        s.class_count = 1;
        assert!(generate_mixture(&s).is_err());
        let mut s = spec(1.0, 0);
        s.dim = 2;
        assert!(generate_mixture(&s).is_err());
        let mut s = spec(1.0, 0);
        s.noise_std = 0.0;
        assert!(generate_mixture(&s).is_err());
    }

    fn corruption(drift: f64, growth: f64) -> CorruptionSpec {
        CorruptionSpec {
            severities: vec![1, 2, 3, 4, 5],
            drift_scale: drift,
            noise_growth: growth,
            drift_seed: 5,
        }
    }

    #[test]
    fn identity_corruption() {
        let fs = generate_mixture(&spec(2.0, 1)).unwrap();
        assert_eq!(corrupt(&fs, &corruption(0.0, 0.0), 3).unwrap(), fs);
    }

    #[test]
    fn translation_preserves_distances() {
        let fs = generate_mixture(&spec(2.0, 1)).unwrap();
        let moved = corrupt(&fs, &corruption(2.5, 0.0), 4).unwrap();
        assert_eq!(moved.labels(), fs.labels());
        for i in 0..fs.n() {
            for j in 0..fs.n() {
                let a = fs.pairwise_distance(i, j).unwrap();
                let b = moved.pairwise_distance(i, j).unwrap();
                assert!((a - b).abs() <= 1e-4 * (1.0 + a), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn unknown_severity() {
        let fs = generate_mixture(&spec(2.0, 1)).unwrap();
        assert!(matches!(
            corrupt(&fs, &corruption(1.0, 1.0), 6).unwrap_err(),
            Error::UnknownSeverity(6)
        ));
        let bad = CorruptionSpec {
            severities: vec![2, 1],
            ..corruption(1.0, 1.0)
        };
        assert!(corrupt(&fs, &bad, 1).is_err());
    }

    #[test]
    fn intra_class_spread_grows_with_severity() {
        let fs = generate_mixture(&spec(3.0, 2)).unwrap();
        let spec = corruption(0.5, 0.8);
        let mean_intra = |f: &FeatureSet| {
            let mut sum = 0.0;
            let mut count = 0;
            for i in 0..f.n() {
                for j in i + 1..f.n() {
                    if f.labels()[i] == f.labels()[j] {
                        sum += f.pairwise_distance(i, j).unwrap();
                        count += 1;
                    }
                }
            }
            sum / count as f64
        };
        let mut last = mean_intra(&fs);
        for s in 1..=5 {
            let cur = mean_intra(&corrupt(&fs, &spec, s).unwrap());
            assert!(cur > last, "severity {s}: {cur} <= {last}");
            last = cur;
        }
    }

    #[test]
    fn nearest_mean_on_separated_mixture() {
        let fs = generate_mixture(&spec(12.0, 3)).unwrap();
        assert_eq!(nearest_mean_accuracy(&class_means(&fs), &fs), 1.0);
    }
}
