use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Least-squares line `y = slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
}

impl LineFit {
    pub fn at(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

fn check_pair(xs: &[f64], ys: &[f64], min_len: usize) -> Result<()> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.len() < min_len {
        return Err(Error::DegenerateInput(format!(
            "need at least {min_len} points, got {}",
            xs.len()
        )));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::DegenerateInput("non-finite value".into()));
    }
    Ok(())
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    check_pair(xs, ys, 2)?;
    let (mx, my) = (mean(xs), mean(ys));
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateInput("all x values are equal".into()));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Ok(LineFit {
        slope,
        intercept: my - slope * mx,
    })
}

/// Coefficient of determination of the least-squares line of `ys` on `xs`.
/// Constant `ys` give 0.
pub fn r_squared(xs: &[f64], ys: &[f64]) -> Result<f64> {
    check_pair(xs, ys, 3)?;
    let fit = linear_fit(xs, ys)?;
    let my = mean(ys);
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if ss_tot == 0.0 {
        return Ok(0.0);
    }
    let ss_res: f64 = xs.iter().zip(ys).map(|(&x, y)| (y - fit.at(x)).powi(2)).sum();
    Ok(1.0 - ss_res / ss_tot)
}

/// Kendall's tau-b: `(P - Q) / sqrt((P + Q + T_x) (P + Q + T_y))`, where
/// `T_x` counts pairs tied only in `a` and `T_y` pairs tied only in `b`.
/// Without ties this is `(P - Q) / C(n, 2)`.
pub fn kendall_tau(a: &[f64], b: &[f64]) -> Result<f64> {
    check_pair(a, b, 2)?;
    let n = a.len();
    let (mut concordant, mut discordant, mut tie_a, mut tie_b) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..n {
        for j in i + 1..n {
            let da = a[i].total_cmp(&a[j]) as i64;
            let db = b[i].total_cmp(&b[j]) as i64;
            match (da, db) {
                (0, 0) => {}
                (0, _) => tie_a += 1,
                (_, 0) => tie_b += 1,
                _ if da == db => concordant += 1,
                _ => discordant += 1,
            }
        }
    }
    let left = concordant + discordant + tie_a;
    let right = concordant + discordant + tie_b;
    if left == 0 || right == 0 {
        return Err(Error::DegenerateInput("all values tied".into()));
    }
    Ok((concordant - discordant) as f64 / ((left as f64) * (right as f64)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x - 1.0).collect();
        assert!((r_squared(&xs, &ys).unwrap() - 1.0).abs() < 1e-12);
        let fit = linear_fit(&xs, &ys).unwrap();
        assert!((fit.slope - 3.0).abs() < 1e-12);
        assert!((fit.intercept + 1.0).abs() < 1e-12);
    }

    #[test]
    fn flat_fit_by_hand() {
        // slope 0, intercept 1/3
        let fit = linear_fit(&[0.0, 1.0, 2.0], &[0.0, 1.0, 0.0]).unwrap();
        assert!(fit.slope.abs() < 1e-12);
        assert!((fit.intercept - 1.0 / 3.0).abs() < 1e-12);
        assert!(r_squared(&[0.0, 1.0, 2.0], &[0.0, 1.0, 0.0]).unwrap().abs() < 1e-12);
    }

    #[test]
    fn r_squared_errors_and_conventions() {
        assert!(r_squared(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]).is_err());
        assert!(r_squared(&[1.0, 2.0], &[1.0, 2.0]).is_err());
        assert!(r_squared(&[1.0, 2.0, 3.0], &[1.0, 2.0]).is_err());
        assert_eq!(r_squared(&[1.0, 2.0, 3.0], &[5.0, 5.0, 5.0]).unwrap(), 0.0);
    }

    #[test]
    fn tau_orderings() {
        assert_eq!(kendall_tau(&[1.0, 2.0, 3.0], &[4.0, 5.0, 9.0]).unwrap(), 1.0);
        assert_eq!(kendall_tau(&[1.0, 2.0, 3.0], &[9.0, 5.0, 4.0]).unwrap(), -1.0);
        let t = kendall_tau(&[1.0, 2.0, 3.0, 4.0], &[1.0, 2.0, 4.0, 3.0]).unwrap();
        assert!((t - 4.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn tau_b_with_ties_matches_reference() {
        // Reference values from an independent tau-b implementation.
        let cases: [(&[f64], &[f64], f64); 3] = [
            (&[1.0, 2.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 2.0, 5.0], 0.6666666666666666),
            (&[1.0, 1.0, 2.0, 2.0, 3.0, 3.0], &[3.0, 1.0, 2.0, 2.0, 1.0, 3.0], 0.0),
            (&[12.0, 2.0, 1.0, 12.0, 2.0], &[1.0, 4.0, 7.0, 1.0, 0.0], -0.4714045207910316),
        ];
        for (a, b, expected) in cases {
            assert!((kendall_tau(a, b).unwrap() - expected).abs() < 1e-12);
        }
        assert!(kendall_tau(&[1.0, 1.0], &[1.0, 2.0]).is_err());
    }

    proptest! {
        #[test]
        fn r_squared_affine_invariant(
            pts in proptest::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 3..20),
            a in prop_oneof![-5.0f64..-0.1, 0.1f64..5.0],
            b in -50.0f64..50.0,
        ) {
            let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
            let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
            prop_assume!(linear_fit(&xs, &ys).is_ok());
            let base = r_squared(&xs, &ys).unwrap();
            let xt: Vec<f64> = xs.iter().map(|x| a * x + b).collect();
            let yt: Vec<f64> = ys.iter().map(|y| a * y + b).collect();
            prop_assert!((r_squared(&xt, &ys).unwrap() - base).abs() < 1e-8);
            prop_assert!((r_squared(&xs, &yt).unwrap() - base).abs() < 1e-8);
            prop_assert!((0.0..=1.0 + 1e-12).contains(&base));
        }

        #[test]
        fn tau_invariant_under_monotone_transform(
            pts in proptest::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 2..15),
        ) {
            let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
            let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
            if let Ok(t) = kendall_tau(&xs, &ys) {
                let xt: Vec<f64> = xs.iter().map(|x| x.powi(3) + 2.0 * x).collect();
                prop_assert!((kendall_tau(&xt, &ys).unwrap() - t).abs() < 1e-12);
                prop_assert!((-1.0..=1.0).contains(&t));
            }
        }
    }
}
