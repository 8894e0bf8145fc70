//! Small-sample statistics: bootstrap and Wilson intervals, the
//! Kolmogorov–Smirnov distance to `Exp(1)`, and ordinary least squares.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub const BOOTSTRAP_RESAMPLES: usize = 1000;
/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959963984540054;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Percentile bootstrap interval for the mean at level `1 − alpha`.
pub fn bootstrap_mean_ci(xs: &[f64], resamples: usize, alpha: f64, seed: u64) -> Result<Interval> {
    if xs.is_empty() || resamples == 0 {
        return Err(Error::Invalid("bootstrap needs samples and resamples".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = xs.len();
    let mut means: Vec<f64> = (0..resamples)
        .map(|_| (0..n).map(|_| xs[rng.random_range(0..n)]).sum::<f64>() / n as f64)
        .collect();
    means.sort_by(f64::total_cmp);
    let at = |q: f64| means[((q * resamples as f64).floor() as usize).min(resamples - 1)];
    Ok(Interval { lo: at(alpha / 2.0), hi: at(1.0 - alpha / 2.0) })
}

/// Wilson score interval for `k` successes in `n` trials.
pub fn wilson(k: usize, n: usize, z: f64) -> Interval {
    if n == 0 {
        return Interval { lo: 0.0, hi: 1.0 };
    }
    let (nf, p) = (n as f64, k as f64 / n as f64);
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * nf)) / (1.0 + z2 / nf);
    let half = z * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / (1.0 + z2 / nf);
    let lo = if k == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if k == n { 1.0 } else { (centre + half).min(1.0) };
    Interval { lo, hi }
}

/// Sup distance between the empirical law of `x / mean(x)` and `Exp(1)`.
pub fn ks_exp1(xs: &[f64]) -> f64 {
    let m = mean(xs);
    let mut t: Vec<f64> = xs.iter().map(|x| x / m).collect();
    t.sort_by(f64::total_cmp);
    let n = t.len() as f64;
    t.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = 1.0 - (-x).exp();
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Sup distance between two empirical distribution functions.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

pub fn ols(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::Invalid("least squares needs two or more paired points".into()));
    }
    let (mx, my) = (mean(x), mean(y));
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Invalid("abscissae are all equal".into()));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(LinearFit { slope, intercept: my - slope * mx, r2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_distr::{Distribution, Exp};

    #[test]
    fn wilson_known_value() {
        // 8/10 at z = 1.96: (0.4902, 0.9433) to four places.
        let w = wilson(8, 10, Z95);
        assert!((w.lo - 0.4902).abs() < 1e-4 && (w.hi - 0.9433).abs() < 1e-4);
        assert_eq!(wilson(0, 0, Z95), Interval { lo: 0.0, hi: 1.0 });
    }

    #[test]
    fn wilson_width_shrinks_like_root_n() {
        let w1 = wilson(300, 1000, Z95).width();
        let w4 = wilson(1200, 4000, Z95).width();
        assert!((w1 / w4 - 2.0).abs() < 0.01);
    }

    #[test]
    fn wilson_covers_bernoulli_truth() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = 0.3;
        let covered = (0..2000)
            .filter(|_| {
                let k = (0..200).filter(|_| rng.random::<f64>() < p).count();
                wilson(k, 200, Z95).contains(p)
            })
            .count();
        assert!((covered as f64 / 2000.0 - 0.95).abs() < 0.02);
    }

    #[test]
    fn ks_calibration_on_exact_exponentials() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let n = 2000;
        let xs: Vec<f64> = (0..n).map(|_| Exp::new(0.01).unwrap().sample(&mut rng)).collect();
        // 95% quantile of the scaled statistic is about 1.36; 1.22 is the 90%.
        assert!(ks_exp1(&xs) < 1.36 / (n as f64).sqrt());
        let flat: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        assert!(ks_exp1(&flat) > 0.1);
    }

    #[test]
    fn two_sample_ks_small_cases() {
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[1.0, 2.0]), 0.0);
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[3.0, 4.0]), 1.0);
        assert!((ks_two_sample(&[1.0, 2.0, 3.0, 4.0], &[2.5]) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ols_recovers_line() {
        let x = [1.6, 2.0, 2.4, 2.8];
        let y: Vec<f64> = x.iter().map(|b| 5.7 * b + 3.2).collect();
        let f = ols(&x, &y).unwrap();
        assert!((f.slope - 5.7).abs() < 1e-12 && (f.intercept - 3.2).abs() < 1e-12);
        assert!((f.r2 - 1.0).abs() < 1e-12);
        assert!(ols(&[1.0, 1.0], &[2.0, 3.0]).is_err());
    }

    #[test]
    fn bootstrap_is_seeded_and_brackets_mean() {
        let xs: Vec<f64> = (1..=50).map(|i| i as f64).collect();
        let a = bootstrap_mean_ci(&xs, BOOTSTRAP_RESAMPLES, 0.05, 3).unwrap();
        assert_eq!(a, bootstrap_mean_ci(&xs, BOOTSTRAP_RESAMPLES, 0.05, 3).unwrap());
        assert!(a.contains(25.5) && a.width() < 10.0);
    }
}
