//! Least-squares fit of `log E[τ]` against `β`.

use serde::Serialize;

use crate::dynamics::Engine;
use crate::energy::Params;
use crate::error::{Error, Result};
use crate::estimators::hitting::{default_cap, estimate_hitting, HittingReport, TargetSet};
use crate::estimators::stats::{ols, Interval};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArrheniusPoint {
    pub beta: f64,
    pub mean: f64,
    pub ci: Interval,
    pub n: usize,
    pub capped: usize,
}

impl From<&HittingReport> for ArrheniusPoint {
    fn from(r: &HittingReport) -> Self {
        Self { beta: r.beta, mean: r.mean, ci: r.ci, n: r.n, capped: r.capped }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArrheniusReport {
    pub points: Vec<ArrheniusPoint>,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

pub fn arrhenius_fit(points: &[ArrheniusPoint]) -> Result<ArrheniusReport> {
    if points.len() < 3 {
        return Err(Error::Invalid(format!("need at least 3 temperatures, got {}", points.len())));
    }
    if points.windows(2).any(|w| !(w[0].beta < w[1].beta)) {
        return Err(Error::Invalid("β grid must be strictly increasing".into()));
    }
    if points.iter().any(|p| !(p.mean > 0.0 && p.mean.is_finite())) {
        return Err(Error::Invalid("every temperature needs a positive finite mean".into()));
    }
    let x: Vec<f64> = points.iter().map(|p| p.beta).collect();
    let y: Vec<f64> = points.iter().map(|p| p.mean.ln()).collect();
    let f = ols(&x, &y)?;
    Ok(ArrheniusReport { points: points.to_vec(), slope: f.slope, intercept: f.intercept, r2: f.r2 })
}

/// Hitting experiment at each `β`, one seed per temperature derived from
/// `seed`, caps `cap_factor · e^{βΓ}`.
pub fn arrhenius_experiment(
    p: &Params,
    m: u8,
    betas: &[f64],
    n: usize,
    seed: u64,
    cap_factor: f64,
    engine: Engine,
) -> Result<(ArrheniusReport, Vec<HittingReport>)> {
    let reports = betas
        .iter()
        .enumerate()
        .map(|(i, &b)| estimate_hitting(p, m, TargetSet::Stable, b, n, default_cap(p, b, cap_factor), seed + i as u64 * 1_000_003, engine))
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<ArrheniusPoint> = reports.iter().map(ArrheniusPoint::from).collect();
    Ok((arrhenius_fit(&points)?, reports))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(c: f64, scale: f64) -> Vec<ArrheniusPoint> {
        [1.6, 2.0, 2.4, 2.8]
            .iter()
            .map(|&beta| {
                let mean = scale * (5.7 * beta + c).exp();
                ArrheniusPoint { beta, mean, ci: Interval { lo: mean, hi: mean }, n: 1, capped: 0 }
            })
            .collect()
    }

    #[test]
    fn exact_exponential_gives_exact_slope() {
        let r = arrhenius_fit(&synthetic(1.3, 1.0)).unwrap();
        assert!((r.slope - 5.7).abs() < 1e-12);
    }

    #[test]
    fn time_unit_only_moves_intercept() {
        let a = arrhenius_fit(&synthetic(0.0, 1.0)).unwrap();
        let b = arrhenius_fit(&synthetic(0.0, 81.0)).unwrap();
        assert!((a.slope - b.slope).abs() < 1e-12);
        assert!((b.intercept - a.intercept - 81f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn degenerate_grids_fail() {
        let pts = synthetic(0.0, 1.0);
        assert!(arrhenius_fit(&pts[..2]).is_err());
        let mut bad = pts.clone();
        bad[2].beta = bad[1].beta;
        assert!(arrhenius_fit(&bad).is_err());
    }
}
