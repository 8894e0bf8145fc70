//! Hitting times `𝐦 → target` from independent rejection-free trajectories.

use serde::{Deserialize, Serialize};

use crate::dynamics::{observers, run_batch, Engine, Predicate, RunRecord, SimConfig};
use crate::energy::Params;
use crate::error::{Error, Result};
use crate::estimators::stats::{bootstrap_mean_ci, ks_exp1, mean, Interval, BOOTSTRAP_RESAMPLES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetSet {
    /// `{𝟏}`.
    Stable,
    /// Monochromatic states other than `𝟏` and `𝐦`.
    OtherMetastable,
    /// The complement of the initial cycle of `𝐦`; entered exactly when the
    /// energy first reaches `H(𝐦) + Γ`.
    LeaveCycle,
}

impl TargetSet {
    pub fn predicate(self, p: &Params, m: u8) -> Predicate {
        match self {
            TargetSet::Stable => observers::monochrome(p, 1),
            TargetSet::OtherMetastable => observers::other_metastable(p, m),
            TargetSet::LeaveCycle => observers::exit_initial_cycle(p, m),
        }
    }
}

impl std::str::FromStr for TargetSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stable" | "1" => Ok(TargetSet::Stable),
            "metastable" | "other-metastable" => Ok(TargetSet::OtherMetastable),
            "g" | "G" | "leave-cycle" => Ok(TargetSet::LeaveCycle),
            _ => Err(Error::Invalid(format!("unknown target set {s:?}"))),
        }
    }
}

/// Step cap `factor · e^{βΓ}`, saturating.
pub fn default_cap(p: &Params, beta: f64, factor: f64) -> u64 {
    let c = factor * (beta * p.value(p.barrier())).exp();
    if c >= u64::MAX as f64 {
        u64::MAX
    } else {
        c.ceil().max(1.0) as u64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HittingReport {
    pub beta: f64,
    pub m: u8,
    pub target: TargetSet,
    pub n: usize,
    pub cap: u64,
    /// Runs that reached the cap; excluded from the mean.
    pub capped: usize,
    pub mean: f64,
    pub ci: Interval,
    pub samples: Vec<u64>,
}

impl HittingReport {
    /// Fraction of samples inside `[e^{β(Γ−ε)}, e^{β(Γ+ε)}]`.
    pub fn fraction_within(&self, gamma: f64, eps: f64) -> f64 {
        let (lo, hi) = ((self.beta * (gamma - eps)).exp(), (self.beta * (gamma + eps)).exp());
        let inside = self.samples.iter().filter(|&&t| lo < t as f64 && (t as f64) < hi).count();
        inside as f64 / (self.samples.len() + self.capped) as f64
    }
}

/// Summary of finished runs; capped runs are counted, never averaged.
pub fn summarize(beta: f64, m: u8, target: TargetSet, cap: u64, runs: &[RunRecord], seed: u64) -> Result<HittingReport> {
    let samples: Vec<u64> = runs.iter().filter(|r| !r.capped).map(|r| r.steps).collect();
    let capped = runs.len() - samples.len();
    let xs: Vec<f64> = samples.iter().map(|&t| t as f64).collect();
    let (mean, ci) = if xs.is_empty() {
        (f64::NAN, Interval { lo: f64::NAN, hi: f64::NAN })
    } else {
        (mean(&xs), bootstrap_mean_ci(&xs, BOOTSTRAP_RESAMPLES, 0.05, seed)?)
    };
    Ok(HittingReport { beta, m, target, n: runs.len(), cap, capped, mean, ci, samples })
}

#[allow(clippy::too_many_arguments)]
pub fn estimate_hitting(
    p: &Params,
    m: u8,
    target: TargetSet,
    beta: f64,
    n: usize,
    cap: u64,
    seed: u64,
    engine: Engine,
) -> Result<HittingReport> {
    if n == 0 {
        return Err(Error::Invalid("need at least one trajectory".into()));
    }
    if !(2..=p.q).contains(&m) {
        return Err(Error::Invalid(format!("start spin m={m} must lie in 2..={}", p.q)));
    }
    let cfg = SimConfig::new(beta, seed, cap)?;
    let start = p.monochrome(m)?;
    let runs = run_batch(p, &start, &[target.predicate(p, m)], &[], &cfg, n, engine)?;
    summarize(beta, m, target, cap, &runs, seed)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpLawReport {
    pub n: usize,
    pub mean: f64,
    /// Sup distance between the law of `τ / mean` and `Exp(1)`.
    pub ks: f64,
}

pub const EXP_LAW_MIN_SAMPLES: usize = 100;

pub fn exp_law_test(samples: &[f64]) -> Result<ExpLawReport> {
    if samples.len() < EXP_LAW_MIN_SAMPLES {
        return Err(Error::Invalid(format!(
            "exponential-law test needs at least {EXP_LAW_MIN_SAMPLES} samples, got {}",
            samples.len()
        )));
    }
    Ok(ExpLawReport { n: samples.len(), mean: mean(samples), ks: ks_exp1(samples) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinite_temperature_is_fast() {
        // At β = 0 the chain is a uniform walk on 3^9 states.
        let p = Params::new(3, 3, 3, 0.9).unwrap();
        let r = estimate_hitting(&p, 2, TargetSet::Stable, 0.0, 20, 1 << 40, 1, Engine::Kmc).unwrap();
        assert_eq!(r.capped, 0);
        assert!(r.mean.is_finite() && r.mean < 1e8);
    }

    #[test]
    fn seeded_runs_repeat() {
        let p = Params::new(3, 5, 5, 0.9).unwrap();
        let cap = default_cap(&p, 1.0, 50.0);
        let a = estimate_hitting(&p, 2, TargetSet::LeaveCycle, 1.0, 30, cap, 9, Engine::Kmc).unwrap();
        let b = estimate_hitting(&p, 2, TargetSet::LeaveCycle, 1.0, 30, cap, 9, Engine::Kmc).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn exp_law_needs_samples() {
        assert!(exp_law_test(&[1.0; 99]).is_err());
        let r = exp_law_test(&[1.0; 100]).unwrap();
        assert!((r.ks - (1.0 - (-1.0f64).exp())).abs() < 1e-12);
    }

    #[test]
    fn target_names_parse() {
        assert_eq!("G".parse::<TargetSet>().unwrap(), TargetSet::LeaveCycle);
        assert!("x".parse::<TargetSet>().is_err());
    }
}
