//! Frequencies of observer events occurring no later than absorption.

use serde::Serialize;

use crate::dynamics::{observers, run_batch, Engine, Predicate, SimConfig};
use crate::energy::Params;
use crate::error::{Error, Result};
use crate::estimators::hitting::TargetSet;
use crate::estimators::stats::{wilson, Interval, Z95};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossingRow {
    pub observer: String,
    pub hits: usize,
    /// Absorbed runs; the denominator.
    pub n: usize,
    pub freq: f64,
    pub ci: Interval,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossingReport {
    pub beta: f64,
    pub m: u8,
    pub target: TargetSet,
    pub runs: usize,
    pub capped: usize,
    pub rows: Vec<CrossingRow>,
}

impl CrossingReport {
    pub fn row(&self, observer: &str) -> Option<&CrossingRow> {
        self.rows.iter().find(|r| r.observer == observer)
    }
}

/// Observers for `𝐦 → 𝟏` runs: the gate `W(m)`, other metastable states,
/// and leaving the tube.
pub fn standard_observers(p: &Params, m: u8) -> Vec<Predicate> {
    vec![observers::gate(p, m), observers::other_metastable(p, m), observers::tube_exit(p, m)]
}

/// Observer for `𝐦 → X^m∖{𝐦}` runs: any gate `W(z)`, `z ≠ 1`.
pub fn any_gate(p: &Params) -> Predicate {
    let gates: Vec<Predicate> = (2..=p.q).map(|z| observers::gate(p, z)).collect();
    Predicate::new("gate_any", move |c, l| gates.iter().any(|g| g.test(c, l)))
}

#[allow(clippy::too_many_arguments)]
pub fn crossing_stats(
    p: &Params,
    m: u8,
    target: TargetSet,
    beta: f64,
    n: usize,
    cap: u64,
    seed: u64,
    obs: &[Predicate],
    engine: Engine,
) -> Result<CrossingReport> {
    if n == 0 {
        return Err(Error::Invalid("need at least one trajectory".into()));
    }
    let cfg = SimConfig::new(beta, seed, cap)?;
    let start = p.monochrome(m)?;
    let runs = run_batch(p, &start, &[target.predicate(p, m)], obs, &cfg, n, engine)?;
    let done = runs.iter().filter(|r| r.absorbed.is_some()).count();
    let rows = obs
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let hits = runs.iter().filter(|r| r.hit_before_absorption(i)).count();
            let freq = if done == 0 { f64::NAN } else { hits as f64 / done as f64 };
            CrossingRow { observer: o.name.clone(), hits, n: done, freq, ci: wilson(hits, done, Z95) }
        })
        .collect();
    Ok(CrossingReport { beta, m, target, runs: n, capped: n - done, rows })
}
