//! The Metropolis single-flip chain: one-step kernel, trajectory simulation
//! (naive and rejection-free) and first-hit instrumentation.
//!
//! A step proposes one of the `q·|V|` pairs `(v, s)` uniformly. Proposals
//! with `s = σ(v)` are lazy self-loops and, like rejections, count as steps.

pub mod batch;
pub mod kmc;
pub mod observers;

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::energy::{acceptance_prob, delta, hamiltonian, AcceptanceTable, Params};
use crate::error::{Error, Result};
use crate::lattice::Config;

pub use batch::{run_batch, thread_pool, Engine};
pub use kmc::kmc_simulate_until;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub beta: f64,
    pub seed: u64,
    pub step_cap: u64,
    /// RNG stream; one per trajectory.
    pub stream: u64,
}

impl SimConfig {
    pub fn new(beta: f64, seed: u64, step_cap: u64) -> Result<Self> {
        let c = Self { beta, seed, step_cap, stream: 0 };
        c.validate()?;
        Ok(c)
    }

    pub fn with_stream(mut self, stream: u64) -> Self {
        self.stream = stream;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta.is_finite() && self.beta >= 0.0) {
            return Err(Error::Invalid(format!("beta={} must be finite and non-negative", self.beta)));
        }
        if self.step_cap == 0 {
            return Err(Error::Invalid("step_cap must be positive".into()));
        }
        Ok(())
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

type PredFn = dyn Fn(&Config, i64) -> bool + Send + Sync;

/// A named state predicate evaluated on `(σ, exact level of H(σ))`.
#[derive(Clone)]
pub struct Predicate {
    pub name: String,
    f: Arc<PredFn>,
}

impl Predicate {
    pub fn new(name: impl Into<String>, f: impl Fn(&Config, i64) -> bool + Send + Sync + 'static) -> Self {
        Self { name: name.into(), f: Arc::new(f) }
    }

    #[inline]
    pub fn test(&self, cfg: &Config, level: i64) -> bool {
        (self.f)(cfg, level)
    }
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Predicate({})", self.name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub stream: u64,
    /// Index of the first target satisfied; `None` when capped.
    pub absorbed: Option<usize>,
    pub capped: bool,
    /// Chain steps, lazy self-loops and rejections included.
    pub steps: u64,
    /// Accepted moves.
    pub events: u64,
    /// First step at which each observer held.
    pub first_hits: Vec<Option<u64>>,
    pub max_level: i64,
}

impl RunRecord {
    /// Observer `i` fired no later than absorption.
    pub fn hit_before_absorption(&self, i: usize) -> bool {
        self.absorbed.is_some() && self.first_hits[i].is_some_and(|t| t <= self.steps)
    }
}

/// Shared bookkeeping for both engines.
pub(crate) struct Tracker<'a> {
    targets: &'a [Predicate],
    observers: &'a [Predicate],
    pub record: RunRecord,
}

impl<'a> Tracker<'a> {
    pub fn new(targets: &'a [Predicate], observers: &'a [Predicate], stream: u64, level: i64) -> Self {
        let record = RunRecord {
            stream,
            absorbed: None,
            capped: false,
            steps: 0,
            events: 0,
            first_hits: vec![None; observers.len()],
            max_level: level,
        };
        Self { targets, observers, record }
    }

    /// Records observers and returns true once a target holds.
    pub fn visit(&mut self, cfg: &Config, level: i64) -> bool {
        let r = &mut self.record;
        r.max_level = r.max_level.max(level);
        for (hit, obs) in r.first_hits.iter_mut().zip(self.observers) {
            if hit.is_none() && obs.test(cfg, level) {
                *hit = Some(r.steps);
            }
        }
        if let Some(i) = self.targets.iter().position(|t| t.test(cfg, level)) {
            r.absorbed = Some(i);
            return true;
        }
        false
    }
}

/// One step of the chain; returns whether the configuration changed.
pub fn step<R: Rng>(p: &Params, sigma: &mut Config, beta: f64, rng: &mut R) -> bool {
    let n = sigma.geom().size();
    let u = rng.random_range(0..p.q as usize * n);
    let (v, s) = (u / p.q as usize, (u % p.q as usize) as u8 + 1);
    if s == sigma.get(v) {
        return false;
    }
    let d = p.value(delta(sigma, v, s));
    if rng.random::<f64>() < acceptance_prob(beta, d) {
        sigma.set(v, s);
        true
    } else {
        false
    }
}

/// `P_β(σ, ·)`: the stay probability first, then every single flip.
pub fn transition_row(p: &Params, sigma: &Config, beta: f64) -> Vec<(Config, f64)> {
    let n = sigma.geom().size();
    let norm = 1.0 / (p.q as f64 * n as f64);
    let mut out = vec![(sigma.clone(), 0.0)];
    let mut moved = 0.0;
    for v in 0..n {
        for s in 1..=p.q {
            if s == sigma.get(v) {
                continue;
            }
            let pr = norm * acceptance_prob(beta, p.value(delta(sigma, v, s)));
            let mut c = sigma.clone();
            c.set(v, s);
            out.push((c, pr));
            moved += pr;
        }
    }
    out[0].1 = 1.0 - moved;
    out
}

/// Step-by-step simulation until a target holds or the cap is reached.
pub fn simulate_until(
    p: &Params,
    start: &Config,
    targets: &[Predicate],
    observers: &[Predicate],
    cfg: &SimConfig,
) -> Result<RunRecord> {
    p.check(start)?;
    cfg.validate()?;
    let mut rng = cfg.rng();
    let table = AcceptanceTable::new(p, cfg.beta);
    let mut sigma = start.clone();
    let mut level = p.level(hamiltonian(&sigma));
    let mut t = Tracker::new(targets, observers, cfg.stream, level);
    if t.visit(&sigma, level) {
        return Ok(t.record);
    }
    let q = p.q as usize;
    let proposals = q * sigma.geom().size();
    while t.record.steps < cfg.step_cap {
        t.record.steps += 1;
        let u = rng.random_range(0..proposals);
        let (v, s) = (u / q, (u % q) as u8 + 1);
        if s == sigma.get(v) {
            continue;
        }
        let d = delta(&sigma, v, s);
        let a = table.get(d);
        if a < 1.0 && rng.random::<f64>() >= a {
            continue;
        }
        sigma.set(v, s);
        level += p.level(d);
        t.record.events += 1;
        if t.visit(&sigma, level) {
            return Ok(t.record);
        }
    }
    t.record.capped = true;
    Ok(t.record)
}
