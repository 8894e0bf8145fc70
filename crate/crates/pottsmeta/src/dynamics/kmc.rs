//! Rejection-free simulation of the same discrete-time chain.
//!
//! With `A(σ)` the probability that a step changes the state, the number of
//! steps up to and including the next accepted move is `Geometric(A) + 1`;
//! the move itself is drawn with probability proportional to its acceptance.

use rand::Rng;
use rand_distr::{Distribution, Geometric};

use crate::dynamics::{Predicate, RunRecord, SimConfig, Tracker};
use crate::energy::{delta, hamiltonian, AcceptanceTable, Params};
use crate::error::Result;
use crate::lattice::Config;

/// Binary sum tree over per-vertex masses; leaves are set, never
/// incremented, so sums carry no drift.
#[derive(Debug, Clone)]
pub struct MassTree {
    width: usize,
    nodes: Vec<f64>,
}

impl MassTree {
    pub fn new(n: usize) -> Self {
        let width = n.next_power_of_two();
        Self { width, nodes: vec![0.0; 2 * width] }
    }

    pub fn set(&mut self, i: usize, x: f64) {
        let mut k = i + self.width;
        self.nodes[k] = x;
        while k > 1 {
            k /= 2;
            self.nodes[k] = self.nodes[2 * k] + self.nodes[2 * k + 1];
        }
    }

    pub fn get(&self, i: usize) -> f64 {
        self.nodes[i + self.width]
    }

    pub fn total(&self) -> f64 {
        self.nodes[1]
    }

    /// Leaf whose cumulative interval contains `u ∈ [0, total)`.
    pub fn find(&self, mut u: f64) -> usize {
        let mut k = 1;
        while k < self.width {
            let left = self.nodes[2 * k];
            if u < left || self.nodes[2 * k + 1] <= 0.0 {
                k *= 2;
            } else {
                u -= left;
                k = 2 * k + 1;
            }
        }
        k - self.width
    }
}

/// Acceptance mass of all proposals at `v`, self-proposal excluded.
fn vertex_mass(table: &AcceptanceTable, cfg: &Config, v: usize) -> f64 {
    let s0 = cfg.get(v);
    (1..=cfg.q()).filter(|&s| s != s0).map(|s| table.get(delta(cfg, v, s))).sum()
}

/// Per-vertex acceptance masses for a configuration.
pub struct Masses {
    pub tree: MassTree,
    table: AcceptanceTable,
}

impl Masses {
    pub fn new(p: &Params, cfg: &Config, beta: f64) -> Self {
        let table = AcceptanceTable::new(p, beta);
        let n = cfg.geom().size();
        let mut tree = MassTree::new(n);
        for v in 0..n {
            tree.set(v, vertex_mass(&table, cfg, v));
        }
        Self { tree, table }
    }

    /// Probability that one step changes the state.
    pub fn escape_probability(&self, cfg: &Config) -> f64 {
        self.tree.total() / (cfg.q() as f64 * cfg.geom().size() as f64)
    }

    /// Draws an accepted move proportionally to its acceptance.
    pub fn pick<R: Rng>(&self, cfg: &Config, rng: &mut R) -> (usize, u8) {
        let v = self.tree.find(rng.random::<f64>() * self.tree.total());
        let s0 = cfg.get(v);
        let mut u = rng.random::<f64>() * self.tree.get(v);
        let mut last = s0;
        for s in (1..=cfg.q()).filter(|&s| s != s0) {
            let a = self.table.get(delta(cfg, v, s));
            if a <= 0.0 {
                continue;
            }
            last = s;
            if u < a {
                return (v, s);
            }
            u -= a;
        }
        (v, last)
    }

    /// Refreshes `v` and its four neighbors after a flip at `v`.
    pub fn update(&mut self, cfg: &Config, v: usize) {
        self.tree.set(v, vertex_mass(&self.table, cfg, v));
        for w in cfg.geom().neighbors(v) {
            self.tree.set(w, vertex_mass(&self.table, cfg, w));
        }
    }
}

pub fn kmc_simulate_until(
    p: &Params,
    start: &Config,
    targets: &[Predicate],
    observers: &[Predicate],
    cfg: &SimConfig,
) -> Result<RunRecord> {
    p.check(start)?;
    cfg.validate()?;
    let mut rng = cfg.rng();
    let mut sigma = start.clone();
    let mut level = p.level(hamiltonian(&sigma));
    let mut t = Tracker::new(targets, observers, cfg.stream, level);
    if t.visit(&sigma, level) {
        return Ok(t.record);
    }
    let mut masses = Masses::new(p, &sigma, cfg.beta);
    loop {
        let a = masses.escape_probability(&sigma).min(1.0);
        let wait = if a >= 1.0 {
            1
        } else if a <= 0.0 {
            u64::MAX
        } else {
            Geometric::new(a).expect("probability in (0, 1)").sample(&mut rng).saturating_add(1)
        };
        if wait > cfg.step_cap - t.record.steps {
            t.record.steps = cfg.step_cap;
            t.record.capped = true;
            return Ok(t.record);
        }
        t.record.steps += wait;
        let (v, s) = masses.pick(&sigma, &mut rng);
        let d = delta(&sigma, v, s);
        sigma.set(v, s);
        level += p.level(d);
        masses.update(&sigma, v);
        t.record.events += 1;
        if t.visit(&sigma, level) {
            return Ok(t.record);
        }
    }
}
