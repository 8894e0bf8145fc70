//! Best-first search on the bottleneck semiring: states are settled in
//! increasing order of the highest level met on the way from the start.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use indexmap::IndexSet;
use rustc_hash::FxBuildHasher;
use serde::Serialize;

use crate::energy::{delta, hamiltonian, Params};
use crate::error::{Error, Result};
use crate::landscape::ExploreBudget;
use crate::lattice::{Config, Move};
use crate::paths::PathProfile;

/// Interned configurations with their exact levels, indexed in discovery order.
#[derive(Default)]
pub(crate) struct Arena {
    states: IndexSet<Box<[u8]>, FxBuildHasher>,
    pub levels: Vec<i64>,
}

impl Arena {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn find(&self, spins: &[u8]) -> Option<usize> {
        self.states.get_index_of(spins)
    }

    pub fn insert(&mut self, spins: &[u8], level: i64) -> usize {
        let (id, fresh) = self.states.insert_full(spins.into());
        if fresh {
            self.levels.push(level);
        }
        id
    }

    /// Loads state `id` into `buf`, which must share its geometry.
    pub fn load(&self, id: usize, buf: &mut Config) {
        buf.spins_mut().copy_from_slice(&self.states[id]);
    }

    pub fn config(&self, id: usize, template: &Config) -> Config {
        let mut c = template.clone();
        self.load(id, &mut c);
        c
    }
}

/// Calls `f(spins, vertex, spin, level)` for every single flip of `cur` to a
/// label in `labels`; `cur` is restored afterwards.
pub(crate) fn for_each_flip(
    p: &Params,
    cur: &mut Config,
    level: i64,
    labels: &[u8],
    mut f: impl FnMut(&[u8], usize, u8, i64),
) {
    for v in 0..cur.geom().size() {
        let old = cur.get(v);
        for &s in labels {
            if s == old {
                continue;
            }
            let next = level + p.level(delta(cur, v, s));
            cur.set(v, s);
            f(cur.spins(), v, s, next);
            cur.set(v, old);
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub reached: bool,
    /// The state budget ran out before the target was settled.
    pub exhausted: bool,
    pub start_level: i64,
    /// Exact `Φ` level when reached, otherwise a lower bound.
    pub phi_level: i64,
    pub phi: f64,
    /// `Φ − H(start)`.
    pub barrier: f64,
    /// Gap between `Φ` and the next level met by the search: a surrogate for
    /// the gap between optimal and non-optimal paths.
    pub delta_hat: Option<f64>,
    pub delta_hat_level: Option<i64>,
    pub expanded: usize,
    pub discovered: usize,
    /// A path realizing the bottleneck.
    pub witness: Option<PathProfile>,
    #[serde(skip)]
    pub hit: Option<Config>,
}

/// Communication height from `start` to the first state satisfying
/// `target(cfg, level)`.
pub fn bottleneck_phi<F>(p: &Params, start: &Config, mut target: F, budget: &ExploreBudget) -> Result<SearchOutcome>
where
    F: FnMut(&Config, i64) -> bool,
{
    p.check(start)?;
    if budget.max_states == 0 {
        return Err(Error::Invalid("max_states must be positive".into()));
    }
    let labels = budget.labels(p.q);
    let start_level = p.level(hamiltonian(start));
    let mut arena = Arena::default();
    arena.insert(start.spins(), start_level);
    let mut best = vec![start_level];
    let mut parent: Vec<Option<(usize, Move)>> = vec![None];
    let mut done = vec![false];
    let mut heap = BinaryHeap::from([Reverse((start_level, start_level, 0usize))]);
    let mut cur = start.clone();
    let (mut expanded, mut exhausted, mut bound, mut hit) = (0, false, start_level, None);

    while let Some(Reverse((b, e, id))) = heap.pop() {
        if done[id] || b > best[id] {
            continue;
        }
        done[id] = true;
        bound = b;
        arena.load(id, &mut cur);
        if target(&cur, e) {
            hit = Some(id);
            break;
        }
        expanded += 1;
        for_each_flip(p, &mut cur, e, &labels, |spins, v, s, next| {
            if exhausted || !budget.admits(next) {
                return;
            }
            let key = b.max(next);
            let edge = Some((id, Move { vertex: v, spin: s }));
            match arena.find(spins) {
                Some(j) => {
                    if !done[j] && key < best[j] {
                        best[j] = key;
                        parent[j] = edge;
                        heap.push(Reverse((key, next, j)));
                    }
                }
                None if arena.len() >= budget.max_states => exhausted = true,
                None => {
                    let j = arena.insert(spins, next);
                    best.push(key);
                    parent.push(edge);
                    done.push(false);
                    heap.push(Reverse((key, next, j)));
                }
            }
        });
        if exhausted {
            break;
        }
    }

    let value = |l: i64| p.level_value(l);
    let Some(hit) = hit else {
        return Ok(SearchOutcome {
            reached: false,
            exhausted,
            start_level,
            phi_level: bound,
            phi: value(bound),
            barrier: value(bound - start_level),
            delta_hat: None,
            delta_hat_level: None,
            expanded,
            discovered: arena.len(),
            witness: None,
            hit: None,
        });
    };
    let mut moves = Vec::new();
    let mut at = hit;
    while let Some((prev, m)) = parent[at] {
        moves.push(m);
        at = prev;
    }
    moves.reverse();
    let witness = PathProfile::from_moves(p, start.clone(), moves, "bottleneck search")?;
    let phi_level = p.level(witness.height);
    let next = heap.iter().map(|Reverse((b, _, _))| *b).filter(|&b| b > phi_level).min();
    Ok(SearchOutcome {
        reached: true,
        exhausted: false,
        start_level,
        phi_level,
        phi: value(phi_level),
        barrier: value(phi_level - start_level),
        delta_hat: next.map(|n| value(n - phi_level)),
        delta_hat_level: next.map(|n| n - phi_level),
        expanded,
        discovered: arena.len(),
        witness: Some(witness),
        hit: Some(arena.config(hit, start)),
    })
}

/// `Φ(a, b)`.
pub fn phi_between(p: &Params, a: &Config, b: &Config, budget: &ExploreBudget) -> Result<SearchOutcome> {
    p.check(b)?;
    bottleneck_phi(p, a, |c, _| c.spins() == b.spins(), budget)
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilityOutcome {
    /// `V_σ`; `None` when no lower state exists.
    pub v: Option<f64>,
    pub v_level: Option<i64>,
    pub exhausted: bool,
    /// Lower bound on `V_σ` when the budget ran out.
    pub lower_bound: f64,
    pub witness: Option<PathProfile>,
    #[serde(skip)]
    pub lower_state: Option<Config>,
}

/// Stability level: the barrier from `σ` to the set of strictly lower states.
pub fn stability_level(p: &Params, sigma: &Config, budget: &ExploreBudget) -> Result<StabilityOutcome> {
    p.check(sigma)?;
    // 𝟏 is the unique ground state.
    if sigma.is_monochrome() == Some(1) {
        return Ok(StabilityOutcome {
            v: None,
            v_level: None,
            exhausted: false,
            lower_bound: f64::INFINITY,
            witness: None,
            lower_state: None,
        });
    }
    let level = p.level(hamiltonian(sigma));
    let out = bottleneck_phi(p, sigma, |_, l| l < level, budget)?;
    let v_level = out.reached.then_some(out.phi_level - level);
    Ok(StabilityOutcome {
        v: v_level.map(|l| p.level_value(l)),
        v_level,
        exhausted: out.exhausted,
        lower_bound: if out.reached || out.exhausted { out.barrier } else { f64::INFINITY },
        witness: out.witness,
        lower_state: out.hit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Geom;

    #[test]
    fn trivial_and_reflexive() {
        let p = Params::new(3, 4, 4, 0.9).unwrap();
        let m = p.monochrome(2).unwrap();
        let out = phi_between(&p, &m, &m, &ExploreBudget::default()).unwrap();
        assert!(out.reached);
        assert_eq!(out.barrier, 0.0);
        assert!(out.witness.unwrap().is_empty());
    }

    #[test]
    fn one_flip_above_ground_state() {
        let p = Params::new(3, 5, 5, 0.9).unwrap();
        let mut c = p.monochrome(1).unwrap();
        c.set(7, 3);
        let v = stability_level(&p, &c, &ExploreBudget::default()).unwrap();
        assert_eq!(v.v, Some(0.0));
        assert_eq!(v.lower_state.unwrap().is_monochrome(), Some(1));
        assert_eq!(stability_level(&p, &p.monochrome(1).unwrap(), &ExploreBudget::default()).unwrap().v, None);
    }

    #[test]
    fn exhaustion_gives_lower_bound() {
        let p = Params::new(3, 6, 6, 0.9).unwrap();
        let m = p.monochrome(2).unwrap();
        let one = p.monochrome(1).unwrap();
        let budget = ExploreBudget::new(500).unwrap().two_labels(2);
        let out = phi_between(&p, &m, &one, &budget).unwrap();
        assert!(out.exhausted && !out.reached);
        assert!(out.barrier <= 5.7);
    }

    #[test]
    fn witness_realizes_phi() {
        let p = Params::new(3, 5, 5, 0.9).unwrap();
        let m = p.monochrome(2).unwrap();
        let one = p.monochrome(1).unwrap();
        let out = phi_between(&p, &m, &one, &ExploreBudget::default().two_labels(2)).unwrap();
        let w = out.witness.unwrap();
        assert_eq!(w.end(), one);
        assert_eq!(p.level(w.height), out.phi_level);
        assert!((out.barrier - 5.7).abs() < 1e-9);
    }

    #[test]
    fn ceiling_blocks_target() {
        let p = Params::new(3, 4, 4, 0.9).unwrap();
        let g = Geom::new(4, 4).unwrap();
        let m = Config::monochrome(g, 3, 2).unwrap();
        let one = p.monochrome(1).unwrap();
        let budget = ExploreBudget::default().two_labels(2).with_ceiling(p.level(hamiltonian(&m)) + 1);
        let out = phi_between(&p, &m, &one, &budget).unwrap();
        assert!(!out.reached && !out.exhausted);
    }
}
