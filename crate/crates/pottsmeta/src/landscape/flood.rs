//! The maximal cycle whose bottom contains a given local minimum, flooded
//! state by state, with its exit height and principal boundary.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::energy::{hamiltonian, Params};
use crate::error::{Error, Result};
use crate::geometry::shapes::shape_class;
use crate::landscape::search::{for_each_flip, stability_level, Arena};
use crate::landscape::ExploreBudget;
use crate::lattice::Config;

const SAMPLE: usize = 32;

#[derive(Debug, Clone, Serialize)]
pub struct CycleReport {
    pub seed: Config,
    /// `{η}` itself, left through a strictly lower neighbor.
    pub trivial: bool,
    /// `η` sits on an equal-energy plateau with a lower exit.
    pub plateau: bool,
    pub member_count: usize,
    #[serde(skip)]
    pub members: Vec<Config>,
    pub bottom_level: i64,
    pub bottom: Vec<Config>,
    pub max_inside_level: i64,
    /// `H(F(∂C))`.
    pub exit_level: i64,
    pub exit_height: f64,
    /// `Γ(C)`; zero for trivial cycles and plateaux.
    pub depth: f64,
    pub principal: Vec<Config>,
    /// Principal-boundary states grouped by shape.
    pub principal_shapes: BTreeMap<String, usize>,
    pub non_principal_count: usize,
    pub non_principal_sample: Vec<Config>,
}

impl CycleReport {
    pub fn contains(&self, cfg: &Config) -> bool {
        self.members.iter().any(|c| c == cfg)
    }
}

pub(crate) struct Flooded {
    pub arena: Arena,
    pub boundary: Arena,
}

/// Connected component of `seed` among states with `inside(level)`, plus
/// the distinct neighbors outside it.
pub(crate) fn flood(
    p: &Params,
    seed: &Config,
    inside: impl Fn(i64) -> bool,
    labels: &[u8],
    max_states: usize,
) -> Result<Flooded> {
    let mut arena = Arena::default();
    let mut boundary = Arena::default();
    arena.insert(seed.spins(), p.level(hamiltonian(seed)));
    let mut queue = VecDeque::from([0usize]);
    let mut cur = seed.clone();
    let mut over = false;
    while let Some(id) = queue.pop_front() {
        arena.load(id, &mut cur);
        let level = arena.levels[id];
        for_each_flip(p, &mut cur, level, labels, |spins, _, _, next| {
            if !inside(next) {
                if boundary.find(spins).is_none() {
                    boundary.insert(spins, next);
                }
            } else if arena.find(spins).is_none() {
                queue.push_back(arena.insert(spins, next));
            }
        });
        over |= arena.len() + boundary.len() > max_states;
        if over {
            return Err(Error::BudgetExhausted(max_states));
        }
    }
    Ok(Flooded { arena, boundary })
}

fn shape_summary(p: &Params, states: &[Config]) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for c in states {
        let r = shape_class(p, c);
        let key = r.bbar.or(r.rbar).unwrap_or(r.class);
        *out.entry(format!("{key:?}")).or_insert(0) += 1;
    }
    out
}

/// Floods the cycle of `η`: the component of `{H < H(η) + V_η}` when `η`
/// has no lower neighbor, `{η}` otherwise.
pub fn flood_cycle(p: &Params, eta: &Config, budget: &ExploreBudget) -> Result<CycleReport> {
    p.check(eta)?;
    let labels = budget.labels(p.q);
    let level0 = p.level(hamiltonian(eta));
    let mut lower = Vec::new();
    let mut others = Vec::new();
    let mut cur = eta.clone();
    for_each_flip(p, &mut cur, level0, &labels, |spins, _, _, next| {
        let mut c = eta.clone();
        c.spins_mut().copy_from_slice(spins);
        if next < level0 {
            lower.push((next, c));
        } else {
            others.push(c);
        }
    });
    if !lower.is_empty() {
        let exit_level = lower.iter().map(|x| x.0).min().unwrap();
        let principal: Vec<Config> = lower.into_iter().map(|x| x.1).collect();
        return Ok(CycleReport {
            seed: eta.clone(),
            trivial: true,
            plateau: false,
            member_count: 1,
            members: vec![eta.clone()],
            bottom_level: level0,
            bottom: vec![eta.clone()],
            max_inside_level: level0,
            exit_level,
            exit_height: p.level_value(exit_level),
            depth: 0.0,
            principal_shapes: shape_summary(p, &principal),
            principal,
            non_principal_count: others.len(),
            non_principal_sample: others.into_iter().take(SAMPLE).collect(),
        });
    }

    let v = stability_level(p, eta, budget)?;
    if v.exhausted {
        return Err(Error::BudgetExhausted(budget.max_states));
    }
    let Some(v_level) = v.v_level else {
        return Err(Error::Invalid("no lower state: the cycle is the whole space".into()));
    };
    let plateau = v_level == 0;
    let flooded = if plateau {
        flood(p, eta, |l| l == level0, &labels, budget.max_states)?
    } else {
        flood(p, eta, |l| l < level0 + v_level, &labels, budget.max_states)?
    };
    let members: Vec<Config> = (0..flooded.arena.len()).map(|i| flooded.arena.config(i, eta)).collect();
    let bottom_level = *flooded.arena.levels.iter().min().unwrap();
    let max_inside_level = *flooded.arena.levels.iter().max().unwrap();
    let bottom = (0..members.len()).filter(|&i| flooded.arena.levels[i] == bottom_level).map(|i| members[i].clone()).collect();
    let exit_level = *flooded.boundary.levels.iter().min().expect("a cycle with a lower exit has a boundary");
    let (mut principal, mut rest) = (Vec::new(), Vec::new());
    for i in 0..flooded.boundary.len() {
        let c = flooded.boundary.config(i, eta);
        if flooded.boundary.levels[i] == exit_level {
            principal.push(c);
        } else {
            rest.push(c);
        }
    }
    Ok(CycleReport {
        seed: eta.clone(),
        trivial: false,
        plateau,
        member_count: members.len(),
        members,
        bottom_level,
        bottom,
        max_inside_level,
        exit_level,
        exit_height: p.level_value(exit_level),
        depth: if plateau { 0.0 } else { p.level_value(exit_level - bottom_level) },
        principal_shapes: shape_summary(p, &principal),
        principal,
        non_principal_count: rest.len(),
        non_principal_sample: rest.into_iter().take(SAMPLE).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::shapes::{in_bbar, in_rbar};

    fn square(p: &Params, h: usize, w: usize) -> Config {
        let mut c = p.monochrome(2).unwrap();
        for r in 3..3 + h {
            for col in 3..3 + w {
                c.set(p.geom.index(r, col), 1);
            }
        }
        c
    }

    #[test]
    fn subcritical_square() {
        let p = Params::new(3, 9, 9, 0.9).unwrap();
        let eta = square(&p, 2, 2);
        let r = flood_cycle(&p, &eta, &ExploreBudget::default().two_labels(2)).unwrap();
        assert!(!r.trivial && !r.plateau);
        assert!((r.depth - 0.9).abs() < 1e-9);
        assert!(r.max_inside_level < r.exit_level);
        assert_eq!(r.principal.len(), 4);
        assert!(r.principal.iter().all(|c| in_bbar(c, 1, 2, 1, 2, 1)));
    }

    #[test]
    fn supercritical_square_both_orientations() {
        let p = Params::new(3, 9, 9, 0.9).unwrap();
        let eta = square(&p, 3, 3);
        let r = flood_cycle(&p, &eta, &ExploreBudget::default().two_labels(2)).unwrap();
        assert!((r.depth - 1.1).abs() < 1e-9);
        assert_eq!(r.principal.len(), 12);
        assert!(r.principal.iter().all(|c| in_bbar(c, 3, 3, 1, 2, 1)));
        assert_eq!(r.bottom.len(), 1);
    }

    #[test]
    fn trivial_cycle_lists_lower_neighbors() {
        let p = Params::new(3, 9, 9, 0.9).unwrap();
        let eta = square(&p, 2, 1);
        let r = flood_cycle(&p, &eta, &ExploreBudget::default().two_labels(2)).unwrap();
        assert!(r.trivial);
        assert_eq!(r.depth, 0.0);
        assert!(r.principal.iter().all(|c| in_rbar(c, 1, 1, 2, 1)));
        assert_eq!(r.principal.len(), 2);
    }
}
