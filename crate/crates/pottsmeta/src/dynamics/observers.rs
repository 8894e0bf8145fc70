//! Predicates for targets and first-hit observers. Cheap level checks run
//! before any geometric test.

use std::collections::HashSet;

use crate::dynamics::Predicate;
use crate::energy::{hamiltonian, Params};
use crate::geometry::shapes::{in_tube, in_w};
use crate::lattice::Config;

fn monochrome_level(p: &Params, s: u8) -> i64 {
    p.level(hamiltonian(&p.monochrome(s).expect("spin in range")))
}

/// Exact level of `H(𝐦) + Γ`.
pub fn saddle_level(p: &Params, m: u8) -> i64 {
    monochrome_level(p, m) + p.level(p.barrier())
}

/// The monochromatic configuration `𝐬`.
pub fn monochrome(p: &Params, s: u8) -> Predicate {
    let level = monochrome_level(p, s);
    Predicate::new(format!("mono{s}"), move |c: &Config, l| l == level && c.is_monochrome() == Some(s))
}

/// Any monochromatic configuration other than `𝟏` and `𝐦`.
pub fn other_metastable(p: &Params, m: u8) -> Predicate {
    let level = monochrome_level(p, if m == 2 { 3 } else { 2 });
    Predicate::new(format!("meta_not{m}"), move |c: &Config, l| {
        l == level && c.is_monochrome().is_some_and(|s| s != 1 && s != m)
    })
}

/// The gate `W(m)`: critical quasi-square of 1s in a sea of `m` with a
/// protuberance on a longest side.
pub fn gate(p: &Params, m: u8) -> Predicate {
    let level = saddle_level(p, m);
    let p = *p;
    Predicate::new(format!("gate{m}"), move |c: &Config, l| l == level && in_w(&p, c, m))
}

/// `∪_{z ≠ 1, m} W(z)`.
pub fn other_gates(p: &Params, m: u8) -> Predicate {
    let zs: Vec<u8> = (2..=p.q).filter(|&z| z != m).collect();
    let levels: Vec<i64> = zs.iter().map(|&z| saddle_level(p, z)).collect();
    let p = *p;
    Predicate::new(format!("gates_not{m}"), move |c: &Config, l| {
        zs.iter().zip(&levels).any(|(&z, &lz)| l == lz && in_w(&p, c, z))
    })
}

/// Energy at least `H(𝐦) + Γ`: the first such state is the first exit from
/// the initial cycle of `𝐦` towards `𝟏`.
pub fn energy_at_least(name: &str, level: i64) -> Predicate {
    Predicate::new(name, move |_: &Config, l| l >= level)
}

pub fn exit_initial_cycle(p: &Params, m: u8) -> Predicate {
    energy_at_least("exit_cycle", saddle_level(p, m))
}

/// Leaves the tube of typical `𝐦 → 𝟏` trajectories. States below the
/// saddle whose droplet is smaller than critical stay inside the initial
/// cycle and are not counted as exits.
pub fn tube_exit(p: &Params, m: u8) -> Predicate {
    let phi = saddle_level(p, m);
    let sea = p.geom.size() - p.critical_size();
    let p = *p;
    Predicate::new(format!("tube_exit{m}"), move |c: &Config, l| {
        !(l < phi && c.count(m) > sea) && !in_tube(&p, c, m)
    })
}

/// Membership in an explicit set, by spin vector.
pub fn in_set(name: &str, states: &[Config]) -> Predicate {
    let set: HashSet<Vec<u8>> = states.iter().map(|c| c.spins().to_vec()).collect();
    Predicate::new(name, move |c: &Config, _| set.contains(c.spins()))
}

/// Complement of an explicit set.
pub fn outside_set(name: &str, states: &[Config]) -> Predicate {
    let inside = in_set(name, states);
    Predicate::new(name, move |c: &Config, l| !inside.test(c, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{build_reference_path, Spiral};

    #[test]
    fn reference_path_crosses_gate_once_and_stays_in_tube() {
        let p = Params::new(3, 9, 9, 0.9).unwrap();
        let path = build_reference_path(&p, 2, (0, 0), Spiral::Clockwise).unwrap();
        let (g, t, e) = (gate(&p, 2), tube_exit(&p, 2), exit_initial_cycle(&p, 2));
        let mut gate_steps = Vec::new();
        let mut first_exit = None;
        for (i, (c, en)) in path.states().zip(&path.energies).enumerate() {
            let l = p.level(*en);
            if g.test(&c, l) {
                gate_steps.push(i);
            }
            assert!(!t.test(&c, l), "step {i}\n{c}");
            if first_exit.is_none() && e.test(&c, l) {
                first_exit = Some(i);
            }
        }
        assert_eq!(gate_steps, vec![7]);
        assert_eq!(first_exit, Some(7));
    }

    #[test]
    fn monochrome_predicates() {
        let p = Params::new(4, 5, 5, 0.9).unwrap();
        let two = p.monochrome(2).unwrap();
        let three = p.monochrome(3).unwrap();
        let l = |c: &Config| p.level(hamiltonian(c));
        assert!(monochrome(&p, 2).test(&two, l(&two)));
        assert!(!monochrome(&p, 2).test(&three, l(&three)));
        assert!(other_metastable(&p, 2).test(&three, l(&three)));
        assert!(!other_metastable(&p, 2).test(&two, l(&two)));
        let one = p.monochrome(1).unwrap();
        assert!(!other_metastable(&p, 2).test(&one, l(&one)));
    }
}
