//! Initial cycles `C^σ_A(Γ)`: the states reachable from `σ` strictly below
//! the communication height `Φ(σ, A)`.

use serde::Serialize;

use crate::energy::{hamiltonian, Params};
use crate::error::{Error, Result};
use crate::landscape::flood::flood;
use crate::landscape::search::bottleneck_phi;
use crate::landscape::ExploreBudget;
use crate::lattice::Config;

/// Lazily evaluated initial cycle; membership queries run a bottleneck
/// search under the ceiling `Φ(σ, A) − 1` (in exact levels).
#[derive(Debug, Clone, Serialize)]
pub struct InitialCycle {
    pub sigma: Config,
    pub sigma_level: i64,
    /// Exact level of `Φ(σ, A)`.
    pub phi_level: i64,
    /// `Γ(σ, A) = Φ(σ, A) − H(σ)`.
    pub gamma: f64,
    pub in_target: bool,
    /// Surrogate for the optimal/non-optimal path gap, in exact levels.
    pub delta_hat_level: Option<i64>,
    /// The relevant cycle uses the surrogate gap, not the exact one.
    pub relevant_is_surrogate: bool,
    #[serde(skip)]
    params: Params,
    #[serde(skip)]
    budget: ExploreBudget,
}

pub fn initial_cycle<F>(p: &Params, sigma: &Config, target: F, budget: &ExploreBudget) -> Result<InitialCycle>
where
    F: FnMut(&Config, i64) -> bool,
{
    let out = bottleneck_phi(p, sigma, target, budget)?;
    if !out.reached {
        return Err(if out.exhausted {
            Error::BudgetExhausted(budget.max_states)
        } else {
            Error::Invalid("target unreachable".into())
        });
    }
    let in_target = out.witness.as_ref().is_some_and(|w| w.is_empty());
    let delta_hat_level = out.delta_hat_level;
    Ok(InitialCycle {
        sigma: sigma.clone(),
        sigma_level: out.start_level,
        phi_level: out.phi_level,
        gamma: out.barrier,
        in_target,
        delta_hat_level,
        relevant_is_surrogate: true,
        params: *p,
        budget: budget.clone(),
    })
}

impl InitialCycle {
    /// `{σ}` alone: `σ ∈ A` or `Φ(σ, A) = H(σ)`.
    pub fn is_trivial(&self) -> bool {
        self.in_target || self.phi_level == self.sigma_level
    }

    fn reachable_under(&self, eta: &Config, ceiling: Option<i64>) -> Result<bool> {
        let mut budget = self.budget.clone();
        budget.energy_ceiling = ceiling;
        let out = bottleneck_phi(&self.params, &self.sigma, |c, _| c.spins() == eta.spins(), &budget)?;
        if out.exhausted {
            return Err(Error::BudgetExhausted(budget.max_states));
        }
        Ok(out.reached)
    }

    pub fn contains(&self, eta: &Config) -> Result<bool> {
        self.params.check(eta)?;
        if eta == &self.sigma {
            return Ok(true);
        }
        if self.is_trivial() || self.params.level(hamiltonian(eta)) >= self.phi_level {
            return Ok(false);
        }
        self.reachable_under(eta, Some(self.phi_level - 1))
    }

    /// Membership in the relevant cycle `{η : Φ(σ, η) < Φ(σ, A) + δ/2}`
    /// with the surrogate gap in place of `δ`.
    pub fn in_relevant_cycle(&self, eta: &Config) -> Result<bool> {
        self.params.check(eta)?;
        let ceiling = self.delta_hat_level.map(|d| (2 * self.phi_level + d - 1).div_euclid(2));
        if ceiling.is_some_and(|c| self.params.level(hamiltonian(eta)) > c) {
            return Ok(false);
        }
        self.reachable_under(eta, ceiling)
    }

    /// All members, for instances small enough to flood.
    pub fn materialize(&self) -> Result<Vec<Config>> {
        if self.is_trivial() {
            return Ok(vec![self.sigma.clone()]);
        }
        let labels = self.budget.labels(self.params.q);
        let phi = self.phi_level;
        let f = flood(&self.params, &self.sigma, |l| l < phi, &labels, self.budget.max_states)?;
        Ok((0..f.arena.len()).map(|i| f.arena.config(i, &self.sigma)).collect())
    }
}
