//! Energy-landscape algorithms: bottleneck search for communication heights,
//! stability levels, cycle flooding, initial cycles and an exhaustive oracle
//! for tiny lattices.

pub mod cycles;
pub mod flood;
pub mod oracle;
pub mod search;

use serde::Serialize;

use crate::energy::Params;
use crate::error::{Error, Result};

pub use cycles::{initial_cycle, InitialCycle};
pub use flood::{flood_cycle, CycleReport};
pub use oracle::{exact_oracle, OracleReport, OracleRequests, StateSpace};
pub use search::{bottleneck_phi, phi_between, stability_level, SearchOutcome, StabilityOutcome};

/// Limits on a single exploration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExploreBudget {
    pub max_states: usize,
    /// States with an exact level above this are never entered.
    pub energy_ceiling: Option<i64>,
    /// Spin labels a flip may write; `None` allows all `q`.
    pub subspace: Option<Vec<u8>>,
}

impl Default for ExploreBudget {
    fn default() -> Self {
        Self { max_states: 2_000_000, energy_ceiling: None, subspace: None }
    }
}

impl ExploreBudget {
    pub fn new(max_states: usize) -> Result<Self> {
        if max_states == 0 {
            return Err(Error::Invalid("max_states must be positive".into()));
        }
        Ok(Self { max_states, ..Self::default() })
    }

    pub fn with_ceiling(mut self, level: i64) -> Self {
        self.energy_ceiling = Some(level);
        self
    }

    pub fn with_subspace(mut self, labels: &[u8]) -> Self {
        let mut labels = labels.to_vec();
        labels.sort_unstable();
        labels.dedup();
        self.subspace = Some(labels);
        self
    }

    /// Flips restricted to the labels `{1, m}`.
    pub fn two_labels(self, m: u8) -> Self {
        self.with_subspace(&[1, m])
    }

    /// Restricts to `{1, m}` when the full state space exceeds `max_states`.
    pub fn default_for(p: &Params, m: u8) -> Self {
        let budget = Self::default();
        let states = (p.q as f64).powi(p.geom.size() as i32);
        if states > budget.max_states as f64 {
            budget.two_labels(m)
        } else {
            budget
        }
    }

    pub fn labels(&self, q: u8) -> Vec<u8> {
        match &self.subspace {
            Some(l) => l.iter().copied().filter(|&s| s >= 1 && s <= q).collect(),
            None => (1..=q).collect(),
        }
    }

    pub(crate) fn admits(&self, level: i64) -> bool {
        self.energy_ceiling.is_none_or(|c| level <= c)
    }
}
