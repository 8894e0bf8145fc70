//! Many independent trajectories, one RNG stream each, run on a thread pool
//! sized by the `POTTS_THREADS` environment variable.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{kmc_simulate_until, simulate_until, Predicate, RunRecord, SimConfig};
use crate::energy::Params;
use crate::error::{Error, Result};
use crate::lattice::Config;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Naive,
    Kmc,
}

pub const THREADS_ENV: &str = "POTTS_THREADS";

pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.trim().parse().map_err(|_| Error::Invalid(format!("{THREADS_ENV}={v:?} is not a count")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Error::Invalid(e.to_string()))
}

/// Runs trajectories on streams `first_stream..first_stream + n`; the output
/// is ordered by stream and independent of the thread count.
pub fn run_batch(
    p: &Params,
    start: &Config,
    targets: &[Predicate],
    observers: &[Predicate],
    cfg: &SimConfig,
    n: usize,
    engine: Engine,
) -> Result<Vec<RunRecord>> {
    let pool = thread_pool()?;
    pool.install(|| {
        (0..n as u64)
            .into_par_iter()
            .map(|i| {
                let c = cfg.with_stream(cfg.stream + i);
                match engine {
                    Engine::Naive => simulate_until(p, start, targets, observers, &c),
                    Engine::Kmc => kmc_simulate_until(p, start, targets, observers, &c),
                }
            })
            .collect()
    })
}
