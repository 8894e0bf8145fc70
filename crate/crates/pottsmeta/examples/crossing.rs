//! Which sets a trajectory from 𝟐 visits before reaching 𝟏: the gate, the
//! other metastable state, states outside the typical tube.

use pottsmeta::dynamics::Engine;
use pottsmeta::estimators::crossing::standard_observers;
use pottsmeta::estimators::{crossing_stats, default_cap, TargetSet};
use pottsmeta::Params;

fn main() -> pottsmeta::Result<()> {
    let p = Params::new(3, 9, 9, 0.9)?;
    let beta = 3.0;
    let obs = standard_observers(&p, 2);
    let r = crossing_stats(&p, 2, TargetSet::Stable, beta, 200, default_cap(&p, beta, 50.0), 3, &obs, Engine::Kmc)?;
    for row in &r.rows {
        println!("{:<12} {:>4}/{:<4} {:.3} [{:.3}, {:.3}]", row.observer, row.hits, row.n, row.freq, row.ci.lo, row.ci.hi);
    }
    Ok(())
}
