//! Hitting times of 𝟏 from 𝟐 with both engines on a 3×3 torus, and the
//! exponential law of the exit time from the initial cycle on 9×9.

use pottsmeta::dynamics::Engine;
use pottsmeta::estimators::{default_cap, estimate_hitting, exp_law_test, TargetSet};
use pottsmeta::Params;

fn main() -> pottsmeta::Result<()> {
    let p = Params::new(3, 3, 3, 0.9)?;
    for engine in [Engine::Naive, Engine::Kmc] {
        let r = estimate_hitting(&p, 2, TargetSet::Stable, 2.0, 2000, default_cap(&p, 2.0, 50.0), 5, engine)?;
        println!("{engine:?}: mean {:.1} steps, 95% CI [{:.1}, {:.1}]", r.mean, r.ci.lo, r.ci.hi);
    }

    let p = Params::new(3, 9, 9, 0.9)?;
    let r = estimate_hitting(&p, 2, TargetSet::LeaveCycle, 3.0, 500, default_cap(&p, 3.0, 50.0), 9, Engine::Kmc)?;
    let xs: Vec<f64> = r.samples.iter().map(|&t| t as f64).collect();
    let law = exp_law_test(&xs)?;
    println!("exit time at beta 3: mean {:.3e}, KS distance to Exp(1) {:.3}", law.mean, law.ks);
    Ok(())
}
