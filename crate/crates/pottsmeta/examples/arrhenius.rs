//! Arrhenius fit of log E[τ] against β for the transition 𝟐 → 𝟏 on 9×9.

use pottsmeta::dynamics::Engine;
use pottsmeta::estimators::arrhenius_experiment;
use pottsmeta::Params;

fn main() -> pottsmeta::Result<()> {
    let p = Params::new(3, 9, 9, 0.9)?;
    let (fit, _) = arrhenius_experiment(&p, 2, &[1.6, 2.0, 2.4, 2.8], 200, 1, 50.0, Engine::Kmc)?;
    for pt in &fit.points {
        println!("beta {:.1}: mean {:.3e} [{:.3e}, {:.3e}]", pt.beta, pt.mean, pt.ci.lo, pt.ci.hi);
    }
    println!("slope {:.3} (barrier {:.1}), r2 {:.4}", fit.slope, p.value(p.barrier()), fit.r2);
    Ok(())
}
