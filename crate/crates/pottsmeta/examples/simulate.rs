//! A batch of Metropolis trajectories from 𝟐 with first-hit observers, run
//! on a thread pool sized by POTTS_THREADS.

use pottsmeta::dynamics::{observers, run_batch, Engine, SimConfig};
use pottsmeta::Params;

fn main() -> pottsmeta::Result<()> {
    let p = Params::new(3, 6, 6, 0.9)?;
    let targets = [observers::monochrome(&p, 1), observers::other_metastable(&p, 2)];
    let obs = [observers::gate(&p, 2), observers::exit_initial_cycle(&p, 2)];
    let cfg = SimConfig::new(1.5, 42, 1 << 32)?;
    let runs = run_batch(&p, &p.monochrome(2)?, &targets, &obs, &cfg, 8, Engine::Kmc)?;
    let show = |x: Option<u64>| x.map_or("-".to_string(), |t| t.to_string());
    println!("stream      steps  events  target  gate_hit  exit_hit");
    for r in &runs {
        let target = r.absorbed.map_or("capped", |i| targets[i].name.as_str());
        println!(
            "{:>6}  {:>9}  {:>6}  {:>6}  {:>8}  {:>8}",
            r.stream,
            r.steps,
            r.events,
            target,
            show(r.first_hits[0]),
            show(r.first_hits[1])
        );
    }
    Ok(())
}
