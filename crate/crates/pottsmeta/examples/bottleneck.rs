//! Lazy bottleneck search on a 5×5 torus: communication height from 𝟐 to 𝟏,
//! and the stability level of a small droplet.

use pottsmeta::landscape::{phi_between, stability_level, ExploreBudget};
use pottsmeta::Params;

fn main() -> pottsmeta::Result<()> {
    let p = Params::new(3, 5, 5, 0.9)?;
    let (two, one) = (p.monochrome(2)?, p.monochrome(1)?);
    let budget = ExploreBudget::default().two_labels(2);
    let phi = phi_between(&p, &two, &one, &budget)?;
    println!("barrier 2 -> 1: {:.2} ({} states expanded)", phi.barrier, phi.expanded);
    if let Some(w) = &phi.witness {
        println!("witness path: {} moves, peak at {:?}", w.len(), w.argmax);
    }
    let mut droplet = two.clone();
    for v in [6, 7, 11, 12] {
        droplet.set(v, 1);
    }
    let s = stability_level(&p, &droplet, &budget)?;
    println!("stability level of a 2x2 droplet: {:?}", s.v);
    Ok(())
}
