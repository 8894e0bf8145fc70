//! Floods the cycle around droplet rectangles in a sea of 2s and lists the
//! shapes of the lowest exit states.

use pottsmeta::landscape::{flood_cycle, ExploreBudget};
use pottsmeta::Params;

fn main() -> pottsmeta::Result<()> {
    let p = Params::new(3, 9, 9, 0.9)?;
    for (rows, cols) in [(2, 2), (3, 2), (3, 3), (4, 4)] {
        let mut seed = p.monochrome(2)?;
        for r in 0..rows {
            for c in 0..cols {
                seed.set(p.geom.index(2 + r, 2 + c), 1);
            }
        }
        let cycle = flood_cycle(&p, &seed, &ExploreBudget::default().two_labels(2))?;
        println!(
            "{rows}x{cols}: depth {:.2}, {} members, {} principal exits",
            cycle.depth,
            cycle.member_count,
            cycle.principal.len()
        );
        for (shape, n) in &cycle.principal_shapes {
            println!("    {n:>3} × {shape}");
        }
    }
    Ok(())
}
