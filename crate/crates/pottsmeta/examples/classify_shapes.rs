//! Classifies a few hand-built configurations: a gate state, a strip
//! configuration and a local minimum with two droplets.

use pottsmeta::geometry::{local_min_class, shape_class};
use pottsmeta::{Config, Params};

fn main() -> pottsmeta::Result<()> {
    let p = Params::new(3, 9, 9, 0.9)?;
    let gate = Config::from_snapshot(
        "3 9 9
         2 2 2 2 2 2 2 2 2
         2 2 2 1 2 2 2 2 2
         2 2 1 1 1 2 2 2 2
         2 2 1 1 1 2 2 2 2
         2 2 2 2 2 2 2 2 2
         2 2 2 2 2 2 2 2 2
         2 2 2 2 2 2 2 2 2
         2 2 2 2 2 2 2 2 2
         2 2 2 2 2 2 2 2 2",
    )?;
    let mut strips = p.monochrome(2)?;
    for r in 0..9 {
        for c in 0..3 {
            strips.set(p.geom.index(r, c), 3);
        }
    }
    let mut droplets = p.monochrome(3)?;
    for (r, c) in [(1, 1), (1, 2), (2, 1), (2, 2), (5, 5), (5, 6), (6, 5), (6, 6)] {
        droplets.set(p.geom.index(r, c), 1);
    }
    for (name, cfg) in [("gate", &gate), ("strips", &strips), ("droplets", &droplets)] {
        let shapes = shape_class(&p, cfg);
        let min = local_min_class(&p, cfg);
        println!("{name}: class {:?}, W {:?}, tube {:?}, minimum {:?}", shapes.class, shapes.w_gate, shapes.tube, min.class);
    }
    Ok(())
}
