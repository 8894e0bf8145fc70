//! Reference path from 𝟐 to 𝟏 on a 9×9 torus: growing a droplet of 1s along
//! a square spiral. Prints the energy profile and its peak.

use pottsmeta::paths::{build_reference_path, Spiral};
use pottsmeta::Params;

fn main() -> pottsmeta::Result<()> {
    let p = Params::new(3, 9, 9, 0.9)?;
    let path = build_reference_path(&p, 2, (0, 0), Spiral::Clockwise)?;
    let rel = path.relative_values(&p);
    println!("steps {}, height {:.3} at {:?}", path.len(), path.relative_height(&p), path.argmax);
    for (i, r) in rel.iter().enumerate().take(26) {
        let bar = "#".repeat(((r + 2.0).max(0.0) * 4.0) as usize);
        println!("{i:>3} {r:>7.3} {bar}");
    }
    println!("end energy relative to 𝟐: {:.3}", rel.last().unwrap());
    Ok(())
}
