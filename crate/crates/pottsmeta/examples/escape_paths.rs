//! Samples local minima of each class on a 12×12 torus and certifies a path
//! from each to a strictly lower state with a climb of at most 2.

use pottsmeta::geometry::samplers::sample_local_minimum;
use pottsmeta::geometry::MinClass;
use pottsmeta::paths::build_escape_path;
use pottsmeta::Params;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> pottsmeta::Result<()> {
    let p = Params::new(4, 12, 12, 0.9)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for class in [MinClass::M2, MinClass::M3, MinClass::M4] {
        let mut worst = f64::MIN;
        let mut count = 0;
        for _ in 0..20 {
            let Some(eta) = sample_local_minimum(&p, class, 200, &mut rng) else { continue };
            let path = build_escape_path(&p, &eta)?;
            worst = worst.max(path.relative_height(&p));
            count += 1;
            if count == 1 {
                println!("{class:?} sample:\n{}", eta.to_snapshot());
                println!("  via {}: climb {:.2}, end {:.2}", path.construction, path.relative_height(&p), path.relative_values(&p).last().unwrap());
            }
        }
        println!("{class:?}: {count} minima, worst climb {worst:.2}\n");
    }
    Ok(())
}
