//! Exhaustive landscape of the 3×3 lattice with q = 3: ground state,
//! metastable states, Γ̃ and the essential saddles between 𝟐 and 𝟏.

use pottsmeta::landscape::{exact_oracle, OracleRequests};
use pottsmeta::Params;

fn main() -> pottsmeta::Result<()> {
    let p = Params::new(3, 3, 3, 0.9)?;
    let requests = OracleRequests {
        pairs: vec![(p.monochrome(2)?, p.monochrome(1)?), (p.monochrome(2)?, p.monochrome(3)?)],
        initial: vec![p.monochrome(2)?],
        essential: true,
    };
    let (_, report) = exact_oracle(&p, &requests)?;
    println!("states            {}", report.states);
    println!("ground states     {}", report.stable.len());
    println!("metastable states {} with V = {:.3}", report.metastable.len(), report.gamma_m);
    println!("gamma tilde       {:.3} (sweep) {:.3} (max barrier)", report.gamma_tilde, report.gamma_tilde_by_barrier);
    for e in &report.phi {
        let essential = e.essential.as_ref().map_or(0, Vec::len);
        println!("phi barrier {:.3}: {} saddles, {} essential", e.barrier, e.saddle_count, essential);
    }
    println!("stability levels:");
    for (v, n) in &report.stability_levels {
        println!("  V = {v}: {n}");
    }
    Ok(())
}
