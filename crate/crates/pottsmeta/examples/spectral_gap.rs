//! Spectral gap and mixing time of the exact chain on a 3×3 torus.

use pottsmeta::estimators::SpectralModel;
use pottsmeta::Params;

fn main() -> pottsmeta::Result<()> {
    let p = Params::new(3, 3, 3, 0.9)?;
    let model = SpectralModel::build(&p)?;
    let gt = model.gamma_tilde();
    println!("gamma tilde {gt:.2}");
    for beta in [1.0, 2.0, 3.0, 4.0] {
        let r = model.analyze(beta, 0.25)?;
        println!(
            "beta {beta}: gap {:.3e}, gap·e^(beta·gt) {:.3}, t_mix in [{}, {}], log(t_mix)/beta {:.3}",
            r.rho, r.rho_scaled, r.t_mix_lower, r.t_mix, r.log_tmix_over_beta
        );
    }
    Ok(())
}
