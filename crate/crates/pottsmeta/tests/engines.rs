//! The rejection-free engine against step-by-step simulation.

use pottsmeta::dynamics::{observers, run_batch, Engine, SimConfig};
use pottsmeta::estimators::stats::ks_two_sample;
use pottsmeta::Params;

#[test]
fn kmc_and_naive_hitting_laws_agree() {
    let p = Params::new(3, 3, 3, 0.9).unwrap();
    let start = p.monochrome(2).unwrap();
    let target = [observers::monochrome(&p, 1)];
    let n = 10_000;
    let cfg = SimConfig::new(2.0, 2024, u64::MAX).unwrap();
    let naive = run_batch(&p, &start, &target, &[], &cfg, n, Engine::Naive).unwrap();
    let kmc = run_batch(&p, &start, &target, &[], &cfg.with_stream(n as u64), n, Engine::Kmc).unwrap();
    let steps = |r: &[pottsmeta::dynamics::RunRecord]| -> Vec<f64> {
        assert!(r.iter().all(|x| x.absorbed == Some(0)));
        r.iter().map(|x| x.steps as f64).collect()
    };
    let d = ks_two_sample(&steps(&naive), &steps(&kmc));
    assert!(d < 0.02, "KS distance {d}");
}

#[test]
fn batches_do_not_depend_on_thread_count() {
    let p = Params::new(3, 4, 4, 0.9).unwrap();
    let start = p.monochrome(2).unwrap();
    let target = [observers::monochrome(&p, 1)];
    let cfg = SimConfig::new(1.5, 5, u64::MAX).unwrap();
    let a = run_batch(&p, &start, &target, &[], &cfg, 16, Engine::Kmc).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool.install(|| {
        (0..16u64)
            .map(|i| pottsmeta::dynamics::kmc_simulate_until(&p, &start, &target, &[], &cfg.with_stream(i)).unwrap())
            .collect::<Vec<_>>()
    });
    assert_eq!(a, b);
}
