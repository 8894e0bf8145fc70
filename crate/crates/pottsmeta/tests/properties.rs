use std::sync::LazyLock;

use pottsmeta::dynamics::{kmc_simulate_until, observers, simulate_until, transition_row, SimConfig};
use pottsmeta::energy::{energy_delta, energy_gap_vs_monochrome, hamiltonian};
use pottsmeta::estimators::stats::wilson;
use pottsmeta::geometry::samplers::{sample_fd, sample_local_minimum};
use pottsmeta::geometry::shapes::in_fd;
use pottsmeta::geometry::{classify_tile, local_min_class, MinClass};
use pottsmeta::landscape::oracle::{Oracle, DEFAULT_CAP};
use pottsmeta::landscape::{flood_cycle, ExploreBudget};
use pottsmeta::paths::{build_escape_path, build_reference_path, Spiral};
use pottsmeta::{Config, Geom, Move, Params};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

static ORACLE: LazyLock<Oracle> = LazyLock::new(|| Oracle::build(&Params::new(3, 3, 3, 0.9).unwrap(), DEFAULT_CAP).unwrap());

fn random_config(g: Geom, q: u8, seed: u64) -> Config {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Config::new(g, q, (0..g.size()).map(|_| rng.random_range(1..=q)).collect()).unwrap()
}

fn field() -> impl Strategy<Value = f64> {
    prop::sample::select(vec![0.9, 0.77, 0.35, 0.6, 0.45])
}

fn replay_ok(p: &Params, path: &pottsmeta::paths::PathProfile) -> bool {
    let mut cur = path.start.clone();
    if hamiltonian(&cur) != path.energies[0] {
        return false;
    }
    for (i, m) in path.moves.iter().enumerate() {
        if cur.get(m.vertex) == m.spin {
            return false;
        }
        cur.set(m.vertex, m.spin);
        let e = hamiltonian(&cur);
        if e != path.energies[i + 1] || (p.value(e) - p.value(path.energies[i + 1])).abs() > 1e-12 {
            return false;
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn torus_is_four_regular_and_symmetric(k in 3usize..=10, l in 3usize..=10) {
        let g = Geom::new(k.min(l), k.max(l)).unwrap();
        for v in 0..g.size() {
            let nb = g.neighbors(v);
            let mut distinct = nb.to_vec();
            distinct.sort_unstable();
            distinct.dedup();
            prop_assert_eq!(distinct.len(), 4);
            for w in nb {
                prop_assert!(g.neighbors(w).contains(&v));
            }
        }
        prop_assert_eq!(g.edges().count(), 2 * g.size());
    }

    #[test]
    fn local_delta_matches_global_difference(
        q in 3u8..=5, k in 3usize..=8, l in 3usize..=8, h in field(), seed in any::<u64>(), v in any::<prop::sample::Index>(), s in 1u8..=5,
    ) {
        let p = Params::new(q, k, l, h).unwrap();
        let cfg = random_config(p.geom, q, seed);
        let v = v.index(p.geom.size());
        let s = 1 + (s - 1) % q;
        prop_assume!(s != cfg.get(v));
        let mv = Move::new(&cfg, v, s).unwrap();
        let global = p.value(hamiltonian(&cfg.apply(mv))) - p.value(hamiltonian(&cfg));
        prop_assert!((energy_delta(&p, &cfg, mv) - global).abs() <= 1e-12);
    }

    #[test]
    fn gap_to_monochrome_is_energy_difference(q in 3u8..=5, k in 3usize..=7, h in field(), seed in any::<u64>(), m in 2u8..=5) {
        let p = Params::new(q, k, k + 1, h).unwrap();
        let m = 2 + (m - 2) % (q - 1);
        let cfg = random_config(p.geom, q, seed);
        let diff = hamiltonian(&cfg) - hamiltonian(&p.monochrome(m).unwrap());
        prop_assert_eq!(energy_gap_vs_monochrome(&p, &cfg, m).unwrap(), p.value(diff));
    }

    #[test]
    fn detailed_balance_for_single_flips(seed in any::<u64>(), beta in 0.0f64..4.0, q in 3u8..=4) {
        let p = Params::new(q, 3, 4, 0.9).unwrap();
        let sigma = random_config(p.geom, q, seed);
        let hs = p.value(hamiltonian(&sigma));
        let row = transition_row(&p, &sigma, beta);
        prop_assert!((row.iter().map(|x| x.1).sum::<f64>() - 1.0).abs() < 1e-12);
        for (eta, forward) in &row[1..] {
            let back = transition_row(&p, eta, beta).into_iter().find(|(c, _)| c == &sigma).unwrap().1;
            let he = p.value(hamiltonian(eta));
            // μ(σ)P(σ,η) = μ(η)P(η,σ) with weights relative to σ.
            let lhs = forward;
            let rhs = (-beta * (he - hs)).exp() * back;
            prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(1e-300).max(rhs));
        }
    }

    #[test]
    fn tile_verdict_agrees_with_flip_scan(q in 3u8..=5, seed in any::<u64>(), h in field(), v in any::<prop::sample::Index>()) {
        let p = Params::new(q, 5, 6, h).unwrap();
        let cfg = random_config(p.geom, q, seed);
        let v = v.index(p.geom.size());
        let t = classify_tile(&p, &cfg, v);
        let brute = (1..=q).filter(|&r| r != cfg.get(v)).all(|r| energy_delta(&p, &cfg, Move::new(&cfg, v, r).unwrap()) >= -1e-12);
        prop_assert_eq!(t.stable, brute);
    }

    #[test]
    fn classified_minima_have_no_downhill_flip(seed in any::<u64>(), class in 0usize..3, q in 3u8..=5) {
        let p = Params::new(q, 9, 10, 0.9).unwrap();
        let class = [MinClass::M2, MinClass::M3, MinClass::M4][class];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(eta) = sample_local_minimum(&p, class, 100, &mut rng) {
            prop_assert!(local_min_class(&p, &eta).class.is_some());
            for v in 0..p.geom.size() {
                prop_assert!(classify_tile(&p, &eta, v).stable);
            }
        }
    }

    #[test]
    fn critical_droplets_sit_at_the_barrier(seed in any::<u64>(), m in 2u8..=3) {
        let p = Params::new(3, 9, 9, 0.9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = sample_fd(&p, m, &mut rng);
        prop_assert!(in_fd(&p, &c, m));
        prop_assert_eq!(energy_gap_vs_monochrome(&p, &c, m).unwrap(), p.value(p.barrier()));
    }

    #[test]
    fn communication_height_is_symmetric_and_ultrametric(a in 0usize..19683, b in 0usize..19683, c in 0usize..19683) {
        let o = &*ORACLE;
        let phi = |x, y| o.phi_level(x, y).unwrap();
        prop_assert_eq!(phi(a, b), phi(b, a));
        prop_assert!(phi(a, c) <= phi(a, b).max(phi(b, c)));
        prop_assert!(phi(a, b) >= o.level(a).max(o.level(b)));
    }

    #[test]
    fn flooded_cycles_are_strict(rows in 1usize..=4, cols in 1usize..=4, r0 in 0usize..9, c0 in 0usize..9) {
        let p = Params::new(3, 9, 9, 0.9).unwrap();
        let mut seed = p.monochrome(2).unwrap();
        for r in 0..rows {
            for c in 0..cols {
                seed.set(p.geom.index((r0 + r) % 9, (c0 + c) % 9), 1);
            }
        }
        let cycle = flood_cycle(&p, &seed, &ExploreBudget::default().two_labels(2)).unwrap();
        if !cycle.trivial && !cycle.plateau {
            prop_assert!(cycle.max_inside_level < cycle.exit_level);
            prop_assert!(cycle.principal.iter().all(|x| p.level(hamiltonian(x)) == cycle.exit_level));
            prop_assert!(cycle.depth > 0.0);
        }
    }

    #[test]
    fn reference_paths_are_admissible_with_a_single_peak(
        m in 2u8..=3, row in 0usize..9, col in 0usize..9, ccw in any::<bool>(), h in prop::sample::select(vec![0.9, 0.77, 0.6]),
    ) {
        let p = Params::new(3, 9, 9, h).unwrap();
        let spiral = if ccw { Spiral::CounterClockwise } else { Spiral::Clockwise };
        let path = build_reference_path(&p, m, (row, col), spiral).unwrap();
        prop_assert!(replay_ok(&p, &path));
        prop_assert_eq!(path.end().is_monochrome(), Some(1));
        prop_assert_eq!(path.argmax.len(), 1);
        prop_assert!((path.relative_height(&p) - p.value(p.barrier())).abs() < 1e-9);
    }

    #[test]
    fn escape_paths_climb_at_most_two(seed in any::<u64>(), class in 0usize..3, q in 3u8..=5, side in 9usize..=12) {
        let p = Params::new(q, side, side, 0.9).unwrap();
        let class = [MinClass::M2, MinClass::M3, MinClass::M4][class];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(eta) = sample_local_minimum(&p, class, 100, &mut rng) {
            let path = build_escape_path(&p, &eta).unwrap();
            prop_assert!(replay_ok(&p, &path));
            prop_assert!(path.relative_height(&p) <= 2.0 + 1e-12);
            prop_assert!(*path.relative_values(&p).last().unwrap() < 0.0);
        }
    }

    #[test]
    fn wilson_interval_brackets_the_estimate(n in 1usize..5000, frac in 0.0f64..=1.0) {
        let k = ((n as f64) * frac).round() as usize;
        let ci = wilson(k, n, 1.96);
        let phat = k as f64 / n as f64;
        prop_assert!(0.0 <= ci.lo && ci.lo <= phat && phat <= ci.hi && ci.hi <= 1.0);
    }

    #[test]
    fn engines_are_deterministic_given_seed(seed in any::<u64>(), stream in 0u64..1000, beta in 0.5f64..2.0) {
        let p = Params::new(3, 4, 4, 0.9).unwrap();
        let start = p.monochrome(2).unwrap();
        let t = [observers::monochrome(&p, 1)];
        let o = [observers::exit_initial_cycle(&p, 2)];
        let cfg = SimConfig::new(beta, seed, 200_000).unwrap().with_stream(stream);
        prop_assert_eq!(simulate_until(&p, &start, &t, &o, &cfg).unwrap(), simulate_until(&p, &start, &t, &o, &cfg).unwrap());
        prop_assert_eq!(kmc_simulate_until(&p, &start, &t, &o, &cfg).unwrap(), kmc_simulate_until(&p, &start, &t, &o, &cfg).unwrap());
    }

    #[test]
    fn snapshot_round_trip(q in 3u8..=6, k in 3usize..=7, l in 3usize..=7, seed in any::<u64>()) {
        let cfg = random_config(Geom::new(k.min(l), k.max(l)).unwrap(), q, seed);
        prop_assert_eq!(Config::from_snapshot(&cfg.to_snapshot()).unwrap(), cfg);
    }

    #[test]
    fn explicit_flags_beat_config_entries(beta_file in 0.1f64..5.0, beta_flag in 0.1f64..5.0, n in 1usize..50) {
        let dir = std::env::temp_dir().join(format!("pottsmeta-prop-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(format!("c{n}.conf"));
        std::fs::write(&path, format!("beta = {beta_file}\nN = {n}\n")).unwrap();
        let argv = |extra: &str| -> Vec<String> {
            format!("pottsmeta simulate --config {} {extra}", path.display()).split_whitespace().map(String::from).collect()
        };
        let Ok(cli) = pottsmeta::cli::parse(&argv(&format!("--beta {beta_flag}"))) else { panic!("parse failed") };
        let pottsmeta::cli::Command::Simulate(a) = cli.command else { panic!("wrong command") };
        prop_assert_eq!((a.beta, a.n), (beta_flag, n));
        let Ok(cli) = pottsmeta::cli::parse(&argv("")) else { panic!("parse failed") };
        let pottsmeta::cli::Command::Simulate(a) = cli.command else { panic!("wrong command") };
        prop_assert_eq!(a.beta, beta_file);
    }
}
