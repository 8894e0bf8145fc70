//! Stability of a vertex together with its four neighbors.

use serde::Serialize;

use crate::energy::{delta, Params};
use crate::lattice::Config;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TileVerdict {
    pub vertex: usize,
    pub center: u8,
    pub neighbors: [u8; 4],
    /// No flip of the center lowers the energy.
    pub stable: bool,
    /// `(r, n_m − n_r + h·1{m=1} − h·1{r=1})` for every `r ≠ σ(v)`.
    pub gaps: Vec<(u8, f64)>,
}

pub fn classify_tile(p: &Params, cfg: &Config, v: usize) -> TileVerdict {
    let center = cfg.get(v);
    let neighbors = cfg.geom().neighbors(v).map(|w| cfg.get(w));
    let count = |s: u8| neighbors.iter().filter(|&&x| x == s).count() as f64;
    let ind = |b: bool| if b { p.h } else { 0.0 };
    let gaps: Vec<(u8, f64)> = (1..=cfg.q())
        .filter(|&r| r != center)
        .map(|r| (r, count(center) - count(r) + ind(center == 1) - ind(r == 1)))
        .collect();
    // Stability is decided on exact levels, not on the float gaps.
    let stable = (1..=cfg.q()).filter(|&r| r != center).all(|r| p.level(delta(cfg, v, r)) >= 0);
    TileVerdict { vertex: v, center, neighbors, stable, gaps }
}

/// Every tile is stable: no single flip strictly lowers the energy.
pub fn all_tiles_stable(p: &Params, cfg: &Config) -> bool {
    (0..cfg.geom().size()).all(|v| (1..=cfg.q()).all(|r| r == cfg.get(v) || p.level(delta(cfg, v, r)) >= 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::energy_delta;
    use crate::lattice::{Geom, Move};
    use rand::{Rng, SeedableRng};

    fn tile(center: u8, nb: [u8; 4]) -> (Params, Config, usize) {
        let p = Params::new(5, 5, 5, 0.9).unwrap();
        let g = p.geom;
        let mut c = Config::monochrome(g, 5, 5).unwrap();
        let v = g.index(2, 2);
        c.set(v, center);
        for (w, s) in g.neighbors(v).into_iter().zip(nb) {
            c.set(w, s);
        }
        (p, c, v)
    }

    #[test]
    fn reference_tile_cases() {
        let (p, c, v) = tile(2, [2, 2, 1, 1]);
        assert!(!classify_tile(&p, &c, v).stable);
        let (p, c, v) = tile(1, [1, 1, 3, 3]);
        assert!(classify_tile(&p, &c, v).stable);
        let (p, c, v) = tile(2, [2, 3, 4, 5]);
        assert!(classify_tile(&p, &c, v).stable);
        let (p, c, v) = tile(2, [2, 3, 4, 4]);
        assert!(!classify_tile(&p, &c, v).stable);
    }

    #[test]
    fn gaps_match_brute_flips() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let p = Params::new(5, 4, 6, 0.7).unwrap();
        let g = Geom::new(4, 6).unwrap();
        for _ in 0..100_000 {
            let spins = (0..24).map(|_| rng.random_range(1..=5)).collect();
            let c = Config::new(g, 5, spins).unwrap();
            let v = rng.random_range(0..24);
            let t = classify_tile(&p, &c, v);
            let mut stable = true;
            for &(r, gap) in &t.gaps {
                let d = energy_delta(&p, &c, Move { vertex: v, spin: r });
                assert!((d - gap).abs() < 1e-12);
                stable &= d >= 0.0;
            }
            assert_eq!(stable, t.stable);
        }
    }
}
