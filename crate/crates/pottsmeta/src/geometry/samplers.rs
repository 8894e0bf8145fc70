//! Random configurations with prescribed geometry: critical droplets in the
//! bottom of `D^m`, and candidate local minima of classes 2 to 4.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::energy::Params;
use crate::geometry::minima::{local_min_class, MinClass};
use crate::geometry::shapes::in_fd;
use crate::lattice::Config;

/// Eden growth of a `k*`-cell droplet of 1s in a sea of `m`, repeated until
/// the droplet lands in `F(D^m)`.
pub fn sample_fd<R: Rng>(p: &Params, m: u8, rng: &mut R) -> Config {
    let g = p.geom;
    let size = p.critical_size();
    loop {
        let mut cfg = p.monochrome(m).expect("sea spin in range");
        let start = rng.random_range(0..g.size());
        let mut cells = vec![start];
        cfg.set(start, 1);
        while cells.len() < size {
            let frontier: BTreeSet<usize> =
                cells.iter().flat_map(|&v| g.neighbors(v)).filter(|&w| cfg.get(w) != 1).collect();
            let frontier: Vec<usize> = frontier.into_iter().collect();
            let w = frontier[rng.random_range(0..frontier.len())];
            cfg.set(w, 1);
            cells.push(w);
        }
        if in_fd(p, &cfg, m) {
            return cfg;
        }
    }
}

/// All fixed polyominoes with `n` cells, each normalized to touch the axes.
pub fn fixed_polyominoes(n: usize) -> Vec<Vec<(i32, i32)>> {
    let mut current: BTreeSet<Vec<(i32, i32)>> = BTreeSet::from([vec![(0, 0)]]);
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for poly in &current {
            for &(r, c) in poly {
                for (dr, dc) in [(-1, 0), (1, 0), (0, -1), (0, 1)] {
                    let cell = (r + dr, c + dc);
                    if poly.contains(&cell) {
                        continue;
                    }
                    let mut grown = poly.clone();
                    grown.push(cell);
                    next.insert(normalize(grown));
                }
            }
        }
        current = next;
    }
    current.into_iter().collect()
}

fn normalize(mut cells: Vec<(i32, i32)>) -> Vec<(i32, i32)> {
    let r0 = cells.iter().map(|c| c.0).min().unwrap();
    let c0 = cells.iter().map(|c| c.1).min().unwrap();
    for c in cells.iter_mut() {
        *c = (c.0 - r0, c.1 - c0);
    }
    cells.sort_unstable();
    cells
}

/// Places a polyomino in a sea of `m` with its corner at `(row, col)`.
pub fn place(p: &Params, m: u8, cells: &[(i32, i32)], row: usize, col: usize) -> Config {
    let g = p.geom;
    let mut cfg = p.monochrome(m).expect("sea spin in range");
    for &(r, c) in cells {
        cfg.set(g.index((row + r as usize) % g.rows(), (col + c as usize) % g.cols()), 1);
    }
    cfg
}

/// Splits `n` cyclically into consecutive parts of length at least `min`.
fn random_parts<R: Rng>(n: usize, min: usize, max_parts: usize, rng: &mut R) -> Vec<usize> {
    let parts = rng.random_range(2..=max_parts.min(n / min).max(2));
    let mut sizes = vec![min; parts];
    for _ in 0..n - min * parts {
        let i = rng.random_range(0..parts);
        sizes[i] += 1;
    }
    sizes
}

/// Spins for consecutive bands with neighboring bands (cyclically) distinct.
fn band_spins<R: Rng>(q: u8, bands: usize, rng: &mut R) -> Vec<u8> {
    loop {
        let spins: Vec<u8> = (0..bands).map(|_| rng.random_range(1..=q)).collect();
        if (0..bands).all(|i| spins[i] != spins[(i + 1) % bands]) {
            return spins;
        }
    }
}

fn strips<R: Rng>(p: &Params, min_thickness: usize, rng: &mut R) -> Config {
    let g = p.geom;
    let vertical = rng.random_bool(0.5);
    let n = if vertical { g.cols() } else { g.rows() };
    let widths = random_parts(n, min_thickness, 4, rng);
    let spins = band_spins(p.q, widths.len(), rng);
    let offset = rng.random_range(0..n);
    let mut cfg = p.monochrome(spins[0]).expect("spin in range");
    let mut at = offset;
    for (w, s) in widths.iter().zip(&spins) {
        for _ in 0..*w {
            let line = at % n;
            let len = if vertical { g.rows() } else { g.cols() };
            for x in 0..len {
                let v = if vertical { g.index(x, line) } else { g.index(line, x) };
                cfg.set(v, *s);
            }
            at += 1;
        }
    }
    cfg
}

/// Parallel strips of thickness at least two.
pub fn sample_m2_candidate<R: Rng>(p: &Params, rng: &mut R) -> Config {
    strips(p, 2, rng)
}

/// A sea or strips of non-1 spins with a few 1-rectangles dropped in.
pub fn sample_m3_candidate<R: Rng>(p: &Params, rng: &mut R) -> Config {
    let g = p.geom;
    let mut cfg = if rng.random_bool(0.5) {
        p.monochrome(rng.random_range(2..=p.q)).expect("spin in range")
    } else {
        let mut c = strips(p, 4, rng);
        for v in 0..g.size() {
            if c.get(v) == 1 {
                c.set(v, 2);
            }
        }
        c
    };
    let count = rng.random_range(1..=3);
    for _ in 0..count {
        let h = rng.random_range(2..=4);
        let w = rng.random_range(2..=4);
        let r0 = rng.random_range(0..g.rows());
        let c0 = rng.random_range(0..g.cols());
        for r in r0..r0 + h {
            for c in c0..c0 + w {
                cfg.set(g.index(r % g.rows(), c % g.cols()), 1);
            }
        }
    }
    cfg
}

/// A guillotine tiling: horizontal bands, each cut into rectangles.
pub fn sample_m4_candidate<R: Rng>(p: &Params, rng: &mut R) -> Config {
    let g = p.geom;
    let heights = random_parts(g.rows(), 2, 3, rng);
    let mut cfg = p.monochrome(2).expect("spin in range");
    let mut r = 0;
    for h in heights {
        let widths = random_parts(g.cols(), 2, 3, rng);
        let mut spins: Vec<u8> = (1..=p.q).collect();
        spins.shuffle(rng);
        let mut c = 0;
        for (i, w) in widths.iter().enumerate() {
            let s = spins[i % spins.len()];
            for rr in r..r + h {
                for cc in c..c + w {
                    cfg.set(g.index(rr, cc), s);
                }
            }
            c += w;
        }
        r += h;
    }
    cfg
}

/// Draws candidates until one is classified as a local minimum of class
/// 2, 3 or 4; gives up after `tries` draws.
pub fn sample_local_minimum<R: Rng>(p: &Params, class: MinClass, tries: usize, rng: &mut R) -> Option<Config> {
    for _ in 0..tries {
        let cfg = match class {
            MinClass::M2 => sample_m2_candidate(p, rng),
            MinClass::M3 => sample_m3_candidate(p, rng),
            MinClass::M4 => sample_m4_candidate(p, rng),
            _ => return None,
        };
        if local_min_class(p, &cfg).class == Some(class) {
            return Some(cfg);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::clusters::{clusters, single_segment_touch};
    use crate::geometry::shapes::{in_w, in_w_prime};
    use rand::SeedableRng;

    #[test]
    fn polyomino_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| fixed_polyominoes(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 6, 19, 63, 216, 760]);
    }

    /// Every critical droplet touching a side of its rectangle in a single
    /// unit segment is a gate configuration.
    #[test]
    fn critical_droplets_exhaustive() {
        let p = Params::new(3, 9, 9, 0.9).unwrap();
        let (mut critical, mut gates) = (0, 0);
        for poly in fixed_polyominoes(7) {
            let cfg = place(&p, 2, &poly, 2, 2);
            if !in_fd(&p, &cfg, 2) {
                continue;
            }
            critical += 1;
            if single_segment_touch(&cfg, &clusters(&cfg, 1)[0]) {
                assert!(in_w(&p, &cfg, 2) || in_w_prime(&p, &cfg, 2), "{cfg}");
                gates += 1;
            }
        }
        // 12 quasi-squares with a protuberance on a long side, 8 on a short
        // side, and the two 3×3 squares missing opposite corners.
        assert_eq!((critical, gates), (22, 20));
    }

    #[test]
    fn eden_sampler_hits_fd() {
        let p = Params::new(3, 9, 9, 0.9).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let c = sample_fd(&p, 2, &mut rng);
            assert!(in_fd(&p, &c, 2));
        }
    }

    #[test]
    fn local_minimum_samplers() {
        let p = Params::new(5, 12, 12, 0.9).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for class in [MinClass::M2, MinClass::M3, MinClass::M4] {
            assert!(sample_local_minimum(&p, class, 2000, &mut rng).is_some(), "{class:?}");
        }
    }
}
