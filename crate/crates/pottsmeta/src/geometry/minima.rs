//! Geometric classes of local minima and stable plateaux.

use serde::Serialize;

use crate::energy::{delta, Params};
use crate::geometry::clusters::{Cluster, ClusterMap};
use crate::lattice::Config;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MinClass {
    /// Monochromatic configurations.
    M1,
    /// Parallel strips, all of thickness at least two.
    M2,
    /// Non-interacting 1-rectangles with sides at least two in a sea or in
    /// strips of other spins.
    M3,
    /// Coverings by rectangles, or a thickness-one strip between two strips
    /// of two other spins.
    M4,
    /// Stable plateau: a non-1 rectangle whose corner can flip at zero cost.
    Plateau,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MinReport {
    pub class: Option<MinClass>,
    /// No single flip lowers the energy.
    pub stable: bool,
    /// Every single flip raises the energy.
    pub strict: bool,
    /// Stable, but the geometry matches none of the classes.
    pub ambiguous: bool,
}

/// Smallest exact level change over all single flips.
pub fn min_flip_level(p: &Params, cfg: &Config) -> i64 {
    let mut best = i64::MAX;
    for v in 0..cfg.geom().size() {
        for r in 1..=cfg.q() {
            if r != cfg.get(v) {
                best = best.min(p.level(delta(cfg, v, r)));
            }
        }
    }
    best
}

pub fn local_min_class(p: &Params, cfg: &Config) -> MinReport {
    let lowest = min_flip_level(p, cfg);
    let (stable, strict) = (lowest >= 0, lowest > 0);
    let report = |class: Option<MinClass>| MinReport { class, stable, strict, ambiguous: stable && class.is_none() };
    if !stable {
        return report(None);
    }
    if cfg.is_monochrome().is_some() {
        return report(Some(MinClass::M1));
    }
    let map = ClusterMap::new(cfg);
    if !strict {
        return report(all_rectangles(&map).then_some(MinClass::Plateau));
    }
    if parallel_thick_strips(&map.clusters) {
        return report(Some(MinClass::M2));
    }
    if is_m3(cfg, &map) {
        return report(Some(MinClass::M3));
    }
    if is_m4(cfg, &map) {
        return report(Some(MinClass::M4));
    }
    report(None)
}

fn all_rectangles(map: &ClusterMap) -> bool {
    map.clusters.iter().all(Cluster::is_rectangle)
}

fn parallel_thick_strips(cs: &[Cluster]) -> bool {
    let vertical = cs.iter().all(|c| c.is_vertical_strip() && c.thickness() >= 2);
    let horizontal = cs.iter().all(|c| c.is_horizontal_strip() && c.thickness() >= 2);
    vertical || horizontal
}

fn is_m3(cfg: &Config, map: &ClusterMap) -> bool {
    let g = cfg.geom();
    let mut droplets = Vec::new();
    for (id, c) in map.clusters.iter().enumerate() {
        if c.spin != 1 || c.is_strip() {
            continue;
        }
        if !c.is_rectangle() || c.wraps_rows || c.wraps_cols || c.height() < 2 || c.width() < 2 {
            return false;
        }
        droplets.push(id);
    }
    if droplets.is_empty() {
        return false;
    }
    let mut background = cfg.clone();
    for &id in &droplets {
        let c = &map.clusters[id];
        let mut sea = None;
        for &v in &c.cells {
            for w in g.neighbors(v) {
                if map.labels[w] == id {
                    continue;
                }
                match sea {
                    None => sea = Some(cfg.get(w)),
                    Some(m) if m != cfg.get(w) => return false,
                    _ => {}
                }
            }
        }
        for &v in &c.cells {
            background.set(v, sea.unwrap());
        }
    }
    // A vertex outside two droplets touching both makes them interact.
    for v in 0..g.size() {
        if cfg.get(v) == 1 {
            continue;
        }
        let mut touched = g.neighbors(v).map(|w| map.labels[w]).into_iter().filter(|id| droplets.contains(id));
        if let Some(first) = touched.next() {
            if touched.any(|id| id != first) {
                return false;
            }
        }
    }
    background.is_monochrome().is_some() || parallel_thick_strips(&ClusterMap::new(&background).clusters)
}

fn is_m4(cfg: &Config, map: &ClusterMap) -> bool {
    map.clusters.iter().all(|c| {
        if !c.is_rectangle() {
            return false;
        }
        if c.spin == 1 || c.thickness() >= 2 {
            return true;
        }
        c.is_strip() && tricolor_sides(cfg, c)
    })
}

/// The lines on both sides of a thickness-one strip carry two different
/// spins, both different from the strip's.
fn tricolor_sides(cfg: &Config, c: &Cluster) -> bool {
    let g = cfg.geom();
    let (k, l) = (g.rows(), g.cols());
    let side = |cells: Vec<usize>| -> Option<u8> {
        let s = cfg.get(cells[0]);
        cells.iter().all(|&v| cfg.get(v) == s).then_some(s)
    };
    let (a, b) = if c.is_vertical_strip() {
        let col = c.cols.start;
        (side((0..k).map(|r| g.index(r, (col + l - 1) % l)).collect()), side((0..k).map(|r| g.index(r, (col + 1) % l)).collect()))
    } else {
        let row = c.rows.start;
        (side((0..l).map(|x| g.index((row + k - 1) % k, x)).collect()), side((0..l).map(|x| g.index((row + 1) % k, x)).collect()))
    };
    matches!((a, b), (Some(a), Some(b)) if a != b && a != c.spin && b != c.spin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::tiles::all_tiles_stable;
    use crate::lattice::Geom;

    fn paint(p: &Params, sea: u8, blocks: &[(usize, usize, usize, usize, u8)]) -> Config {
        let mut c = p.monochrome(sea).unwrap();
        let g = p.geom;
        for &(r0, c0, h, w, s) in blocks {
            for r in r0..r0 + h {
                for col in c0..c0 + w {
                    c.set(g.index(r % g.rows(), col % g.cols()), s);
                }
            }
        }
        c
    }

    #[test]
    fn documented_examples() {
        let p = Params::new(3, 9, 9, 0.9).unwrap();
        assert_eq!(local_min_class(&p, &p.monochrome(3).unwrap()).class, Some(MinClass::M1));
        let c = paint(&p, 1, &[(0, 0, 9, 3, 2), (0, 3, 9, 6, 3)]);
        assert_eq!(local_min_class(&p, &c).class, Some(MinClass::M2));
        let c = paint(&p, 2, &[(3, 3, 3, 3, 1)]);
        assert_eq!(local_min_class(&p, &c).class, Some(MinClass::M3));
    }

    #[test]
    fn unstable_and_interacting() {
        let p = Params::new(3, 9, 9, 0.9).unwrap();
        let c = paint(&p, 2, &[(3, 3, 1, 1, 1)]);
        let r = local_min_class(&p, &c);
        assert!(!r.stable && r.class.is_none() && !r.ambiguous);
        // Two squares one site apart interact and are not stable together.
        let c = paint(&p, 2, &[(1, 1, 2, 2, 1), (1, 4, 2, 2, 1)]);
        let r = local_min_class(&p, &c);
        assert_ne!(r.class, Some(MinClass::M3));
        assert!(!r.stable);
        let c = paint(&p, 2, &[(1, 1, 2, 2, 1), (5, 5, 2, 2, 1)]);
        assert_eq!(local_min_class(&p, &c).class, Some(MinClass::M3));
    }

    #[test]
    fn m3_in_a_strip_and_m4_tilings() {
        let p = Params::new(5, 12, 12, 0.9).unwrap();
        let c = paint(&p, 2, &[(0, 6, 12, 6, 3), (3, 8, 2, 2, 1)]);
        assert_eq!(local_min_class(&p, &c).class, Some(MinClass::M3));
        let c = paint(&p, 2, &[(0, 0, 6, 6, 3), (6, 6, 6, 6, 5), (0, 6, 6, 6, 4)]);
        let r = local_min_class(&p, &c);
        assert_eq!(r.class, Some(MinClass::M4), "{r:?}");
        let c = paint(&p, 2, &[(0, 4, 12, 1, 3), (0, 5, 12, 7, 4)]);
        assert_eq!(local_min_class(&p, &c).class, Some(MinClass::M4));
    }

    #[test]
    fn plateau_corner() {
        let p = Params::new(5, 12, 12, 0.9).unwrap();
        // The 3-rectangle meets two 4-rectangles along its left side
        // (length 3) and its bottom side (length 5).
        let c = paint(&p, 1, &[(0, 0, 3, 4, 4), (0, 4, 3, 5, 3), (3, 4, 3, 5, 4), (0, 9, 6, 3, 2), (3, 0, 3, 4, 5)]);
        let r = local_min_class(&p, &c);
        assert!(r.stable && !r.strict);
        assert_eq!(r.class, Some(MinClass::Plateau));
    }

    #[test]
    fn classified_states_have_only_stable_tiles() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let g = Geom::new(4, 4).unwrap();
        let p = Params::new(3, 4, 4, 0.9).unwrap();
        for _ in 0..20_000 {
            let spins = (0..16).map(|_| rng.random_range(1..=3)).collect();
            let c = Config::new(g, 3, spins).unwrap();
            let r = local_min_class(&p, &c);
            if r.class.is_some() {
                assert!(all_tiles_stable(&p, &c));
            }
        }
    }
}
