//! Disagreeing-edge counts per row and column, bridges and crosses.

use serde::Serialize;

use crate::lattice::Config;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeReport {
    /// Disagreeing horizontal edges inside each row.
    pub row_disagree: Vec<usize>,
    /// Disagreeing vertical edges inside each column.
    pub col_disagree: Vec<usize>,
    pub d_h: usize,
    pub d_v: usize,
    /// `(row, spin)` for every monochromatic row.
    pub horizontal: Vec<(usize, u8)>,
    /// `(col, spin)` for every monochromatic column.
    pub vertical: Vec<(usize, u8)>,
}

impl BridgeReport {
    pub fn new(cfg: &Config) -> Self {
        let g = cfg.geom();
        let (k, l) = (g.rows(), g.cols());
        let mut row_disagree = vec![0; k];
        let mut col_disagree = vec![0; l];
        for r in 0..k {
            for c in 0..l {
                let s = cfg.at(r, c);
                if s != cfg.at(r, (c + 1) % l) {
                    row_disagree[r] += 1;
                }
                if s != cfg.at((r + 1) % k, c) {
                    col_disagree[c] += 1;
                }
            }
        }
        let horizontal = (0..k).filter(|&r| row_disagree[r] == 0).map(|r| (r, cfg.at(r, 0))).collect();
        let vertical = (0..l).filter(|&c| col_disagree[c] == 0).map(|c| (c, cfg.at(0, c))).collect();
        Self {
            d_h: row_disagree.iter().sum(),
            d_v: col_disagree.iter().sum(),
            row_disagree,
            col_disagree,
            horizontal,
            vertical,
        }
    }

    /// Number of `s`-bridges, horizontal and vertical together.
    pub fn bridges(&self, s: u8) -> usize {
        self.horizontal.iter().chain(&self.vertical).filter(|b| b.1 == s).count()
    }

    pub fn has_cross(&self, s: u8) -> bool {
        self.horizontal.iter().any(|b| b.1 == s) && self.vertical.iter().any(|b| b.1 == s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::agreeing_edges;
    use crate::lattice::Geom;

    #[test]
    fn monochrome_has_cross() {
        let c = Config::monochrome(Geom::new(3, 4).unwrap(), 3, 2).unwrap();
        let b = BridgeReport::new(&c);
        assert_eq!(b.bridges(2), 7);
        assert!(b.has_cross(2));
        assert_eq!(b.d_h + b.d_v, 0);
    }

    #[test]
    fn vertical_strip_has_only_vertical_bridges() {
        let g = Geom::new(5, 6).unwrap();
        let mut c = Config::monochrome(g, 3, 2).unwrap();
        for r in 0..5 {
            c.set(g.index(r, 1), 1);
            c.set(g.index(r, 2), 1);
        }
        let b = BridgeReport::new(&c);
        assert!(b.horizontal.is_empty());
        assert_eq!(b.vertical, vec![(0, 2), (1, 1), (2, 1), (3, 2), (4, 2), (5, 2)]);
        assert!(!b.has_cross(1) && !b.has_cross(2));
        assert_eq!(b.d_h, 10);
        assert_eq!(b.row_disagree, vec![2; 5]);
    }

    /// Every 3×3, q=3 configuration: no mixed-spin horizontal/vertical bridge
    /// pair, counts are never 1, totals match the Hamiltonian, and a single
    /// flip changes `B_s` by at most 2, by exactly 2 only when it creates an
    /// `s`-cross.
    #[test]
    fn exhaustive_three_by_three() {
        let g = Geom::new(3, 3).unwrap();
        for code in 0..3u64.pow(9) {
            let c = Config::decode(g, 3, code).unwrap();
            let b = BridgeReport::new(&c);
            for &(_, r) in &b.horizontal {
                assert!(b.vertical.iter().all(|&(_, s)| s == r));
            }
            assert!(b.row_disagree.iter().chain(&b.col_disagree).all(|&d| d != 1));
            assert_eq!(b.d_h + b.d_v, g.edge_count() - agreeing_edges(&c));
            if code % 7 != 0 {
                continue;
            }
            for v in 0..9 {
                for s in 1..=3 {
                    if s == c.get(v) {
                        continue;
                    }
                    let mut d = c.clone();
                    d.set(v, s);
                    let b2 = BridgeReport::new(&d);
                    for t in 1..=3 {
                        let change = b2.bridges(t) as i64 - b.bridges(t) as i64;
                        assert!((-2..=2).contains(&change));
                        if change == 2 {
                            assert!(b2.has_cross(t));
                        }
                    }
                }
            }
        }
    }
}
