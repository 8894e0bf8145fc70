//! Connected components of equal spins on the torus and their surrounding
//! rectangles.

use serde::Serialize;

use crate::lattice::Config;

/// A cyclic interval `start, start+1, …, start+len−1 (mod n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub start: usize,
    pub len: usize,
}

impl Interval {
    /// Offset of `i` from `start`, if `i` lies in the interval.
    pub fn offset(&self, i: usize, n: usize) -> Option<usize> {
        let d = (i + n - self.start) % n;
        (d < self.len).then_some(d)
    }

    pub fn at(&self, offset: usize, n: usize) -> usize {
        (self.start + offset) % n
    }

    pub fn last(&self, n: usize) -> usize {
        self.at(self.len - 1, n)
    }
}

/// Smallest cyclic interval covering every `true` entry: the complement of
/// the longest cyclic run of `false`. Returns `len == 0` for an empty set.
pub fn cyclic_cover(occ: &[bool]) -> Interval {
    let n = occ.len();
    let Some(first) = occ.iter().position(|&x| x) else {
        return Interval { start: 0, len: 0 };
    };
    let (mut best_gap, mut best_end) = (0, first);
    let mut run = 0;
    // Walk one full turn starting just after an occupied index so every gap
    // is seen contiguously.
    for step in 1..=n {
        let i = (first + step) % n;
        if occ[i] {
            if run > best_gap {
                best_gap = run;
                best_end = i;
            }
            run = 0;
        } else {
            run += 1;
        }
    }
    if best_gap == 0 {
        return Interval { start: 0, len: n };
    }
    Interval { start: best_end, len: n - best_gap }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cluster {
    pub spin: u8,
    pub cells: Vec<usize>,
    /// Number of disagreeing edges with one endpoint in the cluster.
    pub perimeter: usize,
    pub rows: Interval,
    pub cols: Interval,
    /// The cluster meets every row (resp. column).
    pub wraps_rows: bool,
    pub wraps_cols: bool,
}

impl Cluster {
    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn height(&self) -> usize {
        self.rows.len
    }

    pub fn width(&self) -> usize {
        self.cols.len
    }

    /// The cluster fills its surrounding rectangle (strips included).
    pub fn is_rectangle(&self) -> bool {
        self.size() == self.height() * self.width()
    }

    /// A full band of columns that does not cover the torus.
    pub fn is_vertical_strip(&self) -> bool {
        self.is_rectangle() && self.wraps_rows && !self.wraps_cols
    }

    pub fn is_horizontal_strip(&self) -> bool {
        self.is_rectangle() && self.wraps_cols && !self.wraps_rows
    }

    pub fn is_strip(&self) -> bool {
        self.is_vertical_strip() || self.is_horizontal_strip()
    }

    /// Width of a vertical strip, height of a horizontal one, otherwise the
    /// shorter side.
    pub fn thickness(&self) -> usize {
        if self.is_vertical_strip() {
            self.width()
        } else if self.is_horizontal_strip() {
            self.height()
        } else {
            self.height().min(self.width())
        }
    }

    pub fn contains_cell(&self, row: usize, col: usize, k: usize, l: usize) -> bool {
        self.rows.offset(row, k).is_some() && self.cols.offset(col, l).is_some()
    }
}

/// Labels every vertex with its cluster index.
#[derive(Debug, Clone)]
pub struct ClusterMap {
    pub labels: Vec<usize>,
    pub clusters: Vec<Cluster>,
}

impl ClusterMap {
    pub fn new(cfg: &Config) -> Self {
        let g = cfg.geom();
        let n = g.size();
        let mut labels = vec![usize::MAX; n];
        let mut clusters = Vec::new();
        let mut stack = Vec::new();
        for seed in 0..n {
            if labels[seed] != usize::MAX {
                continue;
            }
            let id = clusters.len();
            let spin = cfg.get(seed);
            let mut cells = vec![];
            labels[seed] = id;
            stack.push(seed);
            while let Some(v) = stack.pop() {
                cells.push(v);
                for w in g.neighbors(v) {
                    if labels[w] == usize::MAX && cfg.get(w) == spin {
                        labels[w] = id;
                        stack.push(w);
                    }
                }
            }
            cells.sort_unstable();
            clusters.push(summarize(cfg, spin, cells));
        }
        Self { labels, clusters }
    }

    pub fn of_spin(&self, s: u8) -> impl Iterator<Item = &Cluster> {
        self.clusters.iter().filter(move |c| c.spin == s)
    }
}

fn summarize(cfg: &Config, spin: u8, cells: Vec<usize>) -> Cluster {
    let g = cfg.geom();
    let (k, l) = (g.rows(), g.cols());
    let mut row_occ = vec![false; k];
    let mut col_occ = vec![false; l];
    let mut perimeter = 0;
    for &v in &cells {
        let (r, c) = g.coords(v);
        row_occ[r] = true;
        col_occ[c] = true;
        perimeter += g.neighbors(v).iter().filter(|&&w| cfg.get(w) != spin).count();
    }
    let rows = cyclic_cover(&row_occ);
    let cols = cyclic_cover(&col_occ);
    Cluster {
        spin,
        cells,
        perimeter,
        rows,
        cols,
        wraps_rows: row_occ.iter().all(|&x| x),
        wraps_cols: col_occ.iter().all(|&x| x),
    }
}

/// The `s`-clusters of `cfg`.
pub fn clusters(cfg: &Config, s: u8) -> Vec<Cluster> {
    ClusterMap::new(cfg).clusters.into_iter().filter(|c| c.spin == s).collect()
}

/// Some extreme row or column of the surrounding rectangle holds exactly one
/// cell of the cluster.
pub fn single_segment_touch(cfg: &Config, c: &Cluster) -> bool {
    let g = cfg.geom();
    let (k, l) = (g.rows(), g.cols());
    let count_row = |r: usize| c.cells.iter().filter(|&&v| v / l == r).count();
    let count_col = |col: usize| c.cells.iter().filter(|&&v| v % l == col).count();
    let mut sides = Vec::new();
    if !c.wraps_rows {
        sides.push(count_row(c.rows.start));
        sides.push(count_row(c.rows.last(k)));
    }
    if !c.wraps_cols {
        sides.push(count_col(c.cols.start));
        sides.push(count_col(c.cols.last(l)));
    }
    sides.contains(&1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Geom;

    fn sea_with(k: usize, l: usize, ones: &[(usize, usize)]) -> Config {
        let g = Geom::new(k, l).unwrap();
        let mut c = Config::monochrome(g, 3, 2).unwrap();
        for &(r, col) in ones {
            c.set(g.index(r, col), 1);
        }
        c
    }

    /// Perimeter of a union of unit squares counted square by square.
    fn square_union_perimeter(cells: &[(usize, usize)], k: usize, l: usize) -> usize {
        let inside = |r: usize, c: usize| cells.contains(&(r % k, c % l));
        cells
            .iter()
            .map(|&(r, c)| {
                [(r + k - 1, c), (r + 1, c), (r, c + l - 1), (r, c + 1)].iter().filter(|&&(a, b)| !inside(a, b)).count()
            })
            .sum()
    }

    #[test]
    fn cyclic_cover_cases() {
        assert_eq!(cyclic_cover(&[false, true, true, false, false]), Interval { start: 1, len: 2 });
        assert_eq!(cyclic_cover(&[true, false, false, false, true]), Interval { start: 4, len: 2 });
        assert_eq!(cyclic_cover(&[true; 4]), Interval { start: 0, len: 4 });
        assert_eq!(cyclic_cover(&[false; 4]).len, 0);
        assert_eq!(cyclic_cover(&[true, false, true, false, false, false]), Interval { start: 0, len: 3 });
    }

    #[test]
    fn block_cluster() {
        let cells: Vec<_> = (3..5).flat_map(|r| (2..5).map(move |c| (r, c))).collect();
        let cfg = sea_with(9, 9, &cells);
        let ones = clusters(&cfg, 1);
        assert_eq!(ones.len(), 1);
        let c = &ones[0];
        assert_eq!((c.height(), c.width()), (2, 3));
        assert!(c.is_rectangle());
        assert_eq!(c.perimeter, 10);
        assert_eq!(c.perimeter, square_union_perimeter(&cells, 9, 9));
    }

    #[test]
    fn wrapped_block_and_diagonals() {
        let cells = [(8, 8), (0, 8), (8, 0), (0, 0)];
        let cfg = sea_with(9, 9, &cells);
        let ones = clusters(&cfg, 1);
        assert_eq!(ones.len(), 1);
        assert_eq!(ones[0].rows, Interval { start: 8, len: 2 });
        assert!(ones[0].is_rectangle());
        assert_eq!(ones[0].perimeter, 8);

        let cfg = sea_with(9, 9, &[(2, 2), (3, 3)]);
        assert_eq!(clusters(&cfg, 1).len(), 2);
    }

    #[test]
    fn full_column_is_a_strip() {
        let cells: Vec<_> = (0..5).map(|r| (r, 2)).collect();
        let cfg = sea_with(5, 7, &cells);
        let ones = clusters(&cfg, 1);
        assert!(ones[0].is_vertical_strip());
        assert_eq!(ones[0].thickness(), 1);
        let twos = clusters(&cfg, 2);
        assert_eq!(twos.len(), 1);
        assert!(twos[0].is_vertical_strip());
        assert_eq!(twos[0].thickness(), 6);
    }

    #[test]
    fn perimeter_matches_square_union() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let mut cells = vec![];
            for r in 0..6 {
                for c in 0..7 {
                    if rng.random_bool(0.35) {
                        cells.push((r, c));
                    }
                }
            }
            let cfg = sea_with(6, 7, &cells);
            let total: usize = clusters(&cfg, 1).iter().map(|c| c.perimeter).sum();
            assert_eq!(total, square_union_perimeter(&cells, 6, 7));
        }
    }

    #[test]
    fn single_segment() {
        let mut cells: Vec<_> = (3..5).flat_map(|r| (2..5).map(move |c| (r, c))).collect();
        cells.push((2, 3));
        let cfg = sea_with(9, 9, &cells);
        assert!(single_segment_touch(&cfg, &clusters(&cfg, 1)[0]));
        let cells: Vec<_> = (3..6).flat_map(|r| (2..5).map(move |c| (r, c))).collect();
        let cfg = sea_with(9, 9, &cells);
        assert!(!single_segment_touch(&cfg, &clusters(&cfg, 1)[0]));
    }
}
