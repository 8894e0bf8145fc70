//! Droplet shapes in two-spin configurations: rectangles `R̄_{a,b}`,
//! rectangles with a bar `B̄^l_{a,b}`, strips, the gate sets `W`, `W′`, the
//! sets `D^m`, `F(D^m)` and the tube of typical trajectories.
//!
//! All predicates are invariant under translations and under swapping rows
//! with columns. `R̄_{a,b}` has width `a` and height `b`; `B̄^l_{a,b}` is read
//! as `a` full lines of length `b` plus one adjacent line holding a
//! contiguous bar of length `l < b`.

use serde::Serialize;

use crate::energy::Params;
use crate::geometry::clusters::{clusters, cyclic_cover, single_segment_touch, Interval};
use crate::lattice::Config;

/// Indicator of one spin value, possibly viewed with rows and columns swapped.
#[derive(Debug, Clone)]
pub struct Mask {
    k: usize,
    l: usize,
    bits: Vec<bool>,
    n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BarShape {
    /// Number of full lines.
    pub lines: usize,
    /// Length of each full line.
    pub length: usize,
    /// Cells in the partial line.
    pub bar: usize,
}

impl Mask {
    pub fn of(cfg: &Config, s: u8) -> Self {
        let g = cfg.geom();
        let bits: Vec<bool> = cfg.spins().iter().map(|&x| x == s).collect();
        let n = bits.iter().filter(|&&b| b).count();
        Self { k: g.rows(), l: g.cols(), bits, n }
    }

    pub fn transposed(&self) -> Self {
        let mut bits = vec![false; self.bits.len()];
        for r in 0..self.k {
            for c in 0..self.l {
                bits[c * self.k + r] = self.bits[r * self.l + c];
            }
        }
        Self { k: self.l, l: self.k, bits, n: self.n }
    }

    pub fn count(&self) -> usize {
        self.n
    }

    fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.l + c]
    }

    fn column(&self, c: usize) -> Vec<bool> {
        (0..self.k).map(|r| self.get(r, c)).collect()
    }

    fn col_counts(&self) -> Vec<usize> {
        (0..self.l).map(|c| (0..self.k).filter(|&r| self.get(r, c)).count()).collect()
    }

    fn row_cover(&self) -> Interval {
        let occ: Vec<bool> = (0..self.k).map(|r| (0..self.l).any(|c| self.get(r, c))).collect();
        cyclic_cover(&occ)
    }

    fn col_cover(&self) -> Interval {
        let occ: Vec<bool> = (0..self.l).map(|c| (0..self.k).any(|r| self.get(r, c))).collect();
        cyclic_cover(&occ)
    }

    /// `(height, width)` when the set is exactly a (possibly wrapping)
    /// rectangle.
    pub fn rectangle(&self) -> Option<(usize, usize)> {
        if self.n == 0 {
            return None;
        }
        let (h, w) = (self.row_cover().len, self.col_cover().len);
        (self.n == h * w).then_some((h, w))
    }

    /// Full columns of equal extent plus one adjacent partial column whose
    /// cells are contiguous.
    pub fn column_bar(&self) -> Option<BarShape> {
        if self.n == 0 {
            return None;
        }
        let rows = self.row_cover();
        let cols = self.col_cover();
        let (h, w) = (rows.len, cols.len);
        if w < 2 || h < 2 {
            return None;
        }
        let counts = self.col_counts();
        let candidates: Vec<usize> = if w < self.l {
            vec![cols.start, cols.last(self.l)]
        } else {
            (0..self.l).filter(|&c| counts[c] != h).collect()
        };
        for p in candidates {
            let bar = counts[p];
            if bar == 0 || bar >= h {
                continue;
            }
            let others_full = (0..w).map(|i| cols.at(i, self.l)).filter(|&c| c != p).all(|c| counts[c] == h);
            if !others_full {
                continue;
            }
            let column = self.column(p);
            let contiguous = if h == self.k {
                cyclic_cover(&column).len == bar
            } else {
                let offs: Vec<usize> = (0..self.k).filter(|&r| column[r]).filter_map(|r| rows.offset(r, self.k)).collect();
                offs.len() == bar && offs.iter().max().unwrap() - offs.iter().min().unwrap() + 1 == bar
            };
            if contiguous {
                return Some(BarShape { lines: w - 1, length: h, bar });
            }
        }
        None
    }

    /// A band of full columns, possibly with a contiguous bar in one adjacent
    /// column: `(thickness, bar length)`.
    pub fn column_strip(&self) -> Option<(usize, usize)> {
        let counts = self.col_counts();
        let full: Vec<bool> = counts.iter().map(|&c| c == self.k).collect();
        let band = cyclic_cover(&full);
        let t = full.iter().filter(|&&f| f).count();
        if t == 0 || band.len != t {
            return None;
        }
        if t == self.l {
            return Some((t, 0));
        }
        let partial: Vec<usize> = (0..self.l).filter(|&c| counts[c] > 0 && !full[c]).collect();
        match partial[..] {
            [] => Some((t, 0)),
            [p] => {
                let adjacent = p == (band.start + self.l - 1) % self.l || p == (band.last(self.l) + 1) % self.l;
                (adjacent && cyclic_cover(&self.column(p)).len == counts[p]).then_some((t, counts[p]))
            }
            _ => None,
        }
    }

    fn views(&self) -> [Mask; 2] {
        [self.clone(), self.transposed()]
    }
}

/// Every spin is `m` or 1.
pub fn is_two_spin(cfg: &Config, m: u8) -> bool {
    cfg.spins().iter().all(|&s| s == m || s == 1)
}

/// `σ ∈ R̄_{a,b}(r, s)`, either orientation.
pub fn in_rbar(cfg: &Config, a: usize, b: usize, r: u8, s: u8) -> bool {
    if r == s || !cfg.spins().iter().all(|&x| x == r || x == s) {
        return false;
    }
    match Mask::of(cfg, s).rectangle() {
        Some((h, w)) => (w, h) == (a, b) || (w, h) == (b, a),
        None => false,
    }
}

/// `σ ∈ B̄^l_{a,b}(r, s)`, either orientation.
pub fn in_bbar(cfg: &Config, a: usize, b: usize, l: usize, r: u8, s: u8) -> bool {
    if r == s || !cfg.spins().iter().all(|&x| x == r || x == s) {
        return false;
    }
    let want = BarShape { lines: a, length: b, bar: l };
    Mask::of(cfg, s).views().iter().any(|v| v.column_bar() == Some(want))
}

fn bar_shapes(mask: &Mask) -> Vec<(BarShape, bool)> {
    mask.views()
        .iter()
        .filter_map(|v| v.column_bar().map(|b| (b, b.length < v.k)))
        .collect()
}

/// Vertical 1-strip of thickness at least `ℓ*`, optionally with a bar.
pub fn in_strip_v(p: &Params, cfg: &Config, m: u8) -> bool {
    is_two_spin(cfg, m) && Mask::of(cfg, 1).column_strip().is_some_and(|(t, _)| t >= p.critical_length())
}

pub fn in_strip_h(p: &Params, cfg: &Config, m: u8) -> bool {
    is_two_spin(cfg, m) && Mask::of(cfg, 1).transposed().column_strip().is_some_and(|(t, _)| t >= p.critical_length())
}

/// Quasi-square `(ℓ*−1)×ℓ*` of 1s with a unit protuberance on a longest side.
pub fn in_w(p: &Params, cfg: &Config, m: u8) -> bool {
    let ls = p.critical_length();
    m != 1 && is_two_spin(cfg, m) && has_bar_shape(cfg, BarShape { lines: ls - 1, length: ls, bar: 1 })
}

/// Quasi-square with the protuberance on a shortest side.
pub fn in_w_prime(p: &Params, cfg: &Config, m: u8) -> bool {
    let ls = p.critical_length();
    m != 1 && is_two_spin(cfg, m) && has_bar_shape(cfg, BarShape { lines: ls, length: ls - 1, bar: 1 })
}

fn has_bar_shape(cfg: &Config, want: BarShape) -> bool {
    bar_shapes(&Mask::of(cfg, 1)).iter().any(|&(b, planar)| planar && b == want)
}

/// `N_m(σ) = |Λ| − k*`.
pub fn in_d(p: &Params, cfg: &Config, m: u8) -> bool {
    cfg.count(m) + p.critical_size() == cfg.geom().size()
}

/// Bottom of `D^m`: the remaining `k*` sites are one 1-cluster of perimeter
/// `4ℓ*`.
pub fn in_fd(p: &Params, cfg: &Config, m: u8) -> bool {
    if !in_d(p, cfg, m) || cfg.count(1) != p.critical_size() {
        return false;
    }
    let ones = clusters(cfg, 1);
    ones.len() == 1 && ones[0].perimeter == 4 * p.critical_length()
}

/// `in_fd` and the droplet meets some side of its surrounding rectangle in a
/// single unit segment.
pub fn fd_single_touch(p: &Params, cfg: &Config, m: u8) -> bool {
    in_fd(p, cfg, m) && single_segment_touch(cfg, &clusters(cfg, 1)[0])
}

/// Membership in the tube of typical trajectories `𝐦 → 𝟏`: subcritical
/// squares and quasi-squares with their growth bars up to the critical
/// quasi-square, the gate `W`, supercritical rectangles with bars, and
/// strips of thickness at least `ℓ*` with a bar.
pub fn in_tube(p: &Params, cfg: &Config, m: u8) -> bool {
    if m == 1 || !is_two_spin(cfg, m) {
        return false;
    }
    let mask = Mask::of(cfg, 1);
    if mask.count() == 0 {
        return true;
    }
    let ls = p.critical_length();
    let (k, l) = (cfg.geom().rows(), cfg.geom().cols());
    if mask.views().iter().any(|v| v.column_strip().is_some_and(|(t, _)| t >= ls)) {
        return true;
    }
    if let Some((h, w)) = mask.rectangle() {
        if h < k && w < l {
            let (a, b) = (h.min(w), h.max(w));
            if (b - a <= 1 && b <= ls) || a >= ls {
                return true;
            }
        }
    }
    bar_shapes(&mask).iter().any(|&(s, planar)| {
        planar
            && ((s.lines + 1 == s.length && s.length <= ls)
                || (s.lines == s.length && s.length < ls)
                || (s.lines >= ls && s.length >= ls))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum ShapeClass {
    WGate { m: u8 },
    WPrimeGate { m: u8 },
    FdSet { m: u8 },
    Rbar { a: usize, b: usize, r: u8, s: u8 },
    Bbar { a: usize, b: usize, l: usize, r: u8, s: u8 },
    VStrip { m: u8 },
    HStrip { m: u8 },
    DSet { m: u8 },
    TubeMember { m: u8 },
    None,
}

/// Every predicate evaluated on one configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeReport {
    pub class: ShapeClass,
    pub spins_present: Vec<u8>,
    pub rbar: Option<ShapeClass>,
    pub bbar: Option<ShapeClass>,
    pub strip_v: Vec<u8>,
    pub strip_h: Vec<u8>,
    pub w_gate: Vec<u8>,
    pub w_prime_gate: Vec<u8>,
    pub d_set: Vec<u8>,
    pub fd_set: Vec<u8>,
    pub tube: Vec<u8>,
}

pub fn shape_class(p: &Params, cfg: &Config) -> ShapeReport {
    let spins_present: Vec<u8> = (1..=cfg.q()).filter(|&s| cfg.count(s) > 0).collect();
    let sea_spins: Vec<u8> = (2..=cfg.q()).collect();
    let pick = |f: &dyn Fn(u8) -> bool| sea_spins.iter().copied().filter(|&m| f(m)).collect::<Vec<u8>>();
    let w_gate = pick(&|m| in_w(p, cfg, m));
    let w_prime_gate = pick(&|m| in_w_prime(p, cfg, m));
    let d_set = pick(&|m| in_d(p, cfg, m));
    let fd_set = pick(&|m| in_fd(p, cfg, m));
    let tube = pick(&|m| in_tube(p, cfg, m));
    let strip_v = pick(&|m| in_strip_v(p, cfg, m));
    let strip_h = pick(&|m| in_strip_h(p, cfg, m));

    let mut rbar = None;
    let mut bbar = None;
    if let [x, y] = spins_present[..] {
        // Prefer the 1s as the droplet.
        for (r, s) in [(y, x), (x, y)] {
            let mask = Mask::of(cfg, s);
            if rbar.is_none() {
                if let Some((h, w)) = mask.rectangle() {
                    rbar = Some(ShapeClass::Rbar { a: w, b: h, r, s });
                }
            }
            if bbar.is_none() {
                if let Some((b, _)) = bar_shapes(&mask).first() {
                    bbar = Some(ShapeClass::Bbar { a: b.lines, b: b.length, l: b.bar, r, s });
                }
            }
        }
    }
    let class = if let Some(&m) = w_gate.first() {
        ShapeClass::WGate { m }
    } else if let Some(&m) = w_prime_gate.first() {
        ShapeClass::WPrimeGate { m }
    } else if let Some(&m) = fd_set.first() {
        ShapeClass::FdSet { m }
    } else if let Some(r) = rbar {
        r
    } else if let Some(b) = bbar {
        b
    } else if let Some(&m) = strip_v.first() {
        ShapeClass::VStrip { m }
    } else if let Some(&m) = strip_h.first() {
        ShapeClass::HStrip { m }
    } else if let Some(&m) = d_set.first() {
        ShapeClass::DSet { m }
    } else if let Some(&m) = tube.first() {
        ShapeClass::TubeMember { m }
    } else {
        ShapeClass::None
    };
    ShapeReport { class, spins_present, rbar, bbar, strip_v, strip_h, w_gate, w_prime_gate, d_set, fd_set, tube }
}
