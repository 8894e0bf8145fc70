//! Explicit paths: the spiral reference path `𝐦 → 𝟏`, the meta-to-meta
//! path `𝐦 → 𝟏 → 𝐳`, and escape paths from local minima that reach a lower
//! energy without climbing more than 2.

use serde::Serialize;

use crate::energy::{delta, hamiltonian, Energy, Params};
use crate::error::{Error, Result};
use crate::geometry::clusters::{Cluster, ClusterMap};
use crate::geometry::minima::{local_min_class, MinClass};
use crate::lattice::{Config, Move};

#[derive(Debug, Clone, Serialize)]
pub struct PathProfile {
    #[serde(skip)]
    pub start: Config,
    pub moves: Vec<Move>,
    /// Spin at each move's vertex before the move.
    pub previous: Vec<u8>,
    /// `H(ω_i)` for `i = 0..=moves.len()`.
    pub energies: Vec<Energy>,
    pub height: Energy,
    /// Indices where the height is attained.
    pub argmax: Vec<usize>,
    /// How the path was produced.
    pub construction: &'static str,
}

impl PathProfile {
    /// Replays `moves` from `start`, rejecting no-op moves.
    pub fn from_moves(p: &Params, start: Config, moves: Vec<Move>, construction: &'static str) -> Result<Self> {
        p.check(&start)?;
        let mut cur = start.clone();
        let mut e = hamiltonian(&cur);
        let mut energies = vec![e];
        let mut previous = Vec::with_capacity(moves.len());
        for &m in &moves {
            Move::new(&cur, m.vertex, m.spin)?;
            e = e + delta(&cur, m.vertex, m.spin);
            previous.push(cur.get(m.vertex));
            cur.apply_mut(m);
            energies.push(e);
        }
        let top = energies.iter().map(|&x| p.level(x)).max().unwrap();
        let argmax: Vec<usize> = (0..energies.len()).filter(|&i| p.level(energies[i]) == top).collect();
        Ok(Self { height: energies[argmax[0]], start, moves, previous, energies, argmax, construction })
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn states(&self) -> impl Iterator<Item = Config> + '_ {
        let mut cur = self.start.clone();
        let mut first = true;
        let mut i = 0;
        std::iter::from_fn(move || {
            if first {
                first = false;
                return Some(cur.clone());
            }
            let m = self.moves.get(i)?;
            i += 1;
            cur.apply_mut(*m);
            Some(cur.clone())
        })
    }

    pub fn end(&self) -> Config {
        let mut cur = self.start.clone();
        for &m in &self.moves {
            cur.apply_mut(m);
        }
        cur
    }

    /// `H(ω_i) − H(ω_0)` for every step.
    pub fn relative_values(&self, p: &Params) -> Vec<f64> {
        self.energies.iter().map(|&e| p.value(e - self.energies[0])).collect()
    }

    /// `Φ_ω − H(ω_0)`.
    pub fn relative_height(&self, p: &Params) -> f64 {
        p.value(self.height - self.energies[0])
    }

    /// Time reversal: inverse moves in reverse order.
    pub fn reversed(&self, p: &Params) -> Result<Self> {
        let moves = self
            .moves
            .iter()
            .zip(&self.previous)
            .rev()
            .map(|(m, &prev)| Move { vertex: m.vertex, spin: prev })
            .collect();
        Self::from_moves(p, self.end(), moves, self.construction)
    }

    /// `self` followed by `other`; `other` must start where `self` ends.
    pub fn concat(&self, p: &Params, other: &PathProfile, construction: &'static str) -> Result<Self> {
        if self.end() != other.start {
            return Err(Error::Invalid("paths do not meet".into()));
        }
        let moves = self.moves.iter().chain(&other.moves).copied().collect();
        Self::from_moves(p, self.start.clone(), moves, construction)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Spiral {
    Clockwise,
    CounterClockwise,
}

/// Offsets of the first `n` cells of a square spiral around the origin:
/// right, down, left, left, up, up, right ×3, down ×3, …
pub fn spiral_offsets(n: usize, orientation: Spiral) -> Vec<(i64, i64)> {
    let mut out = Vec::with_capacity(n);
    let (mut r, mut c) = (0i64, 0i64);
    let dirs = [(0, 1), (1, 0), (0, -1), (-1, 0)];
    let mut d = 0;
    let mut run = 1;
    out.push((r, c));
    'outer: loop {
        for _ in 0..2 {
            for _ in 0..run {
                if out.len() >= n {
                    break 'outer;
                }
                r += dirs[d].0;
                c += dirs[d].1;
                out.push((r, c));
            }
            d = (d + 1) % 4;
        }
        run += 1;
    }
    out.truncate(n);
    if orientation == Spiral::CounterClockwise {
        for x in out.iter_mut() {
            x.1 = -x.1;
        }
    }
    out
}

/// Reference path `𝐦 → 𝟏`: a spiral droplet grown around `anchor` up to a
/// `(K−1)×(K−1)` square, then the missing row segment, then the remaining
/// columns one at a time, each from top to bottom.
pub fn build_reference_path(p: &Params, m: u8, anchor: (usize, usize), orientation: Spiral) -> Result<PathProfile> {
    if m < 2 || m > p.q {
        return Err(Error::SpinOutOfRange { spin: m, q: p.q });
    }
    let g = p.geom;
    let (k, l) = (g.rows(), g.cols());
    if anchor.0 >= k || anchor.1 >= l {
        return Err(Error::VertexOutOfRange { row: anchor.0, col: anchor.1, k, l });
    }
    let wrap = |x: i64, n: usize| x.rem_euclid(n as i64) as usize;
    let side = k - 1;
    let offsets = spiral_offsets(side * side, orientation);
    let mut cells: Vec<(usize, usize)> =
        offsets.iter().map(|&(dr, dc)| (wrap(anchor.0 as i64 + dr, k), wrap(anchor.1 as i64 + dc, l))).collect();
    let min_r = offsets.iter().map(|x| x.0).min().unwrap();
    let min_c = offsets.iter().map(|x| x.1).min().unwrap();
    let row0 = wrap(anchor.0 as i64 + min_r, k);
    let col0 = wrap(anchor.1 as i64 + min_c, l);
    let missing_row = (row0 + side) % k;
    for j in 0..side {
        cells.push((missing_row, (col0 + j) % l));
    }
    for j in side..l {
        for i in 0..k {
            cells.push((i, (col0 + j) % l));
        }
    }
    let moves = cells.into_iter().map(|(r, c)| Move { vertex: g.index(r, c), spin: 1 }).collect();
    PathProfile::from_moves(p, p.monochrome(m)?, moves, "reference")
}

/// `ω* = (𝐦 → 𝟏)` followed by the time reversal of `(𝐳 → 𝟏)`.
pub fn build_meta_meta_path(p: &Params, m: u8, z: u8) -> Result<PathProfile> {
    if m == z || m < 2 || z < 2 {
        return Err(Error::Invalid(format!("meta-to-meta path needs distinct m, z >= 2, got {m}, {z}")));
    }
    let up = build_reference_path(p, m, (0, 0), Spiral::Clockwise)?;
    let down = build_reference_path(p, z, (0, 0), Spiral::Clockwise)?.reversed(p)?;
    up.concat(p, &down, "meta-meta")
}

/// Flips `order` one at a time, each to its target spin, stopping as soon as
/// the energy drops strictly below the start. Succeeds when that happens
/// without climbing more than 2 above the start.
fn try_sequence(p: &Params, eta: &Config, order: &[(usize, u8)]) -> Option<Vec<Move>> {
    let limit = p.level(Energy { edge: 2, ones: 0 });
    let mut cur = eta.clone();
    let mut level = 0i64;
    let mut moves = Vec::new();
    for &(v, s) in order {
        if cur.get(v) == s {
            continue;
        }
        level += p.level(delta(&cur, v, s));
        if level > limit {
            return None;
        }
        cur.set(v, s);
        moves.push(Move { vertex: v, spin: s });
        if level < 0 {
            return Some(moves);
        }
    }
    None
}

#[derive(Clone, Copy)]
enum Side {
    Top,
    Bottom,
    Left,
    Right,
}

const SIDES: [Side; 4] = [Side::Top, Side::Bottom, Side::Left, Side::Right];

/// Lines of the rectangle `c` ordered from `side` inward, each line's cells
/// in increasing (or, with `reverse`, decreasing) order; also the line just
/// outside `side`.
fn lines_from(p: &Params, c: &Cluster, side: Side, reverse: bool) -> Option<(Vec<Vec<usize>>, Vec<usize>)> {
    let g = p.geom;
    let (k, l) = (g.rows(), g.cols());
    let horizontal = matches!(side, Side::Top | Side::Bottom);
    if (horizontal && c.wraps_rows) || (!horizontal && c.wraps_cols) {
        return None;
    }
    let (along, across, n_along, n_across) = if horizontal { (c.cols, c.rows, l, k) } else { (c.rows, c.cols, k, l) };
    let cell = |line: usize, t: usize| if horizontal { g.index(line, t) } else { g.index(t, line) };
    let mut line_ids: Vec<usize> = (0..across.len).map(|i| across.at(i, n_across)).collect();
    if matches!(side, Side::Bottom | Side::Right) {
        line_ids.reverse();
    }
    let mut pos: Vec<usize> = (0..along.len).map(|i| along.at(i, n_along)).collect();
    if reverse {
        pos.reverse();
    }
    let lines = line_ids.iter().map(|&li| pos.iter().map(|&t| cell(li, t)).collect()).collect();
    let outside_line = if matches!(side, Side::Top | Side::Left) {
        (across.start + n_across - 1) % n_across
    } else {
        (across.last(n_across) + 1) % n_across
    };
    let outside = pos.iter().map(|&t| cell(outside_line, t)).collect();
    Some((lines, outside))
}

fn erosions(p: &Params, eta: &Config, c: &Cluster) -> Vec<Vec<(usize, u8)>> {
    let mut out = Vec::new();
    for side in SIDES {
        for reverse in [false, true] {
            let Some((lines, outside)) = lines_from(p, c, side, reverse) else { continue };
            let mut targets: Vec<u8> = outside.iter().map(|&v| eta.get(v)).filter(|&s| s != c.spin).collect();
            targets.sort_unstable();
            targets.dedup();
            for s in targets {
                out.push(lines.iter().flatten().map(|&v| (v, s)).collect());
            }
        }
    }
    out
}

fn growths(p: &Params, eta: &Config, c: &Cluster) -> Vec<Vec<(usize, u8)>> {
    let mut out = Vec::new();
    for side in SIDES {
        for reverse in [false, true] {
            let Some((_, outside)) = lines_from(p, c, side, reverse) else { continue };
            if outside.iter().any(|&v| eta.get(v) == c.spin) {
                continue;
            }
            out.push(outside.iter().map(|&v| (v, c.spin)).collect());
        }
    }
    out
}

/// Side length of `c` parallel to `side`.
fn side_length(c: &Cluster, side: Side) -> usize {
    match side {
        Side::Top | Side::Bottom => c.width(),
        Side::Left | Side::Right => c.height(),
    }
}

/// Certifies `V_η ≤ 2` for a local minimum or stable plateau of class 2–4
/// by an explicit path to a strictly lower energy with height at most
/// `H(η) + 2`.
pub fn build_escape_path(p: &Params, eta: &Config) -> Result<PathProfile> {
    p.check(eta)?;
    let class = local_min_class(p, eta).class;
    let class = match class {
        Some(c @ (MinClass::M2 | MinClass::M3 | MinClass::M4 | MinClass::Plateau)) => c,
        _ => return Err(Error::Invalid(format!("no escape construction for class {class:?}"))),
    };
    let map = ClusterMap::new(eta);
    let ls = p.critical_length();
    let mut candidates: Vec<(&'static str, Vec<(usize, u8)>)> = Vec::new();
    match class {
        MinClass::M2 => {
            let mut seqs: Vec<Vec<(usize, u8)>> =
                map.clusters.iter().filter(|c| c.spin != 1).flat_map(|c| erosions(p, eta, c)).collect();
            // Eroding into a 1-strip gains the field along the way.
            seqs.sort_by_key(|seq| seq.first().is_none_or(|x| x.1 != 1));
            candidates.extend(seqs.into_iter().map(|seq| ("strip erosion", seq)));
        }
        MinClass::M3 => {
            for c in map.clusters.iter().filter(|c| c.spin == 1 && !c.is_strip()) {
                let short = c.height().min(c.width());
                for side in SIDES {
                    for reverse in [false, true] {
                        let Some((lines, outside)) = lines_from(p, c, side, reverse) else { continue };
                        let len = side_length(c, side);
                        if short < ls && len == short {
                            let sea = eta.get(outside[0]);
                            candidates.push(("subcritical shrink", lines.iter().flatten().map(|&v| (v, sea)).collect()));
                        } else if short >= ls && len >= ls {
                            candidates.push(("supercritical growth", outside.iter().map(|&v| (v, 1)).collect()));
                        }
                    }
                }
            }
        }
        _ => {}
    }
    for c in &map.clusters {
        if !c.is_rectangle() {
            continue;
        }
        for seq in erosions(p, eta, c) {
            candidates.push(("rectangle erosion", seq));
        }
        if c.spin == 1 {
            for seq in growths(p, eta, c) {
                candidates.push(("rectangle growth", seq));
            }
        }
    }
    for (name, seq) in candidates {
        if let Some(moves) = try_sequence(p, eta, &seq) {
            return PathProfile::from_moves(p, eta.clone(), moves, name);
        }
    }
    Err(Error::Invalid("no escape path of height at most 2 found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::shapes::{in_w, in_bbar};

    fn p9() -> Params {
        Params::new(3, 9, 9, 0.9).unwrap()
    }

    #[test]
    fn spiral_shapes() {
        let s = spiral_offsets(9, Spiral::Clockwise);
        assert_eq!(&s[..4], &[(0, 0), (0, 1), (1, 1), (1, 0)]);
        let mut sorted = s.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 9);
        assert!(s.iter().all(|&(r, c)| (-1..=1).contains(&r) && (-1..=1).contains(&c)));
    }

    #[test]
    fn reference_path_profile() {
        let p = p9();
        let path = build_reference_path(&p, 2, (0, 0), Spiral::Clockwise).unwrap();
        assert_eq!(path.len(), 81);
        assert_eq!(path.end(), p.monochrome(1).unwrap());
        for (i, s) in path.states().enumerate() {
            assert_eq!(s.count(1), i);
        }
        assert_eq!(path.argmax, vec![7]);
        assert!((path.relative_height(&p) - 5.7).abs() < 1e-12);
        let w: Vec<usize> = path.states().enumerate().filter(|(_, s)| in_w(&p, s, 2)).map(|(i, _)| i).collect();
        assert_eq!(w, vec![7]);
        let rel = path.relative_values(&p);
        let h = p.h;
        for ell in 2..=7usize {
            let lf = ell as f64;
            let quasi = ell * (ell - 1) + 1;
            assert!((rel[quasi] - (4.0 * lf - h * lf * lf + h * lf - h)).abs() < 1e-9);
            let square = ell * ell + 1;
            assert!((rel[square] - (4.0 * lf - h * lf * lf + 2.0 - h)).abs() < 1e-9);
        }
    }

    #[test]
    fn reference_path_any_anchor_and_orientation() {
        let p = Params::new(4, 7, 10, 0.55).unwrap();
        for anchor in [(0, 0), (3, 9), (6, 4)] {
            for o in [Spiral::Clockwise, Spiral::CounterClockwise] {
                let path = build_reference_path(&p, 3, anchor, o).unwrap();
                assert_eq!(path.end(), p.monochrome(1).unwrap());
                assert_eq!(path.argmax, vec![p.critical_size()]);
                let rel = path.relative_height(&p);
                assert!((rel - p.value(p.barrier())).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn meta_meta_path() {
        let p = p9();
        let path = build_meta_meta_path(&p, 2, 3).unwrap();
        assert_eq!(path.len(), 162);
        assert_eq!(path.end(), p.monochrome(3).unwrap());
        assert!(path.states().any(|s| s == p.monochrome(1).unwrap()));
        assert_eq!(path.argmax.len(), 2);
        let states: Vec<Config> = path.states().collect();
        let (a, b) = (&states[path.argmax[0]], &states[path.argmax[1]]);
        assert!(in_w(&p, a, 2) && in_w(&p, b, 3));
        assert!((path.relative_height(&p) - 5.7).abs() < 1e-12);
        assert!(build_meta_meta_path(&p, 2, 2).is_err());
    }

    #[test]
    fn escape_paths_follow_the_constructions() {
        let p = p9();
        let g = p.geom;
        let mut strips = p.monochrome(2).unwrap();
        for r in 0..9 {
            for c in 0..3 {
                strips.set(g.index(r, c), 1);
            }
            for c in 3..6 {
                strips.set(g.index(r, c), 3);
            }
        }
        let path = build_escape_path(&p, &strips).unwrap();
        let rel = path.relative_values(&p);
        assert!((rel[1] - (2.0 - p.h)).abs() < 1e-12, "{rel:?}");
        assert!(rel.last().unwrap() < &0.0);

        let mut sq = p.monochrome(2).unwrap();
        for r in 2..6 {
            for c in 2..6 {
                sq.set(g.index(r, c), 1);
            }
        }
        let path = build_escape_path(&p, &sq).unwrap();
        assert_eq!(path.construction, "supercritical growth");
        assert!((path.relative_height(&p) - (2.0 - p.h)).abs() < 1e-12);

        let mut sq = p.monochrome(2).unwrap();
        for r in 2..4 {
            for c in 2..4 {
                sq.set(g.index(r, c), 1);
            }
        }
        let path = build_escape_path(&p, &sq).unwrap();
        assert_eq!(path.construction, "subcritical shrink");
        assert!((path.relative_height(&p) - p.h).abs() < 1e-12);
        let mid: Vec<Config> = path.states().collect();
        assert!(in_bbar(&mid[1], 1, 2, 1, 2, 1));
    }

    #[test]
    fn reversal_round_trip() {
        let p = Params::new(3, 3, 3, 0.9).unwrap();
        let path = build_reference_path(&p, 2, (1, 1), Spiral::Clockwise).unwrap();
        let back = path.reversed(&p).unwrap().reversed(&p).unwrap();
        assert_eq!(back.moves, path.moves);
        assert_eq!(back.energies, path.energies);
    }
}
