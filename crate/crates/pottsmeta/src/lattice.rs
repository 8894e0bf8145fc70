//! The K×L periodic grid, spin configurations and single-site moves.
//!
//! Vertices are indexed row-major: `(row, col) ↦ row·L + col`. The canonical
//! integer encoding of a configuration reads the spins as base-q digits
//! `spin − 1`, least significant digit at vertex 0.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Geom {
    k: usize,
    l: usize,
}

impl Geom {
    /// Builds a `k`×`l` torus; sides below 3 would create parallel edges.
    pub fn new(k: usize, l: usize) -> Result<Self> {
        if k < 3 || l < 3 {
            return Err(Error::LatticeTooSmall { k, l });
        }
        Ok(Self { k, l })
    }

    /// Like [`Geom::new`] but swaps the sides so that `L ≥ K`; the flag
    /// reports whether a swap happened.
    pub fn normalized(k: usize, l: usize) -> Result<(Self, bool)> {
        if k > l {
            Ok((Self::new(l, k)?, true))
        } else {
            Ok((Self::new(k, l)?, false))
        }
    }

    pub fn rows(&self) -> usize {
        self.k
    }

    pub fn cols(&self) -> usize {
        self.l
    }

    pub fn size(&self) -> usize {
        self.k * self.l
    }

    pub fn edge_count(&self) -> usize {
        2 * self.k * self.l
    }

    pub fn index(&self, row: usize, col: usize) -> usize {
        row * self.l + col
    }

    pub fn checked_index(&self, row: usize, col: usize) -> Result<usize> {
        if row >= self.k || col >= self.l {
            return Err(Error::VertexOutOfRange { row, col, k: self.k, l: self.l });
        }
        Ok(self.index(row, col))
    }

    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v / self.l, v % self.l)
    }

    /// Up, down, left, right.
    #[inline]
    pub fn neighbors(&self, v: usize) -> [usize; 4] {
        let (r, c) = (v / self.l, v % self.l);
        let up = if r == 0 { self.k - 1 } else { r - 1 };
        let down = if r + 1 == self.k { 0 } else { r + 1 };
        let left = if c == 0 { self.l - 1 } else { c - 1 };
        let right = if c + 1 == self.l { 0 } else { c + 1 };
        [up * self.l + c, down * self.l + c, r * self.l + left, r * self.l + right]
    }

    /// Coordinate form of [`Geom::neighbors`] with range checking.
    pub fn neighbors_of(&self, row: usize, col: usize) -> Result<[(usize, usize); 4]> {
        let v = self.checked_index(row, col)?;
        Ok(self.neighbors(v).map(|w| self.coords(w)))
    }

    /// Each undirected edge once: `(v, right(v))` and `(v, down(v))`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size()).flat_map(move |v| {
            let n = self.neighbors(v);
            [(v, n[3]), (v, n[1])]
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Config {
    geom: Geom,
    q: u8,
    spins: Vec<u8>,
}

impl Config {
    pub fn new(geom: Geom, q: u8, spins: Vec<u8>) -> Result<Self> {
        if q < 3 {
            return Err(Error::BadSpinCount(q));
        }
        if spins.len() != geom.size() {
            return Err(Error::ShapeMismatch(format!(
                "{} spins for a {}x{} lattice",
                spins.len(),
                geom.rows(),
                geom.cols()
            )));
        }
        if let Some(&spin) = spins.iter().find(|&&s| s == 0 || s > q) {
            return Err(Error::SpinOutOfRange { spin, q });
        }
        Ok(Self { geom, q, spins })
    }

    pub fn monochrome(geom: Geom, q: u8, s: u8) -> Result<Self> {
        if s == 0 || s > q {
            return Err(Error::SpinOutOfRange { spin: s, q });
        }
        Self::new(geom, q, vec![s; geom.size()])
    }

    pub fn geom(&self) -> Geom {
        self.geom
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn spins(&self) -> &[u8] {
        &self.spins
    }

    pub(crate) fn spins_mut(&mut self) -> &mut [u8] {
        &mut self.spins
    }

    #[inline]
    pub fn get(&self, v: usize) -> u8 {
        self.spins[v]
    }

    pub fn at(&self, row: usize, col: usize) -> u8 {
        self.spins[self.geom.index(row, col)]
    }

    /// Unchecked in-place update; callers keep labels within range.
    #[inline]
    pub fn set(&mut self, v: usize, s: u8) {
        debug_assert!(s >= 1 && s <= self.q);
        self.spins[v] = s;
    }

    pub fn count(&self, s: u8) -> usize {
        self.spins.iter().filter(|&&x| x == s).count()
    }

    pub fn is_monochrome(&self) -> Option<u8> {
        let s = self.spins[0];
        self.spins.iter().all(|&x| x == s).then_some(s)
    }

    pub fn apply(&self, m: Move) -> Config {
        let mut out = self.clone();
        out.spins[m.vertex] = m.spin;
        out
    }

    pub fn apply_mut(&mut self, m: Move) {
        self.spins[m.vertex] = m.spin;
    }

    pub fn hamming(&self, other: &Config) -> usize {
        self.spins.iter().zip(&other.spins).filter(|(a, b)| a != b).count()
    }

    /// Canonical base-q encoding, or `None` when it overflows 64 bits.
    pub fn encode(&self) -> Option<u64> {
        let q = self.q as u64;
        let mut code: u64 = 0;
        for &s in self.spins.iter().rev() {
            code = code.checked_mul(q)?.checked_add((s - 1) as u64)?;
        }
        Some(code)
    }

    pub fn decode(geom: Geom, q: u8, mut code: u64) -> Result<Self> {
        let mut spins = Vec::with_capacity(geom.size());
        for _ in 0..geom.size() {
            spins.push((code % q as u64) as u8 + 1);
            code /= q as u64;
        }
        if code != 0 {
            return Err(Error::Invalid("code exceeds q^(KL)".into()));
        }
        Self::new(geom, q, spins)
    }

    /// Swaps rows and columns.
    pub fn transposed(&self) -> Config {
        let g = Geom { k: self.geom.l, l: self.geom.k };
        let mut spins = vec![0; g.size()];
        for r in 0..self.geom.k {
            for c in 0..self.geom.l {
                spins[g.index(c, r)] = self.spins[self.geom.index(r, c)];
            }
        }
        Config { geom: g, q: self.q, spins }
    }

    /// Parses the snapshot format: a header `q K L`, then K rows of L spins.
    /// Inputs with `K > L` are transposed so that `L ≥ K`.
    pub fn from_snapshot(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty snapshot".into()))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header token {t:?}"))))
            .collect::<Result<_>>()?;
        let [q, k, l] = nums[..] else {
            return Err(Error::Parse("header must be `q K L`".into()));
        };
        if q > u8::MAX as usize {
            return Err(Error::Parse(format!("q={q} too large")));
        }
        let mut spins = Vec::with_capacity(k * l);
        for r in 0..k {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing row {r}")))?;
            let row: Vec<u8> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad spin {t:?} in row {r}"))))
                .collect::<Result<_>>()?;
            if row.len() != l {
                return Err(Error::Parse(format!("row {r} has {} entries, expected {l}", row.len())));
            }
            spins.extend(row);
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing rows after the last lattice row".into()));
        }
        let cfg = Config::new(Geom::new(k, l)?, q as u8, spins)?;
        Ok(if k > l { cfg.transposed() } else { cfg })
    }

    pub fn to_snapshot(&self) -> String {
        let mut out = format!("{} {} {}\n", self.q, self.geom.k, self.geom.l);
        for r in 0..self.geom.k {
            let row: Vec<String> = (0..self.geom.l).map(|c| self.at(r, c).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_snapshot())
    }
}

/// Serialized as `{"q": q, "rows": ["s s …", …]}`.
impl Serialize for Config {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<String> = (0..self.geom.k)
            .map(|r| (0..self.geom.l).map(|c| self.at(r, c).to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        let mut st = ser.serialize_struct("Config", 2)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

/// A single-site update `σ ↦ σ^{v,s}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub vertex: usize,
    pub spin: u8,
}

impl Move {
    /// Validates against `cfg`: the vertex exists, the label is in range and
    /// differs from the current spin.
    pub fn new(cfg: &Config, vertex: usize, spin: u8) -> Result<Self> {
        if vertex >= cfg.geom.size() {
            let (row, col) = (vertex / cfg.geom.l, vertex % cfg.geom.l);
            return Err(Error::VertexOutOfRange { row, col, k: cfg.geom.k, l: cfg.geom.l });
        }
        if spin == 0 || spin > cfg.q {
            return Err(Error::SpinOutOfRange { spin, q: cfg.q });
        }
        if cfg.get(vertex) == spin {
            return Err(Error::NoOpMove(spin));
        }
        Ok(Self { vertex, spin })
    }

    /// The move undoing `self` when applied to `cfg.apply(self)`.
    pub fn inverse_on(&self, cfg: &Config) -> Move {
        Move { vertex: self.vertex, spin: cfg.get(self.vertex) }
    }
}
