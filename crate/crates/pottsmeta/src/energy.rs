//! Hamiltonian `H(σ) = −#{agreeing edges} − h·N₁(σ)` with `J = 1`.
//!
//! Energies are stored exactly as an integer pair `(edge, ones)` standing for
//! `edge − h·ones`. With `h = num/den` the integer `edge·den − num·ones` is an
//! exact, totally ordered level key.

use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Config, Geom, Move};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub q: u8,
    pub geom: Geom,
    pub h: f64,
    num: i64,
    den: i64,
    /// Set when the field violates `0 < h < 1` or `2/h ∉ ℕ` and the caller
    /// asked to proceed anyway.
    pub assumption_violated: bool,
}

impl Params {
    pub fn new(q: u8, k: usize, l: usize, h: f64) -> Result<Self> {
        let p = Self::unchecked(q, k, l, h)?;
        if p.assumption_violated {
            check_field(h)?;
        }
        Ok(p)
    }

    /// Builds parameters even when the field assumptions fail; the violation
    /// is recorded in `assumption_violated`.
    pub fn unchecked(q: u8, k: usize, l: usize, h: f64) -> Result<Self> {
        if q < 3 {
            return Err(Error::BadSpinCount(q));
        }
        if !h.is_finite() {
            return Err(Error::FieldOutOfRange(h));
        }
        let (geom, _) = Geom::normalized(k, l)?;
        let (num, den) = rational(h);
        Ok(Self { q, geom, h, num, den, assumption_violated: check_field(h).is_err() })
    }

    pub fn with_geom(q: u8, geom: Geom, h: f64) -> Result<Self> {
        Self::new(q, geom.rows(), geom.cols(), h)
    }

    pub fn check(&self, cfg: &Config) -> Result<()> {
        if cfg.geom() != self.geom || cfg.q() != self.q {
            return Err(Error::ShapeMismatch(format!(
                "config is q={} {}x{}, model is q={} {}x{}",
                cfg.q(),
                cfg.geom().rows(),
                cfg.geom().cols(),
                self.q,
                self.geom.rows(),
                self.geom.cols()
            )));
        }
        Ok(())
    }

    /// `h = num/den` exactly (to f64 precision).
    pub fn field_ratio(&self) -> (i64, i64) {
        (self.num, self.den)
    }

    #[inline]
    pub fn level(&self, e: Energy) -> i64 {
        e.edge * self.den - self.num * e.ones
    }

    #[inline]
    pub fn value(&self, e: Energy) -> f64 {
        e.edge as f64 - self.h * e.ones as f64
    }

    /// Converts a level key back to an energy value.
    pub fn level_value(&self, level: i64) -> f64 {
        level as f64 / self.den as f64
    }

    /// ⌈2/h⌉.
    pub fn critical_length(&self) -> usize {
        critical_length_unchecked(self.h)
    }

    /// `ℓ*(ℓ*−1)+1`, the spin-1 count of the critical droplet.
    pub fn critical_size(&self) -> usize {
        let l = self.critical_length();
        l * (l - 1) + 1
    }

    /// `Γ = 4ℓ* − h·k*` as an exact energy.
    pub fn barrier(&self) -> Energy {
        Energy { edge: 4 * self.critical_length() as i64, ones: self.critical_size() as i64 }
    }

    pub fn monochrome(&self, s: u8) -> Result<Config> {
        Config::monochrome(self.geom, self.q, s)
    }
}

fn check_field(h: f64) -> Result<()> {
    if !(h > 0.0 && h < 1.0) {
        return Err(Error::FieldOutOfRange(h));
    }
    let r = 2.0 / h;
    if (r - r.round()).abs() < 1e-9 {
        return Err(Error::DegenerateField(r));
    }
    Ok(())
}

/// ⌈2/h⌉ after validating the field.
pub fn critical_length(h: f64) -> Result<usize> {
    check_field(h)?;
    Ok(critical_length_unchecked(h))
}

fn critical_length_unchecked(h: f64) -> usize {
    let r = 2.0 / h;
    let n = r.round();
    if (r - n).abs() < 1e-9 {
        n as usize
    } else {
        r.ceil() as usize
    }
}

/// Best rational approximation with denominator at most 10⁹.
fn rational(x: f64) -> (i64, i64) {
    const MAX_DEN: i64 = 1_000_000_000;
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        if a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > MAX_DEN {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = y - a as f64;
        if (x - p1 as f64 / q1 as f64).abs() <= 1e-15 * x.abs().max(1.0) || frac.abs() < 1e-18 {
            break;
        }
        y = 1.0 / frac;
    }
    (p1, q1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Energy {
    pub edge: i64,
    pub ones: i64,
}

impl Add for Energy {
    type Output = Energy;
    fn add(self, o: Energy) -> Energy {
        Energy { edge: self.edge + o.edge, ones: self.ones + o.ones }
    }
}

impl Sub for Energy {
    type Output = Energy;
    fn sub(self, o: Energy) -> Energy {
        Energy { edge: self.edge - o.edge, ones: self.ones - o.ones }
    }
}

impl Neg for Energy {
    type Output = Energy;
    fn neg(self) -> Energy {
        Energy { edge: -self.edge, ones: -self.ones }
    }
}

pub fn agreeing_edges(cfg: &Config) -> usize {
    let g = cfg.geom();
    g.edges().filter(|&(a, b)| cfg.get(a) == cfg.get(b)).count()
}

pub fn hamiltonian(cfg: &Config) -> Energy {
    Energy { edge: -(agreeing_edges(cfg) as i64), ones: cfg.count(1) as i64 }
}

/// `H(σ) − H(𝐦) = d_h + d_v − h·N₁` for any monochrome `𝐦` with `m ≠ 1`.
pub fn gap_vs_monochrome(cfg: &Config) -> Energy {
    let g = cfg.geom();
    let disagree = g.edge_count() - agreeing_edges(cfg);
    Energy { edge: disagree as i64, ones: cfg.count(1) as i64 }
}

/// Checked form of [`gap_vs_monochrome`].
pub fn energy_gap_vs_monochrome(p: &Params, cfg: &Config, m: u8) -> Result<f64> {
    p.check(cfg)?;
    if m < 2 || m > p.q {
        return Err(Error::SpinOutOfRange { spin: m, q: p.q });
    }
    Ok(p.value(gap_vs_monochrome(cfg)))
}

/// `H(σ^{v,s}) − H(σ)` from the four neighbors of `v`.
#[inline]
pub fn delta(cfg: &Config, v: usize, s: u8) -> Energy {
    let old = cfg.get(v);
    let mut edge = 0i64;
    for w in cfg.geom().neighbors(v) {
        let x = cfg.get(w);
        edge += (x == old) as i64 - (x == s) as i64;
    }
    Energy { edge, ones: (s == 1) as i64 - (old == 1) as i64 }
}

pub fn energy_delta(p: &Params, cfg: &Config, m: Move) -> f64 {
    p.value(delta(cfg, m.vertex, m.spin))
}

pub fn acceptance_prob(beta: f64, delta: f64) -> f64 {
    if delta <= 0.0 {
        1.0
    } else {
        (-beta * delta).exp()
    }
}

/// Metropolis acceptance for every possible single-site delta
/// (`edge ∈ −4..=4`, `ones ∈ −1..=1`).
#[derive(Debug, Clone)]
pub struct AcceptanceTable {
    table: [[f64; 3]; 9],
}

impl AcceptanceTable {
    pub fn new(p: &Params, beta: f64) -> Self {
        let mut table = [[0.0; 3]; 9];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                let e = Energy { edge: i as i64 - 4, ones: j as i64 - 1 };
                *x = acceptance_prob(beta, p.value(e));
            }
        }
        Self { table }
    }

    #[inline]
    pub fn get(&self, d: Energy) -> f64 {
        self.table[(d.edge + 4) as usize][(d.ones + 1) as usize]
    }
}
