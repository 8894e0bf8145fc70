//! Spectral gap and total-variation mixing time on enumerable lattices.
//!
//! The chain commutes with the spatial symmetries of the torus (translations,
//! reflections, and the transpose on square grids). Lumping over their orbits
//! gives an exact chain on orbit-constant functions, solved densely. The
//! complementary sectors are handled by Lanczos on the full sparse kernel,
//! restricted to vectors with zero orbit averages.
//!
//! Mixing times use powers of the lumped stochastic matrix by repeated
//! squaring, which involves no cancellation. Starting from a single state
//! `x` in orbit `O`, the distance to equilibrium lies between the lumped
//! distance from `O` and that plus `½·√((1 − 1/|O|)/π(x))·λ_⊥^t`, where `λ_⊥`
//! bounds the complementary sectors.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::energy::Params;
use crate::error::{Error, Result};
use crate::landscape::oracle::{Oracle, DEFAULT_CAP};
use crate::lattice::Geom;

/// Largest lumped dimension solved densely.
pub const MAX_ORBITS: usize = 5000;
pub const RESIDUAL_TOL: f64 = 1e-10;
const LANCZOS_MAX_STEPS: usize = 400;
const LANCZOS_SEED: u64 = 0x5eed;

/// Vertex permutations generating the spatial symmetry group.
pub fn spatial_generators(g: Geom) -> Vec<Vec<usize>> {
    let (k, l) = (g.rows(), g.cols());
    let map = |f: &dyn Fn(usize, usize) -> (usize, usize)| -> Vec<usize> {
        (0..g.size())
            .map(|v| {
                let (r, c) = g.coords(v);
                let (r2, c2) = f(r, c);
                g.index(r2, c2)
            })
            .collect()
    };
    let mut gens = vec![
        map(&|r, c| ((r + 1) % k, c)),
        map(&|r, c| (r, (c + 1) % l)),
        map(&|r, c| (k - 1 - r, c)),
        map(&|r, c| (r, l - 1 - c)),
    ];
    if k == l {
        gens.push(map(&|r, c| (c, r)));
    }
    gens
}

/// Orbits of the state space under the spatial symmetries.
#[derive(Debug, Clone)]
pub struct Orbits {
    /// Orbit index of every state.
    pub of: Vec<u32>,
    /// Smallest state index in each orbit.
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

impl Orbits {
    pub fn compute(p: &Params, states: usize) -> Self {
        let (n, q) = (p.geom.size(), p.q as usize);
        let pow: Vec<usize> = (0..n).map(|v| q.pow(v as u32)).collect();
        let gens = spatial_generators(p.geom);
        let mut parent: Vec<u32> = (0..states as u32).collect();
        for idx in 0..states {
            for perm in &gens {
                let mut code = idx;
                let mut img = 0;
                for &target in perm {
                    img += (code % q) * pow[target];
                    code /= q;
                }
                let (a, b) = (find(&mut parent, idx as u32), find(&mut parent, img as u32));
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        let mut of = vec![u32::MAX; states];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for idx in 0..states {
            let root = find(&mut parent, idx as u32) as usize;
            if of[root] == u32::MAX {
                of[root] = reps.len() as u32;
                reps.push(root);
                sizes.push(0);
            }
            of[idx] = of[root];
            sizes[of[idx] as usize] += 1;
        }
        Self { of, reps, sizes }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Replaces `v` by its deviation from the orbit means.
    pub fn remove_means(&self, v: &mut [f64]) {
        let mut sums = vec![0.0; self.len()];
        for (i, x) in v.iter().enumerate() {
            sums[self.of[i] as usize] += x;
        }
        for (i, x) in v.iter_mut().enumerate() {
            let o = self.of[i] as usize;
            *x -= sums[o] / self.sizes[o] as f64;
        }
    }
}

/// Symmetrized kernel `S = D^{1/2} P D^{-1/2}` in compressed rows.
#[derive(Debug, Clone)]
pub struct SparseKernel {
    row_start: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

impl SparseKernel {
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        y.par_iter_mut().enumerate().for_each(|(i, yi)| {
            let r = self.row_start[i]..self.row_start[i + 1];
            *yi = self.cols[r.clone()].iter().zip(&self.vals[r]).map(|(&j, &a)| a * x[j as usize]).sum();
        });
    }

    pub fn len(&self) -> usize {
        self.row_start.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Exhaustive model at one lattice size, reusable across temperatures.
pub struct SpectralModel {
    pub oracle: Oracle,
    pub orbits: Orbits,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    pub beta: f64,
    pub states: usize,
    pub orbits: usize,
    /// `1 − λ₂`.
    pub rho: f64,
    pub lambda2: f64,
    /// Sector holding `λ₂`: `"symmetric"` or `"non-symmetric"`.
    pub lambda2_sector: &'static str,
    /// `‖Sv − λ₂v‖` for the lifted eigenvector.
    pub residual: f64,
    /// Top of the symmetric sector below 1.
    pub symmetric_lambda2: f64,
    /// Largest eigenvalue found off the symmetric sector, with its residual.
    pub nonsymmetric_top: f64,
    pub nonsymmetric_residual: f64,
    pub gamma_tilde: f64,
    /// `ρ·e^{βΓ̃}`.
    pub rho_scaled: f64,
    pub epsilon: f64,
    /// First `t` certified to have worst-start distance at most `ε`.
    pub t_mix: u64,
    /// No `t` below this has worst-start distance at most `ε`.
    pub t_mix_lower: u64,
    /// `log(t_mix) / β`.
    pub log_tmix_over_beta: f64,
}

impl SpectralModel {
    pub fn build(p: &Params) -> Result<Self> {
        let oracle = Oracle::build(p, DEFAULT_CAP)?;
        let orbits = Orbits::compute(p, oracle.space.len());
        if orbits.len() > MAX_ORBITS {
            return Err(Error::Invalid(format!("{} symmetry orbits exceed the dense limit {MAX_ORBITS}", orbits.len())));
        }
        Ok(Self { oracle, orbits })
    }

    pub fn params(&self) -> &Params {
        self.oracle.params()
    }

    /// `Γ̃` as a value.
    pub fn gamma_tilde(&self) -> f64 {
        self.params().level_value(self.oracle.gamma_tilde_sweep)
    }

    /// `β·(H − min H)` for every state.
    fn scaled_levels(&self, beta: f64) -> Vec<f64> {
        let p = self.params();
        self.oracle.space.levels.iter().map(|&l| beta * p.level_value(l - self.oracle.ground_level)).collect()
    }

    fn proposal_weight(&self) -> f64 {
        let p = self.params();
        1.0 / (p.q as f64 * p.geom.size() as f64)
    }

    pub fn kernel(&self, beta: f64) -> SparseKernel {
        let space = &self.oracle.space;
        let e = self.scaled_levels(beta);
        let c = self.proposal_weight();
        let rows: Vec<(Vec<u32>, Vec<f64>)> = (0..space.len())
            .into_par_iter()
            .map(|i| {
                let mut cols = vec![i as u32];
                let mut vals = vec![0.0];
                let mut out = 0.0;
                for j in space.neighbors(i) {
                    let d = e[j] - e[i];
                    out += c * (-d.max(0.0)).exp();
                    cols.push(j as u32);
                    vals.push(c * (-0.5 * d.abs()).exp());
                }
                vals[0] = 1.0 - out;
                (cols, vals)
            })
            .collect();
        let mut row_start = vec![0];
        let (mut cols, mut vals) = (Vec::new(), Vec::new());
        for (c, v) in rows {
            cols.extend(c);
            vals.extend(v);
            row_start.push(cols.len());
        }
        SparseKernel { row_start, cols, vals }
    }

    /// Lumped stochastic matrix and orbit masses `μ̄(O) = |O|·π(x)`.
    pub fn lumped(&self, beta: f64) -> (DMatrix<f64>, Vec<f64>) {
        let space = &self.oracle.space;
        let e = self.scaled_levels(beta);
        let c = self.proposal_weight();
        let k = self.orbits.len();
        let mut pbar = DMatrix::zeros(k, k);
        for (o, &x) in self.orbits.reps.iter().enumerate() {
            let mut out = 0.0;
            for y in space.neighbors(x) {
                let a = c * (-(e[y] - e[x]).max(0.0)).exp();
                pbar[(o, self.orbits.of[y] as usize)] += a;
                out += a;
            }
            pbar[(o, o)] += 1.0 - out;
        }
        let w: Vec<f64> = self.orbits.reps.iter().zip(&self.orbits.sizes).map(|(&x, &s)| s as f64 * (-e[x]).exp()).collect();
        let z: f64 = w.iter().sum();
        (pbar, w.into_iter().map(|x| x / z).collect())
    }

    pub fn analyze(&self, beta: f64, epsilon: f64) -> Result<SpectralReport> {
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::Invalid(format!("beta={beta} must be finite and non-negative")));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::Invalid(format!("epsilon={epsilon} must lie in (0, 1)")));
        }
        let p = *self.params();
        let (pbar, mu) = self.lumped(beta);
        let k = mu.len();
        // By detailed balance `√(μ̄ᵢ/μ̄ⱼ)·P̄ᵢⱼ = √(P̄ᵢⱼ·P̄ⱼᵢ)`; the right side is
        // symmetric to the last bit.
        let sym = DMatrix::from_fn(k, k, |i, j| (pbar[(i, j)] * pbar[(j, i)]).sqrt());
        let eig = SymmetricEigen::new(sym);
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let top = eig.eigenvalues[order[0]];
        if (top - 1.0).abs() > 1e-9 {
            return Err(Error::Invalid(format!("lumped kernel top eigenvalue {top} is not 1")));
        }
        let sym_l2 = if k > 1 { eig.eigenvalues[order[1]] } else { f64::NEG_INFINITY };

        let kernel = self.kernel(beta);
        let (ns_top, ns_res) = self.nonsymmetric_top(&kernel)?;

        let (lambda2, sector, residual) = if k > 1 && sym_l2 >= ns_top {
            let u = eig.eigenvectors.column(order[1]);
            let n = self.oracle.space.len();
            let mut v = vec![0.0; n];
            for (i, x) in v.iter_mut().enumerate() {
                let o = self.orbits.of[i] as usize;
                *x = u[o] / (self.orbits.sizes[o] as f64).sqrt();
            }
            (sym_l2, "symmetric", residual(&kernel, &v, sym_l2))
        } else {
            (ns_top, "non-symmetric", ns_res)
        };
        if !(lambda2 > -1.0 && lambda2 < 1.0) {
            return Err(Error::Invalid(format!("λ₂ = {lambda2} outside (-1, 1)")));
        }
        if residual >= RESIDUAL_TOL {
            return Err(Error::Invalid(format!("eigenpair residual {residual:e} not below {RESIDUAL_TOL:e}")));
        }
        let rho = 1.0 - lambda2;
        let gamma_tilde = self.gamma_tilde();

        // Bound on the complementary sectors: the self-proposal keeps every
        // eigenvalue at or above (2 − q)/q.
        let lambda_perp = (ns_top + ns_res).max((p.q as f64 - 2.0) / p.q as f64).min(1.0);
        let e = self.scaled_levels(beta);
        let log_z = self.orbits.reps.iter().zip(&self.orbits.sizes).map(|(&x, &s)| s as f64 * (-e[x]).exp()).sum::<f64>().ln();
        // ln(½·√((1 − 1/|O|)/π(x))) per orbit.
        let log_coef: Vec<f64> = self
            .orbits
            .reps
            .iter()
            .zip(&self.orbits.sizes)
            .map(|(&x, &s)| {
                if s == 1 {
                    f64::NEG_INFINITY
                } else {
                    0.5f64.ln() + 0.5 * ((1.0 - 1.0 / s as f64).ln() + e[x] + log_z)
                }
            })
            .collect();
        let (t_lower, t_mix) = mixing_times(&pbar, &mu, epsilon, lambda_perp, &log_coef)?;
        Ok(SpectralReport {
            beta,
            states: self.oracle.space.len(),
            orbits: k,
            rho,
            lambda2,
            lambda2_sector: sector,
            residual,
            symmetric_lambda2: sym_l2,
            nonsymmetric_top: ns_top,
            nonsymmetric_residual: ns_res,
            gamma_tilde,
            rho_scaled: rho * (beta * gamma_tilde).exp(),
            epsilon,
            t_mix,
            t_mix_lower: t_lower,
            log_tmix_over_beta: if beta > 0.0 { (t_mix as f64).ln() / beta } else { f64::NAN },
        })
    }

    /// Largest eigenvalue of `S` on vectors with zero orbit means, with its
    /// explicit residual.
    fn nonsymmetric_top(&self, s: &SparseKernel) -> Result<(f64, f64)> {
        let n = s.len();
        if self.orbits.len() == n {
            return Ok((f64::NEG_INFINITY, 0.0));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(LANCZOS_SEED);
        let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
        self.orbits.remove_means(&mut v);
        let (theta, x) = lanczos_top(s, v, |w| self.orbits.remove_means(w), LANCZOS_MAX_STEPS, RESIDUAL_TOL * 0.1)?;
        Ok((theta, residual(s, &x, theta)))
    }
}

/// `‖Sv − λv‖` for unit `v`.
pub fn residual(s: &SparseKernel, v: &[f64], lambda: f64) -> f64 {
    let mut y = vec![0.0; v.len()];
    s.apply(v, &mut y);
    y.iter().zip(v).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Lanczos with full reorthogonalization for the largest eigenvalue of a
/// symmetric operator on the range of `project`.
pub fn lanczos_top(
    s: &SparseKernel,
    start: Vec<f64>,
    project: impl Fn(&mut [f64]),
    max_steps: usize,
    tol: f64,
) -> Result<(f64, Vec<f64>)> {
    let n = start.len();
    let norm = dot(&start, &start).sqrt();
    if norm == 0.0 {
        return Err(Error::Invalid("Lanczos start vector is zero".into()));
    }
    let mut basis: Vec<Vec<f64>> = vec![start.iter().map(|x| x / norm).collect()];
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    let mut w = vec![0.0; n];
    let ritz = |alpha: &[f64], beta: &[f64]| {
        let m = alpha.len();
        let t = DMatrix::from_fn(m, m, |i, j| {
            if i == j {
                alpha[i]
            } else if i + 1 == j {
                beta[i]
            } else if j + 1 == i {
                beta[j]
            } else {
                0.0
            }
        });
        let e = SymmetricEigen::new(t);
        let k = e.eigenvalues.imax();
        (e.eigenvalues[k], e.eigenvectors.column(k).into_owned())
    };
    let steps = max_steps.min(n);
    for j in 0..steps {
        s.apply(&basis[j], &mut w);
        project(&mut w);
        let a = dot(&w, &basis[j]);
        alpha.push(a);
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&w, b);
                w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let bnorm = dot(&w, &w).sqrt();
        let last = j + 1 == steps;
        let check = last || bnorm < 1e-13 || (j + 1) % 20 == 0;
        if check {
            let (theta, y) = ritz(&alpha, &beta);
            let est = bnorm * y[y.len() - 1].abs();
            if est < tol || last || bnorm < 1e-13 {
                let mut x = vec![0.0; n];
                for (c, b) in y.iter().zip(&basis) {
                    x.iter_mut().zip(b).for_each(|(xi, bi)| *xi += c * bi);
                }
                let xn = dot(&x, &x).sqrt();
                x.iter_mut().for_each(|v| *v /= xn);
                return Ok((theta, x));
            }
        }
        beta.push(bnorm);
        basis.push(w.iter().map(|x| x / bnorm).collect());
    }
    unreachable!("loop returns on its last step")
}

/// Worst-start distance to `mu` for the rows of a stochastic matrix.
fn row_distances(m: &DMatrix<f64>, mu: &[f64]) -> Vec<f64> {
    (0..m.nrows()).map(|i| 0.5 * (0..m.ncols()).map(|j| (m[(i, j)] - mu[j]).abs()).sum::<f64>()).collect()
}

/// Smallest `t` with `f(t) ≤ ε`, for non-increasing `f` given by rows of
/// `P̄^t`; powers by squaring, then a greedy descent over the binary digits.
fn first_below(
    powers: &[DMatrix<f64>],
    mu: &[f64],
    epsilon: f64,
    extra: &dyn Fn(u64, usize) -> f64,
) -> Option<u64> {
    let k = mu.len();
    let dist = |m: &DMatrix<f64>, t: u64| -> f64 {
        row_distances(m, mu).iter().enumerate().map(|(o, d)| d + extra(t, o)).fold(0.0, f64::max)
    };
    let id = DMatrix::<f64>::identity(k, k);
    if dist(&id, 0) <= epsilon {
        return Some(0);
    }
    let top = powers.len() - 1;
    if dist(&powers[top], 1 << top) > epsilon {
        return None;
    }
    let mut acc = id;
    let mut t = 0u64;
    for b in (0..top).rev() {
        let cand = &acc * &powers[b];
        if dist(&cand, t + (1 << b)) > epsilon {
            acc = cand;
            t += 1 << b;
        }
    }
    Some(t + 1)
}

fn mixing_times(pbar: &DMatrix<f64>, mu: &[f64], epsilon: f64, lambda_perp: f64, log_coef: &[f64]) -> Result<(u64, u64)> {
    const MAX_BITS: usize = 62;
    let log_l = lambda_perp.ln();
    let bound = |t: u64, o: usize| {
        if lambda_perp <= 0.0 {
            0.0
        } else {
            (log_coef[o] + t as f64 * log_l).exp()
        }
    };
    let mut powers = vec![pbar.clone()];
    while powers.len() <= MAX_BITS {
        let next = {
            let last = powers.last().unwrap();
            last * last
        };
        let t = 1u64 << powers.len();
        let done = row_distances(&next, mu).iter().enumerate().all(|(o, d)| d + bound(t, o) < 1e-3 * epsilon);
        powers.push(next);
        if done {
            break;
        }
    }
    let lower = first_below(&powers, mu, epsilon, &|_, _| 0.0);
    let upper = first_below(&powers, mu, epsilon, &bound);
    match (lower, upper) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::Invalid("mixing time exceeds 2^62 steps".into())),
    }
}

/// Convenience wrapper: builds the model and analyzes one temperature.
pub fn spectral_and_mixing(p: &Params, beta: f64, epsilon: f64) -> Result<SpectralReport> {
    SpectralModel::build(p)?.analyze(beta, epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn model() -> &'static SpectralModel {
        static M: OnceLock<SpectralModel> = OnceLock::new();
        M.get_or_init(|| SpectralModel::build(&Params::new(3, 3, 3, 0.9).unwrap()).unwrap())
    }

    #[test]
    fn orbits_partition_the_space() {
        let m = model();
        assert_eq!(m.orbits.sizes.iter().sum::<usize>(), 19683);
        // Monochromatic states are fixed points; 72 symmetries in all.
        assert!(m.orbits.sizes.iter().all(|&s| 72 % s == 0));
        assert_eq!(m.orbits.sizes.iter().filter(|&&s| s == 1).count(), 3);
    }

    #[test]
    fn lumped_chain_is_stochastic_and_reversible() {
        let (pbar, mu) = model().lumped(2.5);
        for i in 0..mu.len() {
            assert!((pbar.row(i).sum() - 1.0).abs() < 1e-12);
            for j in 0..mu.len() {
                let (a, b) = (mu[i] * pbar[(i, j)], mu[j] * pbar[(j, i)]);
                assert!((a - b).abs() <= 1e-12 * a.max(b).max(1e-300));
            }
        }
    }

    /// At β = 0 each step resamples one uniform vertex, so `ρ = 1/|V|`.
    #[test]
    fn infinite_temperature_gap_is_one_over_n() {
        let r = model().analyze(0.0, 0.25).unwrap();
        assert!((r.rho - 1.0 / 9.0).abs() < 1e-12);
        assert!(r.t_mix < 100);
    }

    /// Lanczos on the whole kernel with the stationary vector deflated.
    #[test]
    fn gap_matches_unrestricted_lanczos() {
        let m = model();
        let beta = 1.0;
        let r = m.analyze(beta, 0.25).unwrap();
        assert!(r.residual < RESIDUAL_TOL);
        let s = m.kernel(beta);
        let e = m.scaled_levels(beta);
        let mut root: Vec<f64> = e.iter().map(|x| (-x / 2.0).exp()).collect();
        let norm = dot(&root, &root).sqrt();
        root.iter_mut().for_each(|x| *x /= norm);
        let deflate = |w: &mut [f64]| {
            let c = dot(w, &root);
            w.iter_mut().zip(&root).for_each(|(x, y)| *x -= c * y);
        };
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut v: Vec<f64> = (0..s.len()).map(|_| rng.random::<f64>()).collect();
        deflate(&mut v);
        let (theta, x) = lanczos_top(&s, v, deflate, 400, 1e-12).unwrap();
        assert!(residual(&s, &x, theta) < 1e-9);
        assert!((theta - r.lambda2).abs() < 1e-10, "{theta} vs {}", r.lambda2);
    }

    /// Worst-start distance by iterating the full chain from `𝟐`, which is a
    /// fixed point of every symmetry and the slowest start at this β.
    #[test]
    fn mixing_time_matches_direct_iteration() {
        let m = model();
        let beta = 1.0;
        let r = m.analyze(beta, 0.25).unwrap();
        let p = m.params();
        let space = &m.oracle.space;
        let e = m.scaled_levels(beta);
        let z: f64 = e.iter().map(|x| (-x).exp()).sum();
        let pi: Vec<f64> = e.iter().map(|x| (-x).exp() / z).collect();
        let c = 1.0 / (p.q as f64 * 9.0);
        let mut dist = vec![0.0; space.len()];
        dist[space.index(&p.monochrome(2).unwrap())] = 1.0;
        let tv = |d: &[f64]| 0.5 * d.iter().zip(&pi).map(|(a, b)| (a - b).abs()).sum::<f64>();
        for t in 1..=r.t_mix {
            let mut next = vec![0.0; space.len()];
            for (i, &mass) in dist.iter().enumerate() {
                if mass == 0.0 {
                    continue;
                }
                let mut out = 0.0;
                for j in space.neighbors(i) {
                    let a = c * (-(e[j] - e[i]).max(0.0)).exp();
                    next[j] += mass * a;
                    out += a;
                }
                next[i] += mass * (1.0 - out);
            }
            dist = next;
            if t + 1 == r.t_mix_lower {
                assert!(tv(&dist) > 0.25);
            }
        }
        assert!(tv(&dist) <= 0.25);
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(model().analyze(-1.0, 0.25).is_err());
        assert!(model().analyze(1.0, 1.5).is_err());
    }
}
