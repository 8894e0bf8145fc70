//! Exhaustive landscape analysis for lattices small enough to enumerate.
//!
//! States are indexed by their canonical encoding. A Kruskal reconstruction
//! tree over the sublevel filtration answers communication heights (weight
//! of the lowest common ancestor), stability levels and cycle membership.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::energy::{hamiltonian, Params};
use crate::error::{Error, Result};
use crate::lattice::Config;

pub const DEFAULT_CAP: usize = 2_000_000;

/// Node budget for the induced-path search behind essential saddles.
pub const SADDLE_SEARCH_CAP: usize = 1 << 20;

#[derive(Debug, Clone)]
pub struct StateSpace {
    pub params: Params,
    pub levels: Vec<i64>,
    pow: Vec<usize>,
}

impl StateSpace {
    pub fn enumerate(p: &Params, cap: usize) -> Result<Self> {
        let n = p.geom.size();
        let states = (p.q as f64).powi(n as i32);
        if states > cap as f64 {
            return Err(Error::EnumerationCap { states, cap });
        }
        let q = p.q as usize;
        let pow: Vec<usize> = (0..n).scan(1usize, |acc, _| { let x = *acc; *acc *= q; Some(x) }).collect();
        let total = states as usize;
        let mut levels = Vec::with_capacity(total);
        let mut cfg = p.monochrome(1)?;
        for idx in 0..total {
            let mut code = idx;
            for v in 0..n {
                cfg.set(v, (code % q) as u8 + 1);
                code /= q;
            }
            levels.push(p.level(hamiltonian(&cfg)));
        }
        Ok(Self { params: *p, levels, pow })
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn index(&self, cfg: &Config) -> usize {
        cfg.spins().iter().zip(&self.pow).map(|(&s, &w)| (s as usize - 1) * w).sum()
    }

    pub fn config(&self, idx: usize) -> Config {
        Config::decode(self.params.geom, self.params.q, idx as u64).expect("index within the state space")
    }

    pub fn neighbors(&self, idx: usize) -> impl Iterator<Item = usize> + '_ {
        let q = self.params.q as usize;
        self.pow.iter().flat_map(move |&w| {
            let a = (idx / w) % q;
            (0..q).filter(move |&s| s != a).map(move |s| idx + s * w - a * w)
        })
    }

    pub fn value(&self, idx: usize) -> f64 {
        self.params.level_value(self.levels[idx])
    }
}

fn find(dsu: &mut [usize], mut x: usize) -> usize {
    while dsu[x] != x {
        dsu[x] = dsu[dsu[x]];
        x = dsu[x];
    }
    x
}

/// Kruskal reconstruction tree: leaves are states, every union of two
/// sublevel components adds a node weighted by the activating level.
#[derive(Debug, Clone)]
pub struct Oracle {
    pub space: StateSpace,
    parent: Vec<usize>,
    children: Vec<Option<(usize, usize)>>,
    weight: Vec<i64>,
    depth: Vec<u32>,
    /// First strict ancestor whose subtree reaches a lower minimum.
    jump: Vec<usize>,
    /// First ancestor-or-self whose subtree contains a ground state.
    stable_anc: Vec<usize>,
    pub ground_level: i64,
    /// `Γ̃(𝒳∖X^s)` from the filtration sweep.
    pub gamma_tilde_sweep: i64,
}

impl Oracle {
    pub fn build(p: &Params, cap: usize) -> Result<Self> {
        let space = StateSpace::enumerate(p, cap)?;
        let n = space.len();
        let ground_level = *space.levels.iter().min().unwrap();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (space.levels[i], i));

        let mut parent: Vec<usize> = (0..n).collect();
        let mut children = vec![None; n];
        let mut weight = space.levels.clone();
        let mut min_level = space.levels.clone();
        let mut has_stable: Vec<bool> = space.levels.iter().map(|&l| l == ground_level).collect();
        let mut dsu: Vec<usize> = (0..n).collect();
        let mut node: Vec<usize> = (0..n).collect();
        let mut active = vec![false; n];
        let mut gamma_tilde = 0i64;

        let mut start = 0;
        while start < n {
            let lambda = space.levels[order[start]];
            let end = start + order[start..].iter().take_while(|&&i| space.levels[i] == lambda).count();
            // Components of {H < λ} touched by a λ-state: cycles exited at λ.
            for &u in &order[start..end] {
                for w in space.neighbors(u) {
                    if active[w] {
                        let r = node[find(&mut dsu, w)];
                        if !has_stable[r] {
                            gamma_tilde = gamma_tilde.max(lambda - min_level[r]);
                        }
                    }
                }
            }
            for &u in &order[start..end] {
                active[u] = true;
                for w in space.neighbors(u) {
                    if !active[w] {
                        continue;
                    }
                    let (ru, rw) = (find(&mut dsu, u), find(&mut dsu, w));
                    if ru == rw {
                        continue;
                    }
                    let (a, b) = (node[ru], node[rw]);
                    let x = parent.len();
                    parent.push(x);
                    parent[a] = x;
                    parent[b] = x;
                    children.push(Some((a, b)));
                    weight.push(lambda);
                    min_level.push(min_level[a].min(min_level[b]));
                    has_stable.push(has_stable[a] || has_stable[b]);
                    dsu[ru] = rw;
                    node[rw] = x;
                }
            }
            start = end;
        }

        let total = parent.len();
        let mut depth = vec![0u32; total];
        let mut jump = vec![usize::MAX; total];
        let mut stable_anc = vec![usize::MAX; total];
        // Parents are created after their children: walk ids downwards.
        for x in (0..total).rev() {
            let px = parent[x];
            if px == x {
                stable_anc[x] = x;
                continue;
            }
            depth[x] = depth[px] + 1;
            jump[x] = if min_level[px] < min_level[x] { px } else { jump[px] };
            stable_anc[x] = if has_stable[x] { x } else { stable_anc[px] };
        }
        Ok(Self {
            space,
            parent,
            children,
            weight,
            depth,
            jump,
            stable_anc,
            ground_level,
            gamma_tilde_sweep: gamma_tilde,
        })
    }

    pub fn params(&self) -> &Params {
        &self.space.params
    }

    pub fn level(&self, idx: usize) -> i64 {
        self.space.levels[idx]
    }

    fn lca(&self, mut a: usize, mut b: usize) -> Option<usize> {
        while a != b {
            if self.depth[a] < self.depth[b] {
                std::mem::swap(&mut a, &mut b);
            }
            if self.parent[a] == a {
                return None;
            }
            a = self.parent[a];
        }
        Some(a)
    }

    /// Exact level of `Φ(a, b)`; `None` when disconnected.
    pub fn phi_level(&self, a: usize, b: usize) -> Option<i64> {
        self.lca(a, b).map(|x| self.weight[x])
    }

    /// Exact level of `V_σ`; `None` on the ground states.
    pub fn v_level(&self, idx: usize) -> Option<i64> {
        let j = self.jump[idx];
        (j != usize::MAX).then(|| self.weight[j] - self.level(idx))
    }

    pub fn stable_states(&self) -> Vec<usize> {
        (0..self.space.len()).filter(|&i| self.level(i) == self.ground_level).collect()
    }

    /// Non-ground states with the largest stability level, and that level.
    pub fn metastable_states(&self) -> (Vec<usize>, i64) {
        let vmax = (0..self.space.len()).filter_map(|i| self.v_level(i)).max().unwrap_or(0);
        ((0..self.space.len()).filter(|&i| self.v_level(i) == Some(vmax)).collect(), vmax)
    }

    /// `Φ(σ, X^s)`.
    pub fn phi_to_stable(&self, idx: usize) -> i64 {
        self.weight[self.stable_anc[idx]]
    }

    /// `max_{σ ∉ X^s} Φ(σ, X^s) − H(σ)`.
    pub fn gamma_tilde_barrier(&self) -> i64 {
        (0..self.space.len())
            .filter(|&i| self.level(i) != self.ground_level)
            .map(|i| self.phi_to_stable(i) - self.level(i))
            .max()
            .unwrap_or(0)
    }

    fn leaves(&self, x: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            match self.children[y] {
                Some((a, b)) => stack.extend([a, b]),
                None => out.push(y),
            }
        }
        out.sort_unstable();
        out
    }

    /// The component of `σ` in `{H < threshold}`, read from the tree.
    pub fn sublevel_component(&self, idx: usize, threshold: i64) -> Vec<usize> {
        if self.level(idx) >= threshold {
            return Vec::new();
        }
        let mut x = idx;
        while self.parent[x] != x && self.weight[self.parent[x]] < threshold {
            x = self.parent[x];
        }
        self.leaves(x)
    }

    /// The cycle flooded from `σ`: `{σ}` when it has a lower neighbor,
    /// otherwise the component of `{H < H(σ) + V_σ}`.
    pub fn cycle_of(&self, idx: usize) -> Vec<usize> {
        let level = self.level(idx);
        if self.space.neighbors(idx).any(|w| self.level(w) < level) {
            return vec![idx];
        }
        match self.v_level(idx) {
            Some(0) | None => vec![idx],
            Some(v) => self.sublevel_component(idx, level + v),
        }
    }

    /// `C^σ_A(Γ) = {σ} ∪ {η : Φ(σ, η) < Φ(σ, A)}`.
    pub fn initial_cycle(&self, idx: usize, target: &[bool]) -> Vec<usize> {
        if target[idx] {
            return vec![idx];
        }
        let phi = self.phi_to_set(idx, target);
        let mut c = self.sublevel_component(idx, phi);
        if c.is_empty() {
            c.push(idx);
        }
        c
    }

    /// `Φ(σ, A)` by a bottleneck sweep over the tree.
    pub fn phi_to_set(&self, idx: usize, target: &[bool]) -> i64 {
        let mut best = i64::MAX;
        for (a, &t) in target.iter().enumerate() {
            if t {
                if let Some(l) = self.phi_level(idx, a) {
                    best = best.min(l);
                }
            }
        }
        best
    }

    fn bfs(&self, from: usize, allowed: impl Fn(usize) -> bool) -> Vec<usize> {
        let mut seen = vec![false; self.space.len()];
        let mut out = vec![from];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for w in self.space.neighbors(u) {
                if !seen[w] && allowed(w) {
                    seen[w] = true;
                    out.push(w);
                    queue.push_back(w);
                }
            }
        }
        out
    }

    /// Saddles `S(σ, σ′)`: states at height `Φ(σ, σ′)` lying on some optimal
    /// path, i.e. in the component of `σ` in `{H ≤ Φ}`.
    pub fn saddles(&self, a: usize, b: usize) -> Vec<usize> {
        let Some(phi) = self.phi_level(a, b) else { return Vec::new() };
        let mut s: Vec<usize> =
            self.bfs(a, |w| self.level(w) <= phi).into_iter().filter(|&w| self.level(w) == phi).collect();
        s.sort_unstable();
        s
    }

    /// The saddle graph between `a` and `b`: nodes are the saddles plus the
    /// two endpoint valleys; other valleys become cliques on their saddles.
    pub fn saddle_graph(&self, a: usize, b: usize) -> SaddleGraph {
        let phi = self.phi_level(a, b).expect("connected state space");
        let saddles = self.saddles(a, b);
        let pos: BTreeMap<usize, usize> = saddles.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let ns = saddles.len();
        let (s_node, t_node) = (ns, ns + 1);
        let mut adj = vec![std::collections::BTreeSet::new(); ns + 2];
        let link = |adj: &mut Vec<std::collections::BTreeSet<usize>>, x: usize, y: usize| {
            if x != y {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        };
        for (i, &s) in saddles.iter().enumerate() {
            for w in self.space.neighbors(s) {
                if let Some(&j) = pos.get(&w) {
                    link(&mut adj, i, j);
                }
            }
        }
        let mut valley = vec![usize::MAX; self.space.len()];
        let endpoint = |x: usize| if self.level(x) == phi { None } else { Some(x) };
        let mut valleys = 0;
        let mut seeds: Vec<usize> = [endpoint(a), endpoint(b)].into_iter().flatten().collect();
        for &s in &saddles {
            seeds.extend(self.space.neighbors(s).filter(|&w| self.level(w) < phi));
        }
        for seed in seeds {
            if valley[seed] != usize::MAX {
                continue;
            }
            for w in self.bfs(seed, |w| self.level(w) < phi) {
                valley[w] = valleys;
            }
            valleys += 1;
        }
        let node_of = |x: usize| -> usize {
            match endpoint(x) {
                Some(v) => v,
                None => pos[&x],
            }
        };
        let (va, vb) = (node_of(a), node_of(b));
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); valleys];
        for (i, &s) in saddles.iter().enumerate() {
            let mut touched: Vec<usize> = self.space.neighbors(s).filter(|&w| self.level(w) < phi).map(|w| valley[w]).collect();
            touched.sort_unstable();
            touched.dedup();
            for v in touched {
                members[v].push(i);
            }
        }
        let valley_of = |x: usize| endpoint(x).map(|v| valley[v]);
        let (sa, sb) = (valley_of(a), valley_of(b));
        for (v, m) in members.iter().enumerate() {
            if Some(v) == sa || Some(v) == sb {
                let end = if Some(v) == sa { s_node } else { t_node };
                for &i in m {
                    link(&mut adj, end, i);
                }
            } else {
                for (k, &i) in m.iter().enumerate() {
                    for &j in &m[k + 1..] {
                        link(&mut adj, i, j);
                    }
                }
            }
        }
        let s = if sa.is_some() { s_node } else { va };
        let t = if sb.is_some() { t_node } else { vb };
        SaddleGraph { saddles, adj: adj.into_iter().map(|x| x.into_iter().collect()).collect(), s, t }
    }

    /// Saddles lying on some inclusion-minimal saddle set of an optimal path
    /// from `a` to `b`, i.e. the union of the minimal gates.
    pub fn essential_saddles(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        if a == b {
            return Ok(Vec::new());
        }
        let g = self.saddle_graph(a, b);
        let marked = g.induced_path_nodes(SADDLE_SEARCH_CAP)?;
        Ok(marked.into_iter().filter(|&i| i < g.saddles.len()).map(|i| g.saddles[i]).collect())
    }
}

#[derive(Debug, Clone)]
pub struct SaddleGraph {
    pub saddles: Vec<usize>,
    pub adj: Vec<Vec<usize>>,
    pub s: usize,
    pub t: usize,
}

impl SaddleGraph {
    /// Nodes on some induced `s–t` path; fails past `cap` search steps.
    pub fn induced_path_nodes(&self, cap: usize) -> Result<Vec<usize>> {
        let n = self.adj.len();
        let mut marked = vec![false; n];
        let mut on_path = vec![0u32; n];
        let mut path = vec![self.s];
        let mut steps = 0usize;
        // Blocked count: number of path vertices (other than the last)
        // adjacent to a node.
        let mut blocked = vec![0u32; n];
        on_path[self.s] = 1;
        let mut frames: Vec<usize> = vec![0];
        while let Some(&last) = path.last() {
            let k = frames.last_mut().unwrap();
            if last == self.t {
                for &x in &path {
                    marked[x] = true;
                }
                self.pop(&mut path, &mut frames, &mut on_path, &mut blocked);
                continue;
            }
            if *k >= self.adj[last].len() {
                self.pop(&mut path, &mut frames, &mut on_path, &mut blocked);
                continue;
            }
            let y = self.adj[last][*k];
            *k += 1;
            if on_path[y] > 0 || blocked[y] > 0 {
                continue;
            }
            steps += 1;
            if steps > cap {
                return Err(Error::Invalid(format!("essential-saddle search exceeded {cap} steps")));
            }
            // `last` becomes an interior vertex: block its neighbors.
            for &z in &self.adj[last] {
                blocked[z] += 1;
            }
            on_path[y] = 1;
            path.push(y);
            frames.push(0);
        }
        Ok((0..n).filter(|&i| marked[i]).collect())
    }

    fn pop(&self, path: &mut Vec<usize>, frames: &mut Vec<usize>, on_path: &mut [u32], blocked: &mut [u32]) {
        let y = path.pop().unwrap();
        frames.pop();
        on_path[y] = 0;
        if let Some(&last) = path.last() {
            for &z in &self.adj[last] {
                blocked[z] -= 1;
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct OracleRequests {
    pub pairs: Vec<(Config, Config)>,
    /// Starting states for initial cycles towards `X^s`.
    pub initial: Vec<Config>,
    pub essential: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PhiEntry {
    pub from: Config,
    pub to: Config,
    pub phi: f64,
    pub barrier: f64,
    pub saddle_count: usize,
    pub essential: Option<Vec<Config>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InitialCycleEntry {
    pub sigma: Config,
    pub gamma: f64,
    pub size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub states: usize,
    pub stable: Vec<Config>,
    pub metastable: Vec<Config>,
    pub gamma_m: f64,
    /// Histogram of `V_σ` over non-ground states.
    pub stability_levels: BTreeMap<String, usize>,
    pub gamma_tilde: f64,
    /// `max_σ Γ(σ, X^s)`, which must equal `gamma_tilde`.
    pub gamma_tilde_by_barrier: f64,
    pub phi: Vec<PhiEntry>,
    pub initial_cycles: Vec<InitialCycleEntry>,
}

pub fn exact_oracle(p: &Params, requests: &OracleRequests) -> Result<(Oracle, OracleReport)> {
    let o = Oracle::build(p, DEFAULT_CAP)?;
    let report = o.report(requests)?;
    Ok((o, report))
}

impl Oracle {
    pub fn report(&self, requests: &OracleRequests) -> Result<OracleReport> {
        let p = self.params();
        let value = |l: i64| p.level_value(l);
        let (meta, vmax) = self.metastable_states();
        let mut hist = BTreeMap::new();
        for i in 0..self.space.len() {
            if let Some(v) = self.v_level(i) {
                *hist.entry(format!("{:.6}", value(v))).or_insert(0) += 1;
            }
        }
        let mut phi = Vec::new();
        for (a, b) in &requests.pairs {
            p.check(a)?;
            p.check(b)?;
            let (ia, ib) = (self.space.index(a), self.space.index(b));
            let level = self.phi_level(ia, ib).ok_or_else(|| Error::Invalid("disconnected pair".into()))?;
            let essential = if requests.essential {
                Some(self.essential_saddles(ia, ib)?.into_iter().map(|i| self.space.config(i)).collect())
            } else {
                None
            };
            phi.push(PhiEntry {
                from: a.clone(),
                to: b.clone(),
                phi: value(level),
                barrier: value(level - self.level(ia)),
                saddle_count: self.saddles(ia, ib).len(),
                essential,
            });
        }
        let target: Vec<bool> = (0..self.space.len()).map(|i| self.level(i) == self.ground_level).collect();
        let mut initial_cycles = Vec::new();
        for s in &requests.initial {
            p.check(s)?;
            let i = self.space.index(s);
            initial_cycles.push(InitialCycleEntry {
                sigma: s.clone(),
                gamma: value(self.phi_to_set(i, &target) - self.level(i)),
                size: self.initial_cycle(i, &target).len(),
            });
        }
        Ok(OracleReport {
            states: self.space.len(),
            stable: self.stable_states().into_iter().map(|i| self.space.config(i)).collect(),
            metastable: meta.into_iter().map(|i| self.space.config(i)).collect(),
            gamma_m: value(vmax),
            stability_levels: hist,
            gamma_tilde: value(self.gamma_tilde_sweep),
            gamma_tilde_by_barrier: value(self.gamma_tilde_barrier()),
            phi,
            initial_cycles,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle() -> Oracle {
        Oracle::build(&Params::new(3, 3, 3, 0.9).unwrap(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn ground_and_metastable_states() {
        let o = oracle();
        assert_eq!(o.space.len(), 19683);
        let stable = o.stable_states();
        assert_eq!(stable.len(), 1);
        assert_eq!(o.space.config(stable[0]).is_monochrome(), Some(1));
        let (meta, _) = o.metastable_states();
        let mut spins: Vec<u8> = meta.iter().map(|&i| o.space.config(i).is_monochrome().unwrap()).collect();
        spins.sort_unstable();
        assert_eq!(spins, vec![2, 3]);
    }

    #[test]
    fn neighbors_are_single_flips() {
        let o = oracle();
        for idx in [0usize, 1, 4000, 19682] {
            let c = o.space.config(idx);
            let nb: Vec<usize> = o.space.neighbors(idx).collect();
            assert_eq!(nb.len(), 18);
            assert!(nb.iter().all(|&w| o.space.config(w).hamming(&c) == 1));
            assert_eq!(o.space.index(&c), idx);
        }
    }

    #[test]
    fn gamma_tilde_two_ways() {
        let o = oracle();
        assert_eq!(o.gamma_tilde_sweep, o.gamma_tilde_barrier());
    }

    /// Brute force on tiny saddle graphs: the union of inclusion-minimal
    /// connecting saddle sets equals the induced-path marking.
    #[test]
    fn induced_paths_match_minimal_sets() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.random_range(2..9);
            let total = n + 2;
            let mut adj = vec![Vec::new(); total];
            for i in 0..total {
                for j in i + 1..total {
                    if (i, j) != (n, n + 1) && rng.random_bool(0.35) {
                        adj[i].push(j);
                        adj[j].push(i);
                    }
                }
            }
            let g = SaddleGraph { saddles: (0..n).collect(), adj: adj.clone(), s: n, t: n + 1 };
            let marked: Vec<usize> = g.induced_path_nodes(1 << 20).unwrap().into_iter().filter(|&i| i < n).collect();
            let connects = |mask: u32| {
                let mut seen = vec![false; total];
                let mut stack = vec![n];
                seen[n] = true;
                while let Some(u) = stack.pop() {
                    for &w in &adj[u] {
                        let ok = w >= n || mask & (1 << w) != 0;
                        if ok && !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
                seen[n + 1]
            };
            let mut union = 0u32;
            for mask in 0u32..(1 << n) {
                if connects(mask) && (0..n).all(|i| mask & (1 << i) == 0 || !connects(mask & !(1 << i))) {
                    union |= mask;
                }
            }
            let brute: Vec<usize> = (0..n).filter(|&i| union & (1 << i) != 0).collect();
            assert_eq!(marked, brute);
        }
    }
}
