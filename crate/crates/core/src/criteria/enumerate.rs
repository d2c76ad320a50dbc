//! Vertex enumeration on dipoles and roses through the forest criterion.
//!
//! A vertex of `Dist(D_n, m)` is a tuple of support forests `(F_1, ..., F_n)`
//! whose `Q` matrix has rank `2m - 1` and whose common marginal `u` (the
//! kernel of `Q`, normalized) makes every edge value positive. All forests of
//! one vertex cover the same label sets `I = supp(alpha)` and
//! `J = supp(beta)`, so the search runs per `(I, J)` over sorted multisets of
//! covering forests of `K_{I,J}`. Roses are the same with `I = J` and the
//! rows `[I_m | -I_m]` preloaded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::support_graph::{component_row, SupportBipartiteGraph};
use crate::error::{Error, Result};
use crate::exact::{Rational, RationalMatrix};
use crate::scenario::{dipole, rose, GraphDistribution, Scenario, UnionFind};

/// Default cap on search nodes plus emitted forest tuples.
pub const DEFAULT_SEARCH_BUDGET: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Rose,
    Dipole,
}

impl Family {
    pub fn scenario(self, n: usize, m: usize) -> Result<Scenario> {
        match self {
            Family::Rose => rose(n, m),
            Family::Dipole => dipole(n, m),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Rose => "rose",
            Family::Dipole => "dipole",
        }
    }
}

/// A covering forest of `K_{I,J}` with its `Q` rows and edge-value map.
#[derive(Clone, Debug)]
struct Forest {
    edges: Vec<(usize, usize)>,
    rows: Vec<Vec<i64>>,
    /// Edge `k` carries `map[k] . u` for the common marginal `u` in `R^{2m}`.
    map: Vec<Vec<i64>>,
    diagonal: bool,
}

impl Forest {
    fn new(m: usize, edges: Vec<(usize, usize)>) -> Forest {
        let h = SupportBipartiteGraph::new(m, edges.iter().copied()).expect("labels in range");
        let rows = h
            .components_with_singletons()
            .iter()
            .map(|c| component_row(c, m))
            .collect();
        let diagonal = edges.iter().all(|&(a, b)| a == b);
        let map = peel(m, &edges);
        Forest {
            edges,
            rows,
            map,
            diagonal,
        }
    }

    fn values(&self, u: &[Rational]) -> Vec<Rational> {
        self.map
            .iter()
            .map(|c| {
                c.iter()
                    .zip(u)
                    .filter(|(k, _)| **k != 0)
                    .fold(Rational::zero(), |acc, (k, x)| acc + x * Rational::from_integer((*k).into()))
            })
            .collect()
    }

    fn positive_at(&self, w: &[i128]) -> bool {
        self.map.iter().all(|c| dot(c, w) > 0)
    }

    fn annihilates(&self, w: &[i128]) -> bool {
        self.rows.iter().all(|r| dot(r, w) == 0)
    }
}

fn dot(c: &[i64], w: &[i128]) -> i128 {
    c.iter().zip(w).map(|(&k, &x)| k as i128 * x).sum()
}

/// Leaf peeling: expresses each edge value of a forest as a linear form in
/// the marginals. Left label `a` is coordinate `a`, right label `b` is `m + b`.
fn peel(m: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut rem: Vec<Vec<i64>> = (0..2 * m)
        .map(|v| {
            let mut f = vec![0; 2 * m];
            f[v] = 1;
            f
        })
        .collect();
    let mut alive = vec![true; edges.len()];
    let mut out = vec![Vec::new(); edges.len()];
    let ends = |k: usize| (edges[k].0, m + edges[k].1);
    for _ in 0..edges.len() {
        let mut degree = vec![0usize; 2 * m];
        for k in (0..edges.len()).filter(|&k| alive[k]) {
            let (x, y) = ends(k);
            degree[x] += 1;
            degree[y] += 1;
        }
        let (k, leaf, other) = (0..edges.len())
            .filter(|&k| alive[k])
            .find_map(|k| {
                let (x, y) = ends(k);
                if degree[x] == 1 {
                    Some((k, x, y))
                } else if degree[y] == 1 {
                    Some((k, y, x))
                } else {
                    None
                }
            })
            .expect("a forest has a leaf");
        let val = rem[leaf].clone();
        for (r, v) in rem[other].iter_mut().zip(&val) {
            *r -= v;
        }
        out[k] = val;
        alive[k] = false;
    }
    out
}

/// Forests with edges in `I x J` whose non-isolated vertices are exactly `I ∪ J`.
fn covering_forests(m: usize, left: &[usize], right: &[usize]) -> Vec<Forest> {
    let cand: Vec<(usize, usize)> = left
        .iter()
        .flat_map(|&a| right.iter().map(move |&b| (a, b)))
        .collect();
    let max_edges = left.len() + right.len() - 1;
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        m: usize,
        cand: &[(usize, usize)],
        start: usize,
        max_edges: usize,
        chosen: &mut Vec<(usize, usize)>,
        uf: &UnionFind,
        left: &[usize],
        right: &[usize],
        out: &mut Vec<Forest>,
    ) {
        let covers = left.iter().all(|a| chosen.iter().any(|e| e.0 == *a))
            && right.iter().all(|b| chosen.iter().any(|e| e.1 == *b));
        if covers {
            out.push(Forest::new(m, chosen.clone()));
        }
        if chosen.len() == max_edges {
            return;
        }
        for i in start..cand.len() {
            let (a, b) = cand[i];
            let mut uf2 = uf.clone();
            if uf2.union(a, m + b) {
                chosen.push((a, b));
                rec(m, cand, i + 1, max_edges, chosen, &uf2, left, right, out);
                chosen.pop();
            }
        }
    }
    rec(
        m,
        &cand,
        0,
        max_edges,
        &mut chosen,
        &UnionFind::new(2 * m),
        left,
        right,
        &mut out,
    );
    out
}

/// Row-reduced integer basis; every row is zero at the other rows' pivots.
#[derive(Clone, Debug, Default)]
struct Basis {
    rows: Vec<(usize, Vec<i128>)>,
}

fn normalize(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

impl Basis {
    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, row: &[i64]) {
        let mut v: Vec<i128> = row.iter().map(|&x| x as i128).collect();
        for (c, b) in &self.rows {
            if v[*c] != 0 {
                let (f, g) = (b[*c], v[*c]);
                for (x, y) in v.iter_mut().zip(b) {
                    *x = *x * f - y * g;
                }
                normalize(&mut v);
            }
        }
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return;
        };
        for (_, b) in self.rows.iter_mut() {
            if b[p] != 0 {
                let (f, g) = (v[p], b[p]);
                for (x, y) in b.iter_mut().zip(&v) {
                    *x = *x * f - y * g;
                }
                normalize(b);
            }
        }
        self.rows.push((p, v));
    }

    /// The kernel vector of a corank-one basis as integers, signed so the
    /// left half has positive sum. `None` if that sum vanishes.
    fn kernel(&self, m: usize) -> Option<Vec<i128>> {
        let width = 2 * m;
        let mut pivot = vec![false; width];
        for (c, _) in &self.rows {
            pivot[*c] = true;
        }
        let f = (0..width).find(|&c| !pivot[c])?;
        let l = self.rows.iter().fold(1i128, |l, (c, b)| l.lcm(&b[*c]));
        let mut w = vec![0i128; width];
        w[f] = l;
        for (c, b) in &self.rows {
            w[*c] = -b[f] * (l / b[*c]);
        }
        normalize(&mut w);
        let s: i128 = w[..m].iter().sum();
        match s.signum() {
            0 => None,
            1 => Some(w),
            _ => Some(w.into_iter().map(|x| -x).collect()),
        }
    }
}

/// Counts over the vertex set of `Dist(D_n, m)` or `Dist(R_n, m)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCensus {
    pub total: u128,
    pub deterministic: u128,
    /// Vertices with at least one edge matrix that is zero off the diagonal.
    pub with_collapsed_edge: u128,
    /// Non-deterministic vertices without any collapsed edge matrix.
    pub contextual_without_collapsed: u128,
    /// Entry `k` counts vertices with exactly `k` collapsed edge matrices.
    pub by_collapsed_edges: Vec<u128>,
}

impl VertexCensus {
    fn add(&mut self, o: &VertexCensus) {
        self.total += o.total;
        self.deterministic += o.deterministic;
        self.with_collapsed_edge += o.with_collapsed_edge;
        self.contextual_without_collapsed += o.contextual_without_collapsed;
        if self.by_collapsed_edges.len() < o.by_collapsed_edges.len() {
            self.by_collapsed_edges.resize(o.by_collapsed_edges.len(), 0);
        }
        for (a, b) in self.by_collapsed_edges.iter_mut().zip(&o.by_collapsed_edges) {
            *a += b;
        }
    }

    /// Tallies one vertex given its determinism and number of collapsed edges.
    pub fn record(&mut self, weight: u128, deterministic: bool, collapsed_edges: usize) {
        self.total += weight;
        if deterministic {
            self.deterministic += weight;
        }
        if collapsed_edges > 0 {
            self.with_collapsed_edge += weight;
        } else if !deterministic {
            self.contextual_without_collapsed += weight;
        }
        if self.by_collapsed_edges.len() <= collapsed_edges {
            self.by_collapsed_edges.resize(collapsed_edges + 1, 0);
        }
        self.by_collapsed_edges[collapsed_edges] += weight;
    }
}

struct Group {
    forests: Vec<Forest>,
    seed: Basis,
}

fn subsets(m: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << m))
        .map(|mask| (0..m).filter(|&i| mask & (1 << i) != 0).collect())
        .collect()
}

fn groups(family: Family, m: usize) -> Vec<Group> {
    let mut seed = Basis::default();
    if family == Family::Rose {
        for a in 0..m {
            let mut row = vec![0i64; 2 * m];
            row[a] = 1;
            row[m + a] = -1;
            seed.insert(&row);
        }
    }
    let subs = subsets(m);
    let mut out = Vec::new();
    for i in &subs {
        for j in &subs {
            if family == Family::Rose && i != j {
                continue;
            }
            out.push(Group {
                forests: covering_forests(m, i, j),
                seed: seed.clone(),
            });
        }
    }
    out
}

/// A complete vertex: sorted forest indices within a group and the marginal.
struct Found {
    group: usize,
    forests: Vec<usize>,
    u: Vec<Rational>,
}

struct Search<'a> {
    m: usize,
    n: usize,
    group: usize,
    forests: &'a [Forest],
    budget: u64,
    spent: u64,
    found: Vec<Found>,
    census: VertexCensus,
    keep: bool,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.spent += 1;
        if self.spent > self.budget {
            return Err(Error::BudgetExceeded(format!(
                "forest search exceeded {} steps",
                self.budget
            )));
        }
        Ok(())
    }

    fn dfs(&mut self, chosen: &mut Vec<usize>, start: usize, basis: &Basis) -> Result<()> {
        self.tick()?;
        let target = 2 * self.m - 1;
        if basis.rank() == target {
            return self.complete(chosen, basis);
        }
        if chosen.len() == self.n {
            return Ok(());
        }
        for i in start..self.forests.len() {
            let mut b = basis.clone();
            for r in &self.forests[i].rows {
                b.insert(r);
            }
            if b.rank() > target {
                continue;
            }
            chosen.push(i);
            self.dfs(chosen, i, &b)?;
            chosen.pop();
        }
        Ok(())
    }

    /// Rank is `2m - 1`: the marginal is fixed, fill the remaining slots with
    /// compatible forests.
    fn complete(&mut self, chosen: &mut Vec<usize>, basis: &Basis) -> Result<()> {
        let Some(w) = basis.kernel(self.m) else {
            return Ok(());
        };
        if w.iter().any(|&x| x < 0) {
            return Ok(());
        }
        if !chosen.iter().all(|&i| self.forests[i].positive_at(&w)) {
            return Ok(());
        }
        let u: Vec<Rational> = if self.keep {
            let s: i128 = w[..self.m].iter().sum();
            w.iter()
                .map(|&x| Rational::new(BigInt::from(x), BigInt::from(s)))
                .collect()
        } else {
            Vec::new()
        };
        let last = *chosen.last().expect("rank needs a forest");
        let compatible: Vec<usize> = (last..self.forests.len())
            .filter(|&i| self.forests[i].annihilates(&w) && self.forests[i].positive_at(&w))
            .collect();
        let need = self.n - chosen.len();
        let mut idx = vec![0usize; need];
        loop {
            self.tick()?;
            let mut full = chosen.clone();
            full.extend(idx.iter().map(|&k| compatible[k]));
            self.record(full, &u);
            // Next multiset of size `need` from `compatible`, as a non-decreasing index list.
            let Some(pos) = (0..need).rev().find(|&p| idx[p] + 1 < compatible.len()) else {
                break;
            };
            let v = idx[pos] + 1;
            for x in &mut idx[pos..] {
                *x = v;
            }
        }
        Ok(())
    }

    fn record(&mut self, full: Vec<usize>, u: &[Rational]) {
        let deterministic = full.iter().all(|&i| self.forests[i].edges.len() == 1);
        let collapsed = full.iter().filter(|&&i| self.forests[i].diagonal).count();
        self.census.record(multinomial(&full), deterministic, collapsed);
        if self.keep {
            self.found.push(Found {
                group: self.group,
                forests: full,
                u: u.to_vec(),
            });
        }
    }
}

/// `n! / prod(multiplicity!)` for a sorted index list.
fn multinomial(sorted: &[usize]) -> u128 {
    let mut acc: u128 = 1;
    let mut run = 0u128;
    for (k, w) in sorted.iter().enumerate() {
        run = if k > 0 && sorted[k - 1] == *w { run + 1 } else { 1 };
        acc = acc * (k as u128 + 1) / run;
    }
    acc
}

fn search(
    family: Family,
    n: usize,
    m: usize,
    budget: u64,
    keep: bool,
) -> Result<(Vec<Group>, VertexCensus, Vec<Found>)> {
    if n == 0 || m < 2 {
        return Err(Error::Precondition("need n >= 1 and m >= 2".into()));
    }
    let gs = groups(family, m);
    let jobs: Vec<(usize, usize)> = gs
        .iter()
        .enumerate()
        .flat_map(|(g, grp)| (0..grp.forests.len()).map(move |i| (g, i)))
        .collect();
    let results: Vec<Result<(VertexCensus, Vec<Found>, u64)>> = jobs
        .par_iter()
        .map(|&(g, i)| {
            let grp = &gs[g];
            let mut s = Search {
                m,
                n,
                group: g,
                forests: &grp.forests,
                budget,
                spent: 0,
                found: Vec::new(),
                census: VertexCensus::default(),
                keep,
            };
            let mut b = grp.seed.clone();
            for r in &grp.forests[i].rows {
                b.insert(r);
            }
            if b.rank() < 2 * m {
                s.dfs(&mut vec![i], i, &b)?;
            }
            Ok((s.census, s.found, s.spent))
        })
        .collect();
    let mut census = VertexCensus::default();
    let mut found = Vec::new();
    let mut spent = 0u64;
    for r in results {
        let (c, f, sp) = r?;
        census.add(&c);
        found.extend(f);
        spent += sp;
        if spent > budget {
            return Err(Error::BudgetExceeded(format!(
                "forest search exceeded {budget} steps"
            )));
        }
    }
    Ok((gs, census, found))
}

/// Vertex counts from the forest criterion without materializing distributions.
pub fn count_vertices_by_criterion(
    family: Family,
    n: usize,
    m: usize,
    budget: u64,
) -> Result<VertexCensus> {
    Ok(search(family, n, m, budget, false)?.1)
}

/// All vertices of `Dist(D_n, m)` or `Dist(R_n, m)` from the forest criterion,
/// sorted by their flattened coordinates.
pub fn enumerate_vertices_by_criterion(
    family: Family,
    n: usize,
    m: usize,
    budget: u64,
) -> Result<Vec<GraphDistribution>> {
    let s = family.scenario(n, m)?;
    let (gs, _, found) = search(family, n, m, budget, true)?;
    let mut out: Vec<(crate::polytope::Point, GraphDistribution)> = Vec::new();
    for f in found {
        let forests = &gs[f.group].forests;
        let mats: Vec<RationalMatrix> = f
            .forests
            .iter()
            .map(|&i| {
                let fr = &forests[i];
                let mut q = RationalMatrix::zeros(m, m);
                for (&(a, b), v) in fr.edges.iter().zip(fr.values(&f.u)) {
                    q.set(a, b, v);
                }
                q
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        loop {
            let tuple: Vec<RationalMatrix> = order.iter().map(|&k| mats[k].clone()).collect();
            let p = GraphDistribution::from_edges(&s, tuple)?;
            out.push((p.flatten(), p));
            if !next_distinct_permutation(&mut order, &f.forests) {
                break;
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, p)| p).collect())
}

/// Advances `order` to the next arrangement of the multiset `keys[order]`,
/// skipping arrangements that repeat an earlier one.
fn next_distinct_permutation(order: &mut [usize], keys: &[usize]) -> bool {
    let mut seq: Vec<usize> = order.iter().map(|&k| keys[k]).collect();
    let n = seq.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| seq[i] < seq[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| seq[j] > seq[i]).expect("exists");
    seq.swap(i, j);
    seq[i + 1..].reverse();
    // Map back to positions: any index list realizing `seq` works.
    let mut used = vec![false; keys.len()];
    for (slot, key) in order.iter_mut().zip(&seq) {
        let k = (0..keys.len())
            .find(|&k| !used[k] && keys[k] == *key)
            .expect("same multiset");
        used[k] = true;
        *slot = k;
    }
    true
}

/// [`enumerate_vertices_by_criterion`] for dipoles with the default budget.
pub fn enumerate_dipole_vertices(n: usize, m: usize) -> Result<Vec<GraphDistribution>> {
    enumerate_vertices_by_criterion(Family::Dipole, n, m, DEFAULT_SEARCH_BUDGET)
}

/// [`enumerate_vertices_by_criterion`] for roses with the default budget.
pub fn enumerate_rose_vertices(n: usize, m: usize) -> Result<Vec<GraphDistribution>> {
    enumerate_vertices_by_criterion(Family::Rose, n, m, DEFAULT_SEARCH_BUDGET)
}
