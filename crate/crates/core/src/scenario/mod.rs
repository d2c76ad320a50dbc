//! Measurement scenarios (directed multigraphs with `m` outcomes per node),
//! graph distributions on them, and the polytope `Dist(X, m)`.

mod families;
mod format;

pub use families::{bipartite, cycle, dipole, path, rose, star, tree_from_parents};
pub use format::{
    parse_distribution, parse_distribution_str, parse_scenario, parse_scenario_str,
    write_distribution, write_scenario,
};

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{lp_feasible, Feasibility, Rational, RationalMatrix};
use crate::polytope::{Point, StandardFormPolytope};

/// Largest number of deterministic columns [`contextuality`] will put in its LP.
pub const MAX_DETERMINISTIC_COLUMNS: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    /// Index of the source node `d1`; indexes the rows of the edge matrix.
    pub source: usize,
    /// Index of the target node `d0`; indexes the columns of the edge matrix.
    pub target: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// A directed multigraph with an outcome count. Parallel edges and loops are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scenario {
    outcomes: usize,
    nodes: Vec<String>,
    edges: Vec<Edge>,
}

impl Scenario {
    /// `edges` are `(id, source, target)` with node ids.
    pub fn new<N, E>(outcomes: usize, nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        if outcomes < 2 {
            return Err(Error::InvalidScenario(format!(
                "need at least 2 outcomes, got {outcomes}"
            )));
        }
        let nodes: Vec<String> = nodes.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, v) in nodes.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidScenario(format!("duplicate node `{v}`")));
            }
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (id, s, t) in edges {
            if !seen.insert(id.clone()) {
                return Err(Error::InvalidScenario(format!("duplicate edge `{id}`")));
            }
            let lookup = |v: &str| {
                index.get(v).copied().ok_or_else(|| {
                    Error::InvalidScenario(format!("edge `{id}` references unknown node `{v}`"))
                })
            };
            let source = lookup(&s)?;
            let target = lookup(&t)?;
            out.push(Edge { id, source, target });
        }
        Ok(Scenario {
            outcomes,
            nodes,
            edges: out,
        })
    }

    pub fn outcomes(&self) -> usize {
        self.outcomes
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|v| v == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn source_id(&self, e: &Edge) -> &str {
        &self.nodes[e.source]
    }

    pub fn target_id(&self, e: &Edge) -> &str {
        &self.nodes[e.target]
    }

    /// Same graph with a different outcome count.
    pub fn with_outcomes(&self, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidScenario(format!("need at least 2 outcomes, got {m}")));
        }
        Ok(Scenario {
            outcomes: m,
            ..self.clone()
        })
    }

    /// Nodes with no incident edge.
    pub fn isolated_nodes(&self) -> Vec<&str> {
        let mut used = vec![false; self.nodes.len()];
        for e in &self.edges {
            used[e.source] = true;
            used[e.target] = true;
        }
        self.nodes
            .iter()
            .zip(used)
            .filter(|(_, u)| !u)
            .map(|(v, _)| v.as_str())
            .collect()
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut uf = UnionFind::new(self.nodes.len());
        for e in &self.edges {
            uf.union(e.source, e.target);
        }
        let r = uf.find(0);
        (1..self.nodes.len()).all(|i| uf.find(i) == r)
    }

    /// The subscenario on the given node and edge ids. Every edge endpoint
    /// must be among the chosen nodes.
    pub fn subscenario(&self, node_ids: &[&str], edge_ids: &[&str]) -> Result<Scenario> {
        for v in node_ids {
            if self.node_index(v).is_none() {
                return Err(Error::InvalidScenario(format!("unknown node `{v}`")));
            }
        }
        let mut edges = Vec::new();
        for id in edge_ids {
            let e = self
                .edge_index(id)
                .map(|i| &self.edges[i])
                .ok_or_else(|| Error::InvalidScenario(format!("unknown edge `{id}`")))?;
            edges.push((
                e.id.clone(),
                self.source_id(e).to_string(),
                self.target_id(e).to_string(),
            ));
        }
        Scenario::new(self.outcomes, node_ids.iter().map(|s| s.to_string()), edges)
    }

    /// True iff every node and edge of `sub` occurs here with the same endpoints.
    pub fn contains(&self, sub: &Scenario) -> bool {
        sub.outcomes == self.outcomes
            && sub.nodes.iter().all(|v| self.node_index(v).is_some())
            && sub.edges.iter().all(|e| {
                self.edge_index(&e.id).is_some_and(|i| {
                    let f = &self.edges[i];
                    self.source_id(f) == sub.source_id(e) && self.target_id(f) == sub.target_id(e)
                })
            })
    }

    /// Index of entry `(a, b)` of edge `e` in the flattened variable vector.
    pub fn variable(&self, e: usize, a: usize, b: usize) -> usize {
        let m = self.outcomes;
        e * m * m + a * m + b
    }

    pub fn num_variables(&self) -> usize {
        self.edges.len() * self.outcomes * self.outcomes
    }

    /// Number of deterministic distributions, `m^|nodes|`, saturating.
    pub fn deterministic_count(&self) -> u64 {
        (self.outcomes as u64)
            .checked_pow(self.nodes.len() as u32)
            .unwrap_or(u64::MAX)
    }
}

/// Which marginal of an edge matrix a node sees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Rows,
    Cols,
}

fn incidences(s: &Scenario) -> Vec<Vec<(usize, Side)>> {
    let mut inc = vec![Vec::new(); s.nodes.len()];
    for (i, e) in s.edges.iter().enumerate() {
        inc[e.source].push((i, Side::Rows));
        inc[e.target].push((i, Side::Cols));
    }
    inc
}

/// `Dist(X, m)` in standard form. Variables are the edge entries `p[σ](a,b)`;
/// rows are per-edge normalization and node-marginal agreement against the
/// first incidence of each node.
pub fn build_polytope(s: &Scenario) -> Result<StandardFormPolytope> {
    if s.edges.is_empty() {
        return Err(Error::InvalidScenario("scenario has no edges".into()));
    }
    if let Some(v) = s.isolated_nodes().first() {
        return Err(Error::InvalidScenario(format!("node `{v}` has no incident edge")));
    }
    let m = s.outcomes;
    let nv = s.num_variables();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for e in 0..s.edges.len() {
        let mut row = vec![Rational::zero(); nv];
        for a in 0..m {
            for b in 0..m {
                row[s.variable(e, a, b)] = Rational::one();
            }
        }
        rows.push(row);
        rhs.push(Rational::one());
    }
    let marginal = |row: &mut Vec<Rational>, e: usize, side: Side, k: usize, sign: &Rational| {
        for j in 0..m {
            let idx = match side {
                Side::Rows => s.variable(e, k, j),
                Side::Cols => s.variable(e, j, k),
            };
            row[idx] += sign;
        }
    };
    let one = Rational::one();
    let minus = -Rational::one();
    for inc in incidences(s) {
        let Some(&(e0, side0)) = inc.first() else {
            continue;
        };
        for &(e, side) in &inc[1..] {
            for k in 0..m {
                let mut row = vec![Rational::zero(); nv];
                marginal(&mut row, e0, side0, k, &one);
                marginal(&mut row, e, side, k, &minus);
                rows.push(row);
                rhs.push(Rational::zero());
            }
        }
    }
    let a = RationalMatrix::from_rows_with_cols(rows, nv)?;
    let labels = s
        .edges
        .iter()
        .flat_map(|e| {
            (0..m).flat_map(move |a| (0..m).map(move |b| format!("p[{}]({a},{b})", e.id)))
        })
        .collect();
    StandardFormPolytope::with_labels(a, rhs, labels)
}

/// A point of `Dist(X, m)`: one probability matrix per edge and the induced
/// probability vector per node, both in scenario order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphDistribution {
    outcomes: usize,
    node_ids: Vec<String>,
    nodes: Vec<Vec<Rational>>,
    edge_ids: Vec<String>,
    edges: Vec<RationalMatrix>,
}

impl GraphDistribution {
    /// Validates the edge matrices and derives the node vectors. Every node
    /// must have an incident edge.
    pub fn from_edges(s: &Scenario, matrices: Vec<RationalMatrix>) -> Result<Self> {
        if let Some(v) = s.isolated_nodes().first() {
            return Err(Error::InvalidDistribution(format!(
                "node `{v}` has no incident edge, its marginal is undetermined"
            )));
        }
        Self::from_parts(s, None, matrices)
    }

    /// Like [`from_edges`](Self::from_edges) but with explicit node vectors,
    /// which is the only way to describe nodes without edges.
    pub fn from_parts(
        s: &Scenario,
        node_vectors: Option<Vec<Vec<Rational>>>,
        matrices: Vec<RationalMatrix>,
    ) -> Result<Self> {
        let m = s.outcomes;
        if matrices.len() != s.edges.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} matrices for {} edges",
                matrices.len(),
                s.edges.len()
            )));
        }
        for (e, q) in s.edges.iter().zip(&matrices) {
            check_probability_matrix(&e.id, q, m)?;
        }
        let mut nodes: Vec<Option<Vec<Rational>>> = match node_vectors {
            Some(v) => {
                if v.len() != s.nodes.len() {
                    return Err(Error::InvalidDistribution(format!(
                        "{} node vectors for {} nodes",
                        v.len(),
                        s.nodes.len()
                    )));
                }
                for (id, p) in s.nodes.iter().zip(&v) {
                    check_probability_vector(id, p, m)?;
                }
                v.into_iter().map(Some).collect()
            }
            None => vec![None; s.nodes.len()],
        };
        for (v, inc) in incidences(s).into_iter().enumerate() {
            for (e, side) in inc {
                let marg = match side {
                    Side::Rows => row_sums(&matrices[e]),
                    Side::Cols => col_sums(&matrices[e]),
                };
                match &nodes[v] {
                    None => nodes[v] = Some(marg),
                    Some(prev) if *prev != marg => {
                        let which = if side == Side::Rows { "row" } else { "column" };
                        return Err(Error::InvalidDistribution(format!(
                            "marginals disagree at node `{}`: {which} sums of edge `{}` are {} but {} was expected",
                            s.nodes[v],
                            s.edges[e].id,
                            fmt_vec(&marg),
                            fmt_vec(prev)
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(GraphDistribution {
            outcomes: m,
            node_ids: s.nodes.clone(),
            nodes: nodes.into_iter().map(|v| v.expect("every node has a vector")).collect(),
            edge_ids: s.edges.iter().map(|e| e.id.clone()).collect(),
            edges: matrices,
        })
    }

    /// Reads edge matrices off a flattened point of [`build_polytope`].
    pub fn from_point(s: &Scenario, x: &Point) -> Result<Self> {
        let m = s.outcomes;
        if x.dim() != s.num_variables() {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, scenario has {} variables",
                x.dim(),
                s.num_variables()
            )));
        }
        let mats = x
            .coords()
            .chunks(m * m)
            .map(|c| {
                RationalMatrix::from_rows(c.chunks(m).map(<[Rational]>::to_vec).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_edges(s, mats)
    }

    /// Edge entries in variable order.
    pub fn flatten(&self) -> Point {
        Point::new(
            self.edges
                .iter()
                .flat_map(|q| q.to_rows().into_iter().flatten())
                .collect(),
        )
    }

    pub fn outcomes(&self) -> usize {
        self.outcomes
    }

    pub fn edge_matrices(&self) -> &[RationalMatrix] {
        &self.edges
    }

    pub fn node_vectors(&self) -> &[Vec<Rational>] {
        &self.nodes
    }

    pub fn edge_ids(&self) -> &[String] {
        &self.edge_ids
    }

    pub fn node_ids(&self) -> &[String] {
        &self.node_ids
    }

    pub fn edge(&self, id: &str) -> Option<&RationalMatrix> {
        self.edge_ids.iter().position(|e| e == id).map(|i| &self.edges[i])
    }

    pub fn node(&self, id: &str) -> Option<&[Rational]> {
        self.node_ids.iter().position(|v| v == id).map(|i| self.nodes[i].as_slice())
    }

    /// Node vectors followed by edge matrices, flattened.
    pub fn node_and_edge_vector(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.nodes.iter().flatten().cloned().collect();
        v.extend(self.flatten().into_coords());
        v
    }

    /// True iff every edge matrix has a single entry 1.
    pub fn is_deterministic(&self) -> bool {
        self.edges.iter().all(|q| {
            q.to_rows().iter().flatten().filter(|x| !x.is_zero()).count() == 1
        })
    }
}

fn row_sums(q: &RationalMatrix) -> Vec<Rational> {
    (0..q.rows()).map(|r| q.row(r).iter().sum()).collect()
}

fn col_sums(q: &RationalMatrix) -> Vec<Rational> {
    (0..q.cols())
        .map(|c| (0..q.rows()).map(|r| q.get(r, c)).sum())
        .collect()
}

fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn check_probability_matrix(edge: &str, q: &RationalMatrix, m: usize) -> Result<()> {
    if q.rows() != m || q.cols() != m {
        return Err(Error::InvalidDistribution(format!(
            "edge `{edge}` has a {}x{} matrix, expected {m}x{m}",
            q.rows(),
            q.cols()
        )));
    }
    if q.to_rows().iter().flatten().any(Signed::is_negative) {
        return Err(Error::InvalidDistribution(format!(
            "edge `{edge}` has a negative entry"
        )));
    }
    let total: Rational = q.to_rows().into_iter().flatten().sum();
    if !total.is_one() {
        return Err(Error::InvalidDistribution(format!(
            "edge `{edge}` sums to {total}, not 1"
        )));
    }
    Ok(())
}

fn check_probability_vector(node: &str, p: &[Rational], m: usize) -> Result<()> {
    if p.len() != m || p.iter().any(Signed::is_negative) || !p.iter().sum::<Rational>().is_one() {
        return Err(Error::InvalidDistribution(format!(
            "node `{node}` vector {} is not a probability vector on {m} outcomes",
            fmt_vec(p)
        )));
    }
    Ok(())
}

/// `E_{a,b}`: the m x m matrix with a single 1 at `(a, b)`.
pub fn unit_matrix(m: usize, a: usize, b: usize) -> RationalMatrix {
    let mut q = RationalMatrix::zeros(m, m);
    q.set(a, b, Rational::one());
    q
}

/// The deterministic distribution induced by an outcome per node.
pub fn deterministic_distribution(s: &Scenario, assignment: &[usize]) -> Result<GraphDistribution> {
    let m = s.outcomes;
    if assignment.len() != s.nodes.len() || assignment.iter().any(|&a| a >= m) {
        return Err(Error::InvalidDistribution(
            "assignment must give one outcome in range per node".into(),
        ));
    }
    let mats = s
        .edges
        .iter()
        .map(|e| unit_matrix(m, assignment[e.source], assignment[e.target]))
        .collect();
    let nodes = assignment
        .iter()
        .map(|&a| {
            let mut v = vec![Rational::zero(); m];
            v[a] = Rational::one();
            v
        })
        .collect();
    GraphDistribution::from_parts(s, Some(nodes), mats)
}

/// All outcome assignments `nodes -> Z_m` in mixed-radix order (first node slowest).
pub fn assignments(num_nodes: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (m as u64).pow(num_nodes as u32);
    (0..total).map(move |mut k| {
        let mut a = vec![0; num_nodes];
        for slot in a.iter_mut().rev() {
            *slot = (k % m as u64) as usize;
            k /= m as u64;
        }
        a
    })
}

/// One deterministic distribution per assignment, `m^|nodes|` in total.
pub fn deterministic_distributions(s: &Scenario) -> Result<Vec<GraphDistribution>> {
    if s.deterministic_count() > MAX_DETERMINISTIC_COLUMNS {
        return Err(Error::BudgetExceeded(format!(
            "{} deterministic distributions",
            s.deterministic_count()
        )));
    }
    assignments(s.nodes.len(), s.outcomes)
        .map(|a| deterministic_distribution(s, &a))
        .collect()
}

/// A cyclic arrangement `[i_1, ..., i_k]` of distinct outcomes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclePerm(Vec<usize>);

impl CyclePerm {
    pub fn new(outcomes: Vec<usize>, m: usize) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(Error::InvalidDistribution("empty cycle".into()));
        }
        let mut seen = vec![false; m];
        for &i in &outcomes {
            if i >= m {
                return Err(Error::InvalidDistribution(format!(
                    "outcome {i} out of range for m = {m}"
                )));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidDistribution(format!(
                    "outcome {i} repeated in cycle"
                )));
            }
        }
        Ok(CyclePerm(outcomes))
    }

    pub fn outcomes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The m x m matrix with `1/k` at `(i_j, i_{j+1 mod k})`.
    pub fn matrix(&self, m: usize) -> RationalMatrix {
        let k = self.0.len();
        let w = Rational::new(1.into(), (k as i64).into());
        let mut q = RationalMatrix::zeros(m, m);
        for j in 0..k {
            q.set(self.0[j], self.0[(j + 1) % k], w.clone());
        }
        q
    }
}

/// Every cycle on distinct outcomes of `Z_m`, each listed once starting at
/// its smallest element.
pub fn all_cycles(m: usize) -> Vec<CyclePerm> {
    fn extend(m: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<CyclePerm>) {
        out.push(CyclePerm(cur.clone()));
        for i in cur[0] + 1..m {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                extend(m, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..m {
        let mut used = vec![false; m];
        used[s] = true;
        extend(m, &mut vec![s], &mut used, &mut out);
    }
    out.sort();
    out
}

/// The cycle distribution of `mu` on the single loop `C(1)` with `m` outcomes.
pub fn cycle_distribution(mu: &CyclePerm, m: usize) -> Result<GraphDistribution> {
    let mu = CyclePerm::new(mu.0.clone(), m)?;
    GraphDistribution::from_edges(&rose(1, m)?, vec![mu.matrix(m)])
}

/// Verdict of [`contextuality`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contextuality {
    /// Convex weights on deterministic distributions, keyed by node assignment.
    NonContextual(Vec<(Vec<usize>, Rational)>),
    Contextual,
}

/// Decides whether `p` is a convex combination of deterministic distributions.
pub fn contextuality(s: &Scenario, p: &GraphDistribution) -> Result<Contextuality> {
    let x = p.flatten();
    build_polytope(s)?.check_point(&x)?;
    let count = s.deterministic_count();
    if count > MAX_DETERMINISTIC_COLUMNS {
        return Err(Error::BudgetExceeded(format!(
            "{count} deterministic columns exceed the limit of {MAX_DETERMINISTIC_COLUMNS}"
        )));
    }
    let assigns: Vec<Vec<usize>> = assignments(s.nodes.len(), s.outcomes).collect();
    let nv = s.num_variables();
    let mut a = RationalMatrix::zeros(nv + 1, assigns.len());
    for (j, f) in assigns.iter().enumerate() {
        for (e, edge) in s.edges.iter().enumerate() {
            a.set(s.variable(e, f[edge.source], f[edge.target]), j, Rational::one());
        }
        a.set(nv, j, Rational::one());
    }
    let mut b = x.into_coords();
    b.push(Rational::one());
    Ok(match lp_feasible(&a, &b)? {
        Feasibility::Infeasible => Contextuality::Contextual,
        Feasibility::Feasible(w) => Contextuality::NonContextual(
            assigns
                .into_iter()
                .zip(w)
                .filter(|(_, l)| !l.is_zero())
                .collect(),
        ),
    })
}

pub fn is_contextual(s: &Scenario, p: &GraphDistribution) -> Result<bool> {
    Ok(contextuality(s, p)? == Contextuality::Contextual)
}

/// Restriction of `p` to a subscenario: copies the matching node vectors and edge matrices.
pub fn restrict(s: &Scenario, p: &GraphDistribution, sub: &Scenario) -> Result<GraphDistribution> {
    if !s.contains(sub) {
        return Err(Error::InvalidScenario(
            "subscenario is not contained in the scenario".into(),
        ));
    }
    let nodes = sub
        .nodes
        .iter()
        .map(|v| p.node(v).map(<[Rational]>::to_vec))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidDistribution("distribution does not match scenario".into()))?;
    let mats = sub
        .edges
        .iter()
        .map(|e| p.edge(&e.id).cloned())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidDistribution("distribution does not match scenario".into()))?;
    GraphDistribution::from_parts(sub, Some(nodes), mats)
}

/// Plain union-find with path halving.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::polytope::{enumerate_vertices, is_vertex};

    #[test]
    fn single_edge_vertices_are_unit_matrices() {
        let s = dipole(1, 2).unwrap();
        let p = build_polytope(&s).unwrap();
        assert_eq!(p.dim(), 4);
        let v = enumerate_vertices(&p).unwrap();
        assert_eq!(v.len(), 4);
        for x in v {
            assert!(GraphDistribution::from_point(&s, &x).unwrap().is_deterministic());
        }
    }

    #[test]
    fn loop_with_three_outcomes() {
        let s = rose(1, 3).unwrap();
        assert_eq!(enumerate_vertices(&build_polytope(&s).unwrap()).unwrap().len(), 8);
    }

    #[test]
    fn invalid_scenarios() {
        assert!(Scenario::new(1, ["a"], vec![]).is_err());
        let s = Scenario::new(2, ["a"], vec![]).unwrap();
        assert!(build_polytope(&s).is_err());
        assert!(Scenario::new(
            2,
            ["a"],
            vec![("e".into(), "a".into(), "zz".into())]
        )
        .is_err());
    }

    #[test]
    fn deterministic_counts() {
        let d = deterministic_distributions(&dipole(3, 3).unwrap()).unwrap();
        assert_eq!(d.len(), 9);
        let collapsed_everywhere = d
            .iter()
            .filter(|p| p.edge_matrices().iter().all(|q| (0..3).any(|a| q.get(a, a).is_one())))
            .count();
        assert_eq!(collapsed_everywhere, 3);
        assert_eq!(deterministic_distributions(&rose(2, 4).unwrap()).unwrap().len(), 4);
        let s = bipartite(2, 2, 2).unwrap();
        let p = build_polytope(&s).unwrap();
        for d in deterministic_distributions(&s).unwrap() {
            assert!(is_vertex(&p, &d.flatten()).unwrap());
        }
    }

    #[test]
    fn cycle_matrices() {
        let m0 = cycle_distribution(&CyclePerm::new(vec![0], 4).unwrap(), 4).unwrap();
        assert_eq!(m0.edge_matrices()[0], unit_matrix(4, 0, 0));
        let pm = cycle_distribution(&CyclePerm::new(vec![0, 1], 2).unwrap(), 2).unwrap();
        let expect = RationalMatrix::from_rows(vec![
            vec![rat(0, 1), rat(1, 2)],
            vec![rat(1, 2), rat(0, 1)],
        ])
        .unwrap();
        assert_eq!(pm.edge_matrices()[0], expect);
        let q = CyclePerm::new(vec![0, 1, 2, 3], 4).unwrap().matrix(4);
        for i in 0..4 {
            assert_eq!(q.get(i, (i + 1) % 4), &rat(1, 4));
        }
        assert!(CyclePerm::new(vec![0, 0], 3).is_err());
        assert_eq!(all_cycles(3).len(), 8);
        assert_eq!(all_cycles(2).len(), 3);
    }

    #[test]
    fn marginal_mismatch_names_node() {
        let s = path(3, 2).unwrap();
        let a = unit_matrix(2, 0, 0);
        let b = unit_matrix(2, 1, 1);
        let err = GraphDistribution::from_edges(&s, vec![a, b]).unwrap_err();
        assert!(err.to_string().contains("`v2`"), "{err}");
    }

    #[test]
    fn deterministic_is_not_contextual() {
        let s = cycle(4, 2).unwrap();
        let d = deterministic_distribution(&s, &[0, 1, 1, 0]).unwrap();
        assert!(!is_contextual(&s, &d).unwrap());
    }

    #[test]
    fn restriction_to_whole_graph_is_identity() {
        let s = cycle(3, 2).unwrap();
        let d = deterministic_distribution(&s, &[0, 1, 1]).unwrap();
        assert_eq!(restrict(&s, &d, &s).unwrap(), d);
    }
}
