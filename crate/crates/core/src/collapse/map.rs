use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{Rational, RationalMatrix};
use crate::scenario::{build_polytope, GraphDistribution, Scenario, UnionFind};

/// The quotient `X/T` of a scenario by an edge set, with the projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseMap {
    source: Scenario,
    collapsed: Vec<usize>,
    quotient: Scenario,
    node_map: Vec<usize>,
    edge_map: Vec<Option<usize>>,
}

/// Contracts the edges `t`. Rejects edge sets containing a cycle.
pub fn collapse(s: &Scenario, t: &[&str]) -> Result<CollapseMap> {
    collapse_with(s, t, false)
}

/// Like [`collapse`]; with `allow_cycles` an edge whose endpoints are already
/// identified is collapsed as well, onto their common node.
pub fn collapse_with(s: &Scenario, t: &[&str], allow_cycles: bool) -> Result<CollapseMap> {
    let mut collapsed = Vec::new();
    for id in t {
        let e = s
            .edge_index(id)
            .ok_or_else(|| Error::InvalidScenario(format!("unknown edge `{id}`")))?;
        if !collapsed.contains(&e) {
            collapsed.push(e);
        }
    }
    collapsed.sort_unstable();
    let mut uf = UnionFind::new(s.nodes().len());
    for &e in &collapsed {
        let edge = &s.edges()[e];
        if !uf.union(edge.source, edge.target) && !allow_cycles {
            return Err(Error::InvalidScenario(format!(
                "collapsing `{}` would close a cycle",
                edge.id
            )));
        }
    }
    // Quotient nodes in order of their first source node.
    let mut roots: Vec<usize> = Vec::new();
    let mut node_map = Vec::with_capacity(s.nodes().len());
    for v in 0..s.nodes().len() {
        let r = uf.find(v);
        let k = roots.iter().position(|&x| x == r).unwrap_or_else(|| {
            roots.push(r);
            roots.len() - 1
        });
        node_map.push(k);
    }
    let names: Vec<String> = (0..roots.len())
        .map(|k| {
            let members: Vec<&str> = (0..s.nodes().len())
                .filter(|&v| node_map[v] == k)
                .map(|v| s.nodes()[v].as_str())
                .collect();
            members.join("+")
        })
        .collect();
    let mut edges = Vec::new();
    let mut edge_map = Vec::with_capacity(s.edges().len());
    for (i, e) in s.edges().iter().enumerate() {
        if collapsed.binary_search(&i).is_ok() {
            edge_map.push(None);
        } else {
            edge_map.push(Some(edges.len()));
            edges.push((
                e.id.clone(),
                names[node_map[e.source]].clone(),
                names[node_map[e.target]].clone(),
            ));
        }
    }
    let quotient = Scenario::new(s.outcomes(), names, edges)?;
    Ok(CollapseMap {
        source: s.clone(),
        collapsed,
        quotient,
        node_map,
        edge_map,
    })
}

impl CollapseMap {
    pub fn source(&self) -> &Scenario {
        &self.source
    }

    pub fn quotient(&self) -> &Scenario {
        &self.quotient
    }

    /// Ids of the collapsed edges, in source order.
    pub fn collapsed_edges(&self) -> Vec<&str> {
        self.collapsed
            .iter()
            .map(|&e| self.source.edges()[e].id.as_str())
            .collect()
    }

    /// Quotient node index of each source node.
    pub fn node_map(&self) -> &[usize] {
        &self.node_map
    }

    /// Quotient edge index of each source edge, `None` if collapsed.
    pub fn edge_map(&self) -> &[Option<usize>] {
        &self.edge_map
    }

    /// Pulls `p` back to the source: surviving edges keep their matrices, a
    /// collapsed edge gets `diag(p_v)` for the node `v` it was contracted into.
    pub fn pullback(&self, p: &GraphDistribution) -> Result<GraphDistribution> {
        if p.node_ids() != self.quotient.nodes() || p.edge_ids().len() != self.quotient.edges().len() {
            return Err(Error::InvalidDistribution(
                "distribution is not on the quotient scenario".into(),
            ));
        }
        if !self.quotient.edges().is_empty() {
            build_polytope(&self.quotient)?.check_point(&p.flatten())?;
        }
        let m = self.source.outcomes();
        let nodes: Vec<Vec<Rational>> = self
            .node_map
            .iter()
            .map(|&k| p.node_vectors()[k].clone())
            .collect();
        let mats = self
            .source
            .edges()
            .iter()
            .zip(&self.edge_map)
            .map(|(e, img)| match img {
                Some(k) => p.edge_matrices()[*k].clone(),
                None => {
                    let v = &p.node_vectors()[self.node_map[e.source]];
                    let mut q = RationalMatrix::zeros(m, m);
                    for (a, x) in v.iter().enumerate() {
                        q.set(a, a, x.clone());
                    }
                    q
                }
            })
            .collect();
        GraphDistribution::from_parts(&self.source, Some(nodes), mats)
    }
}

/// True iff every off-diagonal entry is zero.
pub fn is_collapsed(q: &RationalMatrix) -> bool {
    (0..q.rows()).all(|a| (0..q.cols()).all(|b| a == b || q.get(a, b).is_zero()))
}

/// Number of edges of `p` whose matrix is collapsed.
pub fn collapsed_edge_count(p: &GraphDistribution) -> usize {
    p.edge_matrices().iter().filter(|q| is_collapsed(q)).count()
}
