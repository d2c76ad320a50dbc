use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use super::ProductSimplexVertex;
use crate::error::{Error, Result};
use crate::exact::{Rational, RationalMatrix};
use crate::scenario::UnionFind;

/// Bipartite graph on left vertices `u_0..u_{m-1}` and right vertices
/// `w_0..w_{m-1}`. A vertex counts as present iff it has an incident edge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SupportBipartiteGraph {
    m: usize,
    edges: BTreeSet<(usize, usize)>,
}

/// A connected component, as sorted left and right outcome labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Component {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl SupportBipartiteGraph {
    pub fn new(m: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().collect();
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= m || b >= m) {
            return Err(Error::Precondition(format!(
                "edge u{a}-w{b} out of range for m = {m}"
            )));
        }
        Ok(SupportBipartiteGraph { m, edges })
    }

    /// `H(A)`: an edge `u_a - w_b` for every `(e_a, e_b)` in `A`.
    pub fn from_a_set(a: &[ProductSimplexVertex]) -> Result<Self> {
        let m = a.first().map_or(0, ProductSimplexVertex::outcomes);
        let mut edges = BTreeSet::new();
        for v in a {
            if v.blocks().len() != 2 {
                return Err(Error::Precondition(format!(
                    "support graphs need 2 blocks, got {}",
                    v.blocks().len()
                )));
            }
            if v.outcomes() != m {
                return Err(Error::Precondition("mixed outcome counts".into()));
            }
            edges.insert((v.blocks()[0], v.blocks()[1]));
        }
        Ok(SupportBipartiteGraph { m, edges })
    }

    /// Edges at the nonzero entries of an m x m matrix.
    pub fn from_matrix(q: &RationalMatrix) -> Self {
        let edges = (0..q.rows())
            .flat_map(|a| (0..q.cols()).map(move |b| (a, b)))
            .filter(|&(a, b)| !q.get(a, b).is_zero())
            .collect();
        SupportBipartiteGraph {
            m: q.rows(),
            edges,
        }
    }

    pub fn outcomes(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn left_vertices(&self) -> BTreeSet<usize> {
        self.edges.iter().map(|e| e.0).collect()
    }

    pub fn right_vertices(&self) -> BTreeSet<usize> {
        self.edges.iter().map(|e| e.1).collect()
    }

    /// Union-find over `2m` vertices; left `a` is `a`, right `b` is `m + b`.
    fn union_find(&self) -> (UnionFind, bool) {
        let mut uf = UnionFind::new(2 * self.m);
        let mut acyclic = true;
        for &(a, b) in &self.edges {
            if !uf.union(a, self.m + b) {
                acyclic = false;
            }
        }
        (uf, acyclic)
    }

    pub fn is_acyclic(&self) -> bool {
        self.union_find().1
    }

    /// Components of the present vertices, ordered by smallest left label.
    pub fn components(&self) -> Vec<Component> {
        let (mut uf, _) = self.union_find();
        let mut comps: Vec<Component> = Vec::new();
        let mut root_of = Vec::new();
        let left = self.left_vertices();
        let right = self.right_vertices();
        for v in left.iter().copied().chain(right.iter().map(|b| self.m + b)) {
            let r = uf.find(v);
            let k = match root_of.iter().position(|&x| x == r) {
                Some(k) => k,
                None => {
                    root_of.push(r);
                    comps.push(Component {
                        left: Vec::new(),
                        right: Vec::new(),
                    });
                    comps.len() - 1
                }
            };
            if v < self.m {
                comps[k].left.push(v);
            } else {
                comps[k].right.push(v - self.m);
            }
        }
        comps.sort();
        comps
    }

    /// Components over all `2m` labels: present components plus a singleton
    /// for every label without edges. Left-only singletons sort among the
    /// components by their label; right-only singletons come last.
    pub fn components_with_singletons(&self) -> Vec<Component> {
        let mut comps = self.components();
        let left = self.left_vertices();
        let right = self.right_vertices();
        for a in (0..self.m).filter(|a| !left.contains(a)) {
            comps.push(Component {
                left: vec![a],
                right: vec![],
            });
        }
        comps.sort_by(|x, y| match (x.left.first(), y.left.first()) {
            (Some(a), Some(b)) => a.cmp(b),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => x.right.cmp(&y.right),
        });
        for b in (0..self.m).filter(|b| !right.contains(b)) {
            comps.push(Component {
                left: vec![],
                right: vec![b],
            });
        }
        comps
    }
}

impl fmt::Display for SupportBipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|(a, b)| format!("u{a}-w{b}")).collect();
        write!(f, "{{{}}}", parts.join(" "))
    }
}

/// Plain `Q` or `Q~` (with the rows `[I_m | -I_m]` appended).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QVariant {
    Plain,
    Tilde,
}

/// Where a row of a [`QMatrix`] comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowOrigin {
    Component { graph: usize, component: Component },
    Identity(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub matrix: RationalMatrix,
    pub origins: Vec<RowOrigin>,
}

impl QMatrix {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// Row of `Q` for one component: `+1` on its left labels, `-1` on its right labels.
pub fn component_row(c: &Component, m: usize) -> Vec<i64> {
    let mut row = vec![0; 2 * m];
    for &a in &c.left {
        row[a] = 1;
    }
    for &b in &c.right {
        row[m + b] = -1;
    }
    row
}

/// `Q(H_1, ..., H_n)` with one row per component of each graph, graphs in
/// order. Labels a graph does not use are singleton components, so each
/// graph's rows sum to `(1, ..., 1, -1, ..., -1)`.
pub fn q_matrix(hs: &[SupportBipartiteGraph], m: usize, variant: QVariant) -> Result<QMatrix> {
    if let Some(h) = hs.iter().find(|h| h.m != m) {
        return Err(Error::Precondition(format!(
            "support graph on {} outcomes, expected {m}",
            h.m
        )));
    }
    let mut rows = Vec::new();
    let mut origins = Vec::new();
    for (g, h) in hs.iter().enumerate() {
        for c in h.components_with_singletons() {
            rows.push(component_row(&c, m));
            origins.push(RowOrigin::Component {
                graph: g,
                component: c,
            });
        }
    }
    if variant == QVariant::Tilde {
        for a in 0..m {
            let mut row = vec![0; 2 * m];
            row[a] = 1;
            row[m + a] = -1;
            rows.push(row);
            origins.push(RowOrigin::Identity(a));
        }
    }
    let matrix = RationalMatrix::from_rows_with_cols(
        rows.into_iter()
            .map(|r| r.into_iter().map(|x| Rational::from_integer(x.into())).collect())
            .collect(),
        2 * m,
    )?;
    Ok(QMatrix { matrix, origins })
}

/// `Q` restricted to present components only, as in the bare definition of
/// `H(X)`; kept for comparison with the singleton-completed matrix.
pub fn q_matrix_present_only(hs: &[SupportBipartiteGraph], m: usize) -> Result<RationalMatrix> {
    let rows: Vec<Vec<Rational>> = hs
        .iter()
        .flat_map(|h| h.components())
        .map(|c| {
            component_row(&c, m)
                .into_iter()
                .map(|x| Rational::from_integer(x.into()))
                .collect()
        })
        .collect();
    RationalMatrix::from_rows_with_cols(rows, 2 * m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn acyclicity() {
        let single = SupportBipartiteGraph::new(2, [(0, 0)]).unwrap();
        assert!(single.is_acyclic());
        let square = SupportBipartiteGraph::new(2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert!(!square.is_acyclic());
    }

    #[test]
    fn single_edge_with_one_outcome() {
        let h = SupportBipartiteGraph::new(1, [(0, 0)]).unwrap();
        let q = q_matrix(&[h], 1, QVariant::Plain).unwrap();
        assert_eq!(q.matrix, RationalMatrix::from_integers(&[vec![1, -1]]).unwrap());
    }

    #[test]
    fn singletons_for_unused_labels() {
        let h = SupportBipartiteGraph::new(2, [(0, 0)]).unwrap();
        let q = q_matrix(&[h], 2, QVariant::Plain).unwrap();
        assert_eq!(
            q.matrix,
            RationalMatrix::from_integers(&[vec![1, 0, -1, 0], vec![0, 1, 0, 0], vec![0, 0, 0, -1]])
                .unwrap()
        );
        assert_eq!(q.rank(), 3);
    }

    #[test]
    fn wrong_block_count() {
        let v = ProductSimplexVertex::new(vec![0, 1, 2], 3).unwrap();
        assert!(SupportBipartiteGraph::from_a_set(&[v]).is_err());
    }
}
