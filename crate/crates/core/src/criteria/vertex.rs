//! Graph-theoretic vertex tests on dipoles and roses.

use std::fmt;

use num_traits::Zero;

use super::{q_matrix, ProductSimplexVertex, QMatrix, QVariant, SupportBipartiteGraph};
use crate::error::{Error, Result};
use crate::exact::RationalMatrix;
use crate::scenario::{build_polytope, GraphDistribution, Scenario};

/// Scenario shapes the criteria apply to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Two nodes, every edge between them. Edges pointing back to the source
    /// of the first edge are read transposed.
    Dipole,
    /// One node, every edge a loop.
    Rose,
    Other,
}

impl Shape {
    pub fn of(s: &Scenario) -> Shape {
        let edges = s.edges();
        if edges.is_empty() {
            return Shape::Other;
        }
        match s.nodes().len() {
            1 => Shape::Rose,
            2 => {
                if edges.iter().all(|e| !e.is_loop()) {
                    Shape::Dipole
                } else {
                    Shape::Other
                }
            }
            _ => Shape::Other,
        }
    }
}

/// Edge matrices with dipole edges oriented like the first edge.
fn oriented(s: &Scenario, p: &GraphDistribution) -> Vec<RationalMatrix> {
    let first = s.edges().first().map(|e| e.source);
    s.edges()
        .iter()
        .zip(p.edge_matrices())
        .map(|(e, q)| {
            if !e.is_loop() && Some(e.source) != first {
                q.transpose()
            } else {
                q.clone()
            }
        })
        .collect()
}

/// `A_i = {(e_a, e_b) : p_i(a, b) != 0}` for every edge of a dipole or rose.
pub fn a_sets(s: &Scenario, p: &GraphDistribution) -> Result<Vec<Vec<ProductSimplexVertex>>> {
    if Shape::of(s) == Shape::Other {
        return Err(Error::WrongShape(
            "A-sets are defined for dipole and rose scenarios".into(),
        ));
    }
    let m = s.outcomes();
    oriented(s, p)
        .iter()
        .map(|q| {
            let mut set = Vec::new();
            for a in 0..m {
                for b in 0..m {
                    if !q.get(a, b).is_zero() {
                        set.push(ProductSimplexVertex::pair(a, b, m)?);
                    }
                }
            }
            Ok(set)
        })
        .collect()
}

/// Certificate produced by [`dipole_is_vertex`] and [`rose_is_vertex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub graphs: Vec<SupportBipartiteGraph>,
    pub acyclic: Vec<bool>,
    pub q: QMatrix,
    pub rank: usize,
    /// `2m - 1`.
    pub required_rank: usize,
    pub is_vertex: bool,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (h, ok)) in self.graphs.iter().zip(&self.acyclic).enumerate() {
            let comps: Vec<String> = h
                .components_with_singletons()
                .iter()
                .map(|c| {
                    let l: Vec<String> = c.left.iter().map(|a| format!("u{a}")).collect();
                    let r: Vec<String> = c.right.iter().map(|b| format!("w{b}")).collect();
                    format!("{{{}}}", l.into_iter().chain(r).collect::<Vec<_>>().join(","))
                })
                .collect();
            writeln!(
                f,
                "H{}: {} {} components {}",
                i + 1,
                h,
                if *ok { "acyclic" } else { "cyclic" },
                comps.join(" ")
            )?;
        }
        writeln!(f, "Q ({} x {}):", self.q.matrix.rows(), self.q.matrix.cols())?;
        write!(f, "{}", self.q.matrix)?;
        writeln!(f, "rank {} (required {})", self.rank, self.required_rank)?;
        write!(f, "verdict: {}", if self.is_vertex { "vertex" } else { "not a vertex" })
    }
}

fn criterion(
    s: &Scenario,
    p: &GraphDistribution,
    want: Shape,
    variant: QVariant,
) -> Result<CriterionReport> {
    if Shape::of(s) != want {
        return Err(Error::WrongShape(format!("expected a {want:?} scenario")));
    }
    build_polytope(s)?.check_point(&p.flatten())?;
    let m = s.outcomes();
    let graphs: Vec<SupportBipartiteGraph> = oriented(s, p)
        .iter()
        .map(SupportBipartiteGraph::from_matrix)
        .collect();
    let acyclic: Vec<bool> = graphs.iter().map(SupportBipartiteGraph::is_acyclic).collect();
    let q = q_matrix(&graphs, m, variant)?;
    let rank = q.rank();
    let required_rank = 2 * m - 1;
    let is_vertex = acyclic.iter().all(|&a| a) && rank == required_rank;
    Ok(CriterionReport {
        graphs,
        acyclic,
        q,
        rank,
        required_rank,
        is_vertex,
    })
}

/// Vertex test on `D_n`: every support graph acyclic and `rank Q = 2m - 1`.
pub fn dipole_is_vertex(s: &Scenario, p: &GraphDistribution) -> Result<CriterionReport> {
    criterion(s, p, Shape::Dipole, QVariant::Plain)
}

/// Vertex test on `R_n`: every support graph acyclic and `rank Q~ = 2m - 1`.
pub fn rose_is_vertex(s: &Scenario, p: &GraphDistribution) -> Result<CriterionReport> {
    criterion(s, p, Shape::Rose, QVariant::Tilde)
}
