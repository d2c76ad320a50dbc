//! Building vertices from A-sets whose hulls meet in a single point.

use num_traits::Zero;

use super::ProductSimplexVertex;
use crate::error::{Error, Result};
use crate::exact::{Rational, RationalMatrix};
use crate::polytope::{affinely_independent, hull_intersection_unique, is_vertex, vsupp, HullIntersection};
use crate::scenario::{
    bipartite, build_polytope, cycle_distribution, dipole, rose, unit_matrix, CyclePerm,
    GraphDistribution, Scenario,
};

/// Independence, unique intersection and nonzero coefficients, in that order.
fn coefficients(points: &[Vec<Vec<Rational>>]) -> Result<Vec<Vec<Rational>>> {
    for (i, s) in points.iter().enumerate() {
        if !affinely_independent(s) {
            return Err(Error::Precondition(format!(
                "A{} is affinely dependent",
                i + 1
            )));
        }
    }
    match hull_intersection_unique(points)? {
        HullIntersection::Unique {
            coefficients: Some(c),
            ..
        } => {
            for (i, ci) in c.iter().enumerate() {
                if let Some(k) = ci.iter().position(Zero::is_zero) {
                    return Err(Error::Precondition(format!(
                        "coefficient {} of A{} is zero",
                        k + 1,
                        i + 1
                    )));
                }
            }
            Ok(c)
        }
        HullIntersection::Unique { .. } => unreachable!("independent sets give coefficients"),
        HullIntersection::Multiple => Err(Error::Precondition(
            "the hulls meet in more than one point".into(),
        )),
        HullIntersection::Empty => Err(Error::Precondition("the hulls do not meet".into())),
    }
}

fn verified(s: &Scenario, p: GraphDistribution) -> Result<GraphDistribution> {
    if !is_vertex(&build_polytope(s)?, &p.flatten())? {
        return Err(Error::Precondition(
            "the constructed distribution is not a vertex".into(),
        ));
    }
    Ok(p)
}

fn check_blocks(a_sets: &[Vec<ProductSimplexVertex>], blocks: usize, m: usize) -> Result<()> {
    for (i, a) in a_sets.iter().enumerate() {
        if a.is_empty() {
            return Err(Error::Precondition(format!("A{} is empty", i + 1)));
        }
        if let Some(v) = a.iter().find(|v| v.blocks().len() != blocks || v.outcomes() != m) {
            return Err(Error::Precondition(format!(
                "A{} contains {v}, expected {blocks} blocks over {m} outcomes",
                i + 1
            )));
        }
    }
    Ok(())
}

/// The vertex of `Dist(D_n, m)` with `p_i = sum_v alpha_v E_{a,b}` over
/// `v = (e_a, e_b)` in `A_i`.
pub fn construct_dipole_vertex(
    m: usize,
    a_sets: &[Vec<ProductSimplexVertex>],
) -> Result<GraphDistribution> {
    check_blocks(a_sets, 2, m)?;
    let s = dipole(a_sets.len(), m)?;
    let points: Vec<Vec<Vec<Rational>>> = a_sets
        .iter()
        .map(|a| a.iter().map(ProductSimplexVertex::to_vector).collect())
        .collect();
    let c = coefficients(&points)?;
    let mats = a_sets
        .iter()
        .zip(&c)
        .map(|(a, ci)| {
            let mut q = RationalMatrix::zeros(m, m);
            for (v, w) in a.iter().zip(ci) {
                let (x, y) = (v.blocks()[0], v.blocks()[1]);
                q.set(x, y, q.get(x, y) + w);
            }
            q
        })
        .collect();
    verified(&s, GraphDistribution::from_edges(&s, mats)?)
}

/// The vertex of `Dist(K_{n1,n2}, m)` from sets `A_j` of `n1`-block vertices
/// (one per `y_j`) and injections `f_j : A_j -> Z_m`, given as the image of
/// each element in order. Edge `x_k y_j` is `sum_v alpha_v E_{v_k, f_j(v)}`.
pub fn construct_bipartite_vertex(
    n1: usize,
    m: usize,
    a_sets: &[Vec<ProductSimplexVertex>],
    injections: &[Vec<usize>],
) -> Result<GraphDistribution> {
    let n2 = a_sets.len();
    check_blocks(a_sets, n1, m)?;
    if injections.len() != n2 {
        return Err(Error::Precondition(format!(
            "{} injections for {n2} sets",
            injections.len()
        )));
    }
    for (j, (a, f)) in a_sets.iter().zip(injections).enumerate() {
        if a.len() > m {
            return Err(Error::Precondition(format!(
                "A{} has {} elements, more than m = {m}",
                j + 1,
                a.len()
            )));
        }
        if f.len() != a.len() || f.iter().any(|&x| x >= m) {
            return Err(Error::Precondition(format!(
                "f{} must send each of the {} elements of A{} into Z_{m}",
                j + 1,
                a.len(),
                j + 1
            )));
        }
        let mut seen = vec![false; m];
        if f.iter().any(|&x| std::mem::replace(&mut seen[x], true)) {
            return Err(Error::Precondition(format!("f{} is not injective", j + 1)));
        }
    }
    let s = bipartite(n1, n2, m)?;
    let points: Vec<Vec<Vec<Rational>>> = a_sets
        .iter()
        .map(|a| a.iter().map(ProductSimplexVertex::to_vector).collect())
        .collect();
    let c = coefficients(&points)?;
    let mut mats = Vec::new();
    for e in s.edges() {
        let (x, y) = (s.source_id(e), s.target_id(e));
        let k: usize = x[1..].parse::<usize>().expect("bipartite node id") - 1;
        let j: usize = y[1..].parse::<usize>().expect("bipartite node id") - 1;
        let mut q = RationalMatrix::zeros(m, m);
        for ((v, w), &fv) in a_sets[j].iter().zip(&c[j]).zip(&injections[j]) {
            let a = v.blocks()[k];
            q.set(a, fv, q.get(a, fv) + w);
        }
        mats.push(q);
    }
    verified(&s, GraphDistribution::from_edges(&s, mats)?)
}

/// The vertex of `Dist(R_n, m)` with `p_i = sum_mu alpha_mu p_mu` over the
/// cycle distributions of lift `i`. `A_i` is the set of their node vectors.
/// Each lift must generate a face: the vertex support of the constructed
/// loop distribution has to stay inside the lift.
pub fn construct_rose_vertex(m: usize, lifts: &[Vec<CyclePerm>]) -> Result<GraphDistribution> {
    let s = rose(lifts.len(), m)?;
    let loop_scenario = rose(1, m)?;
    let loop_poly = build_polytope(&loop_scenario)?;
    let mut points = Vec::new();
    for (i, lift) in lifts.iter().enumerate() {
        if lift.is_empty() {
            return Err(Error::Precondition(format!("lift {} is empty", i + 1)));
        }
        let mut pts = Vec::new();
        for mu in lift {
            pts.push(cycle_distribution(mu, m)?.node_vectors()[0].clone());
        }
        points.push(pts);
    }
    let c = coefficients(&points)?;
    let mut mats = Vec::new();
    for (i, (lift, ci)) in lifts.iter().zip(&c).enumerate() {
        let mut q = RationalMatrix::zeros(m, m);
        for (mu, w) in lift.iter().zip(ci) {
            let qm = mu.matrix(m);
            for a in 0..m {
                for b in 0..m {
                    let x = qm.get(a, b);
                    if !x.is_zero() {
                        q.set(a, b, q.get(a, b) + w * x);
                    }
                }
            }
        }
        let lifted: Vec<RationalMatrix> = lift.iter().map(|mu| mu.matrix(m)).collect();
        let loop_p = GraphDistribution::from_edges(&loop_scenario, vec![q.clone()])?;
        for v in vsupp(&loop_poly, &loop_p.flatten())? {
            let vq = GraphDistribution::from_point(&loop_scenario, &v)?.edge_matrices()[0].clone();
            if !lifted.contains(&vq) {
                return Err(Error::Precondition(format!(
                    "lift {} does not generate a face: its combination also supports {}",
                    i + 1,
                    describe_cycle(&vq)
                )));
            }
        }
        mats.push(q);
    }
    verified(&s, GraphDistribution::from_edges(&s, mats)?)
}

fn describe_cycle(q: &RationalMatrix) -> String {
    let mut start = None;
    for a in 0..q.rows() {
        if (0..q.cols()).any(|b| !q.get(a, b).is_zero()) {
            start = Some(a);
            break;
        }
    }
    let Some(s) = start else {
        return "[]".into();
    };
    let mut seq = vec![s];
    let mut cur = s;
    loop {
        let next = (0..q.cols()).find(|&b| !q.get(cur, b).is_zero()).expect("row has an entry");
        if next == s {
            break;
        }
        seq.push(next);
        cur = next;
    }
    format!("{seq:?}")
}

/// Deterministic distribution `E_{a,b}` on every edge of a dipole.
pub fn deterministic_dipole(n: usize, m: usize, a: usize, b: usize) -> Result<GraphDistribution> {
    let s = dipole(n, m)?;
    GraphDistribution::from_edges(&s, vec![unit_matrix(m, a, b); n])
}
