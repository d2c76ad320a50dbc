//! The gluing (fiber product) sufficient condition for vertices.
//!
//! A [`Gluing`] presents a scenario as pieces that share exactly a common
//! node set `W`. Each piece's distribution maps to the node vectors on `W`;
//! the images of its vertex support form `A_i`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Rational, RationalMatrix};
use crate::polytope::{
    affinely_independent, enumerate_vertices, hull_intersection_unique, is_vertex, vsupp,
    HullIntersection, Point, StandardFormPolytope,
};
use crate::scenario::{build_polytope, restrict, GraphDistribution, Scenario};

/// A scenario split into pieces that pairwise meet exactly in the nodes of `common`.
#[derive(Clone, Debug)]
pub struct Gluing {
    scenario: Scenario,
    common: Scenario,
    pieces: Vec<Scenario>,
}

impl Gluing {
    /// `pieces` lists the edge ids of each piece. Every edge belongs to
    /// exactly one piece, pieces share no nodes outside `common`, and each
    /// piece touches every common node.
    pub fn new(scenario: &Scenario, common: &[&str], pieces: &[Vec<&str>]) -> Result<Gluing> {
        let w = scenario.subscenario(common, &[])?;
        let wset: BTreeSet<&str> = common.iter().copied().collect();
        let mut seen_edges = BTreeSet::new();
        let mut owned_nodes = BTreeSet::new();
        let mut subs = Vec::new();
        for (i, edges) in pieces.iter().enumerate() {
            if edges.is_empty() {
                return Err(Error::InvalidScenario(format!("piece {i} has no edges")));
            }
            let mut nodes: Vec<&str> = common.to_vec();
            for id in edges {
                if !seen_edges.insert(*id) {
                    return Err(Error::InvalidScenario(format!("edge `{id}` is in two pieces")));
                }
                let e = scenario
                    .edge_index(id)
                    .map(|k| &scenario.edges()[k])
                    .ok_or_else(|| Error::InvalidScenario(format!("unknown edge `{id}`")))?;
                for v in [scenario.source_id(e), scenario.target_id(e)] {
                    if !nodes.contains(&v) {
                        nodes.push(v);
                    }
                }
            }
            for v in nodes.iter().filter(|v| !wset.contains(**v)) {
                if !owned_nodes.insert(*v) {
                    return Err(Error::InvalidScenario(format!(
                        "node `{v}` is shared by two pieces but not glued"
                    )));
                }
            }
            let sub = scenario.subscenario(&nodes, edges)?;
            if let Some(v) = sub.isolated_nodes().first() {
                return Err(Error::InvalidScenario(format!(
                    "piece {i} does not touch common node `{v}`"
                )));
            }
            subs.push(sub);
        }
        if let Some(e) = scenario.edges().iter().find(|e| !seen_edges.contains(e.id.as_str())) {
            return Err(Error::InvalidScenario(format!("edge `{}` is in no piece", e.id)));
        }
        Ok(Gluing {
            scenario: scenario.clone(),
            common: w,
            pieces: subs,
        })
    }

    /// One star per center node; the common part is every other node.
    pub fn stars(scenario: &Scenario, centers: &[&str]) -> Result<Gluing> {
        let common: Vec<&str> = scenario
            .nodes()
            .iter()
            .map(String::as_str)
            .filter(|v| !centers.contains(v))
            .collect();
        let pieces: Vec<Vec<&str>> = centers
            .iter()
            .map(|c| {
                scenario
                    .edges()
                    .iter()
                    .filter(|e| scenario.source_id(e) == *c || scenario.target_id(e) == *c)
                    .map(|e| e.id.as_str())
                    .collect()
            })
            .collect();
        Gluing::new(scenario, &common, &pieces)
    }

    /// Stars on `K_{n1,n2}` (nodes `x1..`, `y1..`) glued over the smaller side.
    pub fn bipartite(scenario: &Scenario, n1: usize, n2: usize) -> Result<Gluing> {
        let prefix = if n1 <= n2 { "y" } else { "x" };
        let count = n1.max(n2);
        let centers: Vec<String> = (1..=count).map(|i| format!("{prefix}{i}")).collect();
        let refs: Vec<&str> = centers.iter().map(String::as_str).collect();
        Gluing::stars(scenario, &refs)
    }

    /// Single-edge pieces glued over every node: dipoles and roses.
    pub fn per_edge(scenario: &Scenario) -> Result<Gluing> {
        let common: Vec<&str> = scenario.nodes().iter().map(String::as_str).collect();
        let pieces: Vec<Vec<&str>> = scenario.edges().iter().map(|e| vec![e.id.as_str()]).collect();
        Gluing::new(scenario, &common, &pieces)
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn common(&self) -> &Scenario {
        &self.common
    }

    pub fn pieces(&self) -> &[Scenario] {
        &self.pieces
    }

    /// Node vectors of `x` on the common nodes, concatenated.
    pub fn glue_map(&self, piece: usize, x: &GraphDistribution) -> Result<Vec<Rational>> {
        let r = restrict(&self.pieces[piece], x, &self.common)?;
        Ok(r.node_and_edge_vector())
    }

    /// `p` restricted to every piece.
    pub fn split(&self, p: &GraphDistribution) -> Result<Vec<GraphDistribution>> {
        self.pieces.iter().map(|s| restrict(&self.scenario, p, s)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberVerdict {
    Vertex,
    /// The sufficient condition fails; `p` may or may not be a vertex.
    Inconclusive,
}

/// Per-piece data: the vertex support of the piece and its image `A_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceDiagnostics {
    pub vsupp: Vec<Point>,
    pub a_set: Vec<Vec<Rational>>,
    /// `f_i` is injective on the vertex support.
    pub injective: bool,
    pub affinely_independent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub verdict: FiberVerdict,
    pub pieces: Vec<PieceDiagnostics>,
    pub intersection: HullIntersection,
}

impl fmt::Display for FiberReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.pieces.iter().enumerate() {
            writeln!(
                f,
                "piece {}: |Vsupp| = {}, |A| = {}, injective {}, affinely independent {}",
                i + 1,
                d.vsupp.len(),
                d.a_set.len(),
                d.injective,
                d.affinely_independent
            )?;
        }
        match &self.intersection {
            HullIntersection::Unique { point, .. } => {
                let s: Vec<String> = point.iter().map(ToString::to_string).collect();
                writeln!(f, "hull intersection: unique ({})", s.join(", "))?;
            }
            HullIntersection::Multiple => writeln!(f, "hull intersection: more than one point")?,
            HullIntersection::Empty => writeln!(f, "hull intersection: empty")?,
        }
        write!(
            f,
            "verdict: {}",
            match self.verdict {
                FiberVerdict::Vertex => "vertex",
                FiberVerdict::Inconclusive => "inconclusive",
            }
        )
    }
}

fn diagnose(g: &Gluing, i: usize, x: &GraphDistribution) -> Result<PieceDiagnostics> {
    let piece = &g.pieces[i];
    let poly = build_polytope(piece)?;
    let vs = vsupp(&poly, &x.flatten())?;
    let mut a_set: Vec<Vec<Rational>> = Vec::new();
    for y in &vs {
        let img = g.glue_map(i, &GraphDistribution::from_point(piece, y)?)?;
        if !a_set.contains(&img) {
            a_set.push(img);
        }
    }
    let injective = a_set.len() == vs.len();
    let affinely_independent = affinely_independent(&a_set);
    Ok(PieceDiagnostics {
        vsupp: vs,
        a_set,
        injective,
        affinely_independent,
    })
}

/// The sufficient condition on a distribution of the glued scenario.
pub fn fiber_sufficient_vertex(g: &Gluing, p: &GraphDistribution) -> Result<FiberReport> {
    build_polytope(&g.scenario)?.check_point(&p.flatten())?;
    fiber_sufficient_vertex_parts(g, &g.split(p)?)
}

/// The sufficient condition on one distribution per piece. The parts must
/// agree on the common nodes.
pub fn fiber_sufficient_vertex_parts(g: &Gluing, parts: &[GraphDistribution]) -> Result<FiberReport> {
    if parts.len() != g.pieces.len() {
        return Err(Error::Precondition(format!(
            "{} parts for {} pieces",
            parts.len(),
            g.pieces.len()
        )));
    }
    let mut base: Option<Vec<Rational>> = None;
    for (i, x) in parts.iter().enumerate() {
        let img = g.glue_map(i, x)?;
        match &base {
            None => base = Some(img),
            Some(b) if *b != img => {
                return Err(Error::InvalidDistribution(format!(
                    "piece {} disagrees with piece 1 on the common nodes",
                    i + 1
                )))
            }
            Some(_) => {}
        }
    }
    let pieces = parts
        .iter()
        .enumerate()
        .map(|(i, x)| diagnose(g, i, x))
        .collect::<Result<Vec<_>>>()?;
    let sets: Vec<Vec<Vec<Rational>>> = pieces.iter().map(|d| d.a_set.clone()).collect();
    let intersection = hull_intersection_unique(&sets)?;
    let ok = pieces.iter().all(|d| d.injective && d.affinely_independent)
        && matches!(intersection, HullIntersection::Unique { .. });
    Ok(FiberReport {
        verdict: if ok {
            FiberVerdict::Vertex
        } else {
            FiberVerdict::Inconclusive
        },
        pieces,
        intersection,
    })
}

/// Outcome of [`converse_checks`]; `violations` must be empty for a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConverseReport {
    pub pieces: Vec<PieceDiagnostics>,
    /// The common point of the hulls, if unique.
    pub point: Option<Vec<Rational>>,
    /// A strictly positive representation of `point` over each `A_i`.
    pub coefficients: Vec<Option<Vec<Rational>>>,
    pub violations: Vec<String>,
}

/// A representation of `u` over `pts` with every coefficient positive, if one exists.
fn positive_representation(pts: &[Vec<Rational>], u: &[Rational]) -> Result<Option<Vec<Rational>>> {
    let k = pts.len();
    let mut rows = vec![vec![Rational::one(); k]];
    let mut rhs = vec![Rational::one()];
    for (c, target) in u.iter().enumerate() {
        rows.push(pts.iter().map(|v| v[c].clone()).collect());
        rhs.push(target.clone());
    }
    let a = RationalMatrix::from_rows_with_cols(rows, k)?;
    let poly = match StandardFormPolytope::new(a, rhs) {
        Ok(p) => p,
        Err(Error::Infeasible(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let verts = enumerate_vertices(&poly)?;
    if verts.is_empty() {
        return Ok(None);
    }
    let n = Rational::from_integer(verts.len().into());
    let mut mean = vec![Rational::zero(); k];
    for v in &verts {
        for (m, x) in mean.iter_mut().zip(v.coords()) {
            *m += x / &n;
        }
    }
    Ok(mean.iter().all(|x| x > &Rational::zero()).then_some(mean))
}

/// Partial converses for a known vertex: independent vertex supports give
/// independent, injective images, and the hulls meet in one point that every
/// `A_i` represents with positive coefficients.
pub fn converse_checks(g: &Gluing, p: &GraphDistribution) -> Result<ConverseReport> {
    let poly = build_polytope(&g.scenario)?;
    if !is_vertex(&poly, &p.flatten())? {
        return Err(Error::Precondition("distribution is not a vertex".into()));
    }
    let parts = g.split(p)?;
    let pieces = parts
        .iter()
        .enumerate()
        .map(|(i, x)| diagnose(g, i, x))
        .collect::<Result<Vec<_>>>()?;
    let mut violations = Vec::new();
    for (i, d) in pieces.iter().enumerate() {
        let vs: Vec<Vec<Rational>> = d.vsupp.iter().map(|v| v.coords().to_vec()).collect();
        if affinely_independent(&vs) && !(d.injective && d.affinely_independent) {
            violations.push(format!(
                "piece {}: Vsupp is affinely independent but A is not an independent injective image",
                i + 1
            ));
        }
    }
    let sets: Vec<Vec<Vec<Rational>>> = pieces.iter().map(|d| d.a_set.clone()).collect();
    let (point, coefficients) = match hull_intersection_unique(&sets)? {
        HullIntersection::Unique { point, .. } => {
            let mut coeffs = Vec::new();
            for (i, s) in sets.iter().enumerate() {
                let c = positive_representation(s, &point)?;
                if c.is_none() {
                    violations.push(format!(
                        "piece {}: no representation of the common point with positive coefficients",
                        i + 1
                    ));
                }
                coeffs.push(c);
            }
            (Some(point), coeffs)
        }
        other => {
            violations.push(format!("hull intersection is not a single point: {other:?}"));
            (None, vec![None; sets.len()])
        }
    };
    Ok(ConverseReport {
        pieces,
        point,
        coefficients,
        violations,
    })
}
