#![allow(dead_code)]

use std::path::{Path, PathBuf};

use distpoly::exact::{Rational, RationalMatrix};
use distpoly::scenario::{parse_distribution, parse_scenario};
use distpoly::{GraphDistribution, Scenario};

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn scenario(name: &str) -> Scenario {
    parse_scenario(&fixture(name)).unwrap()
}

pub fn load(scn: &str, dist: &str) -> (Scenario, GraphDistribution) {
    let s = scenario(scn);
    let p = parse_distribution(&fixture(dist), &s).unwrap();
    (s, p)
}

pub fn ints(rows: &[&[i64]]) -> RationalMatrix {
    RationalMatrix::from_integers(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

/// Parses "1/4 0 1/4; 0 1/4 0; ..." into a matrix.
pub fn mat(s: &str) -> RationalMatrix {
    RationalMatrix::from_rows(
        s.split(';')
            .map(|r| r.split_whitespace().map(|x| x.parse::<Rational>().unwrap()).collect())
            .collect(),
    )
    .unwrap()
}

pub fn vector(s: &str) -> Vec<Rational> {
    s.split_whitespace().map(|x| x.parse::<Rational>().unwrap()).collect()
}

use distpoly::exact::rat;
use distpoly::polytope::Point;
use distpoly::scenario::tree_from_parents;
use rand::Rng;

/// A random probability vector with denominators from small integer weights.
pub fn random_simplex_point<R: Rng>(rng: &mut R, m: usize) -> Vec<Rational> {
    loop {
        let w: Vec<i64> = (0..m).map(|_| rng.gen_range(0..4)).collect();
        let total: i64 = w.iter().sum();
        if total > 0 {
            return w.into_iter().map(|x| rat(x, total)).collect();
        }
    }
}

/// A random tree on `2..=max_nodes` nodes with random edge orientations.
pub fn random_tree<R: Rng>(rng: &mut R, max_nodes: usize, m: usize) -> Scenario {
    let n = rng.gen_range(2..=max_nodes);
    let parents: Vec<(usize, bool)> = (0..n - 1).map(|i| (rng.gen_range(0..=i), rng.gen())).collect();
    tree_from_parents(&parents, m).unwrap()
}

/// A random distribution on a tree: a root marginal and a random Markov
/// kernel along every edge, walking outward from the first node.
pub fn random_tree_distribution<R: Rng>(rng: &mut R, s: &Scenario) -> GraphDistribution {
    let m = s.outcomes();
    let mut marginal: Vec<Option<Vec<Rational>>> = vec![None; s.nodes().len()];
    marginal[0] = Some(random_simplex_point(rng, m));
    let mut mats: Vec<Option<RationalMatrix>> = vec![None; s.edges().len()];
    while mats.iter().any(Option::is_none) {
        for (e, edge) in s.edges().iter().enumerate() {
            if mats[e].is_some() {
                continue;
            }
            let (from, to, forward) = match (&marginal[edge.source], &marginal[edge.target]) {
                (Some(_), None) => (edge.source, edge.target, true),
                (None, Some(_)) => (edge.target, edge.source, false),
                _ => continue,
            };
            let p = marginal[from].clone().unwrap();
            let mut joint = RationalMatrix::zeros(m, m);
            for (a, pa) in p.iter().enumerate() {
                for (b, k) in random_simplex_point(rng, m).into_iter().enumerate() {
                    joint.set(a, b, pa * k);
                }
            }
            let q: Vec<Rational> = (0..m).map(|b| joint.column(b).into_iter().sum()).collect();
            marginal[to] = Some(q);
            mats[e] = Some(if forward { joint } else { joint.transpose() });
        }
    }
    GraphDistribution::from_edges(s, mats.into_iter().map(Option::unwrap).collect()).unwrap()
}

pub fn midpoint(x: &Point, y: &Point) -> Point {
    let half = rat(1, 2);
    Point::new(
        x.coords()
            .iter()
            .zip(y.coords())
            .map(|(a, b)| (a + b) * &half)
            .collect(),
    )
}

/// A convex combination of `k` distinct random points from `pool` with
/// random positive weights.
pub fn random_combination<R: Rng>(rng: &mut R, pool: &[Point], k: usize) -> Point {
    let picks = rand::seq::index::sample(rng, pool.len(), k.min(pool.len()));
    let weights: Vec<i64> = picks.iter().map(|_| rng.gen_range(1..5)).collect();
    let total: i64 = weights.iter().sum();
    let dim = pool[0].dim();
    let mut out = vec![Rational::from_integer(0.into()); dim];
    for (i, w) in picks.iter().zip(weights) {
        let w = rat(w, total);
        for (o, c) in out.iter_mut().zip(pool[i].coords()) {
            *o += c * &w;
        }
    }
    Point::new(out)
}
