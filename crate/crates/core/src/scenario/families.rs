//! Standard scenario shapes.

use super::Scenario;
use crate::error::{Error, Result};

fn edge(id: String, s: String, t: String) -> (String, String, String) {
    (id, s, t)
}

/// `D_n`: nodes `a`, `b` and parallel edges `t1..tn`, all from `a` to `b`.
pub fn dipole(n: usize, m: usize) -> Result<Scenario> {
    if n == 0 {
        return Err(Error::InvalidScenario("a dipole needs at least one edge".into()));
    }
    Scenario::new(
        m,
        ["a", "b"],
        (1..=n).map(|i| edge(format!("t{i}"), "a".into(), "b".into())),
    )
}

/// `R_n`: node `v` with loops `s1..sn`.
pub fn rose(n: usize, m: usize) -> Result<Scenario> {
    if n == 0 {
        return Err(Error::InvalidScenario("a rose needs at least one loop".into()));
    }
    Scenario::new(
        m,
        ["v"],
        (1..=n).map(|i| edge(format!("s{i}"), "v".into(), "v".into())),
    )
}

/// `C(n)`: nodes `v1..vn` and edges `c_i: v_i -> v_{i+1}`, indices mod n.
pub fn cycle(n: usize, m: usize) -> Result<Scenario> {
    if n == 0 {
        return Err(Error::InvalidScenario("a cycle needs at least one edge".into()));
    }
    Scenario::new(
        m,
        (1..=n).map(|i| format!("v{i}")),
        (1..=n).map(|i| edge(format!("c{i}"), format!("v{i}"), format!("v{}", i % n + 1))),
    )
}

/// `K_{n1,n2}`: nodes `x1..`, `y1..` and edges `x{i}y{j}` from `x_i` to `y_j`.
pub fn bipartite(n1: usize, n2: usize, m: usize) -> Result<Scenario> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::InvalidScenario("both sides must be nonempty".into()));
    }
    let nodes = (1..=n1)
        .map(|i| format!("x{i}"))
        .chain((1..=n2).map(|j| format!("y{j}")));
    let edges = (1..=n1).flat_map(|i| {
        (1..=n2).map(move |j| edge(format!("x{i}y{j}"), format!("x{i}"), format!("y{j}")))
    });
    Scenario::new(m, nodes, edges)
}

/// Center `c` with edges `e_i: c -> l_i`.
pub fn star(k: usize, m: usize) -> Result<Scenario> {
    if k == 0 {
        return Err(Error::InvalidScenario("a star needs at least one leaf".into()));
    }
    let nodes = std::iter::once("c".to_string()).chain((1..=k).map(|i| format!("l{i}")));
    Scenario::new(
        m,
        nodes,
        (1..=k).map(|i| edge(format!("e{i}"), "c".into(), format!("l{i}"))),
    )
}

/// Nodes `v1..vn` and edges `e_i: v_i -> v_{i+1}`.
pub fn path(n: usize, m: usize) -> Result<Scenario> {
    if n < 2 {
        return Err(Error::InvalidScenario("a path needs at least two nodes".into()));
    }
    Scenario::new(
        m,
        (1..=n).map(|i| format!("v{i}")),
        (1..n).map(|i| edge(format!("e{i}"), format!("v{i}"), format!("v{}", i + 1))),
    )
}

/// A tree on nodes `v0..vk`. Entry `i` of `parents` is `(parent, flipped)` for
/// node `v{i+1}`; the parent index must be at most `i`. Edge `e{i+1}` runs
/// parent to child, or child to parent when `flipped`.
pub fn tree_from_parents(parents: &[(usize, bool)], m: usize) -> Result<Scenario> {
    if parents.is_empty() {
        return Err(Error::InvalidScenario("a tree needs at least one edge".into()));
    }
    let mut edges = Vec::new();
    for (i, &(p, flipped)) in parents.iter().enumerate() {
        if p > i {
            return Err(Error::InvalidScenario(format!(
                "parent {p} of node v{} is not an earlier node",
                i + 1
            )));
        }
        let (s, t) = (format!("v{p}"), format!("v{}", i + 1));
        let (s, t) = if flipped { (t, s) } else { (s, t) };
        edges.push(edge(format!("e{}", i + 1), s, t));
    }
    Scenario::new(m, (0..=parents.len()).map(|i| format!("v{i}")), edges)
}
