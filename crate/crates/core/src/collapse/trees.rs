use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scenario::Scenario;

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Number of spanning trees of the underlying undirected multigraph, as a
/// Laplacian cofactor. Parallel edges count with multiplicity; loops are ignored.
pub fn spanning_tree_count(s: &Scenario) -> Result<BigInt> {
    if !s.is_connected() {
        return Err(Error::Precondition("spanning trees need a connected graph".into()));
    }
    let n = s.nodes().len();
    let mut l = vec![vec![BigInt::zero(); n]; n];
    for e in s.edges().iter().filter(|e| !e.is_loop()) {
        let (u, v) = (e.source, e.target);
        l[u][u] += 1;
        l[v][v] += 1;
        l[u][v] -= 1;
        l[v][u] -= 1;
    }
    let minor: Vec<Vec<BigInt>> = l.into_iter().skip(1).map(|r| r.into_iter().skip(1).collect()).collect();
    Ok(bareiss_determinant(minor))
}
