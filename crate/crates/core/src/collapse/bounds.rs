//! Lower bounds on contextual vertices.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;

use super::{spanning_tree_count, Counter};
use crate::criteria::Family;
use crate::error::{Error, Result};
use crate::scenario::Scenario;

/// `kappa~1((n1-1)(n2-1), m) * n1^(n2-1) * n2^(n1-1)` for `K_{n1,n2}`.
pub fn lower_bound_rose(counter: &Counter, n1: usize, n2: usize, m: usize) -> Result<BigInt> {
    if n1 < 2 || n2 < 2 {
        return Err(Error::Precondition(format!(
            "K_{{{n1},{n2}}} is a tree, the bound is vacuous"
        )));
    }
    let k = counter.kappa_tilde(Family::Rose, (n1 - 1) * (n2 - 1), m)?;
    let trees = BigInt::from(n1).pow(n2 as u32 - 1) * BigInt::from(n2).pow(n1 as u32 - 1);
    Ok(BigInt::from(k) * trees)
}

/// Sum over `0 < k < n1`, `0 < r < n2` of
/// `C(n1, k) C(n2, r) kappa~2(k(n2 - r) + (n1 - k) r, m)`.
pub fn lower_bound_dipole(counter: &Counter, n1: usize, n2: usize, m: usize) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for k in 1..n1 {
        for r in 1..n2 {
            let edges = k * (n2 - r) + (n1 - k) * r;
            let kt = counter.kappa_tilde(Family::Dipole, edges, m)?;
            total += BigInt::from(binomial(n1 as u128, k as u128) * binomial(n2 as u128, r as u128))
                * BigInt::from(kt);
        }
    }
    Ok(total)
}

/// `kappa~1(|E| - |V| + 1, m) * T(X)` for a connected scenario.
pub fn general_lower_bound(counter: &Counter, s: &Scenario, m: usize) -> Result<BigInt> {
    if !s.is_connected() {
        return Err(Error::Precondition("the bound needs a connected scenario".into()));
    }
    let cycle_rank = s.edges().len() + 1 - s.nodes().len();
    let trees = spanning_tree_count(s)?;
    Ok(BigInt::from(counter.kappa_tilde(Family::Rose, cycle_rank, m)?) * trees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{bipartite, path};

    #[test]
    fn trees_give_zero() {
        let c = Counter::default();
        assert_eq!(general_lower_bound(&c, &path(4, 3).unwrap(), 3).unwrap(), BigInt::zero());
        assert!(lower_bound_rose(&c, 1, 3, 3).is_err());
    }

    #[test]
    fn k22_with_two_outcomes() {
        let c = Counter::default();
        // One circle with two outcomes has a single non-collapsed contextual vertex.
        assert_eq!(lower_bound_rose(&c, 2, 2, 2).unwrap(), BigInt::from(4));
        let s = bipartite(2, 2, 2).unwrap();
        assert_eq!(general_lower_bound(&c, &s, 2).unwrap(), BigInt::from(4));
    }
}
