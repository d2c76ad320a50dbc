use num_traits::{One, Signed, Zero};

use super::{Rational, RationalMatrix};
use crate::error::{Error, Result};

/// Outcome of an exact feasibility check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// A point with `Ax = b`, `x >= 0`.
    Feasible(Vec<Rational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible => None,
        }
    }
}

/// Decides whether `{x : Ax = b, x >= 0}` is nonempty.
///
/// Phase-I simplex on a dense tableau with one artificial per row and Bland's
/// rule for both entering and leaving variables. Artificials are dropped once
/// they leave the basis.
pub fn lp_feasible(a: &RationalMatrix, b: &[Rational]) -> Result<Feasibility> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "A has {} rows but b has {} entries",
            a.rows(),
            b.len()
        )));
    }
    let (m, n) = (a.rows(), a.cols());
    let mut tab: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(b[i].clone());
            if b[i].is_negative() {
                for x in &mut row {
                    *x = -x.clone();
                }
            }
            row
        })
        .collect();
    // Basic variable per row; `n + i` is the artificial of row i.
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs of the Phase-I objective (sum of artificials); last entry is -w.
    let mut cost = vec![Rational::zero(); n + 1];
    for row in &tab {
        for (c, x) in cost.iter_mut().zip(row) {
            *c -= x;
        }
    }

    loop {
        let Some(enter) = (0..n).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[n] / &row[enter];
            let better = match &leave {
                None => true,
                Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase I is bounded below by zero, so some row always qualifies.
        let (r, _) = leave.expect("phase I objective is bounded");
        pivot(&mut tab, &mut cost, r, enter);
        basis[r] = enter;
    }

    if !cost[n].is_zero() {
        return Ok(Feasibility::Infeasible);
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &v) in basis.iter().enumerate() {
        if v < n {
            x[v] = tab[i][n].clone();
        }
    }
    debug_assert_eq!(a.mul_vec(&x).unwrap(), b);
    Ok(Feasibility::Feasible(x))
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], r: usize, c: usize) {
    let inv = tab[r][c].recip();
    if !inv.is_one() {
        for x in tab[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
    }
    let prow = tab[r].clone();
    let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
    let eliminate = |row: &mut [Rational]| {
        if row[c].is_zero() {
            return;
        }
        let f = row[c].clone();
        for &j in &nz {
            row[j] -= &f * &prow[j];
        }
    };
    for (i, row) in tab.iter_mut().enumerate() {
        if i != r {
            eliminate(row);
        }
    }
    eliminate(cost);
}
