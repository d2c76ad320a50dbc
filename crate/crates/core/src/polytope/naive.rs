//! Basis enumeration: every vertex is the unique solution on some set of
//! `rank(A)` linearly independent columns.

use num_traits::{Signed, Zero};

use super::{Point, StandardFormPolytope};
use crate::error::{Error, Result};
use crate::exact::{Rational, RationalMatrix};

pub(super) fn enumerate(p: &StandardFormPolytope, budget: u64) -> Result<Vec<Point>> {
    let n = p.dim();
    let mut rows = p.a().to_rows();
    for (row, b) in rows.iter_mut().zip(p.b()) {
        row.push(b.clone());
    }
    let rref = RationalMatrix::from_rows_with_cols(rows, n + 1)?.rref();
    if rref.pivots.last() == Some(&n) {
        return Ok(Vec::new());
    }
    let r = rref.rank;
    let subsets = binomial(n as u64, r as u64);
    if subsets > budget as u128 {
        return Err(Error::BudgetExceeded(format!(
            "naive enumeration needs C({n}, {r}) = {subsets} column subsets, budget is {budget}; \
             use the double-description engine"
        )));
    }
    let cols: Vec<Vec<Rational>> = (0..n)
        .map(|j| (0..r).map(|i| rref.matrix.get(i, j).clone()).collect())
        .collect();
    let rhs: Vec<Rational> = (0..r).map(|i| rref.matrix.get(i, n).clone()).collect();
    let mut search = Search {
        n,
        r,
        cols: &cols,
        rhs: &rhs,
        chosen: Vec::new(),
        out: Vec::new(),
    };
    search.dfs(0);
    Ok(search.out)
}

struct Step {
    col: usize,
    pivot: usize,
    w: Vec<Rational>,
    /// Multiples of earlier reduced columns subtracted from `a_col`.
    coeffs: Vec<Rational>,
}

struct Search<'a> {
    n: usize,
    r: usize,
    cols: &'a [Vec<Rational>],
    rhs: &'a [Rational],
    chosen: Vec<Step>,
    out: Vec<Point>,
}

impl Search<'_> {
    fn reduce(&self, v: &mut [Rational]) -> Vec<Rational> {
        let mut coeffs = Vec::with_capacity(self.chosen.len());
        for s in &self.chosen {
            let f = &v[s.pivot] / &s.w[s.pivot];
            if !f.is_zero() {
                for (x, y) in v.iter_mut().zip(&s.w) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            coeffs.push(f);
        }
        coeffs
    }

    fn dfs(&mut self, start: usize) {
        let depth = self.chosen.len();
        if depth == self.r {
            self.leaf();
            return;
        }
        for j in start..self.n {
            if self.n - j < self.r - depth {
                break;
            }
            let mut v = self.cols[j].clone();
            let coeffs = self.reduce(&mut v);
            let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            self.chosen.push(Step {
                col: j,
                pivot,
                w: v,
                coeffs,
            });
            self.dfs(j + 1);
            self.chosen.pop();
        }
    }

    fn leaf(&mut self) {
        let mut v = self.rhs.to_vec();
        let d = self.reduce(&mut v);
        debug_assert!(v.iter().all(Zero::is_zero));
        // a_k = w_k + sum_{l<k} c_kl w_l, so x_l = d_l - sum_{k>l} x_k c_kl.
        let r = self.r;
        let mut x = vec![Rational::zero(); r];
        for l in (0..r).rev() {
            let mut val = d[l].clone();
            for k in l + 1..r {
                let c = &self.chosen[k].coeffs[l];
                if !c.is_zero() && !x[k].is_zero() {
                    val -= &x[k] * c;
                }
            }
            if val.is_negative() {
                return;
            }
            x[l] = val;
        }
        let mut full = vec![Rational::zero(); self.n];
        for (s, v) in self.chosen.iter().zip(x) {
            full[s.col] = v;
        }
        self.out.push(Point::new(full));
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
