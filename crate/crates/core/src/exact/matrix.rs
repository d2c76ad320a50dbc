use std::fmt;
use std::ops::Index;

use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RationalMatrix,
    pub rank: usize,
    /// Strictly increasing pivot columns, one per nonzero row.
    pub pivots: Vec<usize>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    /// An empty row list gives a `0 x cols` matrix with `cols = 0`.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`from_rows`](Self::from_rows) but keeps the column count when there are no rows.
    pub fn from_rows_with_cols(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            entries.extend(r);
        }
        Ok(RationalMatrix {
            rows: n,
            cols,
            entries,
        })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, x)| !a.is_zero() && !x.is_zero())
                    .fold(Rational::zero(), |acc, (a, x)| acc + a * x)
            })
            .collect())
    }

    /// Submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c).clone());
            }
        }
        m
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} columns on {}",
                other.cols, self.cols
            )));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(RationalMatrix {
            rows: self.rows + other.rows,
            cols,
            entries,
        })
    }

    pub fn rref(&self) -> Rref {
        let mut rows = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].recip();
            if !inv.is_one() {
                for x in rows[r].iter_mut().skip(c) {
                    if !x.is_zero() {
                        *x *= &inv;
                    }
                }
            }
            let pivot_row = rows[r].clone();
            let nz: Vec<usize> = (c..self.cols).filter(|&j| !pivot_row[j].is_zero()).collect();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for &j in &nz {
                    row[j] -= &f * &pivot_row[j];
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        let matrix = RationalMatrix::from_rows_with_cols(rows, self.cols)
            .expect("rows keep their length");
        Rref {
            matrix,
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// A basis of `{x : Mx = 0}`: one vector per free column, with a 1 in
    /// that column and zeros in the other free columns.
    pub fn nullspace_basis(&self) -> Vec<Vec<Rational>> {
        let Rref {
            matrix, pivots, ..
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// True iff the given vectors (as columns) are linearly independent.
    pub fn columns_independent(vectors: &[Vec<Rational>]) -> bool {
        if vectors.is_empty() {
            return true;
        }
        let dim = vectors[0].len();
        if vectors.len() > dim {
            return false;
        }
        let m = RationalMatrix::from_rows(vectors.to_vec()).expect("equal lengths");
        m.rank() == vectors.len()
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        self.get(r, c)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|c| format!("{:>width$}", cells[r * self.cols + c]))
                .collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn identity_rref() {
        let r = RationalMatrix::identity(2).rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn zero_matrix_rref() {
        let r = RationalMatrix::zeros(3, 4).rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn nullspace_of_difference_row() {
        let m = RationalMatrix::from_integers(&[vec![1, -1]]).unwrap();
        let ns = m.nullspace_basis();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![int(1), int(1)]);
        assert!(RationalMatrix::identity(3).nullspace_basis().is_empty());
    }

    #[test]
    fn rref_with_fractions() {
        let m = RationalMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3), int(1)],
            vec![int(1), rat(2, 3), int(2)],
        ])
        .unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.matrix.row(0), &[int(1), rat(2, 3), int(2)]);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(RationalMatrix::from_integers(&[vec![1, 2], vec![1]]).is_err());
    }
}
