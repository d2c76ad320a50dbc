//! Double description on the homogenized cone `{z = (x, t) : [A | -b] z = 0, z >= 0}`.
//!
//! The equalities are eliminated through the RREF: the free coordinates
//! parametrize the linear space, so `z_free >= 0` is a simplicial starting
//! cone and only the pivot coordinates remain to be inserted.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{Point, StandardFormPolytope};
use crate::exact::{make_primitive, primitive_integer_vector, Rational, RationalMatrix};

#[derive(Clone)]
struct Ray {
    z: Vec<BigInt>,
    zeros: Bits,
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn is_subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

impl Ray {
    fn from_vec(z: Vec<BigInt>, inserted: &Bits) -> Ray {
        let mut zeros = Bits::new(z.len());
        for (i, x) in z.iter().enumerate() {
            if x.is_zero() {
                zeros.set(i);
            }
        }
        let zeros = zeros.and(inserted);
        Ray { z, zeros }
    }
}

pub(super) fn enumerate(p: &StandardFormPolytope) -> Vec<Point> {
    let n = p.dim();
    let width = n + 1;
    let mut rows = p.a().to_rows();
    for (row, b) in rows.iter_mut().zip(p.b()) {
        row.push(-b.clone());
    }
    let m = RationalMatrix::from_rows_with_cols(rows, width).expect("uniform rows");
    let rref = m.rref();
    let mut is_pivot = vec![false; width];
    for &c in &rref.pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..width).filter(|&c| !is_pivot[c]).collect();
    let d = free.len();
    if d == 0 {
        return Vec::new();
    }

    let mut inserted = Bits::new(width);
    for &f in &free {
        inserted.set(f);
    }
    let mut rays: Vec<Ray> = rref
        .matrix
        .nullspace_basis_from_rref(&rref.pivots, &free)
        .into_iter()
        .map(|v| Ray::from_vec(primitive_integer_vector(&v), &inserted))
        .collect();

    // Insert pivot coordinates by decreasing number of free columns they involve.
    let mut order: Vec<(usize, usize)> = rref
        .pivots
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let nz = free
                .iter()
                .filter(|&&f| !rref.matrix.get(i, f).is_zero())
                .count();
            (c, nz)
        })
        .collect();
    order.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));

    for (c, _) in order {
        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for r in rays {
            if r.z[c].is_positive() {
                pos.push(r);
            } else if r.z[c].is_negative() {
                neg.push(r);
            } else {
                zero.push(r);
            }
        }
        inserted.set(c);
        if neg.is_empty() {
            rays = pos.into_iter().chain(zero).collect();
            finish_insert(&mut rays, c);
            continue;
        }
        let all: Vec<&Bits> = pos
            .iter()
            .chain(&neg)
            .chain(&zero)
            .map(|r| &r.zeros)
            .collect();
        let need = d.saturating_sub(2) as u32;
        let created: Vec<Vec<Ray>> = pos
            .par_iter()
            .enumerate()
            .map(|(i, r)| {
                let mut out = Vec::new();
                for (j, s) in neg.iter().enumerate() {
                    let common = r.zeros.and(&s.zeros);
                    if common.count() < need {
                        continue;
                    }
                    let skip = (i, pos.len() + j);
                    let blocked = all.iter().enumerate().any(|(k, t)| {
                        k != skip.0 && k != skip.1 && common.is_subset_of(t)
                    });
                    if blocked {
                        continue;
                    }
                    let a = &r.z[c];
                    let b = -&s.z[c];
                    let z: Vec<BigInt> = r
                        .z
                        .iter()
                        .zip(&s.z)
                        .map(|(x, y)| a * y + &b * x)
                        .collect();
                    out.push(Ray::from_vec(make_primitive(z), &inserted));
                }
                out
            })
            .collect();
        rays = pos.into_iter().chain(zero).chain(created.into_iter().flatten()).collect();
        finish_insert(&mut rays, c);
    }

    rays.into_iter()
        .filter(|r| r.z[n].is_positive())
        .map(|r| {
            let t = &r.z[n];
            Point::new(
                r.z[..n]
                    .iter()
                    .map(|x| Rational::new(x.clone(), t.clone()))
                    .collect(),
            )
        })
        .collect()
}

/// Records the new zero bit for coordinate `c` on surviving rays.
fn finish_insert(rays: &mut [Ray], c: usize) {
    for r in rays.iter_mut() {
        if r.z[c].is_zero() {
            r.zeros.set(c);
        }
    }
}

impl RationalMatrix {
    /// Nullspace basis read off an RREF matrix with known pivots and free columns.
    fn nullspace_basis_from_rref(&self, pivots: &[usize], free: &[usize]) -> Vec<Vec<Rational>> {
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols()];
                v[f] = num_traits::One::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -self.get(i, f).clone();
                }
                v
            })
            .collect()
    }
}
