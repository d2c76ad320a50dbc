//! Standard-form polytopes `{x : Ax = b, x >= 0}`, the support preorder,
//! vertex supports and exact vertex enumeration.

mod dd;
mod naive;

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{lp_feasible, Rational, RationalMatrix};

/// Default limit on `C(n, rank)` for the naive engine.
pub const DEFAULT_NAIVE_BUDGET: u64 = 5_000_000;

/// A bounded polytope in standard form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardFormPolytope {
    a: RationalMatrix,
    b: Vec<Rational>,
    labels: Vec<String>,
}

/// A point given by its coordinates. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(Vec<Rational>);

/// Sorted set of coordinate indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Support(Vec<usize>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl From<Vec<Rational>> for Point {
    fn from(v: Vec<Rational>) -> Self {
        Point(v)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Support {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Support(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &Support) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }
}

/// Which algorithm [`enumerate_vertices_with`] runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    /// Basis enumeration over column subsets of size `rank(A)`.
    Naive,
    /// Incremental double description on the homogenized cone.
    #[default]
    DoubleDescription,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub engine: Engine,
    /// Maximum number of column subsets the naive engine may visit.
    pub naive_budget: u64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            engine: Engine::DoubleDescription,
            naive_budget: DEFAULT_NAIVE_BUDGET,
        }
    }
}

impl StandardFormPolytope {
    /// Builds `{x : Ax = b, x >= 0}` with labels `x0, x1, ...`, rejecting
    /// unbounded systems.
    pub fn new(a: RationalMatrix, b: Vec<Rational>) -> Result<Self> {
        let labels = (0..a.cols()).map(|i| format!("x{i}")).collect();
        Self::with_labels(a, b, labels)
    }

    pub fn with_labels(a: RationalMatrix, b: Vec<Rational>, labels: Vec<String>) -> Result<Self> {
        if a.rows() != b.len() {
            return Err(Error::DimensionMismatch(format!(
                "A has {} rows but b has {} entries",
                a.rows(),
                b.len()
            )));
        }
        if labels.len() != a.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} variables",
                labels.len(),
                a.cols()
            )));
        }
        let p = StandardFormPolytope { a, b, labels };
        if !p.is_bounded()? {
            return Err(Error::Unbounded);
        }
        Ok(p)
    }

    /// Skips the boundedness LP; only for faces of polytopes already known bounded.
    pub(crate) fn new_unchecked(a: RationalMatrix, b: Vec<Rational>, labels: Vec<String>) -> Self {
        StandardFormPolytope { a, b, labels }
    }

    fn is_bounded(&self) -> Result<bool> {
        if self.dim() == 0 {
            return Ok(true);
        }
        let ones = RationalMatrix::from_rows(vec![vec![Rational::one(); self.dim()]])?;
        let mut rhs = vec![Rational::zero(); self.a.rows()];
        rhs.push(Rational::one());
        let sys = if self.a.rows() == 0 {
            ones
        } else {
            self.a.vstack(&ones)?
        };
        Ok(!lp_feasible(&sys, &rhs)?.is_feasible())
    }

    pub fn a(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of variables.
    pub fn dim(&self) -> usize {
        self.a.cols()
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.check_point(x).is_ok()
    }

    /// Ok iff `x` has the right length, is nonnegative and satisfies `Ax = b`.
    pub fn check_point(&self, x: &Point) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, polytope has {} variables",
                x.dim(),
                self.dim()
            )));
        }
        if let Some(i) = x.coords().iter().position(|v| v.is_negative()) {
            return Err(Error::Infeasible(format!(
                "coordinate {} is negative",
                self.labels[i]
            )));
        }
        let ax = self.a.mul_vec(x.coords())?;
        if let Some(r) = (0..ax.len()).find(|&r| ax[r] != self.b[r]) {
            return Err(Error::Infeasible(format!("equality row {r} is violated")));
        }
        Ok(())
    }

    /// The face `{y in P : y_i = 0 for i outside s}` in the reduced variables of `s`.
    pub fn face(&self, s: &Support) -> StandardFormPolytope {
        let a = self.a.select_columns(s.indices());
        let labels = s.indices().iter().map(|&i| self.labels[i].clone()).collect();
        StandardFormPolytope::new_unchecked(a, self.b.clone(), labels)
    }
}

pub fn support(x: &Point) -> Support {
    Support(
        x.coords()
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| i)
            .collect(),
    )
}

/// `y ⪯ x`: the support of `y` is contained in the support of `x`.
pub fn preceq(y: &Point, x: &Point) -> bool {
    y.dim() == x.dim()
        && y.coords()
            .iter()
            .zip(x.coords())
            .all(|(a, b)| a.is_zero() || !b.is_zero())
}

/// True iff the columns of `A` on the support of `x` are linearly independent.
pub fn is_vertex(p: &StandardFormPolytope, x: &Point) -> Result<bool> {
    p.check_point(x)?;
    let s = support(x);
    Ok(s.len() <= p.a.rows() && p.a.select_columns(s.indices()).rank() == s.len())
}

/// All vertices, sorted lexicographically, using the double-description engine.
pub fn enumerate_vertices(p: &StandardFormPolytope) -> Result<Vec<Point>> {
    enumerate_vertices_with(p, &EnumerationOptions::default())
}

pub fn enumerate_vertices_with(
    p: &StandardFormPolytope,
    opts: &EnumerationOptions,
) -> Result<Vec<Point>> {
    let mut v = match opts.engine {
        Engine::Naive => naive::enumerate(p, opts.naive_budget)?,
        Engine::DoubleDescription => dd::enumerate(p),
    };
    v.sort();
    v.dedup();
    Ok(v)
}

/// Vertices `v` of `P` with `v ⪯ x`, sorted.
pub fn vsupp(p: &StandardFormPolytope, x: &Point) -> Result<Vec<Point>> {
    p.check_point(x)?;
    let s = support(x);
    let face = p.face(&s);
    let mut out: Vec<Point> = dd::enumerate(&face)
        .into_iter()
        .map(|v| {
            let mut full = vec![Rational::zero(); p.dim()];
            for (c, &i) in v.into_coords().into_iter().zip(s.indices()) {
                full[i] = c;
            }
            Point(full)
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Affine independence via linear independence of `(v, 1)`.
pub fn affinely_independent(points: &[Vec<Rational>]) -> bool {
    let lifted: Vec<Vec<Rational>> = points
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.push(Rational::one());
            w
        })
        .collect();
    RationalMatrix::columns_independent(&lifted)
}

/// Verdict of [`hull_intersection_unique`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HullIntersection {
    /// The convex hulls meet in exactly one point. Coefficients (one list per
    /// set, in input order) are present when every set is affinely independent.
    Unique {
        point: Vec<Rational>,
        coefficients: Option<Vec<Vec<Rational>>>,
    },
    Multiple,
    Empty,
}

/// Decides whether `Conv(A_1) ∩ ... ∩ Conv(A_n)` is a single point.
pub fn hull_intersection_unique(sets: &[Vec<Vec<Rational>>]) -> Result<HullIntersection> {
    if sets.is_empty() {
        return Err(Error::Precondition("no point sets given".into()));
    }
    if let Some(i) = sets.iter().position(Vec::is_empty) {
        return Err(Error::Precondition(format!("point set {i} is empty")));
    }
    let dim = sets[0][0].len();
    if sets.iter().flatten().any(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch("points of different dimensions".into()));
    }
    let offsets: Vec<usize> = sets
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s.len();
            Some(o)
        })
        .collect();
    let nvars: usize = sets.iter().map(Vec::len).sum();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        let mut row = vec![Rational::zero(); nvars];
        for k in 0..s.len() {
            row[offsets[i] + k] = Rational::one();
        }
        rows.push(row);
        rhs.push(Rational::one());
    }
    for (i, s) in sets.iter().enumerate().skip(1) {
        for c in 0..dim {
            let mut row = vec![Rational::zero(); nvars];
            for (k, v) in sets[0].iter().enumerate() {
                row[k] = v[c].clone();
            }
            for (k, v) in s.iter().enumerate() {
                row[offsets[i] + k] = -v[c].clone();
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
                rhs.push(Rational::zero());
            }
        }
    }
    let a = RationalMatrix::from_rows_with_cols(rows, nvars)?;
    let labels = (0..nvars).map(|i| format!("a{i}")).collect();
    // Each block is a simplex, so the coefficient polytope is bounded.
    let coeff = StandardFormPolytope::new_unchecked(a, rhs, labels);
    let verts = dd::enumerate(&coeff);
    if verts.is_empty() {
        return Ok(HullIntersection::Empty);
    }
    let image = |v: &Point| -> Vec<Rational> {
        let mut acc = vec![Rational::zero(); dim];
        for (k, pt) in sets[0].iter().enumerate() {
            let w = &v.coords()[k];
            if !w.is_zero() {
                for (a, x) in acc.iter_mut().zip(pt) {
                    *a += w * x;
                }
            }
        }
        acc
    };
    let point = image(&verts[0]);
    if verts[1..].iter().any(|v| image(v) != point) {
        return Ok(HullIntersection::Multiple);
    }
    let coefficients = if sets.iter().all(|s| affinely_independent(s)) {
        let c = verts[0].coords();
        Some(
            sets.iter()
                .enumerate()
                .map(|(i, s)| c[offsets[i]..offsets[i] + s.len()].to_vec())
                .collect(),
        )
    } else {
        None
    };
    Ok(HullIntersection::Unique {
        point,
        coefficients,
    })
}

/// `[1 1 ... 1] x = 1`, the standard simplex on `n` variables.
pub fn standard_simplex(n: usize) -> StandardFormPolytope {
    let a = RationalMatrix::from_rows(vec![vec![Rational::one(); n]]).expect("one row");
    let labels = (0..n).map(|i| format!("x{i}")).collect();
    StandardFormPolytope::new_unchecked(a, vec![Rational::one()], labels)
}
