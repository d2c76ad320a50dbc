//! Exact arithmetic substrate: rationals, dense rational matrices and an exact
//! feasibility solver for `{x : Ax = b, x >= 0}`.

mod lp;
mod matrix;

pub use lp::{lp_feasible, Feasibility};
pub use matrix::{RationalMatrix, Rref};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d` with machine integers. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"n"`, `"-n"` or `"n/d"`. Returns `None` on malformed input or a zero denominator.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Clears denominators and divides by the gcd, giving the primitive integer
/// vector on the same ray. The zero vector is returned unchanged.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(ints)
}

/// Divides an integer vector by the gcd of its entries.
pub fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in &v {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return v;
            }
        }
    }
    if !g.is_zero() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}
