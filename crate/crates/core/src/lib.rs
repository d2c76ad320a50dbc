//! Exact construction, vertex enumeration and vertex certification for
//! graph-distribution polytopes (local marginal polytopes of directed
//! multigraphs with `m` outcomes per node).
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: rationals, dense rational matrices, RREF/rank/nullspace and an
//!   exact Phase-I simplex feasibility check.
//! * [`polytope`]: standard-form polytopes `{x : Ax = b, x >= 0}`, the support
//!   preorder, vertex supports and two vertex enumeration engines.
//! * [`scenario`]: measurement scenarios (directed multigraphs), graph
//!   distributions, deterministic and cycle distributions, contextuality.
//! * [`criteria`]: support bipartite graphs, `Q` matrices and the dipole/rose
//!   vertex criteria, fiber-product sufficient conditions and constructions.
//! * [`collapse`]: edge collapsing, spanning-tree counts, vertex counts and
//!   lower bounds on contextual vertices.
//! * [`cli`]: the command-line front end used by the `distpoly` binary.

pub mod cli;
pub mod collapse;
pub mod criteria;
pub mod error;
pub mod exact;
pub mod polytope;
pub mod scenario;

pub use error::{Error, Result};
pub use exact::{Rational, RationalMatrix};
pub use polytope::{Point, StandardFormPolytope, Support};
pub use scenario::{GraphDistribution, Scenario};
