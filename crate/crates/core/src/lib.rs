//! Exact volumes of strata of abelian differentials.
//!
//! Volumes are obtained from the large-degree asymptotics of weighted counts
//! of branched coverings of the torus. The pipeline goes through the
//! shifted-symmetric algebra: central characters `f_k` are expanded in the
//! regularized power sums `p_k`, cumulants of power sums are reduced by a
//! Wick-type rule to elementary cumulants, and those have a closed form in
//! terms of `zeta` values at even integers. Everything is exact: rationals
//! are arbitrary precision and powers of `pi` are carried symbolically.
//!
//! Each stage has an independent check next to it: brute-force monodromy
//! enumeration for covering counts, a multivariate Taylor expansion for
//! elementary cumulants, a closed form for simple branching, and a
//! theta-function identity for the one-point function.

pub mod arith;
pub mod characters;
pub mod cli;
pub mod coverings;
pub mod cumulants;
pub mod error;
pub mod limits;
pub mod npoint;
pub mod partitions;
pub mod poly;
pub mod series;
pub mod shifted;
pub mod verify;

pub use arith::{PiScalar, PiSum, Rational};
pub use error::{Error, Result};
pub use limits::Limits;
