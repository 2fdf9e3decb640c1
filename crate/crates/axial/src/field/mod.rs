//! Exact arithmetic: rationals, multivariate polynomials over Q, and the
//! rational-function field in named parameters with an optional cube root
//! of unity.

mod poly;
mod rational;
mod scalar;

pub use poly::{Mono, MultiPoly};
pub use rational::{parse_rat, rat, rat_gcd, rat_int, Rat};
pub use scalar::{FieldError, ParamAssignment, Scalar};
