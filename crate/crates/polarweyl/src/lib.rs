//! Exact computation of the braid-quotient endomorphism algebras attached
//! to polar representations, together with a numeric monodromy tracker for
//! their quotient maps.
//!
//! The crate computes, over exact cyclotomic arithmetic:
//!
//! * finite complex reflection groups (Coxeter families, cyclic groups,
//!   the imprimitive family `G(m,1,n)`, or explicit matrix generators),
//!   their reflections, hyperplane orbits and invariant degrees;
//! * the finite-dimensional quotient `C[B_W] / <R_s(s_hat)>` of the braid
//!   group algebra by one monic integer relation per hyperplane orbit,
//!   with certified dimension, multiplication, minimal polynomials,
//!   trace-form semisimplicity and opposite algebras;
//! * rank-one inflation `R(z) = Rt(z^m)` with its carousel block matrix;
//! * the symmetric-space recipe producing `(s_hat_i - 1)(s_hat_i +
//!   (-1)^{s(i)})` relation sets from restricted-root data, validated by a
//!   matrix-level Lie algebra oracle;
//! * a floating-point path tracker that follows critical points of polar
//!   quotient maps around loops of regular values and reports monodromy
//!   permutations and carousel clusters.
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `polarweyl` binary for a command-line front end.

pub mod algebra;
pub mod braid;
pub mod catalog;
pub mod cyclotomic;
pub mod io;
pub mod reflection;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod rank_one;
pub mod report;
pub mod symspace;
pub mod tracker;

pub use cyclotomic::CycNum;
pub use error::{Error, Result};
