//! Exact block partial linearizations of the pfaffian.
//!
//! The crate evaluates the permutation sums `bpf_T` and `bpf⁰_T` attached to
//! a tableau with substitution, and checks as exact polynomial identities over
//! ℤ that `bpf_T` decomposes into block pfaffians of a contracted tableau times
//! characteristic-polynomial coefficients `σ_k` of matrix words. Amitsur's
//! formula for partial linearizations of the determinant and the expansion of
//! a product of two pfaffians fall out as special cases.

pub mod bpf;
pub mod combinat;
pub mod corpus;
pub mod decomp;
pub mod error;
pub mod limits;
pub mod matrix;
pub mod poly;
pub mod tableau;

pub use error::{Error, Result};
pub use limits::Limits;
pub use matrix::{MaybeMatrix, SymMatrix};
pub use poly::{Monomial, Polynomial, RatPolynomial, Variable};
