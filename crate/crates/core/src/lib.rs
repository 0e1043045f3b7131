//! Exact computer algebra around the Vandermonde polynomial
//! `VD(x_1, ..., x_n) = prod_{i<j} (x_i - x_j)`.
//!
//! - [`poly`], [`linalg`], [`scalar`]: sparse polynomials and linear algebra
//!   over the rationals, with an optional prime-field rank.
//! - [`vandermonde`]: `vd(n)`, its projections and alternating tests.
//! - [`equivalence`]: deciding whether a polynomial is `VD` of independent
//!   linear forms, from a factor list or from the expanded polynomial.
//! - [`symmetry`]: the symmetry group `P + v⊗1` and the Lie algebra `v⊗1`.
//! - [`sigma`]: writing polynomials as sums of Vandermonde projections.
//! - [`measures`]: restricted evaluation dimension and partial derivatives.
//! - [`cli`]: the `vdtool` front end.

pub mod cli;
pub mod equivalence;
pub mod linalg;
pub mod measures;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod sigma;
pub mod symmetry;
pub mod univariate;
pub mod vandermonde;

pub use linalg::Matrix;
pub use parse::{format_polynomial, parse_linear_form, parse_linear_forms, parse_polynomial};
pub use poly::{LinearForm, Monomial, Polynomial};
pub use scalar::{Field, Rational};
pub use vandermonde::vd;
