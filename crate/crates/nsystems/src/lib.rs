//! Exact construction and analysis of self-similar (n+1)-systems.
//!
//! The crate builds a parameterized family of piecewise-linear systems of
//! n+1 components on a fundamental interval [1, C], extended to all of
//! [1, oo) by self-similarity, and studies the 2n approximation exponents
//! the family realizes. Everything runs in exact rational arithmetic; there
//! is no floating point anywhere.
//!
//! The main capabilities, one module each:
//!
//! - [`exactnum`]: big rationals, forward-mode derivatives, exact
//!   determinants and ranks, and a small expression type with pole
//!   detection.
//! - [`nsystem`]: parameter validation, the breakpoint construction of the
//!   combined graph, axiom checking, evaluation at arbitrary points, and a
//!   serializable graph export.
//! - [`exponents`]: the two independent routes to the exponent spectrum
//!   (direct scan over division points vs. closed forms), derived-quantity
//!   tables, a structured diff between the routes, and deterministic
//!   neighborhood sampling.
//! - [`polyring`]: sparse multivariate polynomials and rational functions
//!   over the parameters, the second differentiation route backing the
//!   certificates.
//! - [`cfrac`]: the generalized continued fraction attached to the spectrum,
//!   its convergents, and the identity checks linking it to the exponents.
//! - [`certify`]: exact Jacobian certificates of algebraic independence for
//!   the exponent functions, by both differentiation routes.
//! - [`cli`]: the `nsys` command-line interface over all of the above.

pub mod cfrac;
pub mod certify;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod exponents;
pub mod nsystem;
pub mod polyring;

pub use error::{Error, Result};
pub use exactnum::{DualRat, Expr, Rat, RatMat, Scalar};
