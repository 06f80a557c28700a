//! Exact scalar arithmetic: rationals, forward-mode derivatives, exact
//! linear algebra, and a small expression tree for evaluating formulas with
//! pole detection.
//!
//! Everything downstream is generic over [`Scalar`] so the same geometric
//! construction can run on plain rationals, on dual numbers (values paired
//! with gradients), or on symbolic rational functions.

mod dual;
mod expr;
mod mat;
mod rat;

pub use dual::DualRat;
pub use expr::Expr;
pub use mat::RatMat;
pub use rat::Rat;

use std::ops::{Add, Div, Mul, Neg, Sub};

/// A field element the geometric construction can be instantiated at.
///
/// Division by zero is a programmer error under this trait (the call sites
/// guarantee nonzero divisors); fallible division lives on the concrete
/// types.
pub trait Scalar:
    Clone
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: &Rat) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_rat(&Rat::from_int(v))
    }
}

impl Scalar for Rat {
    fn zero() -> Rat {
        Rat::zero()
    }

    fn one() -> Rat {
        Rat::one()
    }

    fn from_rat(r: &Rat) -> Rat {
        r.clone()
    }

    fn from_int(v: i64) -> Rat {
        Rat::from_int(v)
    }
}
