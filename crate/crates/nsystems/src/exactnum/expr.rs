//! A tiny expression tree for rational formulas.
//!
//! Expressions are built once (by code, not parsed), then evaluated either on
//! plain rationals or on duals. Evaluation reports division by zero as a
//! pole, naming the offending sub-expression, instead of panicking — this is
//! what lets callers probe formulas at arbitrary parameter points safely.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{DualRat, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum Expr {
    Const(Rat),
    /// A named coordinate of the evaluation point. The name is carried only
    /// for diagnostics and printing; `slot` indexes the point.
    Var { slot: usize, name: String },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

impl Expr {
    pub fn constant(r: Rat) -> Expr {
        Expr::Const(r)
    }

    pub fn int(v: i64) -> Expr {
        Expr::Const(Rat::from_int(v))
    }

    pub fn var(slot: usize, name: impl Into<String>) -> Expr {
        Expr::Var { slot, name: name.into() }
    }

    /// Evaluates at a point, failing with [`Error::Pole`] on division by zero
    /// and [`Error::DimensionMismatch`] when a variable slot is out of range.
    pub fn eval_rat(&self, point: &[Rat]) -> Result<Rat> {
        match self {
            Expr::Const(r) => Ok(r.clone()),
            Expr::Var { slot, name } => point.get(*slot).cloned().ok_or_else(|| {
                Error::DimensionMismatch(format!(
                    "variable {name} uses slot {slot} but the point has {} coordinates",
                    point.len()
                ))
            }),
            Expr::Add(a, b) => Ok(a.eval_rat(point)? + b.eval_rat(point)?),
            Expr::Sub(a, b) => Ok(a.eval_rat(point)? - b.eval_rat(point)?),
            Expr::Mul(a, b) => Ok(a.eval_rat(point)? * b.eval_rat(point)?),
            Expr::Div(a, b) => {
                let den = b.eval_rat(point)?;
                if den.is_zero() {
                    return Err(Error::Pole(self.to_string()));
                }
                Ok(a.eval_rat(point)? / den)
            }
            Expr::Neg(a) => Ok(-a.eval_rat(point)?),
        }
    }

    /// Evaluates value and gradient in one pass. The gradient has one entry
    /// per coordinate of `point`.
    pub fn eval_dual(&self, point: &[Rat]) -> Result<DualRat> {
        let dim = point.len();
        match self {
            Expr::Const(r) => Ok(DualRat::constant(r.clone())),
            Expr::Var { slot, name } => {
                let value = point.get(*slot).cloned().ok_or_else(|| {
                    Error::DimensionMismatch(format!(
                        "variable {name} uses slot {slot} but the point has {dim} coordinates"
                    ))
                })?;
                Ok(DualRat::var(value, *slot, dim))
            }
            Expr::Add(a, b) => Ok(a.eval_dual(point)? + b.eval_dual(point)?),
            Expr::Sub(a, b) => Ok(a.eval_dual(point)? - b.eval_dual(point)?),
            Expr::Mul(a, b) => Ok(a.eval_dual(point)? * b.eval_dual(point)?),
            Expr::Div(a, b) => {
                let den = b.eval_dual(point)?;
                if den.value().is_zero() {
                    return Err(Error::Pole(self.to_string()));
                }
                Ok(a.eval_dual(point)? / den)
            }
            Expr::Neg(a) => Ok(-a.eval_dual(point)?),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Const(r) if r.is_negative() => 3,
            Expr::Const(_) | Expr::Var { .. } => 4,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(r) => write!(f, "{r}"),
            Expr::Var { name, .. } => write!(f, "{name}"),
            Expr::Add(a, b) => {
                a.fmt_child(f, 1)?;
                write!(f, " + ")?;
                b.fmt_child(f, 1)
            }
            Expr::Sub(a, b) => {
                a.fmt_child(f, 1)?;
                write!(f, " - ")?;
                b.fmt_child(f, 2)
            }
            Expr::Mul(a, b) => {
                a.fmt_child(f, 2)?;
                write!(f, "*")?;
                b.fmt_child(f, 3)
            }
            Expr::Div(a, b) => {
                a.fmt_child(f, 2)?;
                write!(f, "/")?;
                b.fmt_child(f, 4)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_child(f, 3)
            }
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(rhs))
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q).unwrap()
    }

    // Point layout used below: (A2, A3, B2, B3, C, D).
    fn canonical3() -> Vec<Rat> {
        vec![r(1, 8), r(1, 4), r(5, 16), r(5, 8), r(3, 1), r(11, 32)]
    }

    #[test]
    fn reciprocal_minus_one() {
        let f = Expr::int(1) / Expr::var(0, "A2") - Expr::int(1);
        let d = f.eval_dual(&canonical3()).unwrap();
        assert_eq!(*d.value(), Rat::from_int(7));
        assert_eq!(d.grad_component(0), Rat::from_int(-64));
        assert_eq!(d.grad_component(4), Rat::zero());
        assert_eq!(f.eval_rat(&canonical3()).unwrap(), Rat::from_int(7));
    }

    #[test]
    fn quotient_with_full_gradient() {
        // C*(1 - 2*A2)/(A2 + B2)
        let f = Expr::var(4, "C") * (Expr::int(1) - Expr::int(2) * Expr::var(0, "A2"))
            / (Expr::var(0, "A2") + Expr::var(2, "B2"));
        let d = f.eval_dual(&canonical3()).unwrap();
        assert_eq!(*d.value(), r(36, 7));
        let grad: Vec<Rat> = d.gradient(6);
        let expected = [
            r(-1248, 49),
            r(0, 1),
            r(-576, 49),
            r(0, 1),
            r(12, 7),
            r(0, 1),
        ];
        assert_eq!(grad, expected);
    }

    #[test]
    fn poles_name_the_subexpression() {
        let f = Expr::int(1) / (Expr::var(0, "A2") - Expr::var(0, "A2"));
        let err = f.eval_rat(&canonical3()).unwrap_err();
        assert!(matches!(&err, Error::Pole(s) if s.contains("A2 - A2")));
        assert!(f.eval_dual(&canonical3()).is_err());
    }

    #[test]
    fn out_of_range_slot_is_reported() {
        let f = Expr::var(9, "X");
        assert!(matches!(f.eval_rat(&canonical3()), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn printing_uses_minimal_parentheses() {
        let f = (Expr::var(0, "x") + Expr::int(1)) * Expr::var(1, "y");
        assert_eq!(f.to_string(), "(x + 1)*y");
        let g = Expr::int(1) / Expr::var(0, "x") - Expr::int(2) * Expr::var(1, "y");
        assert_eq!(g.to_string(), "1/x - 2*y");
        let h = Expr::var(0, "x") / (Expr::var(1, "y") * Expr::var(0, "x"));
        assert_eq!(h.to_string(), "x/(y*x)");
    }
}
