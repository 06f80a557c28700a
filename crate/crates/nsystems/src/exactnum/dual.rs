//! Forward-mode automatic differentiation over exact rationals.
//!
//! A [`DualRat`] carries a value together with its gradient with respect to a
//! fixed list of parameter slots. Running any rational computation on duals
//! yields exact partial derivatives with no symbolic manipulation, which is
//! one of the two independent differentiation routes used by the
//! independence certificates (the other goes through the polynomial ring).

use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{Rat, Scalar};

/// A rational value paired with an exact gradient.
///
/// Constants carry an empty gradient and broadcast against any dimension;
/// mixing two nonempty gradients of different lengths is a programmer error
/// and panics.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualRat {
    value: Rat,
    grad: Vec<Rat>,
}

impl DualRat {
    /// A constant: zero gradient in every direction.
    pub fn constant(value: Rat) -> DualRat {
        DualRat { value, grad: Vec::new() }
    }

    /// The `slot`-th coordinate of a `dim`-dimensional parameter vector.
    pub fn var(value: Rat, slot: usize, dim: usize) -> DualRat {
        assert!(slot < dim, "slot {slot} out of range for dimension {dim}");
        let mut grad = vec![Rat::zero(); dim];
        grad[slot] = Rat::one();
        DualRat { value, grad }
    }

    pub fn value(&self) -> &Rat {
        &self.value
    }

    /// Partial derivative with respect to slot `i` (zero for constants).
    pub fn grad_component(&self, i: usize) -> Rat {
        self.grad.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// The full gradient, padded with zeros to `dim` entries.
    pub fn gradient(&self, dim: usize) -> Vec<Rat> {
        assert!(self.grad.is_empty() || self.grad.len() == dim);
        (0..dim).map(|i| self.grad_component(i)).collect()
    }

    fn zip(a: &[Rat], b: &[Rat], f: impl Fn(&Rat, &Rat) -> Rat) -> Vec<Rat> {
        let zero = Rat::zero();
        let dim = match (a.is_empty(), b.is_empty()) {
            (true, true) => return Vec::new(),
            (true, false) => b.len(),
            (false, true) => a.len(),
            (false, false) => {
                assert_eq!(a.len(), b.len(), "gradient dimension mismatch");
                a.len()
            }
        };
        (0..dim)
            .map(|i| f(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
            .collect()
    }
}

impl Add for DualRat {
    type Output = DualRat;
    fn add(self, rhs: DualRat) -> DualRat {
        DualRat {
            grad: DualRat::zip(&self.grad, &rhs.grad, |a, b| a + b),
            value: self.value + rhs.value,
        }
    }
}

impl Sub for DualRat {
    type Output = DualRat;
    fn sub(self, rhs: DualRat) -> DualRat {
        DualRat {
            grad: DualRat::zip(&self.grad, &rhs.grad, |a, b| a - b),
            value: self.value - rhs.value,
        }
    }
}

impl Mul for DualRat {
    type Output = DualRat;
    #[allow(clippy::suspicious_arithmetic_impl)] // product rule
    fn mul(self, rhs: DualRat) -> DualRat {
        // (xy)' = x'y + xy'
        DualRat {
            grad: DualRat::zip(&self.grad, &rhs.grad, |a, b| {
                a * &rhs.value + b * &self.value
            }),
            value: &self.value * &rhs.value,
        }
    }
}

impl Div for DualRat {
    type Output = DualRat;
    fn div(self, rhs: DualRat) -> DualRat {
        // (x/y)' = (x'y - xy') / y^2
        assert!(!rhs.value.is_zero(), "dual division by zero value");
        let den_sq = &rhs.value * &rhs.value;
        DualRat {
            grad: DualRat::zip(&self.grad, &rhs.grad, |a, b| {
                (a * &rhs.value - b * &self.value) / &den_sq
            }),
            value: &self.value / &rhs.value,
        }
    }
}

impl Neg for DualRat {
    type Output = DualRat;
    fn neg(self) -> DualRat {
        DualRat {
            value: -self.value,
            grad: self.grad.into_iter().map(|g| -g).collect(),
        }
    }
}

impl Scalar for DualRat {
    fn zero() -> DualRat {
        DualRat::constant(Rat::zero())
    }

    fn one() -> DualRat {
        DualRat::constant(Rat::one())
    }

    fn from_rat(r: &Rat) -> DualRat {
        DualRat::constant(r.clone())
    }
}
