//! Sparse multivariate polynomials and rational functions over the exact
//! rationals.
//!
//! This is the symbolic route to derivatives and identities: the same
//! formulas that run on [`Rat`] or [`DualRat`](crate::DualRat) values can run
//! on [`RatFunc`] variables, producing closed-form rational functions whose
//! exact derivatives and specializations cross-check the dual-number route.
//!
//! Polynomials are stored sparsely (monomial -> coefficient in a BTreeMap,
//! graded-lex order) over a fixed, shared variable universe. Constants live
//! in an empty universe and broadcast into any other; combining two
//! different nonempty universes is a programmer error and panics.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::{Expr, Rat, Scalar};

/// An ordered list of variable names shared by interoperating polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    pub fn new<I, S>(names: I) -> VarSet
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        VarSet(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    pub fn empty() -> VarSet {
        VarSet(Arc::new(Vec::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

/// Exponent vector; ordered by total degree, ties broken lexicographically.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Mono(Vec<u32>);

impl Mono {
    fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Mono) -> std::cmp::Ordering {
        (self.degree(), &self.0).cmp(&(other.degree(), &other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Mono) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse multivariate polynomial with exact rational coefficients.
///
/// Invariant: no stored coefficient is zero, so structural equality is
/// polynomial equality within a universe.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    vars: VarSet,
    terms: BTreeMap<Mono, Rat>,
}

fn unified(a: &VarSet, b: &VarSet) -> VarSet {
    if a == b || b.is_empty() {
        a.clone()
    } else if a.is_empty() {
        b.clone()
    } else {
        panic!(
            "incompatible variable universes: {:?} vs {:?}",
            a.names(),
            b.names()
        );
    }
}

impl Poly {
    pub fn zero(vars: VarSet) -> Poly {
        Poly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: VarSet, c: Rat) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(vec![0; vars.len()]), c);
        }
        Poly { vars, terms }
    }

    pub fn one(vars: VarSet) -> Poly {
        Poly::constant(vars, Rat::one())
    }

    pub fn var(vars: VarSet, index: usize) -> Poly {
        assert!(index < vars.len(), "variable index {index} out of range");
        let mut exps = vec![0; vars.len()];
        exps[index] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Mono(exps), Rat::one());
        Poly { vars, terms }
    }

    /// Builds from raw (exponent-vector, coefficient) pairs; zero
    /// coefficients are dropped, duplicate monomials accumulate.
    pub fn from_terms(vars: VarSet, terms: Vec<(Vec<u32>, Rat)>) -> Poly {
        let mut p = Poly::zero(vars.clone());
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent vector length mismatch");
            p.add_term(Mono(exps), c);
        }
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial has no variable occurrence at all.
    pub fn constant_value(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    /// Largest exponent of one variable across all terms.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn lift(&self, target: &VarSet) -> Poly {
        if &self.vars == target {
            return self.clone();
        }
        assert!(self.vars.is_empty(), "only constants can change universe");
        let mut p = Poly::zero(target.clone());
        for c in self.terms.values() {
            p.add_term(Mono(vec![0; target.len()]), c.clone());
        }
        p
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len(), "evaluation point dimension mismatch");
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term * point[i].pow(e as i32).expect("nonnegative power");
                }
            }
            acc += &term;
        }
        acc
    }

    /// Exact partial derivative.
    pub fn derivative(&self, var: usize) -> Poly {
        assert!(var < self.vars.len(), "variable index {var} out of range");
        let mut p = Poly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] = e - 1;
            p.add_term(Mono(exps), c * &Rat::from_int(e as i64));
        }
        p
    }

    /// Replaces one variable by a rational value; the universe is unchanged
    /// (the variable simply no longer occurs).
    pub fn substitute(&self, var: usize, value: &Rat) -> Poly {
        assert!(var < self.vars.len(), "variable index {var} out of range");
        let mut p = Poly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut exps = m.0.clone();
            exps[var] = 0;
            let coeff = if e == 0 {
                c.clone()
            } else {
                c * &value.pow(e as i32).expect("nonnegative power")
            };
            p.add_term(Mono(exps), coeff);
        }
        p
    }

    /// Keeps only the terms free of every variable in `wrt` — the constant
    /// term of the polynomial viewed as a polynomial in those variables.
    pub fn constant_term_in(&self, wrt: &[usize]) -> Poly {
        let mut p = Poly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            if wrt.iter().all(|&v| m.0[v] == 0) {
                p.add_term(m.clone(), c.clone());
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.vars.clone());
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        let vars = unified(&self.vars, &rhs.vars);
        let mut out = self.lift(&vars);
        for (m, c) in rhs.lift(&vars).terms {
            out.add_term(m, c);
        }
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + -rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            let negated = -c.clone();
            *c = negated;
        }
        self
    }
}

impl Mul for Poly {
    type Output = Poly;
    #[allow(clippy::suspicious_arithmetic_impl)] // exponents add under multiplication
    fn mul(self, rhs: Poly) -> Poly {
        let vars = unified(&self.vars, &rhs.vars);
        let a = self.lift(&vars);
        let b = rhs.lift(&vars);
        let mut out = Poly::zero(vars);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let exps = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                out.add_term(Mono(exps), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    /// Canonical text form: terms in descending graded-lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if pos == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.vars.name(i).to_string()
                    } else {
                        format!("{}^{}", self.vars.name(i), e)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A ratio of two polynomials; the denominator is never identically zero.
///
/// No gcd reduction is attempted: equality and zero tests go through
/// cross-multiplication, which is exact and cheap at the sizes that occur
/// here.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let vars = unified(num.vars(), den.vars());
        Ok(RatFunc { num: num.lift(&vars), den: den.lift(&vars) })
    }

    pub fn from_poly(num: Poly) -> RatFunc {
        let den = Poly::one(num.vars.clone());
        RatFunc { num, den }
    }

    pub fn constant(vars: VarSet, c: Rat) -> RatFunc {
        RatFunc::from_poly(Poly::constant(vars, c))
    }

    pub fn var(vars: VarSet, index: usize) -> RatFunc {
        RatFunc::from_poly(Poly::var(vars, index))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn vars(&self) -> &VarSet {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Quotient rule, exactly.
    pub fn derivative(&self, var: usize) -> RatFunc {
        let num = self.num.derivative(var) * self.den.clone()
            - self.num.clone() * self.den.derivative(var);
        let den = self.den.clone() * self.den.clone();
        RatFunc { num, den }
    }

    /// Substitutes rational values for variables. Fails if the denominator
    /// collapses to the zero polynomial.
    pub fn specialize(&self, bindings: &[(usize, Rat)]) -> Result<RatFunc> {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        for (var, value) in bindings {
            num = num.substitute(*var, value);
            den = den.substitute(*var, value);
        }
        if den.is_zero() {
            return Err(Error::PoleUnderSpecialization(format!(
                "denominator {} vanishes identically",
                self.den
            )));
        }
        Ok(RatFunc { num, den })
    }

    /// Evaluates at a full rational point; fails on a pole.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        let den = self.den.eval(point);
        if den.is_zero() {
            return Err(Error::Pole(format!("denominator {} vanishes", self.den)));
        }
        Ok(self.num.eval(point) / den)
    }

    /// Translates an expression tree into this universe; expression slots
    /// index the universe directly.
    pub fn from_expr(expr: &Expr, vars: &VarSet) -> RatFunc {
        match expr {
            Expr::Const(r) => RatFunc::constant(vars.clone(), r.clone()),
            Expr::Var { slot, .. } => RatFunc::var(vars.clone(), *slot),
            Expr::Add(a, b) => RatFunc::from_expr(a, vars) + RatFunc::from_expr(b, vars),
            Expr::Sub(a, b) => RatFunc::from_expr(a, vars) - RatFunc::from_expr(b, vars),
            Expr::Mul(a, b) => RatFunc::from_expr(a, vars) * RatFunc::from_expr(b, vars),
            Expr::Div(a, b) => RatFunc::from_expr(a, vars) / RatFunc::from_expr(b, vars),
            Expr::Neg(a) => -RatFunc::from_expr(a, vars),
        }
    }
}

impl PartialEq for RatFunc {
    /// Cross-multiplied equality: a/b == c/d iff ad == cb.
    fn eq(&self, other: &RatFunc) -> bool {
        if self.vars() != other.vars()
            && !self.vars().is_empty()
            && !other.vars().is_empty()
        {
            return false;
        }
        self.num.clone() * other.den.clone() == other.num.clone() * self.den.clone()
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        let num = self.num.clone() * rhs.den.clone() + rhs.num.clone() * self.den.clone();
        let den = self.den * rhs.den;
        RatFunc { num, den }
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + -rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        RatFunc { num: self.num * rhs.num, den: self.den * rhs.den }
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        assert!(!rhs.num.is_zero(), "division by an identically zero rational function");
        RatFunc { num: self.num * rhs.den, den: self.den * rhs.num }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl Scalar for RatFunc {
    fn zero() -> RatFunc {
        RatFunc::constant(VarSet::empty(), Rat::zero())
    }

    fn one() -> RatFunc {
        RatFunc::constant(VarSet::empty(), Rat::one())
    }

    fn from_rat(r: &Rat) -> RatFunc {
        RatFunc::constant(VarSet::empty(), r.clone())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.constant_value().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
