//! The parameter family and the combined-graph construction.
//!
//! A parameter point consists of a contraction ratio `C`, component starting
//! values `A_1..A_{n+1}` summing to 1 with `A_1 = A_2`, interleaved levels
//! `B_2..B_n`, and a coupling value `D`. The strict inequality chain guarded
//! by [`validate_params`] is exactly what makes the breakpoint walk behind
//! [`build_geometry`] close up on `C`.

mod geometry;
mod graph;

pub use geometry::{
    build_geometry, check_axioms, raw_breakpoints, AxiomReport, DivisionPoint, IntervalShape,
    NSystem, PointKind, PointLabel, RawPoint, SystemGeometry,
};
pub use graph::{export_graph, GraphData, GraphPoint, GraphSegment};

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{Rat, Scalar};

/// A validated-shape parameter point (the inequality chain itself is checked
/// separately by [`validate_params`]).
///
/// Stored in full form: `a` holds `A_1..A_{n+1}`, `b` holds `B_2..B_n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Params {
    n: usize,
    a: Vec<Rat>,
    b: Vec<Rat>,
    c: Rat,
    d: Rat,
}

impl Params {
    /// Builds from parts. `a` is either the full vector `A_1..A_{n+1}` or
    /// the free vector `A_2..A_n`, in which case `A_1 = A_2` and
    /// `A_{n+1} = 1 - (A_1 + ... + A_n)` are reconstructed.
    pub fn from_parts(n: usize, a: Vec<Rat>, b: Vec<Rat>, c: Rat, d: Rat) -> Result<Params> {
        if n < 3 {
            return Err(Error::UnsupportedDimension(n));
        }
        if b.len() != n - 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected {} B-values (B_2..B_{n}), got {}",
                n - 1,
                b.len()
            )));
        }
        let a = if a.len() == n + 1 {
            a
        } else if a.len() == n - 1 {
            let mut full = Vec::with_capacity(n + 1);
            full.push(a[0].clone());
            full.extend(a.iter().cloned());
            let partial: Rat = full.iter().sum();
            full.push(Rat::one() - partial);
            full
        } else {
            return Err(Error::DimensionMismatch(format!(
                "expected {} (full) or {} (free) A-values, got {}",
                n + 1,
                n - 1,
                a.len()
            )));
        };
        Ok(Params { n, a, b, c, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `A_k` for `1 <= k <= n+1`.
    pub fn a(&self, k: usize) -> &Rat {
        assert!((1..=self.n + 1).contains(&k), "A_{k} out of range");
        &self.a[k - 1]
    }

    /// `B_k` for `2 <= k <= n`.
    pub fn b(&self, k: usize) -> &Rat {
        assert!((2..=self.n).contains(&k), "B_{k} out of range");
        &self.b[k - 2]
    }

    pub fn c(&self) -> &Rat {
        &self.c
    }

    pub fn d(&self) -> &Rat {
        &self.d
    }

    /// The free coordinates `(A_2..A_n, B_2..B_n, C, D)`, in that order.
    /// Every derivative in the crate is taken with respect to this vector.
    pub fn free_params(&self) -> Vec<Rat> {
        let mut slots = Vec::with_capacity(2 * self.n);
        slots.extend(self.a[1..self.n].iter().cloned());
        slots.extend(self.b.iter().cloned());
        slots.push(self.c.clone());
        slots.push(self.d.clone());
        slots
    }

    /// Names matching [`Params::free_params`] order.
    pub fn slot_names(n: usize) -> Vec<String> {
        let mut names: Vec<String> = (2..=n).map(|k| format!("A_{k}")).collect();
        names.extend((2..=n).map(|k| format!("B_{k}")));
        names.push("C".into());
        names.push("D".into());
        names
    }

    pub fn view(&self) -> ParamsView<Rat> {
        ParamsView {
            n: self.n,
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Params", 5)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("C", &self.c)?;
        s.serialize_field("A", &self.a)?;
        s.serialize_field("B", &self.b)?;
        s.serialize_field("D", &self.d)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Params {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Params, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            n: usize,
            #[serde(rename = "C")]
            c: Rat,
            #[serde(rename = "A")]
            a: Vec<Rat>,
            #[serde(rename = "B")]
            b: Vec<Rat>,
            #[serde(rename = "D")]
            d: Rat,
        }
        let raw = Raw::deserialize(deserializer)?;
        Params::from_parts(raw.n, raw.a, raw.b, raw.c, raw.d).map_err(serde::de::Error::custom)
    }
}

/// The canonical parameter point: `C = 3`, `A_1 = A_2 = 2^-n`,
/// `A_k = 2^(k-n-2)` for `k >= 3`, `D = 11·2^(-n-2)`, `B_k = 5·2^(k-n-3)`.
pub fn canonical_params(n: usize) -> Result<Params> {
    if n < 3 {
        return Err(Error::UnsupportedDimension(n));
    }
    let half = Rat::new(1, 2)?;
    let pow2 = |e: i32| half.pow(-e).expect("nonzero base");
    let mut a = vec![pow2(-(n as i32)); 2];
    a.extend((3..=n + 1).map(|k| pow2(k as i32 - n as i32 - 2)));
    let b: Vec<Rat> = (2..=n)
        .map(|k| Rat::from_int(5) * pow2(k as i32 - n as i32 - 3))
        .collect();
    let d = Rat::from_int(11) * pow2(-(n as i32) - 2);
    Params::from_parts(n, a, b, Rat::from_int(3), d)
}

/// Outcome of [`validate_params`]: every violated inequality, by name.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub n: usize,
    pub valid: bool,
    pub violations: Vec<String>,
}

/// Checks the full strict-inequality chain. A report with an empty violation
/// list means the point is valid; n < 3 is an error, not a violation.
pub fn validate_params(p: &Params) -> Result<ValidationReport> {
    if p.n < 3 {
        return Err(Error::UnsupportedDimension(p.n));
    }
    let n = p.n;
    let mut violations = Vec::new();
    let mut check = |ok: bool, name: String| {
        if !ok {
            violations.push(name);
        }
    };

    for k in 1..=n + 1 {
        check(p.a(k).is_positive(), format!("A_{k} > 0"));
    }
    for k in 2..=n {
        check(p.b(k).is_positive(), format!("B_{k} > 0"));
    }
    check(p.d.is_positive(), "D > 0".into());
    check(p.a(1) == p.a(2), "A_1 = A_2".into());
    check(p.a.iter().sum::<Rat>() == Rat::one(), "sum(A) = 1".into());
    for k in 2..=n {
        check(p.a(k) < p.a(k + 1), format!("A_{k} < A_{}", k + 1));
    }
    for k in 2..n {
        check(p.b(k) < p.b(k + 1), format!("B_{k} < B_{}", k + 1));
    }
    check(p.b[0] < p.d, "B_2 < D".into());
    check(p.d < &p.c * p.a(2), "D < C·A_2".into());
    for k in 2..=n {
        check(p.a(k + 1) < p.b(k), format!("A_{} < B_{k}", k + 1));
        if k < n {
            check(p.b(k) < p.a(k + 2), format!("B_{k} < A_{}", k + 2));
        }
        check(p.b(k) < &(&p.c * p.a(k)), format!("B_{k} < C·A_{k}"));
    }

    Ok(ValidationReport { n, valid: violations.is_empty(), violations })
}

/// The parameter point lifted to an arbitrary scalar type.
///
/// This is how one construction serves three purposes: `T = Rat` builds
/// concrete geometry, `T = DualRat` differentiates it, `T = RatFunc` keeps
/// it symbolic.
#[derive(Clone, Debug)]
pub struct ParamsView<T> {
    n: usize,
    a: Vec<T>,
    b: Vec<T>,
    c: T,
    d: T,
}

impl<T: Scalar> ParamsView<T> {
    /// Rebuilds the full parameter point from the 2n free coordinates
    /// `(A_2..A_n, B_2..B_n, C, D)`, restoring `A_1 = A_2` and
    /// `A_{n+1} = 1 - (A_1 + ... + A_n)`.
    pub fn from_slots(n: usize, slots: &[T]) -> ParamsView<T> {
        assert!(n >= 3, "n must be at least 3");
        assert_eq!(slots.len(), 2 * n, "expected 2n free coordinates");
        let mut a: Vec<T> = Vec::with_capacity(n + 1);
        a.push(slots[0].clone());
        a.extend_from_slice(&slots[..n - 1]);
        let sum = a
            .iter()
            .fold(T::zero(), |acc, x| acc + x.clone());
        a.push(T::one() - sum);
        ParamsView {
            n,
            a,
            b: slots[n - 1..2 * n - 2].to_vec(),
            c: slots[2 * n - 2].clone(),
            d: slots[2 * n - 1].clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self, k: usize) -> &T {
        assert!((1..=self.n + 1).contains(&k), "A_{k} out of range");
        &self.a[k - 1]
    }

    pub fn b(&self, k: usize) -> &T {
        assert!((2..=self.n).contains(&k), "B_{k} out of range");
        &self.b[k - 2]
    }

    pub fn c(&self) -> &T {
        &self.c
    }

    pub fn d(&self) -> &T {
        &self.d
    }
}
