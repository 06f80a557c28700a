//! Algebraic-independence certificates for the exponent spectrum.
//!
//! For a basepoint with free coordinates `(A_2..A_n, B_2..B_n, C, D)` the
//! certificate is the exact 2n x 2n Jacobian of the exponents in those
//! coordinates, its determinant, and its rank. Entries are computed with
//! dual numbers pushed through the same code that builds the geometry and
//! the closed forms — no formula is re-derived by hand — and the test suite
//! cross-checks them against an independent symbolic-differentiation route
//! ([`jacobian_symbolic`]).
//!
//! Trajectory exponents are only differentiable where their attaining
//! breakpoint is locally stable, so that set demands strict extrema at the
//! basepoint and reports `BranchNotStable` otherwise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{DualRat, Rat, RatMat, Scalar};
use crate::exponents::{formulas, scan_ratios, RatioScan};
use crate::nsystem::{
    build_geometry, raw_breakpoints, validate_params, Params, ParamsView, RawPoint,
};
use crate::polyring::{RatFunc, VarSet};

/// Which family of 2n functions the certificate is about.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionSet {
    /// Exponents read off the geometry at the basepoint's attaining branches.
    Trajectory,
    /// The closed-form table, taken verbatim.
    PaperTable,
}

/// Whether each extremum of `S_k(q)/q` is uniquely attained at the basepoint.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StabilityFlags {
    pub max_strict: Vec<bool>,
    pub min_strict: Vec<bool>,
}

/// An exact independence certificate at one basepoint.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub basepoint: Params,
    pub function_set: FunctionSet,
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub jacobian: Vec<Vec<Rat>>,
    /// `None` when the matrix is not square (the uniform block).
    pub determinant: Option<Rat>,
    pub rank: usize,
    pub stability: StabilityFlags,
    pub verdict: String,
}

fn dual_view(p: &Params) -> ParamsView<DualRat> {
    let free = p.free_params();
    let dim = free.len();
    let slots: Vec<DualRat> =
        free.into_iter().enumerate().map(|(i, x)| DualRat::var(x, i, dim)).collect();
    ParamsView::from_slots(p.n(), &slots)
}

fn checked_scan(p: &Params) -> Result<RatioScan> {
    let report = validate_params(p)?;
    if !report.valid {
        return Err(Error::InvalidParams(report.violations.join("; ")));
    }
    Ok(scan_ratios(&build_geometry(p)?))
}

fn ensure_stable(scan: &RatioScan) -> Result<()> {
    for (i, strict) in scan.max_strict.iter().enumerate() {
        if !strict {
            return Err(Error::BranchNotStable(format!(
                "maximum of S_{}(q)/q is attained at more than one division point",
                i + 1
            )));
        }
    }
    for (i, strict) in scan.min_strict.iter().enumerate() {
        if !strict {
            return Err(Error::BranchNotStable(format!(
                "minimum of S_{}(q)/q is attained at more than one division point",
                i + 1
            )));
        }
    }
    Ok(())
}

/// `(q - S_k)/S_k` at one recorded breakpoint of a generic walk.
fn branch_exponent<T: Scalar>(points: &[RawPoint<T>], idx: usize, k: usize) -> T {
    let p = &points[idx];
    let s = p.values[..k].iter().fold(T::zero(), |acc, v| acc + v.clone());
    (p.q.clone() - s.clone()) / s
}

fn row_names(n: usize) -> Vec<String> {
    (0..n).map(|d| format!("What_{d}")).chain((0..n).map(|d| format!("W_{d}"))).collect()
}

/// All 2n exponent functions of the chosen set, as dual numbers over the
/// free coordinates. Rows are ordered `What_0..What_{n-1}, W_0..W_{n-1}`.
fn function_rows(set: FunctionSet, p: &Params, scan: &RatioScan) -> Vec<DualRat> {
    let n = p.n();
    let view = dual_view(p);
    match set {
        FunctionSet::Trajectory => {
            let (points, _) = raw_breakpoints(&view);
            let mut uniform = vec![DualRat::constant(Rat::zero()); n];
            let mut ordinary = vec![DualRat::constant(Rat::zero()); n];
            for k in 1..=n {
                uniform[n - k] = branch_exponent(&points, scan.max_idx[k - 1], k);
                ordinary[n - k] = branch_exponent(&points, scan.min_idx[k - 1], k);
            }
            uniform.into_iter().chain(ordinary).collect()
        }
        FunctionSet::PaperTable => (0..n)
            .map(|d| formulas::paper_uniform(&view, d))
            .chain((0..n).map(|d| formulas::paper_ordinary(&view, d)))
            .collect(),
    }
}

fn rows_to_matrix(rows: &[DualRat], dim: usize) -> RatMat {
    let mut m = RatMat::zeros(rows.len(), dim);
    for (i, row) in rows.iter().enumerate() {
        for j in 0..dim {
            m.set(i, j, row.grad_component(j));
        }
    }
    m
}

/// The Jacobian of the chosen function set at `p`, rows ordered
/// `What_0..What_{n-1}, W_0..W_{n-1}`, columns `A_2..A_n, B_2..B_n, C, D`.
pub fn jacobian(set: FunctionSet, p: &Params) -> Result<RatMat> {
    let scan = checked_scan(p)?;
    if set == FunctionSet::Trajectory {
        ensure_stable(&scan)?;
    }
    Ok(rows_to_matrix(&function_rows(set, p, &scan), 2 * p.n()))
}

/// The same matrix through the polynomial-ring route: every function is
/// built over `Q(A_2..A_n, B_2..B_n, C, D)`, differentiated symbolically,
/// and evaluated at the basepoint. Exists so the dual-number route never
/// has to be trusted on its own.
pub fn jacobian_symbolic(set: FunctionSet, p: &Params) -> Result<RatMat> {
    let scan = checked_scan(p)?;
    if set == FunctionSet::Trajectory {
        ensure_stable(&scan)?;
    }
    let n = p.n();
    let vars = VarSet::new(Params::slot_names(n));
    let slots: Vec<RatFunc> = (0..2 * n).map(|i| RatFunc::var(vars.clone(), i)).collect();
    let view = ParamsView::from_slots(n, &slots);
    let rows: Vec<RatFunc> = match set {
        FunctionSet::Trajectory => {
            let (points, _) = raw_breakpoints(&view);
            let mut uniform = vec![RatFunc::constant(vars.clone(), Rat::zero()); n];
            let mut ordinary = uniform.clone();
            for k in 1..=n {
                uniform[n - k] = branch_exponent(&points, scan.max_idx[k - 1], k);
                ordinary[n - k] = branch_exponent(&points, scan.min_idx[k - 1], k);
            }
            uniform.into_iter().chain(ordinary).collect()
        }
        FunctionSet::PaperTable => (0..n)
            .map(|d| formulas::paper_uniform(&view, d))
            .chain((0..n).map(|d| formulas::paper_ordinary(&view, d)))
            .collect(),
    };
    let basepoint = p.free_params();
    let mut m = RatMat::zeros(2 * n, 2 * n);
    for (i, row) in rows.iter().enumerate() {
        for j in 0..2 * n {
            m.set(i, j, row.derivative(j).eval(&basepoint)?);
        }
    }
    Ok(m)
}

fn stability(scan: &RatioScan) -> StabilityFlags {
    StabilityFlags { max_strict: scan.max_strict.clone(), min_strict: scan.min_strict.clone() }
}

fn matrix_rows(m: &RatMat) -> Vec<Vec<Rat>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Full 2n x 2n certificate: determinant nonzero proves the chosen 2n
/// functions are algebraically independent over the free coordinates.
pub fn independence_certificate(n: usize, p: &Params, set: FunctionSet) -> Result<Certificate> {
    if n != p.n() {
        return Err(Error::DimensionMismatch(format!(
            "certificate requested for n = {n} but parameters have n = {}",
            p.n()
        )));
    }
    let scan = checked_scan(p)?;
    if set == FunctionSet::Trajectory {
        ensure_stable(&scan)?;
    }
    let m = rows_to_matrix(&function_rows(set, p, &scan), 2 * n);
    let det = m.det()?;
    let rank = m.rank();
    let verdict = if det.is_zero() { "dependent" } else { "independent" };
    Ok(Certificate {
        n,
        basepoint: p.clone(),
        function_set: set,
        rows: row_names(n),
        columns: Params::slot_names(n),
        jacobian: matrix_rows(&m),
        determinant: Some(det),
        rank,
        stability: stability(&scan),
        verdict: verdict.to_string(),
    })
}

/// Certificate for the n uniform exponents alone (n x 2n, no determinant):
/// full row rank n proves their independence.
pub fn uniform_block_certificate(n: usize, p: &Params) -> Result<Certificate> {
    if n != p.n() {
        return Err(Error::DimensionMismatch(format!(
            "certificate requested for n = {n} but parameters have n = {}",
            p.n()
        )));
    }
    let scan = checked_scan(p)?;
    ensure_stable(&scan)?;
    let rows = function_rows(FunctionSet::Trajectory, p, &scan);
    let m = rows_to_matrix(&rows[..n], 2 * n);
    let rank = m.rank();
    let verdict = if rank == n { "independent" } else { "dependent" };
    Ok(Certificate {
        n,
        basepoint: p.clone(),
        function_set: FunctionSet::Trajectory,
        rows: row_names(n)[..n].to_vec(),
        columns: Params::slot_names(n),
        jacobian: matrix_rows(&m),
        determinant: None,
        rank,
        stability: stability(&scan),
        verdict: verdict.to_string(),
    })
}

/// Rank report for the relations that survive specializing the spectrum:
/// the n-2 link functions `V_k + 1 - U_k/V_{k-1}` together with `U_2..U_n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpecializationReport {
    pub n: usize,
    pub functions: Vec<String>,
    pub rank: usize,
    pub expected: usize,
    pub pass: bool,
}

fn specialization_rows(p: &Params) -> Vec<(String, DualRat)> {
    let n = p.n();
    let view = dual_view(p);
    let mut rows = Vec::with_capacity(2 * n - 3);
    for k in 2..=n - 1 {
        let value = formulas::v_k(&view, k) + DualRat::constant(Rat::one())
            - formulas::u_k(&view, k) / formulas::v_k(&view, k - 1);
        rows.push((format!("V_{k} + 1 - U_{k}/V_{}", k - 1), value));
    }
    for k in 2..=n {
        rows.push((format!("U_{k}"), formulas::u_k(&view, k)));
    }
    rows
}

/// Checks that the 2n-3 surviving functions stay independent: their
/// Jacobian over the 2n free coordinates must have full row rank.
pub fn specialization_rank_check(n: usize, p: &Params) -> Result<SpecializationReport> {
    if n != p.n() {
        return Err(Error::DimensionMismatch(format!(
            "rank check requested for n = {n} but parameters have n = {}",
            p.n()
        )));
    }
    let report = validate_params(p)?;
    if !report.valid {
        return Err(Error::InvalidParams(report.violations.join("; ")));
    }
    let rows = specialization_rows(p);
    let duals: Vec<DualRat> = rows.iter().map(|(_, v)| v.clone()).collect();
    let m = rows_to_matrix(&duals, 2 * n);
    let rank = m.rank();
    let expected = 2 * n - 3;
    Ok(SpecializationReport {
        n,
        functions: rows.into_iter().map(|(name, _)| name).collect(),
        rank,
        expected,
        pass: rank == expected,
    })
}

/// Everything `certify` reports for one basepoint and function set.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CertifyReport {
    pub certificate: Certificate,
    pub uniform_block: Certificate,
    pub specialization: SpecializationReport,
    pub pass: bool,
}

pub fn certify_report(n: usize, p: &Params, set: FunctionSet) -> Result<CertifyReport> {
    let certificate = independence_certificate(n, p, set)?;
    let uniform_block = uniform_block_certificate(n, p)?;
    let specialization = specialization_rank_check(n, p)?;
    let pass = certificate.verdict == "independent"
        && uniform_block.verdict == "independent"
        && specialization.pass;
    Ok(CertifyReport { certificate, uniform_block, specialization, pass })
}
