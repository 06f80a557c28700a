//! The 2n approximation exponents, by two independent routes.
//!
//! Route one (`trajectory_exponents`) scans the partial-sum ratios
//! `S_k(q)/q` over every division point of a built geometry and converts the
//! extrema into exponents — this is ground truth. Route two
//! (`closed_forms_paper`) evaluates a closed-form table verbatim. The two
//! agree everywhere except the `What_0` entry, where the table disagrees
//! with the geometry; [`compare`] reports the difference honestly rather
//! than papering over it, and the criterion report records on which side of
//! 1/2 each `S_k(delta(k,1))/delta(k,1)` value falls.
//!
//! The scan works on the fundamental domain [1, C): the end point q = C is
//! the start point again (self-similarity scales both `S_k` and `q` by C),
//! so including it would only duplicate q = 1 at a larger q.

mod sample;

pub use sample::{sample_csv, sample_neighborhood, SamplePoint};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Rat, Scalar};
use crate::nsystem::{validate_params, Params, ParamsView, PointLabel, SystemGeometry};

/// Which breakpoint realizes an extremum, and where it sits.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Attainment {
    pub label: PointLabel,
    pub q: Rat,
}

/// Attainment of the maximum (uniform) and minimum (ordinary) for one index d.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AttainmentPair {
    pub uniform: Attainment,
    pub ordinary: Attainment,
}

/// The full exponent spectrum of one parameter point.
///
/// `uniform[d]` is `What_d`, `ordinary[d]` is `W_d`. Closed-form tuples
/// carry no attainment data.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExponentTuple {
    pub n: usize,
    pub uniform: Vec<Rat>,
    pub ordinary: Vec<Rat>,
    pub attainment: Option<Vec<AttainmentPair>>,
}

/// Extrema locations of the partial-sum ratios, per k = 1..n.
///
/// `max_idx[k-1]` / `min_idx[k-1]` index into the geometry's points;
/// the strictness flags record whether the extremum is uniquely attained.
#[derive(Clone, Debug)]
pub(crate) struct RatioScan {
    pub max_idx: Vec<usize>,
    pub min_idx: Vec<usize>,
    pub max_strict: Vec<bool>,
    pub min_strict: Vec<bool>,
}

/// Scans S_k(q)/q over the division points of the fundamental domain.
/// Ties are broken toward the smallest q.
pub(crate) fn scan_ratios(g: &SystemGeometry) -> RatioScan {
    let n = g.n();
    let pts = &g.points()[..g.points().len() - 1];
    let mut scan = RatioScan {
        max_idx: Vec::with_capacity(n),
        min_idx: Vec::with_capacity(n),
        max_strict: Vec::with_capacity(n),
        min_strict: Vec::with_capacity(n),
    };
    for k in 1..=n {
        let ratios: Vec<Rat> = pts
            .iter()
            .map(|p| p.values[..k].iter().sum::<Rat>() / &p.q)
            .collect();
        let max = ratios.iter().max().expect("nonempty scan");
        let min = ratios.iter().min().expect("nonempty scan");
        scan.max_idx.push(ratios.iter().position(|r| r == max).unwrap());
        scan.min_idx.push(ratios.iter().position(|r| r == min).unwrap());
        scan.max_strict.push(ratios.iter().filter(|r| *r == max).count() == 1);
        scan.min_strict.push(ratios.iter().filter(|r| *r == min).count() == 1);
    }
    scan
}

/// Ground truth: the exponents read off the geometry itself.
///
/// For each k, `What_{n-k}` comes from the maximum of `S_k(q)/q` and
/// `W_{n-k}` from the minimum; each value is computed both as `1/ratio - 1`
/// and as the complementary-sum quotient `(q - S_k)/S_k`, which must agree.
pub fn trajectory_exponents(g: &SystemGeometry) -> ExponentTuple {
    let n = g.n();
    let pts = g.points();
    let scan = scan_ratios(g);
    let mut uniform = vec![Rat::zero(); n];
    let mut ordinary = vec![Rat::zero(); n];
    let mut attainment: Vec<Option<AttainmentPair>> = vec![None; n];

    let exponent_at = |idx: usize, k: usize| -> (Rat, Attainment) {
        let p = &pts[idx];
        let s: Rat = p.values[..k].iter().sum();
        let from_ratio = (&s / &p.q).recip().expect("S_k is positive") - Rat::one();
        let from_quotient = (&p.q - &s) / &s;
        assert_eq!(from_ratio, from_quotient, "quotient-form cross-check at {}", p.label);
        (from_ratio, Attainment { label: p.label, q: p.q.clone() })
    };

    for k in 1..=n {
        let d = n - k;
        let (what, at_max) = exponent_at(scan.max_idx[k - 1], k);
        let (w, at_min) = exponent_at(scan.min_idx[k - 1], k);
        uniform[d] = what;
        ordinary[d] = w;
        attainment[d] = Some(AttainmentPair { uniform: at_max, ordinary: at_min });
    }

    ExponentTuple {
        n,
        uniform,
        ordinary,
        attainment: Some(attainment.into_iter().map(Option::unwrap).collect()),
    }
}

/// Generic closed-form building blocks shared by the exponent table, the
/// continued fraction, and the certificates.
pub(crate) mod formulas {
    use super::*;

    /// `M_k = 1 - (A_1 + ... + A_k)`, valid for 1 <= k <= n+1.
    pub fn m_k<T: Scalar>(v: &ParamsView<T>, k: usize) -> T {
        let sum = (1..=k).fold(T::zero(), |acc, i| acc + v.a(i).clone());
        T::one() - sum
    }

    /// `N_k = A_1 + (B_2 + ... + B_k)`, valid for 1 <= k <= n.
    pub fn n_k<T: Scalar>(v: &ParamsView<T>, k: usize) -> T {
        (2..=k).fold(v.a(1).clone(), |acc, i| acc + v.b(i).clone())
    }

    /// `U_k = M_k / N_k`, valid for 2 <= k <= n.
    pub fn u_k<T: Scalar>(v: &ParamsView<T>, k: usize) -> T {
        m_k(v, k) / n_k(v, k)
    }

    /// `V_1 = (1 - 2 A_2)/A_2`; `V_k = M_{k+1}/N_k` for 2 <= k <= n-1.
    pub fn v_k<T: Scalar>(v: &ParamsView<T>, k: usize) -> T {
        if k == 1 {
            (T::one() - T::from_int(2) * v.a(2).clone()) / v.a(2).clone()
        } else {
            m_k(v, k + 1) / n_k(v, k)
        }
    }

    /// The closed-form table's `What_d`, verbatim.
    pub fn paper_uniform<T: Scalar>(v: &ParamsView<T>, d: usize) -> T {
        let n = v.n();
        assert!(d < n);
        if d == n - 1 {
            T::one() / v.a(2).clone() - T::one()
        } else if d == 0 {
            m_k(v, n) / n_k(v, n - 1)
        } else {
            let k = n - d;
            (m_k(v, k + 1) + v.b(k).clone()) / n_k(v, k)
        }
    }

    /// The closed-form table's `W_d`, verbatim.
    pub fn paper_ordinary<T: Scalar>(v: &ParamsView<T>, d: usize) -> T {
        let n = v.n();
        assert!(d < n);
        if d == n - 1 {
            (v.d().clone() + v.c().clone() * m_k(v, 2)) / v.a(2).clone()
        } else {
            let k = n - d;
            v.c().clone() * m_k(v, k) / n_k(v, k)
        }
    }
}

/// The closed-form exponent table, evaluated verbatim (including the
/// `What_0` entry that disagrees with the trajectory).
pub fn closed_forms_paper(p: &Params) -> ExponentTuple {
    let v = p.view();
    let n = p.n();
    ExponentTuple {
        n,
        uniform: (0..n).map(|d| formulas::paper_uniform(&v, d)).collect(),
        ordinary: (0..n).map(|d| formulas::paper_ordinary(&v, d)).collect(),
        attainment: None,
    }
}

/// The derived-quantity table `M`, `N`, `U`, `V`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DerivedQuantities {
    /// `M_2..M_{n+1}`.
    #[serde(rename = "M")]
    pub m: Vec<Rat>,
    /// `N_1..N_n`.
    #[serde(rename = "N")]
    pub n: Vec<Rat>,
    /// `U_2..U_n`.
    #[serde(rename = "U")]
    pub u: Vec<Rat>,
    /// `V_1..V_{n-1}`.
    #[serde(rename = "V")]
    pub v: Vec<Rat>,
}

pub fn mnuv(p: &Params) -> DerivedQuantities {
    let v = p.view();
    let n = p.n();
    DerivedQuantities {
        m: (2..=n + 1).map(|k| formulas::m_k(&v, k)).collect(),
        n: (1..=n).map(|k| formulas::n_k(&v, k)).collect(),
        u: (2..=n).map(|k| formulas::u_k(&v, k)).collect(),
        v: (1..=n - 1).map(|k| formulas::v_k(&v, k)).collect(),
    }
}

impl DerivedQuantities {
    /// `M_k` for `2 <= k <= n+1`.
    pub fn m_k(&self, k: usize) -> &Rat {
        &self.m[k - 2]
    }

    /// `N_k` for `1 <= k <= n`.
    pub fn n_k(&self, k: usize) -> &Rat {
        &self.n[k - 1]
    }

    /// `U_k` for `2 <= k <= n`.
    pub fn u_k(&self, k: usize) -> &Rat {
        &self.u[k - 2]
    }

    /// `V_k` for `1 <= k <= n-1`.
    pub fn v_k(&self, k: usize) -> &Rat {
        &self.v[k - 1]
    }
}

/// `S_k(delta(k,1)) / delta(k,1)` — the quantity whose position relative to
/// 1/2 decides where the maximum is attained. Defined for 2 <= k <= n.
pub fn criterion_lhs(g: &SystemGeometry, k: usize) -> Result<Rat> {
    if !(2..=g.n()).contains(&k) {
        return Err(Error::NoSuchDivisionPoint(format!(
            "delta({k},1) does not exist for n = {}",
            g.n()
        )));
    }
    let p = g
        .point(PointLabel::Delta { k, leg: 1 })
        .expect("delta(k,1) exists for 2 <= k <= n");
    Ok(p.values[..k].iter().sum::<Rat>() / &p.q)
}

/// One row of the criterion report.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CriterionEntry {
    pub k: usize,
    pub lhs: Rat,
    /// Which side of 1/2 the value actually falls on.
    pub observed_side: String,
    /// The claimed pattern: ">1/2" for k <= n-1, "<1/2" for k = n.
    pub claimed_side: String,
    pub matches_claim: bool,
    pub max_attained_at: PointLabel,
    /// Geometric consistency: maximum at delta(k,1) iff lhs >= 1/2.
    pub attainment_consistent: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CriterionReport {
    pub entries: Vec<CriterionEntry>,
    /// True when every entry is attainment-consistent (the claimed-pattern
    /// flags are reported but do not gate this).
    pub consistent: bool,
}

fn delta2_label(k: usize, n: usize) -> PointLabel {
    if k == n {
        PointLabel::DeltaMu { k }
    } else {
        PointLabel::Delta { k, leg: 2 }
    }
}

/// Evaluates the criterion at every k and checks it against where the scan
/// actually attained each maximum.
pub fn criterion_report(g: &SystemGeometry) -> CriterionReport {
    let n = g.n();
    let half = Rat::new(1, 2).expect("nonzero");
    let scan = scan_ratios(g);
    let mut entries = Vec::with_capacity(n - 1);
    for k in 2..=n {
        let lhs = criterion_lhs(g, k).expect("k in range");
        let observed_side = match lhs.cmp(&half) {
            std::cmp::Ordering::Less => "<1/2",
            std::cmp::Ordering::Equal => "=1/2",
            std::cmp::Ordering::Greater => ">1/2",
        }
        .to_string();
        let claimed_side = if k < n { ">1/2" } else { "<1/2" }.to_string();
        let max_attained_at = g.points()[scan.max_idx[k - 1]].label;
        let attainment_consistent = if lhs >= half {
            max_attained_at == PointLabel::Delta { k, leg: 1 }
        } else {
            max_attained_at == delta2_label(k, n)
        };
        entries.push(CriterionEntry {
            k,
            lhs,
            matches_claim: observed_side == claimed_side,
            observed_side,
            claimed_side,
            max_attained_at,
            attainment_consistent,
        });
    }
    CriterionReport { consistent: entries.iter().all(|e| e.attainment_consistent), entries }
}

/// One exponent compared across the two routes.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DiffEntry {
    pub name: String,
    pub trajectory: Rat,
    pub paper: Rat,
    pub equal: bool,
}

/// Exact per-entry comparison of two exponent tuples.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DiffReport {
    pub n: usize,
    pub entries: Vec<DiffEntry>,
    pub equal_count: usize,
    pub different_count: usize,
}

pub fn compare(trajectory: &ExponentTuple, paper: &ExponentTuple) -> Result<DiffReport> {
    if trajectory.n != paper.n {
        return Err(Error::DimensionMismatch(format!(
            "cannot compare tuples with n = {} and n = {}",
            trajectory.n, paper.n
        )));
    }
    let n = trajectory.n;
    let mut entries = Vec::with_capacity(2 * n);
    for d in 0..n {
        entries.push(DiffEntry {
            name: format!("What_{d}"),
            trajectory: trajectory.uniform[d].clone(),
            paper: paper.uniform[d].clone(),
            equal: trajectory.uniform[d] == paper.uniform[d],
        });
    }
    for d in 0..n {
        entries.push(DiffEntry {
            name: format!("W_{d}"),
            trajectory: trajectory.ordinary[d].clone(),
            paper: paper.ordinary[d].clone(),
            equal: trajectory.ordinary[d] == paper.ordinary[d],
        });
    }
    let equal_count = entries.iter().filter(|e| e.equal).count();
    Ok(DiffReport { n, different_count: entries.len() - equal_count, entries, equal_count })
}

/// Violations of the inequality chains a genuine spectrum must satisfy.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ChainReport {
    pub violations: Vec<String>,
}

impl ChainReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks both monotone chains, `W_d >= What_d`, and the lower bound
/// `What_d >= (d+1)/(n-d)`.
pub fn check_chains(t: &ExponentTuple) -> ChainReport {
    let n = t.n;
    let mut violations = Vec::new();
    for d in 0..n - 1 {
        if t.uniform[d] > t.uniform[d + 1] {
            violations.push(format!("What_{d} ≤ What_{}", d + 1));
        }
        if t.ordinary[d] > t.ordinary[d + 1] {
            violations.push(format!("W_{d} ≤ W_{}", d + 1));
        }
    }
    for d in 0..n {
        if t.ordinary[d] < t.uniform[d] {
            violations.push(format!("W_{d} ≥ What_{d}"));
        }
        let bound = Rat::new((d + 1) as i64, (n - d) as i64).expect("d < n");
        if t.uniform[d] < bound {
            violations.push(format!("What_{d} ≥ (d+1)/(n-d) = {bound}"));
        }
    }
    ChainReport { violations }
}

/// Everything the exponents pipeline produces for one parameter point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExponentsReport {
    pub params: Params,
    pub derived: DerivedQuantities,
    pub trajectory: ExponentTuple,
    pub paper_table: ExponentTuple,
    pub criterion: CriterionReport,
    pub diff: DiffReport,
}

pub fn exponents_report(p: &Params) -> Result<ExponentsReport> {
    let report = validate_params(p)?;
    if !report.valid {
        return Err(Error::InvalidParams(report.violations.join("; ")));
    }
    let g = crate::nsystem::build_geometry(p)?;
    let trajectory = trajectory_exponents(&g);
    let paper_table = closed_forms_paper(p);
    let diff = compare(&trajectory, &paper_table)?;
    Ok(ExponentsReport {
        params: p.clone(),
        derived: mnuv(p),
        trajectory,
        paper_table,
        criterion: criterion_report(&g),
        diff,
    })
}
