//! The combined graph of the (n+1)-system on the fundamental interval.
//!
//! The construction walks the interval [1, C] left to right. At every moment
//! exactly one thing is rising: either a single component at slope 1, or two
//! coinciding components at slope 1/2 each. Each step is therefore fully
//! determined by which component rises and the value it must reach, and the
//! step's length equals its total rise. Walking the full schedule of rises
//! must land exactly on q = C — that closure identity, together with the
//! axiom checks, is what guards the construction instead of trust.
//!
//! Division points are labeled `delta(k,1)`, `delta(k,2)` (the coinciding
//! stretches on the way up), `mu(l)` (the tail of single risers), with
//! `delta(n,2) = mu(n+1)` merged into one point, plus `start` and `end`.
//! The points `mu(1)..mu(n)` are the switch points; all others are ordinary.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{validate_params, Params, ParamsView};
use crate::error::{Error, Result};
use crate::exactnum::{Rat, Scalar};

/// Identity of a division point in the combined graph.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PointLabel {
    Start,
    /// `delta(k, leg)` with `leg` 1 or 2, for `2 <= k <= n`.
    Delta { k: usize, leg: u8 },
    /// The merged point `delta(k,2) = mu(k+1)` (occurs at `k = n`).
    DeltaMu { k: usize },
    /// `mu(l)` for `0 <= l <= n`.
    Mu { l: usize },
    End,
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointLabel::Start => write!(f, "start"),
            PointLabel::Delta { k, leg } => write!(f, "delta({k},{leg})"),
            PointLabel::DeltaMu { k } => write!(f, "delta({k},2)=mu({})", k + 1),
            PointLabel::Mu { l } => write!(f, "mu({l})"),
            PointLabel::End => write!(f, "end"),
        }
    }
}

impl FromStr for PointLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<PointLabel> {
        let bad = || Error::Parse(format!("invalid point label {s:?}"));
        match s {
            "start" => return Ok(PointLabel::Start),
            "end" => return Ok(PointLabel::End),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("mu(") {
            let l = rest.strip_suffix(')').ok_or_else(bad)?;
            return Ok(PointLabel::Mu { l: l.parse().map_err(|_| bad())? });
        }
        if let Some(rest) = s.strip_prefix("delta(") {
            if let Some((body, merged)) = rest.split_once(")=mu(") {
                let (k, leg) = body.split_once(',').ok_or_else(bad)?;
                let k: usize = k.parse().map_err(|_| bad())?;
                let l: usize = merged.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
                if leg != "2" || l != k + 1 {
                    return Err(bad());
                }
                return Ok(PointLabel::DeltaMu { k });
            }
            let body = rest.strip_suffix(')').ok_or_else(bad)?;
            let (k, leg) = body.split_once(',').ok_or_else(bad)?;
            let leg: u8 = leg.parse().map_err(|_| bad())?;
            if leg != 1 && leg != 2 {
                return Err(bad());
            }
            return Ok(PointLabel::Delta { k: k.parse().map_err(|_| bad())?, leg });
        }
        Err(bad())
    }
}

impl Serialize for PointLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PointLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<PointLabel, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Whether a division point switches the active minimum (only `mu(1)..mu(n)` do).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Ordinary,
    Switch,
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointKind::Ordinary => write!(f, "ordinary"),
            PointKind::Switch => write!(f, "switch"),
        }
    }
}

fn kind_for(label: PointLabel) -> PointKind {
    match label {
        PointLabel::Mu { l } if l >= 1 => PointKind::Switch,
        _ => PointKind::Ordinary,
    }
}

/// A breakpoint of the walk, generic in the scalar type.
#[derive(Clone, Debug)]
pub struct RawPoint<T> {
    pub label: PointLabel,
    pub q: T,
    pub values: Vec<T>,
}

/// What happens between two consecutive division points: which component
/// ranks rise, and at what slope (1 for a single riser, 1/2 for a
/// coinciding pair).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IntervalShape {
    pub rising: Vec<usize>,
    pub slope: Rat,
}

struct Walk<T> {
    q: T,
    values: Vec<T>,
    points: Vec<RawPoint<T>>,
    shapes: Vec<IntervalShape>,
}

impl<T: Scalar> Walk<T> {
    /// Advances to the next division point: `ranks` (1-based, equal-valued)
    /// rise to `target`; the step length is forced by rise = length x slope.
    fn rise(&mut self, label: PointLabel, ranks: &[usize], target: T) {
        let run = target.clone() - self.values[ranks[0] - 1].clone();
        let (dq, slope) = match ranks {
            [_] => (run, Rat::one()),
            [_, _] => (T::from_int(2) * run, Rat::new(1, 2).expect("nonzero")),
            _ => unreachable!("one or two risers only"),
        };
        self.q = self.q.clone() + dq;
        for &r in ranks {
            self.values[r - 1] = target.clone();
        }
        self.shapes.push(IntervalShape { rising: ranks.to_vec(), slope });
        self.points.push(RawPoint {
            label,
            q: self.q.clone(),
            values: self.values.clone(),
        });
    }
}

/// Runs the full breakpoint schedule at any scalar type, returning the 3n+1
/// points and the 3n interval shapes between them. No validity checking
/// happens here — the caller decides what the closure identity means for its
/// scalar type.
pub fn raw_breakpoints<T: Scalar>(view: &ParamsView<T>) -> (Vec<RawPoint<T>>, Vec<IntervalShape>) {
    let n = view.n();
    let values: Vec<T> = (1..=n + 1).map(|k| view.a(k).clone()).collect();
    let mut w = Walk {
        q: T::one(),
        points: vec![RawPoint { label: PointLabel::Start, q: T::one(), values: values.clone() }],
        values,
        shapes: Vec::new(),
    };

    // Ascent: P_2 rises to A_3, then for each k the pair (P_k, P_{k+1})
    // coincides from A_{k+1} up to B_k, and P_{k+1} continues to A_{k+2}.
    w.rise(PointLabel::Delta { k: 2, leg: 1 }, &[2], view.a(3).clone());
    for k in 2..=n {
        let label = if k == n { PointLabel::DeltaMu { k } } else { PointLabel::Delta { k, leg: 2 } };
        w.rise(label, &[k, k + 1], view.b(k).clone());
        if k < n {
            w.rise(PointLabel::Delta { k: k + 1, leg: 1 }, &[k + 1], view.a(k + 2).clone());
        }
    }

    // Tail: each component in turn rises to its end value C·A_k, except that
    // P_2 and P_1 first meet at D and finish the last stretch together.
    let c = view.c().clone();
    w.rise(PointLabel::Mu { l: n }, &[n + 1], c.clone() * view.a(n + 1).clone());
    for k in (3..=n).rev() {
        w.rise(PointLabel::Mu { l: k - 1 }, &[k], c.clone() * view.a(k).clone());
    }
    w.rise(PointLabel::Mu { l: 1 }, &[2], view.d().clone());
    w.rise(PointLabel::Mu { l: 0 }, &[1], view.d().clone());
    w.rise(PointLabel::End, &[1, 2], c * view.a(2).clone());

    (w.points, w.shapes)
}

/// A concrete division point of a built geometry.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DivisionPoint {
    pub q: Rat,
    pub values: Vec<Rat>,
    pub label: PointLabel,
    pub kind: PointKind,
}

/// The combined graph over the fundamental interval: validated parameters,
/// the 3n+1 division points with exact values, and the interval shapes.
#[derive(Clone, Debug)]
pub struct SystemGeometry {
    params: Params,
    points: Vec<DivisionPoint>,
    shapes: Vec<IntervalShape>,
}

impl SystemGeometry {
    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn points(&self) -> &[DivisionPoint] {
        &self.points
    }

    pub fn shapes(&self) -> &[IntervalShape] {
        &self.shapes
    }

    pub fn point(&self, label: PointLabel) -> Option<&DivisionPoint> {
        self.points.iter().find(|p| p.label == label)
    }

    /// Runs every geometry axiom and reports all violations found.
    pub fn check_axioms(&self) -> AxiomReport {
        check_axioms(self)
    }
}

/// Builds and fully checks the geometry for a valid parameter point.
///
/// Fails if validation fails, if the walk does not close exactly on C, or if
/// any axiom check fails (the error carries the first violation).
pub fn build_geometry(p: &Params) -> Result<SystemGeometry> {
    let report = validate_params(p)?;
    if !report.valid {
        return Err(Error::InvalidParams(report.violations.join("; ")));
    }
    let (raw, shapes) = raw_breakpoints::<Rat>(&p.view());
    let last = raw.last().expect("walk is nonempty");
    if &last.q != p.c() {
        return Err(Error::Geometry(format!(
            "closure identity failed: walk ends at q = {} but C = {}",
            last.q,
            p.c()
        )));
    }
    let points = raw
        .into_iter()
        .map(|rp| DivisionPoint { kind: kind_for(rp.label), q: rp.q, values: rp.values, label: rp.label })
        .collect();
    let g = SystemGeometry { params: p.clone(), points, shapes };
    let axioms = g.check_axioms();
    if let Some(first) = axioms.violations.first() {
        return Err(Error::Geometry(first.clone()));
    }
    Ok(g)
}

/// Result of re-verifying the geometry invariants; violations are data.
#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Re-verifies every SystemGeometry invariant from the stored data alone:
/// boundary values, exact sums, ordering, strict monotonicity of q, the
/// one-rising-unit slope structure, the 3n+1 point count, and the
/// switch/ordinary labeling.
pub fn check_axioms(g: &SystemGeometry) -> AxiomReport {
    let mut v = Vec::new();
    let n = g.n();
    let p = g.params();
    let pts = &g.points;

    if pts.len() != 3 * n + 1 {
        v.push(format!("expected {} division points, found {}", 3 * n + 1, pts.len()));
    }
    if g.shapes.len() + 1 != pts.len() {
        v.push(format!(
            "expected {} interval shapes for {} points, found {}",
            pts.len() - 1,
            pts.len(),
            g.shapes.len()
        ));
    }

    if let Some(first) = pts.first() {
        if first.q != Rat::one() {
            v.push(format!("first division point at q = {}, expected 1", first.q));
        }
        for k in 1..=n + 1 {
            if first.values[k - 1] != *p.a(k) {
                v.push(format!("P_{k}(1) = {}, expected A_{k} = {}", first.values[k - 1], p.a(k)));
            }
        }
    }
    if let Some(last) = pts.last() {
        if last.q != *p.c() {
            v.push(format!("last division point at q = {}, expected C = {}", last.q, p.c()));
        }
        for k in 1..=n + 1 {
            let expect = p.c() * p.a(k);
            if last.values[k - 1] != expect {
                v.push(format!("P_{k}(C) = {}, expected C·A_{k} = {}", last.values[k - 1], expect));
            }
        }
    }

    for pt in pts {
        if pt.values.len() != n + 1 {
            v.push(format!("{}: {} component values, expected {}", pt.label, pt.values.len(), n + 1));
            continue;
        }
        let sum: Rat = pt.values.iter().sum();
        if sum != pt.q {
            v.push(format!("{}: component sum {} differs from q = {}", pt.label, sum, pt.q));
        }
        for k in 1..n + 1 {
            if pt.values[k - 1] > pt.values[k] {
                v.push(format!(
                    "{}: ordering violated, P_{k} = {} > P_{} = {}",
                    pt.label,
                    pt.values[k - 1],
                    k + 1,
                    pt.values[k]
                ));
            }
        }
        let expected_kind = kind_for(pt.label);
        if pt.kind != expected_kind {
            v.push(format!("{}: marked {}, expected {}", pt.label, pt.kind, expected_kind));
        }
    }

    for l in 1..=n {
        if g.point(PointLabel::Mu { l }).is_none() {
            v.push(format!("switch point mu({l}) is missing"));
        }
    }

    for (i, shape) in g.shapes.iter().enumerate() {
        let Some((a, b)) = pts.get(i).zip(pts.get(i + 1)) else { break };
        let dq = &b.q - &a.q;
        if !dq.is_positive() {
            v.push(format!("interval {}..{}: q does not increase", a.label, b.label));
            continue;
        }
        let ok_shape = match shape.rising.as_slice() {
            [r] => *r >= 1 && *r <= n + 1 && shape.slope == Rat::one(),
            [r, s] => *r >= 1 && *s == r + 1 && *s <= n + 1 && shape.slope == Rat::new(1, 2).unwrap(),
            _ => false,
        };
        if !ok_shape {
            v.push(format!(
                "interval {}..{}: rising unit {:?} at slope {} is not a single slope-1 riser or a coinciding slope-1/2 pair",
                a.label, b.label, shape.rising, shape.slope
            ));
            continue;
        }
        for k in 1..=n + 1 {
            let rises = shape.rising.contains(&k);
            let delta = &b.values[k - 1] - &a.values[k - 1];
            let expected = if rises { &shape.slope * &dq } else { Rat::zero() };
            if delta != expected {
                v.push(format!(
                    "interval {}..{}: P_{k} changes by {}, expected {}",
                    a.label, b.label, delta, expected
                ));
            }
        }
        if let [r, s] = shape.rising.as_slice() {
            if a.values[r - 1] != a.values[s - 1] || b.values[r - 1] != b.values[s - 1] {
                v.push(format!(
                    "interval {}..{}: slope-1/2 pair P_{r}, P_{s} does not coincide",
                    a.label, b.label
                ));
            }
        }
    }

    AxiomReport { violations: v }
}

/// A geometry together with its self-similar extension `P(Cq) = C·P(q)`.
#[derive(Clone, Debug)]
pub struct NSystem {
    geometry: SystemGeometry,
}

impl NSystem {
    pub fn new(geometry: SystemGeometry) -> NSystem {
        NSystem { geometry }
    }

    pub fn geometry(&self) -> &SystemGeometry {
        &self.geometry
    }

    /// Evaluates all n+1 components at any q >= 1: q is reduced into the
    /// fundamental interval by the exact power of C, interpolated there, and
    /// scaled back.
    pub fn eval(&self, q: &Rat) -> Result<Vec<Rat>> {
        if *q < Rat::one() {
            return Err(Error::OutsideDomain(format!("q = {q} is below 1")));
        }
        let c = self.geometry.params.c();
        let mut scale = Rat::one();
        let mut qr = q.clone();
        while &qr >= c {
            qr = qr / c;
            scale = scale * c;
        }

        let pts = self.geometry.points();
        let i = match pts.binary_search_by(|p| p.q.cmp(&qr)) {
            Ok(i) => return Ok(pts[i].values.iter().map(|v| v * &scale).collect()),
            Err(i) => i - 1,
        };
        let (a, b) = (&pts[i], &pts[i + 1]);
        let t = (&qr - &a.q) / (&b.q - &a.q);
        Ok(a.values
            .iter()
            .zip(&b.values)
            .map(|(v0, v1)| (v0 + (v1 - v0) * &t) * &scale)
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nsystem::canonical_params;
    use crate::polyring::{RatFunc, VarSet};

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q).unwrap()
    }

    fn canonical_geometry(n: usize) -> SystemGeometry {
        build_geometry(&canonical_params(n).unwrap()).unwrap()
    }

    #[test]
    fn breakpoint_table_n3() {
        let g = canonical_geometry(3);
        let expected: Vec<(&str, Rat)> = vec![
            ("start", r(1, 1)),
            ("delta(2,1)", r(9, 8)),
            ("delta(2,2)", r(5, 4)),
            ("delta(3,1)", r(23, 16)),
            ("delta(3,2)=mu(4)", r(27, 16)),
            ("mu(3)", r(41, 16)),
            ("mu(2)", r(43, 16)),
            ("mu(1)", r(87, 32)),
            ("mu(0)", r(47, 16)),
            ("end", r(3, 1)),
        ];
        assert_eq!(g.points().len(), 10);
        for (pt, (label, q)) in g.points().iter().zip(&expected) {
            assert_eq!(&pt.label.to_string(), label);
            assert_eq!(&pt.q, q, "at {label}");
        }
        assert_eq!(g.points()[0].values, vec![r(1, 8), r(1, 8), r(1, 4), r(1, 2)]);
        let mu1 = g.point(PointLabel::Mu { l: 1 }).unwrap();
        assert_eq!(mu1.values, vec![r(1, 8), r(11, 32), r(3, 4), r(3, 2)]);
        assert_eq!(mu1.kind, PointKind::Switch);
        let merged = g.point(PointLabel::DeltaMu { k: 3 }).unwrap();
        assert_eq!(merged.values, vec![r(1, 8), r(5, 16), r(5, 8), r(5, 8)]);
        assert_eq!(merged.kind, PointKind::Ordinary);
    }

    #[test]
    fn construction_closes_and_passes_axioms_for_all_n() {
        for n in 3..=8 {
            let g = canonical_geometry(n);
            assert_eq!(g.points().len(), 3 * n + 1, "n = {n}");
            assert!(g.check_axioms().is_ok(), "n = {n}");
            assert_eq!(g.points().last().unwrap().q, r(3, 1));
        }
    }

    #[test]
    fn switch_points_are_exactly_mu_1_to_n() {
        let g = canonical_geometry(4);
        let switches: Vec<String> = g
            .points()
            .iter()
            .filter(|p| p.kind == PointKind::Switch)
            .map(|p| p.label.to_string())
            .collect();
        // The tail of the walk runs mu(n) down to mu(0).
        assert_eq!(switches, vec!["mu(4)", "mu(3)", "mu(2)", "mu(1)"]);
    }

    #[test]
    fn invalid_params_are_rejected_up_front() {
        let mut bad = canonical_params(3).unwrap();
        bad.b[0] = r(3, 8);
        let err = build_geometry(&bad).unwrap_err();
        assert!(matches!(err, Error::InvalidParams(msg) if msg.contains("B_2 < C·A_2")));
    }

    #[test]
    fn perturbed_value_breaks_the_sum_axiom() {
        let mut g = canonical_geometry(3);
        let bump = &g.points[4].values[2] + &r(1, 1000);
        g.points[4].values[2] = bump;
        let report = g.check_axioms();
        assert!(!report.is_ok());
        assert!(
            report.violations.iter().any(|v| v.contains("component sum")),
            "{:?}",
            report.violations
        );
    }

    #[test]
    fn relabeled_switch_point_is_a_violation() {
        let mut g = canonical_geometry(3);
        let idx = g.points.iter().position(|p| p.label == PointLabel::Mu { l: 1 }).unwrap();
        g.points[idx].kind = PointKind::Ordinary;
        let report = g.check_axioms();
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("mu(1)") && v.contains("ordinary")));
    }

    #[test]
    fn labels_round_trip_through_strings() {
        let labels = [
            PointLabel::Start,
            PointLabel::Delta { k: 2, leg: 1 },
            PointLabel::Delta { k: 5, leg: 2 },
            PointLabel::DeltaMu { k: 4 },
            PointLabel::Mu { l: 0 },
            PointLabel::Mu { l: 7 },
            PointLabel::End,
        ];
        for label in labels {
            let s = label.to_string();
            assert_eq!(s.parse::<PointLabel>().unwrap(), label, "{s}");
        }
        assert!("delta(3)".parse::<PointLabel>().is_err());
        assert!("delta(3,4)".parse::<PointLabel>().is_err());
        assert!("delta(3,2)=mu(5)".parse::<PointLabel>().is_err());
        assert!("nu(2)".parse::<PointLabel>().is_err());
    }

    #[test]
    fn eval_interpolates_within_the_fundamental_interval() {
        let sys = NSystem::new(canonical_geometry(3));
        assert_eq!(
            sys.eval(&r(9, 4)).unwrap(),
            vec![r(1, 8), r(5, 16), r(5, 8), r(19, 16)]
        );
        // Exactly at a division point.
        assert_eq!(
            sys.eval(&r(87, 32)).unwrap(),
            vec![r(1, 8), r(11, 32), r(3, 4), r(3, 2)]
        );
        assert_eq!(sys.eval(&Rat::one()).unwrap(), vec![r(1, 8), r(1, 8), r(1, 4), r(1, 2)]);
    }

    #[test]
    fn eval_reduces_by_self_similarity() {
        let sys = NSystem::new(canonical_geometry(3));
        assert_eq!(
            sys.eval(&r(27, 8)).unwrap(),
            vec![r(3, 8), r(3, 4), r(3, 4), r(3, 2)]
        );
        // q = C^2 reduces to the start point scaled by 9.
        assert_eq!(
            sys.eval(&r(9, 1)).unwrap(),
            vec![r(9, 8), r(9, 8), r(9, 4), r(9, 2)]
        );
        // The sum identity survives reduction.
        for q in [r(7, 2), r(100, 7), r(81, 5)] {
            let vals = sys.eval(&q).unwrap();
            assert_eq!(vals.iter().sum::<Rat>(), q);
        }
    }

    #[test]
    fn eval_rejects_arguments_below_one() {
        let sys = NSystem::new(canonical_geometry(3));
        assert!(matches!(sys.eval(&r(1, 2)), Err(Error::OutsideDomain(_))));
    }

    #[test]
    fn closure_identity_holds_symbolically() {
        // Run the walk on rational functions in the free parameters: the
        // final q collapses to the variable C identically, which proves the
        // closure identity for every parameter choice at once.
        for n in 3..=5 {
            let vars = VarSet::new(crate::nsystem::Params::slot_names(n));
            let slots: Vec<RatFunc> =
                (0..2 * n).map(|i| RatFunc::var(vars.clone(), i)).collect();
            let view = ParamsView::from_slots(n, &slots);
            let (points, _) = raw_breakpoints(&view);
            let c = RatFunc::var(vars.clone(), 2 * n - 2);
            assert_eq!(points.last().unwrap().q, c, "n = {n}");
        }
    }
}
