//! The generalized continued fraction whose value recovers `V_{n-1}`.
//!
//! Partial quotients come from the closed-form table: `e_k` is the ordinary
//! exponent `W_k` *specialized to C = 1* (which collapses it to `U_{n-k}`),
//! `f_k` is `What_{k+1} - 1` for k <= n-3, and the final `f_{n-2}` is `V_1`.
//! The convergent recurrence is
//!
//! ```text
//! E_k = f_k E_{k-1} + e_k E_{k-2},   E_{-1} = 1, E_0 = f_0,
//! F_k = f_k F_{k-1} + e_k F_{k-2},   F_{-1} = 0, F_0 = 1,
//! ```
//!
//! and the identity states `E_{n-2}/F_{n-2} = V_{n-1}`. Skipping the C = 1
//! specialization breaks it (`cf_inputs_with_c` exists to demonstrate
//! exactly that), and swapping the roles of `e` and `f` in the recurrence —
//! a natural transcription slip — breaks the constant-term structure of the
//! convergents, which [`symbolic_cf_check`] guards against.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Rat, Scalar};
use crate::exponents::formulas;
use crate::nsystem::{validate_params, Params};
use crate::polyring::{Poly, RatFunc, VarSet};

/// Partial quotients: `e` holds `e_1..e_{n-2}`, `f` holds `f_0..f_{n-2}`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CfData<T> {
    pub e: Vec<T>,
    pub f: Vec<T>,
}

impl<T> CfData<T> {
    pub fn n(&self) -> usize {
        self.e.len() + 2
    }
}

/// The convergent pairs `(E_k, F_k)` for k = -1 .. n-2.
#[derive(Clone, PartialEq, Debug)]
pub struct Convergents<T> {
    pairs: Vec<(T, T)>,
}

impl<T> Convergents<T> {
    /// `(E_k, F_k)`, with k starting at -1.
    pub fn pair(&self, k: isize) -> &(T, T) {
        &self.pairs[(k + 1) as usize]
    }

    pub fn last(&self) -> &(T, T) {
        self.pairs.last().expect("at least the seed pairs")
    }
}

fn run_recurrence<T: Scalar>(d: &CfData<T>, swap_roles: bool) -> Convergents<T> {
    assert_eq!(d.f.len(), d.e.len() + 1, "need f_0..f_{{n-2}} and e_1..e_{{n-2}}");
    let mut pairs = vec![(T::one(), T::zero()), (d.f[0].clone(), T::one())];
    for k in 1..=d.e.len() {
        let (multiplier, weight) =
            if swap_roles { (&d.e[k - 1], &d.f[k]) } else { (&d.f[k], &d.e[k - 1]) };
        let (e1, f1) = &pairs[k];
        let (e2, f2) = &pairs[k - 1];
        pairs.push((
            multiplier.clone() * e1.clone() + weight.clone() * e2.clone(),
            multiplier.clone() * f1.clone() + weight.clone() * f2.clone(),
        ));
    }
    Convergents { pairs }
}

/// The three-term recurrence above.
pub fn convergents<T: Scalar>(d: &CfData<T>) -> Convergents<T> {
    run_recurrence(d, false)
}

/// The transcription-slip variant `E_k = e_k E_{k-1} + f_k E_{k-2}`,
/// kept only so tests can show it is wrong.
pub fn convergents_ef_swapped<T: Scalar>(d: &CfData<T>) -> Convergents<T> {
    run_recurrence(d, true)
}

/// Evaluates `f_0 + e_1/(f_1 + e_2/(... + e_{n-2}/f_{n-2}))` directly.
pub fn nested_eval(d: &CfData<Rat>) -> Result<Rat> {
    let mut value = d.f.last().expect("f is nonempty").clone();
    for k in (1..=d.e.len()).rev() {
        value = &d.f[k - 1] + &d.e[k - 1].checked_div(&value)?;
    }
    Ok(value)
}

/// The partial quotients for a parameter point, with `C = 1` applied to the
/// `e_k` (so `e_k = U_{n-k}`).
pub fn cf_inputs(p: &Params) -> CfData<Rat> {
    let v = p.view();
    let n = p.n();
    CfData {
        e: (1..=n - 2).map(|k| formulas::u_k(&v, n - k)).collect(),
        f: f_inputs(p),
    }
}

/// The same `f_k`, but `e_k = W_k` kept at the actual value of C. The
/// identity fails on these inputs; they exist to show the specialization
/// is load-bearing.
pub fn cf_inputs_with_c(p: &Params) -> CfData<Rat> {
    let v = p.view();
    let n = p.n();
    CfData {
        e: (1..=n - 2).map(|k| formulas::paper_ordinary(&v, k)).collect(),
        f: f_inputs(p),
    }
}

fn f_inputs(p: &Params) -> Vec<Rat> {
    let v = p.view();
    let n = p.n();
    (0..=n - 3)
        .map(|k| formulas::paper_uniform(&v, k + 1) - Rat::one())
        .chain(std::iter::once(formulas::v_k(&v, 1)))
        .collect()
}

/// One link of the chain `V_k = What_{n-k} - 1 + U_k / V_{k-1}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LinkCheck {
    pub k: usize,
    pub lhs: Rat,
    pub rhs: Rat,
    pub pass: bool,
}

/// Outcome of the continued-fraction identity at one parameter point.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CfReport {
    pub n: usize,
    pub specialize_c: bool,
    pub inputs: CfData<Rat>,
    /// `E_{n-2} / F_{n-2}`.
    pub ratio: Rat,
    /// The same value from direct nested evaluation.
    pub nested: Rat,
    /// `V_{n-1}`, the value the identity predicts.
    pub expected: Rat,
    pub ratio_matches: bool,
    pub links: Vec<LinkCheck>,
    pub pass: bool,
}

/// Runs the identity at `p`, with or without the `C = 1` specialization of
/// the `e_k`, and checks every intermediate link.
pub fn cf_identity_check(p: &Params, specialize_c: bool) -> Result<CfReport> {
    let report = validate_params(p)?;
    if !report.valid {
        return Err(Error::InvalidParams(report.violations.join("; ")));
    }
    let n = p.n();
    let v = p.view();
    let inputs = if specialize_c { cf_inputs(p) } else { cf_inputs_with_c(p) };
    let conv = convergents(&inputs);
    let (e_last, f_last) = conv.last();
    let ratio = e_last.checked_div(f_last)?;
    let nested = nested_eval(&inputs)?;
    let expected = formulas::v_k(&v, n - 1);
    let links = (2..=n - 1)
        .map(|k| {
            let lhs = formulas::v_k(&v, k);
            let rhs = formulas::paper_uniform(&v, n - k) - Rat::one()
                + formulas::u_k(&v, k).checked_div(&formulas::v_k(&v, k - 1))?;
            Ok(LinkCheck { pass: lhs == rhs, k, lhs, rhs })
        })
        .collect::<Result<Vec<_>>>()?;
    let ratio_matches = ratio == expected;
    let pass = ratio_matches && nested == ratio && links.iter().all(|l| l.pass);
    Ok(CfReport {
        n,
        specialize_c,
        inputs,
        ratio,
        nested,
        expected,
        ratio_matches,
        links,
        pass,
    })
}

/// Structural facts about the convergents, proved over polynomial rings in
/// the partial quotients themselves (no parameter values involved).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SymbolicCfReport {
    pub n: usize,
    /// Setting every `e_j = 0` collapses `E_{n-2}` to `f_0 f_1 ... f_{n-2}`.
    pub e_constant_term: bool,
    /// ... and `F_{n-2}` to `f_1 ... f_{n-2}`.
    pub f_constant_term: bool,
    /// `E_k F_{k-1} - E_{k-1} F_k = (-1)^{k-1} e_1 ... e_k` for every k.
    pub determinant_identity: bool,
    /// The e/f-swapped recurrence violates the constant-term collapse.
    pub swapped_variant_fails: bool,
    /// In the exponent-variable reading, `E` and `F` never mention `What_0`.
    pub independent_of_what0: bool,
    /// The constant monomial of `F*What_0 - E` (with respect to the `W_k`)
    /// is `(What_0 - What_1 + 1) * V_1 * (What_2 - 1) ... (What_{n-2} - 1)`.
    pub constant_monomial_identity: bool,
    pub pass: bool,
}

/// Checks the convergent structure symbolically for one value of n.
pub fn symbolic_cf_check(n: usize) -> Result<SymbolicCfReport> {
    if n < 3 {
        return Err(Error::UnsupportedDimension(n));
    }

    // Universe one: the partial quotients as free variables.
    let names: Vec<String> = (1..=n - 2)
        .map(|k| format!("e_{k}"))
        .chain((0..=n - 2).map(|k| format!("f_{k}")))
        .collect();
    let vars = VarSet::new(names);
    let e_idx: Vec<usize> = (0..n - 2).collect();
    let data = CfData {
        e: e_idx.iter().map(|&i| RatFunc::var(vars.clone(), i)).collect::<Vec<_>>(),
        f: (0..=n - 2).map(|k| RatFunc::var(vars.clone(), n - 2 + k)).collect(),
    };
    let conv = convergents(&data);
    let (e_final, f_final) = conv.last();

    let f_product = |from: usize| -> Poly {
        (from..=n - 2).fold(Poly::one(vars.clone()), |acc, k| {
            acc * Poly::var(vars.clone(), n - 2 + k)
        })
    };
    let e_constant_term = e_final.num().constant_term_in(&e_idx) == f_product(0);
    let f_constant_term = f_final.num().constant_term_in(&e_idx) == f_product(1);

    let mut determinant_identity = true;
    let mut sign = Rat::one();
    let mut e_prod = RatFunc::constant(vars.clone(), Rat::one());
    for k in 1..=(n - 2) as isize {
        e_prod = e_prod * data.e[(k - 1) as usize].clone();
        let (ek, fk) = conv.pair(k);
        let (ep, fp) = conv.pair(k - 1);
        let det = ek.clone() * fp.clone() - ep.clone() * fk.clone();
        if det != RatFunc::constant(vars.clone(), sign.clone()) * e_prod.clone() {
            determinant_identity = false;
        }
        sign = -sign;
    }

    let swapped = convergents_ef_swapped(&data);
    let swapped_variant_fails =
        swapped.last().0.num().constant_term_in(&e_idx) != f_product(0);

    // Universe two: the same structure read through the exponents. Here
    // e_k = W_k, f_k = What_{k+1} - 1 (with f_{n-2} = V_1), and What_0 is
    // present only so we can form F*What_0 - E.
    let names: Vec<String> = std::iter::once("What_0".to_string())
        .chain((1..=n - 2).map(|k| format!("W_{k}")))
        .chain((1..=n - 2).map(|k| format!("What_{k}")))
        .chain(std::iter::once("V_1".to_string()))
        .collect();
    let wvars = VarSet::new(names);
    let what0 = RatFunc::var(wvars.clone(), 0);
    let w_idx: Vec<usize> = (1..=n - 2).collect();
    let what = |k: usize| RatFunc::var(wvars.clone(), n - 2 + k);
    let v1 = RatFunc::var(wvars.clone(), 2 * (n - 2) + 1);
    let one = RatFunc::constant(wvars.clone(), Rat::one());
    let wdata = CfData {
        e: w_idx.iter().map(|&i| RatFunc::var(wvars.clone(), i)).collect::<Vec<_>>(),
        f: (1..=n - 2)
            .map(|k| what(k) - one.clone())
            .chain(std::iter::once(v1.clone()))
            .collect(),
    };
    let wconv = convergents(&wdata);
    let (we, wf) = wconv.last();
    let independent_of_what0 = we.num().degree_in(0) == 0 && wf.num().degree_in(0) == 0;

    let residual = wf.clone() * what0.clone() - we.clone();
    let expected = (2..=n - 2).fold(
        (what0 - what(1) + one.clone()) * v1,
        |acc, k| acc * (what(k) - one.clone()),
    );
    let constant_monomial_identity =
        residual.num().constant_term_in(&w_idx) == *expected.num();

    let pass = e_constant_term
        && f_constant_term
        && determinant_identity
        && swapped_variant_fails
        && independent_of_what0
        && constant_monomial_identity;
    Ok(SymbolicCfReport {
        n,
        e_constant_term,
        f_constant_term,
        determinant_identity,
        swapped_variant_fails,
        independent_of_what0,
        constant_monomial_identity,
        pass,
    })
}

/// Everything `cfcheck` reports for one parameter point.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CfCheckReport {
    pub identity: CfReport,
    pub symbolic: SymbolicCfReport,
    pub pass: bool,
}

pub fn cf_check_report(p: &Params, specialize_c: bool) -> Result<CfCheckReport> {
    let identity = cf_identity_check(p, specialize_c)?;
    let symbolic = symbolic_cf_check(p.n())?;
    let pass = identity.pass && symbolic.pass;
    Ok(CfCheckReport { identity, symbolic, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nsystem::canonical_params;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q).unwrap()
    }

    #[test]
    fn inputs_n3() {
        let p = canonical_params(3).unwrap();
        let d = cf_inputs(&p);
        assert_eq!(d.e, vec![r(12, 7)]);
        assert_eq!(d.f, vec![r(6, 7), r(6, 1)]);
        let with_c = cf_inputs_with_c(&p);
        assert_eq!(with_c.e, vec![r(36, 7)]);
        assert_eq!(with_c.f, d.f);
    }

    #[test]
    fn convergents_n3_by_hand() {
        let d = cf_inputs(&canonical_params(3).unwrap());
        let conv = convergents(&d);
        assert_eq!(*conv.pair(-1), (r(1, 1), r(0, 1)));
        assert_eq!(*conv.pair(0), (r(6, 7), r(1, 1)));
        // E_1 = f_1 E_0 + e_1 E_{-1} = 6*6/7 + 12/7 = 48/7; F_1 = 6.
        assert_eq!(*conv.pair(1), (r(48, 7), r(6, 1)));
        let (e, f) = conv.last();
        assert_eq!(e / f, r(8, 7));
    }

    #[test]
    fn hand_worked_plain_continued_fraction() {
        // f = (1, 2, 2), e = (1, 1): 1 + 1/(2 + 1/2) = 7/5.
        let d = CfData {
            e: vec![r(1, 1), r(1, 1)],
            f: vec![r(1, 1), r(2, 1), r(2, 1)],
        };
        let conv = convergents(&d);
        let (e, f) = conv.last();
        assert_eq!((e.clone(), f.clone()), (r(7, 1), r(5, 1)));
        assert_eq!(nested_eval(&d).unwrap(), r(7, 5));
    }

    #[test]
    fn identity_holds_with_specialization() {
        for n in 3..=8 {
            let report = cf_identity_check(&canonical_params(n).unwrap(), true).unwrap();
            assert!(report.pass, "n = {n}: {report:?}");
            assert_eq!(report.ratio, report.expected);
            assert_eq!(report.nested, report.ratio);
            assert_eq!(report.links.len(), n - 2);
        }
    }

    #[test]
    fn identity_fails_without_specialization() {
        let report = cf_identity_check(&canonical_params(3).unwrap(), false).unwrap();
        assert!(!report.pass);
        assert_eq!(report.ratio, r(12, 7));
        assert_eq!(report.expected, r(8, 7));
        // The links do not involve C, so they still hold.
        assert!(report.links.iter().all(|l| l.pass));
        for n in 4..=8 {
            let report = cf_identity_check(&canonical_params(n).unwrap(), false).unwrap();
            assert!(!report.ratio_matches, "n = {n}");
        }
    }

    #[test]
    fn symbolic_structure_n3_to_6() {
        for n in 3..=6 {
            let report = symbolic_cf_check(n).unwrap();
            assert!(report.pass, "n = {n}: {report:?}");
        }
        assert!(symbolic_cf_check(2).is_err());
    }

    #[test]
    fn swapped_recurrence_differs_numerically_too() {
        let d = cf_inputs(&canonical_params(4).unwrap());
        let good = convergents(&d);
        let bad = convergents_ef_swapped(&d);
        let (ge, gf) = good.last();
        let (be, bf) = bad.last();
        assert_ne!(ge / gf, be / bf);
    }

    #[test]
    fn report_round_trips_through_json() {
        let report = cf_check_report(&canonical_params(3).unwrap(), true).unwrap();
        assert!(report.pass);
        let json = serde_json::to_string_pretty(&report).unwrap();
        let back: CfCheckReport = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), json);
    }
}
