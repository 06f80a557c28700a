//! The continued-fraction identity: convergents built from the exponent
//! closed forms recover V_{n-1}, but only after the e_k are specialized to
//! C = 1. Both the working and the broken variants are shown, numerically
//! and symbolically.

use nsystems::cfrac::{cf_identity_check, convergents, symbolic_cf_check};
use nsystems::nsystem::canonical_params;
use nsystems::Result;

fn main() -> Result<()> {
    for n in 3..=6 {
        let params = canonical_params(n)?;
        let report = cf_identity_check(&params, true)?;
        println!(
            "n = {n}: e = [{}], f = [{}]",
            report.inputs.e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
            report.inputs.f.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
        );
        let conv = convergents(&report.inputs);
        let (e_last, f_last) = conv.last();
        println!(
            "  E = {e_last}, F = {f_last}, E/F = {}  (expected V_{} = {})  nested = {}  => {}",
            report.ratio,
            n - 1,
            report.expected,
            report.nested,
            if report.pass { "pass" } else { "FAIL" }
        );
        for link in &report.links {
            println!(
                "  link k = {}: V_k = {} vs What_(n-k) - 1 + U_k/V_(k-1) = {}",
                link.k, link.lhs, link.rhs
            );
        }
    }

    println!("\nwithout the C = 1 specialization:");
    let broken = cf_identity_check(&canonical_params(3)?, false)?;
    println!(
        "  n = 3: ratio = {} but V_2 = {} — the identity needs the specialization",
        broken.ratio, broken.expected
    );

    println!("\nsymbolic structure of the convergents:");
    for n in 3..=5 {
        let s = symbolic_cf_check(n)?;
        println!(
            "  n = {n}: e-constant-term {}, f-constant-term {}, determinant identity {}, \
             swapped recurrence breaks {}",
            s.e_constant_term, s.f_constant_term, s.determinant_identity, s.swapped_variant_fails
        );
    }
    Ok(())
}
