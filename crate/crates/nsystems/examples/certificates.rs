//! Exact algebraic-independence certificates: the Jacobian of the 2n
//! exponents in the 2n free coordinates, its determinant, and the ranks of
//! the related function families.

use nsystems::certify::{
    independence_certificate, jacobian, jacobian_symbolic, specialization_rank_check,
    uniform_block_certificate, FunctionSet,
};
use nsystems::nsystem::canonical_params;
use nsystems::Result;

fn main() -> Result<()> {
    let params = canonical_params(3)?;

    for set in [FunctionSet::Trajectory, FunctionSet::PaperTable] {
        let cert = independence_certificate(3, &params, set)?;
        println!("{set:?} certificate at the canonical n = 3 point");
        println!("  columns: {}", cert.columns.join(", "));
        for (name, row) in cert.rows.iter().zip(&cert.jacobian) {
            let entries: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            println!("  {:<8} [{}]", name, entries.join(", "));
        }
        println!(
            "  det = {}   rank = {}   verdict: {}\n",
            cert.determinant.as_ref().expect("square matrix"),
            cert.rank,
            cert.verdict
        );
    }

    // The dual-number route and the symbolic-differentiation route must
    // produce the same matrix entry for entry.
    for set in [FunctionSet::Trajectory, FunctionSet::PaperTable] {
        assert_eq!(jacobian(set, &params)?, jacobian_symbolic(set, &params)?);
    }
    println!("dual-number and symbolic Jacobians agree entry for entry");

    let block = uniform_block_certificate(3, &params)?;
    println!(
        "\nuniform block: {} rows over {} coordinates, rank {} ({})",
        block.jacobian.len(),
        block.columns.len(),
        block.rank,
        block.verdict
    );

    let spec = specialization_rank_check(3, &params)?;
    println!(
        "surviving functions {:?}: rank {} of expected {}",
        spec.functions, spec.rank, spec.expected
    );

    for n in 4..=6 {
        let p = canonical_params(n)?;
        let cert = independence_certificate(n, &p, FunctionSet::Trajectory)?;
        println!(
            "n = {n}: det = {}  rank = {}",
            cert.determinant.as_ref().expect("square matrix"),
            cert.rank
        );
    }
    Ok(())
}
