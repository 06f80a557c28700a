//! Computes the 2n exponents by both routes — scanning the geometry and
//! evaluating the closed-form table — and shows exactly where they differ.

use nsystems::exponents::{
    check_chains, closed_forms_paper, compare, criterion_report, mnuv, trajectory_exponents,
};
use nsystems::nsystem::{build_geometry, canonical_params};
use nsystems::Result;

fn main() -> Result<()> {
    for n in 3..=5 {
        let params = canonical_params(n)?;
        let geometry = build_geometry(&params)?;
        let trajectory = trajectory_exponents(&geometry);
        let table = closed_forms_paper(&params);
        let diff = compare(&trajectory, &table)?;

        println!("n = {n}");
        println!("  {:<8} {:>12} {:>12}", "", "trajectory", "closed form");
        for entry in &diff.entries {
            let marker = if entry.equal { " " } else { "◀ differs" };
            println!(
                "  {:<8} {:>12} {:>12} {}",
                entry.name,
                entry.trajectory.to_string(),
                entry.paper.to_string(),
                marker
            );
        }

        let derived = mnuv(&params);
        let what0 = derived.m_k(n) / &(derived.n_k(n - 1) + derived.m_k(n));
        println!("  M_n/(N_(n-1)+M_n) = {what0} — matches the trajectory value");

        let attainment = trajectory.attainment.as_ref().expect("trajectory records attainment");
        println!("  maxima attained at: {}",
            attainment.iter().map(|a| a.uniform.label.to_string()).collect::<Vec<_>>().join(", "));

        for entry in &criterion_report(&geometry).entries {
            println!(
                "  k = {}: S_k(delta(k,1))/delta(k,1) = {} ({}), max at {}",
                entry.k, entry.lhs, entry.observed_side, entry.max_attained_at
            );
        }

        let chains = check_chains(&trajectory);
        println!("  inequality chains: {}\n",
            if chains.is_ok() { "all hold" } else { "VIOLATED" });
    }
    Ok(())
}
