//! Builds the canonical 4-component system and walks its fundamental
//! domain breakpoint by breakpoint.

use nsystems::nsystem::{build_geometry, canonical_params, NSystem};
use nsystems::{Rat, Result};

fn main() -> Result<()> {
    let params = canonical_params(3)?;
    println!("parameters: {}", serde_json::to_string(&params)?);

    let geometry = build_geometry(&params)?;
    println!("\n{} division points on [1, {}]:", geometry.points().len(), params.c());
    println!("{:<18} {:>8}  values", "label", "q");
    for point in geometry.points() {
        let values: Vec<String> = point.values.iter().map(|v| v.to_string()).collect();
        println!(
            "{:<18} {:>8}  ({})  [{}]",
            point.label.to_string(),
            point.q.to_string(),
            values.join(", "),
            format!("{:?}", point.kind).to_lowercase(),
        );
    }

    let system = NSystem::new(geometry);
    println!("\nevaluation between breakpoints:");
    for q in ["9/4", "27/8", "9"] {
        let q: Rat = q.parse()?;
        let values: Vec<String> = system.eval(&q)?.iter().map(|v| v.to_string()).collect();
        println!("  P({q}) = ({})", values.join(", "));
    }

    // The extension is self-similar: scaling q by C scales every component
    // by C.
    let q: Rat = "5/4".parse()?;
    let c = params.c();
    let scaled = system.eval(&(&q * c))?;
    let base = system.eval(&q)?;
    for (s, b) in scaled.iter().zip(&base) {
        assert_eq!(s, &(b * c));
    }
    println!("\nP({c}·{q}) = {c}·P({q})  ✓");
    Ok(())
}
