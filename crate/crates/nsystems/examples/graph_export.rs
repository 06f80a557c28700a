//! Exports the combined graph of a system as plot-ready data: per-component
//! polylines plus the labeled division points.

use nsystems::nsystem::{build_geometry, canonical_params, export_graph};
use nsystems::Result;

fn main() -> Result<()> {
    let params = canonical_params(4)?;
    let graph = export_graph(&build_geometry(&params)?);

    println!("n = {}: {} segments over {} division points", graph.n, graph.segments.len(),
        graph.division_points.len());

    for component in 1..=graph.n + 1 {
        let polyline = graph.component_polyline(component);
        let rising = graph
            .segments
            .iter()
            .filter(|s| s.component == component && !s.slope.is_zero())
            .count();
        println!(
            "  component {component}: {} vertices, {} rising segments",
            polyline.len(),
            rising
        );
    }

    println!("\nswitch points:");
    for point in graph.division_points.iter().filter(|p| format!("{:?}", p.kind) == "Switch") {
        println!("  {} at q = {}", point.label, point.q);
    }

    let json = serde_json::to_string_pretty(&graph)?;
    println!("\nfull export is {} bytes of JSON; first lines:", json.len());
    for line in json.lines().take(12) {
        println!("  {line}");
    }
    Ok(())
}
