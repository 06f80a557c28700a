//! Plot-ready export of the combined graph.
//!
//! [`GraphData`] flattens a [`SystemGeometry`] into per-component line
//! segments plus the division-point table, in a stable JSON shape. The
//! export is lossless: the full breakpoint table can be reconstructed from
//! the segments, which the tests verify against the source geometry.

use serde::{Deserialize, Serialize};

use super::geometry::{PointKind, PointLabel, SystemGeometry};
use crate::exactnum::Rat;

/// One straight piece of one component's graph.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GraphSegment {
    /// Component rank, 1-based.
    pub component: usize,
    pub q0: Rat,
    pub q1: Rat,
    pub v0: Rat,
    pub v1: Rat,
    pub slope: Rat,
}

/// A division point, as exported.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GraphPoint {
    pub q: Rat,
    pub kind: PointKind,
    pub label: PointLabel,
}

/// The whole picture: n, all segments (component-major, left to right), and
/// the division points in increasing q.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GraphData {
    pub n: usize,
    pub segments: Vec<GraphSegment>,
    pub division_points: Vec<GraphPoint>,
}

/// Flattens the geometry into segments and points.
pub fn export_graph(g: &SystemGeometry) -> GraphData {
    let n = g.n();
    let pts = g.points();
    let mut segments = Vec::with_capacity((n + 1) * (pts.len() - 1));
    for component in 1..=n + 1 {
        for (i, shape) in g.shapes().iter().enumerate() {
            let (a, b) = (&pts[i], &pts[i + 1]);
            let slope = if shape.rising.contains(&component) {
                shape.slope.clone()
            } else {
                Rat::zero()
            };
            segments.push(GraphSegment {
                component,
                q0: a.q.clone(),
                q1: b.q.clone(),
                v0: a.values[component - 1].clone(),
                v1: b.values[component - 1].clone(),
                slope,
            });
        }
    }
    let division_points = pts
        .iter()
        .map(|p| GraphPoint { q: p.q.clone(), kind: p.kind, label: p.label })
        .collect();
    GraphData { n, segments, division_points }
}

impl GraphData {
    /// The segments of one component, left to right.
    pub fn component_polyline(&self, component: usize) -> Vec<&GraphSegment> {
        self.segments.iter().filter(|s| s.component == component).collect()
    }

    /// Reconstructs the breakpoint table (q, component values) from the
    /// segment data alone.
    pub fn breakpoint_table(&self) -> Vec<(Rat, Vec<Rat>)> {
        let npts = self.division_points.len();
        let mut table = Vec::with_capacity(npts);
        for i in 0..npts {
            let q = self.division_points[i].q.clone();
            let values = (1..=self.n + 1)
                .map(|component| {
                    let line = self.component_polyline(component);
                    if i < line.len() {
                        line[i].v0.clone()
                    } else {
                        line[i - 1].v1.clone()
                    }
                })
                .collect();
            table.push((q, values));
        }
        table
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nsystem::{build_geometry, canonical_params};

    fn graph(n: usize) -> (GraphData, SystemGeometry) {
        let g = build_geometry(&canonical_params(n).unwrap()).unwrap();
        (export_graph(&g), g)
    }

    #[test]
    fn segment_inventory_n3() {
        let (data, _) = graph(3);
        assert_eq!(data.n, 3);
        assert_eq!(data.division_points.len(), 10);
        assert_eq!(data.segments.len(), 4 * 9);
        let half = Rat::new(1, 2).unwrap();
        for s in &data.segments {
            assert!(
                s.slope == Rat::zero() || s.slope == half || s.slope == Rat::one(),
                "slope {}",
                s.slope
            );
            // Slope consistency with the endpoints.
            assert_eq!(&s.v1 - &s.v0, &s.slope * &(&s.q1 - &s.q0));
        }
    }

    #[test]
    fn polylines_chain_continuously() {
        let (data, _) = graph(5);
        assert_eq!(data.division_points.len(), 16);
        for component in 1..=6 {
            let line = data.component_polyline(component);
            assert_eq!(line.len(), 15);
            for pair in line.windows(2) {
                assert_eq!(pair[0].q1, pair[1].q0);
                assert_eq!(pair[0].v1, pair[1].v0);
            }
        }
    }

    #[test]
    fn breakpoint_table_round_trips_the_geometry() {
        for n in [3, 4, 6] {
            let (data, g) = graph(n);
            let table = data.breakpoint_table();
            assert_eq!(table.len(), g.points().len());
            for (reconstructed, point) in table.iter().zip(g.points()) {
                assert_eq!(reconstructed.0, point.q);
                assert_eq!(reconstructed.1, point.values);
            }
            for (gp, point) in data.division_points.iter().zip(g.points()) {
                assert_eq!(gp.label, point.label);
                assert_eq!(gp.kind, point.kind);
            }
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        let (data, _) = graph(3);
        let json = serde_json::to_string_pretty(&data).unwrap();
        assert!(json.contains("\"delta(3,2)=mu(4)\""));
        assert!(json.contains("\"switch\""));
        let back: GraphData = serde_json::from_str(&json).unwrap();
        assert_eq!(back, data);
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), json);
    }
}
