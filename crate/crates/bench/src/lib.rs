//! Inputs shared by the benchmarks in `benches/`.

use polytile_core::geometry::RPoint;
use polytile_core::{IntegerPolygonalSet, PolygonalSet};

pub fn polygon(vertices: &[(i64, i64)]) -> IntegerPolygonalSet {
    let pts = vertices.iter().map(|&(x, y)| RPoint::from_ints(x, y)).collect();
    IntegerPolygonalSet::try_from_set(PolygonalSet::simple(pts).expect("simple polygon")).expect("integer polygon")
}

pub fn corpus() -> Vec<(&'static str, IntegerPolygonalSet)> {
    vec![
        ("square", polygon(&[(0, 0), (1, 0), (1, 1), (0, 1)])),
        ("tromino", polygon(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])),
        ("chevron", polygon(&[(0, 0), (1, 1), (2, 0), (2, 1), (1, 2), (0, 1)])),
        ("triangle", polygon(&[(0, 0), (1, 0), (0, 1)])),
    ]
}
