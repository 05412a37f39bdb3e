use serde::{Deserialize, Serialize};

use super::polygon::PolygonalSet;
use super::rational::{format_rational, parse_rational, RPoint};
use super::GeometryError;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolygon {
    outer: Vec<[String; 2]>,
    #[serde(default)]
    holes: Vec<Vec<[String; 2]>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSet {
    polygons: Vec<RawPolygon>,
}

pub fn parse_point(raw: &[String; 2]) -> Result<RPoint, GeometryError> {
    Ok(RPoint::new(parse_rational(&raw[0])?, parse_rational(&raw[1])?))
}

pub fn point_strings(p: &RPoint) -> [String; 2] {
    [format_rational(&p.x), format_rational(&p.y)]
}

fn parse_ring(raw: &[[String; 2]]) -> Result<Vec<RPoint>, GeometryError> {
    raw.iter().map(parse_point).collect()
}

/// Parses the polygonal-set JSON document. Coordinates are strings holding
/// decimal integers or `p/q` fractions and are read exactly.
pub fn parse_polygonal_set(text: &[u8]) -> Result<PolygonalSet, GeometryError> {
    let raw: RawSet = serde_json::from_slice(text).map_err(|e| GeometryError::Syntax(e.to_string()))?;
    let mut loops = Vec::with_capacity(raw.polygons.len());
    for p in &raw.polygons {
        let outer = parse_ring(&p.outer)?;
        let holes = p.holes.iter().map(|h| parse_ring(h)).collect::<Result<Vec<_>, _>>()?;
        loops.push((outer, holes));
    }
    PolygonalSet::new(loops)
}

/// Serializes in canonical form: lowest-terms rationals, canonical orientation
/// and loop order.
pub fn serialize_polygonal_set(set: &PolygonalSet) -> String {
    let raw = RawSet {
        polygons: set
            .polygons()
            .iter()
            .map(|p| RawPolygon {
                outer: p.outer.iter().map(point_strings).collect(),
                holes: p.holes.iter().map(|h| h.iter().map(point_strings).collect()).collect(),
            })
            .collect(),
    };
    serde_json::to_string(&raw).expect("serializable")
}
