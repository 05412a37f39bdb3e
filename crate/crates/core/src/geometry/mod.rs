//! Exact rational planar geometry: polygonal sets with holes, validation and
//! canonicalization, area, point location and normalization to integer
//! vertices. No floating point is used in any predicate.

mod io;
mod polygon;
mod rational;

pub use io::{parse_point, parse_polygonal_set, point_strings, serialize_polygonal_set};
pub use polygon::{AffineNormalization, IntegerPolygonalSet, Location, Polygon, PolygonalSet, Segment};
pub use rational::{format_rational, lcm_denominators, orient, parse_rational, rat, ratio, to_i64, RPoint, Rational};

pub(crate) use polygon::{line_intersection, signed_area2};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invalid polygonal set: {0}")]
    Validation(String),
    #[error("not an exact rational literal: {0:?}")]
    NonRational(String),
}
