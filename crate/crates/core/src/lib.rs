//! Deciding translational tilings of the plane by rational polygonal sets.
//!
//! A polygonal set is normalized to integer vertices, encoded as a finite
//! tile of Z² ([`discretize`]), and the discrete tile is decided by an
//! interleaved search over periodic torus tilings and finite refutation
//! patches ([`engine`]). The [`structure`] module analyzes given tilings.

pub mod discretize;
pub mod engine;
pub mod exact_cover;
pub mod geometry;
pub mod lattice;
pub mod render;
pub mod structure;
pub mod tiling;

pub use discretize::{discretize, DiscreteTile, UnitCellPartition};
pub use geometry::{IntegerPolygonalSet, PolygonalSet, RPoint, Rational};
pub use lattice::{Lattice, Subgroup, ZPoint};
pub use tiling::{Component, TilingDesc};
