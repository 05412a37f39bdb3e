use std::collections::BTreeMap;

use polytile_core::geometry::{rat, ratio};
use polytile_core::render::{color, discrete_shapes, polygon_shapes, svg, RenderSpec, RenderTarget, Shape, Viewport};
use polytile_core::structure::ClassLabel;
use polytile_core::{RPoint, ZPoint};

use crate::analyze::{self, data};
use crate::error::CliError;
use crate::input::Subject;

/// Assigns palette indices to labels in order of first appearance.
#[derive(Default)]
struct Coloring(BTreeMap<ClassLabel, usize>);

impl Coloring {
    fn index(&mut self, l: Option<ClassLabel>) -> usize {
        match l {
            Some(l) => {
                let next = self.0.len();
                *self.0.entry(l).or_insert(next)
            }
            None => 0,
        }
    }
}

/// Draws the translates meeting a square window, colored by plate when an
/// earthquake direction is given and by vertex-sharing class otherwise.
pub fn tiling_svg(subject: &Subject, earthquake: Option<ZPoint>, cell_pixels: u32) -> Result<String, CliError> {
    let plates = earthquake.map(|v| analyze::plates(subject, v)).transpose()?;
    let classes = if plates.is_none() { analyze::classes(subject)? } else { None };
    let mut coloring = Coloring::default();
    let mut shapes = Vec::new();
    let (viewport, target) = match subject {
        Subject::Polygon(omega, desc) => {
            let st = analyze::scaled_tiling(omega, desc)?;
            let (lo, hi) = omega.integer_bbox();
            let w = 2 * (hi.x - lo.x).max(hi.y - lo.y) + 2;
            let s = st.scale;
            let window = st.translates.as_piece().points_in_box((-hi) * s, (ZPoint::new(w, w) - lo) * s);
            for t in window {
                let label = match (&plates, &classes) {
                    (Some((p, _)), _) => p.plate_of(t),
                    (None, Some(c)) => c.graph().label(t),
                    _ => None,
                };
                let offset = RPoint::new(ratio(t.x, s), ratio(t.y, s));
                shapes.push(polygon_shapes(omega, &offset, color(coloring.index(label))));
            }
            (Viewport::new(RPoint::zero(), RPoint::from_ints(w, w)), RenderTarget::Tiling)
        }
        Subject::Tile(tile, desc) => {
            let periodic = desc.to_int_periodic().map_err(data)?;
            let pts = tile.points();
            let lo = ZPoint::new(pts.iter().map(|p| p.x).min().unwrap(), pts.iter().map(|p| p.y).min().unwrap());
            let hi = ZPoint::new(pts.iter().map(|p| p.x).max().unwrap(), pts.iter().map(|p| p.y).max().unwrap());
            let w = 2 * (hi.x - lo.x).max(hi.y - lo.y) + 2;
            let unit = polytile_core::DiscreteTile::new(1, pts.iter().copied());
            for t in periodic.as_piece().points_in_box(-hi, ZPoint::new(w, w) - lo) {
                let label = plates.as_ref().and_then(|(p, _)| p.plate_of(t));
                let fill = color(coloring.index(label));
                shapes.extend(discrete_shapes(&unit, &t.into()).into_iter().map(|sh| Shape { fill, ..sh }));
            }
            (Viewport::new(RPoint::zero(), RPoint::from_ints(w, w)), RenderTarget::Tiling)
        }
    };
    let target = if plates.is_some() { RenderTarget::Plates } else { target };
    Ok(svg(&RenderSpec { target, viewport, cell_pixels }, &shapes))
}

/// Viewport around `lo..hi` with half a unit of margin.
pub fn padded(lo: &RPoint, hi: &RPoint) -> Viewport {
    Viewport::around([lo, hi], &ratio(1, 2))
}

pub fn unit_square() -> Viewport {
    Viewport::new(RPoint::zero(), RPoint::new(rat(1), rat(1)))
}
