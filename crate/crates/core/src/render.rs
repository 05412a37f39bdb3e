//! Deterministic SVG 1.1 output for polygonal sets, unit-cell partitions,
//! discrete tiles and tilings. Face `i` always gets palette color `i`, so
//! `P_0` is grey, `P_1` green, `P_2` orange and `P_3` blue.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::discretize::{DiscreteTile, UnitCellPartition};
use crate::geometry::{rat, ratio, PolygonalSet, RPoint, Rational};

pub const PALETTE: [&str; 12] = [
    "#9e9e9e", "#4caf50", "#ff9800", "#2196f3", "#e91e63", "#9c27b0", "#00bcd4", "#cddc39", "#795548", "#ffeb3b",
    "#3f51b5", "#f44336",
];

pub fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderTarget {
    Polygon,
    Partition,
    DiscreteTile,
    Tiling,
    Plates,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Viewport {
    pub min: RPoint,
    pub max: RPoint,
}

impl Viewport {
    pub fn new(min: RPoint, max: RPoint) -> Self {
        assert!(min.x < max.x && min.y < max.y, "empty viewport");
        Viewport { min, max }
    }

    /// Bounding box of `points` grown by `margin` on every side.
    pub fn around<'a>(points: impl IntoIterator<Item = &'a RPoint>, margin: &Rational) -> Self {
        let mut it = points.into_iter();
        let first = it.next().expect("at least one point").clone();
        let (mut lo, mut hi) = (first.clone(), first);
        for p in it {
            lo = RPoint::new(lo.x.clone().min(p.x.clone()), lo.y.clone().min(p.y.clone()));
            hi = RPoint::new(hi.x.clone().max(p.x.clone()), hi.y.clone().max(p.y.clone()));
        }
        Viewport::new(RPoint::new(&lo.x - margin, &lo.y - margin), RPoint::new(&hi.x + margin, &hi.y + margin))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    pub target: RenderTarget,
    pub viewport: Viewport,
    /// Pixels per unit length.
    pub cell_pixels: u32,
}

/// A filled polygon in plane coordinates.
#[derive(Clone, Debug)]
pub struct Shape {
    pub loops: Vec<Vec<RPoint>>,
    pub fill: &'static str,
    pub stroke: Option<&'static str>,
}

fn num(r: &Rational) -> String {
    let v = r.to_f64().unwrap_or(0.0);
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Writes `shapes` clipped to nothing: the viewport only sets the canvas.
pub fn svg(spec: &RenderSpec, shapes: &[Shape]) -> String {
    let vp = &spec.viewport;
    let px = rat(spec.cell_pixels as i64);
    let width = (&vp.max.x - &vp.min.x) * &px;
    let height = (&vp.max.y - &vp.min.y) * &px;
    let map = |p: &RPoint| format!("{},{}", num(&((&p.x - &vp.min.x) * &px)), num(&((&vp.max.y - &p.y) * &px)));
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(&width),
        h = num(&height)
    )
    .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#, num(&width), num(&height)).unwrap();
    for s in shapes {
        let mut d = String::new();
        for l in &s.loops {
            for (i, p) in l.iter().enumerate() {
                d.push_str(if i == 0 { "M" } else { " L" });
                d.push_str(&map(p));
            }
            d.push_str(" Z ");
        }
        let stroke = match s.stroke {
            Some(c) => format!(r#" stroke="{c}" stroke-width="1""#),
            None => String::new(),
        };
        writeln!(out, r#"<path d="{}" fill="{}" fill-rule="evenodd"{stroke}/>"#, d.trim_end(), s.fill).unwrap();
    }
    out.push_str("</svg>\n");
    out
}

pub fn polygon_shapes(set: &PolygonalSet, offset: &RPoint, fill: &'static str) -> Shape {
    Shape { loops: set.loops().map(|l| l.iter().map(|p| p + offset).collect()).collect(), fill, stroke: Some("black") }
}

pub fn render_polygon(set: &PolygonalSet, spec: &RenderSpec) -> String {
    svg(spec, &[polygon_shapes(set, &RPoint::zero(), color(0))])
}

pub fn partition_shapes(part: &UnitCellPartition, offset: &RPoint) -> Vec<Shape> {
    part.faces()
        .iter()
        .enumerate()
        .map(|(i, f)| Shape {
            loops: vec![f.vertices.iter().map(|p| p + offset).collect()],
            fill: color(i),
            stroke: Some("black"),
        })
        .collect()
}

pub fn render_partition(part: &UnitCellPartition, spec: &RenderSpec) -> String {
    svg(spec, &partition_shapes(part, &RPoint::zero()))
}

/// Each point `(a, b)` becomes the square `(a, b)/N + [0, 1/N]²`, colored by
/// the face whose marker set produced it when the provenance is known.
pub fn discrete_shapes(tile: &DiscreteTile, offset: &RPoint) -> Vec<Shape> {
    let n = tile.scale();
    let mut face_of = std::collections::HashMap::new();
    if let Some(p) = tile.provenance() {
        for &(v, i) in &p.occupied {
            for &s in &p.markers[i].points {
                face_of.insert(v * n + s, i);
            }
        }
    }
    let step = ratio(1, n);
    tile.points()
        .iter()
        .map(|&q| {
            let o = RPoint::new(ratio(q.x, n), ratio(q.y, n));
            let o = &o + offset;
            let corners = vec![
                o.clone(),
                RPoint::new(&o.x + &step, o.y.clone()),
                RPoint::new(&o.x + &step, &o.y + &step),
                RPoint::new(o.x.clone(), &o.y + &step),
            ];
            Shape { loops: vec![corners], fill: color(face_of.get(&q).copied().unwrap_or(0)), stroke: None }
        })
        .collect()
}

pub fn render_discrete(tile: &DiscreteTile, spec: &RenderSpec) -> String {
    svg(spec, &discrete_shapes(tile, &RPoint::zero()))
}

/// Copies `set + t`, the `k`-th filled with palette color `colors[k]`.
pub fn render_tiling(set: &PolygonalSet, translates: &[RPoint], colors: &[usize], spec: &RenderSpec) -> String {
    let shapes: Vec<Shape> = translates.iter().zip(colors).map(|(t, &c)| polygon_shapes(set, t, color(c))).collect();
    svg(spec, &shapes)
}

/// Three panels side by side: the set over the integer grid, the unit-cell
/// partition scaled up, and the discrete tile.
pub fn render_discretization(tile: &DiscreteTile, cell_pixels: u32) -> Option<String> {
    let prov = tile.provenance()?;
    let omega = prov.omega.set();
    let (lo, hi) = omega.bounding_box();
    let w = &hi.x - &lo.x;
    let gap = rat(1);
    let mut shapes = Vec::new();
    let origin = RPoint::new(-lo.x.clone(), -lo.y.clone());
    shapes.push(polygon_shapes(omega, &origin, color(0)));
    // the unit cell is drawn at the height of the set
    let cell_x = &w + &gap;
    let side = (&hi.y - &lo.y).max(rat(1));
    for s in partition_shapes(&prov.partition, &RPoint::zero()) {
        shapes.push(Shape {
            loops: s
                .loops
                .iter()
                .map(|l| l.iter().map(|p| RPoint::new(&p.x * &side + &cell_x, &p.y * &side)).collect())
                .collect(),
            ..s
        });
    }
    let tile_x = &cell_x + &side + &gap;
    shapes.extend(discrete_shapes(tile, &RPoint::new(&tile_x - &lo.x, -lo.y.clone())));
    let max_x = &tile_x + &w + rat(1);
    let max_y = side.clone().max(&hi.y - &lo.y + rat(1));
    let spec = RenderSpec {
        target: RenderTarget::DiscreteTile,
        viewport: Viewport::new(RPoint::new(ratio(-1, 2), ratio(-1, 2)), RPoint::new(max_x, max_y + ratio(1, 2))),
        cell_pixels,
    };
    Some(svg(&spec, &shapes))
}
