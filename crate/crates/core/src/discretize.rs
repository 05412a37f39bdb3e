//! The unit-cell arrangement of an integer polygonal set, the marker sets,
//! and the discrete tile that encodes the set's integer tilings as tilings
//! of Z².
//!
//! Every integer translate of an edge of Ω either misses the open unit
//! square or crosses it from boundary to boundary, so the arrangement inside
//! `[0,1]²` is an arrangement of full chords and all faces are convex. The
//! faces are obtained by cutting the square successively with each chord.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::geometry::{
    line_intersection, orient, rat, ratio, IntegerPolygonalSet, Location, RPoint, Rational, Segment,
};
use crate::lattice::{gcd, ZPoint};
use crate::tiling::IntPeriodic;

/// One open face `P_i` of the unit-cell arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Convex boundary, counterclockwise.
    pub vertices: Vec<RPoint>,
    pub representative: RPoint,
}

impl Face {
    pub fn boundary(&self) -> Vec<Segment> {
        let n = self.vertices.len();
        (0..n).map(|i| Segment::new(self.vertices[i].clone(), self.vertices[(i + 1) % n].clone())).collect()
    }

    pub fn area(&self) -> Rational {
        crate::geometry::signed_area2(&self.vertices) * ratio(1, 2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCellPartition {
    faces: Vec<Face>,
    k: i64,
    n: i64,
}

impl UnitCellPartition {
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Number of faces, `M`.
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// The scale `N = 3k + 4`.
    pub fn scale(&self) -> i64 {
        self.n
    }
}

/// A line `alpha*x + beta*y = gamma` with coprime integer coefficients in canonical sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Chord {
    alpha: i64,
    beta: i64,
    gamma: i64,
}

impl Chord {
    fn through(p: ZPoint, q: ZPoint) -> Chord {
        let alpha = q.y - p.y;
        let beta = p.x - q.x;
        let gamma = alpha * p.x + beta * p.y;
        let g = gcd(gcd(alpha, beta), gamma);
        let (mut alpha, mut beta, mut gamma) = (alpha / g, beta / g, gamma / g);
        if alpha < 0 || (alpha == 0 && beta < 0) {
            (alpha, beta, gamma) = (-alpha, -beta, -gamma);
        }
        Chord { alpha, beta, gamma }
    }

    fn side(&self, p: &RPoint) -> Ordering {
        let v = &p.x * rat(self.alpha) + &p.y * rat(self.beta) - rat(self.gamma);
        v.cmp(&Rational::zero())
    }
}

fn in_closed_square(p: &RPoint) -> bool {
    let zero = Rational::zero();
    let one = rat(1);
    p.x >= zero && p.x <= one && p.y >= zero && p.y <= one
}

fn in_open_square(p: &RPoint) -> bool {
    let zero = Rational::zero();
    let one = rat(1);
    p.x > zero && p.x < one && p.y > zero && p.y < one
}

/// Whether the segment from `p` to `q` passes through the open unit square.
fn crosses_open_square(p: ZPoint, q: ZPoint) -> bool {
    // clip the parameter range t in [0,1] against the four half-planes
    let (px, py) = (rat(p.x), rat(p.y));
    let (dx, dy) = (rat(q.x - p.x), rat(q.y - p.y));
    let mut lo = Rational::zero();
    let mut hi = rat(1);
    for (start, delta) in [(&px, &dx), (&py, &dy)] {
        for (bound, lower) in [(Rational::zero(), true), (rat(1), false)] {
            // lower: start + t*delta >= bound ; upper: start + t*delta <= bound
            if delta.is_zero() {
                let ok = if lower { *start >= bound } else { *start <= bound };
                if !ok {
                    return false;
                }
                continue;
            }
            let t = (&bound - start) / delta;
            let increasing = delta.is_positive();
            if increasing == lower {
                lo = lo.max(t);
            } else {
                hi = hi.min(t);
            }
        }
    }
    if lo >= hi {
        return false;
    }
    let mid = (&lo + &hi) * ratio(1, 2);
    let m = RPoint::new(&px + &dx * &mid, &py + &dy * &mid);
    debug_assert!(in_closed_square(&m));
    in_open_square(&m)
}

fn chords(omega: &IntegerPolygonalSet) -> BTreeSet<Chord> {
    let mut out = BTreeSet::new();
    for (p, q) in omega.integer_edges() {
        let (x0, x1) = (p.x.min(q.x), p.x.max(q.x));
        let (y0, y1) = (p.y.min(q.y), p.y.max(q.y));
        for zx in (-x1 - 1)..=(1 - x0) {
            for zy in (-y1 - 1)..=(1 - y0) {
                let z = ZPoint::new(zx, zy);
                if crosses_open_square(p + z, q + z) {
                    out.insert(Chord::through(p + z, q + z));
                }
            }
        }
    }
    out
}

fn drop_collinear(poly: Vec<RPoint>) -> Vec<RPoint> {
    let mut poly = poly;
    poly.dedup();
    while poly.len() > 1 && poly.first() == poly.last() {
        poly.pop();
    }
    let mut changed = true;
    while changed && poly.len() > 3 {
        changed = false;
        let n = poly.len();
        for i in 0..n {
            if orient(&poly[(i + n - 1) % n], &poly[i], &poly[(i + 1) % n]) == Ordering::Equal {
                poly.remove(i);
                changed = true;
                break;
            }
        }
    }
    poly
}

/// Splits a convex polygon by a chord; `None` if the chord misses its interior.
fn split(poly: &[RPoint], chord: &Chord) -> Option<(Vec<RPoint>, Vec<RPoint>)> {
    let sides: Vec<Ordering> = poly.iter().map(|p| chord.side(p)).collect();
    if !sides.contains(&Ordering::Greater) || !sides.contains(&Ordering::Less) {
        return None;
    }
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let n = poly.len();
    for i in 0..n {
        let (a, b) = (&poly[i], &poly[(i + 1) % n]);
        let (sa, sb) = (sides[i], sides[(i + 1) % n]);
        match sa {
            Ordering::Greater => pos.push(a.clone()),
            Ordering::Less => neg.push(a.clone()),
            Ordering::Equal => {
                pos.push(a.clone());
                neg.push(a.clone());
            }
        }
        if (sa == Ordering::Greater && sb == Ordering::Less) || (sa == Ordering::Less && sb == Ordering::Greater) {
            let (c1, c2) = chord_points(chord);
            let x = line_intersection(a, b, &c1, &c2);
            pos.push(x.clone());
            neg.push(x);
        }
    }
    Some((drop_collinear(pos), drop_collinear(neg)))
}

fn chord_points(c: &Chord) -> (RPoint, RPoint) {
    // two distinct points on alpha*x + beta*y = gamma
    if c.beta != 0 {
        let y = |x: i64| Rational::new((c.gamma - c.alpha * x).into(), c.beta.into());
        (RPoint::new(rat(0), y(0)), RPoint::new(rat(1), y(1)))
    } else {
        let x = Rational::new(c.gamma.into(), c.alpha.into());
        (RPoint::new(x.clone(), rat(0)), RPoint::new(x, rat(1)))
    }
}

/// Smallest `k` with `m <= k²`, and `N = 3k + 4`.
pub fn compute_parameters(m: usize) -> (i64, i64) {
    assert!(m >= 1, "at least one face");
    let mut k = 1i64;
    while ((k * k) as usize) < m {
        k += 1;
    }
    (k, 3 * k + 4)
}

/// Arrangement of all integer translates of the edges of `omega` inside the unit square.
pub fn unit_cell_partition(omega: &IntegerPolygonalSet) -> UnitCellPartition {
    let square =
        vec![RPoint::from_ints(0, 0), RPoint::from_ints(1, 0), RPoint::from_ints(1, 1), RPoint::from_ints(0, 1)];
    let mut faces = vec![square];
    for chord in chords(omega) {
        let mut next = Vec::with_capacity(faces.len() + 4);
        for f in faces {
            match split(&f, &chord) {
                Some((a, b)) => {
                    next.push(a);
                    next.push(b);
                }
                None => next.push(f),
            }
        }
        faces = next;
    }
    let mut faces: Vec<Face> = faces
        .into_iter()
        .map(|mut vertices| {
            if crate::geometry::signed_area2(&vertices).is_negative() {
                vertices.reverse();
            }
            let third = ratio(1, 3);
            let representative = RPoint::new(
                (&vertices[0].x + &vertices[1].x + &vertices[2].x) * &third,
                (&vertices[0].y + &vertices[1].y + &vertices[2].y) * &third,
            );
            Face { vertices, representative }
        })
        .collect();
    faces.sort_by(|a, b| a.representative.cmp(&b.representative));
    let (k, n) = compute_parameters(faces.len());
    UnitCellPartition { faces, k, n }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkerSet {
    pub index: usize,
    pub points: Vec<ZPoint>,
}

/// Center `(3a_i, 3b_i)` of the ring for face `i >= 1`, where `(a_i - 1) + k(b_i - 1) = i`.
pub fn ring_center(i: usize, k: i64) -> ZPoint {
    let i = i as i64;
    ZPoint::new(3 * (i % k + 1), 3 * (i / k + 1))
}

/// Marker sets `S_0 .. S_{M-1}` inside the `N x N` block.
pub fn build_marker_sets(m: usize, k: i64, n: i64) -> Vec<MarkerSet> {
    assert!(m >= 1 && (m as i64) <= k * k && n == 3 * k + 4, "inconsistent parameters");
    let mut sets = Vec::with_capacity(m);
    let mut ringed = BTreeSet::new();
    let mut rings = Vec::with_capacity(m.saturating_sub(1));
    for i in 1..m {
        let c = ring_center(i, k);
        let mut pts = Vec::with_capacity(8);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if dx != 0 || dy != 0 {
                    pts.push(c + ZPoint::new(dx, dy));
                }
            }
        }
        pts.sort();
        ringed.extend(pts.iter().copied());
        rings.push(MarkerSet { index: i, points: pts });
    }
    let mut s0: BTreeSet<ZPoint> =
        (0..n).flat_map(|x| (0..n).map(move |y| ZPoint::new(x, y))).filter(|p| !ringed.contains(p)).collect();
    s0.insert(ZPoint::new(n, 1));
    s0.insert(ZPoint::new(1, n));
    s0.remove(&ZPoint::new(0, 1));
    s0.remove(&ZPoint::new(1, 0));
    sets.push(MarkerSet { index: 0, points: s0.into_iter().collect() });
    sets.extend(rings);
    sets
}

/// Whether the face `v + P_i` lies inside `omega`. Faces never straddle the
/// boundary, so testing the representative decides the inclusion.
pub fn cell_occupancy(omega: &IntegerPolygonalSet, part: &UnitCellPartition, v: ZPoint, i: usize) -> bool {
    let rep = &part.faces[i].representative;
    let p = RPoint::new(rat(v.x) + &rep.x, rat(v.y) + &rep.y);
    omega.contains_point(&p) == Location::Inside
}

/// All pairs `(cell, face)` with `cell + P_face` inside `omega`, in cell order.
pub fn occupied_cells(omega: &IntegerPolygonalSet, part: &UnitCellPartition) -> Vec<(ZPoint, usize)> {
    let (lo, hi) = omega.integer_bbox();
    let mut out = Vec::new();
    for x in lo.x..hi.x {
        for y in lo.y..hi.y {
            let v = ZPoint::new(x, y);
            for i in 0..part.face_count() {
                if cell_occupancy(omega, part, v, i) {
                    out.push((v, i));
                }
            }
        }
    }
    out
}

#[derive(Debug, PartialEq, Eq)]
pub struct Provenance {
    pub omega: IntegerPolygonalSet,
    pub partition: UnitCellPartition,
    pub markers: Vec<MarkerSet>,
    pub occupied: Vec<(ZPoint, usize)>,
}

/// The scaled discrete tile `N F(Ω) ⊂ Z²`.
#[derive(Clone)]
pub struct DiscreteTile {
    scale: i64,
    points: Vec<ZPoint>,
    provenance: Option<Arc<Provenance>>,
}

impl PartialEq for DiscreteTile {
    fn eq(&self, o: &Self) -> bool {
        self.scale == o.scale && self.points == o.points
    }
}

impl Eq for DiscreteTile {}

impl fmt::Debug for DiscreteTile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiscreteTile").field("scale", &self.scale).field("len", &self.points.len()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TileFormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("tile has no points")]
    Empty,
}

impl DiscreteTile {
    pub fn new(scale: i64, points: impl IntoIterator<Item = ZPoint>) -> Self {
        assert!(scale >= 1);
        let mut points: Vec<ZPoint> = points.into_iter().collect();
        points.sort();
        points.dedup();
        DiscreteTile { scale, points, provenance: None }
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn points(&self) -> &[ZPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_deref()
    }

    /// `scale N` followed by one sorted `x y` line per point.
    pub fn to_text(&self) -> String {
        let mut s = format!("scale {}\n", self.scale);
        for p in &self.points {
            s.push_str(&format!("{} {}\n", p.x, p.y));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, TileFormatError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(TileFormatError::Syntax { line: 1, msg: "missing header".into() })?;
        let scale = header
            .trim()
            .strip_prefix("scale")
            .and_then(|s| s.trim().parse::<i64>().ok())
            .filter(|&s| s >= 1)
            .ok_or(TileFormatError::Syntax { line: 1, msg: format!("expected `scale N`, got {header:?}") })?;
        let mut pts = Vec::new();
        for (i, l) in lines {
            let mut it = l.split_whitespace();
            let parse = |t: Option<&str>| t.and_then(|t| t.parse::<i64>().ok());
            match (parse(it.next()), parse(it.next()), it.next()) {
                (Some(x), Some(y), None) => pts.push(ZPoint::new(x, y)),
                _ => return Err(TileFormatError::Syntax { line: i + 1, msg: format!("expected `x y`, got {l:?}") }),
            }
        }
        if pts.is_empty() {
            return Err(TileFormatError::Empty);
        }
        Ok(DiscreteTile::new(scale, pts))
    }
}

/// The discrete encoding: the union of `N v + S_i` over occupied `(v, i)`.
pub fn discretize(omega: &IntegerPolygonalSet) -> DiscreteTile {
    let partition = unit_cell_partition(omega);
    let n = partition.scale();
    let markers = build_marker_sets(partition.face_count(), partition.k(), n);
    let occupied = occupied_cells(omega, &partition);
    let mut points = Vec::new();
    for &(v, i) in &occupied {
        points.extend(markers[i].points.iter().map(|&s| v * n + s));
    }
    let mut tile = DiscreteTile::new(n, points);
    tile.provenance = Some(Arc::new(Provenance { omega: omega.clone(), partition, markers, occupied }));
    tile
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftVerdict {
    IsContinuousTiling,
    /// The face `cell + P_face` is covered `coverage` times instead of once.
    NotTiling {
        cell: ZPoint,
        face: usize,
        coverage: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LiftError {
    #[error("description has no finite verification window: {0}")]
    WindowTooSmall(String),
    #[error("the translate set must contain the origin")]
    MissingOrigin,
}

/// Face-occupancy table of an integer set, for repeated tiling checks.
pub struct OccupancyTable {
    face_count: usize,
    /// For each face, the cells `v` with `v + P_i ⊂ Ω`.
    by_face: Vec<Vec<ZPoint>>,
}

impl OccupancyTable {
    pub fn new(omega: &IntegerPolygonalSet) -> Self {
        let part = unit_cell_partition(omega);
        Self::from_cells(part.face_count(), &occupied_cells(omega, &part))
    }

    pub fn from_cells(face_count: usize, occupied: &[(ZPoint, usize)]) -> Self {
        let mut by_face = vec![Vec::new(); face_count];
        for &(v, i) in occupied {
            by_face[i].push(v);
        }
        OccupancyTable { face_count, by_face }
    }

    pub fn face_count(&self) -> usize {
        self.face_count
    }

    /// Cells `v` with `v + P_face` inside the set.
    pub fn cells(&self, face: usize) -> &[ZPoint] {
        &self.by_face[face]
    }

    /// Checks that every face `v + P_i` of the plane is covered exactly once
    /// by `Ω + T`, over one fundamental domain of the period lattice.
    pub fn lift_tiling(&self, t: &IntPeriodic) -> Result<LiftVerdict, LiftError> {
        let lat = t.lattice();
        let members: std::collections::HashSet<ZPoint> = t.base().iter().map(|&b| lat.reduce(b)).collect();
        if !members.contains(&ZPoint::ZERO) {
            return Err(LiftError::MissingOrigin);
        }
        for v in lat.fundamental_domain() {
            for (i, cells) in self.by_face.iter().enumerate() {
                let coverage = cells.iter().filter(|&&o| members.contains(&lat.reduce(v - o))).count();
                if coverage != 1 {
                    return Ok(LiftVerdict::NotTiling { cell: v, face: i, coverage });
                }
            }
        }
        Ok(LiftVerdict::IsContinuousTiling)
    }

    /// Per-face coverage counts of `Ω ⊕ T` for a finite translate set, keyed by cell.
    pub fn face_cover(&self, translates: &[ZPoint]) -> HashMap<(ZPoint, usize), usize> {
        let mut out = HashMap::new();
        for &t in translates {
            for (i, cells) in self.by_face.iter().enumerate() {
                for &o in cells {
                    *out.entry((o + t, i)).or_insert(0) += 1;
                }
            }
        }
        out
    }
}

/// Continuous tiling check for a translate set `T ⊂ Z²` described periodically.
pub fn lift_tiling(omega: &IntegerPolygonalSet, t: &crate::tiling::TilingDesc) -> Result<LiftVerdict, LiftError> {
    let periodic = t.to_int_periodic().map_err(|e| LiftError::WindowTooSmall(e.to_string()))?;
    OccupancyTable::new(omega).lift_tiling(&periodic)
}
