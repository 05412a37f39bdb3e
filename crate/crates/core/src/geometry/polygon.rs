use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{lcm_denominators, orient, ratio, RPoint, Rational};
use super::GeometryError;
use crate::lattice::ZPoint;

/// An outer loop and its holes, as integer vertices.
pub type IntLoops<'a> = (&'a [(i64, i64)], &'a [&'a [(i64, i64)]]);

/// Result of classifying a point against a closed region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    Outside,
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub a: RPoint,
    pub b: RPoint,
}

impl Segment {
    pub fn new(a: RPoint, b: RPoint) -> Self {
        debug_assert!(a != b, "degenerate segment");
        Segment { a, b }
    }

    pub fn contains(&self, p: &RPoint) -> bool {
        on_segment(p, &self.a, &self.b)
    }

    pub fn direction(&self) -> RPoint {
        &self.b - &self.a
    }
}

/// A simple polygon with holes. Outer loop counterclockwise, holes clockwise,
/// every loop rotated to start at its lexicographically smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polygon {
    pub outer: Vec<RPoint>,
    pub holes: Vec<Vec<RPoint>>,
}

impl Polygon {
    pub fn loops(&self) -> impl Iterator<Item = &Vec<RPoint>> {
        std::iter::once(&self.outer).chain(self.holes.iter())
    }
}

/// A bounded open planar set whose boundary is a finite union of segments,
/// stored as finitely many simple polygons with holes in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolygonalSet {
    polygons: Vec<Polygon>,
}

/// A polygonal set with integer vertices and the origin among its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerPolygonalSet {
    base: PolygonalSet,
}

/// `x -> dilation * (x - translation)` maps the source set onto the integer set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineNormalization {
    pub translation: RPoint,
    pub dilation: BigInt,
}

impl AffineNormalization {
    pub fn apply(&self, p: &RPoint) -> RPoint {
        let n = Rational::from_integer(self.dilation.clone());
        (p - &self.translation).scale(&n)
    }

    pub fn invert(&self, p: &RPoint) -> RPoint {
        let inv = Rational::new(BigInt::one(), self.dilation.clone());
        &p.scale(&inv) + &self.translation
    }
}

pub(crate) fn on_segment(p: &RPoint, a: &RPoint, b: &RPoint) -> bool {
    orient(a, b, p) == Ordering::Equal
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum Contact {
    Disjoint,
    /// The closed segments meet in exactly one point.
    Point(RPoint),
    /// Collinear with an overlap of positive length.
    Overlap,
}

pub(crate) fn segment_contact(p1: &RPoint, p2: &RPoint, q1: &RPoint, q2: &RPoint) -> Contact {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if d1 == Ordering::Equal && d2 == Ordering::Equal {
        // collinear: compare projections on the dominant axis
        let r = p2 - p1;
        let key = |p: &RPoint| if r.x.is_zero() { p.y.clone() } else { p.x.clone() };
        let (mut a0, mut a1) = (key(p1), key(p2));
        if a0 > a1 {
            std::mem::swap(&mut a0, &mut a1);
        }
        let (mut b0, mut b1) = (key(q1), key(q2));
        if b0 > b1 {
            std::mem::swap(&mut b0, &mut b1);
        }
        let lo = a0.max(b0);
        let hi = a1.min(b1);
        return match lo.cmp(&hi) {
            Ordering::Greater => Contact::Disjoint,
            Ordering::Less => Contact::Overlap,
            Ordering::Equal => {
                let pt = [p1, p2, q1, q2].into_iter().find(|p| key(p) == lo).unwrap().clone();
                Contact::Point(pt)
            }
        };
    }
    if d1 != d2 && d3 != d4 {
        // proper crossing or one endpoint touching the other segment
        if d1 == Ordering::Equal {
            return Contact::Point(p1.clone());
        }
        if d2 == Ordering::Equal {
            return Contact::Point(p2.clone());
        }
        if d3 == Ordering::Equal {
            return Contact::Point(q1.clone());
        }
        if d4 == Ordering::Equal {
            return Contact::Point(q2.clone());
        }
        return Contact::Point(line_intersection(p1, p2, q1, q2));
    }
    Contact::Disjoint
}

/// Intersection of the lines through `p1 p2` and `q1 q2`; the lines must not be parallel.
pub(crate) fn line_intersection(p1: &RPoint, p2: &RPoint, q1: &RPoint, q2: &RPoint) -> RPoint {
    let r = p2 - p1;
    let s = q2 - q1;
    let denom = r.cross(&s);
    let t = (q1 - p1).cross(&s) / denom;
    p1 + &r.scale(&t)
}

pub(crate) fn signed_area2(ring: &[RPoint]) -> Rational {
    let n = ring.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        acc += ring[i].cross(&ring[(i + 1) % n]);
    }
    acc
}

pub(crate) fn ring_edges(ring: &[RPoint]) -> impl Iterator<Item = (&RPoint, &RPoint)> {
    let n = ring.len();
    (0..n).map(move |i| (&ring[i], &ring[(i + 1) % n]))
}

/// Winding-number location of `p` relative to one closed loop.
pub(crate) fn ring_location(ring: &[RPoint], p: &RPoint) -> Location {
    let mut winding = 0i32;
    for (a, b) in ring_edges(ring) {
        if on_segment(p, a, b) {
            return Location::Boundary;
        }
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) == Ordering::Greater {
                winding += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) == Ordering::Less {
            winding -= 1;
        }
    }
    if winding != 0 {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// Removes repeated vertices and merges collinear runs; rejects spikes.
fn clean_ring(raw: &[RPoint]) -> Result<Vec<RPoint>, GeometryError> {
    let mut ring: Vec<RPoint> = Vec::with_capacity(raw.len());
    for p in raw {
        if ring.last() != Some(p) {
            ring.push(p.clone());
        }
    }
    while ring.len() > 1 && ring.first() == ring.last() {
        ring.pop();
    }
    loop {
        let n = ring.len();
        if n < 3 {
            return Err(GeometryError::Validation(format!("loop has fewer than 3 distinct vertices ({n})")));
        }
        let mut removed = false;
        for i in 0..n {
            let prev = &ring[(i + n - 1) % n];
            let cur = &ring[i];
            let next = &ring[(i + 1) % n];
            if orient(prev, cur, next) == Ordering::Equal {
                if (cur - prev).dot(&(next - cur)).is_negative() {
                    return Err(GeometryError::Validation(format!("loop folds back on itself at {cur}")));
                }
                ring.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            return Ok(ring);
        }
    }
}

fn check_simple(ring: &[RPoint]) -> Result<(), GeometryError> {
    let n = ring.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (a1, a2) = (&ring[i], &ring[(i + 1) % n]);
            let (b1, b2) = (&ring[j], &ring[(j + 1) % n]);
            let contact = segment_contact(a1, a2, b1, b2);
            let ok = match contact {
                Contact::Disjoint => true,
                Contact::Overlap => false,
                Contact::Point(_) => adjacent,
            };
            if !ok {
                return Err(GeometryError::Validation(format!(
                    "loop is not simple: edges {a1}-{a2} and {b1}-{b2} intersect"
                )));
            }
        }
    }
    Ok(())
}

fn rotate_to_min(ring: &mut [RPoint]) {
    let (idx, _) = ring.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).unwrap();
    ring.rotate_left(idx);
}

fn orient_ring(mut ring: Vec<RPoint>, ccw: bool) -> Vec<RPoint> {
    let positive = signed_area2(&ring).is_positive();
    if positive != ccw {
        ring.reverse();
    }
    rotate_to_min(&mut ring);
    ring
}

/// A point of `ring` (vertex or edge midpoint) not lying on any of `others`' edges.
fn probe_point(ring: &[RPoint], others: &[&Vec<RPoint>]) -> Option<RPoint> {
    let candidates = ring.iter().cloned().chain(ring_edges(ring).map(|(a, b)| a.midpoint(b)));
    candidates.into_iter().find(|p| others.iter().all(|o| ring_edges(o).all(|(a, b)| !on_segment(p, a, b))))
}

fn cross_loop_contacts(a: &[RPoint], b: &[RPoint], allow_point: bool) -> Result<(), GeometryError> {
    for (a1, a2) in ring_edges(a) {
        for (b1, b2) in ring_edges(b) {
            match segment_contact(a1, a2, b1, b2) {
                Contact::Disjoint => {}
                Contact::Point(_) if allow_point => {}
                Contact::Point(p) => {
                    return Err(GeometryError::Validation(format!("loops touch or cross at {p}")));
                }
                Contact::Overlap => {
                    return Err(GeometryError::Validation(format!(
                        "edges {a1}-{a2} and {b1}-{b2} overlap (slit or shared edge)"
                    )));
                }
            }
        }
    }
    Ok(())
}

impl PolygonalSet {
    /// Validates raw loops and brings them into canonical form.
    pub fn new(raw: Vec<(Vec<RPoint>, Vec<Vec<RPoint>>)>) -> Result<Self, GeometryError> {
        if raw.is_empty() {
            return Err(GeometryError::Validation("no polygons".into()));
        }
        let mut polygons = Vec::with_capacity(raw.len());
        for (outer, holes) in raw {
            let outer = clean_ring(&outer)?;
            check_simple(&outer)?;
            let outer = orient_ring(outer, true);
            let mut hs = Vec::with_capacity(holes.len());
            for h in holes {
                let h = clean_ring(&h)?;
                check_simple(&h)?;
                hs.push(orient_ring(h, false));
            }
            hs.sort_by(|a, b| a[0].cmp(&b[0]));
            polygons.push(Polygon { outer, holes: hs });
        }
        polygons.sort_by(|a, b| a.outer[0].cmp(&b.outer[0]));

        // loops of one polygon must not touch at all
        for poly in &polygons {
            let loops: Vec<&Vec<RPoint>> = poly.loops().collect();
            for i in 0..loops.len() {
                for j in (i + 1)..loops.len() {
                    cross_loop_contacts(loops[i], loops[j], false)?;
                }
            }
            for h in &poly.holes {
                if ring_location(&poly.outer, &h[0]) != Location::Inside {
                    return Err(GeometryError::Validation(format!("hole at {} is not inside its outer loop", h[0])));
                }
            }
            for (i, h) in poly.holes.iter().enumerate() {
                for (j, g) in poly.holes.iter().enumerate() {
                    if i != j && ring_location(g, &h[0]) != Location::Outside {
                        return Err(GeometryError::Validation(format!("holes at {} and {} are nested", h[0], g[0])));
                    }
                }
            }
        }
        // distinct polygons may touch at points but must have disjoint interiors
        for i in 0..polygons.len() {
            for j in 0..polygons.len() {
                if i == j {
                    continue;
                }
                let (p, q) = (&polygons[i], &polygons[j]);
                if i < j {
                    for la in p.loops() {
                        for lb in q.loops() {
                            cross_loop_contacts(la, lb, true)?;
                        }
                    }
                }
                let qloops: Vec<&Vec<RPoint>> = q.loops().collect();
                let probe = probe_point(&p.outer, &qloops)
                    .ok_or_else(|| GeometryError::Validation("polygons coincide along their whole boundary".into()))?;
                if polygon_location(q, &probe) == Location::Inside {
                    return Err(GeometryError::Validation(format!(
                        "polygons starting at {} and {} overlap",
                        p.outer[0], q.outer[0]
                    )));
                }
            }
        }
        let set = PolygonalSet { polygons };
        if !set.area().is_positive() {
            return Err(GeometryError::Validation("zero area".into()));
        }
        Ok(set)
    }

    /// Convenience constructor for a single simple polygon without holes.
    pub fn simple(vertices: Vec<RPoint>) -> Result<Self, GeometryError> {
        Self::new(vec![(vertices, vec![])])
    }

    pub fn from_int_loops(loops: &[IntLoops<'_>]) -> Result<Self, GeometryError> {
        let conv = |r: &[(i64, i64)]| r.iter().map(|&(x, y)| RPoint::from_ints(x, y)).collect::<Vec<_>>();
        Self::new(loops.iter().map(|(o, hs)| (conv(o), hs.iter().map(|h| conv(h)).collect())).collect())
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    pub fn loops(&self) -> impl Iterator<Item = &Vec<RPoint>> {
        self.polygons.iter().flat_map(|p| p.loops())
    }

    /// All loop vertices, V(Ω), sorted and deduplicated.
    pub fn vertices(&self) -> Vec<RPoint> {
        let mut v: Vec<RPoint> = self.loops().flat_map(|l| l.iter().cloned()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// All loop edges, E(Ω), directed so the set lies on their left.
    pub fn edges(&self) -> Vec<Segment> {
        self.loops().flat_map(|l| ring_edges(l).map(|(a, b)| Segment::new(a.clone(), b.clone()))).collect()
    }

    /// Exact area: outer loops minus holes.
    pub fn area(&self) -> Rational {
        let twice: Rational = self.loops().map(|l| signed_area2(l)).sum();
        twice * ratio(1, 2)
    }

    pub fn contains_point(&self, p: &RPoint) -> Location {
        let mut inside = false;
        for poly in &self.polygons {
            match polygon_location(poly, p) {
                Location::Boundary => return Location::Boundary,
                Location::Inside => inside = true,
                Location::Outside => {}
            }
        }
        if inside {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    pub fn bounding_box(&self) -> (RPoint, RPoint) {
        let vs = self.vertices();
        let mut lo = vs[0].clone();
        let mut hi = vs[0].clone();
        for v in &vs {
            if v.x < lo.x {
                lo.x = v.x.clone();
            }
            if v.y < lo.y {
                lo.y = v.y.clone();
            }
            if v.x > hi.x {
                hi.x = v.x.clone();
            }
            if v.y > hi.y {
                hi.y = v.y.clone();
            }
        }
        (lo, hi)
    }

    pub fn map_points(&self, f: impl Fn(&RPoint) -> RPoint) -> Result<Self, GeometryError> {
        let raw = self
            .polygons
            .iter()
            .map(|p| (p.outer.iter().map(&f).collect(), p.holes.iter().map(|h| h.iter().map(&f).collect()).collect()))
            .collect();
        Self::new(raw)
    }

    pub fn is_integral(&self) -> bool {
        self.loops().all(|l| l.iter().all(RPoint::is_integral))
    }

    /// Translates the lexicographically smallest vertex to the origin and
    /// dilates by the least common multiple of the coordinate denominators.
    pub fn normalize_to_integer(&self) -> (IntegerPolygonalSet, AffineNormalization) {
        let translation = self.vertices().into_iter().next().expect("nonempty set");
        let shifted: Vec<RPoint> = self.vertices().iter().map(|v| v - &translation).collect();
        let dilation = lcm_denominators(shifted.iter().flat_map(|p| [&p.x, &p.y]));
        let norm = AffineNormalization { translation, dilation };
        let base = self.map_points(|p| norm.apply(p)).expect("affine image of a valid set is valid");
        (IntegerPolygonalSet { base }, norm)
    }
}

pub(crate) fn polygon_location(poly: &Polygon, p: &RPoint) -> Location {
    match ring_location(&poly.outer, p) {
        Location::Outside => Location::Outside,
        Location::Boundary => Location::Boundary,
        Location::Inside => {
            for h in &poly.holes {
                match ring_location(h, p) {
                    Location::Boundary => return Location::Boundary,
                    Location::Inside => return Location::Outside,
                    Location::Outside => {}
                }
            }
            Location::Inside
        }
    }
}

impl IntegerPolygonalSet {
    /// Wraps a set that is already integral with the origin as a vertex.
    pub fn try_from_set(set: PolygonalSet) -> Result<Self, GeometryError> {
        if !set.is_integral() {
            return Err(GeometryError::Validation("set has non-integer vertices".into()));
        }
        if !set.vertices().contains(&RPoint::zero()) {
            return Err(GeometryError::Validation("origin is not a vertex".into()));
        }
        Ok(IntegerPolygonalSet { base: set })
    }

    pub fn set(&self) -> &PolygonalSet {
        &self.base
    }

    pub fn integer_vertices(&self) -> Vec<ZPoint> {
        self.base.vertices().iter().map(|v| v.to_zpoint().expect("integer vertex")).collect()
    }

    /// Integer edge endpoints, directed with the set on the left.
    pub fn integer_edges(&self) -> Vec<(ZPoint, ZPoint)> {
        self.base
            .edges()
            .iter()
            .map(|e| (e.a.to_zpoint().expect("integer vertex"), e.b.to_zpoint().expect("integer vertex")))
            .collect()
    }

    /// Integer bounding box `(min, max)` of the vertices.
    pub fn integer_bbox(&self) -> (ZPoint, ZPoint) {
        let (lo, hi) = self.base.bounding_box();
        (lo.to_zpoint().unwrap(), hi.to_zpoint().unwrap())
    }

    /// Dilation by a positive integer; the result is still an integer set.
    pub fn dilate(&self, k: i64) -> IntegerPolygonalSet {
        assert!(k > 0);
        let f = Rational::from_integer(k.into());
        IntegerPolygonalSet { base: self.base.map_points(|p| p.scale(&f)).expect("dilation preserves validity") }
    }
}

impl std::ops::Deref for IntegerPolygonalSet {
    type Target = PolygonalSet;
    fn deref(&self) -> &PolygonalSet {
        &self.base
    }
}
