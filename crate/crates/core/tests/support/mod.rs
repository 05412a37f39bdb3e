//! Fixtures and brute-force oracles shared by the integration tests. The
//! oracles here deliberately avoid the crate's face partition, marker sets
//! and exact-cover solver.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use polytile_core::geometry::{rat, RPoint, Rational};
use polytile_core::{IntegerPolygonalSet, Lattice, PolygonalSet, ZPoint};

pub fn set(v: &[(i64, i64)]) -> IntegerPolygonalSet {
    let pts = v.iter().map(|&(x, y)| RPoint::from_ints(x, y)).collect();
    IntegerPolygonalSet::try_from_set(PolygonalSet::simple(pts).unwrap()).unwrap()
}

pub fn square() -> IntegerPolygonalSet {
    set(&[(0, 0), (1, 0), (1, 1), (0, 1)])
}

pub fn rectangle() -> IntegerPolygonalSet {
    set(&[(0, 0), (2, 0), (2, 1), (0, 1)])
}

pub fn domino() -> IntegerPolygonalSet {
    set(&[(0, 0), (1, 0), (1, 2), (0, 2)])
}

pub fn tromino() -> IntegerPolygonalSet {
    set(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])
}

pub fn triangle() -> IntegerPolygonalSet {
    set(&[(0, 0), (1, 0), (0, 1)])
}

/// Nonconvex set whose unit cell splits into four faces.
pub fn chevron() -> IntegerPolygonalSet {
    set(&[(0, 0), (1, 1), (2, 0), (2, 1), (1, 2), (0, 1)])
}

pub fn corpus() -> Vec<(&'static str, IntegerPolygonalSet)> {
    vec![
        ("unit square", square()),
        ("2x1 rectangle", rectangle()),
        ("L-tromino", tromino()),
        ("right triangle", triangle()),
        ("chevron", chevron()),
    ]
}

pub fn pts(v: &[(i64, i64)]) -> Vec<ZPoint> {
    v.iter().map(|&p| p.into()).collect()
}

pub fn lattice(a: i64, b: i64, d: i64) -> Lattice {
    Lattice::new(a, b, d).unwrap()
}

// ---------------------------------------------------------------------------
// Continuous tiling oracle: Ω ⊕ (base + Λ) tiles iff the density is one and no
// two translates overlap in positive area.

/// Convex pieces (trapezoids, counter-clockwise) whose union is the set up to
/// measure zero, from vertical slabs between consecutive vertex abscissae.
pub fn trapezoids(set: &PolygonalSet) -> Vec<Vec<RPoint>> {
    let xs: BTreeSet<Rational> = set.vertices().into_iter().map(|v| v.x).collect();
    let xs: Vec<Rational> = xs.into_iter().collect();
    let edges: Vec<(RPoint, RPoint)> = set
        .loops()
        .flat_map(|l| (0..l.len()).map(move |i| (l[i].clone(), l[(i + 1) % l.len()].clone())))
        .filter(|(p, q)| p.x != q.x)
        .collect();
    let y_at = |(p, q): &(RPoint, RPoint), x: &Rational| &p.y + (&q.y - &p.y) * (x - &p.x) / (&q.x - &p.x);
    let mut out = Vec::new();
    for w in xs.windows(2) {
        let (x0, x1) = (&w[0], &w[1]);
        let mid = (x0 + x1) / rat(2);
        let mut crossing: Vec<&(RPoint, RPoint)> = edges
            .iter()
            .filter(|(p, q)| p.x.clone().min(q.x.clone()) <= *x0 && p.x.clone().max(q.x.clone()) >= *x1)
            .collect();
        crossing.sort_by_key(|e| y_at(e, &mid));
        for pair in crossing.chunks(2) {
            let (lo, hi) = (pair[0], pair[1]);
            let mut quad = vec![
                RPoint::new(x0.clone(), y_at(lo, x0)),
                RPoint::new(x1.clone(), y_at(lo, x1)),
                RPoint::new(x1.clone(), y_at(hi, x1)),
                RPoint::new(x0.clone(), y_at(hi, x0)),
            ];
            quad.dedup();
            if quad.first() == quad.last() {
                quad.pop();
            }
            out.push(quad);
        }
    }
    out
}

fn shoelace(poly: &[RPoint]) -> Rational {
    let n = poly.len();
    let mut s = rat(0);
    for i in 0..n {
        s += poly[i].cross(&poly[(i + 1) % n]);
    }
    s / rat(2)
}

fn side(a: &RPoint, b: &RPoint, p: &RPoint) -> Rational {
    (b - a).cross(&(p - a))
}

/// Sutherland-Hodgman clipping of `subject` by the convex counter-clockwise `clip`.
fn clip_convex(subject: &[RPoint], clip: &[RPoint]) -> Vec<RPoint> {
    let mut out = subject.to_vec();
    for i in 0..clip.len() {
        if out.is_empty() {
            break;
        }
        let (a, b) = (&clip[i], &clip[(i + 1) % clip.len()]);
        let input = std::mem::take(&mut out);
        for j in 0..input.len() {
            let (p, q) = (&input[j], &input[(j + 1) % input.len()]);
            let (sp, sq) = (side(a, b, p), side(a, b, q));
            let zero = rat(0);
            if sp >= zero {
                out.push(p.clone());
            }
            if (sp > zero && sq < zero) || (sp < zero && sq > zero) {
                let t = &sp / (&sp - &sq);
                out.push(p + &(&(q - p) * &t));
            }
        }
    }
    out
}

pub fn overlap_area(pieces: &[Vec<RPoint>], d: ZPoint) -> Rational {
    let off = RPoint::from(d);
    let mut total = rat(0);
    for a in pieces {
        let moved: Vec<RPoint> = a.iter().map(|p| p + &off).collect();
        for b in pieces {
            let c = clip_convex(&moved, b);
            if c.len() >= 3 {
                total += shoelace(&c);
            }
        }
    }
    total
}

pub struct ContinuousOracle {
    area: Rational,
    /// Nonzero integer shifts `d` with `|Ω ∩ (Ω + d)| > 0`.
    overlapping: Vec<ZPoint>,
}

impl ContinuousOracle {
    pub fn new(omega: &IntegerPolygonalSet) -> Self {
        let pieces = trapezoids(omega.set());
        let area: Rational = pieces.iter().map(|p| shoelace(p)).sum();
        assert_eq!(area, omega.area(), "trapezoids must cover the set");
        let (lo, hi) = omega.integer_bbox();
        let (w, h) = (hi.x - lo.x, hi.y - lo.y);
        let mut overlapping = Vec::new();
        for dx in -w..=w {
            for dy in -h..=h {
                let d = ZPoint::new(dx, dy);
                if !d.is_zero() && overlap_area(&pieces, d) > rat(0) {
                    overlapping.push(d);
                }
            }
        }
        ContinuousOracle { area, overlapping }
    }

    pub fn tiles(&self, base: &[ZPoint], lat: &Lattice) -> bool {
        let members: HashSet<ZPoint> = base.iter().map(|&b| lat.reduce(b)).collect();
        if members.len() != base.len() || &self.area * rat(base.len() as i64) != rat(lat.index()) {
            return false;
        }
        !base.iter().any(|&b| self.overlapping.iter().any(|&d| members.contains(&lat.reduce(b + d))))
    }
}

// ---------------------------------------------------------------------------
// Naive patch search: depth-first over placements covering the first
// uncovered cell of `[-r, r]²` in row-major order.

pub fn naive_patch(tile: &[ZPoint], r: i64) -> bool {
    fn go(tile: &[ZPoint], covered: &mut HashSet<ZPoint>, cells: &[ZPoint]) -> bool {
        let Some(&cell) = cells.iter().find(|c| !covered.contains(c)) else { return true };
        for &f in tile {
            let t = cell - f;
            let placed: Vec<ZPoint> = tile.iter().map(|&g| g + t).collect();
            if placed.iter().any(|p| covered.contains(p)) {
                continue;
            }
            covered.extend(placed.iter().copied());
            if go(tile, covered, cells) {
                return true;
            }
            for p in &placed {
                covered.remove(p);
            }
        }
        false
    }
    let cells: Vec<ZPoint> = (-r..=r).flat_map(|y| (-r..=r).map(move |x| ZPoint::new(x, y))).collect();
    go(tile, &mut HashSet::new(), &cells)
}

/// Smallest `r` at which the core `[-r, r]²` cannot be covered, if any up to `max_r`.
pub fn naive_refuting_radius(tile: &[ZPoint], max_r: i64) -> Option<i64> {
    (1..=max_r).find(|&r| !naive_patch(tile, r))
}
