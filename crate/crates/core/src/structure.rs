//! Analysis of given tilings: vertex-sharing classes, the common sliding
//! direction of their unions, merging classes by sliding, earthquake plates,
//! and periodicity.
//!
//! Vertex-sharing classes and plates are both connected components of a
//! Λ-periodic graph on `T = base ⊕ Λ` whose edges are `t → t + δ` for `δ` in
//! a finite difference set. A component is described by one lift of each
//! quotient node plus the subgroup generated by its cycle displacements.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{Signed, Zero};

use crate::discretize::OccupancyTable;
use crate::geometry::{ratio, IntegerPolygonalSet, RPoint, Rational};
use crate::lattice::{ext_gcd, Subgroup, ZPoint};
use crate::tiling::{coset_reps, Component, DescError, IntPeriodic, Piece, RatLattice, ScaledPiece, TilingDesc};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error(transparent)]
    Desc(DescError),
    #[error("description has no finite verification window: {0}")]
    WindowTooSmall(String),
    #[error("internal consistency failure: {0}")]
    InvariantViolation(String),
    #[error("unsupported description: {0}")]
    UnsupportedDescription(String),
}

impl From<DescError> for StructureError {
    fn from(e: DescError) -> Self {
        match e {
            DescError::WindowTooSmall(m) => StructureError::WindowTooSmall(m),
            e => StructureError::Desc(e),
        }
    }
}

/// One connected component of the periodic graph, with its translates by Λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicClass {
    /// One lift of every quotient node of the component, all in the same class.
    pub members: Vec<ZPoint>,
    /// Translations mapping the class onto itself.
    pub group: Subgroup,
    /// Number of distinct translates of the class under Λ, when finite.
    pub copies: Option<i64>,
}

impl PeriodicClass {
    pub fn as_piece(&self) -> ScaledPiece {
        ScaledPiece::new(self.members.clone(), self.group)
    }
}

/// Identifies one class: its orbit and a canonical translate within the orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassLabel {
    pub class: usize,
    /// The class is `members + coset + group`.
    pub coset: ZPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGraph {
    translates: IntPeriodic,
    classes: Vec<PeriodicClass>,
    node_class: Vec<usize>,
    node_offset: Vec<ZPoint>,
}

impl ClassGraph {
    /// Components of the graph on `t` with edges `p → p + δ`, `δ ∈ diffs`, whenever both ends lie in `t`.
    pub fn build(t: &IntPeriodic, diffs: &[ZPoint]) -> Self {
        let lat = t.lattice();
        let base = t.base();
        let index_of = |p: ZPoint| base.binary_search(&lat.reduce(p)).ok();
        let n = base.len();
        let mut node_class = vec![usize::MAX; n];
        let mut node_offset = vec![ZPoint::ZERO; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if node_class[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            node_class[start] = id;
            let mut comp = vec![start];
            let mut cycles = Vec::new();
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let p = base[i] + node_offset[i];
                for &d in diffs {
                    let q = p + d;
                    let Some(j) = index_of(q) else { continue };
                    let lift = q - base[j];
                    if node_class[j] == usize::MAX {
                        node_class[j] = id;
                        node_offset[j] = lift;
                        comp.push(j);
                        queue.push_back(j);
                    } else {
                        cycles.push(lift - node_offset[j]);
                    }
                }
            }
            comp.sort_unstable();
            let group = Subgroup::from_generators(cycles);
            let copies = match group {
                Subgroup::Full(h) => Some(h.index() / lat.index()),
                _ => None,
            };
            let members = comp.iter().map(|&j| base[j] + node_offset[j]).collect();
            classes.push(PeriodicClass { members, group, copies });
        }
        ClassGraph { translates: t.clone(), classes, node_class, node_offset }
    }

    pub fn translates(&self) -> &IntPeriodic {
        &self.translates
    }

    pub fn classes(&self) -> &[PeriodicClass] {
        &self.classes
    }

    /// Total number of classes, `None` when infinite.
    pub fn class_count(&self) -> Option<i64> {
        self.classes.iter().map(|c| c.copies).sum()
    }

    pub fn label(&self, p: ZPoint) -> Option<ClassLabel> {
        let lat = self.translates.lattice();
        let j = self.translates.base().binary_search(&lat.reduce(p)).ok()?;
        let lift = p - self.translates.base()[j];
        let class = self.node_class[j];
        Some(ClassLabel { class, coset: self.classes[class].group.reduce(lift - self.node_offset[j]) })
    }
}

/// Vertex-sharing classes of a tiling, computed in coordinates scaled by `scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShareClasses {
    scale: i64,
    vertices: Vec<ZPoint>,
    graph: ClassGraph,
}

impl ShareClasses {
    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn graph(&self) -> &ClassGraph {
        &self.graph
    }

    pub fn class_count(&self) -> Option<i64> {
        self.graph.class_count()
    }

    pub fn label(&self, t: &RPoint) -> Option<ClassLabel> {
        self.graph.label(t.scale(&Rational::from_integer(self.scale.into())).to_zpoint()?)
    }

    /// One component per orbit of classes: the class through the orbit's first member.
    pub fn components(&self) -> Vec<Component> {
        let unscale = |p: ZPoint| RPoint::new(ratio(p.x, self.scale), ratio(p.y, self.scale));
        self.graph
            .classes()
            .iter()
            .map(|c| Component {
                base: c.members.iter().map(|&m| unscale(m)).collect(),
                periods: c.group.generators().into_iter().map(unscale).collect(),
                slide_offset: Rational::zero(),
            })
            .collect()
    }
}

fn differences(a: &[ZPoint], b: &[ZPoint], shifts: &[ZPoint]) -> Vec<ZPoint> {
    let mut out = BTreeSet::new();
    for &p in a {
        for &q in b {
            for &s in shifts {
                let d = p - q + s;
                if !d.is_zero() {
                    out.insert(d);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Classes of the transitive closure of "the translated vertex sets intersect".
pub fn vertex_share_classes(omega: &IntegerPolygonalSet, t: &TilingDesc) -> Result<ShareClasses, StructureError> {
    let scale = t.denominator()?;
    let periodic = t.to_scaled_periodic(scale)?;
    let vertices: Vec<ZPoint> = omega.integer_vertices().into_iter().map(|v| v * scale).collect();
    let diffs = differences(&vertices, &vertices, &[ZPoint::ZERO]);
    Ok(ShareClasses { scale, graph: ClassGraph::build(&periodic, &diffs), vertices })
}

fn scaled_edges(omega: &IntegerPolygonalSet, scale: i64) -> Vec<(ZPoint, ZPoint)> {
    omega.integer_edges().into_iter().map(|(p, q)| (p * scale, q * scale)).collect()
}

/// Whether every edge of the class not parallel to `u` is covered on its other side by the class itself.
fn class_is_invariant(classes: &ShareClasses, edges: &[(ZPoint, ZPoint)], class: &PeriodicClass, u: ZPoint) -> bool {
    let graph = &classes.graph;
    let all = graph.translates().as_piece();
    let lo = ZPoint::new(
        classes.vertices.iter().map(|v| v.x).min().unwrap(),
        classes.vertices.iter().map(|v| v.y).min().unwrap(),
    );
    let hi = ZPoint::new(
        classes.vertices.iter().map(|v| v.x).max().unwrap(),
        classes.vertices.iter().map(|v| v.y).max().unwrap(),
    );
    for &m in &class.members {
        let own = graph.label(m);
        for &(p, q) in edges {
            let d = q - p;
            if d.cross(u) == 0 {
                continue;
            }
            let (a, b) = (p + m, q + m);
            let box_lo = ZPoint::new(a.x.min(b.x) - hi.x, a.y.min(b.y) - hi.y);
            let box_hi = ZPoint::new(a.x.max(b.x) - lo.x, a.y.max(b.y) - lo.y);
            let len = d.dot(d);
            let mut spans = Vec::new();
            for t in all.points_in_box(box_lo, box_hi) {
                if graph.label(t) != own {
                    continue;
                }
                for &(p2, q2) in edges {
                    let (a2, b2) = (p2 + t, q2 + t);
                    let d2 = b2 - a2;
                    if d2.cross(d) != 0 || d2.dot(d) >= 0 || (a2 - a).cross(d) != 0 {
                        continue;
                    }
                    let (s, e) = ((a2 - a).dot(d), (b2 - a).dot(d));
                    let (s, e) = (s.min(e).max(0), s.max(e).min(len));
                    if s < e {
                        spans.push((s, e));
                    }
                }
            }
            spans.sort_unstable();
            let mut reach = 0;
            for (s, e) in spans {
                if s > reach {
                    break;
                }
                reach = reach.max(e);
            }
            if reach < len {
                return false;
            }
        }
    }
    true
}

/// The primitive direction `v̂` along which every class union is invariant;
/// `None` for a single class.
pub fn sliding_direction(
    omega: &IntegerPolygonalSet,
    classes: &ShareClasses,
) -> Result<Option<ZPoint>, StructureError> {
    if classes.class_count() == Some(1) {
        return Ok(None);
    }
    let edges = scaled_edges(omega, classes.scale);
    let candidates: BTreeSet<ZPoint> = edges.iter().map(|&(p, q)| (q - p).primitive().canonical_sign()).collect();
    for u in candidates {
        if classes.graph.classes().iter().all(|c| class_is_invariant(classes, &edges, c, u)) {
            return Ok(Some(u));
        }
    }
    Err(StructureError::InvariantViolation("several vertex-sharing classes but no common sliding direction".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeResult {
    /// The merged tiling, containing the origin when the input did.
    pub tiling: TilingDesc,
    /// Slide of each class orbit along `direction`, indexed like [`ShareClasses::components`].
    pub offsets: Vec<Rational>,
    pub direction: Option<ZPoint>,
}

fn centered(x: Rational, period: &Rational) -> Rational {
    let half = period * ratio(1, 2);
    let k = ((&x + &half) / period).floor();
    x - k * period
}

/// Slides the classes of `t` along the common direction so that adjacent
/// strips share vertices, yielding a tiling with a single class.
pub fn merge_by_sliding(omega: &IntegerPolygonalSet, t: &TilingDesc) -> Result<MergeResult, StructureError> {
    let classes = vertex_share_classes(omega, t)?;
    let graph = &classes.graph;
    let k = graph.classes().len();
    if classes.class_count() == Some(1) {
        return Ok(MergeResult { tiling: t.clone(), offsets: vec![Rational::zero(); k], direction: None });
    }
    let u = sliding_direction(omega, &classes)?.expect("several classes");
    let lat = *graph.translates().lattice();
    let scale = classes.scale;
    let n = ZPoint::new(u.y, -u.x);
    let along = Subgroup::Full(lat).intersect(&Subgroup::Line(u));
    let Subgroup::Line(l_par) = along else { unreachable!("a lattice meets a rational line in a line") };
    if graph.classes().iter().any(|c| c.group != along) {
        return Err(StructureError::UnsupportedDescription(
            "a class is not one strip along the sliding direction".into(),
        ));
    }
    let [e1, e2] = lat.basis();
    let (g, s1, s2) = ext_gcd(n.dot(e1), n.dot(e2));
    let (g, l_perp) = if g < 0 { (-g, -(e1 * s1 + e2 * s2)) } else { (g, e1 * s1 + e2 * s2) };
    debug_assert_eq!(n.dot(l_perp), g);

    let nmin = classes.vertices.iter().map(|&v| n.dot(v)).min().unwrap();
    let nmax = classes.vertices.iter().map(|&v| n.dot(v)).max().unwrap();
    let mut ranges = Vec::with_capacity(k);
    for c in graph.classes() {
        let mut iv: Vec<(i64, i64)> = c.members.iter().map(|&m| (n.dot(m) + nmin, n.dot(m) + nmax)).collect();
        iv.sort_unstable();
        let (lo, mut hi) = iv[0];
        for &(s, e) in &iv[1..] {
            if s > hi {
                return Err(StructureError::UnsupportedDescription("a class union is not a single strip".into()));
            }
            hi = hi.max(e);
        }
        ranges.push((lo, hi));
    }

    let t0 = if graph.translates().contains(ZPoint::ZERO) { ZPoint::ZERO } else { graph.translates().base()[0] };
    let lab0 = graph.label(t0).expect("t0 is a translate");
    let start = ranges[lab0.class].0 + n.dot(lab0.coset);
    let mut strips: Vec<(usize, ZPoint)> = Vec::new();
    let mut at = start;
    while at < start + g {
        let found: Vec<usize> = (0..k).filter(|&f| (at - ranges[f].0).rem_euclid(g) == 0).collect();
        let [f] = found[..] else {
            return Err(StructureError::UnsupportedDescription("class strips do not abut".into()));
        };
        strips.push((f, l_perp * ((at - ranges[f].0) / g)));
        at += ranges[f].1 - ranges[f].0;
        if strips.len() > k {
            break;
        }
    }
    if at != start + g || strips.len() != k {
        return Err(StructureError::UnsupportedDescription("class strips do not partition one period".into()));
    }

    let uu = u.dot(u);
    let coord = |p: ZPoint| ratio(p.dot(u), uu);
    let period = coord(l_par).abs();
    let on_line = |f: usize, shift: ZPoint, level: i64| -> BTreeSet<Rational> {
        let mut out = BTreeSet::new();
        for &m in &graph.classes()[f].members {
            for &v in &classes.vertices {
                let x = v + m + shift;
                if n.dot(x) == level {
                    let c = coord(x);
                    let q = (&c / &period).floor();
                    out.insert(c - q * &period);
                }
            }
        }
        out
    };
    let mut slides = vec![Rational::zero()];
    let mut level = start;
    for i in 0..k {
        let (f, shift) = strips[i];
        level += ranges[f].1 - ranges[f].0;
        let (f2, shift2) = if i + 1 < k { strips[i + 1] } else { (strips[0].0, strips[0].1 + l_perp) };
        let below = on_line(f, shift, level);
        let above = on_line(f2, shift2, level);
        let period = &period;
        let best = below
            .iter()
            .flat_map(|a| above.iter().map(move |b| centered(a - b, period)))
            .min_by(|x, y| x.abs().cmp(&y.abs()).then(x.cmp(y)))
            .ok_or_else(|| {
                StructureError::InvariantViolation("adjacent strips have no vertices on their common line".into())
            })?;
        slides.push(&slides[i] + best);
    }
    let delta = slides[k].clone();

    let inv = Rational::from_integer(scale.into()).recip();
    let to_real = |p: ZPoint| RPoint::from(p).scale(&inv);
    let ur = RPoint::from(u);
    let origin = to_real(t0);
    let mut base = Vec::new();
    let mut offsets = vec![Rational::zero(); k];
    for (i, &(f, shift)) in strips.iter().enumerate() {
        offsets[f] = &slides[i] * &inv;
        for &m in &graph.classes()[f].members {
            base.push(&(&to_real(m + shift) + &ur.scale(&offsets[f])) - &origin);
        }
    }
    let lattice = RatLattice::from_periods(&to_real(l_par), &(&to_real(l_perp) + &ur.scale(&(&delta * &inv))))?;
    let mut tiling = TilingDesc::Periodic { base, lattice };
    if tiling.denominator()? == 1 {
        tiling = tiling.to_int_periodic()?.minimize().to_desc(1);
    }
    Ok(MergeResult { tiling, offsets, direction: Some(u) })
}

/// Earthquake plates: components of the linkage `t ~ t'` whenever
/// `tile + t ± v` meets `tile + t'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlateFamily {
    pub direction: ZPoint,
    graph: ClassGraph,
}

impl PlateFamily {
    pub fn plates(&self) -> &[PeriodicClass] {
        self.graph.classes()
    }

    pub fn plate_of(&self, t: ZPoint) -> Option<ClassLabel> {
        self.graph.label(t)
    }

    pub fn plate_count(&self) -> Option<i64> {
        self.graph.class_count()
    }

    pub fn translates(&self) -> &IntPeriodic {
        self.graph.translates()
    }
}

pub fn earthquake_decomposition(tile: &[ZPoint], t: &IntPeriodic, v: ZPoint) -> PlateFamily {
    assert!(!v.is_zero(), "earthquake direction must be nonzero");
    let diffs = differences(tile, tile, &[v, -v]);
    PlateFamily { direction: v, graph: ClassGraph::build(t, &diffs) }
}

/// Plates of an integer tiling by a polygonal set, linked through face occupancy:
/// `t ~ t'` when some face of `Ω + t` moved by `±v` is a face of `Ω + t'`.
pub fn face_linkage_plates(table: &OccupancyTable, t: &IntPeriodic, v: ZPoint) -> PlateFamily {
    assert!(!v.is_zero(), "earthquake direction must be nonzero");
    let mut diffs = BTreeSet::new();
    for i in 0..table.face_count() {
        diffs.extend(differences(table.cells(i), table.cells(i), &[v, -v]));
    }
    let diffs: Vec<ZPoint> = diffs.into_iter().collect();
    PlateFamily { direction: v, graph: ClassGraph::build(t, &diffs) }
}

fn coset_included(x: ZPoint, g: Subgroup, pieces: &[ScaledPiece]) -> bool {
    // cosets of infinite index in x + G cannot help cover it
    let relevant: Vec<&ScaledPiece> = pieces.iter().filter(|p| g.intersect(&p.group).rank() == g.rank()).collect();
    if relevant.is_empty() {
        return false;
    }
    let k = relevant.iter().fold(g, |acc, p| acc.intersect(&p.group));
    let reps: Vec<ZPoint> = match (g, k) {
        (Subgroup::Full(outer), Subgroup::Full(inner)) => coset_reps(&outer, &inner),
        (Subgroup::Line(a), Subgroup::Line(b)) => {
            let m = if a.x != 0 { b.x / a.x } else { b.y / a.y }.abs();
            (0..m).map(|i| a * i).collect()
        }
        _ => vec![ZPoint::ZERO],
    };
    reps.into_iter().all(|r| relevant.iter().any(|p| p.contains(x + r)))
}

fn pieces_included(a: &[ScaledPiece], b: &[ScaledPiece]) -> bool {
    a.iter().all(|p| p.base.iter().all(|&x| coset_included(x, p.group, b)))
}

/// Anything that describes a point set as a finite union of pieces.
pub trait PieceSet {
    fn pieces(&self) -> Vec<Piece>;
}

impl PieceSet for TilingDesc {
    fn pieces(&self) -> Vec<Piece> {
        TilingDesc::pieces(self)
    }
}

impl PieceSet for Piece {
    fn pieces(&self) -> Vec<Piece> {
        vec![self.clone()]
    }
}

impl PieceSet for [Piece] {
    fn pieces(&self) -> Vec<Piece> {
        self.to_vec()
    }
}

/// Exact test of `S + h = S`.
pub fn check_periodicity<S: PieceSet + ?Sized>(s: &S, h: &RPoint) -> bool {
    let pieces = s.pieces();
    let mut scale = 1i64;
    for p in pieces.iter().chain(std::iter::once(&Piece { base: vec![h.clone()], periods: vec![] })) {
        scale = num_integer::lcm(scale, p.denominator().expect("denominator fits in i64"));
    }
    let Ok(set) = pieces.iter().map(|p| p.scaled(scale)).collect::<Result<Vec<_>, _>>() else { return false };
    let hz = h.scale(&Rational::from_integer(scale.into())).to_zpoint().expect("scaled to an integer");
    let shift = |d: ZPoint| -> Vec<ScaledPiece> {
        set.iter().map(|p| ScaledPiece::new(p.base.iter().map(|&b| b + d).collect(), p.group)).collect()
    };
    pieces_included(&shift(hz), &set) && pieces_included(&shift(-hz), &set)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecePeriod {
    pub piece: usize,
    pub period: RPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Periodicity {
    NotPeriodic,
    SinglyPeriodic(RPoint),
    WeaklyPeriodic(Vec<PiecePeriod>),
    DoublyPeriodic(RPoint, RPoint),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicityReport {
    pub classification: Periodicity,
    /// One verified period for every piece that has one.
    pub pieces: Vec<PiecePeriod>,
}

/// Classifies a described set by the periods common to all of its pieces,
/// and lists one verified period per piece. Every reported period is checked
/// with [`check_periodicity`].
pub fn weak_periodic_report(t: &TilingDesc) -> Result<PeriodicityReport, StructureError> {
    let pieces = t.pieces();
    let scale = t.denominator()?;
    let scaled = t.scaled_pieces(scale)?;
    let inv = Rational::from_integer(scale.into()).recip();
    let real = |p: ZPoint| RPoint::from(p).scale(&inv);
    let verified = |s: &dyn Fn(&RPoint) -> bool, p: RPoint| -> Result<RPoint, StructureError> {
        if s(&p) {
            Ok(p)
        } else {
            Err(StructureError::InvariantViolation(format!("reported period {p:?} does not hold")))
        }
    };
    let preferred = match t {
        TilingDesc::Sheared { direction, .. } => Some(*direction),
        TilingDesc::Periodic { .. } => None,
    };
    let mut piece_periods = Vec::new();
    for (i, sp) in scaled.iter().enumerate() {
        let along = preferred.map(|d| sp.group.intersect(&Subgroup::Line(d)));
        let g = match along {
            Some(Subgroup::Line(h)) => Some(h),
            _ => sp.group.generators().first().copied(),
        };
        if let Some(g) = g {
            let period = verified(&|h| check_periodicity(&pieces[i], h), real(g))?;
            piece_periods.push(PiecePeriod { piece: i, period });
        }
    }
    let common = scaled.iter().skip(1).fold(scaled[0].group, |acc, p| acc.intersect(&p.group));
    let whole = |h: &RPoint| check_periodicity(t, h);
    let classification = match common {
        Subgroup::Full(l) => {
            let [a, b] = l.basis();
            Periodicity::DoublyPeriodic(verified(&whole, real(a))?, verified(&whole, real(b))?)
        }
        Subgroup::Line(h) => Periodicity::SinglyPeriodic(verified(&whole, real(h))?),
        Subgroup::Zero if piece_periods.len() == pieces.len() => Periodicity::WeaklyPeriodic(piece_periods.clone()),
        Subgroup::Zero => Periodicity::NotPeriodic,
    };
    Ok(PeriodicityReport { classification, pieces: piece_periods })
}
