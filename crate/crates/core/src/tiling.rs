//! Finite descriptions of infinite translate sets: a periodic form
//! `base ⊕ Λ` with a rational lattice, and a sheared form made of
//! singly or doubly periodic components slid along a common direction.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::geometry::{format_rational, parse_point, parse_rational, point_strings, rat, RPoint, Rational};
use crate::lattice::{gcd, Lattice, Subgroup, ZPoint};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DescError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invalid description: {0}")]
    Invalid(String),
    #[error("description has no finite verification window: {0}")]
    WindowTooSmall(String),
    #[error("translate set is not contained in Z²")]
    NotInteger,
    #[error("components overlap at {0}")]
    Overlap(String),
}

/// A full-rank lattice `hnf / denom` with rational periods, in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RatLattice {
    hnf: Lattice,
    denom: i64,
}

impl RatLattice {
    pub fn new(hnf: Lattice, denom: i64) -> Self {
        assert!(denom >= 1);
        let g = gcd(gcd(gcd(hnf.a(), hnf.b()), hnf.d()), denom);
        let hnf = Lattice::new(hnf.a() / g, hnf.b() / g, hnf.d() / g).expect("still HNF");
        RatLattice { hnf, denom: denom / g }
    }

    pub fn integer(hnf: Lattice) -> Self {
        RatLattice::new(hnf, 1)
    }

    pub fn from_periods(u: &RPoint, v: &RPoint) -> Result<Self, DescError> {
        let denom = common_denominator([u, v].into_iter())?;
        let zu = scale_to_int(u, denom)?;
        let zv = scale_to_int(v, denom)?;
        match Subgroup::from_generators([zu, zv]) {
            Subgroup::Full(l) if zu.cross(zv).abs() == l.index() => Ok(RatLattice::new(l, denom)),
            _ => Err(DescError::Invalid("periods are linearly dependent".into())),
        }
    }

    pub fn hnf(&self) -> &Lattice {
        &self.hnf
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// The HNF columns as rational vectors.
    pub fn periods(&self) -> [RPoint; 2] {
        let [u, v] = self.hnf.basis();
        [int_over(u, self.denom), int_over(v, self.denom)]
    }

    /// The integer lattice `scale * self`; `scale` must be a multiple of the denominator.
    pub fn scaled_to(&self, scale: i64) -> Lattice {
        assert_eq!(scale % self.denom, 0);
        self.hnf.scale(scale / self.denom)
    }
}

fn int_over(p: ZPoint, denom: i64) -> RPoint {
    RPoint::new(Rational::new(p.x.into(), denom.into()), Rational::new(p.y.into(), denom.into()))
}

fn common_denominator<'a>(pts: impl Iterator<Item = &'a RPoint>) -> Result<i64, DescError> {
    let mut l = BigInt::one();
    for p in pts {
        l = l.lcm(p.x.denom()).lcm(p.y.denom());
    }
    l.to_i64().ok_or_else(|| DescError::Invalid("denominators too large".into()))
}

fn scale_to_int(p: &RPoint, scale: i64) -> Result<ZPoint, DescError> {
    p.scale(&rat(scale)).to_zpoint().ok_or(DescError::NotInteger)
}

/// A component `T_i`: the points `b + s_i·v̂ + span_Z(periods)` for `b` in `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub base: Vec<RPoint>,
    /// Zero, one or two independent periods.
    pub periods: Vec<RPoint>,
    pub slide_offset: Rational,
}

impl Component {
    /// The component with its slide applied along `direction`.
    pub fn piece(&self, direction: ZPoint) -> Piece {
        let shift = RPoint::from(direction).scale(&self.slide_offset);
        Piece { base: self.base.iter().map(|b| b + &shift).collect(), periods: self.periods.clone() }
    }
}

/// A set `base ⊕ span_Z(periods)` with all offsets already applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub base: Vec<RPoint>,
    pub periods: Vec<RPoint>,
}

impl Piece {
    pub fn denominator(&self) -> Result<i64, DescError> {
        common_denominator(self.base.iter().chain(self.periods.iter()))
    }

    /// The piece multiplied by `scale`, as integer points and a subgroup of Z².
    pub fn scaled(&self, scale: i64) -> Result<ScaledPiece, DescError> {
        let base = self.base.iter().map(|b| scale_to_int(b, scale)).collect::<Result<Vec<_>, _>>()?;
        let gens = self.periods.iter().map(|p| scale_to_int(p, scale)).collect::<Result<Vec<_>, _>>()?;
        let group = Subgroup::from_generators(gens.iter().copied());
        if group.rank() != gens.len() {
            return Err(DescError::Invalid("component periods are not independent".into()));
        }
        Ok(ScaledPiece::new(base, group))
    }

    pub fn translate(&self, by: &RPoint) -> Piece {
        Piece { base: self.base.iter().map(|b| b + by).collect(), periods: self.periods.clone() }
    }
}

/// An integer piece `base ⊕ group`, with base points reduced to canonical coset representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledPiece {
    pub base: Vec<ZPoint>,
    pub group: Subgroup,
}

impl ScaledPiece {
    pub fn new(base: Vec<ZPoint>, group: Subgroup) -> Self {
        let base: BTreeSet<ZPoint> = base.into_iter().map(|b| group.reduce(b)).collect();
        ScaledPiece { base: base.into_iter().collect(), group }
    }

    pub fn contains(&self, p: ZPoint) -> bool {
        let r = self.group.reduce(p);
        self.base.binary_search(&r).is_ok()
    }

    /// All points of the piece in the closed box `[lo, hi]`, sorted.
    pub fn points_in_box(&self, lo: ZPoint, hi: ZPoint) -> Vec<ZPoint> {
        let inside = |p: &ZPoint| p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
        let mut out = Vec::new();
        for &b in &self.base {
            match self.group {
                Subgroup::Zero => {
                    if inside(&b) {
                        out.push(b)
                    }
                }
                Subgroup::Line(h) => {
                    let (s, l, u) =
                        if h.x != 0 { (h.x, lo.x - b.x, hi.x - b.x) } else { (h.y, lo.y - b.y, hi.y - b.y) };
                    let (k0, k1) = if s > 0 {
                        (l.div_euclid(s) - 1, u.div_euclid(s) + 1)
                    } else {
                        (u.div_euclid(s) - 1, l.div_euclid(s) + 1)
                    };
                    out.extend((k0..=k1).map(|k| b + h * k).filter(inside));
                }
                Subgroup::Full(lat) => {
                    let (a, bb, d) = (lat.a(), lat.b(), lat.d());
                    let n0 = (lo.y - b.y).div_euclid(d);
                    let n1 = (hi.y - b.y).div_euclid(d) + 1;
                    for n in n0..=n1 {
                        let y = b.y + n * d;
                        if y < lo.y || y > hi.y {
                            continue;
                        }
                        let start = b.x + n * bb;
                        let m0 = (lo.x - start).div_euclid(a);
                        let mut x = start + m0 * a;
                        while x <= hi.x {
                            if x >= lo.x {
                                out.push(ZPoint::new(x, y));
                            }
                            x += a;
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }
}

/// A translate set `T ⊂ Z²` in periodic form: base points reduced into the
/// fundamental domain of the lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPeriodic {
    lattice: Lattice,
    base: Vec<ZPoint>,
}

impl IntPeriodic {
    /// Fails with [`DescError::Overlap`] when two base points are congruent.
    pub fn new(lattice: Lattice, base: impl IntoIterator<Item = ZPoint>) -> Result<Self, DescError> {
        let mut reduced: Vec<ZPoint> = base.into_iter().map(|b| lattice.reduce(b)).collect();
        reduced.sort();
        if let Some(w) = reduced.windows(2).find(|w| w[0] == w[1]) {
            return Err(DescError::Overlap(w[0].to_string()));
        }
        Ok(IntPeriodic { lattice, base: reduced })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn base(&self) -> &[ZPoint] {
        &self.base
    }

    pub fn contains(&self, p: ZPoint) -> bool {
        self.base.binary_search(&self.lattice.reduce(p)).is_ok()
    }

    pub fn as_piece(&self) -> ScaledPiece {
        ScaledPiece::new(self.base.clone(), Subgroup::Full(self.lattice))
    }

    /// The same set over the lattice `sub`, which must be a sublattice of this one.
    pub fn refine(&self, sub: &Lattice) -> IntPeriodic {
        let reps = coset_reps(&self.lattice, sub);
        let mut base: Vec<ZPoint> =
            self.base.iter().flat_map(|&b| reps.iter().map(move |&r| sub.reduce(b + r))).collect();
        base.sort();
        IntPeriodic { lattice: *sub, base }
    }

    /// The same set over its full period lattice, so equal sets compare equal.
    pub fn minimize(&self) -> IntPeriodic {
        let Some(&b0) = self.base.first() else { return self.clone() };
        let mut gens = self.lattice.basis().to_vec();
        for &b in &self.base {
            let p = b - b0;
            if self.base.iter().all(|&x| self.contains(x + p)) {
                gens.push(p);
            }
        }
        let Subgroup::Full(lat) = Subgroup::from_generators(gens) else { unreachable!("contains a full lattice") };
        let mut base: Vec<ZPoint> = self.base.iter().map(|&b| lat.reduce(b)).collect();
        base.sort();
        base.dedup();
        IntPeriodic { lattice: lat, base }
    }

    pub fn to_desc(&self, denom: i64) -> TilingDesc {
        TilingDesc::Periodic {
            base: self.base.iter().map(|&b| int_over(b, denom)).collect(),
            lattice: RatLattice::new(self.lattice, denom),
        }
    }
}

/// Representatives of `outer / inner` for a sublattice `inner ⊂ outer`.
pub fn coset_reps(outer: &Lattice, inner: &Lattice) -> Vec<ZPoint> {
    let gens = outer.basis();
    let mut seen = HashSet::from([ZPoint::ZERO]);
    let mut queue = VecDeque::from([ZPoint::ZERO]);
    let mut out = vec![ZPoint::ZERO];
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = inner.reduce(p + g);
            if seen.insert(q) {
                queue.push_back(q);
                out.push(q);
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TilingDesc {
    Periodic {
        base: Vec<RPoint>,
        lattice: RatLattice,
    },
    /// Components slid along the primitive integer `direction`.
    Sheared {
        direction: ZPoint,
        components: Vec<Component>,
    },
}

impl TilingDesc {
    pub fn lattice_tiling(lattice: Lattice) -> Self {
        TilingDesc::Periodic { base: vec![RPoint::zero()], lattice: RatLattice::integer(lattice) }
    }

    pub fn pieces(&self) -> Vec<Piece> {
        match self {
            TilingDesc::Periodic { base, lattice } => {
                vec![Piece { base: base.clone(), periods: lattice.periods().to_vec() }]
            }
            TilingDesc::Sheared { direction, components } => components.iter().map(|c| c.piece(*direction)).collect(),
        }
    }

    /// Least common denominator of every coordinate in the description.
    pub fn denominator(&self) -> Result<i64, DescError> {
        let mut l = 1i64;
        for p in self.pieces() {
            l = num_integer::lcm(l, p.denominator()?);
        }
        Ok(l)
    }

    /// The description multiplied by `scale`, piece by piece.
    pub fn scaled_pieces(&self, scale: i64) -> Result<Vec<ScaledPiece>, DescError> {
        self.pieces().iter().map(|p| p.scaled(scale)).collect()
    }

    pub fn contains(&self, p: &RPoint) -> bool {
        self.pieces().iter().any(|piece| {
            let Ok(d) = piece.denominator() else { return false };
            let d = num_integer::lcm(d, common_denominator(std::iter::once(p)).unwrap_or(1));
            match (piece.scaled(d), scale_to_int(p, d)) {
                (Ok(sp), Ok(z)) => sp.contains(z),
                _ => false,
            }
        })
    }

    /// Periodic form of `scale * T` over the intersection of all component lattices.
    pub fn to_scaled_periodic(&self, scale: i64) -> Result<IntPeriodic, DescError> {
        let pieces = self.scaled_pieces(scale)?;
        let mut common: Option<Lattice> = None;
        for p in &pieces {
            match p.group {
                Subgroup::Full(l) => common = Some(common.map_or(l, |c| c.intersect(&l))),
                _ => {
                    return Err(DescError::WindowTooSmall("a component has fewer than two independent periods".into()))
                }
            }
        }
        let lat = common.ok_or_else(|| DescError::WindowTooSmall("empty description".into()))?;
        let mut base = Vec::new();
        for p in &pieces {
            let Subgroup::Full(l) = p.group else { unreachable!() };
            let reps = coset_reps(&l, &lat);
            base.extend(p.base.iter().flat_map(|&b| reps.iter().map(move |&r| b + r)));
        }
        IntPeriodic::new(lat, base)
    }

    /// Periodic form of `T`, which must lie in Z².
    pub fn to_int_periodic(&self) -> Result<IntPeriodic, DescError> {
        if self.denominator()? != 1 {
            return Err(DescError::NotInteger);
        }
        self.to_scaled_periodic(1)
    }

    pub fn translate(&self, by: &RPoint) -> TilingDesc {
        match self {
            TilingDesc::Periodic { base, lattice } => {
                TilingDesc::Periodic { base: base.iter().map(|b| b + by).collect(), lattice: *lattice }
            }
            TilingDesc::Sheared { direction, components } => TilingDesc::Sheared {
                direction: *direction,
                components: components
                    .iter()
                    .map(|c| Component {
                        base: c.base.iter().map(|b| b + by).collect(),
                        periods: c.periods.clone(),
                        slide_offset: c.slide_offset.clone(),
                    })
                    .collect(),
            },
        }
    }

    /// Some point of the set: the smallest base point of the first piece.
    pub fn some_point(&self) -> Option<RPoint> {
        self.pieces().into_iter().flat_map(|p| p.base).min()
    }

    pub fn from_json(text: &[u8]) -> Result<Self, DescError> {
        let raw: RawDesc = serde_json::from_slice(text).map_err(|e| DescError::Syntax(e.to_string()))?;
        let points = |v: &[[String; 2]]| -> Result<Vec<RPoint>, DescError> {
            v.iter().map(|p| parse_point(p).map_err(|e| DescError::Syntax(e.to_string()))).collect()
        };
        match raw {
            RawDesc::Periodic { base, periods } => {
                let base = points(&base)?;
                let periods = points(&periods)?;
                if base.is_empty() {
                    return Err(DescError::Invalid("empty base".into()));
                }
                if periods.len() != 2 {
                    return Err(DescError::Invalid("periodic form needs exactly two periods".into()));
                }
                let lattice = RatLattice::from_periods(&periods[0], &periods[1])?;
                Ok(TilingDesc::Periodic { base, lattice })
            }
            RawDesc::Sheared { direction, components } => {
                let direction = ZPoint::from(direction);
                if direction.is_zero() || direction.primitive() != direction {
                    return Err(DescError::Invalid("direction must be a primitive integer vector".into()));
                }
                let mut out = Vec::with_capacity(components.len());
                for c in components {
                    let periods = points(&c.periods)?;
                    if periods.len() > 2 {
                        return Err(DescError::Invalid("a component has at most two periods".into()));
                    }
                    if periods.len() == 2 && periods[0].cross(&periods[1]).is_zero() {
                        return Err(DescError::Invalid("component periods are linearly dependent".into()));
                    }
                    if periods.iter().any(|p| p.x.is_zero() && p.y.is_zero()) {
                        return Err(DescError::Invalid("zero period".into()));
                    }
                    let slide_offset = parse_rational(&c.slide_offset).map_err(|e| DescError::Syntax(e.to_string()))?;
                    out.push(Component { base: points(&c.base)?, periods, slide_offset });
                }
                if out.is_empty() {
                    return Err(DescError::Invalid("no components".into()));
                }
                Ok(TilingDesc::Sheared { direction, components: out })
            }
        }
    }

    pub fn to_json(&self) -> String {
        let strings = |v: &[RPoint]| v.iter().map(point_strings).collect::<Vec<_>>();
        let raw = match self {
            TilingDesc::Periodic { base, lattice } => {
                RawDesc::Periodic { base: strings(base), periods: strings(&lattice.periods()) }
            }
            TilingDesc::Sheared { direction, components } => RawDesc::Sheared {
                direction: (*direction).into(),
                components: components
                    .iter()
                    .map(|c| RawComponent {
                        base: strings(&c.base),
                        periods: strings(&c.periods),
                        slide_offset: format_rational(&c.slide_offset),
                    })
                    .collect(),
            },
        };
        serde_json::to_string(&raw).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawDesc {
    Periodic { base: Vec<[String; 2]>, periods: Vec<[String; 2]> },
    Sheared { direction: [i64; 2], components: Vec<RawComponent> },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    base: Vec<[String; 2]>,
    #[serde(default)]
    periods: Vec<[String; 2]>,
    #[serde(default = "zero_string")]
    slide_offset: String,
}

fn zero_string() -> String {
    "0".into()
}

/// Columns of unit squares `{c} × Z`, `c = 0 .. offsets.len()`, with column
/// `c` slid vertically by `offsets[c]`, repeated with x-period `offsets.len()`.
pub fn column_shifted(offsets: &[Rational]) -> TilingDesc {
    let p = offsets.len() as i64;
    TilingDesc::Sheared {
        direction: ZPoint::new(0, 1),
        components: offsets
            .iter()
            .enumerate()
            .map(|(c, s)| Component {
                base: vec![RPoint::from_ints(c as i64, 0)],
                periods: vec![RPoint::from_ints(p, 0), RPoint::from_ints(0, 1)],
                slide_offset: s.clone(),
            })
            .collect(),
    }
}

/// The transpose of a description: `(x, y) ↦ (y, x)`.
pub fn transpose(t: &TilingDesc) -> TilingDesc {
    let sw = |p: &RPoint| RPoint::new(p.y.clone(), p.x.clone());
    match t {
        TilingDesc::Periodic { base, lattice } => {
            let [u, v] = lattice.periods();
            TilingDesc::Periodic {
                base: base.iter().map(sw).collect(),
                lattice: RatLattice::from_periods(&sw(&u), &sw(&v)).expect("transpose of a lattice"),
            }
        }
        TilingDesc::Sheared { direction, components } => TilingDesc::Sheared {
            direction: ZPoint::new(direction.y, direction.x),
            components: components
                .iter()
                .map(|c| Component {
                    base: c.base.iter().map(sw).collect(),
                    periods: c.periods.iter().map(sw).collect(),
                    slide_offset: c.slide_offset.clone(),
                })
                .collect(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ratio;

    #[test]
    fn rational_lattice_is_reduced() {
        let l = RatLattice::from_periods(&RPoint::new(ratio(1, 2), rat(0)), &RPoint::new(rat(0), ratio(1, 2))).unwrap();
        assert_eq!((l.denom(), *l.hnf()), (2, Lattice::integer()));
        let l = RatLattice::from_periods(&RPoint::from_ints(2, 0), &RPoint::from_ints(4, 2)).unwrap();
        assert_eq!((l.denom(), *l.hnf()), (1, Lattice::new(2, 0, 2).unwrap()));
        assert!(RatLattice::from_periods(&RPoint::from_ints(1, 1), &RPoint::from_ints(2, 2)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = column_shifted(&[rat(0), ratio(1, 2)]);
        let text = t.to_json();
        assert_eq!(
            text,
            r#"{"kind":"sheared","direction":[0,1],"components":[{"base":[["0","0"]],"periods":[["2","0"],["0","1"]],"slide_offset":"0"},{"base":[["1","0"]],"periods":[["2","0"],["0","1"]],"slide_offset":"1/2"}]}"#
        );
        assert_eq!(TilingDesc::from_json(text.as_bytes()).unwrap(), t);
        let p = TilingDesc::from_json(br#"{"kind":"periodic","base":[["0","0"]],"periods":[["1","1"],["3","0"]]}"#)
            .unwrap();
        assert_eq!(p.to_json(), r#"{"kind":"periodic","base":[["0","0"]],"periods":[["3","0"],["1","1"]]}"#);
        assert!(TilingDesc::from_json(br#"{"kind":"periodic","base":[],"periods":[]}"#).is_err());
        assert!(TilingDesc::from_json(br#"{"kind":"sheared","direction":[0,2],"components":[]}"#).is_err());
    }

    #[test]
    fn sheared_to_periodic() {
        let t = column_shifted(&[rat(0), ratio(1, 2)]);
        assert_eq!(t.denominator().unwrap(), 2);
        let p = t.to_scaled_periodic(2).unwrap();
        assert_eq!(*p.lattice(), Lattice::new(4, 0, 2).unwrap());
        assert_eq!(p.base(), &[ZPoint::new(0, 0), ZPoint::new(2, 1)]);
        assert_eq!(t.to_int_periodic(), Err(DescError::NotInteger));
        assert!(t.contains(&RPoint::new(rat(1), ratio(7, 2))));
        assert!(!t.contains(&RPoint::new(rat(1), rat(3))));
    }

    #[test]
    fn overlapping_components_are_rejected() {
        let t = column_shifted(&[rat(0), rat(-1)]);
        assert!(t.to_int_periodic().is_ok());
        let bad = TilingDesc::Sheared {
            direction: ZPoint::new(0, 1),
            components: vec![
                Component {
                    base: vec![RPoint::zero()],
                    periods: vec![RPoint::from_ints(1, 0), RPoint::from_ints(0, 1)],
                    slide_offset: rat(0),
                },
                Component {
                    base: vec![RPoint::zero()],
                    periods: vec![RPoint::from_ints(2, 0), RPoint::from_ints(0, 1)],
                    slide_offset: rat(0),
                },
            ],
        };
        assert!(matches!(bad.to_int_periodic(), Err(DescError::Overlap(_))));
    }

    #[test]
    fn rank_one_components_have_no_window() {
        let t = TilingDesc::Sheared {
            direction: ZPoint::new(0, 1),
            components: vec![Component {
                base: vec![RPoint::zero()],
                periods: vec![RPoint::from_ints(0, 1)],
                slide_offset: rat(0),
            }],
        };
        assert!(matches!(t.to_int_periodic(), Err(DescError::WindowTooSmall(_))));
    }

    #[test]
    fn box_enumeration_matches_membership() {
        let pieces = [
            ScaledPiece::new(
                vec![ZPoint::new(1, 2), ZPoint::new(0, 0)],
                Subgroup::Full(Lattice::new(3, 1, 2).unwrap()),
            ),
            ScaledPiece::new(vec![ZPoint::new(1, 2)], Subgroup::Line(ZPoint::new(2, -1))),
            ScaledPiece::new(vec![ZPoint::new(1, 2)], Subgroup::Line(ZPoint::new(0, 3))),
            ScaledPiece::new(vec![ZPoint::new(1, 2)], Subgroup::Zero),
        ];
        let (lo, hi) = (ZPoint::new(-5, -4), ZPoint::new(6, 7));
        for p in &pieces {
            let mut brute = Vec::new();
            for x in lo.x..=hi.x {
                for y in lo.y..=hi.y {
                    if p.contains(ZPoint::new(x, y)) {
                        brute.push(ZPoint::new(x, y));
                    }
                }
            }
            assert_eq!(p.points_in_box(lo, hi), brute, "{p:?}");
        }
    }

    #[test]
    fn minimal_form_of_a_lattice_tiling() {
        let t = IntPeriodic::new(Lattice::new(2, 0, 1).unwrap(), [ZPoint::ZERO, ZPoint::new(1, 0)]).unwrap();
        assert_eq!(t.minimize(), IntPeriodic::new(Lattice::integer(), [ZPoint::ZERO]).unwrap());
        let s = IntPeriodic::new(Lattice::new(4, 0, 1).unwrap(), [ZPoint::ZERO, ZPoint::new(1, 0)]).unwrap();
        assert_eq!(s.minimize(), s);
    }

    #[test]
    fn refinement_preserves_the_set() {
        let t = IntPeriodic::new(Lattice::new(3, 1, 1).unwrap(), [ZPoint::ZERO]).unwrap();
        let sub = Lattice::new(3, 0, 3).unwrap();
        let r = t.refine(&sub);
        assert_eq!(r.base().len(), 3);
        for x in -4..5 {
            for y in -4..5 {
                assert_eq!(t.contains(ZPoint::new(x, y)), r.contains(ZPoint::new(x, y)));
            }
        }
    }
}
