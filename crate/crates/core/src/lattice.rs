//! Integer points, full-rank sublattices of Z² in Hermite normal form, and
//! subgroups of Z² of any rank.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct ZPoint {
    pub x: i64,
    pub y: i64,
}

impl ZPoint {
    pub const ZERO: ZPoint = ZPoint { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        ZPoint { x, y }
    }

    pub fn dot(self, o: ZPoint) -> i64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: ZPoint) -> i64 {
        self.x * o.y - self.y * o.x
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// The primitive vector in the same direction.
    pub fn primitive(self) -> ZPoint {
        let g = gcd(self.x, self.y);
        if g == 0 {
            self
        } else {
            ZPoint::new(self.x / g, self.y / g)
        }
    }

    /// `self` or `-self`, whichever points into the upper half-plane (or along +x).
    pub fn canonical_sign(self) -> ZPoint {
        if self.y < 0 || (self.y == 0 && self.x < 0) {
            -self
        } else {
            self
        }
    }
}

impl From<[i64; 2]> for ZPoint {
    fn from(v: [i64; 2]) -> Self {
        ZPoint::new(v[0], v[1])
    }
}

impl From<ZPoint> for [i64; 2] {
    fn from(p: ZPoint) -> Self {
        [p.x, p.y]
    }
}

impl From<(i64, i64)> for ZPoint {
    fn from(v: (i64, i64)) -> Self {
        ZPoint::new(v.0, v.1)
    }
}

impl fmt::Debug for ZPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for ZPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for ZPoint {
    type Output = ZPoint;
    fn add(self, o: ZPoint) -> ZPoint {
        ZPoint::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for ZPoint {
    fn add_assign(&mut self, o: ZPoint) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for ZPoint {
    type Output = ZPoint;
    fn sub(self, o: ZPoint) -> ZPoint {
        ZPoint::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for ZPoint {
    type Output = ZPoint;
    fn neg(self) -> ZPoint {
        ZPoint::new(-self.x, -self.y)
    }
}

impl Mul<i64> for ZPoint {
    type Output = ZPoint;
    fn mul(self, k: i64) -> ZPoint {
        ZPoint::new(self.x * k, self.y * k)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        (a / gcd(a, b) * b).abs()
    }
}

/// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Sum of the divisors of `n`: the number of sublattices of Z² of index `n`.
pub fn divisor_sum(n: u64) -> u64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).sum()
}

/// A full-rank sublattice of Z² in Hermite normal form `[[a, b], [0, d]]`,
/// generated by the columns `(a, 0)` and `(b, d)`, with `a, d >= 1` and `0 <= b < a`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[[i64; 2]; 2]", into = "[[i64; 2]; 2]")]
pub struct Lattice {
    a: i64,
    b: i64,
    d: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a Hermite normal form: {0}")]
pub struct HnfError(String);

impl TryFrom<[[i64; 2]; 2]> for Lattice {
    type Error = HnfError;
    fn try_from(m: [[i64; 2]; 2]) -> Result<Self, HnfError> {
        if m[1][0] != 0 {
            return Err(HnfError(format!("lower-left entry {} must be 0", m[1][0])));
        }
        Lattice::new(m[0][0], m[0][1], m[1][1])
    }
}

impl From<Lattice> for [[i64; 2]; 2] {
    fn from(l: Lattice) -> Self {
        [[l.a, l.b], [0, l.d]]
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [0, {}]]", self.a, self.b, self.d)
    }
}

impl Lattice {
    pub fn new(a: i64, b: i64, d: i64) -> Result<Self, HnfError> {
        if a < 1 || d < 1 || b < 0 || b >= a {
            return Err(HnfError(format!("[[{a}, {b}], [0, {d}]]")));
        }
        Ok(Lattice { a, b, d })
    }

    pub fn integer() -> Self {
        Lattice { a: 1, b: 0, d: 1 }
    }

    /// `k Z²`.
    pub fn scaled_integer(k: i64) -> Self {
        Lattice::new(k, 0, k).expect("positive scale")
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn index(&self) -> i64 {
        self.a * self.d
    }

    pub fn basis(&self) -> [ZPoint; 2] {
        [ZPoint::new(self.a, 0), ZPoint::new(self.b, self.d)]
    }

    /// The lattice generated by two integer vectors, if they are independent.
    pub fn from_basis(u: ZPoint, v: ZPoint) -> Option<Self> {
        if u.cross(v) == 0 {
            return None;
        }
        match Subgroup::from_generators([u, v]) {
            Subgroup::Full(l) => Some(l),
            _ => None,
        }
    }

    /// Canonical representative of `p` modulo the lattice, in `[0, a) x [0, d)`.
    pub fn reduce(&self, p: ZPoint) -> ZPoint {
        let n = p.y.div_euclid(self.d);
        let y = p.y - n * self.d;
        let x = (p.x - n * self.b).rem_euclid(self.a);
        ZPoint::new(x, y)
    }

    pub fn contains(&self, p: ZPoint) -> bool {
        self.reduce(p) == ZPoint::ZERO
    }

    /// Coordinates `(m, n)` of a lattice vector in the HNF basis.
    pub fn coordinates(&self, p: ZPoint) -> Option<(i64, i64)> {
        if p.y % self.d != 0 {
            return None;
        }
        let n = p.y / self.d;
        let rest = p.x - n * self.b;
        if rest % self.a != 0 {
            return None;
        }
        Some((rest / self.a, n))
    }

    /// Dense index of a point in the fundamental domain `[0, a) x [0, d)`.
    pub fn cell_index(&self, p: ZPoint) -> usize {
        let r = self.reduce(p);
        (r.y * self.a + r.x) as usize
    }

    /// Points of the fundamental domain in row-major order (`y` outer, `x` inner).
    pub fn fundamental_domain(&self) -> impl Iterator<Item = ZPoint> + '_ {
        (0..self.d).flat_map(move |y| (0..self.a).map(move |x| ZPoint::new(x, y)))
    }

    pub fn scale(&self, k: i64) -> Lattice {
        Lattice::new(self.a * k, self.b * k, self.d * k).expect("positive scale")
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        let a = lcm(self.a, other.a);
        let step = lcm(self.d, other.d);
        let mut y = step;
        loop {
            // (x, y) in L1 iff x ≡ b1 * (y / d1) mod a1
            let r1 = (self.b * (y / self.d)).rem_euclid(self.a);
            let r2 = (other.b * (y / other.d)).rem_euclid(other.a);
            if let Some(x) = crt(r1, self.a, r2, other.a) {
                return Lattice::new(a, x.rem_euclid(a), y).expect("intersection is full rank");
            }
            y += step;
        }
    }

    /// Smallest `m > 0` with `m * v` in the lattice.
    pub fn order_of(&self, v: ZPoint) -> i64 {
        assert!(!v.is_zero());
        (1..=self.index()).find(|&m| self.contains(v * m)).expect("index annihilates Z²/L")
    }
}

/// Solves `x ≡ r1 (mod m1)`, `x ≡ r2 (mod m2)`.
fn crt(r1: i64, m1: i64, r2: i64, m2: i64) -> Option<i64> {
    let (g, s, _) = ext_gcd(m1, m2);
    if (r2 - r1) % g != 0 {
        return None;
    }
    let l = m1 / g * m2;
    let k = ((r2 - r1) / g) as i128 * s as i128 % (m2 / g) as i128;
    let x = r1 as i128 + m1 as i128 * k;
    Some(x.rem_euclid(l as i128) as i64)
}

/// All HNF lattices of index exactly `n`, ordered by `(a, b)`.
pub fn lattices_of_index(n: i64) -> impl Iterator<Item = Lattice> {
    (1..=n).filter(move |a| n % a == 0).flat_map(move |a| (0..a).map(move |b| Lattice { a, b, d: n / a }))
}

/// Every HNF lattice of index `<= max_index`, ordered by `(index, a, b)`.
pub fn enumerate_lattices(max_index: i64) -> impl Iterator<Item = Lattice> {
    (1..=max_index).flat_map(lattices_of_index)
}

/// A subgroup of Z² of rank 0, 1 or 2 in canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subgroup {
    Zero,
    /// Multiples of one nonzero generator (canonical sign).
    Line(ZPoint),
    Full(Lattice),
}

impl Subgroup {
    pub fn from_generators(gens: impl IntoIterator<Item = ZPoint>) -> Subgroup {
        let mut y_gen: Option<ZPoint> = None;
        let mut x_gcd = 0i64;
        for g in gens {
            if g.is_zero() {
                continue;
            }
            if g.y == 0 {
                x_gcd = gcd(x_gcd, g.x);
                continue;
            }
            match y_gen {
                None => y_gen = Some(g),
                Some(w) => {
                    let (gg, s, t) = ext_gcd(w.y, g.y);
                    let combined = w * s + g * t;
                    let flat = w * (g.y / gg) - g * (w.y / gg);
                    debug_assert_eq!(flat.y, 0);
                    x_gcd = gcd(x_gcd, flat.x);
                    y_gen = Some(combined);
                }
            }
        }
        match (y_gen, x_gcd) {
            (None, 0) => Subgroup::Zero,
            (None, a) => Subgroup::Line(ZPoint::new(a, 0)),
            (Some(w), 0) => Subgroup::Line(w.canonical_sign()),
            (Some(w), a) => {
                let w = if w.y < 0 { -w } else { w };
                Subgroup::Full(Lattice::new(a, w.x.rem_euclid(a), w.y).expect("valid HNF"))
            }
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Subgroup::Zero => 0,
            Subgroup::Line(_) => 1,
            Subgroup::Full(_) => 2,
        }
    }

    pub fn generators(&self) -> Vec<ZPoint> {
        match self {
            Subgroup::Zero => vec![],
            Subgroup::Line(h) => vec![*h],
            Subgroup::Full(l) => l.basis().to_vec(),
        }
    }

    /// Canonical coset representative of `p`.
    pub fn reduce(&self, p: ZPoint) -> ZPoint {
        match self {
            Subgroup::Zero => p,
            Subgroup::Line(h) => p - *h * p.dot(*h).div_euclid(h.dot(*h)),
            Subgroup::Full(l) => l.reduce(p),
        }
    }

    pub fn contains(&self, p: ZPoint) -> bool {
        self.reduce(p) == ZPoint::ZERO
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        match (self, other) {
            (Subgroup::Zero, _) | (_, Subgroup::Zero) => Subgroup::Zero,
            (Subgroup::Full(a), Subgroup::Full(b)) => Subgroup::Full(a.intersect(b)),
            (Subgroup::Full(l), Subgroup::Line(h)) | (Subgroup::Line(h), Subgroup::Full(l)) => {
                Subgroup::Line((*h * l.order_of(*h)).canonical_sign())
            }
            (Subgroup::Line(h1), Subgroup::Line(h2)) => {
                if h1.cross(*h2) != 0 {
                    return Subgroup::Zero;
                }
                let u = h1.primitive();
                let k1 = if u.x != 0 { h1.x / u.x } else { h1.y / u.y };
                let k2 = if u.x != 0 { h2.x / u.x } else { h2.y / u.y };
                Subgroup::Line((u * lcm(k1, k2)).canonical_sign())
            }
        }
    }

    /// Index of `self` inside `outer`, when both are full rank.
    pub fn index_in(&self, outer: &Lattice) -> Option<i64> {
        match self {
            Subgroup::Full(l) => Some(l.index() / outer.index()),
            _ => None,
        }
    }
}
