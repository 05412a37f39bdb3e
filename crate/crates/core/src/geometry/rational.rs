use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::GeometryError;
use crate::lattice::ZPoint;

/// Exact arbitrary-precision rational; always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a decimal integer or a `p/q` literal. Anything else (decimals,
/// exponents, symbolic constants) is not an exact rational literal.
pub fn parse_rational(text: &str) -> Result<Rational, GeometryError> {
    let s = text.trim();
    let looks_numeric = |part: &str| {
        let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (s, None),
    };
    let valid = looks_numeric(num) && den.is_none_or(looks_numeric);
    if !valid {
        let symbolic = s.contains(['.', 'e', 'E']) || s.chars().any(|c| c.is_ascii_alphabetic());
        return Err(if symbolic && !s.is_empty() {
            GeometryError::NonRational(s.to_string())
        } else {
            GeometryError::Syntax(format!("invalid number literal {s:?}"))
        });
    }
    let p: BigInt = num.parse().map_err(|_| GeometryError::Syntax(format!("invalid integer {num:?}")))?;
    let q: BigInt = match den {
        Some(q) => q.parse().map_err(|_| GeometryError::Syntax(format!("invalid integer {q:?}")))?,
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(GeometryError::Syntax(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(p, q))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact conversion to `i64`, if the value is an integer in range.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        i64::try_from(r.numer()).ok()
    } else {
        None
    }
}

pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// A point with rational coordinates. Ordered lexicographically by `(x, y)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        RPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RPoint { x: rat(x), y: rat(y) }
    }

    pub fn zero() -> Self {
        RPoint::from_ints(0, 0)
    }

    pub fn cross(&self, other: &RPoint) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &RPoint) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn scale(&self, k: &Rational) -> RPoint {
        RPoint { x: &self.x * k, y: &self.y * k }
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Integer point, if both coordinates are integers fitting `i64`.
    pub fn to_zpoint(&self) -> Option<ZPoint> {
        Some(ZPoint::new(to_i64(&self.x)?, to_i64(&self.y)?))
    }

    pub fn midpoint(&self, other: &RPoint) -> RPoint {
        let half = ratio(1, 2);
        RPoint { x: (&self.x + &other.x) * &half, y: (&self.y + &other.y) * &half }
    }
}

impl From<ZPoint> for RPoint {
    fn from(p: ZPoint) -> Self {
        RPoint::from_ints(p.x, p.y)
    }
}

impl fmt::Debug for RPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

impl fmt::Display for RPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &RPoint {
    type Output = RPoint;
    fn add(self, o: &RPoint) -> RPoint {
        RPoint { x: &self.x + &o.x, y: &self.y + &o.y }
    }
}

impl Sub for &RPoint {
    type Output = RPoint;
    fn sub(self, o: &RPoint) -> RPoint {
        RPoint { x: &self.x - &o.x, y: &self.y - &o.y }
    }
}

impl Neg for &RPoint {
    type Output = RPoint;
    fn neg(self) -> RPoint {
        RPoint { x: -&self.x, y: -&self.y }
    }
}

impl Mul<&Rational> for &RPoint {
    type Output = RPoint;
    fn mul(self, k: &Rational) -> RPoint {
        self.scale(k)
    }
}

/// Sign of the cross product `(b - a) x (c - a)`: `Greater` for a left turn.
pub fn orient(a: &RPoint, b: &RPoint, c: &RPoint) -> Ordering {
    let ab = b - a;
    let ac = c - a;
    let cr = ab.cross(&ac);
    if cr.is_positive() {
        Ordering::Greater
    } else if cr.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}
