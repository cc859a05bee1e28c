use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Exact arbitrary-precision rational scalar.
pub type Rational = BigRational;

/// Builds an integer-valued rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Builds `num / den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"`. No decimal points, exponents or whitespace.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let parse_int = |t: &str| -> Result<BigInt, String> {
        let digits = t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("invalid rational {s:?}"));
        }
        t.parse::<BigInt>().map_err(|_| format!("invalid rational {s:?}"))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let num = parse_int(n)?;
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Inverse of [`parse_rational`]; integers are written without a denominator.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn from_i64(x: i64, y: i64) -> Self {
        Self::new(rat(x), rat(y))
    }

    /// Homogeneous integer coordinates `(X, Y, W)` with `W > 0`.
    pub(crate) fn homogeneous(&self) -> (BigInt, BigInt, BigInt) {
        let (xn, xd) = (self.x.numer(), self.x.denom());
        let (yn, yd) = (self.y.numer(), self.y.denom());
        (xn * yd, yn * xd, xd * yd)
    }

    pub fn midpoint(&self, other: &Point2) -> Point2 {
        let two = rat(2);
        Point2::new((&self.x + &other.x) / &two, (&self.y + &other.y) / &two)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ccw,
    Collinear,
    Cw,
}

/// Sign of the cross product `(q - p) x (r - p)`.
pub fn orientation(p: &Point2, q: &Point2, r: &Point2) -> Orientation {
    // 3x3 homogeneous determinant; all weights are positive so its sign is the
    // sign of the affine cross product, and no gcd normalisation is needed.
    let (px, py, pw) = p.homogeneous();
    let (qx, qy, qw) = q.homogeneous();
    let (rx, ry, rw) = r.homogeneous();
    let det = &px * (&qy * &rw - &ry * &qw) - &py * (&qx * &rw - &rx * &qw)
        + &pw * (&qx * &ry - &rx * &qy);
    match det.sign() {
        num_bigint::Sign::Plus => Orientation::Ccw,
        num_bigint::Sign::NoSign => Orientation::Collinear,
        num_bigint::Sign::Minus => Orientation::Cw,
    }
}

/// Twice the signed area of triangle `pqr` (positive when CCW).
pub fn cross(p: &Point2, q: &Point2, r: &Point2) -> Rational {
    (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    On,
    Right,
}

/// The two closed halfplanes bounded by a line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HalfSide {
    Left,
    Right,
}

impl HalfSide {
    pub fn opposite(self) -> Self {
        match self {
            HalfSide::Left => HalfSide::Right,
            HalfSide::Right => HalfSide::Left,
        }
    }
}

/// Line `a*x + b*y = c` in canonical form: integer coefficients with content 1
/// and the first nonzero of `(a, b)` positive. The left halfplane is
/// `a*x + b*y <= c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedLine {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl DirectedLine {
    /// Canonicalises arbitrary rational coefficients.
    pub fn new(a: &Rational, b: &Rational, c: &Rational) -> Result<Self, Error> {
        Self::canonical(a, b, c).map(|(line, _)| line)
    }

    pub fn from_integers(a: BigInt, b: BigInt, c: BigInt) -> Result<Self, Error> {
        Self::canonical_int(a, b, c).map(|(line, _)| line)
    }

    /// Returns the canonical line and whether canonicalisation negated the
    /// coefficients (which swaps the meaning of left and right).
    pub(crate) fn canonical(
        a: &Rational,
        b: &Rational,
        c: &Rational,
    ) -> Result<(Self, bool), Error> {
        let den = a.denom().lcm(b.denom()).lcm(c.denom());
        let scale = |r: &Rational| r.numer() * (&den / r.denom());
        Self::canonical_int(scale(a), scale(b), scale(c))
    }

    pub(crate) fn canonical_int(
        mut a: BigInt,
        mut b: BigInt,
        mut c: BigInt,
    ) -> Result<(Self, bool), Error> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidInput("line with a = b = 0".into()));
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        let lead = if a.is_zero() { &b } else { &a };
        let flipped = lead.is_negative();
        if flipped {
            a = -a;
            b = -b;
            c = -c;
        }
        Ok((Self { a, b, c }, flipped))
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// Sign of `a*p.x + b*p.y - c`, without normalising intermediate rationals.
    pub(crate) fn eval_sign(&self, p: &Point2) -> std::cmp::Ordering {
        let (xn, xd) = (p.x.numer(), p.x.denom());
        let (yn, yd) = (p.y.numer(), p.y.denom());
        let v = &self.a * xn * yd + &self.b * yn * xd - &self.c * xd * yd;
        v.sign().cmp_zero()
    }

    pub fn eval(&self, p: &Point2) -> Rational {
        Rational::from_integer(self.a.clone()) * &p.x + Rational::from_integer(self.b.clone()) * &p.y
            - Rational::from_integer(self.c.clone())
    }

    /// Intersection point of two lines, `None` when parallel.
    pub fn intersection(&self, other: &DirectedLine) -> Option<Point2> {
        let det = &self.a * &other.b - &self.b * &other.a;
        if det.is_zero() {
            return None;
        }
        let x = &self.c * &other.b - &self.b * &other.c;
        let y = &self.a * &other.c - &self.c * &other.a;
        Some(Point2::new(
            Rational::new(x, det.clone()),
            Rational::new(y, det),
        ))
    }
}

trait SignExt {
    fn cmp_zero(self) -> std::cmp::Ordering;
}

impl SignExt for num_bigint::Sign {
    fn cmp_zero(self) -> std::cmp::Ordering {
        match self {
            num_bigint::Sign::Minus => std::cmp::Ordering::Less,
            num_bigint::Sign::NoSign => std::cmp::Ordering::Equal,
            num_bigint::Sign::Plus => std::cmp::Ordering::Greater,
        }
    }
}

impl fmt::Display for DirectedLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y = {}", self.a, self.b, self.c)
    }
}

/// Which side of `l` the point lies on: negative is LEFT, zero ON, positive RIGHT.
pub fn side_of_line(l: &DirectedLine, p: &Point2) -> Side {
    match l.eval_sign(p) {
        std::cmp::Ordering::Less => Side::Left,
        std::cmp::Ordering::Equal => Side::On,
        std::cmp::Ordering::Greater => Side::Right,
    }
}

/// Canonical line through two distinct points.
pub fn line_through(p: &Point2, q: &Point2) -> Result<DirectedLine, Error> {
    line_through_oriented(p, q).map(|(l, _)| l)
}

/// Canonical line through `p` and `q`, plus the closed side that lies to the
/// left of the direction `p -> q`.
pub(crate) fn line_through_oriented(
    p: &Point2,
    q: &Point2,
) -> Result<(DirectedLine, HalfSide), Error> {
    if p == q {
        return Err(Error::InvalidInput(format!("line through coincident points {p}")));
    }
    let a = &q.y - &p.y;
    let b = &p.x - &q.x;
    let c = &a * &p.x + &b * &p.y;
    let (line, flipped) = DirectedLine::canonical(&a, &b, &c)?;
    Ok((line, if flipped { HalfSide::Right } else { HalfSide::Left }))
}

/// A closed halfplane.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfPlane {
    pub line: DirectedLine,
    pub side: HalfSide,
}

impl HalfPlane {
    pub fn new(line: DirectedLine, side: HalfSide) -> Self {
        Self { line, side }
    }

    /// The closed halfplane to the left of the directed segment `p -> q`.
    pub fn left_of(p: &Point2, q: &Point2) -> Result<Self, Error> {
        let (line, side) = line_through_oriented(p, q)?;
        Ok(Self { line, side })
    }

    pub fn opposite(&self) -> Self {
        Self { line: self.line.clone(), side: self.side.opposite() }
    }

    pub fn contains(&self, p: &Point2) -> bool {
        matches!(
            (self.side, side_of_line(&self.line, p)),
            (_, Side::On) | (HalfSide::Left, Side::Left) | (HalfSide::Right, Side::Right)
        )
    }

    pub fn contains_strictly(&self, p: &Point2) -> bool {
        matches!(
            (self.side, side_of_line(&self.line, p)),
            (HalfSide::Left, Side::Left) | (HalfSide::Right, Side::Right)
        )
    }
}
