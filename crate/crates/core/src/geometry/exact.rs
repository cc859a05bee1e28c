//! Integer coordinate frames for bulk sign evaluation.
//!
//! Enumeration-heavy code scales every coordinate of an instance by the lcm of
//! all denominators and then works in plain integers. When the scaled
//! coordinates stay below [`I128_COORD_LIMIT`] in magnitude every expression
//! the enumerators build (degree four in the coordinates, times a small
//! constant) fits in `i128`; otherwise they fall back to `BigInt`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::primitives::{DirectedLine, Point2, Rational};

/// Exclusive bound on scaled coordinates for the `i128` fast path (2^28).
pub const I128_COORD_LIMIT: i64 = 1 << 28;

/// Integer types usable by the enumeration kernels.
pub trait ExactInt:
    Signed + Ord + Clone + Send + Sync + Debug + From<i64> + Into<BigInt>
{
}

impl<T> ExactInt for T where
    T: Signed + Ord + Clone + Send + Sync + Debug + From<i64> + Into<BigInt>
{
}

#[derive(Clone, Debug)]
pub struct IntegerFrame {
    scale: BigInt,
    points: Vec<[BigInt; 2]>,
}

impl IntegerFrame {
    pub fn new(points: &[Point2]) -> Self {
        let scale = points.iter().fold(BigInt::one(), |acc, p| {
            acc.lcm(p.x.denom()).lcm(p.y.denom())
        });
        let points = points
            .iter()
            .map(|p| {
                [
                    p.x.numer() * (&scale / p.x.denom()),
                    p.y.numer() * (&scale / p.y.denom()),
                ]
            })
            .collect();
        Self { scale, points }
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn points(&self) -> &[[BigInt; 2]] {
        &self.points
    }

    /// Coordinates as `i128` if they all lie strictly inside the fast-path bound.
    pub fn small_points(&self) -> Option<Vec<[i128; 2]>> {
        let limit = BigInt::from(I128_COORD_LIMIT);
        self.points
            .iter()
            .map(|[x, y]| {
                if x.abs() < limit && y.abs() < limit {
                    Some([x.to_i128()?, y.to_i128()?])
                } else {
                    None
                }
            })
            .collect()
    }

    /// Maps the frame line `a*X + b*Y = c` back to original coordinates.
    pub fn line_to_original(&self, a: BigInt, b: BigInt, c: BigInt) -> DirectedLine {
        DirectedLine::from_integers(a * &self.scale, b * &self.scale, c)
            .expect("frame lines have (a, b) != 0")
    }

    pub fn point_to_original(&self, p: &[BigInt; 2]) -> Point2 {
        Point2::new(
            Rational::new(p[0].clone(), self.scale.clone()),
            Rational::new(p[1].clone(), self.scale.clone()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::primitives::{line_through, ratio};

    #[test]
    fn frame_scales_to_common_denominator() {
        let pts = vec![
            Point2::new(ratio(1, 2), ratio(1, 3)),
            Point2::new(ratio(5, 4), ratio(-7, 1)),
        ];
        let frame = IntegerFrame::new(&pts);
        assert_eq!(frame.scale(), &BigInt::from(12));
        assert_eq!(frame.points()[0], [BigInt::from(6), BigInt::from(4)]);
        assert_eq!(frame.points()[1], [BigInt::from(15), BigInt::from(-84)]);
        assert_eq!(frame.point_to_original(&frame.points()[1]), pts[1]);
        assert!(frame.small_points().is_some());
    }

    #[test]
    fn frame_line_maps_back() {
        let pts = vec![Point2::new(ratio(1, 2), ratio(0, 1)), Point2::new(ratio(0, 1), ratio(1, 3))];
        let frame = IntegerFrame::new(&pts);
        // in the frame (scale 6) the points are (3,0) and (0,2): 2X + 3Y = 6
        let line = frame.line_to_original(BigInt::from(2), BigInt::from(3), BigInt::from(6));
        assert_eq!(line, line_through(&pts[0], &pts[1]).unwrap());
    }

    #[test]
    fn large_coordinates_leave_fast_path() {
        let pts = vec![Point2::from_i64(I128_COORD_LIMIT, 0), Point2::from_i64(0, 1)];
        assert!(IntegerFrame::new(&pts).small_points().is_none());
    }
}
