//! Exact rational primitives and predicates. Nothing in here uses floating
//! point.

mod exact;
mod polygon;
mod primitives;

pub use exact::{ExactInt, IntegerFrame, I128_COORD_LIMIT};
pub use polygon::{
    clip_polygon, interiors_intersect, polygon_in_closed_halfplane, ConvexPolygon, SideId,
};
pub use primitives::{
    cross, format_rational, line_through, orientation, parse_rational, rat, ratio, side_of_line,
    DirectedLine, HalfPlane, HalfSide, Orientation, Point2, Rational, Side,
};

#[cfg(test)]
mod proptests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-60i64..60, 1i64..9).prop_map(|(n, d)| ratio(n, d))
    }

    fn point() -> impl Strategy<Value = Point2> {
        (small_rational(), small_rational()).prop_map(|(x, y)| Point2::new(x, y))
    }

    /// Strictly convex polygons: distinct points on a circle pushed through
    /// the rational parametrisation of the unit circle.
    fn polygon() -> impl Strategy<Value = ConvexPolygon> {
        (
            proptest::collection::btree_set(-12i64..12, 3..7),
            -20i64..20,
            -20i64..20,
            1i64..6,
        )
            .prop_map(|(ts, cx, cy, r)| {
                let pts = ts
                    .into_iter()
                    .map(|t| {
                        let t = ratio(t, 4);
                        let den = rat(1) + &t * &t;
                        let x = (rat(1) - &t * &t) / &den;
                        let y = (rat(2) * &t) / &den;
                        Point2::new(rat(cx) + x * rat(r), rat(cy) + y * rat(r))
                    })
                    .collect::<Vec<_>>();
                // parameter order walks the circle monotonically
                ConvexPolygon::new(pts).expect("points on a circle are in convex position")
            })
    }

    fn halfplane() -> impl Strategy<Value = HalfPlane> {
        (small_rational(), small_rational(), small_rational(), any::<bool>())
            .prop_filter("nondegenerate", |(a, b, _, _)| *a != rat(0) || *b != rat(0))
            .prop_map(|(a, b, c, left)| {
                HalfPlane::new(
                    DirectedLine::new(&a, &b, &c).unwrap(),
                    if left { HalfSide::Left } else { HalfSide::Right },
                )
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn clip_is_inside_both(p in polygon(), h in halfplane()) {
            if let Some(c) = clip_polygon(&p, &h) {
                for v in c.vertices() {
                    prop_assert!(p.contains_point(v));
                    prop_assert!(h.contains(v));
                }
                prop_assert!(c.area2() <= p.area2());
            } else {
                // nothing of positive area survives: at most one edge touches h
                let strictly_inside = p.vertices().iter().filter(|v| h.contains_strictly(v)).count();
                prop_assert_eq!(strictly_inside, 0);
            }
        }

        #[test]
        fn clipped_area_is_additive(p in polygon(), h in halfplane()) {
            let a = clip_polygon(&p, &h).map(|c| c.area2()).unwrap_or_else(|| rat(0));
            let b = clip_polygon(&p, &h.opposite()).map(|c| c.area2()).unwrap_or_else(|| rat(0));
            prop_assert_eq!(a + b, p.area2());
        }

        #[test]
        fn interior_test_is_symmetric(p in polygon(), q in polygon()) {
            prop_assert_eq!(interiors_intersect(&p, &q), interiors_intersect(&q, &p));
        }

        #[test]
        fn far_translate_is_disjoint(p in polygon()) {
            let (lo, hi) = p.bbox();
            let shift = &hi.x - &lo.x + rat(1);
            let moved: Vec<Point2> = p
                .vertices()
                .iter()
                .map(|v| Point2::new(&v.x + &shift, v.y.clone()))
                .collect();
            let q = ConvexPolygon::new(moved).unwrap();
            prop_assert!(!interiors_intersect(&p, &q));
            prop_assert!(interiors_intersect(&p, &p));
        }

        #[test]
        fn side_invariant_under_positive_scaling(
            a in small_rational(), b in small_rational(), c in small_rational(),
            k in (1i64..50, 1i64..50), p in point(),
        ) {
            prop_assume!(a != rat(0) || b != rat(0));
            let k = ratio(k.0, k.1);
            let raw = |a: &Rational, b: &Rational, c: &Rational| {
                (a * &p.x + b * &p.y - c).cmp(&rat(0))
            };
            let scaled = (&a * &k, &b * &k, &c * &k);
            prop_assert_eq!(raw(&a, &b, &c), raw(&scaled.0, &scaled.1, &scaled.2));
            prop_assert_eq!(
                DirectedLine::new(&a, &b, &c).unwrap(),
                DirectedLine::new(&scaled.0, &scaled.1, &scaled.2).unwrap()
            );
        }

        #[test]
        fn orientation_matches_determinant(p in point(), q in point(), r in point()) {
            // independent evaluation: full 3x3 determinant with a unit column
            let m = [[&p.x, &p.y], [&q.x, &q.y], [&r.x, &r.y]];
            let det = m[0][0] * (m[1][1] - m[2][1]) - m[0][1] * (m[1][0] - m[2][0])
                + (m[1][0] * m[2][1] - m[2][0] * m[1][1]);
            let expected = match det.cmp(&rat(0)) {
                std::cmp::Ordering::Greater => Orientation::Ccw,
                std::cmp::Ordering::Equal => Orientation::Collinear,
                std::cmp::Ordering::Less => Orientation::Cw,
            };
            prop_assert_eq!(orientation(&p, &q, &r), expected);
        }

        #[test]
        fn canonical_lines_have_unit_content(a in -30i64..30, b in -30i64..30, c in -30i64..30) {
            prop_assume!(a != 0 || b != 0);
            let l = DirectedLine::from_integers(a.into(), b.into(), c.into()).unwrap();
            let g = num_integer::Integer::gcd(&num_integer::Integer::gcd(l.a(), l.b()), l.c());
            prop_assert_eq!(g, BigInt::from(1));
        }
    }

    #[test]
    fn orientation_on_1000_random_triples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let mut r = || ratio(rng.gen_range(-1000..1000), rng.gen_range(1..50));
        for _ in 0..1000 {
            let (p, q, s) = (Point2::new(r(), r()), Point2::new(r(), r()), Point2::new(r(), r()));
            let det = cross(&p, &q, &s);
            let expected = match det.cmp(&rat(0)) {
                std::cmp::Ordering::Greater => Orientation::Ccw,
                std::cmp::Ordering::Equal => Orientation::Collinear,
                std::cmp::Ordering::Less => Orientation::Cw,
            };
            assert_eq!(orientation(&p, &q, &s), expected);
        }
    }
}
