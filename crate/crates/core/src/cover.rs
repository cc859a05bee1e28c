//! Growing a family of interior-disjoint convex polygons by absorbing side
//! triangles.
//!
//! For a side `s` of a polygon, the lines through its two neighbouring sides
//! may meet beyond `s`; together with `s` they bound a triangle `t_s` outside
//! the polygon. If `t_s` meets the interior of no other polygon the side is
//! *reducible*, and replacing the polygon by its union with `t_s` removes `s`
//! while keeping every other side on its old line. Repeating until nothing is
//! reducible gives a cover whose total side count is at most `9n - 9`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    interiors_intersect, orientation, ConvexPolygon, Orientation, Point2, Rational, SideId,
};

/// The triangle `t_s` beyond side `base_side`, with vertices
/// `(v_s, apex, v_{s+1})` in CCW order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducibilityTriangle {
    pub apex: Point2,
    pub base_side: usize,
    pub triangle: ConvexPolygon,
}

/// Returns `t_s`, or `None` when the neighbouring side lines are parallel or
/// only meet on the polygon's own side of `s` (unbounded region).
pub fn reducibility_triangle(p: &ConvexPolygon, s: usize) -> Option<ReducibilityTriangle> {
    let n = p.len();
    let prev = p.vertex(s + n - 1);
    let (a, b) = p.side(s);
    let next = p.vertex(s + 2);
    // the neighbouring sides turn left by less than pi in total iff their
    // directions still have a positive cross product
    let d_prev = (&a.x - &prev.x, &a.y - &prev.y);
    let d_next = (&next.x - &b.x, &next.y - &b.y);
    let turn = &d_prev.0 * &d_next.1 - &d_prev.1 * &d_next.0;
    if turn <= Rational::from_integer(0.into()) {
        return None;
    }
    let ab = (&b.x - &a.x, &b.y - &a.y);
    let t = (&ab.0 * &d_next.1 - &ab.1 * &d_next.0) / turn;
    let apex = Point2::new(&a.x + &t * &d_prev.0, &a.y + &t * &d_prev.1);
    let triangle = ConvexPolygon::from_parts_unchecked(
        vec![a.clone(), apex.clone(), b.clone()],
        vec![None; 3],
    );
    Some(ReducibilityTriangle { apex, base_side: s % n, triangle })
}

/// Side `s` of `family[i]` has a bounded triangle that meets no other
/// polygon's interior.
pub fn is_reducible(family: &[ConvexPolygon], i: usize, s: usize) -> bool {
    reducible_triangle(family, i, s).is_some()
}

fn reducible_triangle(family: &[ConvexPolygon], i: usize, s: usize) -> Option<ReducibilityTriangle> {
    let t = reducibility_triangle(&family[i], s)?;
    let blocked = family
        .iter()
        .enumerate()
        .any(|(j, q)| j != i && interiors_intersect(&t.triangle, q));
    (!blocked).then_some(t)
}

/// `P ∪ t_s`: the endpoints of side `s` collapse into the apex. The two
/// neighbouring sides keep their lines and provenance.
pub fn reduce_side(p: &ConvexPolygon, t: &ReducibilityTriangle) -> ConvexPolygon {
    let n = p.len();
    let s = t.base_side;
    let dropped = (s + 1) % n;
    let mut vertices = Vec::with_capacity(n - 1);
    let mut provenance = Vec::with_capacity(n - 1);
    for k in 0..n {
        if k == dropped {
            continue;
        }
        if k == s {
            vertices.push(t.apex.clone());
            provenance.push(p.provenance()[dropped]);
        } else {
            vertices.push(p.vertex(k).clone());
            provenance.push(p.provenance()[k]);
        }
    }
    ConvexPolygon::from_parts_unchecked(vertices, provenance)
}

/// The grown family together with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverResult {
    pub polygons: Vec<ConvexPolygon>,
    /// For side `k` of `polygons[i]`, the input side whose line carries it.
    pub provenance: Vec<Vec<SideId>>,
    pub total_sides: usize,
    pub reductions_performed: usize,
}

impl CoverResult {
    pub fn len(&self) -> usize {
        self.polygons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polygons.is_empty()
    }

    /// `9n - 9`.
    pub fn side_bound(&self) -> usize {
        side_bound(self.polygons.len())
    }
}

pub fn side_bound(n: usize) -> usize {
    9 * n.saturating_sub(1)
}

/// Rejects fewer than `min` polygons or any pair with overlapping interiors.
pub(crate) fn check_family(family: &[ConvexPolygon], min: usize) -> Result<()> {
    if family.len() < min {
        return Err(Error::TooFewPolygons { need: min, got: family.len() });
    }
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if interiors_intersect(&family[i], &family[j]) {
                return Err(Error::Overlap { first: i, second: j });
            }
        }
    }
    Ok(())
}

/// Absorbs reducible triangles until none is left.
///
/// Polygons are visited round-robin; each visit scans the sides of one
/// polygon in index order and performs at most one reduction, after which
/// the scan moves on to the next polygon. The loop stops once `n`
/// consecutive visits find nothing. Incoming provenance is replaced by the
/// polygon's own `(i, s)` side ids.
pub fn grow_cover(family: &[ConvexPolygon]) -> Result<CoverResult> {
    check_family(family, 3)?;
    let n = family.len();
    let mut polygons: Vec<ConvexPolygon> =
        family.iter().enumerate().map(|(i, p)| p.clone().with_all_provenance(i)).collect();
    let mut reductions = 0;
    let mut quiet = 0;
    let mut i = 0;
    while quiet < n {
        let found = (0..polygons[i].len()).find_map(|s| reducible_triangle(&polygons, i, s));
        match found {
            Some(t) => {
                polygons[i] = reduce_side(&polygons[i], &t);
                reductions += 1;
                quiet = 0;
            }
            None => quiet += 1,
        }
        i = (i + 1) % n;
    }
    let provenance = polygons
        .iter()
        .map(|p| p.provenance().iter().map(|id| id.expect("every cover side has provenance")).collect())
        .collect();
    let total_sides = polygons.iter().map(ConvexPolygon::len).sum();
    Ok(CoverResult { polygons, provenance, total_sides, reductions_performed: reductions })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoverViolation {
    CountMismatch { original: usize, cover: usize },
    NotContained { polygon: usize, vertex: String },
    SideNotSupported { polygon: usize, side: usize, source: Option<SideId> },
    Overlap { first: usize, second: usize },
    TooManySides { total: usize, bound: usize },
    Reducible { polygon: usize, side: usize },
}

/// Outcome of each cover condition; `None` means the condition holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub containment: Option<CoverViolation>,
    pub side_support: Option<CoverViolation>,
    pub disjoint: Option<CoverViolation>,
    pub side_bound: Option<CoverViolation>,
    pub irreducible: Option<CoverViolation>,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn violations(&self) -> impl Iterator<Item = &CoverViolation> {
        [&self.containment, &self.side_support, &self.disjoint, &self.side_bound, &self.irreducible]
            .into_iter()
            .flatten()
    }
}

/// Independently re-checks every cover condition against the original family.
pub fn assert_cover_conditions(original: &[ConvexPolygon], cover: &CoverResult) -> CoverReport {
    let mut report = CoverReport::default();
    if original.len() != cover.polygons.len() || cover.provenance.len() != cover.polygons.len() {
        let v = CoverViolation::CountMismatch { original: original.len(), cover: cover.polygons.len() };
        report.containment = Some(v.clone());
        report.side_support = Some(v);
        return report;
    }
    let n = original.len();

    report.containment = original.iter().zip(&cover.polygons).enumerate().find_map(|(i, (p, r))| {
        p.vertices()
            .iter()
            .find(|v| !r.contains_point(v))
            .map(|v| CoverViolation::NotContained { polygon: i, vertex: v.to_string() })
    });

    report.side_support = cover.polygons.iter().enumerate().find_map(|(i, r)| {
        let ids = &cover.provenance[i];
        (0..r.len()).find_map(|k| {
            let source = ids.get(k).copied();
            let supported = source.is_some_and(|id| {
                id.polygon == i
                    && id.side < original[i].len()
                    && original[i].side_line(id.side) == r.side_line(k)
            });
            (!supported).then_some(CoverViolation::SideNotSupported { polygon: i, side: k, source })
        })
    });

    report.disjoint = (0..n).find_map(|i| {
        (i + 1..n).find_map(|j| {
            interiors_intersect(&cover.polygons[i], &cover.polygons[j])
                .then_some(CoverViolation::Overlap { first: i, second: j })
        })
    });

    let total: usize = cover.polygons.iter().map(ConvexPolygon::len).sum();
    let bound = side_bound(n);
    if total > bound || total != cover.total_sides {
        report.side_bound = Some(CoverViolation::TooManySides { total, bound });
    }

    report.irreducible = irreducible_witness(&cover.polygons);
    report
}

/// First reducible side found by an exhaustive scan that rebuilds each
/// triangle from the two neighbouring side lines.
fn irreducible_witness(family: &[ConvexPolygon]) -> Option<CoverViolation> {
    for (i, p) in family.iter().enumerate() {
        let n = p.len();
        for s in 0..n {
            let before = p.side_line(s + n - 1);
            let after = p.side_line(s + 1);
            let Some(apex) = before.intersection(&after) else { continue };
            let (a, b) = p.side(s);
            // both neighbouring vertices are strictly inside the line of s, so
            // an apex strictly outside it sits on the forward extensions
            if orientation(a, b, &apex) != Orientation::Cw {
                continue;
            }
            let Ok(tri) = ConvexPolygon::new(vec![a.clone(), apex.clone(), b.clone()]) else {
                continue;
            };
            let blocked = family.iter().enumerate().any(|(j, q)| j != i && interiors_intersect(&tri, q));
            if !blocked {
                return Some(CoverViolation::Reducible { polygon: i, side: s });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{polygon_in_closed_halfplane, rat, ratio, DirectedLine};

    fn poly(points: &[(i64, i64)]) -> ConvexPolygon {
        ConvexPolygon::from_i64(points).unwrap()
    }

    fn pentagon() -> ConvexPolygon {
        poly(&[(0, 10), (-10, 3), (-6, -8), (6, -8), (10, 3)])
    }

    fn hexagon() -> ConvexPolygon {
        poly(&[(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)])
    }

    fn far_triangles() -> Vec<ConvexPolygon> {
        vec![poly(&[(100, 0), (104, 0), (102, 3)]), poly(&[(-100, 50), (-96, 50), (-98, 53)])]
    }

    #[test]
    fn square_and_triangle_sides_are_unbounded() {
        let sq = poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let tri = poly(&[(0, 0), (4, 0), (1, 3)]);
        for s in 0..4 {
            assert!(reducibility_triangle(&sq, s).is_none());
        }
        for s in 0..3 {
            assert!(reducibility_triangle(&tri, s).is_none());
        }
    }

    #[test]
    fn pentagon_sides_have_bounded_triangles() {
        let p = pentagon();
        for s in 0..5 {
            let t = reducibility_triangle(&p, s).expect("bounded");
            // apex is the meeting point of the neighbouring side lines
            let apex = p.side_line(s + 4).intersection(&p.side_line(s + 1)).unwrap();
            assert_eq!(t.apex, apex);
            assert!(t.triangle.area2() > rat(0));
            let (a, b) = p.side(s);
            assert_eq!(orientation(a, b, &apex), Orientation::Cw);
            assert!(!interiors_intersect(&t.triangle, &p));
        }
    }

    #[test]
    fn reducibility_against_family() {
        let p = pentagon();
        assert!((0..5).all(|s| is_reducible(std::slice::from_ref(&p), 0, s)));

        // drop a small square around the centroid of t_0
        let t = reducibility_triangle(&p, 0).unwrap();
        let v = t.triangle.vertices();
        let cx = (&v[0].x + &v[1].x + &v[2].x) / rat(3);
        let cy = (&v[0].y + &v[1].y + &v[2].y) / rat(3);
        let eps = ratio(1, 100);
        let blocker = ConvexPolygon::rectangle(&cx - &eps, &cy - &eps, &cx + &eps, &cy + &eps).unwrap();
        assert!(interiors_intersect(&blocker, &t.triangle));
        let family = vec![p.clone(), blocker];
        assert!(!is_reducible(&family, 0, 0));
        assert!(is_reducible(&family, 0, 2));

        let sq = poly(&[(50, 50), (51, 50), (51, 51), (50, 51)]);
        let family = vec![sq, p];
        assert!((0..4).all(|s| !is_reducible(&family, 0, s)));
    }

    #[test]
    fn reduce_side_grows_by_the_triangle() {
        let p = pentagon().with_all_provenance(0);
        for s in 0..5 {
            let t = reducibility_triangle(&p, s).unwrap();
            let q = reduce_side(&p, &t);
            assert_eq!(q.len(), 4);
            assert!(p.vertices().iter().all(|v| q.contains_point(v)));
            assert_eq!(q.area2(), p.area2() + t.triangle.area2());
            // every remaining side keeps the line of the side it came from
            for k in 0..q.len() {
                let id = q.provenance()[k].unwrap();
                assert_ne!(id.side, s);
                assert_eq!(q.side_line(k), p.side_line(id.side));
            }
        }
    }

    #[test]
    fn far_apart_triangles_are_fixed() {
        let family = vec![
            poly(&[(0, 0), (3, 0), (1, 2)]),
            poly(&[(20, 0), (23, 1), (21, 4)]),
            poly(&[(0, 30), (5, 31), (2, 35)]),
        ];
        let cover = grow_cover(&family).unwrap();
        assert_eq!(cover.reductions_performed, 0);
        assert_eq!(cover.total_sides, 9);
        for (p, r) in family.iter().zip(&cover.polygons) {
            assert_eq!(p.vertices(), r.vertices());
        }
        assert!(assert_cover_conditions(&family, &cover).passed());
    }

    #[test]
    fn hexagon_with_far_triangles() {
        let mut family = vec![hexagon()];
        family.extend(far_triangles());
        let cover = grow_cover(&family).unwrap();
        assert!(cover.reductions_performed > 0);
        assert!(cover.polygons[0].len() < 6);
        assert_eq!(cover.polygons[1].vertices(), family[1].vertices());
        assert_eq!(cover.polygons[2].vertices(), family[2].vertices());
        assert!(cover.total_sides <= 18);
        let report = assert_cover_conditions(&family, &cover);
        assert!(report.passed(), "{report:?}");
        // fixed point, checked with the module's own predicate as well
        for (i, r) in cover.polygons.iter().enumerate() {
            for s in 0..r.len() {
                assert!(!is_reducible(&cover.polygons, i, s));
            }
        }
    }

    #[test]
    fn neighbours_block_growth() {
        // hexagon boxed in by close squares on all sides
        let mut family = vec![hexagon()];
        family.push(poly(&[(3, -1), (5, -1), (5, 1), (3, 1)]));
        family.push(poly(&[(-5, -1), (-3, -1), (-3, 1), (-5, 1)]));
        family.push(poly(&[(-1, 3), (1, 3), (1, 5), (-1, 5)]));
        family.push(poly(&[(-1, -5), (1, -5), (1, -3), (-1, -3)]));
        let cover = grow_cover(&family).unwrap();
        let report = assert_cover_conditions(&family, &cover);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn rejects_bad_families() {
        let sq = poly(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
        let overlap = poly(&[(1, 1), (3, 1), (3, 3), (1, 3)]);
        let far = poly(&[(10, 10), (11, 10), (11, 11)]);
        assert_eq!(
            grow_cover(&[sq.clone(), far.clone()]),
            Err(Error::TooFewPolygons { need: 3, got: 2 })
        );
        assert_eq!(grow_cover(&[sq, far, overlap]), Err(Error::Overlap { first: 0, second: 2 }));
    }

    #[test]
    fn report_catches_constructed_failures() {
        let mut family = vec![pentagon()];
        family.extend(far_triangles());
        let cover = grow_cover(&family).unwrap();
        assert!(assert_cover_conditions(&family, &cover).passed());

        // shrink R_0 about the origin: containment must fail
        let mut shrunk = cover.clone();
        let small: Vec<Point2> = cover.polygons[0]
            .vertices()
            .iter()
            .map(|v| Point2::new(&v.x / rat(2), &v.y / rat(2)))
            .collect();
        shrunk.polygons[0] = ConvexPolygon::new(small).unwrap();
        let report = assert_cover_conditions(&family, &shrunk);
        assert!(matches!(report.containment, Some(CoverViolation::NotContained { polygon: 0, .. })));

        // push one vertex of R_0 outward: the two sides through it leave their lines
        let mut moved = cover.clone();
        let mut verts = cover.polygons[0].vertices().to_vec();
        verts[0] = Point2::new(&verts[0].x + ratio(1, 3), &verts[0].y + rat(1));
        moved.polygons[0] = ConvexPolygon::new(verts).unwrap();
        let report = assert_cover_conditions(&family, &moved);
        assert!(matches!(report.side_support, Some(CoverViolation::SideNotSupported { polygon: 0, .. })));
    }

    #[test]
    fn report_flags_reducible_leftovers() {
        let family = {
            let mut f = vec![pentagon()];
            f.extend(far_triangles());
            f
        };
        let untouched = CoverResult {
            polygons: family.clone(),
            provenance: family
                .iter()
                .enumerate()
                .map(|(i, p)| (0..p.len()).map(|s| SideId { polygon: i, side: s }).collect())
                .collect(),
            total_sides: 11,
            reductions_performed: 0,
        };
        let report = assert_cover_conditions(&family, &untouched);
        assert!(matches!(report.irreducible, Some(CoverViolation::Reducible { polygon: 0, .. })));
        assert!(report.containment.is_none() && report.side_support.is_none());
    }

    #[test]
    fn outer_halfplane_of_every_side_avoids_its_polygon() {
        let p = pentagon();
        for k in 0..5 {
            let h = p.outer_halfplane(k);
            assert!(!polygon_in_closed_halfplane(&p, &h));
            assert!(polygon_in_closed_halfplane(&p, &h.opposite()));
            let _: &DirectedLine = &h.line;
        }
    }
}
