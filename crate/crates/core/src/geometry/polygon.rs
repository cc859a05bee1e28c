use serde::{Deserialize, Serialize};

use super::primitives::{
    cross, line_through_oriented, orientation, side_of_line, DirectedLine, HalfPlane, HalfSide,
    Orientation, Point2, Rational, Side,
};
use crate::error::Error;

/// Identifies a side of an input polygon: `side` runs from vertex `side` to
/// vertex `side + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SideId {
    pub polygon: usize,
    pub side: usize,
}

/// Strictly convex polygon with CCW vertices and per-side provenance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
    provenance: Vec<Option<SideId>>,
}

impl ConvexPolygon {
    /// Validates strict convexity; clockwise input is reversed.
    pub fn new(vertices: Vec<Point2>) -> Result<Self, Error> {
        let n = vertices.len();
        Self::with_provenance(vertices, vec![None; n])
    }

    pub fn with_provenance(
        mut vertices: Vec<Point2>,
        mut provenance: Vec<Option<SideId>>,
    ) -> Result<Self, Error> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidPolygon(format!("{n} vertices, need at least 3")));
        }
        if provenance.len() != n {
            return Err(Error::InvalidPolygon("provenance length mismatch".into()));
        }
        if signed_area2(&vertices) < Rational::from_integer(0.into()) {
            vertices.reverse();
            // old side k ran v_k -> v_{k+1}; after reversal new side j runs
            // between the same two vertices as old side n-2-j
            let old = provenance.clone();
            for (j, slot) in provenance.iter_mut().enumerate() {
                *slot = old[(2 * n - 2 - j) % n];
            }
        }
        let poly = Self { vertices, provenance };
        poly.check_strictly_convex()?;
        Ok(poly)
    }

    /// Trusted constructor for results of exact operations that preserve
    /// strict convexity.
    pub(crate) fn from_parts_unchecked(
        vertices: Vec<Point2>,
        provenance: Vec<Option<SideId>>,
    ) -> Self {
        debug_assert!(vertices.len() >= 3 && vertices.len() == provenance.len());
        let poly = Self { vertices, provenance };
        debug_assert!(poly.check_strictly_convex().is_ok(), "{poly:?}");
        poly
    }

    pub fn from_i64(points: &[(i64, i64)]) -> Result<Self, Error> {
        Self::new(points.iter().map(|&(x, y)| Point2::from_i64(x, y)).collect())
    }

    /// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
    pub fn rectangle(x0: Rational, y0: Rational, x1: Rational, y1: Rational) -> Result<Self, Error> {
        Self::new(vec![
            Point2::new(x0.clone(), y0.clone()),
            Point2::new(x1.clone(), y0),
            Point2::new(x1, y1.clone()),
            Point2::new(x0, y1),
        ])
    }

    fn check_strictly_convex(&self) -> Result<(), Error> {
        let n = self.vertices.len();
        for k in 0..n {
            let (a, b) = (&self.vertices[k], &self.vertices[(k + 1) % n]);
            if a == b {
                return Err(Error::InvalidPolygon(format!("repeated vertex {a}")));
            }
            // every vertex off this edge must be strictly to its left
            for m in 0..n {
                if m == k || m == (k + 1) % n {
                    continue;
                }
                let o = orientation(a, b, &self.vertices[m]);
                if o != Orientation::Ccw {
                    return Err(Error::InvalidPolygon(format!(
                        "not strictly convex at edge {a} -> {b} (vertex {})",
                        self.vertices[m]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn provenance(&self) -> &[Option<SideId>] {
        &self.provenance
    }

    pub fn vertex(&self, k: usize) -> &Point2 {
        &self.vertices[k % self.vertices.len()]
    }

    /// Number of sides (= number of vertices).
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Endpoints of side `k`.
    pub fn side(&self, k: usize) -> (&Point2, &Point2) {
        (self.vertex(k), self.vertex(k + 1))
    }

    pub fn side_line(&self, k: usize) -> DirectedLine {
        let (a, b) = self.side(k);
        line_through_oriented(a, b).expect("polygon sides are nondegenerate").0
    }

    /// Closed halfplane bounded by side `k` that contains the polygon.
    pub fn inner_halfplane(&self, k: usize) -> HalfPlane {
        let (a, b) = self.side(k);
        HalfPlane::left_of(a, b).expect("polygon sides are nondegenerate")
    }

    /// Closed halfplane bounded by side `k` on the far side from the polygon.
    pub fn outer_halfplane(&self, k: usize) -> HalfPlane {
        self.inner_halfplane(k).opposite()
    }

    pub fn with_all_provenance(mut self, polygon: usize) -> Self {
        for (side, slot) in self.provenance.iter_mut().enumerate() {
            *slot = Some(SideId { polygon, side });
        }
        self
    }

    pub(crate) fn set_provenance(&mut self, k: usize, id: Option<SideId>) {
        self.provenance[k] = id;
    }

    pub fn area2(&self) -> Rational {
        signed_area2(&self.vertices)
    }

    /// Closed containment of a point.
    pub fn contains_point(&self, p: &Point2) -> bool {
        (0..self.len()).all(|k| {
            let (a, b) = self.side(k);
            orientation(a, b, p) != Orientation::Cw
        })
    }

    pub fn contains_point_strictly(&self, p: &Point2) -> bool {
        (0..self.len()).all(|k| {
            let (a, b) = self.side(k);
            orientation(a, b, p) == Orientation::Ccw
        })
    }

    pub fn bbox(&self) -> (Point2, Point2) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices[1..] {
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

    /// Same polygon with vertex list rotated to start at `start`.
    pub fn rotated(&self, start: usize) -> Self {
        let n = self.len();
        let vertices = (0..n).map(|k| self.vertices[(start + k) % n].clone()).collect();
        let provenance = (0..n).map(|k| self.provenance[(start + k) % n]).collect();
        Self { vertices, provenance }
    }
}

fn signed_area2(vertices: &[Point2]) -> Rational {
    let n = vertices.len();
    let origin = &vertices[0];
    (1..n.saturating_sub(1))
        .map(|k| cross(origin, &vertices[k], &vertices[k + 1]))
        .fold(Rational::from_integer(0.into()), |acc, v| acc + v)
}

/// True iff every vertex of `p` lies in the closed halfplane `h`.
pub fn polygon_in_closed_halfplane(p: &ConvexPolygon, h: &HalfPlane) -> bool {
    p.vertices().iter().all(|v| h.contains(v))
}

/// True iff the open interiors of `p` and `q` meet.
pub fn interiors_intersect(p: &ConvexPolygon, q: &ConvexPolygon) -> bool {
    let (plo, phi) = p.bbox();
    let (qlo, qhi) = q.bbox();
    if phi.x <= qlo.x || qhi.x <= plo.x || phi.y <= qlo.y || qhi.y <= plo.y {
        return false;
    }
    !(has_separating_edge(p, q) || has_separating_edge(q, p))
}

/// Some edge line of `p` has all of `q` weakly on its outer side.
fn has_separating_edge(p: &ConvexPolygon, q: &ConvexPolygon) -> bool {
    (0..p.len()).any(|k| {
        let (a, b) = p.side(k);
        q.vertices().iter().all(|v| orientation(a, b, v) != Orientation::Ccw)
    })
}

/// Exact intersection `p ∩ h`; `None` when the result has empty interior.
/// Sides cut along `h.line` get provenance `None`.
pub fn clip_polygon(p: &ConvexPolygon, h: &HalfPlane) -> Option<ConvexPolygon> {
    let n = p.len();
    let inside: Vec<Side> = p.vertices().iter().map(|v| side_of_line(&h.line, v)).collect();
    let is_out = |s: Side| match h.side {
        HalfSide::Left => s == Side::Right,
        HalfSide::Right => s == Side::Left,
    };
    if inside.iter().all(|&s| !is_out(s)) {
        return Some(p.clone());
    }
    // (vertex, provenance of the side leaving it)
    let mut out: Vec<(Point2, Option<SideId>)> = Vec::with_capacity(n + 1);
    for k in 0..n {
        let (cur, nxt) = (p.vertex(k), p.vertex(k + 1));
        let (cur_out, nxt_out) = (is_out(inside[k]), is_out(inside[(k + 1) % n]));
        let prov = p.provenance()[k];
        if !cur_out {
            out.push((cur.clone(), prov));
            if nxt_out && inside[k] != Side::On {
                out.push((segment_cut(&h.line, cur, nxt), None));
            } else if nxt_out {
                // cur lies on the cutting line: the edge leaving it runs along the line
                out.last_mut().unwrap().1 = None;
            }
        } else if !nxt_out && inside[(k + 1) % n] != Side::On {
            out.push((segment_cut(&h.line, cur, nxt), prov));
        }
    }
    simplify(out).map(|(vertices, provenance)| ConvexPolygon::from_parts_unchecked(vertices, provenance))
}

fn segment_cut(line: &DirectedLine, a: &Point2, b: &Point2) -> Point2 {
    let fa = line.eval(a);
    let fb = line.eval(b);
    let t = &fa / (&fa - &fb);
    Point2::new(&a.x + &t * (&b.x - &a.x), &a.y + &t * (&b.y - &a.y))
}

/// Drops repeated and collinear vertices; `None` if fewer than three remain.
#[allow(clippy::type_complexity)]
fn simplify(
    mut ring: Vec<(Point2, Option<SideId>)>,
) -> Option<(Vec<Point2>, Vec<Option<SideId>>)> {
    loop {
        let n = ring.len();
        if n < 3 {
            return None;
        }
        let mut removed = false;
        for k in 0..n {
            let prev = (k + n - 1) % n;
            let next = (k + 1) % n;
            let degenerate = ring[k].0 == ring[next].0
                || orientation(&ring[prev].0, &ring[k].0, &ring[next].0) == Orientation::Collinear;
            if degenerate {
                let duplicate = ring[k].0 == ring[next].0;
                let (_, prov_k) = ring.remove(k);
                let prev = if k == 0 { ring.len() - 1 } else { k - 1 };
                // a zero-length side just disappears; a collinear vertex merges
                // its outgoing side into the one leaving prev
                if !duplicate {
                    ring[prev].1 = ring[prev].1.or(prov_k);
                }
                removed = true;
                break;
            }
        }
        if !removed {
            break;
        }
    }
    if ring.len() < 3 {
        return None;
    }
    Some(ring.into_iter().unzip())
}
