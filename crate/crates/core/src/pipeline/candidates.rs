//! Finite family of lines standing in for "all lines".
//!
//! Which input sets lie in the closed left or right halfplane of a line only
//! depends on the sign of every vertex with respect to it. Those sign vectors
//! are constant on the cells of the arrangement (in line space) of the pencils
//! through the vertices, so one line per cell suffices. Every cell is reached
//! from a line through two vertices `u`, `w`:
//!
//! - the line itself (cells through two or more vertices),
//! - rotated by an infinitesimal angle about `u` or `w` (lines through exactly
//!   one vertex),
//! - translated by an infinitesimal amount, either directly or after such a
//!   rotation (lines through no vertex: push any line until it first touches
//!   a vertex and come back),
//! - rotated about the midpoint of `uw` (splits `u` from `w`).
//!
//! Infinitesimals are symbolic: a vertex on the base line takes the sign of
//! the first nonzero perturbation term. [`materialize`] turns a candidate into
//! an exact rational line with the same sign vector.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::geometry::{ConvexPolygon, DirectedLine, ExactInt, IntegerFrame};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pivot {
    First,
    Second,
    Midpoint,
}

/// How a candidate deviates from the line through its two defining vertices.
/// `true` is the positive direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Perturbation {
    Exact,
    Shift(bool),
    Turn(Pivot, bool),
    TurnShift(Pivot, bool, bool),
}

/// All perturbations tried for each vertex pair, in enumeration order.
pub const PERTURBATIONS: [Perturbation; 17] = {
    use Perturbation::*;
    use Pivot::*;
    [
        Exact,
        Shift(false),
        Shift(true),
        Turn(Midpoint, false),
        Turn(Midpoint, true),
        Turn(First, false),
        Turn(First, true),
        Turn(Second, false),
        Turn(Second, true),
        TurnShift(First, false, false),
        TurnShift(First, false, true),
        TurnShift(First, true, false),
        TurnShift(First, true, true),
        TurnShift(Second, false, false),
        TurnShift(Second, false, true),
        TurnShift(Second, true, false),
        TurnShift(Second, true, true),
    ]
};

/// A candidate line: base line through unique vertices `first < second`,
/// plus a perturbation. Ordering is enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Candidate {
    pub first: usize,
    pub second: usize,
    pub variant: usize,
}

impl Candidate {
    pub fn perturbation(&self) -> Perturbation {
        PERTURBATIONS[self.variant]
    }
}

/// Sets wholly inside the closed left / right halfplane of a candidate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Split {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Instance vertices, deduplicated, in an integer frame.
#[derive(Clone, Debug)]
pub struct VertexTable {
    frame: IntegerFrame,
    unique: Vec<[BigInt; 2]>,
    /// Per set, indices into `unique`.
    set_vertices: Vec<Vec<usize>>,
}

impl VertexTable {
    pub fn new(sets: &[ConvexPolygon]) -> Self {
        let all: Vec<_> = sets.iter().flat_map(|s| s.vertices().iter().cloned()).collect();
        let frame = IntegerFrame::new(&all);
        let mut index: HashMap<[BigInt; 2], usize> = HashMap::new();
        let mut unique = Vec::new();
        let mut flat = frame.points().iter();
        let set_vertices = sets
            .iter()
            .map(|s| {
                (0..s.len())
                    .map(|_| {
                        let p = flat.next().expect("frame has one point per vertex").clone();
                        *index.entry(p.clone()).or_insert_with(|| {
                            unique.push(p);
                            unique.len() - 1
                        })
                    })
                    .collect()
            })
            .collect();
        Self { frame, unique, set_vertices }
    }

    pub fn point_count(&self) -> usize {
        self.unique.len()
    }

    pub fn set_count(&self) -> usize {
        self.set_vertices.len()
    }

    pub fn frame(&self) -> &IntegerFrame {
        &self.frame
    }

    /// Kernel over `i128` when the coordinates are small enough.
    pub fn small_kernel(&self) -> Option<Kernel<'_, i128>> {
        let limit = BigInt::from(crate::geometry::I128_COORD_LIMIT);
        let points = self
            .unique
            .iter()
            .map(|[x, y]| {
                use num_traits::{Signed, ToPrimitive};
                (x.abs() < limit && y.abs() < limit).then(|| [x.to_i128().unwrap(), y.to_i128().unwrap()])
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Kernel { table: self, points })
    }

    pub fn big_kernel(&self) -> Kernel<'_, BigInt> {
        Kernel { table: self, points: self.unique.clone() }
    }
}

/// Runs `$body` with `$k` bound to the fastest kernel that fits the table.
macro_rules! with_kernel {
    ($table:expr, $k:ident => $body:expr) => {
        match $table.small_kernel() {
            Some($k) => $body,
            None => {
                let $k = $table.big_kernel();
                $body
            }
        }
    };
}
pub(crate) use with_kernel;

pub struct Kernel<'a, T> {
    table: &'a VertexTable,
    points: Vec<[T; 2]>,
}

/// Per-base-line scratch space.
#[derive(Default)]
pub struct Scratch {
    /// Sign of each point against the base line.
    base: Vec<i8>,
    zeros: Vec<usize>,
    perturbed: Vec<i8>,
    fixed: Split,
    /// Sets touching the base line, with their nonzero sign summary.
    touching: Vec<(usize, bool, bool)>,
    seen: Vec<Vec<i8>>,
}

fn sign<T: ExactInt>(v: &T) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

impl<T: ExactInt> Kernel<'_, T> {
    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    /// Calls `visit` for every candidate on the line through unique vertices
    /// `u < w` whose split differs from all earlier candidates of that pair.
    pub fn visit_pair(
        &self,
        u: usize,
        w: usize,
        scratch: &mut Scratch,
        mut visit: impl FnMut(Candidate, &Split),
    ) {
        let (pu, pw) = (&self.points[u], &self.points[w]);
        let dx = pw[0].clone() - pu[0].clone();
        let dy = pw[1].clone() - pu[1].clone();

        scratch.base.clear();
        scratch.zeros.clear();
        for (idx, p) in self.points.iter().enumerate() {
            let f = dx.clone() * (p[1].clone() - pu[1].clone()) - dy.clone() * (p[0].clone() - pu[0].clone());
            let s = sign(&f);
            if s == 0 {
                scratch.zeros.push(idx);
            }
            scratch.base.push(s);
        }

        scratch.fixed.left.clear();
        scratch.fixed.right.clear();
        scratch.touching.clear();
        for (k, verts) in self.table.set_vertices.iter().enumerate() {
            let (mut pos, mut neg, mut zero) = (false, false, false);
            for &v in verts {
                match scratch.base[v] {
                    1 => pos = true,
                    -1 => neg = true,
                    _ => zero = true,
                }
            }
            if zero {
                scratch.touching.push((k, pos, neg));
            } else if !pos {
                scratch.fixed.left.push(k);
            } else if !neg {
                scratch.fixed.right.push(k);
            }
        }

        // secondary terms for vertices on the base line: d . (p - pivot)
        let along: Vec<(T, T, T)> = scratch
            .zeros
            .iter()
            .map(|&z| {
                let p = &self.points[z];
                let from_u = dx.clone() * (p[0].clone() - pu[0].clone()) + dy.clone() * (p[1].clone() - pu[1].clone());
                let from_w = dx.clone() * (p[0].clone() - pw[0].clone()) + dy.clone() * (p[1].clone() - pw[1].clone());
                (from_u.clone(), from_w.clone(), from_u + from_w)
            })
            .collect();

        scratch.seen.clear();
        for (variant, pert) in PERTURBATIONS.iter().enumerate() {
            scratch.perturbed.clear();
            for (i, _) in scratch.zeros.iter().enumerate() {
                let (from_u, from_w, from_mid) = &along[i];
                let turn = |pivot: &Pivot, dir: bool| {
                    let g = match pivot {
                        Pivot::First => sign(from_u),
                        Pivot::Second => sign(from_w),
                        Pivot::Midpoint => sign(from_mid),
                    };
                    if dir { -g } else { g }
                };
                let s = match pert {
                    Perturbation::Exact => 0,
                    Perturbation::Shift(t) => shift_sign(*t),
                    Perturbation::Turn(pivot, dir) => turn(pivot, *dir),
                    Perturbation::TurnShift(pivot, dir, t) => match turn(pivot, *dir) {
                        0 => shift_sign(*t),
                        g => g,
                    },
                };
                scratch.perturbed.push(s);
            }
            if scratch.seen.contains(&scratch.perturbed) {
                continue;
            }
            scratch.seen.push(scratch.perturbed.clone());

            let mut split = scratch.fixed.clone();
            for &(k, pos, neg) in &scratch.touching {
                let (mut p, mut n) = (pos, neg);
                for &v in &self.table.set_vertices[k] {
                    if scratch.base[v] == 0 {
                        let zi = scratch.zeros.binary_search(&v).expect("zero vertex recorded");
                        match scratch.perturbed[zi] {
                            1 => p = true,
                            -1 => n = true,
                            _ => {}
                        }
                    }
                }
                if !p {
                    split.left.push(k);
                }
                if !n {
                    split.right.push(k);
                }
            }
            split.left.sort_unstable();
            split.right.sort_unstable();
            visit(Candidate { first: u, second: w, variant }, &split);
        }
    }

    /// Exact line coefficients `(a, b, c)` in the integer frame, such that
    /// `a*X + b*Y - c` has the candidate's sign at every vertex.
    pub fn frame_coefficients(&self, cand: Candidate) -> (T, T, T) {
        let (pu, pw) = (&self.points[cand.first], &self.points[cand.second]);
        let dx = pw[0].clone() - pu[0].clone();
        let dy = pw[1].clone() - pu[1].clone();
        // value(p) = cross(d, p - u)
        let a = -dy.clone();
        let b = dx.clone();
        let c = dx.clone() * pu[1].clone() - dy.clone() * pu[0].clone();
        let two = T::from(2);
        let shift = |t: bool| T::from(if t { 1 } else { -1 });
        match cand.perturbation() {
            Perturbation::Exact => (a, b, c),
            Perturbation::Shift(t) => (a * two.clone(), b * two.clone(), c * two - shift(t)),
            Perturbation::Turn(pivot, dir) => self.turned(&a, &b, &c, &dx, &dy, cand, pivot, dir),
            Perturbation::TurnShift(pivot, dir, t) => {
                let (a, b, c) = self.turned(&a, &b, &c, &dx, &dy, cand, pivot, dir);
                (a * two.clone(), b * two.clone(), c * two - shift(t))
            }
        }
    }

    /// `M * f + g` where `g(p) = -+ d . (p - pivot)` and `M` exceeds `|g|` at
    /// every vertex, so vertices off the base line keep their sign.
    #[allow(clippy::too_many_arguments)]
    fn turned(&self, a: &T, b: &T, c: &T, dx: &T, dy: &T, cand: Candidate, pivot: Pivot, dir: bool) -> (T, T, T) {
        let (pu, pw) = (&self.points[cand.first], &self.points[cand.second]);
        // g(p) = ga*X + gb*Y - gc, matching the sign convention of visit_pair
        let (ga, gb, gc) = match pivot {
            Pivot::First => (dx.clone(), dy.clone(), dx.clone() * pu[0].clone() + dy.clone() * pu[1].clone()),
            Pivot::Second => (dx.clone(), dy.clone(), dx.clone() * pw[0].clone() + dy.clone() * pw[1].clone()),
            Pivot::Midpoint => (
                dx.clone() * T::from(2),
                dy.clone() * T::from(2),
                dx.clone() * (pu[0].clone() + pw[0].clone()) + dy.clone() * (pu[1].clone() + pw[1].clone()),
            ),
        };
        let (ga, gb, gc) = if dir { (-ga, -gb, -gc) } else { (ga, gb, gc) };
        let bound = self
            .points
            .iter()
            .map(|p| (ga.clone() * p[0].clone() + gb.clone() * p[1].clone() - gc.clone()).abs())
            .max()
            .expect("nonempty vertex table");
        let m = bound + T::from(2);
        (m.clone() * a.clone() + ga, m.clone() * b.clone() + gb, m * c.clone() + gc)
    }

    /// The candidate as an exact line in original coordinates.
    pub fn materialize(&self, cand: Candidate) -> DirectedLine {
        let (a, b, c) = self.frame_coefficients(cand);
        self.table.frame.line_to_original(a.into(), b.into(), c.into())
    }

    /// Enumerates every unordered vertex pair `(u, w)`, `u < w`, with `u` fixed.
    pub fn visit_row(&self, u: usize, scratch: &mut Scratch, mut visit: impl FnMut(Candidate, &Split)) {
        for w in u + 1..self.points.len() {
            self.visit_pair(u, w, scratch, &mut visit);
        }
    }
}

fn shift_sign(t: bool) -> i8 {
    if t {
        1
    } else {
        -1
    }
}
