//! From arbitrary disjoint convex sets to a certified pair.
//!
//! For every pair `(i, j)` pick a separating line `l_ij` minimising the
//! larger of its two closed-side set counts. Clip a triangle enclosing
//! everything by the halfplanes of the `l_ij` that face each set, which
//! yields interior-disjoint cells `P_i ⊇ C_i` bounded only by `l_ij` lines
//! and triangle sides. The separator then finds a side of some `P_i`, on
//! some `l_ij`, with at least `ceil(n/18)` cells beyond it; by minimality of
//! `l_ij` every line separating `C_i` from `C_j` leaves that many sets on one
//! side.

pub mod candidates;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cover::{check_family, CoverResult};
use crate::error::{Error, Result};
use crate::geometry::{
    clip_polygon, polygon_in_closed_halfplane, rat, ConvexPolygon, DirectedLine, HalfPlane,
    HalfSide, Point2, SideId,
};
use crate::separator::{run_separator, SeparatorCertificate};
use candidates::{with_kernel, Candidate, Kernel, Scratch, Split, VertexTable};

/// Sets wholly inside the closed left and closed right halfplanes of a line.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SideCounts {
    pub left: usize,
    pub right: usize,
}

impl SideCounts {
    pub fn max(&self) -> usize {
        self.left.max(self.right)
    }
}

pub fn count_sides_of_line(sets: &[ConvexPolygon], l: &DirectedLine) -> SideCounts {
    let left = HalfPlane::new(l.clone(), HalfSide::Left);
    let right = HalfPlane::new(l.clone(), HalfSide::Right);
    SideCounts {
        left: sets.iter().filter(|s| polygon_in_closed_halfplane(s, &left)).count(),
        right: sets.iter().filter(|s| polygon_in_closed_halfplane(s, &right)).count(),
    }
}

/// Which closed side of `l` holds `set`, if either.
pub fn side_holding(set: &ConvexPolygon, l: &DirectedLine) -> Option<HalfSide> {
    [HalfSide::Left, HalfSide::Right]
        .into_iter()
        .find(|&side| polygon_in_closed_halfplane(set, &HalfPlane::new(l.clone(), side)))
}

/// `l` weakly separates the two sets.
pub fn separates(a: &ConvexPolygon, b: &ConvexPolygon, l: &DirectedLine) -> bool {
    match side_holding(a, l) {
        Some(side) => polygon_in_closed_halfplane(b, &HalfPlane::new(l.clone(), side.opposite())),
        None => false,
    }
}

/// Every distinct line of the candidate family, canonicalised.
pub fn candidate_lines(sets: &[ConvexPolygon]) -> Vec<DirectedLine> {
    let table = VertexTable::new(sets);
    let mut lines: Vec<DirectedLine> = with_kernel!(table, k => {
        (0..k.point_count())
            .into_par_iter()
            .flat_map_iter(|u| {
                let mut scratch = Scratch::default();
                let mut out = Vec::new();
                k.visit_row(u, &mut scratch, |cand, _| out.push(k.materialize(cand)));
                out
            })
            .collect()
    });
    lines.sort();
    lines.dedup();
    lines
}

/// Distinct splits realised by the candidate family.
pub fn candidate_splits(sets: &[ConvexPolygon]) -> std::collections::HashSet<Split> {
    let table = VertexTable::new(sets);
    with_kernel!(table, k => {
        (0..k.point_count())
            .into_par_iter()
            .map(|u| {
                let mut scratch = Scratch::default();
                let mut out = std::collections::HashSet::new();
                k.visit_row(u, &mut scratch, |_, split| {
                    out.insert(split.clone());
                });
                out
            })
            .reduce(std::collections::HashSet::new, |mut a, b| {
                a.extend(b);
                a
            })
    })
}

/// A min-max separating line for the pair `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinMaxLine {
    pub i: usize,
    pub j: usize,
    pub line: DirectedLine,
    pub counts: SideCounts,
    pub g: usize,
    pub candidate: Candidate,
}

impl MinMaxLine {
    /// Closed halfplane of the line that contains set `k` (`k` is `i` or `j`).
    pub fn halfplane_toward(&self, sets: &[ConvexPolygon], k: usize) -> HalfPlane {
        let side = side_holding(&sets[k], &self.line).expect("min-max line separates its pair");
        HalfPlane::new(self.line.clone(), side)
    }
}

/// Best candidate per unordered pair, stored upper-triangular.
#[derive(Clone)]
struct PairBest {
    n: usize,
    best: Vec<Option<(usize, Candidate)>>,
}

impl PairBest {
    fn new(n: usize) -> Self {
        Self { n, best: vec![None; n * n] }
    }

    fn offer(&mut self, i: usize, j: usize, g: usize, cand: Candidate) {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let slot = &mut self.best[i * self.n + j];
        if slot.is_none_or(|cur| (g, cand) < cur) {
            *slot = Some((g, cand));
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for (idx, o) in other.best.into_iter().enumerate() {
            if let Some((g, c)) = o {
                if self.best[idx].is_none_or(|cur| (g, c) < cur) {
                    self.best[idx] = Some((g, c));
                }
            }
        }
        self
    }

    fn get(&self, i: usize, j: usize) -> Option<(usize, Candidate)> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.best[i * self.n + j]
    }
}

fn offer_split(best: &mut PairBest, cand: Candidate, split: &Split, only: Option<(usize, usize)>) {
    if split.left.is_empty() || split.right.is_empty() {
        return;
    }
    let g = split.left.len().max(split.right.len());
    match only {
        Some((i, j)) => {
            let hit = (split.left.binary_search(&i).is_ok() && split.right.binary_search(&j).is_ok())
                || (split.left.binary_search(&j).is_ok() && split.right.binary_search(&i).is_ok());
            if hit {
                best.offer(i, j, g, cand);
            }
        }
        None => {
            for &a in &split.left {
                for &b in &split.right {
                    if a != b {
                        best.offer(a, b, g, cand);
                    }
                }
            }
        }
    }
}

fn search<T: crate::geometry::ExactInt>(kernel: &Kernel<'_, T>, n: usize, only: Option<(usize, usize)>) -> PairBest {
    (0..kernel.point_count())
        .into_par_iter()
        .fold(
            || (PairBest::new(n), Scratch::default()),
            |(mut best, mut scratch), u| {
                kernel.visit_row(u, &mut scratch, |cand, split| offer_split(&mut best, cand, split, only));
                (best, scratch)
            },
        )
        .map(|(best, _)| best)
        .reduce(|| PairBest::new(n), PairBest::merge)
}

fn finish_line<T: crate::geometry::ExactInt>(
    kernel: &Kernel<'_, T>,
    sets: &[ConvexPolygon],
    i: usize,
    j: usize,
    g: usize,
    candidate: Candidate,
) -> Result<MinMaxLine> {
    let line = kernel.materialize(candidate);
    let counts = count_sides_of_line(sets, &line);
    if counts.max() != g || !separates(&sets[i], &sets[j], &line) {
        return Err(Error::Internal(format!(
            "materialised candidate {candidate:?} disagrees with its symbolic split"
        )));
    }
    Ok(MinMaxLine { i, j, line, counts, g, candidate })
}

/// Separating line for `(i, j)` minimising `max(left, right)` over the
/// candidate family; ties go to the earliest candidate in enumeration order.
pub fn minmax_separating_line(sets: &[ConvexPolygon], i: usize, j: usize) -> Result<MinMaxLine> {
    if i == j || i >= sets.len() || j >= sets.len() {
        return Err(Error::InvalidInput(format!("bad pair ({i}, {j}) for {} sets", sets.len())));
    }
    let table = VertexTable::new(sets);
    with_kernel!(table, k => {
        let best = search(&k, sets.len(), Some((i, j)));
        let (g, cand) = best.get(i, j).ok_or(Error::NoSeparator { first: i, second: j })?;
        finish_line(&k, sets, i, j, g, cand)
    })
}

/// Min-max lines for every pair, indexed by `i < j`.
#[derive(Clone, Debug)]
pub struct PairLines {
    n: usize,
    lines: Vec<Option<MinMaxLine>>,
}

impl PairLines {
    pub fn get(&self, i: usize, j: usize) -> &MinMaxLine {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.lines[i * self.n + j].as_ref().expect("i != j")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &MinMaxLine> {
        self.lines.iter().flatten()
    }
}

pub fn all_minmax_lines(sets: &[ConvexPolygon]) -> Result<PairLines> {
    let n = sets.len();
    let table = VertexTable::new(sets);
    with_kernel!(table, k => {
        let best = search(&k, n, None);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let finished: Vec<MinMaxLine> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (g, cand) = best.get(i, j).ok_or(Error::NoSeparator { first: i, second: j })?;
                finish_line(&k, sets, i, j, g, cand)
            })
            .collect::<Result<_>>()?;
        let mut lines = vec![None; n * n];
        for m in finished {
            let idx = m.i * n + m.j;
            lines[idx] = Some(m);
        }
        Ok(PairLines { n, lines })
    })
}

/// Right triangle around the doubled bounding box; every input vertex is
/// strictly inside it.
pub fn bounding_triangle(sets: &[ConvexPolygon]) -> Result<ConvexPolygon> {
    let mut boxes = sets.iter().map(ConvexPolygon::bbox);
    let (mut lo, mut hi) = boxes.next().ok_or_else(|| Error::InvalidInput("no sets".into()))?;
    for (l, h) in boxes {
        lo = Point2::new(lo.x.min(l.x), lo.y.min(l.y));
        hi = Point2::new(hi.x.max(h.x), hi.y.max(h.y));
    }
    let w = &hi.x - &lo.x;
    let h = &hi.y - &lo.y;
    let x0 = &lo.x - &w / rat(2);
    let y0 = &lo.y - &h / rat(2);
    // legs twice the doubled box; the hypotenuse passes through the box's far corner
    let legs = (rat(4) * &w, rat(4) * &h);
    ConvexPolygon::new(vec![
        Point2::new(x0.clone(), y0.clone()),
        Point2::new(&x0 + legs.0, y0.clone()),
        Point2::new(x0, &y0 + legs.1),
    ])
}

/// What carries a side of a clipped cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SideSource {
    /// Side `k` of the bounding triangle.
    Triangle(usize),
    /// The min-max line between this cell's set and set `j`.
    Separator(usize),
}

/// `P_i = T ∩ ⋂_{j≠i} H_ij` with per-side sources.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClippedCell {
    pub polygon: ConvexPolygon,
    pub sources: Vec<SideSource>,
}

pub fn build_clipped_polygons(
    sets: &[ConvexPolygon],
    triangle: &ConvexPolygon,
    lines: &PairLines,
) -> Result<Vec<ClippedCell>> {
    let n = sets.len();
    // provenance side index: 0..3 triangle sides, 3 + j the line l_ij
    let base = triangle.clone().with_all_provenance(usize::MAX);
    (0..n)
        .map(|i| {
            let mut cell = base.clone();
            for j in (0..n).filter(|&j| j != i) {
                let h = lines.get(i, j).halfplane_toward(sets, i);
                let mut clipped = clip_polygon(&cell, &h).ok_or_else(|| {
                    Error::Internal(format!("cell {i} vanished when clipped by l_{i}{j}"))
                })?;
                for k in 0..clipped.len() {
                    if clipped.provenance()[k].is_none() {
                        clipped.set_provenance(k, Some(SideId { polygon: usize::MAX, side: 3 + j }));
                    }
                }
                cell = clipped;
            }
            let sources = cell
                .provenance()
                .iter()
                .map(|id| match id.expect("clipped sides are tagged").side {
                    k if k < 3 => SideSource::Triangle(k),
                    k => SideSource::Separator(k - 3),
                })
                .collect();
            if !sets[i].vertices().iter().all(|v| cell.contains_point(v)) {
                return Err(Error::Internal(format!("cell {i} does not contain its set")));
            }
            Ok(ClippedCell { polygon: cell, sources })
        })
        .collect()
}

/// The final answer: every line separating sets `pair.0` and `pair.1` has
/// at least `guarantee` sets in one of its closed halfplanes.
#[derive(Clone, Debug)]
pub struct TheoremCertificate {
    pub pair: (usize, usize),
    pub witness: MinMaxLine,
    pub guarantee: usize,
    /// Sets in the closed halfplane of the witness that holds `pair.1`.
    pub separated_by_witness: Vec<usize>,
    pub clipped_family: Vec<ClippedCell>,
    /// Present for `n >= 3`.
    pub cover: Option<CoverResult>,
    pub separator: Option<SeparatorCertificate>,
}

fn far_side(sets: &[ConvexPolygon], witness: &MinMaxLine, toward: usize) -> Vec<usize> {
    let h = witness.halfplane_toward(sets, toward);
    (0..sets.len()).filter(|&k| polygon_in_closed_halfplane(&sets[k], &h)).collect()
}

pub fn solve(sets: &[ConvexPolygon]) -> Result<TheoremCertificate> {
    check_family(sets, 2)?;
    let n = sets.len();
    let lines = all_minmax_lines(sets)?;
    let triangle = bounding_triangle(sets)?;
    let cells = build_clipped_polygons(sets, &triangle, &lines)?;

    if n == 2 {
        let witness = lines.get(0, 1).clone();
        return Ok(TheoremCertificate {
            pair: (0, 1),
            guarantee: witness.g,
            separated_by_witness: far_side(sets, &witness, 1),
            witness,
            clipped_family: cells,
            cover: None,
            separator: None,
        });
    }

    let polygons: Vec<ConvexPolygon> = cells.iter().map(|c| c.polygon.clone()).collect();
    let run = run_separator(&polygons)?;
    let cert = run.certificate;
    let owner = cert.owner;
    let j = match cells[owner].sources[cert.source_side.side] {
        SideSource::Separator(j) => j,
        SideSource::Triangle(k) => {
            return Err(Error::Internal(format!("selected line is bounding triangle side {k}")))
        }
    };
    let witness = lines.get(owner, j).clone();
    if witness.line != cert.line {
        return Err(Error::Internal("selected side is not on its recorded l_ij".into()));
    }
    let guarantee = witness.g;
    if guarantee < cert.degree || guarantee < crate::guaranteed_count(n) {
        return Err(Error::Internal(format!(
            "guarantee {guarantee} below degree {} or ceil(n/18)",
            cert.degree
        )));
    }
    Ok(TheoremCertificate {
        pair: (owner, j),
        separated_by_witness: far_side(sets, &witness, j),
        witness,
        guarantee,
        clipped_family: cells,
        cover: Some(run.cover),
        separator: Some(cert),
    })
}

#[cfg(test)]
mod tests;
