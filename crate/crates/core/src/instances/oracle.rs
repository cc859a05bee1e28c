//! Brute-force check of a certificate.
//!
//! Enumerates explicit integer lines: for every pair of distinct vertices
//! `u`, `w` the line through them, the line shifted by a unit in either
//! direction (after doubling), and the line turned about `u`, `w` or their
//! midpoint by a slope small enough not to flip any vertex off the base
//! line, optionally shifted as well. Each line is written out as
//! `a*X + b*Y = c` and every vertex is evaluated against it. Nothing here
//! uses the cover, separator or pipeline code.

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

use super::{instance_hash, CertificateFile, Instance};
use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, DirectedLine, ExactInt, IntegerFrame, I128_COORD_LIMIT};
use crate::pipeline::SideCounts;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub instance_hash: String,
    pub claimed_guarantee: usize,
    /// Enumerated lines that weakly separate the pair.
    pub lines_checked: usize,
    /// Smallest `max(left, right)` over those lines.
    pub min_observed_max: usize,
    /// A line attaining `min_observed_max`.
    pub minimizer: Option<(DirectedLine, SideCounts)>,
    pub pass: bool,
    /// A separating line with `max(left, right) < claimed_guarantee`.
    pub counterexample: Option<(DirectedLine, SideCounts)>,
    /// Human-readable reasons for failure.
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleMinimum {
    pub g: usize,
    pub line: DirectedLine,
    pub counts: SideCounts,
    pub lines_checked: usize,
}

/// Which way a pivot turn or shift goes.
const SIGNS: [i64; 2] = [-1, 1];

struct Frame<T> {
    /// Vertices per set, in frame coordinates.
    sets: Vec<Vec<[T; 2]>>,
    /// Distinct vertices.
    points: Vec<[T; 2]>,
    frame: IntegerFrame,
}

fn build_frame<T: ExactInt>(sets: &[ConvexPolygon], convert: impl Fn(&BigInt) -> T) -> Frame<T> {
    let all: Vec<_> = sets.iter().flat_map(|s| s.vertices().iter().cloned()).collect();
    let frame = IntegerFrame::new(&all);
    let mut flat = frame.points().iter().map(|[x, y]| [convert(x), convert(y)]);
    let per_set: Vec<Vec<[T; 2]>> =
        sets.iter().map(|s| (0..s.len()).map(|_| flat.next().unwrap()).collect()).collect();
    let mut points: Vec<[T; 2]> = per_set.iter().flatten().cloned().collect();
    points.sort();
    points.dedup();
    Frame { sets: per_set, points, frame }
}

fn value<T: ExactInt>(l: &(T, T, T), p: &[T; 2]) -> T {
    l.0.clone() * p[0].clone() + l.1.clone() * p[1].clone() - l.2.clone()
}

/// Closed side of the line holding every point: -1 for `<= 0`, 1 for `>= 0`,
/// 0 when neither.
fn holding_side<T: ExactInt>(l: &(T, T, T), pts: &[[T; 2]]) -> i8 {
    let (mut neg, mut pos) = (false, false);
    for p in pts {
        let v = value(l, p);
        neg |= v.is_negative();
        pos |= v.is_positive();
    }
    match (neg, pos) {
        (_, false) => -1,
        (false, true) => 1,
        (true, true) => 0,
    }
}

fn side_counts<T: ExactInt>(l: &(T, T, T), sets: &[Vec<[T; 2]>]) -> SideCounts {
    let mut c = SideCounts::default();
    for s in sets {
        let (mut neg, mut pos) = (false, false);
        for p in s {
            let v = value(l, p);
            neg |= v.is_negative();
            pos |= v.is_positive();
        }
        c.left += usize::from(!pos);
        c.right += usize::from(!neg);
    }
    c
}

/// Every line of the family generated by the vertex pair `(u, w)`.
fn lines_for_pair<T: ExactInt>(points: &[[T; 2]], u: &[T; 2], w: &[T; 2]) -> Vec<(T, T, T)> {
    let t = |v: i64| T::from(v);
    let dx = w[0].clone() - u[0].clone();
    let dy = w[1].clone() - u[1].clone();
    // base line through u and w
    let a0 = u[1].clone() - w[1].clone();
    let b0 = dx.clone();
    let c0 = a0.clone() * u[0].clone() + b0.clone() * u[1].clone();
    let base = (a0.clone(), b0.clone(), c0.clone());

    let mut out = vec![base.clone()];
    for s in SIGNS {
        out.push((t(2) * a0.clone(), t(2) * b0.clone(), t(2) * c0.clone() - t(s)));
    }
    // pivots in doubled coordinates so the midpoint stays integral
    let pivots = [
        [t(2) * u[0].clone(), t(2) * u[1].clone()],
        [t(2) * w[0].clone(), t(2) * w[1].clone()],
        [u[0].clone() + w[0].clone(), u[1].clone() + w[1].clone()],
    ];
    for q in &pivots {
        // perpendicular through q: dx*2X + dy*2Y = dx*q.x + dy*q.y
        let perp = (t(2) * dx.clone(), t(2) * dy.clone(), dx.clone() * q[0].clone() + dy.clone() * q[1].clone());
        let bound = points.iter().map(|p| value(&perp, p).abs()).max().unwrap_or_else(|| t(0));
        let m = bound + t(1);
        for s in SIGNS {
            let turned = (
                m.clone() * a0.clone() + t(s) * perp.0.clone(),
                m.clone() * b0.clone() + t(s) * perp.1.clone(),
                m.clone() * c0.clone() + t(s) * perp.2.clone(),
            );
            for shift in SIGNS {
                out.push((
                    t(2) * turned.0.clone(),
                    t(2) * turned.1.clone(),
                    t(2) * turned.2.clone() - t(shift),
                ));
            }
            out.push(turned);
        }
    }
    out
}

struct Best {
    g: usize,
    line: DirectedLine,
    counts: SideCounts,
}

fn canonical<T: ExactInt>(frame: &IntegerFrame, l: &(T, T, T)) -> DirectedLine {
    frame.line_to_original(l.0.clone().into(), l.1.clone().into(), l.2.clone().into())
}

fn minimum_in<T: ExactInt>(f: &Frame<T>, i: usize, j: usize) -> Option<OracleMinimum> {
    let n = f.points.len();
    let (best, checked) = (0..n)
        .into_par_iter()
        .map(|ui| {
            let mut best: Option<Best> = None;
            let mut checked = 0usize;
            for wi in ui + 1..n {
                for l in lines_for_pair(&f.points, &f.points[ui], &f.points[wi]) {
                    let si = holding_side(&l, &f.sets[i]);
                    if si == 0 || holding_side(&l, &f.sets[j]) != -si {
                        continue;
                    }
                    checked += 1;
                    let counts = side_counts(&l, &f.sets);
                    let g = counts.left.max(counts.right);
                    if best.as_ref().is_none_or(|b| g <= b.g) {
                        let line = canonical(&f.frame, &l);
                        if best.as_ref().is_none_or(|b| (g, &line) < (b.g, &b.line)) {
                            best = Some(Best { g, line, counts });
                        }
                    }
                }
            }
            (best, checked)
        })
        .reduce(
            || (None, 0),
            |(a, ca), (b, cb)| {
                let best = match (a, b) {
                    (Some(a), Some(b)) => Some(if (b.g, &b.line) < (a.g, &a.line) { b } else { a }),
                    (a, b) => a.or(b),
                };
                (best, ca + cb)
            },
        );
    best.map(|b| OracleMinimum { g: b.g, line: b.line, counts: b.counts, lines_checked: checked })
}

fn fits_i128(sets: &[ConvexPolygon]) -> bool {
    let all: Vec<_> = sets.iter().flat_map(|s| s.vertices().iter().cloned()).collect();
    let limit = BigInt::from(I128_COORD_LIMIT);
    IntegerFrame::new(&all)
        .points()
        .iter()
        .all(|[x, y]| x.magnitude() < limit.magnitude() && y.magnitude() < limit.magnitude())
}

/// Smallest `max(left, right)` over enumerated lines weakly separating sets
/// `i` and `j`, with the smallest canonical line attaining it.
pub fn exhaustive_minimum(sets: &[ConvexPolygon], i: usize, j: usize) -> Option<OracleMinimum> {
    if i == j || i >= sets.len() || j >= sets.len() {
        return None;
    }
    if fits_i128(sets) {
        use num_traits::ToPrimitive;
        minimum_in(&build_frame(sets, |v| v.to_i128().unwrap()), i, j)
    } else {
        minimum_in(&build_frame(sets, BigInt::clone), i, j)
    }
}

/// Counts for an explicit line, plus per set -1 (left), 1 (right), 0 (cut).
fn counts_for(sets: &[ConvexPolygon], l: &DirectedLine) -> (SideCounts, Vec<i8>) {
    let side = |s: &ConvexPolygon| {
        let (mut neg, mut pos) = (false, false);
        for v in s.vertices() {
            let e = l.eval(v);
            neg |= e.is_negative();
            pos |= e.is_positive();
        }
        (neg, pos)
    };
    let mut counts = SideCounts::default();
    let mut sides = Vec::with_capacity(sets.len());
    for s in sets {
        let (neg, pos) = side(s);
        counts.left += usize::from(!pos);
        counts.right += usize::from(!neg);
        sides.push(match (neg, pos) {
            (false, false) => unreachable!("sets have nonempty interior"),
            (false, true) => 1,
            (true, false) => -1,
            (true, true) => 0,
        });
    }
    (counts, sides)
}

/// Checks a certificate against `inst` by exhaustive enumeration.
pub fn verify_certificate(inst: &Instance, cert: &CertificateFile) -> Result<VerificationReport> {
    let hash = instance_hash(inst);
    if hash != cert.instance_hash {
        return Err(Error::HashMismatch { expected: cert.instance_hash.clone(), found: hash });
    }
    let n = inst.len();
    let (a, b) = cert.pair_indices(n)?;
    let mut problems = Vec::new();

    let floor = n.div_ceil(18);
    if cert.guarantee < floor {
        problems.push(format!("guarantee {} is below ceil(n/18) = {floor}", cert.guarantee));
    }

    let witness = cert.witness_line.to_line()?;
    let (wcounts, wsides) = counts_for(&inst.sets, &witness);
    let weakly_apart = |x: i8, y: i8| matches!((x, y), (-1, 1) | (1, -1));
    if !weakly_apart(wsides[a], wsides[b]) {
        problems.push("witness line does not separate the pair".into());
    }
    if wcounts != cert.counts {
        problems.push(format!(
            "witness counts are ({}, {}), certificate says ({}, {})",
            wcounts.left, wcounts.right, cert.counts.left, cert.counts.right
        ));
    }

    let min = exhaustive_minimum(&inst.sets, a, b);
    let (lines_checked, min_observed_max, minimizer) = match &min {
        Some(m) => (m.lines_checked, m.g, Some((m.line.clone(), m.counts))),
        None => {
            problems.push("no enumerated line separates the pair".into());
            (0, 0, None)
        }
    };
    let counterexample = match &minimizer {
        Some(m) if min_observed_max < cert.guarantee => {
            problems.push(format!(
                "a separating line leaves at most {min_observed_max} sets on either side, below the claimed {}",
                cert.guarantee
            ));
            Some(m.clone())
        }
        _ => None,
    };
    Ok(VerificationReport {
        instance_hash: hash,
        claimed_guarantee: cert.guarantee,
        lines_checked,
        min_observed_max,
        minimizer,
        pass: problems.is_empty(),
        counterexample,
        problems,
    })
}
