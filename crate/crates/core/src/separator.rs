//! Picking a polygon side whose line has many polygons on its far side.
//!
//! Every side of every grown polygon contributes one entry to a multiset of
//! supporting lines. A bipartite graph joins polygon `j` to line `k` when `j`
//! lies in the closed outer halfplane of `k`. Any two interior-disjoint convex
//! polygons are weakly separated by a side line of one of them, so the graph
//! has at least `C(n, 2)` edges and some line has degree at least
//! `C(n, 2) / m`, where `m <= 9n - 9` is the number of entries.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cover::{grow_cover, CoverResult};
use crate::error::{Error, Result};
use crate::geometry::{polygon_in_closed_halfplane, DirectedLine, HalfPlane, SideId};

/// One supporting line of the cover, tied to the polygon side that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportLineEntry {
    pub line: DirectedLine,
    pub owner: usize,
    /// Closed halfplane of `line` away from the owner.
    pub outward: HalfPlane,
    /// Side index within the owner's cover polygon.
    pub cover_side: usize,
    /// The input polygon side on the same line.
    pub source_side: SideId,
}

/// One entry per side of each cover polygon, in polygon-major order.
pub fn build_support_lines(cover: &CoverResult) -> Vec<SupportLineEntry> {
    cover
        .polygons
        .iter()
        .enumerate()
        .flat_map(|(owner, poly)| {
            (0..poly.len()).map(move |k| {
                let outward = poly.outer_halfplane(k);
                SupportLineEntry {
                    line: outward.line.clone(),
                    owner,
                    outward,
                    cover_side: k,
                    source_side: cover.provenance[owner][k],
                }
            })
        })
        .collect()
}

/// Bipartite polygon/line incidence graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceGraph {
    pub polygon_count: usize,
    pub line_count: usize,
    /// Polygons adjacent to each line, ascending.
    pub neighbours: Vec<Vec<usize>>,
}

impl IncidenceGraph {
    pub fn edge_count(&self) -> usize {
        self.neighbours.iter().map(Vec::len).sum()
    }

    pub fn degree(&self, k: usize) -> usize {
        self.neighbours[k].len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbours.iter().enumerate().flat_map(|(k, js)| js.iter().map(move |&j| (j, k)))
    }
}

/// Builds the graph and checks that every pair of cover polygons is covered
/// by at least one edge.
pub fn build_incidence_graph(
    cover: &CoverResult,
    lines: &[SupportLineEntry],
) -> Result<IncidenceGraph> {
    let n = cover.polygons.len();
    let neighbours: Vec<Vec<usize>> = lines
        .par_iter()
        .map(|entry| {
            debug_assert!(!polygon_in_closed_halfplane(&cover.polygons[entry.owner], &entry.outward));
            (0..n)
                .filter(|&j| j != entry.owner && polygon_in_closed_halfplane(&cover.polygons[j], &entry.outward))
                .collect()
        })
        .collect();
    for entry in lines {
        if polygon_in_closed_halfplane(&cover.polygons[entry.owner], &entry.outward) {
            return Err(Error::Internal(format!(
                "polygon {} lies in the outer halfplane of its own side {}",
                entry.owner, entry.cover_side
            )));
        }
    }

    let mut covered = vec![vec![false; n]; n];
    for (entry, js) in lines.iter().zip(&neighbours) {
        for &j in js {
            covered[entry.owner][j] = true;
            covered[j][entry.owner] = true;
        }
    }
    for (i, row) in covered.iter().enumerate() {
        if let Some(j) = (i + 1..n).find(|&j| !row[j]) {
            return Err(Error::PairUncovered { first: i, second: j });
        }
    }
    Ok(IncidenceGraph { polygon_count: n, line_count: lines.len(), neighbours })
}

/// `ceil(C(n, 2) / m)`.
pub fn pigeonhole_bound(n: usize, m: usize) -> usize {
    if m == 0 {
        return 0;
    }
    (n * n.saturating_sub(1) / 2).div_ceil(m)
}

/// A side line with the polygons it separates from its owner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorCertificate {
    pub owner: usize,
    /// Index of the chosen entry in the support-line list.
    pub line_index: usize,
    pub line: DirectedLine,
    pub outward: HalfPlane,
    pub source_side: SideId,
    pub separated: Vec<usize>,
    pub degree: usize,
}

/// Line vertex of maximum degree; ties go to the smallest index.
pub fn select_max_degree_line(graph: &IncidenceGraph, lines: &[SupportLineEntry]) -> SeparatorCertificate {
    let k = (0..graph.line_count)
        .max_by(|&a, &b| graph.degree(a).cmp(&graph.degree(b)).then(b.cmp(&a)))
        .expect("a cover has at least one side");
    let entry = &lines[k];
    SeparatorCertificate {
        owner: entry.owner,
        line_index: k,
        line: entry.line.clone(),
        outward: entry.outward.clone(),
        source_side: entry.source_side,
        separated: graph.neighbours[k].clone(),
        degree: graph.degree(k),
    }
}

/// Everything `find_separating_side` computed on the way to its answer.
#[derive(Clone, Debug)]
pub struct SeparatorRun {
    pub cover: CoverResult,
    pub lines: Vec<SupportLineEntry>,
    pub graph: IncidenceGraph,
    pub certificate: SeparatorCertificate,
}

/// Grow the cover, build the line multiset and graph, pick the busiest line.
pub fn find_separating_side(family: &[crate::geometry::ConvexPolygon]) -> Result<SeparatorCertificate> {
    run_separator(family).map(|run| run.certificate)
}

pub fn run_separator(family: &[crate::geometry::ConvexPolygon]) -> Result<SeparatorRun> {
    let cover = grow_cover(family)?;
    let lines = build_support_lines(&cover);
    let graph = build_incidence_graph(&cover, &lines)?;
    let certificate = select_max_degree_line(&graph, &lines);
    Ok(SeparatorRun { cover, lines, graph, certificate })
}
