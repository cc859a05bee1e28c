//! Instances: the JSON file format, validation, a seeded generator and the
//! brute-force certificate oracle.
//!
//! Instance files look like
//!
//! ```json
//! {
//!   "label": "three squares",
//!   "seed": null,
//!   "sets": [
//!     {"vertices": [["0", "0"], ["2", "0"], ["2", "2"], ["0", "2"]]}
//!   ]
//! }
//! ```
//!
//! Coordinates are exact rationals written `"p/q"` or `"p"`; JSON numbers
//! are rejected. Set and vertex indices shown to users are 1-based.

pub mod certificate;
pub mod generate;
pub mod oracle;

use std::fmt;

use serde::de::{self, Deserializer};
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geometry::{
    format_rational, interiors_intersect, orientation, parse_rational, ConvexPolygon, Orientation,
    Point2, Rational,
};

pub use certificate::{parse_certificate, serialize_certificate, CertificateFile, LineDoc};
pub use generate::{random_disjoint_polygons, GeneratorParams};
pub use oracle::{exhaustive_minimum, verify_certificate, OracleMinimum, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub label: String,
    pub seed: Option<u64>,
    pub sets: Vec<ConvexPolygon>,
}

impl Instance {
    pub fn new(label: impl Into<String>, seed: Option<u64>, sets: Vec<ConvexPolygon>) -> Self {
        Self { label: label.into(), seed, sets }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn hash(&self) -> String {
        instance_hash(self)
    }
}

/// First problem found by [`validate_instance`]. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooFewVertices { set: usize, count: usize },
    /// Vertices `vertex - 1, vertex, vertex + 1` do not turn strictly.
    NotStrictlyConvex { set: usize, vertex: usize },
    /// Turns are consistent but the boundary winds more than once.
    SelfIntersecting { set: usize },
    Overlap { first: usize, second: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::TooFewVertices { set, count } => {
                write!(f, "set {} has {count} vertices, need at least 3", set + 1)
            }
            Violation::NotStrictlyConvex { set, vertex } => {
                write!(f, "set {} is not strictly convex at vertex {}", set + 1, vertex + 1)
            }
            Violation::SelfIntersecting { set } => write!(f, "set {} is not a simple polygon", set + 1),
            Violation::Overlap { first, second } => {
                write!(f, "sets {} and {} have overlapping interiors", first + 1, second + 1)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }

    pub fn into_result(self) -> Result<()> {
        match self.violation {
            None => Ok(()),
            Some(v) => Err(Error::Validation(v.to_string())),
        }
    }
}

/// Checks raw vertex lists: strict convexity of each, then pairwise
/// interior-disjointness.
pub fn validate_vertex_lists(sets: &[Vec<Point2>]) -> ValidationReport {
    let mut polygons = Vec::with_capacity(sets.len());
    for (k, vs) in sets.iter().enumerate() {
        if let Some(v) = convexity_violation(k, vs) {
            return ValidationReport { violation: Some(v) };
        }
        match ConvexPolygon::new(vs.clone()) {
            Ok(p) => polygons.push(p),
            Err(_) => return ValidationReport { violation: Some(Violation::SelfIntersecting { set: k }) },
        }
    }
    validate_polygons(&polygons)
}

pub fn validate_instance(inst: &Instance) -> ValidationReport {
    let raw: Vec<Vec<Point2>> = inst.sets.iter().map(|p| p.vertices().to_vec()).collect();
    validate_vertex_lists(&raw)
}

fn validate_polygons(polygons: &[ConvexPolygon]) -> ValidationReport {
    for i in 0..polygons.len() {
        for j in i + 1..polygons.len() {
            if interiors_intersect(&polygons[i], &polygons[j]) {
                return ValidationReport { violation: Some(Violation::Overlap { first: i, second: j }) };
            }
        }
    }
    ValidationReport::default()
}

fn convexity_violation(set: usize, vs: &[Point2]) -> Option<Violation> {
    let n = vs.len();
    if n < 3 {
        return Some(Violation::TooFewVertices { set, count: n });
    }
    let mut turn = None;
    for k in 0..n {
        let o = orientation(&vs[(k + n - 1) % n], &vs[k], &vs[(k + 1) % n]);
        if o == Orientation::Collinear || turn.is_some_and(|t| t != o) {
            return Some(Violation::NotStrictlyConvex { set, vertex: k });
        }
        turn = Some(o);
    }
    None
}

struct Coord(Rational);

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(Coord).map_err(de::Error::custom)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SetDoc {
    vertices: Vec<(Coord, Coord)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    label: String,
    seed: Option<u64>,
    sets: Vec<SetDoc>,
}

/// Parses and validates an instance document. Clockwise sets are reversed.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let raw: Vec<Vec<Point2>> = doc
        .sets
        .into_iter()
        .map(|s| s.vertices.into_iter().map(|(x, y)| Point2::new(x.0, y.0)).collect())
        .collect();
    validate_vertex_lists(&raw).into_result()?;
    let sets = raw
        .into_iter()
        .map(ConvexPolygon::new)
        .collect::<Result<Vec<_>>>()?;
    Ok(Instance { label: doc.label, seed: doc.seed, sets })
}

/// Canonical bytes: one set per line, vertices CCW as stored.
pub fn serialize_instance(inst: &Instance) -> String {
    let quote = |s: &str| serde_json::to_string(s).expect("strings serialise");
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"label\": {},\n", quote(&inst.label)));
    match inst.seed {
        Some(s) => out.push_str(&format!("  \"seed\": {s},\n")),
        None => out.push_str("  \"seed\": null,\n"),
    }
    out.push_str("  \"sets\": [");
    for (k, set) in inst.sets.iter().enumerate() {
        out.push_str(if k == 0 { "\n" } else { ",\n" });
        let vs: Vec<String> = set
            .vertices()
            .iter()
            .map(|p| format!("[{}, {}]", quote(&format_rational(&p.x)), quote(&format_rational(&p.y))))
            .collect();
        out.push_str(&format!("    {{\"vertices\": [{}]}}", vs.join(", ")));
    }
    if !inst.sets.is_empty() {
        out.push_str("\n  ");
    }
    out.push_str("]\n}\n");
    out
}

/// SHA-256 of the canonical serialisation, lowercase hex.
pub fn instance_hash(inst: &Instance) -> String {
    hex::encode(Sha256::digest(serialize_instance(inst).as_bytes()))
}
