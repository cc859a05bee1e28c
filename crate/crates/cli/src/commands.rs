use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use sepline_core::geometry::{format_rational, parse_rational, ConvexPolygon, Point2};
use sepline_core::instances::{
    instance_hash, parse_certificate, parse_instance, random_disjoint_polygons, serialize_certificate,
    serialize_instance, verify_certificate, CertificateFile, GeneratorParams, Instance,
};
use sepline_core::pipeline::{solve as solve_sets, SideSource, TheoremCertificate};
use sepline_core::Error;

use crate::render::{render_svg, RenderStyle};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_VERIFY_FAILED: u8 = 4;
pub const EXIT_INTERNAL: u8 = 5;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        Self { code: EXIT_IO, message: format!("{}: {e}", path.display()) }
    }

    fn core(path: Option<&Path>, e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) => EXIT_USAGE,
            Error::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_INVALID,
        };
        let message = match path {
            Some(p) => format!("{}: {e}", p.display()),
            None => e.to_string(),
        };
        Self { code, message }
    }
}

type CliResult = Result<(), CliError>;

pub struct Output {
    pub quiet: bool,
}

impl Output {
    fn say(&self, line: impl AsRef<str>) {
        if !self.quiet {
            println!("{}", line.as_ref());
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> CliResult {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

fn load_instance(path: &Path) -> Result<Instance, CliError> {
    parse_instance(&read(path)?).map_err(|e| CliError::core(Some(path), e))
}

#[allow(clippy::too_many_arguments)]
pub fn generate(
    out: &Output,
    n: usize,
    seed: u64,
    k_min: usize,
    k_max: usize,
    spread: i64,
    min_gap: &str,
    path: &Path,
) -> CliResult {
    let min_gap = parse_rational(min_gap).map_err(|e| CliError { code: EXIT_USAGE, message: format!("--min-gap: {e}") })?;
    let params = GeneratorParams { k_min, k_max, spread, min_gap };
    let inst = random_disjoint_polygons(n, seed, &params).map_err(|e| CliError::core(None, e))?;
    write_atomic(path, &serialize_instance(&inst))?;
    out.say(format!("wrote {} sets to {}", inst.len(), path.display()));
    Ok(())
}

/// Vertices as exact strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonDoc {
    pub vertices: Vec<[String; 2]>,
}

impl PolygonDoc {
    fn from_polygon(p: &ConvexPolygon) -> Self {
        Self { vertices: p.vertices().iter().map(|v| [format_rational(&v.x), format_rational(&v.y)]).collect() }
    }

    pub fn to_polygon(&self) -> Result<ConvexPolygon, Error> {
        let coord = |s: &str| parse_rational(s).map_err(|m| Error::Parse { line: 0, column: 0, message: m });
        let vs = self
            .vertices
            .iter()
            .map(|[x, y]| Ok(Point2::new(coord(x)?, coord(y)?)))
            .collect::<Result<Vec<_>, Error>>()?;
        ConvexPolygon::new(vs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceDoc {
    /// Side of the bounding triangle, 1-based.
    Triangle(usize),
    /// Min-max line between this cell's set and the given set, 1-based.
    Separator(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDoc {
    #[serde(flatten)]
    pub polygon: PolygonDoc,
    pub sources: Vec<SourceDoc>,
}

/// Side `side` of cell `cell`, both 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideRef {
    pub cell: usize,
    pub side: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverPolygonDoc {
    #[serde(flatten)]
    pub polygon: PolygonDoc,
    pub sides: Vec<SideRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverFile {
    pub instance_hash: String,
    pub clipped: Vec<CellDoc>,
    /// Absent for two sets.
    pub cover: Option<Vec<CoverPolygonDoc>>,
}

impl CoverFile {
    fn from_theorem(hash: String, cert: &TheoremCertificate) -> Self {
        let clipped = cert
            .clipped_family
            .iter()
            .map(|c| CellDoc {
                polygon: PolygonDoc::from_polygon(&c.polygon),
                sources: c
                    .sources
                    .iter()
                    .map(|s| match *s {
                        SideSource::Triangle(k) => SourceDoc::Triangle(k + 1),
                        SideSource::Separator(j) => SourceDoc::Separator(j + 1),
                    })
                    .collect(),
            })
            .collect();
        let cover = cert.cover.as_ref().map(|cover| {
            cover
                .polygons
                .iter()
                .zip(&cover.provenance)
                .map(|(p, ids)| CoverPolygonDoc {
                    polygon: PolygonDoc::from_polygon(p),
                    sides: ids.iter().map(|id| SideRef { cell: id.polygon + 1, side: id.side + 1 }).collect(),
                })
                .collect()
        });
        Self { instance_hash: hash, clipped, cover }
    }
}

/// `<dir>/<stem>.cover.json` for the certificate path `<dir>/<stem>.<ext>`.
pub fn cover_path(certificate: &Path) -> PathBuf {
    let stem = certificate.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    certificate.with_file_name(format!("{stem}.cover.json"))
}

pub fn solve(out: &Output, instance: &Path, path: &Path, emit_cover: bool) -> CliResult {
    let inst = load_instance(instance)?;
    let cert = solve_sets(&inst.sets).map_err(|e| CliError::core(Some(instance), e))?;
    let hash = instance_hash(&inst);
    let file = CertificateFile::from_theorem(hash.clone(), &cert);
    write_atomic(path, &serialize_certificate(&file))?;
    if emit_cover {
        let cover = CoverFile::from_theorem(hash, &cert);
        let mut text = serde_json::to_string_pretty(&cover).expect("cover file serialises");
        text.push('\n');
        write_atomic(&cover_path(path), &text)?;
    }
    out.say(format!(
        "pair [{}, {}]: every separating line leaves at least {} of {} sets on one side",
        file.pair[0],
        file.pair[1],
        file.guarantee,
        inst.len()
    ));
    Ok(())
}

pub fn verify(out: &Output, instance: &Path, certificate: &Path) -> CliResult {
    let inst = load_instance(instance)?;
    let cert = parse_certificate(&read(certificate)?).map_err(|e| CliError::core(Some(certificate), e))?;
    let report = verify_certificate(&inst, &cert).map_err(|e| CliError::core(Some(certificate), e))?;
    let describe = |line: &sepline_core::geometry::DirectedLine, c: &sepline_core::pipeline::SideCounts| {
        format!("{}*x + {}*y = {} (left {}, right {})", line.a(), line.b(), line.c(), c.left, c.right)
    };
    if report.pass {
        out.say(format!(
            "PASS pair [{}, {}] guarantee {}: {} separating lines checked, minimum max {}",
            cert.pair[0], cert.pair[1], report.claimed_guarantee, report.lines_checked, report.min_observed_max
        ));
        if let Some((line, counts)) = &report.minimizer {
            out.say(format!("minimizer: {}", describe(line, counts)));
        }
        Ok(())
    } else {
        // failures are always reported, even with --quiet
        println!(
            "FAIL pair [{}, {}] guarantee {}: {} separating lines checked, minimum max {}",
            cert.pair[0], cert.pair[1], report.claimed_guarantee, report.lines_checked, report.min_observed_max
        );
        for p in &report.problems {
            println!("problem: {p}");
        }
        if let Some((line, counts)) = &report.counterexample {
            println!("counterexample: {}", describe(line, counts));
        }
        Err(CliError { code: EXIT_VERIFY_FAILED, message: "certificate rejected".into() })
    }
}

pub fn render(
    out: &Output,
    instance: &Path,
    certificate: Option<&Path>,
    cover: Option<&Path>,
    path: &Path,
) -> CliResult {
    let inst = load_instance(instance)?;
    let cert = match certificate {
        Some(p) => Some(parse_certificate(&read(p)?).map_err(|e| CliError::core(Some(p), e))?),
        None => None,
    };
    let cover_polygons = match cover {
        Some(p) => {
            let file: CoverFile = serde_json::from_str(&read(p)?).map_err(|e| {
                CliError::core(Some(p), Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })
            })?;
            let polys = file.cover.unwrap_or_default();
            polys
                .iter()
                .map(|d| d.polygon.to_polygon())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::core(Some(p), e))?
        }
        None => Vec::new(),
    };
    let svg = render_svg(&inst, cert.as_ref(), &cover_polygons, &RenderStyle::default())
        .map_err(|e| CliError::core(Some(instance), e))?;
    write_atomic(path, &svg)?;
    out.say(format!("wrote {}", path.display()));
    Ok(())
}
