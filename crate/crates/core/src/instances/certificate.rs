//! Certificate files. Set indices are 1-based; coefficients are exact
//! integer strings.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::DirectedLine;
use crate::pipeline::{SideCounts, TheoremCertificate};

/// `a*x + b*y = c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineDoc {
    pub a: String,
    pub b: String,
    pub c: String,
}

impl LineDoc {
    pub fn from_line(l: &DirectedLine) -> Self {
        Self { a: l.a().to_string(), b: l.b().to_string(), c: l.c().to_string() }
    }

    pub fn to_line(&self) -> Result<DirectedLine> {
        let int = |s: &str| {
            let digits = s.strip_prefix('-').unwrap_or(s);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Validation(format!("witness coefficient {s:?} is not an integer")));
            }
            s.parse::<BigInt>().map_err(|e| Error::Validation(e.to_string()))
        };
        DirectedLine::from_integers(int(&self.a)?, int(&self.b)?, int(&self.c)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub instance_hash: String,
    /// `[A, B]`, 1-based.
    pub pair: [usize; 2],
    pub guarantee: usize,
    pub witness_line: LineDoc,
    /// Sets in the closed halfplanes `a*x + b*y <= c` and `>= c` of the witness.
    pub counts: SideCounts,
    /// 1-based sets in the closed halfplane of the witness holding `B`.
    pub separated: Vec<usize>,
}

impl CertificateFile {
    pub fn from_theorem(instance_hash: String, cert: &TheoremCertificate) -> Self {
        Self {
            instance_hash,
            pair: [cert.pair.0 + 1, cert.pair.1 + 1],
            guarantee: cert.guarantee,
            witness_line: LineDoc::from_line(&cert.witness.line),
            counts: cert.witness.counts,
            separated: cert.separated_by_witness.iter().map(|k| k + 1).collect(),
        }
    }

    /// The pair as 0-based indices, checked against `n`.
    pub fn pair_indices(&self, n: usize) -> Result<(usize, usize)> {
        let [a, b] = self.pair;
        if a == 0 || b == 0 || a > n || b > n || a == b {
            return Err(Error::Validation(format!("certificate pair [{a}, {b}] is not a pair of sets 1..={n}")));
        }
        Ok((a - 1, b - 1))
    }
}

pub fn parse_certificate(text: &str) -> Result<CertificateFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn serialize_certificate(cert: &CertificateFile) -> String {
    let mut s = serde_json::to_string_pretty(cert).expect("certificate serialises");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CertificateFile {
        CertificateFile {
            instance_hash: "ab".repeat(32),
            pair: [1, 2],
            guarantee: 1,
            witness_line: LineDoc { a: "3".into(), b: "1".into(), c: "-9".into() },
            counts: SideCounts { left: 1, right: 1 },
            separated: vec![2],
        }
    }

    #[test]
    fn round_trip() {
        let text = serialize_certificate(&sample());
        assert_eq!(parse_certificate(&text).unwrap(), sample());
        assert!(text.contains("\"witness_line\""));
    }

    #[test]
    fn coefficients_must_be_integers() {
        let mut c = sample();
        c.witness_line.a = "1/2".into();
        assert!(c.witness_line.to_line().is_err());
        c.witness_line.a = "0".into();
        c.witness_line.b = "0".into();
        assert!(c.witness_line.to_line().is_err());
    }

    #[test]
    fn pair_bounds() {
        let mut c = sample();
        assert_eq!(c.pair_indices(3).unwrap(), (0, 1));
        c.pair = [0, 1];
        assert!(c.pair_indices(3).is_err());
        c.pair = [2, 2];
        assert!(c.pair_indices(3).is_err());
        c.pair = [1, 4];
        assert!(c.pair_indices(3).is_err());
    }

    #[test]
    fn malformed_json_reports_position() {
        match parse_certificate("{\n  \"pair\": [1,\n}") {
            Err(Error::Parse { line, .. }) => assert!(line >= 2),
            other => panic!("{other:?}"),
        }
    }
}
