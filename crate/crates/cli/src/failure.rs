use pairtile_core::{Error as CoreError, Rational2};
use serde::Serialize;

/// An error as reported on standard output, with exit code 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("{kind}: {message}")]
pub struct Failure {
    pub kind: String,
    pub message: String,
    /// Path of the offending input field, e.g. `polygons[0][2]`.
    pub field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

#[derive(Serialize)]
struct Envelope<'a> {
    error: &'a Failure,
}

impl Failure {
    pub fn new(kind: &str, message: impl Into<String>, field: Option<String>) -> Self {
        Failure { kind: kind.into(), message: message.into(), field, line: None, column: None }
    }

    pub fn parse(e: &serde_json::Error, field: Option<String>) -> Self {
        let (line, column) = if e.line() > 0 { (Some(e.line()), Some(e.column())) } else { (None, None) };
        Failure { kind: "ParseError".into(), message: e.to_string(), field, line, column }
    }

    pub fn usage(message: impl Into<String>, field: &str) -> Self {
        Failure::new("UsageError", message, Some(field.into()))
    }

    /// Maps a library error. `prefix` qualifies lattice fields inside a
    /// multiset document; `raw` lets edge errors point at input vertices.
    pub fn invariant(e: &CoreError, prefix: &str, raw: Option<&[Vec<Rational2>]>) -> Self {
        let edge_field = |d: &Rational2| raw.and_then(|r| locate_edges(r, d)).or_else(|| Some("polygons".into()));
        let (kind, field) = match e {
            CoreError::InvalidPolygon { component, .. } => {
                ("InvariantViolation", Some(format!("polygons[{component}]")))
            }
            CoreError::EmptyRegion => ("InvariantViolation", Some("polygons".into())),
            CoreError::OverlappingComponents { second, .. } => {
                ("InvariantViolation", Some(format!("polygons[{second}]")))
            }
            CoreError::SingularBasis => ("InvariantViolation", Some(format!("{prefix}basis"))),
            CoreError::NotPairing { direction, .. } => ("NotPairing", edge_field(direction)),
            CoreError::UnequalLengths { direction, .. } => ("UnequalLengths", edge_field(direction)),
            CoreError::UnbalancedPair { direction } => ("UnbalancedPair", edge_field(direction)),
            CoreError::CollinearPair { direction } => ("CollinearPair", edge_field(direction)),
            CoreError::MultiComponent => ("MultiComponent", Some("polygons".into())),
            CoreError::NotConvex => ("NotConvex", Some("polygons".into())),
            CoreError::NotSymmetric { .. } => ("NotSymmetric", Some("polygons".into())),
            CoreError::NonIntegerWeight { .. } => ("NonIntegerWeight", None),
            CoreError::ZeroVector => ("ZeroVector", None),
            CoreError::NotDiscrete { .. } => ("NotDiscrete", None),
            CoreError::DegenerateInput(_) => ("DegenerateInput", None),
            CoreError::UnsupportedMultiset => ("UnsupportedMultiset", Some("parts".into())),
            CoreError::InvalidParameter(_) => ("InvalidParameter", None),
        };
        Failure::new(kind, e.to_string(), field)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&Envelope { error: self }).expect("failure serializes")
    }
}

/// `polygons[i][j]` for every input edge `j -> j+1` parallel to `d`,
/// joined with commas.
fn locate_edges(raw: &[Vec<Rational2>], d: &Rational2) -> Option<String> {
    let mut hits = Vec::new();
    for (i, poly) in raw.iter().enumerate() {
        for j in 0..poly.len() {
            let edge = &poly[(j + 1) % poly.len()] - &poly[j];
            if !edge.is_zero() && edge.is_parallel(d) {
                hits.push(format!("polygons[{i}][{j}]"));
            }
        }
    }
    (!hits.is_empty()).then(|| hits.join(","))
}
