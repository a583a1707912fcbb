use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::point::{Rational2, Q};
use crate::spectral::Orientation;

/// Why a vertex list is not an admissible simple polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolygonDefect {
    TooFewVertices,
    ZeroArea,
    SelfIntersecting,
}

impl core::fmt::Display for PolygonDefect {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            PolygonDefect::TooFewVertices => "fewer than 3 distinct non-collinear vertices",
            PolygonDefect::ZeroArea => "zero signed area",
            PolygonDefect::SelfIntersecting => "boundary self-intersects",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("component {component}: {defect}")]
    InvalidPolygon { component: usize, defect: PolygonDefect },
    #[error("region has no components")]
    EmptyRegion,
    #[error("components {first} and {second} overlap (holes and nesting are not supported)")]
    OverlappingComponents { first: usize, second: usize },
    #[error("singular lattice basis")]
    SingularBasis,
    #[error("direction {direction} has {count} edges, pairing needs exactly 2")]
    NotPairing { direction: Rational2, count: usize },
    #[error("parallel edges along {direction} have squared lengths {first} and {second}")]
    UnequalLengths { direction: Rational2, first: Q, second: Q },
    #[error("parallel edges along {direction} are traversed in the same sense, their boundary measures cannot cancel")]
    UnbalancedPair { direction: Rational2 },
    #[error("parallel edges along {direction} lie on one line")]
    CollinearPair { direction: Rational2 },
    #[error("region has more than one component")]
    MultiComponent,
    #[error("region is not convex")]
    NotConvex,
    #[error("region is not centrally symmetric{}", if *.about_origin { " about the origin" } else { "" })]
    NotSymmetric { about_origin: bool },
    #[error("criterion holds but area/det = {weight} is not an integer")]
    NonIntegerWeight { weight: Q },
    #[error("zero vector has no geometric inverse")]
    ZeroVector,
    #[error("zero sets share the orientations {common:?}; their intersection contains lines")]
    NotDiscrete { common: Vec<Orientation> },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("multiset input is not a single lattice of multiplicity 1")]
    UnsupportedMultiset,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = core::result::Result<T, Error>;
