//! Exact decision, certification and independent verification of multiple
//! translational tilings of the plane by polygons with the pairing property
//! (every edge has exactly one other edge parallel to it).
//!
//! * [`geometry`]: rational polygons, regions, point location and extraction
//!   of edge pairs `(e, τ)`.
//! * [`lattice`]: rational lattices in Hermite normal form, duals, exact
//!   membership and the segment–lattice test behind the criterion.
//! * [`criterion`]: the per-pair lattice tiling test and the edge-wise test
//!   for convex symmetric tiles, with re-checkable certificates.
//! * [`spectral`]: zero sets of edge-pair Fourier transforms, the
//!   quasi-periodicity certificate and numeric diagnostics.
//! * [`oracle`]: brute-force coverage counting, exact on one period or
//!   sampled for general multisets.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// Errors carry the exact offending vectors; they are not on any hot path.
#![allow(clippy::result_large_err)]

extern crate alloc;

pub mod arrangement;
pub mod criterion;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod oracle;
pub mod point;
pub mod spectral;
pub mod triangulate;

pub use criterion::{center, check_bolle, check_lattice_tiling, PairJustification, Rule, TilingVerdict};
pub use error::{Error, PolygonDefect, Result};
pub use geometry::{
    area, extract_pairing, is_centrally_symmetric, is_convex, is_parallelogram, point_location, EdgePair, Location,
    PolygonalRegion, SimplePolygon,
};
pub use lattice::{Lattice, QBox, QuasiPeriodicSet, TranslatedLattice};
pub use oracle::{
    coverage_at, verify_tiling_exact, verify_tiling_sampled, Coverage, CoverageMap, CoverageReport, Evidence, Witness,
};
pub use point::{q, qi, Rational2, Q};
pub use spectral::{
    convex_classifier, density_at_zero, ft_eval, geometric_inverse, quasi_periodicity_certificate, vanishes_at,
    zero_set, zero_set_intersection_in_disc, LineFamily, Orientation, QuasiPeriodicityCertificate, ZeroSet,
};
