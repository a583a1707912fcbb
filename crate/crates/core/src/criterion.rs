//! Exact decision of multiple lattice tiling for pairing polygons.
//!
//! For each edge pair `(e, τ)` the region tiles with `Λ` iff either `τ ∈ Λ`,
//! or `e ∈ Λ` and `τ + θe ∈ Λ` for some `0 < θ < 1`. The classical test for
//! convex, centrally symmetric tiles is implemented alongside as
//! [`check_bolle`] so the two can be compared.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::geometry::{area, extract_pairing, is_centrally_symmetric, is_convex, EdgePair, PolygonalRegion};
use crate::lattice::Lattice;
use crate::point::{Rational2, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `τ ∈ Λ`.
    TauInLattice,
    /// `e ∈ Λ` and `τ + θe ∈ Λ`.
    EdgeRule {
        theta: Q,
    },
    /// Both edge midpoints lie in `½Λ`.
    HalfLatticeMidpoints,
    /// `e ∈ Λ`, and each edge `[start, start + e]` contains
    /// `start + θe ∈ ½Λ` for the recorded `θ ∈ (0, 1)`.
    EdgeInLatticeWithHalfPoints {
        thetas: [Q; 2],
    },
    Fails,
}

impl Rule {
    pub fn passes(&self) -> bool {
        !matches!(self, Rule::Fails)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairJustification {
    pub pair: EdgePair,
    pub rule: Rule,
}

impl PairJustification {
    /// Re-checks the certificate against `lattice` from scratch.
    pub fn recheck(&self, lattice: &Lattice) -> bool {
        let EdgePair { e, tau, .. } = &self.pair;
        let unit = |t: &Q| *t > Q::from_integer(0.into()) && *t < Q::from_integer(1.into());
        match &self.rule {
            Rule::TauInLattice => lattice.contains(tau),
            Rule::EdgeRule { theta } => {
                unit(theta) && lattice.contains(e) && lattice.contains(&(tau + &e.scale(theta)))
            }
            Rule::HalfLatticeMidpoints => self.pair.midpoints.iter().all(|m| lattice.half_contains(m)),
            Rule::EdgeInLatticeWithHalfPoints { thetas } => {
                lattice.contains(e)
                    && self
                        .pair
                        .segments()
                        .iter()
                        .zip(thetas)
                        .all(|((start, _), t)| unit(t) && lattice.half_contains(&(start + &e.scale(t))))
            }
            Rule::Fails => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingVerdict {
    pub tiles: bool,
    /// `area / det`, present when the region tiles.
    pub weight: Option<BigInt>,
    pub justifications: Vec<PairJustification>,
    /// Index of the first failing pair.
    pub failure_witness: Option<usize>,
}

fn assemble(
    region: &PolygonalRegion,
    lattice: &Lattice,
    justifications: Vec<PairJustification>,
) -> Result<TilingVerdict> {
    let failure_witness = justifications.iter().position(|j| !j.rule.passes());
    let tiles = failure_witness.is_none();
    let weight = if tiles {
        let w = area(region) / lattice.det();
        if !w.is_integer() {
            return Err(Error::NonIntegerWeight { weight: w });
        }
        Some(w.to_integer())
    } else {
        None
    };
    Ok(TilingVerdict { tiles, weight, justifications, failure_witness })
}

fn pair_rule(pair: &EdgePair, lattice: &Lattice) -> Rule {
    if lattice.contains(&pair.tau) {
        return Rule::TauInLattice;
    }
    if lattice.contains(&pair.e) {
        if let Some(theta) = lattice.segment_interior_point(&pair.tau, &pair.e) {
            return Rule::EdgeRule { theta };
        }
    }
    Rule::Fails
}

/// Decides whether `region + lattice` is a multiple tiling, with one
/// certificate per edge pair.
pub fn check_lattice_tiling(region: &PolygonalRegion, lattice: &Lattice) -> Result<TilingVerdict> {
    let pairs = extract_pairing(region)?;
    let justifications = pairs
        .into_iter()
        .map(|pair| {
            let rule = pair_rule(&pair, lattice);
            PairJustification { pair, rule }
        })
        .collect();
    assemble(region, lattice, justifications)
}

/// Edge-wise test for a convex region symmetric about the origin: every edge
/// needs a point of `½Λ` in its relative interior, and its midpoint in `½Λ`
/// unless the edge vector lies in `Λ`.
pub fn check_bolle(region: &PolygonalRegion, lattice: &Lattice) -> Result<TilingVerdict> {
    if !matches!(is_convex(region), Ok(true)) {
        return Err(Error::NotConvex);
    }
    match is_centrally_symmetric(region) {
        Some(c) if c.is_zero() => {}
        Some(_) => return Err(Error::NotSymmetric { about_origin: true }),
        None => return Err(Error::NotSymmetric { about_origin: false }),
    }
    let half = lattice.half();
    let pairs = extract_pairing(region)?;
    let justifications = pairs
        .into_iter()
        .map(|pair| {
            let segments = pair.segments();
            let e_in = lattice.contains(&pair.e);
            let mut thetas = Vec::with_capacity(2);
            let mut midpoints_ok = true;
            let mut ok = true;
            for ((start, _), mid) in segments.iter().zip(&pair.midpoints) {
                let interior = half.segment_interior_point(start, &pair.e);
                let mid_ok = half.contains(mid);
                midpoints_ok &= mid_ok;
                ok &= interior.is_some() && (mid_ok || e_in);
                thetas.push(interior);
            }
            let rule = if !ok {
                Rule::Fails
            } else if midpoints_ok {
                Rule::HalfLatticeMidpoints
            } else {
                let mut t = thetas.into_iter().map(|t| t.expect("checked above"));
                Rule::EdgeInLatticeWithHalfPoints { thetas: [t.next().unwrap(), t.next().unwrap()] }
            };
            PairJustification { pair, rule }
        })
        .collect();
    assemble(region, lattice, justifications)
}

/// Translates a centrally symmetric region so its center is the origin.
pub fn center(region: &PolygonalRegion) -> Result<(PolygonalRegion, Rational2)> {
    let c = is_centrally_symmetric(region).ok_or(Error::NotSymmetric { about_origin: false })?;
    Ok((region.translate(&-&c), c))
}
