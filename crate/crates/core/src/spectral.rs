//! Zero sets of edge-pair Fourier transforms and what they imply.
//!
//! The signed arc-length measure of an edge pair `(e, τ)`, placed with its two
//! segments centred at `±τ/2`, has Fourier transform
//!
//! ```text
//! μ̂(ξ) = −2i · |e| · sinc(⟨e, ξ⟩) · sin(π ⟨τ, ξ⟩),   sinc(x) = sin(πx) / (πx)
//! ```
//!
//! which vanishes exactly on `{⟨τ, ξ⟩ ∈ Z} ∪ {⟨e, ξ⟩ ∈ Z∖{0}}`: two families of
//! parallel lines, the second with its line through the origin removed. All
//! membership questions are answered with rational arithmetic; only
//! [`ft_eval`], [`density_at_zero`] and the Poisson sums use floating point.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::{
    extract_pairing, is_centrally_symmetric, is_convex, is_parallelogram, EdgePair, PolygonalRegion,
};
use crate::lattice::{Lattice, QuasiPeriodicSet};
use crate::point::{Rational2, Q};

/// `v / |v|²`.
pub fn geometric_inverse(v: &Rational2) -> Result<Rational2> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.scale(&v.norm_sq().recip()))
}

/// `G(w) = Zw + Rw⊥`: lines orthogonal to `w`, spaced `|w|` apart, optionally
/// without the line through the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineFamily {
    pub spacing: Rational2,
    pub punctured: bool,
    normal: Rational2,
}

impl LineFamily {
    pub fn new(spacing: Rational2, punctured: bool) -> Result<Self> {
        let normal = geometric_inverse(&spacing)?;
        Ok(LineFamily { spacing, punctured, normal })
    }

    /// `w*`: the family is `{ξ : ⟨w*, ξ⟩ ∈ Z}`.
    pub fn normal(&self) -> &Rational2 {
        &self.normal
    }

    pub fn contains(&self, xi: &Rational2) -> bool {
        let level = self.normal.dot(xi);
        level.is_integer() && !(self.punctured && level.is_zero())
    }

    /// Integer line indices `k` whose line `⟨w*, ξ⟩ = k` meets the closed disc.
    pub fn indices_in_disc(&self, radius: &Q) -> Vec<BigInt> {
        let bound = radius * radius * self.normal.norm_sq();
        let k_max = isqrt_floor(&bound);
        let mut out = Vec::new();
        let mut k = -k_max.clone();
        while k <= k_max {
            if !(self.punctured && k.is_zero()) {
                out.push(k.clone());
            }
            k += 1;
        }
        out
    }
}

/// Largest integer `k >= 0` with `k² <= v`.
fn isqrt_floor(v: &Q) -> BigInt {
    if !v.is_positive() {
        return BigInt::zero();
    }
    let floor = v.floor().to_integer();
    let mut k = floor.sqrt();
    let sq = |k: &BigInt| Q::from_integer(k * k);
    while sq(&k) > *v {
        k -= 1;
    }
    while sq(&(&k + 1)) <= *v {
        k += 1;
    }
    k
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroSet {
    pub tau_family: LineFamily,
    pub e_family: LineFamily,
}

impl ZeroSet {
    pub fn contains(&self, xi: &Rational2) -> bool {
        self.tau_family.contains(xi) || self.e_family.contains(xi)
    }
}

pub fn zero_set(pair: &EdgePair) -> ZeroSet {
    let tau_star = geometric_inverse(&pair.tau).expect("pair translation is non-zero");
    let e_star = geometric_inverse(&pair.e).expect("edge vector is non-zero");
    ZeroSet {
        tau_family: LineFamily::new(tau_star, false).expect("non-zero"),
        e_family: LineFamily::new(e_star, true).expect("non-zero"),
    }
}

/// `⟨e, ξ⟩ ∈ Z∖{0}` or `⟨τ, ξ⟩ ∈ Z`.
pub fn vanishes_at(pair: &EdgePair, xi: &Rational2) -> bool {
    let along = pair.e.dot(xi);
    let across = pair.tau.dot(xi);
    (along.is_integer() && !along.is_zero()) || across.is_integer()
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        libm::sin(PI * x) / (PI * x)
    }
}

/// Closed-form Fourier transform of the edge pair's signed arc-length measure.
pub fn ft_eval(pair: &EdgePair, xi: (f64, f64)) -> Complex64 {
    let (ex, ey) = pair.e.to_f64();
    let (tx, ty) = pair.tau.to_f64();
    let len = libm::sqrt(ex * ex + ey * ey);
    let along = ex * xi.0 + ey * xi.1;
    let across = tx * xi.0 + ty * xi.1;
    Complex64::new(0.0, -2.0 * len * sinc(along) * libm::sin(PI * across))
}

/// Direction of a vector modulo sign: a primitive integer vector with
/// canonical sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    pub x: BigInt,
    pub y: BigInt,
}

impl Orientation {
    pub fn of(v: &Rational2) -> Result<Self> {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        let d = v.x.denom().lcm(v.y.denom());
        let mut x = v.x.numer() * (&d / v.x.denom());
        let mut y = v.y.numer() * (&d / v.y.denom());
        let g = x.gcd(&y);
        x /= &g;
        y /= &g;
        if x.is_negative() || (x.is_zero() && y.is_negative()) {
            x = -x;
            y = -y;
        }
        Ok(Orientation { x, y })
    }

    pub fn as_vector(&self) -> Rational2 {
        Rational2::new(Q::from_integer(self.x.clone()), Q::from_integer(self.y.clone()))
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPeriodicityCertificate {
    /// Every multiple tiling by the region is quasi-periodic.
    pub guaranteed: bool,
    /// Orientations shared by every pair's `{ẽ, τ̃}`; empty iff guaranteed.
    pub common_orientations: Vec<Orientation>,
}

fn common_orientations(pairs: &[EdgePair]) -> Vec<Orientation> {
    let sets: Vec<[Orientation; 2]> = pairs
        .iter()
        .map(|p| [Orientation::of(&p.e).expect("non-zero"), Orientation::of(&p.tau).expect("non-zero")])
        .collect();
    let Some(first) = sets.first() else {
        return Vec::new();
    };
    let mut common: Vec<Orientation> = first.to_vec();
    common.dedup();
    common.retain(|o| sets.iter().all(|s| s.contains(o)));
    common.sort();
    common
}

/// Empty intersection of the per-pair orientation sets `{ẽ, τ̃}` forces every
/// tiling translation set to be a finite union of translated lattices.
pub fn quasi_periodicity_certificate(region: &PolygonalRegion) -> Result<QuasiPeriodicityCertificate> {
    let pairs = extract_pairing(region)?;
    let common = common_orientations(&pairs);
    Ok(QuasiPeriodicityCertificate { guaranteed: common.is_empty(), common_orientations: common })
}

/// For convex centrally symmetric regions: tilings are necessarily
/// quasi-periodic unless the region is a parallelogram.
pub fn convex_classifier(region: &PolygonalRegion) -> Result<bool> {
    if !matches!(is_convex(region), Ok(true)) {
        return Err(Error::NotConvex);
    }
    if is_centrally_symmetric(region).is_none() {
        return Err(Error::NotSymmetric { about_origin: false });
    }
    let guaranteed = !is_parallelogram(region)?;
    debug_assert_eq!(
        quasi_periodicity_certificate(region).map(|c| c.guaranteed),
        Ok(guaranteed),
        "convex classifier must agree with the orientation certificate"
    );
    Ok(guaranteed)
}

/// The line `⟨normal, ξ⟩ = level`.
#[derive(Clone, Debug)]
struct Line {
    normal: Rational2,
    level: Q,
}

enum Piece {
    Line(Line),
    Point(Rational2),
}

fn family_lines(family: &LineFamily, radius: &Q) -> Vec<Line> {
    family
        .indices_in_disc(radius)
        .into_iter()
        .map(|k| Line { normal: family.normal().clone(), level: Q::from_integer(k) })
        .collect()
}

fn meet(a: &Line, b: &Line) -> Option<Rational2> {
    let det = a.normal.cross(&b.normal);
    if det.is_zero() {
        return None;
    }
    // Cramer's rule for [a.n; b.n] ξ = [a.level; b.level].
    let x = (&a.level * &b.normal.y - &b.level * &a.normal.y) / &det;
    let y = (&a.normal.x * &b.level - &b.normal.x * &a.level) / &det;
    Some(Rational2::new(x, y))
}

/// Exact finite set `⋂ Z(μ̂_pair) ∩ {|ξ| <= radius}`, sorted.
///
/// Fails with [`Error::NotDiscrete`] when the pairs share an orientation, in
/// which case the intersection contains whole lines.
pub fn zero_set_intersection_in_disc(pairs: &[EdgePair], radius: &Q) -> Result<Vec<Rational2>> {
    let common = common_orientations(pairs);
    if !common.is_empty() || pairs.is_empty() {
        return Err(Error::NotDiscrete { common });
    }
    let r2 = radius * radius;
    let in_disc = |p: &Rational2| p.norm_sq() <= r2;
    let zero_sets: Vec<ZeroSet> = pairs.iter().map(zero_set).collect();

    let mut pieces: Vec<Piece> = family_lines(&zero_sets[0].tau_family, radius)
        .into_iter()
        .chain(family_lines(&zero_sets[0].e_family, radius))
        .map(Piece::Line)
        .collect();
    for zs in &zero_sets[1..] {
        let families = [&zs.tau_family, &zs.e_family];
        let lines: Vec<Vec<Line>> = families.iter().map(|f| family_lines(f, radius)).collect();
        let mut next = Vec::new();
        for piece in pieces {
            match piece {
                Piece::Point(p) => {
                    if zs.contains(&p) {
                        next.push(Piece::Point(p));
                    }
                }
                Piece::Line(line) => {
                    let mut kept = false;
                    for (family, family_lines) in families.iter().zip(&lines) {
                        if family.normal().is_parallel(&line.normal) {
                            // Same line iff the level, rescaled to this family, is admissible.
                            let s = if line.normal.x.is_zero() {
                                &family.normal().y / &line.normal.y
                            } else {
                                &family.normal().x / &line.normal.x
                            };
                            let level = &line.level * &s;
                            if !kept && level.is_integer() && !(family.punctured && level.is_zero()) {
                                next.push(Piece::Line(line.clone()));
                                kept = true;
                            }
                        } else {
                            for other in family_lines {
                                if let Some(p) = meet(&line, other) {
                                    if in_disc(&p) {
                                        next.push(Piece::Point(p));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        pieces = next;
    }
    let mut points = Vec::new();
    for piece in pieces {
        match piece {
            Piece::Point(p) => points.push(p),
            // Unreachable when no orientation is shared by all pairs.
            Piece::Line(_) => return Err(Error::NotDiscrete { common: Vec::new() }),
        }
    }
    points.sort();
    points.dedup();
    points.retain(|p| in_disc(p) && zero_sets.iter().all(|z| z.contains(p)));
    Ok(points)
}

/// Truncation radius of the density sum, in units of `t`.
pub const DENSITY_TRUNCATION: f64 = 6.0;

/// Windowed estimate `t⁻² Σ_λ φ̂(λ/t)` of the point mass of `δ̂_Λ` at the
/// origin, with `φ̂(x) = exp(−π|x|²)`, truncated to `|λ| <= 6t`.
///
/// The result converges to the density `Σ multiplicity / det` as `t → ∞`.
/// The dropped tail is below `ρ · exp(−36π) · (1 + 72π)`, far under
/// double precision.
pub fn density_at_zero(set: &QuasiPeriodicSet, t: f64) -> Result<f64> {
    if t.is_nan() || t < 1.0 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    let radius = DENSITY_TRUNCATION * t;
    let mut total = 0.0;
    for (part, mult) in set.parts() {
        let pts = part.lattice().points_in_disc_f64(part.offset(), radius);
        let s: f64 = pts.iter().map(|(x, y)| libm::exp(-PI * (x * x + y * y) / (t * t))).sum();
        total += *mult as f64 * s;
    }
    Ok(total / (t * t))
}

/// Both sides of the Poisson summation identity for the Gaussian
/// `ψ(x) = exp(−π|x|²/s²)`, whose transform is `ψ̂(ξ) = s² exp(−π s²|ξ|²)`:
/// returns `(Σ_{λ∈Λ} ψ(λ), det(Λ*) Σ_{μ∈Λ*} ψ̂(μ))`, each sum over the
/// closed disc of the given radius.
pub fn poisson_sides(lattice: &Lattice, width: f64, radius: f64) -> (f64, f64) {
    let origin = Rational2::zero();
    let direct: f64 = lattice
        .points_in_disc_f64(&origin, radius)
        .iter()
        .map(|(x, y)| libm::exp(-PI * (x * x + y * y) / (width * width)))
        .sum();
    let dual = lattice.dual();
    let mass = dual.det().to_f64().unwrap_or(f64::NAN);
    let spectral: f64 = dual
        .points_in_disc_f64(&origin, radius)
        .iter()
        .map(|(x, y)| width * width * libm::exp(-PI * width * width * (x * x + y * y)))
        .sum();
    (direct, mass * spectral)
}
