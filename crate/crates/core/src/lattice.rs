//! Full-rank rational lattices in the plane, their translates and finite
//! unions of translates.
//!
//! A lattice is stored in column Hermite normal form: generators `(a, b)` and
//! `(0, c)` with `a > 0`, `c > 0` and `0 <= b < c`. Every full-rank rational
//! lattice has exactly one such basis, so equal lattices compare equal.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::{BBox, Location, SimplePolygon};
use crate::point::{q, to_f64, Rational2, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    basis: [Rational2; 2],
}

fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Q>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Column Hermite normal form `(g, b, c)` of the integer lattice spanned by
/// `cols`, or `None` when they do not span the plane.
fn hnf(cols: &[(BigInt, BigInt)]) -> Option<(BigInt, BigInt, BigInt)> {
    let mut pivot = (BigInt::zero(), BigInt::zero());
    let mut c = BigInt::zero();
    for (x, y) in cols {
        if x.is_zero() {
            c = c.gcd(y);
            continue;
        }
        // Unimodular column operation: the new pivot carries the gcd of the
        // top entries, the other column gets a zero on top.
        let eg = pivot.0.extended_gcd(x);
        let (mut g, mut u, mut v) = (eg.gcd, eg.x, eg.y);
        if g.is_negative() {
            g = -g;
            u = -u;
            v = -v;
        }
        let rest = (-(x / &g)) * &pivot.1 + (&pivot.0 / &g) * y;
        pivot = (g, &u * &pivot.1 + &v * y);
        c = c.gcd(&rest);
    }
    if pivot.0.is_zero() || c.is_zero() {
        return None;
    }
    let b = pivot.1.mod_floor(&c);
    Some((pivot.0, b, c))
}

impl Lattice {
    /// The lattice generated by `g1` and `g2`; fails when they are dependent.
    pub fn new(g1: Rational2, g2: Rational2) -> Result<Self> {
        if g1.cross(&g2).is_zero() {
            return Err(Error::SingularBasis);
        }
        Lattice::spanned_by(&[g1, g2])
    }

    /// All integer combinations of `gens`; fails unless they span the plane.
    pub fn spanned_by(gens: &[Rational2]) -> Result<Self> {
        let d = lcm_of_denominators(gens.iter().flat_map(|g| [&g.x, &g.y]));
        let dq = BigRational::from_integer(d.clone());
        let int = |v: &Q| (v * &dq).to_integer();
        let cols: Vec<_> = gens.iter().map(|g| (int(&g.x), int(&g.y))).collect();
        let (g, b, c) = hnf(&cols).ok_or(Error::SingularBasis)?;
        let scale = |n: BigInt| BigRational::new(n, d.clone());
        Ok(Lattice { basis: [Rational2::new(scale(g), scale(b)), Rational2::new(Q::zero(), scale(c))] })
    }

    pub fn integer() -> Self {
        Lattice::new(Rational2::from_ints(1, 0), Rational2::from_ints(0, 1)).expect("unit basis")
    }

    /// Canonical generators (columns of the basis matrix).
    pub fn basis(&self) -> &[Rational2; 2] {
        &self.basis
    }

    /// Covolume `|det A|`.
    pub fn det(&self) -> Q {
        &self.basis[0].x * &self.basis[1].y
    }

    /// Coordinates of `v` in the canonical basis, `A^{-1} v`.
    pub fn coords(&self, v: &Rational2) -> Rational2 {
        let a = &self.basis[0].x;
        let b = &self.basis[0].y;
        let c = &self.basis[1].y;
        let i = &v.x / a;
        let j = (&v.y - &i * b) / c;
        Rational2::new(i, j)
    }

    pub fn point(&self, i: &Q, j: &Q) -> Rational2 {
        &self.basis[0].scale(i) + &self.basis[1].scale(j)
    }

    pub fn contains(&self, v: &Rational2) -> bool {
        self.coords(v).is_integral()
    }

    /// Dual lattice `A^{-T} Z^2`: all vectors with integer inner product against
    /// every lattice vector.
    pub fn dual(&self) -> Lattice {
        let a = &self.basis[0].x;
        let b = &self.basis[0].y;
        let c = &self.basis[1].y;
        let det = self.det();
        // A = [[a, 0], [b, c]], A^{-T} = [[c, -b], [0, a]] / det.
        let g1 = Rational2::new(c / &det, Q::zero());
        let g2 = Rational2::new(-(b / &det), a / &det);
        Lattice::new(g1, g2).expect("dual of a full-rank lattice is full rank")
    }

    pub fn scale(&self, s: &Q) -> Lattice {
        Lattice::new(self.basis[0].scale(s), self.basis[1].scale(s)).expect("non-zero scale")
    }

    /// `½Λ`.
    pub fn half(&self) -> Lattice {
        self.scale(&q(1, 2))
    }

    /// Membership in `½Λ`.
    pub fn half_contains(&self, p: &Rational2) -> bool {
        self.contains(&p.scale(&Q::from_integer(2.into())))
    }

    /// Smallest `θ` in the open interval `(0, 1)` with `tau + θ e ∈ Λ`.
    ///
    /// With `p = A⁻¹τ` and `r = A⁻¹e` each coordinate constrains `θ` to an
    /// arithmetic progression (or to everything / nothing when that coordinate
    /// of `r` vanishes). The progression of one non-constant coordinate has
    /// finitely many terms in `(0, 1)`; each is tested against the other.
    pub fn segment_interior_point(&self, tau: &Rational2, e: &Rational2) -> Option<Q> {
        if e.is_zero() {
            return None;
        }
        let p = self.coords(tau);
        let r = self.coords(e);
        let (pk, rk, pj, rj) = match (r.x.is_zero(), r.y.is_zero()) {
            (true, _) => (&p.y, &r.y, &p.x, &r.x),
            (false, true) => (&p.x, &r.x, &p.y, &r.y),
            (false, false) if r.x.abs() <= r.y.abs() => (&p.x, &r.x, &p.y, &r.y),
            _ => (&p.y, &r.y, &p.x, &r.x),
        };
        if rj.is_zero() && !pj.is_integer() {
            return None;
        }
        // n strictly between pk and pk + rk, visited in increasing θ.
        let end = pk + rk;
        let (lo, hi) = if rk.is_positive() { (pk.clone(), end) } else { (end, pk.clone()) };
        let mut n = lo.floor() + Q::one();
        let mut candidates = Vec::new();
        while n < hi {
            candidates.push((&n - pk) / rk);
            n += Q::one();
        }
        if rk.is_negative() {
            candidates.reverse();
        }
        candidates.into_iter().find(|theta| (pj + theta * rj).is_integer())
    }

    /// Half-open parallelogram `A [0, 1)^2`, as its counter-clockwise corners.
    /// Lagrange-Gauss reduced basis `[u, v]`: `|⟨u, v⟩| <= min(|u|², |v|²)/2`,
    /// both with canonical sign, ordered so that `u × v > 0`.
    pub fn reduced_basis(&self) -> [Rational2; 2] {
        let [mut u, mut v] = self.basis.clone();
        let half = q(1, 2);
        loop {
            if v.norm_sq() < u.norm_sq() {
                core::mem::swap(&mut u, &mut v);
            }
            let m = (u.dot(&v) / u.norm_sq() + &half).floor();
            if m.is_zero() {
                break;
            }
            v = &v - &u.scale(&m);
        }
        let (u, v) = (u.canonical_sign(), v.canonical_sign());
        if u.cross(&v).is_negative() {
            [v, u]
        } else {
            [u, v]
        }
    }

    /// The parallelogram spanned by the reduced basis; the compact shape keeps
    /// the number of translates meeting it small.
    pub fn fundamental_domain(&self) -> Parallelogram {
        let [u, v] = self.reduced_basis();
        Parallelogram { corners: [Rational2::zero(), u.clone(), &u + &v, v] }
    }

    /// Representative of `v` modulo the lattice in the half-open fundamental
    /// domain.
    pub fn reduce(&self, p: &Rational2) -> Rational2 {
        let [u, v] = self.reduced_basis();
        let det = u.cross(&v);
        let i = p.cross(&v) / &det;
        let j = u.cross(p) / &det;
        let (i, j) = (&i - i.floor(), &j - j.floor());
        &u.scale(&i) + &v.scale(&j)
    }

    /// Lattice points `offset + λ` inside the box, in lexicographic order of
    /// coefficients.
    pub fn enumerate_in_box(&self, offset: &Rational2, bx: &QBox) -> Vec<Rational2> {
        let a = &self.basis[0].x;
        let b = &self.basis[0].y;
        let c = &self.basis[1].y;
        let mut out = Vec::new();
        // x = o.x + i a, y = o.y + i b + j c.
        let i_lo = ((&bx.min.x - &offset.x) / a).ceil();
        let i_hi = ((&bx.max.x - &offset.x) / a).floor();
        let mut i = i_lo;
        while i <= i_hi {
            let base = Rational2::new(&offset.x + &i * a, &offset.y + &i * b);
            let j_lo = ((&bx.min.y - &base.y) / c).ceil();
            let j_hi = ((&bx.max.y - &base.y) / c).floor();
            let mut j = j_lo;
            while j <= j_hi {
                let p = Rational2::new(base.x.clone(), &base.y + &j * c);
                if bx.contains(&p) {
                    out.push(p);
                }
                j += Q::one();
            }
            i += Q::one();
        }
        out
    }

    /// Floating-point lattice points `offset + λ` with `|point| <= radius`.
    pub fn points_in_disc_f64(&self, offset: &Rational2, radius: f64) -> Vec<(f64, f64)> {
        let a = to_f64(&self.basis[0].x);
        let b = to_f64(&self.basis[0].y);
        let c = to_f64(&self.basis[1].y);
        let (ox, oy) = offset.to_f64();
        let r2 = radius * radius;
        let mut out = Vec::new();
        let i_lo = libm::ceil((-radius - ox) / a) as i64;
        let i_hi = libm::floor((radius - ox) / a) as i64;
        for i in i_lo..=i_hi {
            let x = ox + i as f64 * a;
            let rem = r2 - x * x;
            if rem < 0.0 {
                continue;
            }
            let h = libm::sqrt(rem);
            let by = oy + i as f64 * b;
            let j_lo = libm::ceil((-h - by) / c) as i64;
            let j_hi = libm::floor((h - by) / c) as i64;
            for j in j_lo..=j_hi {
                let y = by + j as f64 * c;
                if x * x + y * y <= r2 {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

/// Parallelogram given by counter-clockwise corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parallelogram {
    pub corners: [Rational2; 4],
}

impl Parallelogram {
    pub fn bbox(&self) -> BBox {
        BBox::of_points(&self.corners).expect("four corners")
    }

    pub fn as_polygon(&self) -> SimplePolygon {
        SimplePolygon::new(self.corners.to_vec()).expect("non-degenerate parallelogram")
    }

    pub fn edges(&self) -> impl Iterator<Item = (Rational2, Rational2)> + '_ {
        (0..4).map(move |i| (self.corners[i].clone(), self.corners[(i + 1) % 4].clone()))
    }

    pub fn locate(&self, p: &Rational2) -> Location {
        self.as_polygon().locate(p)
    }
}

/// Axis-aligned box, either closed or half-open `[min, max)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QBox {
    pub min: Rational2,
    pub max: Rational2,
    pub closed: bool,
}

impl QBox {
    pub fn closed(min: Rational2, max: Rational2) -> Self {
        QBox { min, max, closed: true }
    }

    pub fn half_open(min: Rational2, max: Rational2) -> Self {
        QBox { min, max, closed: false }
    }

    pub fn contains(&self, p: &Rational2) -> bool {
        let upper = |v: &Q, m: &Q| if self.closed { v <= m } else { v < m };
        self.min.x <= p.x && self.min.y <= p.y && upper(&p.x, &self.max.x) && upper(&p.y, &self.max.y)
    }
}

/// `offset + Λ` with the offset reduced into the fundamental domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TranslatedLattice {
    lattice: Lattice,
    offset: Rational2,
}

impl TranslatedLattice {
    pub fn new(lattice: Lattice, offset: &Rational2) -> Self {
        let offset = lattice.reduce(offset);
        TranslatedLattice { lattice, offset }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn offset(&self) -> &Rational2 {
        &self.offset
    }

    pub fn contains(&self, v: &Rational2) -> bool {
        self.lattice.contains(&(v - &self.offset))
    }

    pub fn enumerate_in_box(&self, bx: &QBox) -> Vec<Rational2> {
        self.lattice.enumerate_in_box(&self.offset, bx)
    }
}

impl From<Lattice> for TranslatedLattice {
    fn from(lattice: Lattice) -> Self {
        TranslatedLattice { lattice, offset: Rational2::zero() }
    }
}

/// Finite union of translated lattices, with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiPeriodicSet {
    parts: Vec<(TranslatedLattice, u32)>,
}

impl QuasiPeriodicSet {
    /// Sorts the parts and merges identical translates. Parts with
    /// multiplicity zero are rejected.
    pub fn new(parts: Vec<(TranslatedLattice, u32)>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidParameter("quasi-periodic set has no parts".into()));
        }
        if parts.iter().any(|(_, m)| *m == 0) {
            return Err(Error::InvalidParameter("multiplicity must be at least 1".into()));
        }
        let mut parts = parts;
        parts.sort();
        let mut merged: Vec<(TranslatedLattice, u32)> = Vec::with_capacity(parts.len());
        for (t, m) in parts {
            match merged.last_mut() {
                Some((last, lm)) if *last == t => *lm += m,
                _ => merged.push((t, m)),
            }
        }
        Ok(QuasiPeriodicSet { parts: merged })
    }

    pub fn parts(&self) -> &[(TranslatedLattice, u32)] {
        &self.parts
    }

    /// The single lattice this set is, when it is one lattice of multiplicity 1
    /// (offsets are irrelevant for tiling questions).
    pub fn as_lattice(&self) -> Option<&Lattice> {
        match self.parts.as_slice() {
            [(t, 1)] => Some(t.lattice()),
            _ => None,
        }
    }

    /// `Σ multiplicity / det`, the number of points per unit area.
    pub fn density(&self) -> Q {
        self.parts.iter().map(|(t, m)| BigRational::from_integer((*m).into()) / t.lattice.det()).sum()
    }

    pub fn density_f64(&self) -> f64 {
        self.density().to_f64().unwrap_or(f64::NAN)
    }

    /// Points in the box with their multiplicities.
    pub fn enumerate_in_box(&self, bx: &QBox) -> Vec<(Rational2, u32)> {
        let mut out = Vec::new();
        for (t, m) in &self.parts {
            out.extend(t.enumerate_in_box(bx).into_iter().map(|p| (p, *m)));
        }
        out
    }
}

impl From<Lattice> for QuasiPeriodicSet {
    fn from(l: Lattice) -> Self {
        QuasiPeriodicSet { parts: alloc::vec![(l.into(), 1)] }
    }
}
