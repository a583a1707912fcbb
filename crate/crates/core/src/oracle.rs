//! Brute-force verification of multiple tilings by exact coverage counting.
//!
//! Independent of the criterion: nothing here looks at edge pairs. The exact
//! mode decomposes one fundamental domain by the edges of every translate that
//! can reach it and counts coverage at an interior point of every cell.

use alloc::vec::Vec;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::vertical_cells;
use crate::error::{Error, Result};
use crate::geometry::{area, BBox, Location, PolygonalRegion};
use crate::lattice::{Lattice, Parallelogram, QBox, QuasiPeriodicSet, TranslatedLattice};
use crate::point::{simplest_between, Rational2, Q};
use crate::triangulate::{clip_convex, clip_segment, ear_clip, polygon_area};

/// Sets of translation vectors with multiplicities.
pub trait Translates {
    fn points_in_box(&self, bx: &QBox) -> Vec<(Rational2, u32)>;
}

impl Translates for Lattice {
    fn points_in_box(&self, bx: &QBox) -> Vec<(Rational2, u32)> {
        self.enumerate_in_box(&Rational2::zero(), bx).into_iter().map(|p| (p, 1)).collect()
    }
}

impl Translates for TranslatedLattice {
    fn points_in_box(&self, bx: &QBox) -> Vec<(Rational2, u32)> {
        self.enumerate_in_box(bx).into_iter().map(|p| (p, 1)).collect()
    }
}

impl Translates for QuasiPeriodicSet {
    fn points_in_box(&self, bx: &QBox) -> Vec<(Rational2, u32)> {
        self.enumerate_in_box(bx)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Coverage {
    /// Number of translates (with multiplicity) whose interior contains the point.
    pub count: u64,
    pub on_boundary: bool,
}

/// Exact coverage of `x` by `region + set`.
pub fn coverage_at<T: Translates + ?Sized>(region: &PolygonalRegion, set: &T, x: &Rational2) -> Coverage {
    let bb = region.bbox();
    // x - λ ∈ bbox(K)  ⟺  λ ∈ [x - max, x - min].
    let window = QBox::closed(x - &bb.max, x - &bb.min);
    let mut count = 0u64;
    let mut on_boundary = false;
    for (lambda, mult) in set.points_in_box(&window) {
        match crate::geometry::point_location(region, &(x - &lambda)) {
            Location::Interior => count += u64::from(mult),
            Location::Boundary => on_boundary = true,
            Location::Exterior => {}
        }
    }
    Coverage { count, on_boundary }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// A point, off every tile boundary, covered `count` times.
    pub point: Rational2,
    pub count: u64,
    pub count_low: u64,
    pub count_high: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Every cell of an exact decomposition of a period was counted.
    Exact { cells: usize },
    /// Pseudo-random points only; a constant result is not a proof.
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    pub constant: bool,
    pub weight: Option<u64>,
    pub witness: Option<Witness>,
    pub evidence: Evidence,
}

fn summarize(counts: &[(Rational2, u64)], evidence: Evidence) -> CoverageReport {
    let low = counts.iter().map(|c| c.1).min().unwrap_or(0);
    let high = counts.iter().map(|c| c.1).max().unwrap_or(0);
    if low == high && low > 0 {
        return CoverageReport { constant: true, weight: Some(low), witness: None, evidence };
    }
    let (point, count) = counts.iter().find(|c| c.1 == low).cloned().unwrap_or((Rational2::zero(), 0));
    CoverageReport {
        constant: false,
        weight: None,
        witness: Some(Witness { point, count, count_low: low, count_high: high }),
        evidence,
    }
}

/// A cell of the decomposition of the fundamental domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub sample: Rational2,
    pub area: Q,
    pub count: u64,
}

/// Decomposition of the closed fundamental domain of `lattice` by the edges of
/// all translates of `region` that can reach it.
#[derive(Clone, Debug)]
pub struct CoverageMap {
    pub domain: Parallelogram,
    pub faces: Vec<Face>,
    translates: Vec<(Rational2, BBox)>,
    tile_edges: Vec<(Rational2, Rational2)>,
}

impl CoverageMap {
    pub fn build(region: &PolygonalRegion, lattice: &Lattice) -> Result<Self> {
        if area(region).is_zero() {
            return Err(Error::DegenerateInput("region has zero area".into()));
        }
        let domain = lattice.fundamental_domain();
        let dbox = domain.bbox();
        let kbox = region.bbox();
        let search = QBox::closed(&dbox.min - &kbox.max, &dbox.max - &kbox.min);
        let translates: Vec<(Rational2, BBox)> = lattice
            .enumerate_in_box(&Rational2::zero(), &search)
            .into_iter()
            .map(|l| {
                let b = kbox.translate(&l);
                (l, b)
            })
            .collect();

        let mut tile_edges = Vec::new();
        let mut segments: Vec<(Rational2, Rational2)> = domain.edges().collect();
        for (l, _) in &translates {
            for (a, b) in region.edges() {
                let (a, b) = (a + l, b + l);
                let eb = BBox::of_points([&a, &b]).expect("two points");
                if !eb.intersects(&dbox) {
                    continue;
                }
                if let Some(inside) = clip_segment(&a, &b, &domain.corners) {
                    segments.push(inside);
                    tile_edges.push((a, b));
                }
            }
        }

        let domain_poly = domain.as_polygon();
        let mut map = CoverageMap { domain, faces: Vec::new(), translates, tile_edges };
        let cells = vertical_cells(&segments, &dbox.min.x, &dbox.max.x);
        for cell in cells {
            if domain_poly.locate(&cell.sample) != Location::Interior {
                continue;
            }
            let cov = map.count(region, &cell.sample);
            debug_assert!(!cov.on_boundary, "cell samples avoid every edge");
            map.faces.push(Face { sample: cell.sample, area: cell.area, count: cov.count });
        }
        Ok(map)
    }

    fn count(&self, region: &PolygonalRegion, x: &Rational2) -> Coverage {
        let mut count = 0;
        let mut on_boundary = false;
        for (l, b) in &self.translates {
            if !b.contains(x) {
                continue;
            }
            match crate::geometry::point_location(region, &(x - l)) {
                Location::Interior => count += 1,
                Location::Boundary => on_boundary = true,
                Location::Exterior => {}
            }
        }
        Coverage { count, on_boundary }
    }

    /// Moves `p` inside its face to a point with small denominators: first
    /// along the vertical line through `p`, then along the horizontal one,
    /// never crossing a tile edge nor leaving the domain's bounding box.
    fn simplify(&self, p: &Rational2) -> Rational2 {
        let dbox = self.domain.bbox();
        let y = self.simplest_on_line(p, true, (&dbox.min.y, &dbox.max.y));
        let mid = Rational2::new(p.x.clone(), y);
        let x = self.simplest_on_line(&mid, false, (&dbox.min.x, &dbox.max.x));
        Rational2::new(x, mid.y)
    }

    fn simplest_on_line(&self, p: &Rational2, vertical: bool, limits: (&Q, &Q)) -> Q {
        // Swap coordinates so the line is "x = p.x" in local terms.
        let (fixed, free) = if vertical { (&p.x, &p.y) } else { (&p.y, &p.x) };
        let local = |v: &Rational2| if vertical { (v.x.clone(), v.y.clone()) } else { (v.y.clone(), v.x.clone()) };
        let mut below: Option<Q> = None;
        let mut above: Option<Q> = None;
        let mut note = |h: Q| {
            if h < *free {
                if below.as_ref().is_none_or(|b| h > *b) {
                    below = Some(h);
                }
            } else if above.as_ref().is_none_or(|a| h < *a) {
                above = Some(h);
            }
        };
        for (a, b) in &self.tile_edges {
            let (a, b) = (local(a), local(b));
            if a.0 == b.0 {
                if a.0 == *fixed {
                    note(a.1);
                    note(b.1);
                }
                continue;
            }
            let (lo, hi) = if a.0 < b.0 { (&a, &b) } else { (&b, &a) };
            if lo.0 <= *fixed && *fixed <= hi.0 {
                note(&lo.1 + (fixed - &lo.0) * (&hi.1 - &lo.1) / (&hi.0 - &lo.0));
            }
        }
        let lo = match &below {
            Some(b) if b >= limits.0 => (b, false),
            _ => (limits.0, true),
        };
        let hi = match &above {
            Some(a) if a <= limits.1 => (a, false),
            _ => (limits.1, true),
        };
        simplest_between(Some(lo), Some(hi)).unwrap_or_else(|| free.clone())
    }

    /// Witness point in the first face of minimal coverage, simplified.
    pub fn report(&self, region: &PolygonalRegion) -> CoverageReport {
        let counts: Vec<(Rational2, u64)> = self.faces.iter().map(|f| (f.sample.clone(), f.count)).collect();
        let mut report = summarize(&counts, Evidence::Exact { cells: self.faces.len() });
        if let Some(w) = report.witness.as_mut() {
            let candidate = self.simplify(&w.point);
            let cov = self.count(region, &candidate);
            if !cov.on_boundary && cov.count == w.count && self.domain.bbox().contains(&candidate) {
                w.point = candidate;
            }
        }
        report
    }

    /// Sum over cells of their areas: the fundamental domain's area.
    pub fn total_area(&self) -> Q {
        self.faces.iter().map(|f| f.area.clone()).sum()
    }

    /// Sum over cells of coverage times area: always the region's area.
    pub fn weighted_area(&self) -> Q {
        self.faces.iter().map(|f| &f.area * Q::from_integer(f.count.into())).sum()
    }
}

/// Exact check that the coverage count is one positive constant on a
/// full-measure set.
pub fn verify_tiling_exact(region: &PolygonalRegion, lattice: &Lattice) -> Result<CoverageReport> {
    Ok(CoverageMap::build(region, lattice)?.report(region))
}

/// `Σ_λ area((K + λ) ∩ D)` over the fundamental domain `D`, by ear-clipping the
/// region and clipping each translated triangle against `D`.
pub fn clipped_translate_area(region: &PolygonalRegion, lattice: &Lattice) -> Q {
    let domain = lattice.fundamental_domain();
    let dbox = domain.bbox();
    let kbox = region.bbox();
    let search = QBox::closed(&dbox.min - &kbox.max, &dbox.max - &kbox.min);
    let triangles: Vec<_> = region.components().iter().flat_map(ear_clip).collect();
    let mut total = Q::zero();
    for l in lattice.enumerate_in_box(&Rational2::zero(), &search) {
        for t in &triangles {
            let moved: Vec<Rational2> = t.iter().map(|p| p + &l).collect();
            total += polygon_area(&clip_convex(&moved, &domain.corners));
        }
    }
    total
}

const SAMPLE_BITS: u32 = 24;
const RESAMPLE_LIMIT: usize = 64;

/// Coverage at pseudo-random rational points; boundary hits are redrawn.
///
/// A constant result means "consistent with weight `w` at `samples` points";
/// two different counts are a definitive refutation.
pub fn verify_tiling_sampled(
    region: &PolygonalRegion,
    set: &QuasiPeriodicSet,
    samples: usize,
    seed: u64,
) -> Result<CoverageReport> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let mut extent = Q::zero();
    let mut grow = |v: &Rational2| {
        for c in [&v.x, &v.y] {
            let a = if *c < Q::zero() { -c } else { c.clone() };
            if a > extent {
                extent = a;
            }
        }
    };
    let kb = region.bbox();
    grow(&kb.min);
    grow(&kb.max);
    for (t, _) in set.parts() {
        for c in &t.lattice().fundamental_domain().corners {
            grow(c);
        }
    }
    let half_width = extent * Q::from_integer(2.into()) + Q::from_integer(1.into());
    let denom = Q::from_integer((1u64 << SAMPLE_BITS).into());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let n: u64 = rng.gen_range(0..=(1u64 << SAMPLE_BITS));
        -&half_width + &half_width * Q::from_integer(2.into()) * Q::from_integer(n.into()) / &denom
    };
    let mut counts = Vec::with_capacity(samples);
    for _ in 0..samples {
        for _ in 0..RESAMPLE_LIMIT {
            let p = Rational2::new(draw(&mut rng), draw(&mut rng));
            let cov = coverage_at(region, set, &p);
            if !cov.on_boundary {
                counts.push((p, cov.count));
                break;
            }
        }
    }
    Ok(summarize(&counts, Evidence::Sampled { samples: counts.len(), seed }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::{q, qi};
    use alloc::vec;

    fn pt(x: i64, y: i64) -> Rational2 {
        Rational2::from_ints(x, y)
    }

    fn square() -> PolygonalRegion {
        let (h, m) = (q(1, 2), q(-1, 2));
        PolygonalRegion::from_vertex_lists(vec![vec![
            Rational2::new(h.clone(), h.clone()),
            Rational2::new(m.clone(), h.clone()),
            Rational2::new(m.clone(), m.clone()),
            Rational2::new(h, m),
        ]])
        .unwrap()
    }

    #[test]
    fn pointwise_coverage() {
        let z = Lattice::integer();
        let c = coverage_at(&square(), &z, &Rational2::new(q(1, 4), q(1, 4)));
        assert_eq!(c, Coverage { count: 1, on_boundary: false });
        assert!(coverage_at(&square(), &z, &Rational2::new(q(1, 2), q(1, 4))).on_boundary);
        let wide = Lattice::new(pt(2, 0), pt(0, 1)).unwrap();
        assert_eq!(coverage_at(&square(), &wide, &pt(1, 0)).count, 0);
    }

    #[test]
    fn exact_reports() {
        let z = Lattice::integer();
        let r = verify_tiling_exact(&square(), &z).unwrap();
        assert!(r.constant);
        assert_eq!(r.weight, Some(1));
        let tall = Lattice::new(pt(1, 0), Rational2::new(qi(0), q(1, 2))).unwrap();
        assert_eq!(verify_tiling_exact(&square(), &tall).unwrap().weight, Some(2));
        let wide = Lattice::new(pt(2, 0), pt(0, 1)).unwrap();
        let r = verify_tiling_exact(&square(), &wide).unwrap();
        assert!(!r.constant);
        let w = r.witness.unwrap();
        assert_eq!(w.point, pt(1, 0));
        assert_eq!((w.count, w.count_low, w.count_high), (0, 0, 1));
    }

    #[test]
    fn area_identities() {
        let tall = Lattice::new(pt(1, 0), Rational2::new(qi(0), q(1, 2))).unwrap();
        let map = CoverageMap::build(&square(), &tall).unwrap();
        assert_eq!(map.total_area(), tall.det());
        assert_eq!(map.weighted_area(), qi(1));
        assert_eq!(clipped_translate_area(&square(), &tall), qi(1));
    }

    #[test]
    fn sampled_reports() {
        let z: QuasiPeriodicSet = Lattice::integer().into();
        let r = verify_tiling_sampled(&square(), &z, 200, 7).unwrap();
        assert!(r.constant);
        assert_eq!(r.weight, Some(1));
        let wide: QuasiPeriodicSet = Lattice::new(pt(2, 0), pt(0, 1)).unwrap().into();
        let r = verify_tiling_sampled(&square(), &wide, 200, 7).unwrap();
        assert!(!r.constant);
        assert_eq!(
            verify_tiling_sampled(&square(), &z, 0, 1),
            Err(Error::InvalidParameter("samples must be at least 1".into()))
        );
    }
}
