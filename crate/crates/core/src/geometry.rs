//! Exact polygons, polygonal regions and the edge-pairing structure.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::arrangement::vertical_cells;
use crate::error::{Error, PolygonDefect, Result};
use crate::point::{on_segment, orient, q, segments_touch, within_box, Rational2, Q};

/// Where a point sits relative to a closed region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// Closed axis-aligned bounding box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BBox {
    pub min: Rational2,
    pub max: Rational2,
}

impl BBox {
    pub fn of_points<'a>(points: impl IntoIterator<Item = &'a Rational2>) -> Option<BBox> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut b = BBox { min: first.clone(), max: first.clone() };
        for p in it {
            b.include(p);
        }
        Some(b)
    }

    pub fn include(&mut self, p: &Rational2) {
        if p.x < self.min.x {
            self.min.x = p.x.clone();
        }
        if p.y < self.min.y {
            self.min.y = p.y.clone();
        }
        if p.x > self.max.x {
            self.max.x = p.x.clone();
        }
        if p.y > self.max.y {
            self.max.y = p.y.clone();
        }
    }

    pub fn union(&self, other: &BBox) -> BBox {
        let mut b = self.clone();
        b.include(&other.min);
        b.include(&other.max);
        b
    }

    pub fn intersects(&self, other: &BBox) -> bool {
        self.min.x <= other.max.x && other.min.x <= self.max.x && self.min.y <= other.max.y && other.min.y <= self.max.y
    }

    pub fn contains(&self, p: &Rational2) -> bool {
        self.min.x <= p.x && p.x <= self.max.x && self.min.y <= p.y && p.y <= self.max.y
    }

    pub fn translate(&self, v: &Rational2) -> BBox {
        BBox { min: &self.min + v, max: &self.max + v }
    }
}

/// Simple polygon with counter-clockwise vertices, no repeated or collinear
/// consecutive vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplePolygon {
    vertices: Vec<Rational2>,
}

impl SimplePolygon {
    /// Normalizes the vertex list (drops repeats, merges collinear edges,
    /// reorients clockwise input, starts at the lexicographically smallest
    /// vertex) and validates simplicity.
    pub fn new(vertices: Vec<Rational2>) -> core::result::Result<Self, PolygonDefect> {
        let mut v = vertices;
        v.dedup();
        while v.len() > 1 && v.first() == v.last() {
            v.pop();
        }
        // Merge collinear neighbours until every vertex is a genuine corner.
        loop {
            if v.len() < 3 {
                return Err(PolygonDefect::TooFewVertices);
            }
            let n = v.len();
            let mut removed = None;
            for i in 0..n {
                let prev = &v[(i + n - 1) % n];
                let cur = &v[i];
                let next = &v[(i + 1) % n];
                let a = cur - prev;
                let b = next - cur;
                if a.cross(&b).is_zero() {
                    if a.dot(&b).is_negative() {
                        return Err(PolygonDefect::SelfIntersecting);
                    }
                    removed = Some(i);
                    break;
                }
            }
            match removed {
                Some(i) => {
                    v.remove(i);
                }
                None => break,
            }
        }
        if !is_simple(&v) {
            return Err(PolygonDefect::SelfIntersecting);
        }
        let area2 = shoelace2(&v);
        if area2.is_zero() {
            return Err(PolygonDefect::ZeroArea);
        }
        if area2.is_negative() {
            v.reverse();
        }
        rotate_to_min(&mut v);
        Ok(SimplePolygon { vertices: v })
    }

    pub fn vertices(&self) -> &[Rational2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Directed edges `(start, end)` in counter-clockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (&Rational2, &Rational2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> Q {
        shoelace2(&self.vertices) * q(1, 2)
    }

    pub fn bbox(&self) -> BBox {
        BBox::of_points(&self.vertices).expect("polygon has vertices")
    }

    pub fn translate(&self, v: &Rational2) -> SimplePolygon {
        SimplePolygon { vertices: self.vertices.iter().map(|p| p + v).collect() }
    }

    /// Point reflection `p -> 2c - p`, re-oriented counter-clockwise.
    pub fn reflect_through(&self, c: &Rational2) -> SimplePolygon {
        let two_c = c.scale(&Q::from_integer(2.into()));
        let mut vertices: Vec<Rational2> = self.vertices.iter().map(|p| &two_c - p).collect();
        // A point reflection is a rotation by pi, so orientation is preserved.
        rotate_to_min(&mut vertices);
        SimplePolygon { vertices }
    }

    /// Exact crossing-number test with boundary detection.
    pub fn locate(&self, p: &Rational2) -> Location {
        let mut inside = false;
        for (a, b) in self.edges() {
            let straddles = (a.y > p.y) != (b.y > p.y);
            let near = within_box(a, b, p);
            if !straddles && !near {
                continue;
            }
            let side = orient(a, b, p);
            if near && side == Ordering::Equal {
                return Location::Boundary;
            }
            if straddles {
                // The edge crosses the horizontal line through p; test which side p is on.
                let upward = b.y > a.y;
                if (upward && side == Ordering::Greater) || (!upward && side == Ordering::Less) {
                    inside = !inside;
                }
            }
        }
        if inside {
            Location::Interior
        } else {
            Location::Exterior
        }
    }

    pub fn is_convex(&self) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            orient(&self.vertices[i], &self.vertices[(i + 1) % n], &self.vertices[(i + 2) % n]) == Ordering::Greater
        })
    }
}

fn rotate_to_min(v: &mut [Rational2]) {
    if let Some((i, _)) = v.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)) {
        v.rotate_left(i);
    }
}

fn shoelace2(v: &[Rational2]) -> Q {
    let n = v.len();
    let mut s = Q::zero();
    for i in 0..n {
        s += v[i].cross(&v[(i + 1) % n]);
    }
    s
}

fn is_simple(v: &[Rational2]) -> bool {
    let n = v.len();
    for i in 0..n {
        let (a, b) = (&v[i], &v[(i + 1) % n]);
        for j in (i + 1)..n {
            let (c, d) = (&v[j], &v[(j + 1) % n]);
            if j == i + 1 {
                // Consecutive edges share b == c only.
                if on_segment(a, b, d) || on_segment(c, d, a) {
                    return false;
                }
            } else if i == 0 && j == n - 1 {
                if on_segment(a, b, c) || on_segment(c, d, b) {
                    return false;
                }
            } else if segments_touch(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

/// One or more interior-disjoint simple polygons: the tile.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolygonalRegion {
    components: Vec<SimplePolygon>,
}

impl PolygonalRegion {
    pub fn new(components: Vec<SimplePolygon>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyRegion);
        }
        for i in 0..components.len() {
            for j in (i + 1)..components.len() {
                if components_overlap(&components[i], &components[j]) {
                    return Err(Error::OverlappingComponents { first: i, second: j });
                }
            }
        }
        Ok(PolygonalRegion { components })
    }

    /// Builds a region from raw vertex lists, validating each component.
    pub fn from_vertex_lists(lists: Vec<Vec<Rational2>>) -> Result<Self> {
        let mut components = Vec::with_capacity(lists.len());
        for (component, list) in lists.into_iter().enumerate() {
            let poly = SimplePolygon::new(list).map_err(|defect| Error::InvalidPolygon { component, defect })?;
            components.push(poly);
        }
        PolygonalRegion::new(components)
    }

    pub fn components(&self) -> &[SimplePolygon] {
        &self.components
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Rational2, &Rational2)> + '_ {
        self.components.iter().flat_map(|c| c.edges())
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Rational2> + '_ {
        self.components.iter().flat_map(|c| c.vertices().iter())
    }

    pub fn bbox(&self) -> BBox {
        BBox::of_points(self.vertices()).expect("region has vertices")
    }

    pub fn perimeter_sq_terms(&self) -> Vec<Q> {
        self.edges().map(|(a, b)| (b - a).norm_sq()).collect()
    }

    pub fn translate(&self, v: &Rational2) -> PolygonalRegion {
        PolygonalRegion { components: self.components.iter().map(|c| c.translate(v)).collect() }
    }

    /// Scaling by a non-zero rational; a negative factor is a point reflection
    /// composed with a positive scaling.
    pub fn scale(&self, s: &Q) -> PolygonalRegion {
        assert!(!s.is_zero(), "scale factor must be non-zero");
        let components = self
            .components
            .iter()
            .map(|c| {
                SimplePolygon::new(c.vertices().iter().map(|p| p.scale(s)).collect())
                    .expect("similarity preserves simplicity")
            })
            .collect();
        PolygonalRegion { components }
    }
}

fn components_overlap(a: &SimplePolygon, b: &SimplePolygon) -> bool {
    let (ba, bb) = (a.bbox(), b.bbox());
    if !ba.intersects(&bb) {
        return false;
    }
    let segments: Vec<(Rational2, Rational2)> =
        a.edges().chain(b.edges()).map(|(p, q)| (p.clone(), q.clone())).collect();
    let window = ba.union(&bb);
    vertical_cells(&segments, &window.min.x, &window.max.x)
        .iter()
        .any(|cell| a.locate(&cell.sample) == Location::Interior && b.locate(&cell.sample) == Location::Interior)
}

/// Total area, the sum of the shoelace areas of the components.
pub fn area(region: &PolygonalRegion) -> Q {
    region.components.iter().map(|c| c.area()).sum()
}

pub fn point_location(region: &PolygonalRegion, p: &Rational2) -> Location {
    let mut result = Location::Exterior;
    for c in &region.components {
        match c.locate(p) {
            Location::Interior => return Location::Interior,
            Location::Boundary => result = Location::Boundary,
            Location::Exterior => {}
        }
    }
    result
}

/// A matched pair of parallel edges: `second = first + tau` as point sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgePair {
    /// Edge vector with canonical sign.
    pub e: Rational2,
    /// Translation from the first midpoint to the second, canonical sign.
    pub tau: Rational2,
    pub midpoints: [Rational2; 2],
    pub length_sq: Q,
}

impl EdgePair {
    /// Closed endpoints of the two member edges.
    pub fn segments(&self) -> [(Rational2, Rational2); 2] {
        let half = self.e.scale(&q(1, 2));
        let seg = |m: &Rational2| (m - &half, m + &half);
        [seg(&self.midpoints[0]), seg(&self.midpoints[1])]
    }
}

/// Counter-clockwise angular order on canonically signed directions.
fn direction_order(a: &Rational2, b: &Rational2) -> Ordering {
    b.cross(a).cmp(&Q::zero())
}

/// Groups the edges of all components by direction and matches each class
/// into an [`EdgePair`]. Pairs come out sorted by the angle of `e`.
pub fn extract_pairing(region: &PolygonalRegion) -> Result<Vec<EdgePair>> {
    let mut classes: Vec<(Rational2, Vec<(Rational2, Rational2)>)> = Vec::new();
    for (a, b) in region.edges() {
        let v = b - a;
        match classes.iter_mut().find(|(dir, _)| dir.is_parallel(&v)) {
            Some((_, members)) => members.push((a.clone(), b.clone())),
            None => classes.push((v.canonical_sign(), alloc::vec![(a.clone(), b.clone())])),
        }
    }
    if let Some((direction, members)) = classes.iter().find(|(_, m)| m.len() != 2) {
        return Err(Error::NotPairing { direction: direction.clone(), count: members.len() });
    }
    let mut pairs = Vec::with_capacity(classes.len());
    for (direction, members) in classes {
        let (a1, b1) = &members[0];
        let (a2, b2) = &members[1];
        let e1 = b1 - a1;
        let e2 = b2 - a2;
        let (l1, l2) = (e1.norm_sq(), e2.norm_sq());
        if l1 != l2 {
            return Err(Error::UnequalLengths { direction, first: l1, second: l2 });
        }
        if e1 == e2 {
            return Err(Error::UnbalancedPair { direction });
        }
        if (a2 - a1).is_parallel(&e1) {
            return Err(Error::CollinearPair { direction });
        }
        let m1 = a1.midpoint(b1);
        let m2 = a2.midpoint(b2);
        let tau = &m2 - &m1;
        let (tau, midpoints) = if tau.has_canonical_sign() { (tau, [m1, m2]) } else { (-tau, [m2, m1]) };
        pairs.push(EdgePair { e: e1.canonical_sign(), tau, midpoints, length_sq: l1 });
    }
    pairs.sort_by(|a, b| direction_order(&a.e, &b.e));
    Ok(pairs)
}

/// Center `c` with `2c - K = K`, if the region is centrally symmetric.
pub fn is_centrally_symmetric(region: &PolygonalRegion) -> Option<Rational2> {
    let mut sum = Rational2::zero();
    let mut count = 0i64;
    for v in region.vertices() {
        sum = sum + v.clone();
        count += 1;
    }
    let c = sum.scale(&q(1, count));
    let mut originals: Vec<SimplePolygon> = region.components.to_vec();
    let mut reflected: Vec<SimplePolygon> = region.components.iter().map(|p| p.reflect_through(&c)).collect();
    originals.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    reflected.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    (originals == reflected).then_some(c)
}

pub fn is_convex(region: &PolygonalRegion) -> Result<bool> {
    match region.components.as_slice() {
        [single] => Ok(single.is_convex()),
        _ => Err(Error::MultiComponent),
    }
}

pub fn is_parallelogram(region: &PolygonalRegion) -> Result<bool> {
    Ok(is_convex(region)? && region.components[0].len() == 4)
}
