//! Seeded generators for regions and lattices shared by the property tests
//! and the acceptance run.

#![allow(dead_code)]

use pairtile_core::{area, extract_pairing, Lattice, PolygonalRegion, Rational2, SimplePolygon, Q};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn pt(x: i64, y: i64) -> Rational2 {
    Rational2::from_ints(x, y)
}

pub fn rat2(x: Q, y: Q) -> Rational2 {
    Rational2::new(x, y)
}

/// Primitive integer directions with canonical sign.
const DIRECTIONS: [(i64, i64); 12] =
    [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1), (1, 3), (3, 1), (3, -1), (2, 3)];

fn pick_directions(rng: &mut ChaCha8Rng, k: usize) -> Vec<Rational2> {
    DIRECTIONS.choose_multiple(rng, k).map(|&(x, y)| pt(x, y)).collect()
}

fn from_edges(edges: &[Rational2], start: &Rational2, scale: &Q) -> Vec<Rational2> {
    let mut v = Vec::with_capacity(edges.len());
    let mut at = start.clone();
    for e in edges {
        v.push(at.scale(scale));
        at = &at + e;
    }
    v
}

/// Half-plane then cross-product order, exact.
fn by_angle(a: &Rational2, b: &Rational2) -> std::cmp::Ordering {
    let upper = |v: &Rational2| {
        v.y > Q::from_integer(0.into()) || (v.y == Q::from_integer(0.into()) && v.x > Q::from_integer(0.into()))
    };
    upper(b).cmp(&upper(a)).then_with(|| b.cross(a).cmp(&Q::from_integer(0.into())))
}

/// A simple polygon whose edges are `±v_i` for 2 to 4 distinct directions, in
/// random order, with coordinates of denominator at most 8.
pub fn pairing_polygon(rng: &mut ChaCha8Rng) -> PolygonalRegion {
    loop {
        let k = rng.gen_range(2..=4);
        let mut edges = Vec::with_capacity(2 * k);
        for d in pick_directions(rng, k) {
            let v = d.scale(&Q::from_integer(rng.gen_range(1..=2).into()));
            edges.push(-&v);
            edges.push(v);
        }
        edges.shuffle(rng);
        let s = rng.gen_range(1..=8);
        let start = pt(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let verts = from_edges(&edges, &start, &q(1, s));
        let Ok(poly) = SimplePolygon::new(verts) else { continue };
        if poly.len() != 2 * k {
            continue;
        }
        let Ok(region) = PolygonalRegion::new(vec![poly]) else { continue };
        if extract_pairing(&region).is_ok() {
            return region;
        }
    }
}

/// A triangle together with its point reflection: each edge pairs with its
/// reflected copy.
pub fn triangle_pair(rng: &mut ChaCha8Rng) -> PolygonalRegion {
    loop {
        let tri: Vec<Rational2> = (0..3).map(|_| pt(rng.gen_range(0..=3), rng.gen_range(0..=3))).collect();
        let s = rng.gen_range(1..=4);
        let tri: Vec<Rational2> = tri.iter().map(|p| p.scale(&q(1, s))).collect();
        let c = rat2(q(rng.gen_range(5..=9), 2 * s), q(rng.gen_range(-3..=3), 2 * s));
        let twin: Vec<Rational2> = tri.iter().map(|p| &(&c + &c) - p).collect();
        let Ok(region) = PolygonalRegion::from_vertex_lists(vec![tri, twin]) else { continue };
        if extract_pairing(&region).is_ok() {
            return region;
        }
    }
}

/// A fuzz region: mostly single pairing polygons, sometimes two components.
pub fn fuzz_region(rng: &mut ChaCha8Rng) -> PolygonalRegion {
    if rng.gen_ratio(1, 6) {
        triangle_pair(rng)
    } else {
        pairing_polygon(rng)
    }
}

/// Convex polygon with edges `±n_i d_i` sorted by angle: centrally symmetric,
/// a parallelogram when `k = 2`. Vertices are integral before scaling by `1/s`.
pub fn symmetric_convex(rng: &mut ChaCha8Rng, k: usize, s: i64) -> PolygonalRegion {
    let mut edges = Vec::with_capacity(2 * k);
    for d in pick_directions(rng, k) {
        let v = d.scale(&Q::from_integer(rng.gen_range(1..=3).into()));
        edges.push(-&v);
        edges.push(v);
    }
    edges.sort_by(by_angle);
    let start = pt(rng.gen_range(-2..=2), rng.gen_range(-2..=2));
    PolygonalRegion::from_vertex_lists(vec![from_edges(&edges, &start, &q(1, s))]).expect("convex polygon")
}

/// Symmetric convex polygon translated so its centre is the origin.
pub fn centred_symmetric_convex(rng: &mut ChaCha8Rng) -> PolygonalRegion {
    let k = rng.gen_range(2..=5);
    let s = rng.gen_range(1..=4);
    let r = symmetric_convex(rng, k, s);
    pairtile_core::center(&r).expect("symmetric").0
}

fn random_basis(rng: &mut ChaCha8Rng) -> Lattice {
    loop {
        let mut c = || q(rng.gen_range(-8..=8), rng.gen_range(1..=8));
        let g1 = rat2(c(), c());
        let g2 = rat2(c(), c());
        if let Ok(l) = Lattice::new(g1, g2) {
            return l;
        }
    }
}

/// A lattice chosen to exercise both outcomes of the criterion: spans of the
/// pair translations (always tile), edge-rule constructions, refinements and
/// coarsenings of those, and unrelated random bases. Rejects lattices whose
/// covolume makes the expected weight exceed `max_weight`.
pub fn lattice_for(rng: &mut ChaCha8Rng, region: &PolygonalRegion, max_weight: i64) -> Lattice {
    let pairs = extract_pairing(region).expect("pairing region");
    let taus: Vec<Rational2> = pairs.iter().map(|p| p.tau.clone()).collect();
    let a = area(region);
    loop {
        let candidate = match rng.gen_range(0..6) {
            0 => Lattice::spanned_by(&taus).ok(),
            1 | 2 => {
                let i = rng.gen_range(0..pairs.len());
                let m = rng.gen_range(2..=4);
                let theta = q(rng.gen_range(1..m), m);
                let mut gens: Vec<Rational2> =
                    taus.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, t)| t.clone()).collect();
                gens.push(pairs[i].e.clone());
                gens.push(&pairs[i].tau + &pairs[i].e.scale(&theta));
                Lattice::spanned_by(&gens).ok()
            }
            3 => Lattice::spanned_by(&taus).ok().map(|l| {
                let [g1, g2] = l.basis().clone();
                let k = Q::from_integer(rng.gen_range(2..=3).into());
                if rng.gen_bool(0.5) {
                    Lattice::new(g1.scale(&k), g2).unwrap()
                } else {
                    Lattice::new(g1, g2.scale(&k)).unwrap()
                }
            }),
            4 => Lattice::spanned_by(&taus).ok().map(|l| l.scale(&q(1, rng.gen_range(2..=3)))),
            _ => Some(random_basis(rng)),
        };
        let Some(l) = candidate else { continue };
        if &a / l.det() <= Q::from_integer(max_weight.into()) {
            return l;
        }
    }
}

fn region_of(v: &[(i64, i64)]) -> PolygonalRegion {
    PolygonalRegion::from_vertex_lists(vec![v.iter().map(|&(x, y)| pt(x, y)).collect()]).expect("valid polygon")
}

pub fn unit_square() -> PolygonalRegion {
    region_of(&[(0, 0), (1, 0), (1, 1), (0, 1)])
}

/// The centred hexagon with vertices `±(1,0), ±(0,1), ±(−1,1)`.
pub fn hexagon() -> PolygonalRegion {
    region_of(&[(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)])
}
