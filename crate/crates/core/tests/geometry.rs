mod support;

use pairtile_core::{area, extract_pairing, point_location, Location, PolygonalRegion, Rational2, SimplePolygon, Q};
use proptest::prelude::*;
use rand::Rng;
use support::{fuzz_region, q, rat2, rng};

fn offset() -> impl Strategy<Value = Rational2> {
    (-20i64..=20, 1i64..=12, -20i64..=20, 1i64..=12).prop_map(|(a, b, c, d)| rat2(q(a, b), q(c, d)))
}

fn sorted_lengths(region: &PolygonalRegion) -> Vec<Q> {
    let mut v: Vec<Q> = region.edges().map(|(a, b)| (b - a).norm_sq()).collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pairs_account_for_the_whole_perimeter(seed in any::<u64>()) {
        let region = fuzz_region(&mut rng(seed));
        let pairs = extract_pairing(&region).unwrap();
        let mut from_pairs: Vec<Q> = pairs.iter().flat_map(|p| [p.length_sq.clone(), p.length_sq.clone()]).collect();
        from_pairs.sort();
        prop_assert_eq!(&from_pairs, &sorted_lengths(&region));
        let perimeter: f64 = region.edges().map(|(a, b)| { let (x, y) = (b - a).to_f64(); x.hypot(y) }).sum();
        let paired: f64 = pairs.iter().map(|p| { let (x, y) = p.e.to_f64(); 2.0 * x.hypot(y) }).sum();
        prop_assert!((perimeter - paired).abs() < 1e-9 * perimeter);
    }

    #[test]
    fn pairing_ignores_translation(seed in any::<u64>(), v in offset()) {
        let region = fuzz_region(&mut rng(seed));
        let a = extract_pairing(&region).unwrap();
        let b = extract_pairing(&region.translate(&v)).unwrap();
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!(&x.e, &y.e);
            prop_assert_eq!(&x.tau, &y.tau);
            prop_assert_eq!(&(&x.midpoints[0] + &v), &y.midpoints[0]);
        }
        prop_assert_eq!(area(&region), area(&region.translate(&v)));
    }

    #[test]
    fn canonicalization_is_idempotent(seed in any::<u64>()) {
        let region = fuzz_region(&mut rng(seed));
        let again = PolygonalRegion::from_vertex_lists(
            region.components().iter().map(|c| c.vertices().to_vec()).collect(),
        )
        .unwrap();
        prop_assert_eq!(&again, &region);
        prop_assert_eq!(extract_pairing(&again).unwrap(), extract_pairing(&region).unwrap());
    }

    #[test]
    fn orientation_and_start_vertex_do_not_matter(seed in any::<u64>(), shift in 0usize..8) {
        let region = fuzz_region(&mut rng(seed));
        let lists: Vec<Vec<Rational2>> = region
            .components()
            .iter()
            .map(|c| {
                let mut v = c.vertices().to_vec();
                v.reverse();
                let k = shift % v.len();
                v.rotate_left(k);
                v
            })
            .collect();
        prop_assert_eq!(PolygonalRegion::from_vertex_lists(lists).unwrap(), region);
    }

    #[test]
    fn monte_carlo_area(seed in any::<u64>()) {
        let region = fuzz_region(&mut rng(seed));
        let bb = region.bbox();
        let mut r = rng(seed ^ 0x5eed);
        let n = 2000;
        let den = 1i64 << 20;
        let (w, h) = (&bb.max.x - &bb.min.x, &bb.max.y - &bb.min.y);
        let mut hits = 0;
        for _ in 0..n {
            let p = rat2(&bb.min.x + &w * q(r.gen_range(0..=den), den), &bb.min.y + &h * q(r.gen_range(0..=den), den));
            if point_location(&region, &p) == Location::Interior {
                hits += 1;
            }
        }
        let box_area = pairtile_core::point::to_f64(&(&w * &h));
        let estimate = box_area * hits as f64 / n as f64;
        let exact = pairtile_core::point::to_f64(&area(&region));
        // Five standard deviations of a binomial proportion.
        let p = exact / box_area;
        let sigma = box_area * (p * (1.0 - p) / n as f64).sqrt();
        prop_assert!((estimate - exact).abs() <= 5.0 * sigma + 1e-12, "estimate {} exact {}", estimate, exact);
    }
}

#[test]
fn vertices_and_edges_are_boundary() {
    let mut r = rng(7);
    for _ in 0..20 {
        let region = fuzz_region(&mut r);
        for (a, b) in region.edges() {
            assert_eq!(point_location(&region, a), Location::Boundary);
            assert_eq!(point_location(&region, &a.midpoint(b)), Location::Boundary);
        }
    }
}

#[test]
fn simple_polygon_rejections() {
    let p = |v: &[(i64, i64)]| SimplePolygon::new(v.iter().map(|&(x, y)| Rational2::from_ints(x, y)).collect());
    assert!(p(&[(0, 0), (1, 0)]).is_err());
    assert!(p(&[(0, 0), (2, 2), (2, 0), (0, 2)]).is_err());
    assert!(p(&[(0, 0), (1, 0), (1, 1), (0, 1)]).is_ok());
}
