mod support;

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use pairtile_core::spectral::poisson_sides;
use pairtile_core::{
    check_lattice_tiling, density_at_zero, extract_pairing, ft_eval, quasi_periodicity_certificate, vanishes_at,
    zero_set, zero_set_intersection_in_disc, EdgePair, Error, Lattice, QuasiPeriodicSet, Rational2, TranslatedLattice,
    Q,
};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use support::{fuzz_region, hexagon, lattice_for, q, rat2, rng, unit_square};

fn random_xi(r: &mut ChaCha8Rng) -> Rational2 {
    let d1 = r.gen_range(1..=64);
    let d2 = r.gen_range(1..=64);
    rat2(q(r.gen_range(-2 * d1..=2 * d1), d1), q(r.gen_range(-2 * d2..=2 * d2), d2))
}

fn distance_to_integer(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Midpoint rule for the signed arc-length measure: `+` on the edge centred at
/// `τ/2`, `−` on the edge centred at `−τ/2`.
fn ft_quadrature(pair: &EdgePair, xi: (f64, f64), n: usize) -> Complex64 {
    let (ex, ey) = pair.e.to_f64();
    let (tx, ty) = pair.tau.to_f64();
    let len = ex.hypot(ey);
    let mut total = Complex64::new(0.0, 0.0);
    for sign in [1.0, -1.0] {
        let (cx, cy) = (sign * tx / 2.0, sign * ty / 2.0);
        for k in 0..n {
            let s = (k as f64 + 0.5) / n as f64 - 0.5;
            let (x, y) = (cx + s * ex, cy + s * ey);
            let phase = -2.0 * PI * (x * xi.0 + y * xi.1);
            total += sign * Complex64::new(phase.cos(), phase.sin()) * (len / n as f64);
        }
    }
    total
}

#[test]
fn closed_form_matches_quadrature() {
    let mut r = rng(21);
    for _ in 0..30 {
        let region = fuzz_region(&mut r);
        for pair in extract_pairing(&region).unwrap() {
            for xi in [(1.0 / 3.0, 1.0 / 3.0), (0.7, -1.3), (0.0, 0.25)] {
                let exact = ft_eval(&pair, xi);
                let approx = ft_quadrature(&pair, xi, 4000);
                assert!((exact - approx).norm() < 1e-5, "{exact} vs {approx}");
            }
        }
    }
}

#[test]
fn exact_and_numeric_zeros_agree() {
    let mut r = rng(22);
    let mut checked = 0;
    let mut zeros = 0;
    while checked < 1000 {
        let region = fuzz_region(&mut r);
        let pairs = extract_pairing(&region).unwrap();
        let pair = &pairs[r.gen_range(0..pairs.len())];
        // Bias towards the zero set: half the time land on one of its lines.
        let mut xi = random_xi(&mut r);
        if r.gen_bool(0.5) {
            let z = zero_set(pair);
            let family = if r.gen_bool(0.5) { &z.tau_family } else { &z.e_family };
            let n = family.normal();
            let level = Q::from_integer(r.gen_range(1..=3).into());
            let t = q(r.gen_range(-8..=8), 8);
            xi = &n.scale(&(level / n.norm_sq())) + &n.perp().scale(&t);
        }
        let (along, across) = (pair.e.dot(&xi), pair.tau.dot(&xi));
        let (fa, fc) = (pairtile_core::point::to_f64(&along), pairtile_core::point::to_f64(&across));
        let near = |x: f64, exact: &Q| !exact.is_integer() && distance_to_integer(x) < 1e-4;
        if near(fa, &along) || near(fc, &across) {
            continue;
        }
        checked += 1;
        let value = ft_eval(pair, xi.to_f64()).norm();
        assert_eq!(zero_set(pair).contains(&xi), vanishes_at(pair, &xi));
        if vanishes_at(pair, &xi) {
            zeros += 1;
            assert!(value < 1e-9, "value {value} at a zero");
        } else {
            assert!(value > 1e-6, "value {value} off the zero set");
        }
    }
    assert!(zeros > 100 && zeros < 900);
}

#[test]
fn tiling_lattices_put_their_dual_in_every_zero_set() {
    let mut r = rng(23);
    let mut tiling = 0;
    while tiling < 40 {
        let region = fuzz_region(&mut r);
        let lattice = lattice_for(&mut r, &region, 12);
        if !check_lattice_tiling(&region, &lattice).unwrap().tiles {
            continue;
        }
        tiling += 1;
        let dual = lattice.dual();
        for pair in extract_pairing(&region).unwrap() {
            for i in -10..=10 {
                for j in -10..=10 {
                    let xi = dual.point(&Q::from_integer(i.into()), &Q::from_integer(j.into()));
                    assert!(vanishes_at(&pair, &xi));
                    assert!(ft_eval(&pair, xi.to_f64()).norm() < 1e-9);
                }
            }
        }
    }
}

/// Candidate intersection points from every pair of lines of every family,
/// filtered by membership in all zero sets.
fn intersection_by_brute_force(pairs: &[EdgePair], radius: &Q) -> Vec<Rational2> {
    let mut lines: Vec<(Rational2, Q)> = Vec::new();
    for z in pairs.iter().map(zero_set) {
        for family in [&z.tau_family, &z.e_family] {
            for k in family.indices_in_disc(radius) {
                lines.push((family.normal().clone(), Q::from_integer(k)));
            }
        }
    }
    let mut out = Vec::new();
    for (i, (n1, l1)) in lines.iter().enumerate() {
        for (n2, l2) in &lines[i + 1..] {
            let det = n1.cross(n2);
            if det.is_zero() {
                continue;
            }
            let p = rat2((l1 * &n2.y - l2 * &n1.y) / &det, (&n1.x * l2 - &n2.x * l1) / &det);
            if p.norm_sq() <= radius * radius && pairs.iter().all(|pair| vanishes_at(pair, &p)) {
                out.push(p);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn intersections_match_brute_force() {
    let pairs = extract_pairing(&hexagon()).unwrap();
    for r in [q(3, 2), q(5, 2), q(4, 1)] {
        assert_eq!(zero_set_intersection_in_disc(&pairs, &r).unwrap(), intersection_by_brute_force(&pairs, &r));
    }
    let mut r = rng(24);
    let mut found = 0;
    while found < 15 {
        let region = fuzz_region(&mut r);
        if !quasi_periodicity_certificate(&region).unwrap().guaranteed {
            continue;
        }
        found += 1;
        let pairs = extract_pairing(&region).unwrap();
        let radius = q(5, 2);
        assert_eq!(
            zero_set_intersection_in_disc(&pairs, &radius).unwrap(),
            intersection_by_brute_force(&pairs, &radius)
        );
    }
}

#[test]
fn shared_orientations_are_not_discrete() {
    let square = unit_square();
    let cert = quasi_periodicity_certificate(&square).unwrap();
    assert!(!cert.guaranteed);
    let pairs = extract_pairing(&square).unwrap();
    assert!(matches!(zero_set_intersection_in_disc(&pairs, &q(2, 1)), Err(Error::NotDiscrete { .. })));
}

#[test]
fn intersection_grows_like_the_disc_area() {
    let pairs = extract_pairing(&hexagon()).unwrap();
    let ratios: Vec<f64> = [4, 8, 16]
        .iter()
        .map(|&r| zero_set_intersection_in_disc(&pairs, &q(r, 1)).unwrap().len() as f64 / (r * r) as f64)
        .collect();
    let (lo, hi) = ratios.iter().fold((f64::MAX, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
    assert!(hi / lo <= 4.0, "{ratios:?}");
}

/// `t⁻² Σ_Λ φ̂(λ/t)` equals `det(Λ)⁻¹ Σ_{Λ*} φ(tμ) e^{2πi⟨μ, o⟩}` by Poisson
/// summation; the dual side converges fast for small `t`.
fn density_by_dual_sum(set: &QuasiPeriodicSet, t: f64) -> f64 {
    let mut total = 0.0;
    for (part, mult) in set.parts() {
        let l = part.lattice();
        let det = pairtile_core::point::to_f64(&l.det());
        let (ox, oy) = part.offset().to_f64();
        let s: f64 = l
            .dual()
            .points_in_disc_f64(&Rational2::zero(), 8.0 / t)
            .iter()
            .map(|(x, y)| (-PI * t * t * (x * x + y * y)).exp() * (2.0 * PI * (x * ox + y * oy)).cos())
            .sum();
        total += *mult as f64 * s / det;
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn density_matches_the_dual_side(
        basis in [(-6i64..=6, 1i64..=4), (-6i64..=6, 1i64..=4), (-6i64..=6, 1i64..=4), (-6i64..=6, 1i64..=4)],
        offset in (-4i64..=4, 1i64..=4),
        t in 1.0f64..4.0,
    ) {
        let [a, b, c, d] = basis;
        let Ok(l) = Lattice::new(rat2(q(a.0, a.1), q(b.0, b.1)), rat2(q(c.0, c.1), q(d.0, d.1))) else {
            return Ok(());
        };
        prop_assume!(l.det() >= q(1, 8) && l.det() <= q(16, 1));
        let set = QuasiPeriodicSet::new(vec![
            (TranslatedLattice::new(l.clone(), &Rational2::zero()), 1),
            (TranslatedLattice::new(l.clone(), &rat2(q(offset.0, offset.1), q(1, 3))), 2),
        ])
        .unwrap();
        let direct = density_at_zero(&set, t).unwrap();
        let dual = density_by_dual_sum(&set, t);
        prop_assert!((direct - dual).abs() < 1e-9 * dual.abs().max(1.0), "{} vs {}", direct, dual);
    }

    #[test]
    fn poisson_identity_for_random_lattices(
        basis in [(-6i64..=6, 1i64..=4), (-6i64..=6, 1i64..=4), (-6i64..=6, 1i64..=4), (-6i64..=6, 1i64..=4)],
    ) {
        let [a, b, c, d] = basis;
        let Ok(l) = Lattice::new(rat2(q(a.0, a.1), q(b.0, b.1)), rat2(q(c.0, c.1), q(d.0, d.1))) else {
            return Ok(());
        };
        prop_assume!(l.det() >= q(1, 4) && l.det() <= q(4, 1));
        let (direct, spectral) = poisson_sides(&l, 1.0, 8.0);
        prop_assert!((direct - spectral).abs() < 1e-9 * direct, "{} vs {}", direct, spectral);
    }

    #[test]
    fn zero_sets_scale_inversely(seed in any::<u64>(), s in 1i64..=5, xi in ((-16i64..=16, 1i64..=8), (-16i64..=16, 1i64..=8))) {
        let region = fuzz_region(&mut rng(seed));
        let s = q(s, 3);
        let big = region.scale(&s);
        let xi = rat2(q(xi.0 .0, xi.0 .1), q(xi.1 .0, xi.1 .1));
        for (p, b) in extract_pairing(&region).unwrap().iter().zip(extract_pairing(&big).unwrap().iter()) {
            prop_assert_eq!(vanishes_at(b, &xi.scale(&s.recip())), vanishes_at(p, &xi));
        }
        let c1 = quasi_periodicity_certificate(&region).unwrap();
        let c2 = quasi_periodicity_certificate(&big).unwrap();
        prop_assert_eq!(c1, c2);
    }
}
