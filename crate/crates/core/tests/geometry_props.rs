//! Metric and covering invariants checked on bulk random samples, plus
//! proptest shrinking on the chart maps.

use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use steiner_surfaces::geometry::{CoveringSpec, GeometrySpec, SurfacePoint, Vec2, Vec3};

fn unit_torus() -> GeometrySpec {
    GeometrySpec::flat_torus(Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)).unwrap()
}

fn skewed_torus() -> GeometrySpec {
    GeometrySpec::flat_torus(Vec2::new(1.0, 0.0), Vec2::new(17.0, 1.0)).unwrap()
}

fn all_geometries() -> Vec<GeometrySpec> {
    vec![
        GeometrySpec::EuclideanPlane,
        GeometrySpec::PoincareDisk,
        GeometrySpec::UnitSphere,
        unit_torus(),
        skewed_torus(),
        GeometrySpec::flat_klein(1.0, 1.0).unwrap(),
        GeometrySpec::flat_klein(0.5, 2.0).unwrap(),
        GeometrySpec::ProjectivePlane,
    ]
}

fn random_point(geom: &GeometrySpec, rng: &mut ChaCha8Rng) -> SurfacePoint {
    match geom {
        GeometrySpec::EuclideanPlane => {
            SurfacePoint::xy(rng.gen::<f64>() * 10.0 - 5.0, rng.gen::<f64>() * 10.0 - 5.0)
        }
        GeometrySpec::PoincareDisk => {
            let r = 0.97 * rng.gen::<f64>().sqrt();
            let a = rng.gen::<f64>() * std::f64::consts::TAU;
            SurfacePoint::xy(r * a.cos(), r * a.sin())
        }
        GeometrySpec::UnitSphere | GeometrySpec::ProjectivePlane => loop {
            let v = Vec3::new(
                rng.gen::<f64>() * 2.0 - 1.0,
                rng.gen::<f64>() * 2.0 - 1.0,
                rng.gen::<f64>() * 2.0 - 1.0,
            );
            if v.norm() > 1e-3 && v.norm() <= 1.0 {
                break geom.canonicalize(&SurfacePoint::ThreeD(v.normalized())).unwrap();
            }
        },
        GeometrySpec::FlatTorus(_) | GeometrySpec::FlatKleinBottle { .. } => {
            let p = SurfacePoint::xy(rng.gen::<f64>() * 40.0 - 20.0, rng.gen::<f64>() * 40.0 - 20.0);
            geom.canonicalize(&p).unwrap()
        }
    }
}

#[test]
fn values_are_shareable_across_threads() {
    // Everything is immutable after construction; the types must stay
    // Send + Sync so concurrent workers can share them.
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<GeometrySpec>();
    assert_send_sync::<SurfacePoint>();
    assert_send_sync::<CoveringSpec>();
    assert_send_sync::<steiner_surfaces::Configuration>();
    assert_send_sync::<steiner_surfaces::NetworkTree>();
    assert_send_sync::<steiner_surfaces::steiner::SteinerTopology>();
    assert_send_sync::<steiner_surfaces::steiner::SmtResult>();
    assert_send_sync::<steiner_surfaces::ratio::RatioEstimate>();
}

#[test]
fn metric_axioms_on_bulk_samples() {
    // 10^4 random triples per geometry: symmetry, identity, triangle
    // inequality.
    for geom in all_geometries() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x51ee1);
        for _ in 0..10_000 {
            let a = random_point(&geom, &mut rng);
            let b = random_point(&geom, &mut rng);
            let c = random_point(&geom, &mut rng);
            let dab = geom.distance(&a, &b).unwrap();
            let dba = geom.distance(&b, &a).unwrap();
            let dac = geom.distance(&a, &c).unwrap();
            let dbc = geom.distance(&b, &c).unwrap();
            assert!((dab - dba).abs() <= 1e-12, "{}: symmetry {dab} vs {dba}", geom.tag());
            assert!(dab >= 0.0);
            assert_eq!(geom.distance(&a, &a).unwrap(), 0.0, "{}", geom.tag());
            assert!(
                dac <= dab + dbc + 1e-9,
                "{}: triangle violated: {dac} > {dab} + {dbc}",
                geom.tag()
            );
        }
    }
}

#[test]
fn zero_distance_only_for_equal_canonical_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for geom in all_geometries() {
        for _ in 0..2000 {
            let a = random_point(&geom, &mut rng);
            let b = random_point(&geom, &mut rng);
            let d = geom.distance(&a, &b).unwrap();
            if d == 0.0 {
                assert_eq!(
                    geom.canonicalize(&a).unwrap(),
                    geom.canonicalize(&b).unwrap(),
                    "{}: zero distance between distinct points",
                    geom.tag()
                );
            }
        }
    }
}

#[test]
fn quotient_distance_equals_min_over_enumerated_lifts() {
    // Exact agreement (bitwise) between the distance and the explicit
    // minimum over deck images within the documented window.
    let bases = [
        unit_torus(),
        skewed_torus(),
        GeometrySpec::flat_klein(1.0, 1.0).unwrap(),
        GeometrySpec::flat_klein(0.5, 2.0).unwrap(),
        GeometrySpec::ProjectivePlane,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee);
    for base in bases {
        let cover = CoveringSpec::universal(&base).unwrap();
        let window = cover.deck_window() + 2;
        for _ in 0..2000 {
            let p = random_point(&base, &mut rng);
            let q = random_point(&base, &mut rng);
            let direct = base.distance(&p, &q).unwrap();
            let via_lifts = cover
                .enumerate_lifts(&q, window)
                .unwrap()
                .iter()
                .map(|lift| cover.total_space().distance(&p, lift).unwrap())
                .fold(f64::INFINITY, f64::min);
            assert_eq!(
                direct.to_bits(),
                via_lifts.to_bits(),
                "{}: {direct} vs lift minimum {via_lifts}",
                base.tag()
            );
        }
    }
}

#[test]
fn projection_never_increases_distances() {
    // 10^4 random pairs per covering.
    let bases = [unit_torus(), GeometrySpec::flat_klein(1.0, 1.0).unwrap(), GeometrySpec::ProjectivePlane];
    let mut rng = ChaCha8Rng::seed_from_u64(0xdeed);
    for base in bases {
        let cover = CoveringSpec::universal(&base).unwrap();
        let total = cover.total_space().clone();
        for _ in 0..10_000 {
            let (p, q) = match &total {
                GeometrySpec::EuclideanPlane => (
                    SurfacePoint::xy(rng.gen::<f64>() * 8.0 - 4.0, rng.gen::<f64>() * 8.0 - 4.0),
                    SurfacePoint::xy(rng.gen::<f64>() * 8.0 - 4.0, rng.gen::<f64>() * 8.0 - 4.0),
                ),
                _ => (random_point(&total, &mut rng), random_point(&total, &mut rng)),
            };
            let upstairs = total.distance(&p, &q).unwrap();
            let downstairs = base
                .distance(&cover.project(&p).unwrap(), &cover.project(&q).unwrap())
                .unwrap();
            assert!(
                downstairs <= upstairs + 1e-12,
                "{}: projection expanded {upstairs} to {downstairs}",
                base.tag()
            );
        }
    }
}

#[test]
fn log_map_norm_equals_distance_inside_injectivity_radius() {
    let mut rng = ChaCha8Rng::seed_from_u64(31337);
    for geom in all_geometries() {
        let mut checked = 0;
        while checked < 2000 {
            let base = random_point(&geom, &mut rng);
            let p = random_point(&geom, &mut rng);
            let d = geom.distance(&base, &p).unwrap();
            if d >= 0.99 * geom.injectivity_radius() {
                continue;
            }
            let v = geom.log_map(&base, &p).unwrap();
            assert!(
                (v.norm() - d).abs() <= 1e-9,
                "{}: |log| {} vs distance {d}",
                geom.tag(),
                v.norm()
            );
            checked += 1;
        }
    }
}

#[test]
fn comparison_bound_holds_on_dense_sphere_and_disk_samples() {
    let sphere = GeometrySpec::UnitSphere;
    let report = sphere
        .comparison_bounds(&SurfacePoint::xyz(0.0, 0.0, 1.0), 0.3, 100_000, 5)
        .unwrap();
    assert!(report.bound_holds(), "sphere report {report:?}");
    let lo = (1.0 - 4.0 * report.epsilon).sqrt();
    assert!(report.measured_min_ratio >= lo - 1e-12);

    let disk = GeometrySpec::PoincareDisk;
    let report = disk
        .comparison_bounds(&SurfacePoint::xy(0.1, -0.2), 0.4, 50_000, 6)
        .unwrap();
    assert!(report.bound_holds(), "disk report {report:?}");
    assert!(report.measured_max_ratio <= (1.0 + 4.0 * report.epsilon).sqrt() + 1e-12);
}

#[test]
fn disk_distance_matches_polyline_length_oracle() {
    // Independent check of the distance closed form along arbitrary
    // geodesics: sum the conformal metric over a fine polyline produced
    // by the interpolator.
    let geom = GeometrySpec::PoincareDisk;
    let pairs = [
        (SurfacePoint::xy(0.0, 0.0), SurfacePoint::xy(0.5, 0.0)),
        (SurfacePoint::xy(-0.3, 0.4), SurfacePoint::xy(0.6, -0.1)),
        (SurfacePoint::xy(0.85, 0.0), SurfacePoint::xy(0.0, 0.85)),
    ];
    for (p, q) in pairs {
        let d = geom.distance(&p, &q).unwrap();
        let segments = 40_000;
        let mut length = 0.0;
        let mut prev = p;
        for k in 1..=segments {
            let t = k as f64 / segments as f64;
            let next = geom.geodesic_point(&p, &q, t).unwrap();
            let a = prev.as_xy().unwrap();
            let b = next.as_xy().unwrap();
            let mid = (a + b) * 0.5;
            length += 2.0 / (1.0 - mid.norm_sq()) * (b - a).norm();
            prev = next;
        }
        assert!(
            (length - d).abs() < 1e-7,
            "polyline {length} vs closed form {d} for {p:?} {q:?}"
        );
    }
}

#[test]
fn torus_closest_lift_matches_wide_brute_force() {
    // The internal closest-vector search uses a small window around the
    // reduced-basis rounding; a wide enumeration must never beat it.
    let mut rng = ChaCha8Rng::seed_from_u64(0xabba);
    for _ in 0..40 {
        let a = Vec2::new(rng.gen::<f64>() * 4.0 - 2.0, rng.gen::<f64>() * 4.0 - 2.0);
        let b = Vec2::new(rng.gen::<f64>() * 4.0 - 2.0, rng.gen::<f64>() * 4.0 - 2.0);
        let Ok(geom) = GeometrySpec::flat_torus(a, b) else {
            continue;
        };
        let cover = CoveringSpec::universal(&geom).unwrap();
        let window = cover.deck_window() + 3;
        for _ in 0..50 {
            let p = random_point(&geom, &mut rng);
            let q = random_point(&geom, &mut rng);
            let direct = geom.distance(&p, &q).unwrap();
            let brute = cover
                .enumerate_lifts(&q, window)
                .unwrap()
                .iter()
                .map(|l| cover.total_space().distance(&p, l).unwrap())
                .fold(f64::INFINITY, f64::min);
            assert!(
                direct <= brute + 1e-15 && brute <= direct + 1e-15,
                "cvp mismatch: {direct} vs {brute} on basis {a:?} {b:?}"
            );
        }
    }
}

proptest! {
    #[test]
    fn geodesic_fraction_scales_distance(
        x1 in -0.6f64..0.6, y1 in -0.6f64..0.6,
        x2 in -0.6f64..0.6, y2 in -0.6f64..0.6,
        t in 0.0f64..1.0
    ) {
        for geom in [GeometrySpec::EuclideanPlane, GeometrySpec::PoincareDisk, unit_torus()] {
            let p = geom.canonicalize(&SurfacePoint::xy(x1, y1)).unwrap();
            let q = geom.canonicalize(&SurfacePoint::xy(x2, y2)).unwrap();
            let d = geom.distance(&p, &q).unwrap();
            let mid = geom.geodesic_point(&p, &q, t).unwrap();
            let dt = geom.distance(&p, &mid).unwrap();
            prop_assert!((dt - t * d).abs() < 1e-9, "{}: {dt} vs {}", geom.tag(), t * d);
        }
    }

    #[test]
    fn exp_undoes_log_on_the_disk(
        bx in -0.7f64..0.7, by in -0.7f64..0.7,
        px in -0.7f64..0.7, py in -0.7f64..0.7
    ) {
        let geom = GeometrySpec::PoincareDisk;
        let base = SurfacePoint::xy(bx, by);
        let p = SurfacePoint::xy(px, py);
        let v = geom.log_map(&base, &p).unwrap();
        let back = geom.exp_map(&base, v).unwrap();
        let drift = geom.distance(&p, &back).unwrap();
        prop_assert!(drift < 1e-10, "drift {drift}");
    }

    #[test]
    fn canonicalization_is_idempotent_everywhere(
        x in -50.0f64..50.0, y in -50.0f64..50.0
    ) {
        for geom in [unit_torus(), skewed_torus(), GeometrySpec::flat_klein(0.5, 2.0).unwrap()] {
            let once = geom.canonicalize(&SurfacePoint::xy(x, y)).unwrap();
            let twice = geom.canonicalize(&once).unwrap();
            prop_assert_eq!(once, twice);
        }
    }
}
