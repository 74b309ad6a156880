//! Ratio invariants: Moore bounds, scale invariance, closed-form cross
//! validation, search behavior, and the bi-Lipschitz sandwich.

use steiner_surfaces::config::Configuration;
use steiner_surfaces::geometry::{GeometrySpec, SurfacePoint};
use steiner_surfaces::ratio::{
    bilipschitz_ratio_bounds, equilateral_config, hyperbolic_m, ratio, ratio_search,
    SQRT3_OVER_2,
};

#[test]
fn every_estimate_respects_moore_bounds() {
    let geoms = [
        GeometrySpec::EuclideanPlane,
        GeometrySpec::PoincareDisk,
        GeometrySpec::UnitSphere,
        GeometrySpec::ProjectivePlane,
    ];
    for (gi, geom) in geoms.iter().enumerate() {
        for n in 2..=5usize {
            for k in 0..8u64 {
                let config =
                    steiner_surfaces::ratio::random_config(geom, n, (gi as u64) << 32 | (n as u64) << 8 | k)
                        .unwrap();
                let est = ratio(&config, k).unwrap();
                assert!(est.ratio >= 0.5 - 1e-9, "{}: {}", geom.tag(), est.ratio);
                assert!(est.ratio <= 1.0 + 1e-9, "{}: {}", geom.tag(), est.ratio);
                assert!((est.ratio - est.smt_weight / est.mst_weight).abs() < 1e-15);
            }
        }
    }
}

#[test]
fn plane_ratio_is_scale_invariant() {
    let base = [(0.1, 0.2), (1.3, 0.4), (0.7, 1.5), (1.9, 1.1)];
    let make = |c: f64| {
        Configuration::new(
            GeometrySpec::EuclideanPlane,
            base.iter().map(|&(x, y)| SurfacePoint::xy(c * x, c * y)).collect(),
        )
        .unwrap()
    };
    let reference = ratio(&make(1.0), 5).unwrap().ratio;
    for c in [0.5, 2.0, 10.0] {
        let scaled = ratio(&make(c), 5).unwrap().ratio;
        assert!(
            (scaled - reference).abs() <= 1e-9,
            "scale {c}: {scaled} vs {reference}"
        );
    }
}

#[test]
fn numeric_ratio_tracks_closed_form_on_the_disk() {
    for r in [0.5, 1.0, 2.0] {
        let config = equilateral_config(&GeometrySpec::PoincareDisk, r).unwrap();
        let numeric = ratio(&config, 21).unwrap().ratio;
        let closed = hyperbolic_m(r).unwrap();
        assert!(
            (numeric - closed).abs() / closed <= 1e-4,
            "r={r}: numeric {numeric} vs closed {closed}"
        );
    }
}

#[test]
fn plane_search_finds_the_equilateral_value_and_nothing_below() {
    let best = ratio_search(&GeometrySpec::EuclideanPlane, 3, 80, 99).unwrap();
    assert!(best.ratio <= 0.86603, "search missed the equilateral seed: {}", best.ratio);
    assert!(
        best.ratio >= SQRT3_OVER_2 - 1e-4,
        "search claims to beat the plane value: {}",
        best.ratio
    );
}

#[test]
fn disk_search_reaches_the_large_triangle_regime() {
    // Growing equilateral seeds must push the bound below 0.80 (the
    // closed form gives about 0.7875 at circumradius 3).
    let best = ratio_search(&GeometrySpec::PoincareDisk, 3, 60, 12).unwrap();
    assert!(best.ratio < 0.80, "disk search stuck at {}", best.ratio);
    assert!(best.ratio >= 0.5 - 1e-9);
}

#[test]
fn quotient_searches_stay_in_moore_bounds() {
    let geoms = [
        GeometrySpec::flat_torus(
            steiner_surfaces::geometry::Vec2::new(1.0, 0.0),
            steiner_surfaces::geometry::Vec2::new(0.0, 1.0),
        )
        .unwrap(),
        GeometrySpec::flat_klein(1.0, 1.0).unwrap(),
        GeometrySpec::ProjectivePlane,
    ];
    for geom in geoms {
        let best = ratio_search(&geom, 3, 12, 31).unwrap();
        assert!(best.ratio >= 0.5 - 1e-9, "{}: {}", geom.tag(), best.ratio);
        assert!(best.ratio <= 1.0 + 1e-9, "{}: {}", geom.tag(), best.ratio);
        // Small equilateral seeds find the near-flat regime.
        assert!(best.ratio <= 0.87, "{}: {}", geom.tag(), best.ratio);
    }
}

#[test]
fn search_rejects_bad_arguments() {
    assert!(ratio_search(&GeometrySpec::EuclideanPlane, 2, 10, 0).is_err());
    assert!(ratio_search(&GeometrySpec::EuclideanPlane, 7, 10, 0).is_err());
    assert!(ratio_search(&GeometrySpec::EuclideanPlane, 3, 0, 0).is_err());
}

#[test]
fn bilipschitz_factor_bound_on_the_sphere() {
    let report = bilipschitz_ratio_bounds(
        &GeometrySpec::UnitSphere,
        &SurfacePoint::xyz(0.0, 0.0, 1.0),
        0.1,
        3,
    )
    .unwrap();
    assert!(report.passed(), "{report}");
    let factor_bound = ((1.0 + 4.0 * report.epsilon) / (1.0 - 4.0 * report.epsilon)).sqrt();
    assert!(report.c2 / report.c1 <= factor_bound + 1e-12);
    // Small-ball flatness: the best sampled ratio is the plane value up
    // to curvature corrections.
    assert!((report.best_ratio - SQRT3_OVER_2).abs() <= 2e-3);
}
