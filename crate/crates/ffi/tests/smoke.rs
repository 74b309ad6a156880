//! Exercises the C entry points from Rust: handle lifecycle, error
//! codes, and numeric results against known values.

use std::ffi::{CStr, CString};
use std::ptr;

use steiner_surfaces_ffi::*;

fn parse_geometry(spec: &str) -> *mut SsGeometry {
    let spec = CString::new(spec).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { ss_geometry_parse(spec.as_ptr(), &mut out) };
    assert_eq!(status, SsStatus::Ok);
    assert!(!out.is_null());
    out
}

#[test]
fn distance_on_the_plane() {
    let geom = parse_geometry("plane");
    assert_eq!(unsafe { ss_geometry_chart_dim(geom) }, 2);
    let p = [0.0, 0.0];
    let q = [3.0, 4.0];
    let mut d = 0.0;
    let status = unsafe { ss_distance(geom, p.as_ptr(), q.as_ptr(), &mut d) };
    assert_eq!(status, SsStatus::Ok);
    assert_eq!(d, 5.0);
    unsafe { ss_geometry_free(geom) };
}

#[test]
fn torus_distance_wraps() {
    let geom = parse_geometry("torus:1,0;0,1");
    let p = [0.1, 0.1];
    let q = [0.9, 0.9];
    let mut d = 0.0;
    assert_eq!(unsafe { ss_distance(geom, p.as_ptr(), q.as_ptr(), &mut d) }, SsStatus::Ok);
    assert!((d - 0.2 * 2.0f64.sqrt()).abs() < 1e-14);
    unsafe { ss_geometry_free(geom) };
}

#[test]
fn ratio_of_the_unit_equilateral_triangle() {
    let geom = parse_geometry("plane");
    let h = 3.0f64.sqrt() / 2.0;
    let coords = [0.0, 0.0, 1.0, 0.0, 0.5, h];
    let mut config = ptr::null_mut();
    let status = unsafe { ss_config_new(geom, coords.as_ptr(), 3, &mut config) };
    assert_eq!(status, SsStatus::Ok);
    assert_eq!(unsafe { ss_config_terminal_count(config) }, 3);

    let mut mst = 0.0;
    assert_eq!(unsafe { ss_mst_weight(config, &mut mst) }, SsStatus::Ok);
    assert!((mst - 2.0).abs() < 1e-12);

    let mut smt = 0.0;
    assert_eq!(unsafe { ss_smt_upper_weight(config, 1, &mut smt) }, SsStatus::Ok);
    assert!((smt - 3.0f64.sqrt()).abs() < 1e-6);

    let mut r = 0.0;
    assert_eq!(
        unsafe { ss_ratio(config, 1, ptr::null_mut(), ptr::null_mut(), &mut r) },
        SsStatus::Ok
    );
    assert!((r - 0.8660254).abs() < 1e-6);

    unsafe { ss_config_free(config) };
    unsafe { ss_geometry_free(geom) };
}

#[test]
fn config_parse_accepts_the_point_file_format() {
    let text = CString::new("disk\n0,0\n0.5,0\n").unwrap();
    let mut config = ptr::null_mut();
    assert_eq!(unsafe { ss_config_parse(text.as_ptr(), &mut config) }, SsStatus::Ok);
    let mut mst = 0.0;
    assert_eq!(unsafe { ss_mst_weight(config, &mut mst) }, SsStatus::Ok);
    assert!((mst - 3.0f64.ln()).abs() < 1e-12);
    unsafe { ss_config_free(config) };
}

#[test]
fn curve_values_match_the_library() {
    let mut m = 0.0;
    assert_eq!(unsafe { ss_hyperbolic_m(100.0, &mut m) }, SsStatus::Ok);
    assert!(m > 0.7510 && m < 0.7511);
    let mut res = 0.0;
    assert_eq!(unsafe { ss_taylor_residual(0.1, &mut res) }, SsStatus::Ok);
    assert!(res.abs() < 1.3e-6);
}

#[test]
fn errors_set_codes_and_messages() {
    // Unknown geometry.
    let spec = CString::new("donut").unwrap();
    let mut geom = ptr::null_mut();
    assert_eq!(
        unsafe { ss_geometry_parse(spec.as_ptr(), &mut geom) },
        SsStatus::InvalidGeometry
    );
    let msg = ss_last_error_message();
    assert!(!msg.is_null());
    let text = unsafe { CStr::from_ptr(msg) }.to_str().unwrap().to_string();
    assert!(text.contains("donut"), "{text}");
    unsafe { ss_string_free(msg) };

    // Invalid point.
    let disk = parse_geometry("disk");
    let coords = [1.5, 0.0];
    let mut config = ptr::null_mut();
    assert_eq!(
        unsafe { ss_config_new(disk, coords.as_ptr(), 1, &mut config) },
        SsStatus::InvalidPoint
    );

    // Terminal count out of range for the Steiner bound.
    let many: Vec<f64> = (0..14).map(|i| i as f64).collect();
    let mut big = ptr::null_mut();
    assert_eq!(
        unsafe { ss_config_new(disk, many.as_ptr(), 7, &mut big) },
        SsStatus::InvalidPoint,
        "coordinates left the disk"
    );
    unsafe { ss_geometry_free(disk) };

    // Null pointers are rejected outright.
    assert_eq!(
        unsafe { ss_distance(ptr::null(), ptr::null(), ptr::null(), ptr::null_mut()) },
        SsStatus::NullPointer
    );
    assert_eq!(unsafe { ss_hyperbolic_m(1.0, ptr::null_mut()) }, SsStatus::NullPointer);

    // Bad curve argument.
    let mut out = 0.0;
    assert_eq!(unsafe { ss_hyperbolic_m(-1.0, &mut out) }, SsStatus::InvalidArgument);
}

#[test]
fn smt_rejects_more_than_six_terminals() {
    let geom = parse_geometry("plane");
    let coords: Vec<f64> = (0..7).flat_map(|i| [i as f64, (i * i % 5) as f64]).collect();
    let mut config = ptr::null_mut();
    assert_eq!(unsafe { ss_config_new(geom, coords.as_ptr(), 7, &mut config) }, SsStatus::Ok);
    let mut out = 0.0;
    assert_eq!(
        unsafe { ss_smt_upper_weight(config, 0, &mut out) },
        SsStatus::Unsupported
    );
    unsafe { ss_config_free(config) };
    unsafe { ss_geometry_free(geom) };
}

#[test]
fn generated_header_exists_and_names_the_api() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/steiner_surfaces.h");
    let text = std::fs::read_to_string(&header).expect("header generated by the build script");
    for symbol in [
        "ss_geometry_parse",
        "ss_config_new",
        "ss_distance",
        "ss_mst_weight",
        "ss_smt_upper_weight",
        "ss_ratio",
        "ss_hyperbolic_m",
        "ss_taylor_residual",
        "ss_last_error_message",
        "SsStatus",
        "SsGeometry",
        "SsConfig",
    ] {
        assert!(text.contains(symbol), "header is missing {symbol}");
    }
}
