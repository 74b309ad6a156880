//! C ABI over the steiner-surfaces library.
//!
//! Geometries and configurations are opaque handles created and freed
//! through this interface; every fallible call returns an [`SsStatus`]
//! code and leaves a human-readable message retrievable with
//! [`ss_last_error_message`]. The generated header lives at
//! `include/steiner_surfaces.h`.
//!
//! Point coordinates cross the boundary as flat `f64` buffers with
//! `ss_geometry_chart_dim` values per point (2 for the plane, disk,
//! torus and Klein bottle charts, 3 for unit-vector surfaces).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use steiner_surfaces::config::Configuration;
use steiner_surfaces::geometry::{GeometrySpec, SurfacePoint};
use steiner_surfaces::ratio::{hyperbolic_m, ratio, taylor_residual};
use steiner_surfaces::spanning::mst;
use steiner_surfaces::steiner::smt_upper;
use steiner_surfaces::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidGeometry = 4,
    InvalidPoint = 5,
    InvalidArgument = 6,
    Unsupported = 7,
    CapExceeded = 8,
    Internal = 9,
}

/// Opaque surface description handle.
pub struct SsGeometry {
    inner: GeometrySpec,
}

/// Opaque terminal configuration handle.
pub struct SsConfig {
    inner: Configuration,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let cstring = CString::new(message.replace('\0', " "))
        .unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(err: &Error) -> SsStatus {
    match err {
        Error::InvalidGeometry(_) => SsStatus::InvalidGeometry,
        Error::InvalidPoint { .. } => SsStatus::InvalidPoint,
        Error::Parse { .. } => SsStatus::ParseError,
        Error::OutsideInjectivityRadius(_) | Error::ChartRadiusTooLarge(_) => {
            SsStatus::InvalidArgument
        }
        Error::TerminalCount { .. } => SsStatus::Unsupported,
        Error::LiftCapExceeded(_) => SsStatus::CapExceeded,
        Error::InvalidArgument(_) => SsStatus::InvalidArgument,
        Error::Io(_) => SsStatus::Internal,
    }
}

fn fail(err: &Error) -> SsStatus {
    set_error(err.to_string());
    status_of(err)
}

/// Run a fallible body, translating errors and panics into status codes.
fn guarded(body: impl FnOnce() -> Result<SsStatus, Error>) -> SsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => {
            if status == SsStatus::Ok {
                clear_error();
            }
            status
        }
        Ok(Err(e)) => fail(&e),
        Err(_) => {
            set_error("internal panic".into());
            SsStatus::Internal
        }
    }
}

unsafe fn parse_utf8<'a>(ptr: *const c_char) -> Result<&'a str, SsStatus> {
    if ptr.is_null() {
        return Err(SsStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| SsStatus::InvalidUtf8)
}

/// Message of the most recent failure on this thread, or null. The
/// caller owns the returned string and releases it with
/// [`ss_string_free`].
#[no_mangle]
pub extern "C" fn ss_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Release a string obtained from this library.
///
/// # Safety
/// `s` must be null or a pointer previously returned by
/// [`ss_last_error_message`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ss_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a geometry description: `plane`, `disk`, `sphere`,
/// `torus:ax,ay;bx,by`, `klein:w,h` or `projective`.
///
/// # Safety
/// `spec` must be a valid NUL-terminated string and `out` a valid
/// location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn ss_geometry_parse(
    spec: *const c_char,
    out: *mut *mut SsGeometry,
) -> SsStatus {
    if out.is_null() {
        return SsStatus::NullPointer;
    }
    let text = match parse_utf8(spec) {
        Ok(t) => t,
        Err(code) => return code,
    };
    guarded(|| {
        let geom: GeometrySpec = text.parse()?;
        *out = Box::into_raw(Box::new(SsGeometry { inner: geom }));
        Ok(SsStatus::Ok)
    })
}

/// Number of chart coordinates per point of this geometry (2 or 3).
///
/// # Safety
/// `geometry` must be a live handle from [`ss_geometry_parse`].
#[no_mangle]
pub unsafe extern "C" fn ss_geometry_chart_dim(geometry: *const SsGeometry) -> usize {
    if geometry.is_null() {
        return 0;
    }
    (*geometry).inner.chart_dim()
}

/// Release a geometry handle (null is a no-op).
///
/// # Safety
/// `geometry` must be null or a live handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ss_geometry_free(geometry: *mut SsGeometry) {
    if !geometry.is_null() {
        drop(Box::from_raw(geometry));
    }
}

unsafe fn read_point(geom: &GeometrySpec, coords: *const f64) -> SurfacePoint {
    if geom.chart_dim() == 2 {
        SurfacePoint::xy(*coords, *coords.add(1))
    } else {
        SurfacePoint::xyz(*coords, *coords.add(1), *coords.add(2))
    }
}

/// Geodesic distance between two points given as chart coordinate
/// buffers of length `ss_geometry_chart_dim(geometry)`.
///
/// # Safety
/// All pointers must be valid; `p` and `q` must hold at least the chart
/// dimension of `geometry` in doubles.
#[no_mangle]
pub unsafe extern "C" fn ss_distance(
    geometry: *const SsGeometry,
    p: *const f64,
    q: *const f64,
    out: *mut f64,
) -> SsStatus {
    if geometry.is_null() || p.is_null() || q.is_null() || out.is_null() {
        return SsStatus::NullPointer;
    }
    let geom = &(*geometry).inner;
    let a = read_point(geom, p);
    let b = read_point(geom, q);
    guarded(|| {
        *out = geom.distance(&a, &b)?;
        Ok(SsStatus::Ok)
    })
}

/// Build a configuration from a flat coordinate buffer
/// (`n_points * chart_dim` doubles, point by point).
///
/// # Safety
/// `geometry` must be live, `coords` must hold the full buffer, `out`
/// must be a valid location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn ss_config_new(
    geometry: *const SsGeometry,
    coords: *const f64,
    n_points: usize,
    out: *mut *mut SsConfig,
) -> SsStatus {
    if geometry.is_null() || coords.is_null() || out.is_null() {
        return SsStatus::NullPointer;
    }
    let geom = (*geometry).inner.clone();
    let dim = geom.chart_dim();
    let points: Vec<SurfacePoint> =
        (0..n_points).map(|i| read_point(&geom, coords.add(i * dim))).collect();
    guarded(|| {
        let config = Configuration::new(geom, points)?;
        *out = Box::into_raw(Box::new(SsConfig { inner: config }));
        Ok(SsStatus::Ok)
    })
}

/// Parse the text point-file format: a geometry line, then one point per
/// line as comma-separated chart coordinates.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid
/// location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn ss_config_parse(text: *const c_char, out: *mut *mut SsConfig) -> SsStatus {
    if out.is_null() {
        return SsStatus::NullPointer;
    }
    let text = match parse_utf8(text) {
        Ok(t) => t,
        Err(code) => return code,
    };
    guarded(|| {
        let (config, _notices) = steiner_surfaces::pointfile::parse_config(text)?;
        *out = Box::into_raw(Box::new(SsConfig { inner: config }));
        Ok(SsStatus::Ok)
    })
}

/// Number of terminals of a configuration.
///
/// # Safety
/// `config` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ss_config_terminal_count(config: *const SsConfig) -> usize {
    if config.is_null() {
        return 0;
    }
    (*config).inner.terminal_count()
}

/// Release a configuration handle (null is a no-op).
///
/// # Safety
/// `config` must be null or a live handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ss_config_free(config: *mut SsConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Minimal spanning tree weight of the configuration.
///
/// # Safety
/// `config` must be live and `out` a valid double location.
#[no_mangle]
pub unsafe extern "C" fn ss_mst_weight(config: *const SsConfig, out: *mut f64) -> SsStatus {
    if config.is_null() || out.is_null() {
        return SsStatus::NullPointer;
    }
    let config = &(*config).inner;
    guarded(|| {
        *out = mst(config).weight();
        Ok(SsStatus::Ok)
    })
}

/// Certified Steiner tree upper bound of the configuration (at most 6
/// terminals). Deterministic given the seed.
///
/// # Safety
/// `config` must be live and `out` a valid double location.
#[no_mangle]
pub unsafe extern "C" fn ss_smt_upper_weight(
    config: *const SsConfig,
    seed: u64,
    out: *mut f64,
) -> SsStatus {
    if config.is_null() || out.is_null() {
        return SsStatus::NullPointer;
    }
    let config = &(*config).inner;
    guarded(|| {
        *out = smt_upper(config, seed)?.tree.weight();
        Ok(SsStatus::Ok)
    })
}

/// Steiner ratio data of the configuration (2..=6 terminals): spanning
/// weight, Steiner upper bound and their quotient. Any output pointer
/// may be null to skip that value.
///
/// # Safety
/// `config` must be live; non-null outputs must be valid double
/// locations.
#[no_mangle]
pub unsafe extern "C" fn ss_ratio(
    config: *const SsConfig,
    seed: u64,
    mst_out: *mut f64,
    smt_out: *mut f64,
    ratio_out: *mut f64,
) -> SsStatus {
    if config.is_null() {
        return SsStatus::NullPointer;
    }
    let config = &(*config).inner;
    guarded(|| {
        let estimate = ratio(config, seed)?;
        if !mst_out.is_null() {
            *mst_out = estimate.mst_weight;
        }
        if !smt_out.is_null() {
            *smt_out = estimate.smt_weight;
        }
        if !ratio_out.is_null() {
            *ratio_out = estimate.ratio;
        }
        Ok(SsStatus::Ok)
    })
}

/// Ratio curve value `m(r)` of the regular hyperbolic triangle with
/// circumradius `r > 0`.
///
/// # Safety
/// `out` must be a valid double location.
#[no_mangle]
pub unsafe extern "C" fn ss_hyperbolic_m(r: f64, out: *mut f64) -> SsStatus {
    if out.is_null() {
        return SsStatus::NullPointer;
    }
    guarded(|| {
        *out = hyperbolic_m(r)?;
        Ok(SsStatus::Ok)
    })
}

/// Difference between `m(r)` and its second-order expansion at zero, for
/// `0 < r <= 1/2`.
///
/// # Safety
/// `out` must be a valid double location.
#[no_mangle]
pub unsafe extern "C" fn ss_taylor_residual(r: f64, out: *mut f64) -> SsStatus {
    if out.is_null() {
        return SsStatus::NullPointer;
    }
    guarded(|| {
        *out = taylor_residual(r)?;
        Ok(SsStatus::Ok)
    })
}
