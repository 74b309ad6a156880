//! The text format for configurations: a geometry line followed by one
//! point per line as comma-separated decimals in chart coordinates.
//!
//! ```text
//! plane
//! 0,0
//! 1,0
//! 0.5,0.8660254
//! ```
//!
//! Geometry tags follow the grammar of
//! [`GeometrySpec`](crate::geometry::GeometrySpec): `plane`, `disk`,
//! `sphere`, `torus:ax,ay;bx,by`, `klein:w,h`, `projective`.

use std::path::Path;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::geometry::{fmt_f64, GeometrySpec, SurfacePoint};

/// A non-fatal remark produced while loading (currently: quotient points
/// that were reduced into the fundamental domain).
#[derive(Clone, Debug, PartialEq)]
pub struct LoadNotice {
    pub line: usize,
    pub message: String,
}

/// Parse a configuration from point-file text.
pub fn parse_config(text: &str) -> Result<(Configuration, Vec<LoadNotice>)> {
    let mut lines = text.lines().enumerate();
    let (geom_line_no, geom_line) = loop {
        match lines.next() {
            Some((i, l)) if !l.trim().is_empty() => break (i + 1, l.trim()),
            Some(_) => continue,
            None => {
                return Err(Error::Parse {
                    line: 1,
                    column: 1,
                    message: "empty file: expected a geometry line".into(),
                })
            }
        }
    };
    let geom: GeometrySpec = geom_line.parse().map_err(|e| Error::Parse {
        line: geom_line_no,
        column: 1,
        message: format!("{e}"),
    })?;

    let mut raw_points = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        raw_points.push((line_no, parse_point(line, line_no, &geom)?));
    }
    if raw_points.is_empty() {
        return Err(Error::Parse {
            line: geom_line_no,
            column: 1,
            message: "no points after the geometry line".into(),
        });
    }

    let mut notices = Vec::new();
    let mut points = Vec::with_capacity(raw_points.len());
    for (line_no, p) in raw_points {
        let canonical = geom.canonicalize(&p).map_err(|e| Error::Parse {
            line: line_no,
            column: 1,
            message: format!("{e}"),
        })?;
        if canonical != p {
            notices.push(LoadNotice {
                line: line_no,
                message: format!(
                    "point reduced to canonical representative {}",
                    coords_text(&canonical)
                ),
            });
        }
        points.push(canonical);
    }
    let config = Configuration::new(geom, points).map_err(|e| Error::Parse {
        line: geom_line_no,
        column: 1,
        message: format!("{e}"),
    })?;
    if config.has_duplicates() {
        notices.push(LoadNotice { line: geom_line_no, message: "duplicate terminals".into() });
    }
    Ok((config, notices))
}

fn parse_point(line: &str, line_no: usize, geom: &GeometrySpec) -> Result<SurfacePoint> {
    let mut values = Vec::new();
    let mut column = 1usize;
    for field in line.split(',') {
        let trimmed = field.trim();
        let value: f64 = trimmed.parse().map_err(|_| Error::Parse {
            line: line_no,
            column: column + leading_ws(field),
            message: format!("malformed decimal '{trimmed}'"),
        })?;
        values.push(value);
        column += field.len() + 1;
    }
    let dim = geom.chart_dim();
    if values.len() != dim {
        return Err(Error::Parse {
            line: line_no,
            column: 1,
            message: format!(
                "{} expects {dim} coordinates per point, found {}",
                geom.tag(),
                values.len()
            ),
        });
    }
    let point = if dim == 2 {
        SurfacePoint::xy(values[0], values[1])
    } else {
        SurfacePoint::xyz(values[0], values[1], values[2])
    };
    geom.check_point(&point).map_err(|e| Error::Parse {
        line: line_no,
        column: 1,
        message: format!("{e}"),
    })?;
    Ok(point)
}

fn leading_ws(s: &str) -> usize {
    s.len() - s.trim_start().len()
}

/// Load a configuration from a point file on disk.
pub fn load_config(path: impl AsRef<Path>) -> Result<(Configuration, Vec<LoadNotice>)> {
    let text = std::fs::read_to_string(path)?;
    parse_config(&text)
}

fn coords_text(p: &SurfacePoint) -> String {
    p.coords().iter().map(|c| fmt_f64(*c)).collect::<Vec<_>>().join(",")
}

/// Render a configuration back into point-file text. Round-trips
/// exactly: numbers carry 17 significant digits.
pub fn format_config(config: &Configuration) -> String {
    let mut out = String::new();
    out.push_str(&config.geometry().to_string());
    out.push('\n');
    for p in config.terminals() {
        out.push_str(&coords_text(p));
        out.push('\n');
    }
    out
}
