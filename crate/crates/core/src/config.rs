//! A geometry together with its finite set of terminal points.

use crate::error::{Error, Result};
use crate::geometry::{GeometrySpec, SurfacePoint};

/// A surface plus an ordered list of terminals, all validated and stored
/// as canonical representatives.
///
/// Duplicate terminals are allowed but flagged: they contribute
/// zero-weight edges to spanning trees instead of failing.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    geom: GeometrySpec,
    terminals: Vec<SurfacePoint>,
    has_duplicates: bool,
}

impl Configuration {
    pub fn new(geom: GeometrySpec, points: Vec<SurfacePoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument(
                "a configuration needs at least one terminal".into(),
            ));
        }
        let mut terminals = Vec::with_capacity(points.len());
        for p in &points {
            terminals.push(geom.canonicalize(p)?);
        }
        let mut has_duplicates = false;
        'outer: for i in 0..terminals.len() {
            for j in 0..i {
                if terminals[i] == terminals[j] {
                    has_duplicates = true;
                    break 'outer;
                }
            }
        }
        Ok(Configuration { geom, terminals, has_duplicates })
    }

    pub fn geometry(&self) -> &GeometrySpec {
        &self.geom
    }

    pub fn terminals(&self) -> &[SurfacePoint] {
        &self.terminals
    }

    pub fn terminal_count(&self) -> usize {
        self.terminals.len()
    }

    pub fn has_duplicates(&self) -> bool {
        self.has_duplicates
    }

    /// Full matrix of pairwise geodesic distances.
    pub fn distance_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.terminals.len();
        let mut m = vec![vec![0.0; n]; n];
        for (i, p) in self.terminals.iter().enumerate() {
            for (j, q) in self.terminals.iter().enumerate().skip(i + 1) {
                let d = self.geom.distance_unchecked(p, q);
                m[i][j] = d;
                m[j][i] = d;
            }
        }
        m
    }

    /// Largest pairwise geodesic distance (0 for a single terminal).
    pub fn diameter(&self) -> f64 {
        let n = self.terminals.len();
        let mut best: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                best = best.max(
                    self.geom
                        .distance_unchecked(&self.terminals[i], &self.terminals[j]),
                );
            }
        }
        best
    }
}
