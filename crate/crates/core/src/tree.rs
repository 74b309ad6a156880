//! Embedded trees: terminals by index, extra (Steiner) points by
//! coordinates, edges weighted by geodesic length.

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::geometry::SurfacePoint;

/// A vertex of an embedded network: either one of the configuration's
/// terminals (by index) or an added Steiner point (by coordinates).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TreeVertex {
    Terminal(usize),
    Steiner(SurfacePoint),
}

/// A connected acyclic network embedded in a surface, with its total
/// geodesic length.
///
/// Edges are stored with `u < v` and sorted; the weight is the sum of
/// geodesic edge lengths accumulated in that fixed order, so equal trees
/// always report bitwise equal weights.
#[derive(Clone, Debug)]
pub struct NetworkTree {
    vertices: Vec<TreeVertex>,
    edges: Vec<(usize, usize)>,
    weight: f64,
}

impl NetworkTree {
    /// Build and validate a tree over `config`. Requires exactly
    /// `|V| - 1` edges forming a connected graph; recomputes the weight
    /// from the geometry.
    pub fn new(
        config: &Configuration,
        vertices: Vec<TreeVertex>,
        mut edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let n = vertices.len();
        if n == 0 {
            return Err(Error::InvalidArgument("a tree needs at least one vertex".into()));
        }
        for v in &vertices {
            match v {
                TreeVertex::Terminal(i) if *i >= config.terminal_count() => {
                    return Err(Error::InvalidArgument(format!(
                        "terminal index {i} out of range"
                    )));
                }
                TreeVertex::Steiner(p) => {
                    config.geometry().check_point(p)?;
                }
                _ => {}
            }
        }
        for e in edges.iter_mut() {
            if e.0 == e.1 || e.0 >= n || e.1 >= n {
                return Err(Error::InvalidArgument(format!("bad edge {e:?}")));
            }
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        if edges.len() + 1 != n {
            return Err(Error::InvalidArgument(format!(
                "{} edges on {} vertices is not a tree",
                edges.len(),
                n
            )));
        }
        if !connected(n, &edges) {
            return Err(Error::InvalidArgument("edge set is not connected".into()));
        }
        let mut tree = NetworkTree { vertices, edges, weight: 0.0 };
        tree.weight = tree.recompute_weight(config);
        Ok(tree)
    }

    /// The one-vertex tree on a single terminal; weight zero.
    pub fn trivial(config: &Configuration) -> Result<Self> {
        NetworkTree::new(config, vec![TreeVertex::Terminal(0)], vec![])
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn vertices(&self) -> &[TreeVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn steiner_points(&self) -> impl Iterator<Item = &SurfacePoint> {
        self.vertices.iter().filter_map(|v| match v {
            TreeVertex::Steiner(p) => Some(p),
            TreeVertex::Terminal(_) => None,
        })
    }

    /// Position of a vertex, resolving terminal indices through the
    /// configuration.
    pub fn position(&self, config: &Configuration, vertex: usize) -> SurfacePoint {
        match self.vertices[vertex] {
            TreeVertex::Terminal(i) => config.terminals()[i],
            TreeVertex::Steiner(p) => p,
        }
    }

    /// Sum of geodesic edge lengths in canonical (sorted-edge) order.
    pub fn recompute_weight(&self, config: &Configuration) -> f64 {
        let geom = config.geometry();
        let mut total = 0.0;
        for &(u, v) in &self.edges {
            total += geom.distance_unchecked(&self.position(config, u), &self.position(config, v));
        }
        total
    }

    /// Contract every edge not longer than `threshold`, merging the
    /// endpoint that is a Steiner vertex into the other endpoint.
    /// Degenerate optimizer output reduces to a clean tree this way.
    pub(crate) fn contract_short_edges(
        &self,
        config: &Configuration,
        threshold: f64,
    ) -> Result<NetworkTree> {
        let geom = config.geometry();
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, v) in &self.edges {
            let d = geom.distance_unchecked(&self.position(config, u), &self.position(config, v));
            if d <= threshold {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru == rv {
                    continue;
                }
                // Keep terminals as class representatives when possible.
                let keep_u = matches!(self.vertices[ru], TreeVertex::Terminal(_));
                if keep_u {
                    parent[rv] = ru;
                } else {
                    parent[ru] = rv;
                }
            }
        }
        let mut index = vec![usize::MAX; n];
        let mut vertices = Vec::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            if index[r] == usize::MAX {
                index[r] = vertices.len();
                vertices.push(self.vertices[r]);
            }
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                edges.push((index[ru], index[rv]));
            }
        }
        NetworkTree::new(config, vertices, edges)
    }
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::GeometrySpec;

    fn line_config() -> Configuration {
        Configuration::new(
            GeometrySpec::EuclideanPlane,
            vec![
                SurfacePoint::xy(0.0, 0.0),
                SurfacePoint::xy(1.0, 0.0),
                SurfacePoint::xy(2.0, 0.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn weight_matches_edge_sum() {
        let config = line_config();
        let tree = NetworkTree::new(
            &config,
            vec![TreeVertex::Terminal(0), TreeVertex::Terminal(1), TreeVertex::Terminal(2)],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        assert_eq!(tree.weight(), 2.0);
        assert!((tree.weight() - tree.recompute_weight(&config)).abs() < 1e-12);
    }

    #[test]
    fn rejects_cycles_and_disconnection() {
        let config = line_config();
        let verts = vec![
            TreeVertex::Terminal(0),
            TreeVertex::Terminal(1),
            TreeVertex::Terminal(2),
        ];
        assert!(NetworkTree::new(&config, verts.clone(), vec![(0, 1), (1, 2), (0, 2)]).is_err());
        assert!(NetworkTree::new(&config, verts, vec![(0, 1)]).is_err());
    }

    #[test]
    fn contraction_removes_degenerate_steiner_vertices() {
        let config = line_config();
        let tree = NetworkTree::new(
            &config,
            vec![
                TreeVertex::Terminal(0),
                TreeVertex::Terminal(1),
                TreeVertex::Terminal(2),
                TreeVertex::Steiner(SurfacePoint::xy(1.0 + 1e-12, 0.0)),
            ],
            vec![(0, 3), (1, 3), (2, 3)],
        )
        .unwrap();
        let contracted = tree.contract_short_edges(&config, 1e-9).unwrap();
        assert_eq!(contracted.vertices().len(), 3);
        assert!((contracted.weight() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn single_terminal_tree_is_empty() {
        let config =
            Configuration::new(GeometrySpec::EuclideanPlane, vec![SurfacePoint::xy(5.0, 5.0)])
                .unwrap();
        let tree = NetworkTree::trivial(&config).unwrap();
        assert_eq!(tree.weight(), 0.0);
        assert!(tree.edges().is_empty());
    }
}
