//! Minimal spanning trees on the complete geodesic-distance graph of a
//! configuration, plus an exhaustive oracle for small instances.

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::tree::{NetworkTree, TreeVertex};

/// Largest terminal count accepted by [`mst_brute`]; there are n^(n-2)
/// labeled spanning trees to enumerate.
pub const BRUTE_FORCE_LIMIT: usize = 8;

/// Minimal spanning tree of the terminals under geodesic distance.
///
/// Greedy vertex-growing construction over the dense complete graph.
/// Deterministic under ties: vertices are scanned in index order and a
/// connecting edge is only replaced by a strictly shorter one, so the
/// lowest-index edge wins. A single terminal yields the empty tree of
/// weight zero.
pub fn mst(config: &Configuration) -> NetworkTree {
    let n = config.terminal_count();
    let vertices: Vec<TreeVertex> = (0..n).map(TreeVertex::Terminal).collect();
    if n == 1 {
        return NetworkTree::new(config, vertices, vec![]).expect("single vertex tree");
    }
    let dist = config.distance_matrix();
    let mut in_tree = vec![false; n];
    let mut key = vec![f64::INFINITY; n];
    let mut parent = vec![usize::MAX; n];
    in_tree[0] = true;
    for v in 1..n {
        key[v] = dist[0][v];
        parent[v] = 0;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let mut pick = usize::MAX;
        let mut best = f64::INFINITY;
        for v in 0..n {
            if !in_tree[v] && key[v] < best {
                best = key[v];
                pick = v;
            }
        }
        in_tree[pick] = true;
        edges.push((parent[pick], pick));
        for v in 0..n {
            if !in_tree[v] && dist[pick][v] < key[v] {
                key[v] = dist[pick][v];
                parent[v] = pick;
            }
        }
    }
    NetworkTree::new(config, vertices, edges).expect("spanning construction yields a tree")
}

/// Exhaustive minimum over all labeled spanning trees, for cross-checking
/// [`mst`]. Ties resolve to the lexicographically smallest edge list.
pub fn mst_brute(config: &Configuration) -> Result<NetworkTree> {
    let n = config.terminal_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TerminalCount {
            n,
            reason: format!("brute-force enumeration is capped at {BRUTE_FORCE_LIMIT}"),
        });
    }
    let vertices: Vec<TreeVertex> = (0..n).map(TreeVertex::Terminal).collect();
    if n == 1 {
        return NetworkTree::new(config, vertices, vec![]);
    }
    if n == 2 {
        return NetworkTree::new(config, vertices, vec![(0, 1)]);
    }
    let dist = config.distance_matrix();
    let mut best: Option<(f64, Vec<(usize, usize)>)> = None;
    let mut sequence = vec![0usize; n - 2];
    loop {
        let mut edges = decode_pruefer(&sequence, n);
        edges.sort_unstable();
        // Same accumulation order as NetworkTree so that equal trees give
        // bitwise equal weights.
        let weight: f64 = edges.iter().map(|&(u, v)| dist[u][v]).sum();
        let better = match &best {
            None => true,
            Some((w, e)) => weight < *w || (weight == *w && edges < *e),
        };
        if better {
            best = Some((weight, edges));
        }
        // Advance the base-n counter.
        let mut i = 0;
        loop {
            if i == sequence.len() {
                let (_, edges) = best.unwrap();
                return NetworkTree::new(config, vertices, edges);
            }
            sequence[i] += 1;
            if sequence[i] < n {
                break;
            }
            sequence[i] = 0;
            i += 1;
        }
    }
}

/// Decode a Pruefer sequence over `0..n` into the edge list of the
/// corresponding labeled tree.
fn decode_pruefer(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut used = vec![false; n];
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1 && !used[v]).unwrap();
        used[leaf] = true;
        degree[s] -= 1;
        edges.push((leaf.min(s), leaf.max(s)));
    }
    let mut last = (0..n).filter(|&v| degree[v] == 1 && !used[v]);
    let u = last.next().unwrap();
    let v = last.next().unwrap();
    edges.push((u.min(v), u.max(v)));
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{GeometrySpec, SurfacePoint};

    fn plane_config(points: &[(f64, f64)]) -> Configuration {
        Configuration::new(
            GeometrySpec::EuclideanPlane,
            points.iter().map(|&(x, y)| SurfacePoint::xy(x, y)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn equilateral_triangle_weight_two() {
        let h = 3.0f64.sqrt() / 2.0;
        let config = plane_config(&[(0.0, 0.0), (1.0, 0.0), (0.5, h)]);
        let tree = mst(&config);
        assert!((tree.weight() - 2.0).abs() < 1e-12, "got {}", tree.weight());
    }

    #[test]
    fn two_points_single_edge() {
        let config = plane_config(&[(0.0, 0.0), (0.0, 2.5)]);
        let tree = mst(&config);
        assert_eq!(tree.weight(), 2.5);
        assert_eq!(tree.edges(), &[(0, 1)]);
    }

    #[test]
    fn collinear_chain() {
        let config = plane_config(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        let tree = mst_brute(&config).unwrap();
        assert_eq!(tree.weight(), 2.0);
        assert_eq!(tree.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn unit_square_brute_weight_three() {
        let config = plane_config(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let tree = mst_brute(&config).unwrap();
        assert_eq!(tree.weight(), 3.0);
    }

    #[test]
    fn brute_force_cap() {
        let points: Vec<(f64, f64)> = (0..9).map(|i| (i as f64, (i * i) as f64)).collect();
        let config = plane_config(&points);
        assert!(matches!(mst_brute(&config), Err(Error::TerminalCount { .. })));
    }

    #[test]
    fn duplicate_terminals_contribute_zero_edges() {
        let config = plane_config(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        assert!(config.has_duplicates());
        let tree = mst(&config);
        assert_eq!(tree.weight(), 1.0);
    }

    #[test]
    fn single_terminal_empty_tree() {
        let config = plane_config(&[(3.0, 4.0)]);
        assert_eq!(mst(&config).weight(), 0.0);
        assert_eq!(mst_brute(&config).unwrap().weight(), 0.0);
    }
}
