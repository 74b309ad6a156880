//! Combinatorial full Steiner topologies: trees on n labeled terminals of
//! degree 1 and n-2 internal vertices of degree 3.

use crate::error::{Error, Result};

/// Smallest and largest terminal counts with an enumerable catalog.
pub const MIN_TERMINALS: usize = 2;
pub const MAX_TERMINALS: usize = 6;

/// A full Steiner topology on `n` labeled terminals.
///
/// Vertices `0..n` are terminals, vertices `n..2n-2` are Steiner
/// vertices. Every terminal has degree 1 and every Steiner vertex degree
/// 3; for `n = 2` the topology is the bare edge with no Steiner vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerTopology {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SteinerTopology {
    pub fn terminal_count(&self) -> usize {
        self.n
    }

    pub fn steiner_count(&self) -> usize {
        self.n.saturating_sub(2)
    }

    pub fn vertex_count(&self) -> usize {
        self.n + self.steiner_count()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The three neighbor vertex ids of each Steiner vertex, indexed by
    /// `steiner_id = vertex_id - n`.
    pub fn steiner_neighbors(&self) -> Vec<[usize; 3]> {
        let mut neighbors = vec![Vec::with_capacity(3); self.steiner_count()];
        for &(u, v) in &self.edges {
            if u >= self.n {
                neighbors[u - self.n].push(v);
            }
            if v >= self.n {
                neighbors[v - self.n].push(u);
            }
        }
        neighbors
            .into_iter()
            .map(|v| {
                debug_assert_eq!(v.len(), 3);
                [v[0], v[1], v[2]]
            })
            .collect()
    }

    /// Edge list in the canonical labeling: lexicographically smallest
    /// over all permutations of the Steiner vertex labels. Lets distinct
    /// labelings of the same topology compare equal.
    pub fn canonical_edges(&self) -> Vec<(usize, usize)> {
        let s = self.steiner_count();
        let mut perm: Vec<usize> = (0..s).collect();
        let mut best: Option<Vec<(usize, usize)>> = None;
        permute(&mut perm, 0, &mut |p| {
            let mut edges: Vec<(usize, usize)> = self
                .edges
                .iter()
                .map(|&(u, v)| {
                    let mu = if u >= self.n { self.n + p[u - self.n] } else { u };
                    let mv = if v >= self.n { self.n + p[v - self.n] } else { v };
                    (mu.min(mv), mu.max(mv))
                })
                .collect();
            edges.sort_unstable();
            if best.as_ref().is_none_or(|b| edges < *b) {
                best = Some(edges);
            }
        });
        best.unwrap_or_default()
    }

    fn normalized(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        SteinerTopology { n, edges }
    }
}

fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// Expected number of full topologies: (2n-4)! / (2^(n-2) (n-2)!).
pub fn full_topology_count(n: usize) -> u64 {
    if n == 2 {
        return 1;
    }
    let mut num: u64 = 1;
    for k in 1..=(2 * n - 4) as u64 {
        num *= k;
    }
    let mut den: u64 = 1 << (n - 2);
    for k in 1..=(n - 2) as u64 {
        den *= k;
    }
    num / den
}

/// All pairwise distinct full Steiner topologies on `n` labeled
/// terminals, built by splitting an edge of each (n-1)-terminal topology
/// with a fresh Steiner vertex. Each topology is produced exactly once.
pub fn enumerate_topologies(n: usize) -> Result<Vec<SteinerTopology>> {
    if !(MIN_TERMINALS..=MAX_TERMINALS).contains(&n) {
        return Err(Error::TerminalCount {
            n,
            reason: format!("topology enumeration supports {MIN_TERMINALS}..={MAX_TERMINALS}"),
        });
    }
    Ok(build(n, n))
}

/// Topologies on terminals `0..k` with Steiner vertices labeled from
/// `offset` upward. Intermediate levels of the recursion share the final
/// level's Steiner labels, so splitting an edge never renumbers anything;
/// at the top level `k == offset` and the labels are exactly
/// `offset..2*offset - 2`.
fn build(offset: usize, k: usize) -> Vec<SteinerTopology> {
    if k == 2 {
        return vec![SteinerTopology::normalized(2, vec![(0, 1)])];
    }
    let smaller = build(offset, k - 1);
    let new_steiner = offset + (k - 3);
    let new_terminal = k - 1;
    let mut out = Vec::new();
    for topo in &smaller {
        for (i, &(u, v)) in topo.edges.iter().enumerate() {
            let mut edges: Vec<(usize, usize)> = topo
                .edges
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &e)| e)
                .collect();
            edges.push((u, new_steiner));
            edges.push((v, new_steiner));
            edges.push((new_terminal, new_steiner));
            out.push(SteinerTopology::normalized(k, edges));
        }
    }
    out
}
