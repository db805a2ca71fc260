//! Cluster and component extraction from generations.
//!
//! A *cluster* overlays Moore adjacency on the lattice's cells regardless of
//! which neighborhood the dynamics use, so diagonal same-colored cells group
//! together even on a 4-neighborhood torus. Plain connected components under
//! the topology's own adjacency are also provided; the covering-rectangle
//! pipeline starts from those.

use serde::{Deserialize, Serialize};

use super::AnalysisError;
use crate::dynamics::{Color, Generation};
use crate::topology::{NeighborhoodKind, Topology};

/// Union-find with path halving and union by size.
struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        Self {
            parent: (0..len as u32).collect(),
            size: vec![1; len],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }
}

/// Clusters of one color: the connected components under Moore adjacency.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterReport {
    /// Each cluster as a sorted vertex list; clusters ordered by first cell.
    pub clusters: Vec<Vec<usize>>,
    /// Cardinality of the largest cluster, zero when the color is absent.
    pub largest_size: usize,
}

/// Connected components of `color` cells overlaying Moore adjacency on the
/// lattice, with the wrap semantics of `topology` itself.
pub fn moore_clusters(
    topology: &Topology,
    generation: &Generation,
    color: Color,
) -> Result<ClusterReport, AnalysisError> {
    let meta = topology.lattice_meta().ok_or(AnalysisError::NotALattice)?;
    check_size(topology, generation)?;
    let n = meta.side as i64;
    let mut uf = UnionFind::new(topology.vertex_count());
    for i in 0..n {
        for j in 0..n {
            let v = (i * n + j) as usize;
            if generation.get(v) != color {
                continue;
            }
            for &(di, dj) in NeighborhoodKind::Moore.offsets() {
                let (ni, nj) = if meta.wrap {
                    ((i + di).rem_euclid(n), (j + dj).rem_euclid(n))
                } else {
                    let (ni, nj) = (i + di, j + dj);
                    if ni < 0 || nj < 0 || ni >= n || nj >= n {
                        continue;
                    }
                    (ni, nj)
                };
                let u = (ni * n + nj) as usize;
                if generation.get(u) == color {
                    uf.union(v as u32, u as u32);
                }
            }
        }
    }
    let clusters = collect_components(&mut uf, topology.vertex_count(), |v| {
        generation.get(v) == color
    });
    let largest_size = clusters.iter().map(Vec::len).max().unwrap_or(0);
    Ok(ClusterReport {
        clusters,
        largest_size,
    })
}

/// Connected components of `color` cells under the topology's own adjacency.
pub fn color_components(
    topology: &Topology,
    generation: &Generation,
    color: Color,
) -> Result<Vec<Vec<usize>>, AnalysisError> {
    check_size(topology, generation)?;
    let mut uf = UnionFind::new(topology.vertex_count());
    for v in 0..topology.vertex_count() {
        if generation.get(v) != color {
            continue;
        }
        for &u in topology.neighbors(v) {
            if generation.get(u as usize) == color {
                uf.union(v as u32, u);
            }
        }
    }
    Ok(collect_components(&mut uf, topology.vertex_count(), |v| {
        generation.get(v) == color
    }))
}

fn check_size(topology: &Topology, generation: &Generation) -> Result<(), AnalysisError> {
    if generation.len() != topology.vertex_count() {
        return Err(crate::dynamics::DynamicsError::SizeMismatch {
            generation: generation.len(),
            topology: topology.vertex_count(),
        }
        .into());
    }
    Ok(())
}

fn collect_components(
    uf: &mut UnionFind,
    vertex_count: usize,
    keep: impl Fn(usize) -> bool,
) -> Vec<Vec<usize>> {
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
    for v in 0..vertex_count {
        if keep(v) {
            let root = uf.find(v as u32) as usize;
            by_root[root].push(v);
        }
    }
    // Iteration order already yields sorted members and first-cell order.
    by_root.retain(|c| !c.is_empty());
    by_root
}
