//! Graphs the dynamics run on: square lattices (grid or torus, 4- or
//! 8-neighborhoods), cycles, and arbitrary undirected graphs from edge lists.
//!
//! A [`Topology`] is immutable after construction and freely shareable across
//! threads. Lattice cells map to vertex indices row-major: `(i, j) -> i*n + j`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ParseError;

/// Lattice adjacency kind: 4 orthogonal neighbors or all 8 surrounding cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NeighborhoodKind {
    Neumann,
    Moore,
}

impl NeighborhoodKind {
    pub fn offsets(self) -> &'static [(i64, i64)] {
        match self {
            NeighborhoodKind::Neumann => &[(-1, 0), (0, -1), (0, 1), (1, 0)],
            NeighborhoodKind::Moore => &[
                (-1, -1),
                (-1, 0),
                (-1, 1),
                (0, -1),
                (0, 1),
                (1, -1),
                (1, 0),
                (1, 1),
            ],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NeighborhoodKind::Neumann => "neumann",
            NeighborhoodKind::Moore => "moore",
        }
    }
}

impl std::fmt::Display for NeighborhoodKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Lattice structure carried by tori and grids, absent for general graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeMeta {
    /// Side length n of the n-by-n lattice.
    pub side: usize,
    pub kind: NeighborhoodKind,
    /// true for a torus (wrap-around edges), false for a bordered grid.
    pub wrap: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("lattice side must be at least {min} (got {side})")]
    SideTooSmall { side: usize, min: usize },
    #[error("cycle length must be at least 3 (got {0})")]
    CycleTooShort(usize),
    #[error("vertex count must be positive")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("no path between vertices {from} and {to}")]
    Disconnected { from: usize, to: usize },
}

/// An immutable undirected graph in compressed sparse row form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    vertex_count: usize,
    offsets: Vec<u32>,
    neighbors: Vec<u32>,
    lattice: Option<LatticeMeta>,
}

impl Topology {
    /// Builds the n-by-n grid (`wrap = false`) or torus (`wrap = true`) with
    /// the given neighborhood kind.
    ///
    /// Wrapping requires `n >= 3`; smaller tori would duplicate edges.
    pub fn lattice(n: usize, kind: NeighborhoodKind, wrap: bool) -> Result<Self, TopologyError> {
        let min = if wrap { 3 } else { 1 };
        if n < min {
            return Err(TopologyError::SideTooSmall { side: n, min });
        }
        let vertex_count = n * n;
        let mut adjacency: Vec<Vec<u32>> = vec![Vec::with_capacity(8); vertex_count];
        for i in 0..n as i64 {
            for j in 0..n as i64 {
                let v = (i * n as i64 + j) as usize;
                for &(di, dj) in kind.offsets() {
                    let (ni, nj) = if wrap {
                        (
                            (i + di).rem_euclid(n as i64),
                            (j + dj).rem_euclid(n as i64),
                        )
                    } else {
                        let (ni, nj) = (i + di, j + dj);
                        if ni < 0 || nj < 0 || ni >= n as i64 || nj >= n as i64 {
                            continue;
                        }
                        (ni, nj)
                    };
                    adjacency[v].push((ni * n as i64 + nj) as u32);
                }
                adjacency[v].sort_unstable();
            }
        }
        Ok(Self::from_adjacency(
            adjacency,
            Some(LatticeMeta { side: n, kind, wrap }),
        ))
    }

    /// Builds the cycle on n >= 3 vertices; vertex i is adjacent to (i±1) mod n.
    pub fn cycle(n: usize) -> Result<Self, TopologyError> {
        if n < 3 {
            return Err(TopologyError::CycleTooShort(n));
        }
        let adjacency = (0..n)
            .map(|i| {
                let mut nb = vec![((i + n - 1) % n) as u32, ((i + 1) % n) as u32];
                nb.sort_unstable();
                nb
            })
            .collect();
        Ok(Self::from_adjacency(adjacency, None))
    }

    /// Builds a general graph from an undirected edge list.
    ///
    /// Rejects self-loops, duplicate edges, and out-of-range endpoints.
    /// Isolated vertices are allowed.
    pub fn from_edges(
        vertex_count: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, TopologyError> {
        if vertex_count == 0 {
            return Err(TopologyError::EmptyGraph);
        }
        let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(TopologyError::VertexOutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(TopologyError::SelfLoop(u));
            }
            if adjacency[u].contains(&(v as u32)) {
                return Err(TopologyError::DuplicateEdge { u, v });
            }
            adjacency[u].push(v as u32);
            adjacency[v].push(u as u32);
        }
        for nb in &mut adjacency {
            nb.sort_unstable();
        }
        Ok(Self::from_adjacency(adjacency, None))
    }

    fn from_adjacency(adjacency: Vec<Vec<u32>>, lattice: Option<LatticeMeta>) -> Self {
        let vertex_count = adjacency.len();
        let mut offsets = Vec::with_capacity(vertex_count + 1);
        let mut neighbors = Vec::new();
        offsets.push(0u32);
        for nb in &adjacency {
            neighbors.extend_from_slice(nb);
            offsets.push(neighbors.len() as u32);
        }
        Self {
            vertex_count,
            offsets,
            neighbors,
            lattice,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        (self.offsets[v + 1] - self.offsets[v]) as usize
    }

    pub fn lattice_meta(&self) -> Option<LatticeMeta> {
        self.lattice
    }

    /// Row-major cell index of `(i, j)` on a lattice of side n.
    pub fn cell_index(&self, i: usize, j: usize) -> usize {
        let n = self.lattice.expect("cell_index on non-lattice").side;
        debug_assert!(i < n && j < n);
        i * n + j
    }

    /// Inverse of [`Self::cell_index`].
    pub fn cell_coords(&self, v: usize) -> (usize, usize) {
        let n = self.lattice.expect("cell_coords on non-lattice").side;
        (v / n, v % n)
    }

    /// Shifted shortest-path distance: edge count of a shortest u-v path
    /// minus one, with `distance(v, v) = 0`. Adjacent vertices are at
    /// distance zero.
    ///
    /// The shift makes rectangle separation checks read as "distance at
    /// least two", which is how the covering-rectangle machinery uses it.
    pub fn vertex_distance(&self, u: usize, v: usize) -> Result<usize, TopologyError> {
        for w in [u, v] {
            if w >= self.vertex_count {
                return Err(TopologyError::VertexOutOfRange {
                    vertex: w,
                    vertex_count: self.vertex_count,
                });
            }
        }
        if u == v {
            return Ok(0);
        }
        // Plain BFS; lattices could use arithmetic but this covers every graph.
        let mut dist = vec![u32::MAX; self.vertex_count];
        let mut queue = VecDeque::new();
        dist[u] = 0;
        queue.push_back(u as u32);
        while let Some(x) = queue.pop_front() {
            let d = dist[x as usize];
            for &y in self.neighbors(x as usize) {
                if dist[y as usize] == u32::MAX {
                    if y as usize == v {
                        return Ok(d as usize); // (d + 1) edges, shifted by one
                    }
                    dist[y as usize] = d + 1;
                    queue.push_back(y);
                }
            }
        }
        Err(TopologyError::Disconnected { from: u, to: v })
    }

    /// Parses the edge-list text format: first line `V E`, then `E` lines
    /// `u v` of 0-based endpoints.
    pub fn parse_edge_list(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| ParseError::at_line(1, "missing `V E` header line"))?;
        let mut parts = header.split_whitespace();
        let v: usize = parse_field(parts.next(), 1, "vertex count")?;
        let e: usize = parse_field(parts.next(), 1, "edge count")?;
        if parts.next().is_some() {
            return Err(ParseError::at_line(1, "expected exactly `V E` on the header line"));
        }
        let mut edges = Vec::with_capacity(e);
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.trim().is_empty() && edges.len() == e {
                continue; // tolerate a trailing blank line
            }
            let mut parts = line.split_whitespace();
            let u: usize = parse_field(parts.next(), lineno, "edge endpoint")?;
            let w: usize = parse_field(parts.next(), lineno, "edge endpoint")?;
            if parts.next().is_some() {
                return Err(ParseError::at_line(lineno, "expected exactly `u v`"));
            }
            edges.push((u, w));
            if edges.len() > e {
                return Err(ParseError::at_line(lineno, "more edges than declared"));
            }
        }
        if edges.len() != e {
            return Err(ParseError::new(format!(
                "declared {e} edges but found {}",
                edges.len()
            )));
        }
        Self::from_edges(v, &edges).map_err(|err| ParseError::new(err.to_string()))
    }

    /// Writes the edge-list text format (see [`Self::parse_edge_list`]).
    pub fn to_edge_list_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.vertex_count, self.edge_count());
        for u in 0..self.vertex_count {
            for &v in self.neighbors(u) {
                if u < v as usize {
                    let _ = writeln!(out, "{u} {v}");
                }
            }
        }
        out
    }
}

fn parse_field<T: std::str::FromStr>(
    field: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, ParseError> {
    let raw = field.ok_or_else(|| ParseError::at_line(line, format!("missing {what}")))?;
    raw.parse()
        .map_err(|_| ParseError::at_line(line, format!("invalid {what} `{raw}`")))
}
