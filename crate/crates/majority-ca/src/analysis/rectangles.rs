//! Axis-aligned covering rectangles on lattices and the iterative merging
//! procedure that leaves every pair of rectangles at distance at least two.
//!
//! Rectangles may wrap around a torus. The "smallest covering rectangle" of
//! a cell set is not unique in general; this module canonicalizes by minimum
//! area first, then the lexicographically smallest `(anchor_i, anchor_j)`,
//! so results are reproducible across implementations.

use serde::{Deserialize, Serialize};

use super::clusters::color_components;
use super::AnalysisError;
use crate::dynamics::{Color, Generation};
use crate::topology::{LatticeMeta, NeighborhoodKind, Topology};

/// A possibly wrapping box of `rows x cols` cells anchored at
/// `(anchor_i, anchor_j)`: the cells
/// `((anchor_i + a) mod n, (anchor_j + b) mod n)` for `a < rows`, `b < cols`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rectangle {
    pub anchor_i: usize,
    pub anchor_j: usize,
    pub rows: usize,
    pub cols: usize,
}

impl Rectangle {
    pub fn area(&self) -> usize {
        self.rows * self.cols
    }

    /// Covers the entire side-n torus.
    pub fn is_whole_lattice(&self, n: usize) -> bool {
        self.rows == n && self.cols == n
    }

    pub fn contains(&self, n: usize, i: usize, j: usize) -> bool {
        in_interval(n, self.anchor_i, self.rows, i) && in_interval(n, self.anchor_j, self.cols, j)
    }

    /// All covered cells as vertex indices on a side-n lattice.
    pub fn cells(&self, n: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.area());
        for a in 0..self.rows {
            for b in 0..self.cols {
                out.push(((self.anchor_i + a) % n) * n + (self.anchor_j + b) % n);
            }
        }
        out
    }

    fn validate(&self, meta: LatticeMeta) -> Result<(), AnalysisError> {
        let n = meta.side;
        if self.rows == 0 || self.cols == 0 || self.rows > n || self.cols > n {
            return Err(AnalysisError::InvalidRectangle(format!(
                "extents {}x{} out of range for side {n}",
                self.rows, self.cols
            )));
        }
        if self.anchor_i >= n || self.anchor_j >= n {
            return Err(AnalysisError::InvalidRectangle(format!(
                "anchor ({}, {}) out of range for side {n}",
                self.anchor_i, self.anchor_j
            )));
        }
        if !meta.wrap
            && (self.anchor_i + self.rows > n || self.anchor_j + self.cols > n)
        {
            return Err(AnalysisError::InvalidRectangle(
                "rectangle wraps but the lattice does not".into(),
            ));
        }
        Ok(())
    }
}

fn lattice_meta(t: &Topology) -> Result<LatticeMeta, AnalysisError> {
    t.lattice_meta().ok_or(AnalysisError::NotALattice)
}

#[inline]
fn in_interval(n: usize, start: usize, len: usize, x: usize) -> bool {
    (x + n - start) % n < len
}

/// Minimal covering interval of the occupied residues: length first, then
/// the smallest start among minimal covers. `occupied` must be nonempty.
fn minimal_cover(occupied: &[bool], wrap: bool) -> (usize, usize) {
    let n = occupied.len();
    let count = occupied.iter().filter(|&&o| o).count();
    debug_assert!(count > 0);
    if count == n {
        return (0, n);
    }
    if !wrap {
        let first = occupied.iter().position(|&o| o).unwrap();
        let last = occupied.iter().rposition(|&o| o).unwrap();
        return (first, last - first + 1);
    }
    // Cyclic case: the minimal cover is the complement of the largest gap.
    // Ties between equal gaps resolve to the smallest resulting anchor.
    let mut best: Option<(usize, usize)> = None; // (gap_len, anchor after gap)
    for start in 0..n {
        if occupied[start] || !occupied[(start + n - 1) % n] {
            continue; // not the first cell of a gap
        }
        let mut len = 0;
        while !occupied[(start + len) % n] {
            len += 1;
        }
        let anchor = (start + len) % n;
        let better = match best {
            None => true,
            Some((best_len, best_anchor)) => {
                len > best_len || (len == best_len && anchor < best_anchor)
            }
        };
        if better {
            best = Some((len, anchor));
        }
    }
    let (gap_len, anchor) = best.unwrap();
    (anchor, n - gap_len)
}

/// Smallest rectangle covering the vertex set `s`, canonicalized by minimum
/// area then lexicographically smallest anchor.
pub fn smallest_covering_rectangle(
    t: &Topology,
    s: &[usize],
) -> Result<Rectangle, AnalysisError> {
    let meta = lattice_meta(t)?;
    if s.is_empty() {
        return Err(AnalysisError::EmptySet);
    }
    let n = meta.side;
    let mut occupied_i = vec![false; n];
    let mut occupied_j = vec![false; n];
    for &v in s {
        if v >= t.vertex_count() {
            return Err(AnalysisError::VertexOutOfRange {
                vertex: v,
                vertex_count: t.vertex_count(),
            });
        }
        occupied_i[v / n] = true;
        occupied_j[v % n] = true;
    }
    let (anchor_i, rows) = minimal_cover(&occupied_i, meta.wrap);
    let (anchor_j, cols) = minimal_cover(&occupied_j, meta.wrap);
    Ok(Rectangle {
        anchor_i,
        anchor_j,
        rows,
        cols,
    })
}

/// Minimal circular distance between two intervals along one dimension:
/// zero when they share a residue.
fn interval_gap(n: usize, wrap: bool, a_start: usize, a_len: usize, b_start: usize, b_len: usize) -> usize {
    if a_len == n || b_len == n {
        return 0;
    }
    if in_interval(n, a_start, a_len, b_start) || in_interval(n, b_start, b_len, a_start) {
        return 0;
    }
    let a_end = (a_start + a_len - 1) % n;
    let b_end = (b_start + b_len - 1) % n;
    let forward = (b_start + n - a_end) % n; // steps from A's end to B's start
    let backward = (a_start + n - b_end) % n;
    if wrap {
        forward.min(backward)
    } else {
        // Disjoint non-wrapping intervals: exactly one direction applies.
        if a_start + a_len <= b_start {
            b_start - (a_start + a_len - 1)
        } else {
            a_start - (b_start + b_len - 1)
        }
    }
}

/// Shifted distance between two rectangles: the minimum of
/// [`Topology::vertex_distance`] over all cell pairs, computed in closed form
/// from the lattice geometry.
pub fn rectangle_distance(
    t: &Topology,
    r1: &Rectangle,
    r2: &Rectangle,
) -> Result<usize, AnalysisError> {
    let meta = lattice_meta(t)?;
    r1.validate(meta)?;
    r2.validate(meta)?;
    let n = meta.side;
    let gap_i = interval_gap(n, meta.wrap, r1.anchor_i, r1.rows, r2.anchor_i, r2.rows);
    let gap_j = interval_gap(n, meta.wrap, r1.anchor_j, r1.cols, r2.anchor_j, r2.cols);
    let graph_distance = match meta.kind {
        NeighborhoodKind::Neumann => gap_i + gap_j,
        NeighborhoodKind::Moore => gap_i.max(gap_j),
    };
    Ok(graph_distance.saturating_sub(1))
}

/// Smallest rectangle covering both inputs, with the same canonicalization
/// as [`smallest_covering_rectangle`].
fn combine(meta: LatticeMeta, r1: &Rectangle, r2: &Rectangle) -> Rectangle {
    let n = meta.side;
    let mut occupied_i = vec![false; n];
    let mut occupied_j = vec![false; n];
    for r in [r1, r2] {
        for a in 0..r.rows {
            occupied_i[(r.anchor_i + a) % n] = true;
        }
        for b in 0..r.cols {
            occupied_j[(r.anchor_j + b) % n] = true;
        }
    }
    let (anchor_i, rows) = minimal_cover(&occupied_i, meta.wrap);
    let (anchor_j, cols) = minimal_cover(&occupied_j, meta.wrap);
    Rectangle {
        anchor_i,
        anchor_j,
        rows,
        cols,
    }
}

/// Repeatedly merges any two rectangles at distance <= 1 into their smallest
/// covering rectangle until all pairs are at distance >= 2 or a single
/// rectangle remains.
///
/// When several pairs are eligible, the pair that is lexicographically
/// smallest in the sorted rectangle order is merged first, so the output is
/// deterministic.
pub fn rectangulate(
    t: &Topology,
    rectangles: &[Rectangle],
) -> Result<Vec<Rectangle>, AnalysisError> {
    let meta = lattice_meta(t)?;
    for r in rectangles {
        r.validate(meta)?;
    }
    let mut current: Vec<Rectangle> = rectangles.to_vec();
    current.sort_unstable();
    loop {
        if current.len() < 2 {
            break;
        }
        let mut merged = None;
        'search: for a in 0..current.len() {
            for b in a + 1..current.len() {
                if rectangle_distance(t, &current[a], &current[b])? <= 1 {
                    merged = Some((a, b));
                    break 'search;
                }
            }
        }
        match merged {
            Some((a, b)) => {
                let combined = combine(meta, &current[a], &current[b]);
                current.remove(b);
                current.remove(a);
                let pos = current.partition_point(|r| *r < combined);
                current.insert(pos, combined);
            }
            None => break,
        }
    }
    Ok(current)
}

/// Covering rectangles of the connected components of `color` cells under
/// the topology's own adjacency, sorted. This is the input the merging
/// procedure expects when applied to a generation.
pub fn component_rectangles(
    t: &Topology,
    g: &Generation,
    color: Color,
) -> Result<Vec<Rectangle>, AnalysisError> {
    lattice_meta(t)?;
    let mut out = Vec::new();
    for component in color_components(t, g, color)? {
        out.push(smallest_covering_rectangle(t, &component)?);
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus(n: usize, kind: NeighborhoodKind) -> Topology {
        Topology::lattice(n, kind, true).unwrap()
    }

    fn rect(anchor_i: usize, anchor_j: usize, rows: usize, cols: usize) -> Rectangle {
        Rectangle {
            anchor_i,
            anchor_j,
            rows,
            cols,
        }
    }

    /// Exhaustive reference: try every anchor and extent pair, keep covers.
    fn brute_force_cover(t: &Topology, s: &[usize]) -> Rectangle {
        let meta = t.lattice_meta().unwrap();
        let n = meta.side;
        let mut best: Option<Rectangle> = None;
        for anchor_i in 0..n {
            for anchor_j in 0..n {
                for rows in 1..=n {
                    for cols in 1..=n {
                        let r = rect(anchor_i, anchor_j, rows, cols);
                        if !meta.wrap && (anchor_i + rows > n || anchor_j + cols > n) {
                            continue;
                        }
                        let covers = s
                            .iter()
                            .all(|&v| r.contains(n, v / n, v % n));
                        if !covers {
                            continue;
                        }
                        best = Some(match best {
                            None => r,
                            Some(b) => {
                                let key = |x: &Rectangle| (x.area(), x.anchor_i, x.anchor_j);
                                if key(&r) < key(&b) {
                                    r
                                } else {
                                    b
                                }
                            }
                        });
                    }
                }
            }
        }
        best.unwrap()
    }

    #[test]
    fn covering_rectangle_examples() {
        let t = torus(8, NeighborhoodKind::Neumann);
        let one = t.cell_index(2, 3);
        assert_eq!(
            smallest_covering_rectangle(&t, &[one]).unwrap(),
            rect(2, 3, 1, 1)
        );
        let diag = [t.cell_index(0, 0), t.cell_index(1, 1)];
        assert_eq!(
            smallest_covering_rectangle(&t, &diag).unwrap(),
            rect(0, 0, 2, 2)
        );
        // Wrapping pair: frozen from the exhaustive enumeration oracle.
        let wrapped = [t.cell_index(0, 7), t.cell_index(0, 0)];
        let r = smallest_covering_rectangle(&t, &wrapped).unwrap();
        assert_eq!(r, rect(0, 7, 1, 2));
        assert_eq!(r, brute_force_cover(&t, &wrapped));
    }

    #[test]
    fn covering_rectangle_matches_enumeration_on_random_sets() {
        let mut rng = crate::rng::SplitMix64::new(2024);
        for _ in 0..200 {
            let n = 4 + (rng.next_below(5) as usize); // 4..=8
            let wrap = rng.next_bool();
            let t = Topology::lattice(n, NeighborhoodKind::Neumann, wrap).unwrap();
            let size = 1 + rng.next_below(6) as usize;
            let s: Vec<usize> = (0..size)
                .map(|_| rng.next_below((n * n) as u64) as usize)
                .collect();
            assert_eq!(
                smallest_covering_rectangle(&t, &s).unwrap(),
                brute_force_cover(&t, &s),
                "n={n} wrap={wrap} s={s:?}"
            );
        }
    }

    #[test]
    fn empty_set_and_non_lattice_rejected() {
        let t = torus(5, NeighborhoodKind::Neumann);
        assert_eq!(
            smallest_covering_rectangle(&t, &[]),
            Err(AnalysisError::EmptySet)
        );
        let c = Topology::cycle(5).unwrap();
        assert_eq!(
            smallest_covering_rectangle(&c, &[0]),
            Err(AnalysisError::NotALattice)
        );
    }

    #[test]
    fn rectangle_distance_examples() {
        let t = torus(8, NeighborhoodKind::Neumann);
        // Overlap.
        assert_eq!(
            rectangle_distance(&t, &rect(0, 0, 3, 3), &rect(2, 2, 2, 2)).unwrap(),
            0
        );
        // One cell between: shortest path two edges, shifted to one.
        assert_eq!(
            rectangle_distance(&t, &rect(0, 0, 1, 1), &rect(0, 2, 1, 1)).unwrap(),
            1
        );
        // Diagonal neighbors on a Neumann lattice: also two edges.
        assert_eq!(
            rectangle_distance(&t, &rect(0, 0, 1, 1), &rect(1, 1, 1, 1)).unwrap(),
            1
        );
        // Adjacent cells are at distance zero.
        assert_eq!(
            rectangle_distance(&t, &rect(0, 0, 1, 1), &rect(0, 1, 1, 1)).unwrap(),
            0
        );
    }

    #[test]
    fn rectangle_distance_matches_bfs_minimum() {
        let mut rng = crate::rng::SplitMix64::new(99);
        for kind in [NeighborhoodKind::Neumann, NeighborhoodKind::Moore] {
            for wrap in [true, false] {
                for _ in 0..60 {
                    let n = 4 + rng.next_below(4) as usize;
                    let t = Topology::lattice(n, kind, wrap).unwrap();
                    let sample = |rng: &mut crate::rng::SplitMix64| {
                        let rows = 1 + rng.next_below(3) as usize;
                        let cols = 1 + rng.next_below(3) as usize;
                        let (ai, aj) = if wrap {
                            (
                                rng.next_below(n as u64) as usize,
                                rng.next_below(n as u64) as usize,
                            )
                        } else {
                            (
                                rng.next_below((n - rows + 1) as u64) as usize,
                                rng.next_below((n - cols + 1) as u64) as usize,
                            )
                        };
                        rect(ai, aj, rows, cols)
                    };
                    let r1 = sample(&mut rng);
                    let r2 = sample(&mut rng);
                    let fast = rectangle_distance(&t, &r1, &r2).unwrap();
                    let slow = r1
                        .cells(n)
                        .iter()
                        .flat_map(|&u| r2.cells(n).into_iter().map(move |v| (u, v)))
                        .map(|(u, v)| t.vertex_distance(u, v).unwrap())
                        .min()
                        .unwrap();
                    assert_eq!(fast, slow, "kind={kind:?} wrap={wrap} r1={r1:?} r2={r2:?}");
                }
            }
        }
    }

    #[test]
    fn rectangulate_merges_diagonal_singletons() {
        let t = torus(8, NeighborhoodKind::Neumann);
        let out = rectangulate(&t, &[rect(0, 0, 1, 1), rect(1, 1, 1, 1)]).unwrap();
        assert_eq!(out, vec![rect(0, 0, 2, 2)]);
    }

    #[test]
    fn rectangulate_leaves_separated_input_unchanged() {
        let t = torus(10, NeighborhoodKind::Neumann);
        let input = vec![rect(0, 0, 2, 2), rect(5, 5, 2, 2)];
        assert_eq!(rectangulate(&t, &input).unwrap(), input);
    }

    #[test]
    fn rectangulate_chains_combines() {
        let t = torus(10, NeighborhoodKind::Neumann);
        let out = rectangulate(
            &t,
            &[rect(0, 0, 1, 1), rect(0, 2, 1, 1), rect(0, 4, 1, 1)],
        )
        .unwrap();
        assert_eq!(out, vec![rect(0, 0, 1, 5)]);
        // Postcondition: re-running changes nothing and all pairs are >= 2.
        assert_eq!(rectangulate(&t, &out).unwrap(), out);
    }

    #[test]
    fn rectangulate_saturates_to_whole_torus() {
        let t = torus(6, NeighborhoodKind::Neumann);
        let input: Vec<Rectangle> = (0..6).map(|i| rect(i, i, 1, 1)).collect();
        let out = rectangulate(&t, &input).unwrap();
        assert_eq!(out.len(), 1);
        assert!(out[0].is_whole_lattice(6));
    }

    #[test]
    fn component_rectangles_of_a_generation() {
        let t = torus(8, NeighborhoodKind::Neumann);
        let mut g = Generation::uniform(&t, Color::Red);
        for (i, j) in [(0, 0), (0, 1), (4, 4)] {
            g.set(t.cell_index(i, j), Color::Blue);
        }
        let rects = component_rectangles(&t, &g, Color::Blue).unwrap();
        assert_eq!(rects, vec![rect(0, 0, 1, 2), rect(4, 4, 1, 1)]);
    }

    #[test]
    fn invalid_rectangles_rejected() {
        let t = torus(5, NeighborhoodKind::Neumann);
        let bad = rect(0, 0, 6, 1);
        assert!(matches!(
            rectangle_distance(&t, &bad, &rect(0, 0, 1, 1)),
            Err(AnalysisError::InvalidRectangle(_))
        ));
        let grid = Topology::lattice(5, NeighborhoodKind::Neumann, false).unwrap();
        let wrapping = rect(4, 4, 2, 2);
        assert!(matches!(
            rectangle_distance(&grid, &wrapping, &rect(0, 0, 1, 1)),
            Err(AnalysisError::InvalidRectangle(_))
        ));
    }
}
