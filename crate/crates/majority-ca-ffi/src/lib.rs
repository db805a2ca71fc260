//! C ABI over the majority-ca library: opaque handles, status codes, and
//! plain-old-data results, so other languages can bind the simulator and
//! the set-verification machinery.
//!
//! Conventions:
//! - every fallible call returns [`McaStatus`] and writes results through
//!   out-pointers, which are left untouched on failure;
//! - handles created by `mca_*_new*` functions are freed with the matching
//!   `mca_*_free`, which tolerates null;
//! - vertices are 0-based indices; lattice cell `(i, j)` is `i * n + j`.

use std::ffi::c_char;

use majority_ca::analysis::{
    self, consensus_time_bound, is_eternal_set, is_robust_set, moore_clusters,
    rectangle_distance, rectangulate, survival_bound, AnalysisError, Rectangle, SurvivalKind,
};
use majority_ca::dynamics::{
    run_to_cycle, step, Classification, Color, DynamicsError, Generation, Period, RuleKind,
    UpdateRule,
};
use majority_ca::experiments::{random_generation, ExperimentError};
use majority_ca::topology::{NeighborhoodKind, Topology, TopologyError};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McaStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A parameter was out of range or structurally invalid.
    InvalidArgument = 2,
    /// The rule/operation combination has no defined behavior.
    Unsupported = 3,
    /// Generation length does not match the topology.
    SizeMismatch = 4,
    /// No path exists between the queried vertices.
    Disconnected = 5,
    /// Exhaustive verification would exceed the configured cap.
    InstanceTooLarge = 6,
    /// A deterministic run failed to cycle within its step budget.
    BudgetExhausted = 7,
}

/// Stable, static name for a status code.
#[no_mangle]
pub extern "C" fn mca_status_name(status: McaStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        McaStatus::Ok => b"ok\0",
        McaStatus::NullArgument => b"null argument\0",
        McaStatus::InvalidArgument => b"invalid argument\0",
        McaStatus::Unsupported => b"unsupported\0",
        McaStatus::SizeMismatch => b"size mismatch\0",
        McaStatus::Disconnected => b"disconnected\0",
        McaStatus::InstanceTooLarge => b"instance too large\0",
        McaStatus::BudgetExhausted => b"budget exhausted\0",
    };
    name.as_ptr() as *const c_char
}

impl From<&TopologyError> for McaStatus {
    fn from(e: &TopologyError) -> Self {
        match e {
            TopologyError::Disconnected { .. } => McaStatus::Disconnected,
            _ => McaStatus::InvalidArgument,
        }
    }
}

impl From<&DynamicsError> for McaStatus {
    fn from(e: &DynamicsError) -> Self {
        match e {
            DynamicsError::SizeMismatch { .. } => McaStatus::SizeMismatch,
            DynamicsError::CycleNotDetected { .. } => McaStatus::BudgetExhausted,
            _ => McaStatus::InvalidArgument,
        }
    }
}

impl From<&AnalysisError> for McaStatus {
    fn from(e: &AnalysisError) -> Self {
        match e {
            AnalysisError::UnsupportedRule(_) | AnalysisError::ThresholdsNotEstablished => {
                McaStatus::Unsupported
            }
            AnalysisError::InstanceTooLarge { .. } => McaStatus::InstanceTooLarge,
            AnalysisError::Dynamics(inner) => inner.into(),
            _ => McaStatus::InvalidArgument,
        }
    }
}

impl From<&ExperimentError> for McaStatus {
    fn from(e: &ExperimentError) -> Self {
        match e {
            ExperimentError::Topology(inner) => inner.into(),
            ExperimentError::Dynamics(inner) => inner.into(),
            _ => McaStatus::InvalidArgument,
        }
    }
}

/// Lattice adjacency kind.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McaNeighborhood {
    Neumann = 0,
    Moore = 1,
}

impl From<McaNeighborhood> for NeighborhoodKind {
    fn from(k: McaNeighborhood) -> Self {
        match k {
            McaNeighborhood::Neumann => NeighborhoodKind::Neumann,
            McaNeighborhood::Moore => NeighborhoodKind::Moore,
        }
    }
}

/// Update rule selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McaRule {
    Majority = 0,
    BiasedMajority = 1,
    RandomMajority = 2,
    ConservativeMajority = 3,
}

impl From<McaRule> for RuleKind {
    fn from(r: McaRule) -> Self {
        match r {
            McaRule::Majority => RuleKind::Majority,
            McaRule::BiasedMajority => RuleKind::Biased,
            McaRule::RandomMajority => RuleKind::Random,
            McaRule::ConservativeMajority => RuleKind::Conservative,
        }
    }
}

/// Final classification of a run or generation.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McaClassification {
    BMonochromatic = 0,
    RMonochromatic = 1,
    Bichromatic = 2,
}

impl From<Classification> for McaClassification {
    fn from(c: Classification) -> Self {
        match c {
            Classification::BMonochromatic => McaClassification::BMonochromatic,
            Classification::RMonochromatic => McaClassification::RMonochromatic,
            Classification::Bichromatic => McaClassification::Bichromatic,
        }
    }
}

/// Outcome of a run. `period` is 1 or 2, or 0 when a random-majority run
/// hit its step budget without a detected cycle.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McaRunOutcome {
    pub consensus_time: u64,
    pub period: u32,
    pub classification: McaClassification,
    pub final_blue_count: u64,
    pub steps_executed: u64,
}

/// Axis-aligned, possibly wrapping lattice rectangle.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McaRectangle {
    pub anchor_i: u64,
    pub anchor_j: u64,
    pub rows: u64,
    pub cols: u64,
}

impl From<Rectangle> for McaRectangle {
    fn from(r: Rectangle) -> Self {
        McaRectangle {
            anchor_i: r.anchor_i as u64,
            anchor_j: r.anchor_j as u64,
            rows: r.rows as u64,
            cols: r.cols as u64,
        }
    }
}

impl From<McaRectangle> for Rectangle {
    fn from(r: McaRectangle) -> Self {
        Rectangle {
            anchor_i: r.anchor_i as usize,
            anchor_j: r.anchor_j as usize,
            rows: r.rows as usize,
            cols: r.cols as usize,
        }
    }
}

/// Opaque immutable graph handle.
pub struct McaTopology(Topology);

/// Opaque vertex-coloring handle.
pub struct McaGeneration(Generation);

/// Opaque update-rule handle; random majority carries its tie-break stream
/// here, so a handle should drive at most one run at a time.
pub struct McaUpdateRule(UpdateRule);

fn write_out<T>(out: *mut T, value: T) -> McaStatus {
    if out.is_null() {
        return McaStatus::NullArgument;
    }
    unsafe { out.write(value) };
    McaStatus::Ok
}

fn write_handle<T>(out: *mut *mut T, value: T) -> McaStatus {
    if out.is_null() {
        return McaStatus::NullArgument;
    }
    unsafe { out.write(Box::into_raw(Box::from(value))) };
    McaStatus::Ok
}

macro_rules! deref {
    ($ptr:expr) => {
        match unsafe { $ptr.as_ref() } {
            Some(r) => r,
            None => return McaStatus::NullArgument,
        }
    };
}

// ---------------------------------------------------------------------------
// Topology
// ---------------------------------------------------------------------------

/// Builds an n-by-n grid (`wrap = false`) or torus (`wrap = true`).
///
/// # Safety
/// `out` must be a valid pointer to a `McaTopology*`.
#[no_mangle]
pub unsafe extern "C" fn mca_topology_new_lattice(
    n: u64,
    kind: McaNeighborhood,
    wrap: bool,
    out: *mut *mut McaTopology,
) -> McaStatus {
    match Topology::lattice(n as usize, kind.into(), wrap) {
        Ok(t) => write_handle(out, McaTopology(t)),
        Err(e) => (&e).into(),
    }
}

/// Builds the cycle on n >= 3 vertices.
///
/// # Safety
/// `out` must be a valid pointer to a `McaTopology*`.
#[no_mangle]
pub unsafe extern "C" fn mca_topology_new_cycle(n: u64, out: *mut *mut McaTopology) -> McaStatus {
    match Topology::cycle(n as usize) {
        Ok(t) => write_handle(out, McaTopology(t)),
        Err(e) => (&e).into(),
    }
}

/// Builds a general graph from `edge_count` undirected edges given as
/// flattened endpoint pairs `[u0, v0, u1, v1, ...]`.
///
/// # Safety
/// `endpoints` must point to `2 * edge_count` readable u64 values (or be
/// null when `edge_count` is zero); `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mca_topology_new_from_edges(
    vertex_count: u64,
    endpoints: *const u64,
    edge_count: u64,
    out: *mut *mut McaTopology,
) -> McaStatus {
    if endpoints.is_null() && edge_count > 0 {
        return McaStatus::NullArgument;
    }
    let pairs = if edge_count == 0 {
        &[]
    } else {
        unsafe { std::slice::from_raw_parts(endpoints, 2 * edge_count as usize) }
    };
    let edges: Vec<(usize, usize)> = pairs
        .chunks_exact(2)
        .map(|c| (c[0] as usize, c[1] as usize))
        .collect();
    match Topology::from_edges(vertex_count as usize, &edges) {
        Ok(t) => write_handle(out, McaTopology(t)),
        Err(e) => (&e).into(),
    }
}

/// Frees a topology handle; null is ignored.
///
/// # Safety
/// `t` must be null or a pointer obtained from `mca_topology_new_*` that
/// has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn mca_topology_free(t: *mut McaTopology) {
    if !t.is_null() {
        drop(unsafe { Box::from_raw(t) });
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `t` must be null or a live topology handle.
#[no_mangle]
pub unsafe extern "C" fn mca_topology_vertex_count(t: *const McaTopology) -> u64 {
    unsafe { t.as_ref() }.map_or(0, |t| t.0.vertex_count() as u64)
}

/// Number of undirected edges, or 0 for a null handle.
///
/// # Safety
/// `t` must be null or a live topology handle.
#[no_mangle]
pub unsafe extern "C" fn mca_topology_edge_count(t: *const McaTopology) -> u64 {
    unsafe { t.as_ref() }.map_or(0, |t| t.0.edge_count() as u64)
}

/// Shifted shortest-path distance: path edge count minus one, zero for
/// identical or adjacent vertices.
///
/// # Safety
/// `t` must be a live topology handle and `out` a valid u64 pointer.
#[no_mangle]
pub unsafe extern "C" fn mca_vertex_distance(
    t: *const McaTopology,
    u: u64,
    v: u64,
    out: *mut u64,
) -> McaStatus {
    let t = deref!(t);
    match t.0.vertex_distance(u as usize, v as usize) {
        Ok(d) => write_out(out, d as u64),
        Err(e) => (&e).into(),
    }
}

// ---------------------------------------------------------------------------
// Generations
// ---------------------------------------------------------------------------

/// All vertices blue (`blue = true`) or red.
///
/// # Safety
/// `t` must be a live topology handle; `out` a valid `McaGeneration*` slot.
#[no_mangle]
pub unsafe extern "C" fn mca_generation_new_uniform(
    t: *const McaTopology,
    blue: bool,
    out: *mut *mut McaGeneration,
) -> McaStatus {
    let t = deref!(t);
    let color = if blue { Color::Blue } else { Color::Red };
    write_handle(out, McaGeneration(Generation::uniform(&t.0, color)))
}

/// Seeded random generation: vertex k is blue iff the k-th splitmix64
/// output of `seed`, mapped to [0, 1), is below `p_b`.
///
/// # Safety
/// `t` must be a live topology handle; `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn mca_generation_new_random(
    t: *const McaTopology,
    p_b: f64,
    seed: u64,
    out: *mut *mut McaGeneration,
) -> McaStatus {
    let t = deref!(t);
    match random_generation(&t.0, p_b, seed) {
        Ok(g) => write_handle(out, McaGeneration(g)),
        Err(e) => (&e).into(),
    }
}

/// Builds a generation from `len` bytes, nonzero meaning blue. `len` must
/// equal the topology's vertex count.
///
/// # Safety
/// `t` must be a live handle, `colors` must point to `len` readable bytes,
/// and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mca_generation_new_from_colors(
    t: *const McaTopology,
    colors: *const u8,
    len: u64,
    out: *mut *mut McaGeneration,
) -> McaStatus {
    let t = deref!(t);
    if colors.is_null() {
        return McaStatus::NullArgument;
    }
    if len as usize != t.0.vertex_count() {
        return McaStatus::SizeMismatch;
    }
    let bytes = unsafe { std::slice::from_raw_parts(colors, len as usize) };
    let colors: Vec<Color> = bytes
        .iter()
        .map(|&b| if b != 0 { Color::Blue } else { Color::Red })
        .collect();
    match Generation::from_colors(&colors) {
        Ok(g) => write_handle(out, McaGeneration(g)),
        Err(e) => (&e).into(),
    }
}

/// Frees a generation handle; null is ignored.
///
/// # Safety
/// `g` must be null or a live generation handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mca_generation_free(g: *mut McaGeneration) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Number of vertices colored, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live generation handle.
#[no_mangle]
pub unsafe extern "C" fn mca_generation_len(g: *const McaGeneration) -> u64 {
    unsafe { g.as_ref() }.map_or(0, |g| g.0.len() as u64)
}

/// Number of blue vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live generation handle.
#[no_mangle]
pub unsafe extern "C" fn mca_generation_blue_count(g: *const McaGeneration) -> u64 {
    unsafe { g.as_ref() }.map_or(0, |g| g.0.blue_count() as u64)
}

/// Writes 1 when vertex `v` is blue, 0 when red.
///
/// # Safety
/// `g` must be a live generation handle and `out` a valid byte pointer.
#[no_mangle]
pub unsafe extern "C" fn mca_generation_get(
    g: *const McaGeneration,
    v: u64,
    out: *mut u8,
) -> McaStatus {
    let g = deref!(g);
    if v as usize >= g.0.len() {
        return McaStatus::InvalidArgument;
    }
    write_out(out, u8::from(g.0.is_blue(v as usize)))
}

// ---------------------------------------------------------------------------
// Rules and runs
// ---------------------------------------------------------------------------

/// Creates a rule handle. `tie_seed` feeds the random-majority tie stream
/// and is ignored by the deterministic rules.
///
/// # Safety
/// `out` must be a valid `McaUpdateRule*` slot.
#[no_mangle]
pub unsafe extern "C" fn mca_rule_new(
    rule: McaRule,
    tie_seed: u64,
    out: *mut *mut McaUpdateRule,
) -> McaStatus {
    let kind: RuleKind = rule.into();
    write_handle(out, McaUpdateRule(kind.instantiate(tie_seed)))
}

/// Frees a rule handle; null is ignored.
///
/// # Safety
/// `rule` must be null or a live rule handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mca_rule_free(rule: *mut McaUpdateRule) {
    if !rule.is_null() {
        drop(unsafe { Box::from_raw(rule) });
    }
}

/// One synchronous step; advances the rule's tie stream if it has one.
///
/// # Safety
/// All handles must be live; `out` must be a valid slot.
#[no_mangle]
pub unsafe extern "C" fn mca_step(
    t: *const McaTopology,
    rule: *mut McaUpdateRule,
    g: *const McaGeneration,
    out: *mut *mut McaGeneration,
) -> McaStatus {
    let t = deref!(t);
    let g = deref!(g);
    let rule = match unsafe { rule.as_mut() } {
        Some(r) => r,
        None => return McaStatus::NullArgument,
    };
    match step(&t.0, &mut rule.0, &g.0) {
        Ok(next) => write_handle(out, McaGeneration(next)),
        Err(e) => (&e).into(),
    }
}

/// Runs to a detected period-1/2 cycle. `max_steps = 0` selects the
/// automatic budget `|E| + |V| + 2`.
///
/// # Safety
/// All handles must be live; `out` must point to a writable outcome struct.
#[no_mangle]
pub unsafe extern "C" fn mca_run_to_cycle(
    t: *const McaTopology,
    rule: *mut McaUpdateRule,
    g0: *const McaGeneration,
    max_steps: u64,
    out: *mut McaRunOutcome,
) -> McaStatus {
    let t = deref!(t);
    let g0 = deref!(g0);
    let rule = match unsafe { rule.as_mut() } {
        Some(r) => r,
        None => return McaStatus::NullArgument,
    };
    let budget = if max_steps == 0 {
        None
    } else {
        Some(max_steps as usize)
    };
    match run_to_cycle(&t.0, &mut rule.0, &g0.0, budget) {
        Ok(outcome) => write_out(
            out,
            McaRunOutcome {
                consensus_time: outcome.consensus_time as u64,
                period: match outcome.period {
                    Period::One => 1,
                    Period::Two => 2,
                    Period::Unresolved => 0,
                },
                classification: outcome.classification.into(),
                final_blue_count: outcome.final_blue_count as u64,
                steps_executed: outcome.steps_executed as u64,
            },
        ),
        Err(e) => (&e).into(),
    }
}

// ---------------------------------------------------------------------------
// Analysis
// ---------------------------------------------------------------------------

fn vertex_slice<'a>(vertices: *const u64, len: u64) -> Option<&'a [u64]> {
    if vertices.is_null() {
        return None;
    }
    Some(unsafe { std::slice::from_raw_parts(vertices, len as usize) })
}

/// Whether the vertex set keeps `blue ? blue : red` against every outside
/// coloring, under majority or biased majority.
///
/// # Safety
/// `t` must be live, `vertices` must point to `len` readable u64 values,
/// and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mca_is_robust_set(
    t: *const McaTopology,
    rule: McaRule,
    vertices: *const u64,
    len: u64,
    blue: bool,
    out: *mut bool,
) -> McaStatus {
    let t = deref!(t);
    let Some(raw) = vertex_slice(vertices, len) else {
        return McaStatus::NullArgument;
    };
    let set: Vec<usize> = raw.iter().map(|&v| v as usize).collect();
    let color = if blue { Color::Blue } else { Color::Red };
    match is_robust_set(&t.0, RuleKind::from(rule), &set, color) {
        Ok(v) => write_out(out, v),
        Err(e) => (&e).into(),
    }
}

/// Whether the vertex set guarantees its color survives somewhere forever,
/// by exhaustive simulation of all `2^(|V| - len)` outside colorings.
/// `budget` caps `|V| - len`.
///
/// # Safety
/// Same contract as [`mca_is_robust_set`].
#[no_mangle]
pub unsafe extern "C" fn mca_is_eternal_set(
    t: *const McaTopology,
    rule: McaRule,
    vertices: *const u64,
    len: u64,
    blue: bool,
    budget: u64,
    out: *mut bool,
) -> McaStatus {
    let t = deref!(t);
    let Some(raw) = vertex_slice(vertices, len) else {
        return McaStatus::NullArgument;
    };
    let set: Vec<usize> = raw.iter().map(|&v| v as usize).collect();
    let color = if blue { Color::Blue } else { Color::Red };
    match is_eternal_set(&t.0, RuleKind::from(rule), &set, color, budget as usize) {
        Ok(v) => write_out(out, v),
        Err(e) => (&e).into(),
    }
}

/// Size of the largest same-color cluster under Moore adjacency.
///
/// # Safety
/// Handles must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mca_moore_largest_cluster(
    t: *const McaTopology,
    g: *const McaGeneration,
    blue: bool,
    out: *mut u64,
) -> McaStatus {
    let t = deref!(t);
    let g = deref!(g);
    let color = if blue { Color::Blue } else { Color::Red };
    match moore_clusters(&t.0, &g.0, color) {
        Ok(report) => write_out(out, report.largest_size as u64),
        Err(e) => (&e).into(),
    }
}

/// Worst-case consensus time: |E| for majority, |E| + |V| for biased.
///
/// # Safety
/// `t` must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mca_consensus_time_bound(
    t: *const McaTopology,
    rule: McaRule,
    out: *mut u64,
) -> McaStatus {
    let t = deref!(t);
    match consensus_time_bound(&t.0, rule.into()) {
        Ok(report) => write_out(out, report.value() as u64),
        Err(e) => (&e).into(),
    }
}

/// The two phase-transition densities for a side-n torus.
///
/// # Safety
/// `out_p1` and `out_p2` must be valid f64 pointers.
#[no_mangle]
pub unsafe extern "C" fn mca_threshold_values(
    rule: McaRule,
    kind: McaNeighborhood,
    n: u64,
    out_p1: *mut f64,
    out_p2: *mut f64,
) -> McaStatus {
    match analysis::threshold_values(rule.into(), kind.into(), n as usize) {
        Ok((p1, p2)) => {
            if out_p1.is_null() || out_p2.is_null() {
                return McaStatus::NullArgument;
            }
            unsafe {
                out_p1.write(p1);
                out_p2.write(p2);
            }
            McaStatus::Ok
        }
        Err(e) => (&e).into(),
    }
}

/// Survival bound `exp(-k * p_b^s)` for k disjoint eternal sets.
///
/// # Safety
/// `out` must be a valid f64 pointer.
#[no_mangle]
pub unsafe extern "C" fn mca_survival_bound_disjoint(
    k: u64,
    s: u32,
    p_b: f64,
    out: *mut f64,
) -> McaStatus {
    match survival_bound(SurvivalKind::Disjoint, k, s, p_b, None) {
        Ok(report) => write_out(out, report.value()),
        Err(e) => (&e).into(),
    }
}

/// Survival bound `exp(-k^2 p_b^(2s) / (2 sum a_i^2))` for overlapping
/// eternal sets with per-vertex multiplicities.
///
/// # Safety
/// `multiplicities` must point to `len` readable u64 values; `out` must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn mca_survival_bound_azuma(
    k: u64,
    s: u32,
    p_b: f64,
    multiplicities: *const u64,
    len: u64,
    out: *mut f64,
) -> McaStatus {
    let Some(a) = vertex_slice(multiplicities, len) else {
        return McaStatus::NullArgument;
    };
    match survival_bound(SurvivalKind::Azuma, k, s, p_b, Some(a)) {
        Ok(report) => write_out(out, report.value()),
        Err(e) => (&e).into(),
    }
}

/// Shifted distance between two rectangles on the lattice.
///
/// # Safety
/// `t` must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mca_rectangle_distance(
    t: *const McaTopology,
    a: McaRectangle,
    b: McaRectangle,
    out: *mut u64,
) -> McaStatus {
    let t = deref!(t);
    match rectangle_distance(&t.0, &a.into(), &b.into()) {
        Ok(d) => write_out(out, d as u64),
        Err(e) => (&e).into(),
    }
}

/// Merges rectangles until all pairs are at distance >= 2, writing at most
/// `capacity` results (the output never exceeds the input length) and the
/// actual count to `out_len`.
///
/// # Safety
/// `rectangles` must point to `len` readable rectangles, `out` to
/// `capacity` writable slots, and `out_len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mca_rectangulate(
    t: *const McaTopology,
    rectangles: *const McaRectangle,
    len: u64,
    out: *mut McaRectangle,
    capacity: u64,
    out_len: *mut u64,
) -> McaStatus {
    let t = deref!(t);
    if rectangles.is_null() || out.is_null() || out_len.is_null() {
        return McaStatus::NullArgument;
    }
    let input: Vec<Rectangle> = unsafe { std::slice::from_raw_parts(rectangles, len as usize) }
        .iter()
        .map(|&r| r.into())
        .collect();
    match rectangulate(&t.0, &input) {
        Ok(merged) => {
            if merged.len() as u64 > capacity {
                return McaStatus::InvalidArgument;
            }
            for (i, r) in merged.iter().enumerate() {
                unsafe { out.add(i).write((*r).into()) };
            }
            unsafe { out_len.write(merged.len() as u64) };
            McaStatus::Ok
        }
        Err(e) => (&e).into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn lattice(n: u64, kind: McaNeighborhood, wrap: bool) -> *mut McaTopology {
        let mut t = ptr::null_mut();
        let status = unsafe { mca_topology_new_lattice(n, kind, wrap, &mut t) };
        assert_eq!(status, McaStatus::Ok);
        t
    }

    #[test]
    fn lattice_lifecycle_and_counts() {
        let t = lattice(6, McaNeighborhood::Neumann, true);
        unsafe {
            assert_eq!(mca_topology_vertex_count(t), 36);
            assert_eq!(mca_topology_edge_count(t), 72);
            let mut d = u64::MAX;
            assert_eq!(mca_vertex_distance(t, 0, 3, &mut d), McaStatus::Ok);
            assert_eq!(d, 2);
            mca_topology_free(t);
            mca_topology_free(ptr::null_mut());
        }
    }

    #[test]
    fn invalid_arguments_are_reported() {
        let mut t = ptr::null_mut();
        unsafe {
            assert_eq!(
                mca_topology_new_lattice(2, McaNeighborhood::Neumann, true, &mut t),
                McaStatus::InvalidArgument
            );
            assert_eq!(
                mca_topology_new_cycle(5, ptr::null_mut()),
                McaStatus::NullArgument
            );
            let mut p1 = 0.0;
            let mut p2 = 0.0;
            assert_eq!(
                mca_threshold_values(
                    McaRule::BiasedMajority,
                    McaNeighborhood::Moore,
                    100,
                    &mut p1,
                    &mut p2
                ),
                McaStatus::Unsupported
            );
        }
    }

    #[test]
    fn single_blue_cell_run() {
        let t = lattice(6, McaNeighborhood::Neumann, true);
        unsafe {
            let mut colors = [0u8; 36];
            colors[21] = 1;
            let mut g = ptr::null_mut();
            assert_eq!(
                mca_generation_new_from_colors(t, colors.as_ptr(), 36, &mut g),
                McaStatus::Ok
            );
            assert_eq!(mca_generation_blue_count(g), 1);
            let mut rule = ptr::null_mut();
            assert_eq!(mca_rule_new(McaRule::Majority, 0, &mut rule), McaStatus::Ok);
            let mut outcome = McaRunOutcome {
                consensus_time: 99,
                period: 99,
                classification: McaClassification::Bichromatic,
                final_blue_count: 99,
                steps_executed: 99,
            };
            assert_eq!(mca_run_to_cycle(t, rule, g, 0, &mut outcome), McaStatus::Ok);
            assert_eq!(outcome.consensus_time, 1);
            assert_eq!(outcome.period, 1);
            assert_eq!(outcome.classification, McaClassification::RMonochromatic);
            assert_eq!(outcome.final_blue_count, 0);
            mca_rule_free(rule);
            mca_generation_free(g);
            mca_topology_free(t);
        }
    }

    #[test]
    fn eternal_pair_and_cap() {
        let t = lattice(4, McaNeighborhood::Neumann, true);
        unsafe {
            let pair = [0u64, 5];
            let mut eternal = false;
            assert_eq!(
                mca_is_eternal_set(t, McaRule::BiasedMajority, pair.as_ptr(), 2, true, 14, &mut eternal),
                McaStatus::Ok
            );
            assert!(eternal);
            let single = [0u64];
            assert_eq!(
                mca_is_eternal_set(t, McaRule::BiasedMajority, single.as_ptr(), 1, true, 10, &mut eternal),
                McaStatus::InstanceTooLarge
            );
            let mut robust = true;
            assert_eq!(
                mca_is_robust_set(t, McaRule::Majority, single.as_ptr(), 1, true, &mut robust),
                McaStatus::Ok
            );
            assert!(!robust);
            mca_topology_free(t);
        }
    }

    #[test]
    fn random_generation_matches_library() {
        let t = lattice(4, McaNeighborhood::Neumann, true);
        unsafe {
            let mut g = ptr::null_mut();
            assert_eq!(
                mca_generation_new_random(t, 0.5, 42, &mut g),
                McaStatus::Ok
            );
            // Frozen golden pattern for seed 42 at density one half.
            let expected = b"RBBBBRBRBRBBRRRB";
            for (v, &e) in expected.iter().enumerate() {
                let mut byte = 7u8;
                assert_eq!(mca_generation_get(g, v as u64, &mut byte), McaStatus::Ok);
                assert_eq!(byte == 1, e == b'B', "vertex {v}");
            }
            mca_generation_free(g);
            mca_topology_free(t);
        }
    }

    #[test]
    fn step_advances_random_stream() {
        let t = lattice(5, McaNeighborhood::Neumann, true);
        unsafe {
            let mut g = ptr::null_mut();
            assert_eq!(mca_generation_new_random(t, 0.5, 1, &mut g), McaStatus::Ok);
            let mut rule = ptr::null_mut();
            assert_eq!(mca_rule_new(McaRule::RandomMajority, 9, &mut rule), McaStatus::Ok);
            let mut next = ptr::null_mut();
            assert_eq!(mca_step(t, rule, g, &mut next), McaStatus::Ok);
            assert_eq!(mca_generation_len(next), 25);
            mca_generation_free(next);
            mca_generation_free(g);
            mca_rule_free(rule);
            mca_topology_free(t);
        }
    }

    #[test]
    fn rectangulate_through_the_abi() {
        let t = lattice(10, McaNeighborhood::Neumann, true);
        let input = [
            McaRectangle { anchor_i: 0, anchor_j: 0, rows: 1, cols: 1 },
            McaRectangle { anchor_i: 0, anchor_j: 2, rows: 1, cols: 1 },
            McaRectangle { anchor_i: 0, anchor_j: 4, rows: 1, cols: 1 },
        ];
        let mut out = [McaRectangle { anchor_i: 0, anchor_j: 0, rows: 0, cols: 0 }; 3];
        let mut out_len = 0u64;
        unsafe {
            assert_eq!(
                mca_rectangulate(t, input.as_ptr(), 3, out.as_mut_ptr(), 3, &mut out_len),
                McaStatus::Ok
            );
            assert_eq!(out_len, 1);
            assert_eq!(out[0], McaRectangle { anchor_i: 0, anchor_j: 0, rows: 1, cols: 5 });
            let mut d = 0u64;
            assert_eq!(
                mca_rectangle_distance(t, input[0], input[1], &mut d),
                McaStatus::Ok
            );
            assert_eq!(d, 1);
            mca_topology_free(t);
        }
    }

    #[test]
    fn survival_bounds_via_abi() {
        unsafe {
            let mut v = 0.0f64;
            assert_eq!(
                mca_survival_bound_disjoint(100, 2, 0.1, &mut v),
                McaStatus::Ok
            );
            assert!((v - (-1.0f64).exp()).abs() < 1e-12);
            let ones = [1u64; 400];
            assert_eq!(
                mca_survival_bound_azuma(100, 2, 0.5, ones.as_ptr(), 400, &mut v),
                McaStatus::Ok
            );
            assert!((v - (-0.78125f64).exp()).abs() < 1e-12);
            assert_eq!(
                mca_survival_bound_disjoint(0, 2, 0.1, &mut v),
                McaStatus::InvalidArgument
            );
        }
    }

    #[test]
    fn status_names_are_stable() {
        unsafe {
            let name = std::ffi::CStr::from_ptr(mca_status_name(McaStatus::Ok));
            assert_eq!(name.to_str().unwrap(), "ok");
            let name = std::ffi::CStr::from_ptr(mca_status_name(McaStatus::InstanceTooLarge));
            assert_eq!(name.to_str().unwrap(), "instance too large");
        }
    }
}
