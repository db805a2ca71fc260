//! The synchronous update engine: one step of any of the four local rules,
//! iteration until a period-1 or period-2 cycle is detected, and outcome
//! classification.
//!
//! Generations are value-semantic; [`step`] never mutates its input. The
//! deterministic rules (majority, biased majority, conservative majority) are
//! pure functions of `(Topology, Generation)` and always reach a cycle of
//! length one or two; random majority carries its own seeded tie-break stream
//! and is capped by a step budget instead.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::rng::SplitMix64;
use crate::topology::Topology;
use crate::ParseError;

/// Vertex color. Serialized as `B` / `R`, matching the generation files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "B")]
    Blue,
    #[serde(rename = "R")]
    Red,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Blue => Color::Red,
            Color::Red => Color::Blue,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Color::Blue => 'B',
            Color::Red => 'R',
        }
    }
}

/// Which local rule drives the step function.
///
/// `RandomMajority` owns its tie-break stream: each tie consumes one
/// splitmix64 output, in vertex index order within a step, and the top bit
/// picks blue. Everything else is a pure function of the inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UpdateRule {
    /// Strict neighbor majority; a tie keeps the vertex's current color.
    Majority,
    /// Strict neighbor majority; a tie always yields blue.
    BiasedMajority,
    /// Strict neighbor majority; a tie is resolved by a fair coin from the
    /// carried stream.
    RandomMajority(SplitMix64),
    /// Majority over the closed neighborhood (the vertex votes too); a tie
    /// keeps the current color.
    ConservativeMajority,
}

impl UpdateRule {
    pub fn random(seed: u64) -> Self {
        UpdateRule::RandomMajority(SplitMix64::new(seed))
    }

    pub fn kind(&self) -> RuleKind {
        match self {
            UpdateRule::Majority => RuleKind::Majority,
            UpdateRule::BiasedMajority => RuleKind::Biased,
            UpdateRule::RandomMajority(_) => RuleKind::Random,
            UpdateRule::ConservativeMajority => RuleKind::Conservative,
        }
    }

    pub fn is_deterministic(&self) -> bool {
        !matches!(self, UpdateRule::RandomMajority(_))
    }
}

/// Rule selector without runtime state, for configs, CSV rows, and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleKind {
    Majority,
    Biased,
    Random,
    Conservative,
}

impl RuleKind {
    /// Instantiates the runtime rule; `seed` feeds the tie-break stream and
    /// is ignored by the deterministic rules.
    pub fn instantiate(self, seed: u64) -> UpdateRule {
        match self {
            RuleKind::Majority => UpdateRule::Majority,
            RuleKind::Biased => UpdateRule::BiasedMajority,
            RuleKind::Random => UpdateRule::random(seed),
            RuleKind::Conservative => UpdateRule::ConservativeMajority,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RuleKind::Majority => "majority",
            RuleKind::Biased => "biased",
            RuleKind::Random => "random",
            RuleKind::Conservative => "conservative",
        }
    }
}

impl std::fmt::Display for RuleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("generation has {generation} vertices but topology has {topology}")]
    SizeMismatch { generation: usize, topology: usize },
    #[error("a generation must contain at least one vertex")]
    EmptyGeneration,
    #[error("max_steps must be positive")]
    ZeroStepBudget,
    #[error(
        "no cycle detected within {budget} steps under a deterministic rule; \
         this indicates a bug, since every such run must reach a cycle of \
         period one or two"
    )]
    CycleNotDetected { budget: usize },
}

/// One coloring of all vertices, bit-packed with one bit per vertex
/// (set = blue). The packing never leaks into file formats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generation {
    len: usize,
    words: Vec<u64>,
}

impl Generation {
    /// All vertices of `topology` set to `color`.
    pub fn uniform(topology: &Topology, color: Color) -> Self {
        let len = topology.vertex_count();
        let mut g = Self {
            len,
            words: vec![0u64; len.div_ceil(64)],
        };
        if color == Color::Blue {
            for w in &mut g.words {
                *w = u64::MAX;
            }
            g.mask_tail();
        }
        g
    }

    pub fn from_colors(colors: &[Color]) -> Result<Self, DynamicsError> {
        if colors.is_empty() {
            return Err(DynamicsError::EmptyGeneration);
        }
        let mut g = Self {
            len: colors.len(),
            words: vec![0u64; colors.len().div_ceil(64)],
        };
        for (v, &c) in colors.iter().enumerate() {
            if c == Color::Blue {
                g.set(v, Color::Blue);
            }
        }
        Ok(g)
    }

    fn mask_tail(&mut self) {
        let tail = self.len % 64;
        if tail != 0 {
            *self.words.last_mut().unwrap() &= (1u64 << tail) - 1;
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn is_blue(&self, v: usize) -> bool {
        debug_assert!(v < self.len);
        (self.words[v / 64] >> (v % 64)) & 1 == 1
    }

    #[inline]
    pub fn get(&self, v: usize) -> Color {
        if self.is_blue(v) {
            Color::Blue
        } else {
            Color::Red
        }
    }

    pub fn set(&mut self, v: usize, color: Color) {
        debug_assert!(v < self.len);
        let mask = 1u64 << (v % 64);
        match color {
            Color::Blue => self.words[v / 64] |= mask,
            Color::Red => self.words[v / 64] &= !mask,
        }
    }

    pub fn blue_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of all blue vertices, ascending.
    pub fn blue_vertices(&self) -> Vec<usize> {
        (0..self.len).filter(|&v| self.is_blue(v)).collect()
    }

    /// Every color flipped.
    pub fn color_swapped(&self) -> Self {
        let mut g = Self {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        g.mask_tail();
        g
    }

    pub fn classify(&self) -> Classification {
        let blue = self.blue_count();
        if blue == self.len {
            Classification::BMonochromatic
        } else if blue == 0 {
            Classification::RMonochromatic
        } else {
            Classification::Bichromatic
        }
    }

    /// Text form: `n` lines of `n` characters from `{B, R}` for an n-by-n
    /// lattice (row i on line i), a single line otherwise. LF endings, no
    /// trailing whitespace.
    pub fn to_text(&self, topology: &Topology) -> String {
        let row_len = match topology.lattice_meta() {
            Some(meta) => meta.side,
            None => self.len,
        };
        let mut out = String::with_capacity(self.len + self.len / row_len);
        for v in 0..self.len {
            out.push(self.get(v).to_char());
            if (v + 1) % row_len == 0 {
                out.push('\n');
            }
        }
        out
    }

    /// Parses the format written by [`Self::to_text`], validating shape
    /// against `topology`.
    pub fn parse(text: &str, topology: &Topology) -> Result<Self, ParseError> {
        let (rows, row_len) = match topology.lattice_meta() {
            Some(meta) => (meta.side, meta.side),
            None => (1, topology.vertex_count()),
        };
        let mut colors = Vec::with_capacity(topology.vertex_count());
        let mut line_count = 0usize;
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            line_count += 1;
            if line_count > rows {
                return Err(ParseError::at_line(lineno, "unexpected extra line"));
            }
            let mut row_chars = 0usize;
            for (col, ch) in line.chars().enumerate() {
                match ch {
                    'B' => colors.push(Color::Blue),
                    'R' => colors.push(Color::Red),
                    _ => {
                        return Err(ParseError::at(
                            lineno,
                            col + 1,
                            format!("invalid character `{}` (expected B or R)", ch.escape_debug()),
                        ))
                    }
                }
                row_chars += 1;
            }
            if row_chars != row_len {
                return Err(ParseError::at_line(
                    lineno,
                    format!("expected {row_len} characters, found {row_chars}"),
                ));
            }
        }
        if line_count < rows {
            return Err(ParseError::new(format!(
                "expected {rows} lines, found {line_count}"
            )));
        }
        Self::from_colors(&colors).map_err(|e| ParseError::new(e.to_string()))
    }
}

/// Final classification of a generation or of a whole run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    #[serde(rename = "b-monochromatic")]
    BMonochromatic,
    #[serde(rename = "r-monochromatic")]
    RMonochromatic,
    #[serde(rename = "bichromatic")]
    Bichromatic,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::BMonochromatic => "b-monochromatic",
            Classification::RMonochromatic => "r-monochromatic",
            Classification::Bichromatic => "bichromatic",
        })
    }
}

/// Detected cycle length. Deterministic rules always resolve to one or two;
/// `Unresolved` only occurs when a random-majority run hits its step budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Period {
    One,
    Two,
    Unresolved,
}

impl Serialize for Period {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Period::One => serializer.serialize_u8(1),
            Period::Two => serializer.serialize_u8(2),
            Period::Unresolved => serializer.serialize_str("unresolved"),
        }
    }
}

impl std::fmt::Display for Period {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Period::One => f.write_str("1"),
            Period::Two => f.write_str("2"),
            Period::Unresolved => f.write_str("unresolved"),
        }
    }
}

/// Result of iterating a rule to its cycle (or to the step budget).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    /// Steps until the first generation that lies on the detected cycle;
    /// zero when the initial generation is already on it. Equals
    /// `steps_executed` for unresolved runs.
    pub consensus_time: usize,
    pub period: Period,
    pub classification: Classification,
    /// Blue count of the last generation computed.
    pub final_blue_count: usize,
    pub steps_executed: usize,
}

impl Serialize for RunOutcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RunOutcome", 5)?;
        s.serialize_field("consensus_time", &self.consensus_time)?;
        s.serialize_field("period", &self.period)?;
        s.serialize_field("classification", &self.classification)?;
        s.serialize_field("final_blue_count", &self.final_blue_count)?;
        s.serialize_field("steps_executed", &self.steps_executed)?;
        s.end()
    }
}

impl std::fmt::Display for RunOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "consensus_time={}, period={}, classification={}, final_blue_count={}, steps_executed={}",
            self.consensus_time,
            self.period,
            self.classification,
            self.final_blue_count,
            self.steps_executed
        )
    }
}

/// Applies one synchronous step of `rule` to `generation` on `topology`.
///
/// Tie semantics are exact integer comparisons of neighbor counts; no
/// floating point is involved anywhere.
pub fn step(
    topology: &Topology,
    rule: &mut UpdateRule,
    generation: &Generation,
) -> Result<Generation, DynamicsError> {
    if generation.len() != topology.vertex_count() {
        return Err(DynamicsError::SizeMismatch {
            generation: generation.len(),
            topology: topology.vertex_count(),
        });
    }
    let n = generation.len();
    let mut next = Generation {
        len: n,
        words: vec![0u64; generation.words.len()],
    };
    for v in 0..n {
        let degree = topology.degree(v);
        let blue = topology
            .neighbors(v)
            .iter()
            .filter(|&&u| generation.is_blue(u as usize))
            .count();
        let red = degree - blue;
        let out = match rule {
            UpdateRule::Majority => match blue.cmp(&red) {
                std::cmp::Ordering::Greater => Color::Blue,
                std::cmp::Ordering::Less => Color::Red,
                std::cmp::Ordering::Equal => generation.get(v),
            },
            UpdateRule::BiasedMajority => {
                if blue >= red {
                    Color::Blue
                } else {
                    Color::Red
                }
            }
            UpdateRule::RandomMajority(rng) => match blue.cmp(&red) {
                std::cmp::Ordering::Greater => Color::Blue,
                std::cmp::Ordering::Less => Color::Red,
                std::cmp::Ordering::Equal => {
                    if rng.next_bool() {
                        Color::Blue
                    } else {
                        Color::Red
                    }
                }
            },
            UpdateRule::ConservativeMajority => {
                let blue_hat = blue + usize::from(generation.is_blue(v));
                let red_hat = degree + 1 - blue_hat;
                match blue_hat.cmp(&red_hat) {
                    std::cmp::Ordering::Greater => Color::Blue,
                    std::cmp::Ordering::Less => Color::Red,
                    std::cmp::Ordering::Equal => generation.get(v),
                }
            }
        };
        if out == Color::Blue {
            next.words[v / 64] |= 1u64 << (v % 64);
        }
    }
    Ok(next)
}

/// Default step budget: the consensus-time bound `|E| + |V|` plus the two
/// steps needed to witness the cycle.
pub fn auto_step_budget(topology: &Topology) -> usize {
    topology.edge_count() + topology.vertex_count() + 2
}

/// Iterates `rule` from `initial` until a period-1 or period-2 cycle is
/// detected, or the budget runs out.
///
/// `max_steps = None` means the automatic budget of [`auto_step_budget`].
/// Exhausting the budget is a hard error for deterministic rules (they are
/// guaranteed to cycle within it) and yields an unresolved outcome for
/// random majority.
pub fn run_to_cycle(
    topology: &Topology,
    rule: &mut UpdateRule,
    initial: &Generation,
    max_steps: Option<usize>,
) -> Result<RunOutcome, DynamicsError> {
    run_to_cycle_observed(topology, rule, initial, max_steps, |_, _| {})
}

/// [`run_to_cycle`] with a callback invoked for every generation: the
/// initial one at step 0 and each computed generation after it.
pub fn run_to_cycle_observed(
    topology: &Topology,
    rule: &mut UpdateRule,
    initial: &Generation,
    max_steps: Option<usize>,
    mut observe: impl FnMut(usize, &Generation),
) -> Result<RunOutcome, DynamicsError> {
    let budget = match max_steps {
        Some(0) => return Err(DynamicsError::ZeroStepBudget),
        Some(b) => b,
        None => auto_step_budget(topology),
    };
    let mut before_prev: Option<Generation> = None;
    let mut prev = initial.clone();
    observe(0, &prev);
    for k in 1..=budget {
        let current = step(topology, rule, &prev)?;
        observe(k, &current);
        if current == prev {
            return Ok(RunOutcome {
                consensus_time: k - 1,
                period: Period::One,
                classification: current.classify(),
                final_blue_count: current.blue_count(),
                steps_executed: k,
            });
        }
        if before_prev.as_ref() == Some(&current) {
            // A two-cycle never consists of a monochromatic generation:
            // monochromatic states are fixed points of every deterministic
            // rule on these graphs.
            return Ok(RunOutcome {
                consensus_time: k - 2,
                period: Period::Two,
                classification: Classification::Bichromatic,
                final_blue_count: current.blue_count(),
                steps_executed: k,
            });
        }
        before_prev = Some(prev);
        prev = current;
    }
    if rule.is_deterministic() {
        Err(DynamicsError::CycleNotDetected { budget })
    } else {
        Ok(RunOutcome {
            consensus_time: budget,
            period: Period::Unresolved,
            classification: prev.classify(),
            final_blue_count: prev.blue_count(),
            steps_executed: budget,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::NeighborhoodKind;

    fn torus(n: usize, kind: NeighborhoodKind) -> Topology {
        Topology::lattice(n, kind, true).unwrap()
    }

    fn blue_cells(t: &Topology, cells: &[(usize, usize)]) -> Generation {
        let mut g = Generation::uniform(t, Color::Red);
        for &(i, j) in cells {
            g.set(t.cell_index(i, j), Color::Blue);
        }
        g
    }

    #[test]
    fn two_by_two_block_is_a_fixed_point() {
        let t = torus(8, NeighborhoodKind::Neumann);
        let g = blue_cells(&t, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        let next = step(&t, &mut UpdateRule::Majority, &g).unwrap();
        assert_eq!(next, g);
    }

    #[test]
    fn single_blue_cell_dies_in_one_step() {
        let t = torus(6, NeighborhoodKind::Neumann);
        let g = blue_cells(&t, &[(2, 3)]);
        let next = step(&t, &mut UpdateRule::Majority, &g).unwrap();
        assert_eq!(next.classify(), Classification::RMonochromatic);
    }

    #[test]
    fn biased_tie_turns_diagonal_gap_cells_blue() {
        let t = torus(6, NeighborhoodKind::Neumann);
        let g = blue_cells(&t, &[(0, 0), (1, 1)]);
        let next = step(&t, &mut UpdateRule::BiasedMajority, &g).unwrap();
        let expected = blue_cells(&t, &[(0, 1), (1, 0)]);
        assert_eq!(next, expected);
    }

    #[test]
    fn monochromatic_generations_absorb() {
        let t = torus(5, NeighborhoodKind::Neumann);
        for color in [Color::Blue, Color::Red] {
            let g = Generation::uniform(&t, color);
            for rule in [
                UpdateRule::Majority,
                UpdateRule::ConservativeMajority,
                UpdateRule::BiasedMajority,
            ] {
                // All-red under biased majority is a fixed point here: with
                // degree 4 and zero blue neighbors there is no tie.
                let mut rule = rule;
                assert_eq!(step(&t, &mut rule, &g).unwrap(), g);
            }
        }
    }

    #[test]
    fn biased_turns_isolated_vertices_blue() {
        let t = Topology::from_edges(3, &[(0, 1)]).unwrap();
        let g = Generation::uniform(&t, Color::Red);
        let next = step(&t, &mut UpdateRule::BiasedMajority, &g).unwrap();
        assert!(next.is_blue(2));
        assert!(!next.is_blue(0) && !next.is_blue(1));
    }

    #[test]
    fn conservative_counts_own_vote() {
        // Path 0-1-2 with only vertex 1 blue. Plain majority spreads blue to
        // the endpoints (their sole neighbor is blue); conservative majority
        // kills it: the endpoints see one blue and one red (themselves) and
        // the closed-neighborhood tie keeps them red.
        let t = Topology::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let mut g = Generation::uniform(&t, Color::Red);
        g.set(1, Color::Blue);
        let spread = step(&t, &mut UpdateRule::Majority, &g).unwrap();
        assert_eq!(spread.blue_vertices(), vec![0, 2]);
        let next = step(&t, &mut UpdateRule::ConservativeMajority, &g).unwrap();
        assert_eq!(next.classify(), Classification::RMonochromatic);
    }

    #[test]
    fn deterministic_step_is_reproducible() {
        let t = torus(7, NeighborhoodKind::Moore);
        let g = blue_cells(&t, &[(0, 0), (2, 3), (3, 3), (3, 4), (6, 6), (5, 1)]);
        let a = step(&t, &mut UpdateRule::Majority, &g).unwrap();
        let b = step(&t, &mut UpdateRule::Majority, &g).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_rule_consumes_its_stream_only_on_ties() {
        let t = torus(4, NeighborhoodKind::Neumann);
        // No ties: monochromatic input. The stream must stay untouched.
        let mut rule = UpdateRule::random(7);
        let g = Generation::uniform(&t, Color::Red);
        step(&t, &mut rule, &g).unwrap();
        assert_eq!(rule, UpdateRule::random(7));
    }

    #[test]
    fn run_all_red_is_consensus_time_zero() {
        let t = torus(5, NeighborhoodKind::Neumann);
        let g = Generation::uniform(&t, Color::Red);
        let out = run_to_cycle(&t, &mut UpdateRule::Majority, &g, None).unwrap();
        assert_eq!(out.consensus_time, 0);
        assert_eq!(out.period, Period::One);
        assert_eq!(out.classification, Classification::RMonochromatic);
    }

    #[test]
    fn alternating_four_cycle_has_period_two() {
        let t = Topology::cycle(4).unwrap();
        let g = Generation::from_colors(&[Color::Blue, Color::Red, Color::Blue, Color::Red])
            .unwrap();
        let out = run_to_cycle(&t, &mut UpdateRule::Majority, &g, None).unwrap();
        assert_eq!(out.consensus_time, 0);
        assert_eq!(out.period, Period::Two);
        assert_eq!(out.classification, Classification::Bichromatic);
    }

    #[test]
    fn single_blue_cell_run_outcome() {
        let t = torus(6, NeighborhoodKind::Neumann);
        let g = blue_cells(&t, &[(0, 0)]);
        let out = run_to_cycle(&t, &mut UpdateRule::Majority, &g, None).unwrap();
        assert_eq!(out.consensus_time, 1);
        assert_eq!(out.period, Period::One);
        assert_eq!(out.classification, Classification::RMonochromatic);
        assert_eq!(out.final_blue_count, 0);
    }

    #[test]
    fn exhausted_budget_is_a_hard_error_for_deterministic_rules() {
        let t = torus(6, NeighborhoodKind::Neumann);
        let g = blue_cells(&t, &[(0, 0)]);
        let err = run_to_cycle(&t, &mut UpdateRule::Majority, &g, Some(1)).unwrap_err();
        assert_eq!(err, DynamicsError::CycleNotDetected { budget: 1 });
        assert_eq!(
            run_to_cycle(&t, &mut UpdateRule::Majority, &g, Some(0)).unwrap_err(),
            DynamicsError::ZeroStepBudget
        );
    }

    #[test]
    fn random_run_reports_unresolved_at_the_cap() {
        // Alternating colors on C4 tie nowhere, so the random rule behaves
        // like majority and flips forever; but from a tie-heavy start on C3
        // the budget can expire without a detected cycle.
        let t = Topology::cycle(3).unwrap();
        let g = Generation::from_colors(&[Color::Blue, Color::Red, Color::Red]).unwrap();
        // Every vertex of C3 sees one blue and one red at some point; with a
        // one-step budget the cycle cannot be witnessed.
        let out = run_to_cycle(&t, &mut UpdateRule::random(1), &g, Some(1)).unwrap();
        assert_eq!(out.period, Period::Unresolved);
        assert_eq!(out.steps_executed, 1);
    }

    #[test]
    fn classify_examples() {
        let t = torus(3, NeighborhoodKind::Neumann);
        assert_eq!(
            Generation::uniform(&t, Color::Blue).classify(),
            Classification::BMonochromatic
        );
        assert_eq!(
            Generation::uniform(&t, Color::Red).classify(),
            Classification::RMonochromatic
        );
        let mut g = Generation::uniform(&t, Color::Red);
        g.set(4, Color::Blue);
        assert_eq!(g.classify(), Classification::Bichromatic);
        assert_eq!(
            Generation::from_colors(&[]).unwrap_err(),
            DynamicsError::EmptyGeneration
        );
    }

    #[test]
    fn size_mismatch_is_rejected() {
        let t = torus(4, NeighborhoodKind::Neumann);
        let g = Generation::from_colors(&[Color::Red; 9]).unwrap();
        assert_eq!(
            step(&t, &mut UpdateRule::Majority, &g).unwrap_err(),
            DynamicsError::SizeMismatch {
                generation: 9,
                topology: 16
            }
        );
    }

    #[test]
    fn text_round_trip_on_lattice_and_cycle() {
        let t = torus(4, NeighborhoodKind::Neumann);
        let g = blue_cells(&t, &[(0, 0), (3, 2), (1, 1)]);
        let text = g.to_text(&t);
        assert_eq!(text.lines().count(), 4);
        assert!(text.ends_with('\n') && !text.contains(' '));
        assert_eq!(Generation::parse(&text, &t).unwrap(), g);

        let c = Topology::cycle(5).unwrap();
        let g = Generation::from_colors(&[
            Color::Blue,
            Color::Red,
            Color::Red,
            Color::Blue,
            Color::Red,
        ])
        .unwrap();
        let text = g.to_text(&c);
        assert_eq!(text, "BRRBR\n");
        assert_eq!(Generation::parse(&text, &c).unwrap(), g);
    }

    #[test]
    fn parse_diagnostics() {
        let t = torus(3, NeighborhoodKind::Neumann);
        let err = Generation::parse("RRR\nRxR\nRRR\n", &t).unwrap_err();
        assert_eq!((err.line, err.column), (Some(2), Some(2)));
        let err = Generation::parse("RRR\nRR\nRRR\n", &t).unwrap_err();
        assert_eq!(err.line, Some(2));
        let err = Generation::parse("RRR\nRRR\n", &t).unwrap_err();
        assert_eq!(err.line, None);
        let err = Generation::parse("RRR\nRRR\nRRR\nRRR\n", &t).unwrap_err();
        assert_eq!(err.line, Some(4));
        // Trailing whitespace is an invalid character.
        let err = Generation::parse("RRR \nRRR\nRRR\n", &t).unwrap_err();
        assert_eq!((err.line, err.column), (Some(1), Some(4)));
    }
}
