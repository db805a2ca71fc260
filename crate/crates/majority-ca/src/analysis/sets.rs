//! Robust and eternal vertex-set verification.
//!
//! A set is *c-robust* when, once all its members hold color `c`, they keep
//! `c` forever no matter what the rest of the graph does; it is *c-eternal*
//! when color `c` merely survives somewhere forever. Robustness reduces to a
//! per-vertex worst-case check (every outside neighbor assumed hostile);
//! eternality is decided by exhaustive simulation over all colorings of the
//! outside vertices, which caps the tractable instance size.

use rayon::prelude::*;

use super::AnalysisError;
use crate::dynamics::{step, Color, Generation, RuleKind};
use crate::topology::Topology;
use crate::ParseError;

fn membership(t: &Topology, s: &[usize]) -> Result<Vec<bool>, AnalysisError> {
    if s.is_empty() {
        return Err(AnalysisError::EmptySet);
    }
    let mut in_set = vec![false; t.vertex_count()];
    for &v in s {
        if v >= t.vertex_count() {
            return Err(AnalysisError::VertexOutOfRange {
                vertex: v,
                vertex_count: t.vertex_count(),
            });
        }
        in_set[v] = true;
    }
    Ok(in_set)
}

/// Decides whether `s` is robust for `color` under the majority or biased
/// majority rule.
///
/// The check is the one-step worst case: every vertex of `s` must keep
/// `color` even when all its neighbors outside `s` hold the opposite color.
/// Under majority (either color) and under biased majority for blue that is
/// `2 * |N(v) ∩ s| >= |N(v)|`; biased majority for red needs the strict
/// inequality because ties defect to blue. Threshold updates are monotone,
/// so the one-step worst case is equivalent to permanence.
pub fn is_robust_set(
    t: &Topology,
    rule: RuleKind,
    s: &[usize],
    color: Color,
) -> Result<bool, AnalysisError> {
    let strict = match (rule, color) {
        (RuleKind::Majority, _) | (RuleKind::Biased, Color::Blue) => false,
        (RuleKind::Biased, Color::Red) => true,
        (other, _) => return Err(AnalysisError::UnsupportedRule(other)),
    };
    let in_set = membership(t, s)?;
    Ok(s.iter().all(|&v| {
        let degree = t.degree(v);
        let inside = t
            .neighbors(v)
            .iter()
            .filter(|&&u| in_set[u as usize])
            .count();
        if strict {
            2 * inside > degree
        } else {
            2 * inside >= degree
        }
    }))
}

/// Decides whether `s` is eternal for `color` under the majority or biased
/// majority rule, by simulating every coloring of the vertices outside `s`.
///
/// `budget` caps `|V \ s|`; the check runs `2^{|V \ s|}` simulations, so
/// anything much beyond 24 outside vertices is impractical. Exceeding the
/// cap is an explicit error, never a silent approximation.
pub fn is_eternal_set(
    t: &Topology,
    rule: RuleKind,
    s: &[usize],
    color: Color,
    budget: usize,
) -> Result<bool, AnalysisError> {
    if !matches!(rule, RuleKind::Majority | RuleKind::Biased) {
        return Err(AnalysisError::UnsupportedRule(rule));
    }
    let in_set = membership(t, s)?;
    let outside: Vec<usize> = (0..t.vertex_count()).filter(|&v| !in_set[v]).collect();
    if outside.len() > budget.min(63) {
        return Err(AnalysisError::InstanceTooLarge {
            outside: outside.len(),
            cap: budget.min(63),
        });
    }
    let colorings = 1u64 << outside.len();
    let survives = (0..colorings).into_par_iter().try_for_each(|mask| {
        let mut g = Generation::uniform(t, color.opposite());
        for &v in s {
            g.set(v, color);
        }
        for (bit, &v) in outside.iter().enumerate() {
            if (mask >> bit) & 1 == 1 {
                g.set(v, color);
            }
        }
        match color_survives_run(t, rule, g, color) {
            Ok(true) => Ok(()),
            Ok(false) => Err(None),
            Err(e) => Err(Some(e)),
        }
    });
    match survives {
        Ok(()) => Ok(true),
        Err(None) => Ok(false),
        Err(Some(e)) => Err(e),
    }
}

/// Runs to the (guaranteed) cycle and reports whether `color` is present in
/// every generation seen, the cycle included.
fn color_survives_run(
    t: &Topology,
    rule: RuleKind,
    initial: Generation,
    color: Color,
) -> Result<bool, AnalysisError> {
    let color_present = |g: &Generation| match color {
        Color::Blue => g.blue_count() > 0,
        Color::Red => g.blue_count() < g.len(),
    };
    let mut update = rule.instantiate(0);
    let budget = crate::dynamics::auto_step_budget(t);
    let mut before_prev: Option<Generation> = None;
    let mut prev = initial;
    if !color_present(&prev) {
        return Ok(false);
    }
    for _ in 0..budget {
        let current = step(t, &mut update, &prev)?;
        if !color_present(&current) {
            return Ok(false);
        }
        if current == prev || before_prev.as_ref() == Some(&current) {
            return Ok(true);
        }
        before_prev = Some(prev);
        prev = current;
    }
    Err(crate::dynamics::DynamicsError::CycleNotDetected { budget }.into())
}

/// Parses a pattern file: the generation grid format with `.` for cells
/// outside the set. The selected cells must all carry one color.
///
/// Returns the sorted cell indices and their color.
pub fn parse_pattern(text: &str, t: &Topology) -> Result<(Vec<usize>, Color), ParseError> {
    let (rows, row_len) = match t.lattice_meta() {
        Some(meta) => (meta.side, meta.side),
        None => (1, t.vertex_count()),
    };
    let mut cells = Vec::new();
    let mut set_color: Option<Color> = None;
    let mut line_count = 0usize;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        line_count += 1;
        if line_count > rows {
            return Err(ParseError::at_line(lineno, "unexpected extra line"));
        }
        let mut row_chars = 0usize;
        for (col, ch) in line.chars().enumerate() {
            let v = (lineno - 1) * row_len + col;
            let color = match ch {
                'B' => Some(Color::Blue),
                'R' => Some(Color::Red),
                '.' => None,
                _ => {
                    return Err(ParseError::at(
                        lineno,
                        col + 1,
                        format!(
                            "invalid character `{}` (expected B, R, or .)",
                            ch.escape_debug()
                        ),
                    ))
                }
            };
            if let Some(c) = color {
                match set_color {
                    None => set_color = Some(c),
                    Some(existing) if existing != c => {
                        return Err(ParseError::at(
                            lineno,
                            col + 1,
                            "pattern mixes colors; a set must be monochromatic",
                        ))
                    }
                    _ => {}
                }
                cells.push(v);
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
    match set_color {
        Some(color) => Ok((cells, color)),
        None => Err(ParseError::new("pattern selects no cells")),
    }
}
