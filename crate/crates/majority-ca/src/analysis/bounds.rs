//! Closed-form calculators: survival probability bounds for collections of
//! eternal sets, worst-case consensus-time bounds, and the phase-transition
//! threshold densities.
//!
//! These are pure arithmetic over the supplied parameters; they never inspect
//! a generation. Callers provide `k`, `s`, and the multiplicity list from
//! their own constructions.

use serde::{Deserialize, Serialize};

use super::AnalysisError;
use crate::dynamics::RuleKind;
use crate::topology::{NeighborhoodKind, Topology};

/// Which survival bound to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurvivalKind {
    /// `exp(-k * p_b^s)` for k pairwise disjoint eternal sets of size <= s.
    Disjoint,
    /// `exp(-k^2 * p_b^(2s) / (2 * sum a_i^2))` for overlapping sets, where
    /// `a_i` counts the sets containing vertex i.
    Azuma,
}

impl std::fmt::Display for SurvivalKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SurvivalKind::Disjoint => "disjoint",
            SurvivalKind::Azuma => "azuma",
        })
    }
}

/// A computed bound together with the inputs it was computed from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BoundReport {
    /// Upper bound on the probability that the run ends all-red.
    Survival {
        kind: SurvivalKind,
        k: u64,
        s: u32,
        p_b: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        multiplicities: Option<Vec<u64>>,
        bound: f64,
    },
    /// Worst-case number of steps before the run is on its cycle.
    ConsensusTime {
        rule: RuleKind,
        edges: usize,
        vertices: usize,
        bound: usize,
    },
}

impl BoundReport {
    pub fn value(&self) -> f64 {
        match self {
            BoundReport::Survival { bound, .. } => *bound,
            BoundReport::ConsensusTime { bound, .. } => *bound as f64,
        }
    }
}

/// Upper bound on `Pr[r-monochromatic]` given `k` blue-eternal sets of size
/// at most `s` and an initial blue density `p_b`.
///
/// The `azuma` variant admits overlapping sets and needs `multiplicities`,
/// the per-vertex count of sets containing each vertex.
pub fn survival_bound(
    kind: SurvivalKind,
    k: u64,
    s: u32,
    p_b: f64,
    multiplicities: Option<&[u64]>,
) -> Result<BoundReport, AnalysisError> {
    if k == 0 {
        return Err(AnalysisError::InvalidParameter("k must be >= 1".into()));
    }
    if s == 0 {
        return Err(AnalysisError::InvalidParameter("s must be >= 1".into()));
    }
    if !(0.0..=1.0).contains(&p_b) {
        return Err(AnalysisError::InvalidProbability(p_b));
    }
    let (bound, echoed) = match kind {
        SurvivalKind::Disjoint => ((-(k as f64) * p_b.powi(s as i32)).exp(), None),
        SurvivalKind::Azuma => {
            let a = multiplicities.ok_or(AnalysisError::MissingMultiplicities)?;
            if a.is_empty() {
                return Err(AnalysisError::MissingMultiplicities);
            }
            let sum_sq: f64 = a.iter().map(|&x| (x as f64) * (x as f64)).sum();
            if sum_sq == 0.0 {
                return Err(AnalysisError::InvalidParameter(
                    "multiplicities must not be all zero".into(),
                ));
            }
            let exponent = (k as f64).powi(2) * p_b.powi(2 * s as i32) / (2.0 * sum_sq);
            ((-exponent).exp(), Some(a.to_vec()))
        }
    };
    Ok(BoundReport::Survival {
        kind,
        k,
        s,
        p_b,
        multiplicities: echoed,
        bound,
    })
}

/// Worst-case consensus time: `|E|` under majority, `|E| + |V|` under biased
/// majority. No bound is available for the other rules.
pub fn consensus_time_bound(t: &Topology, rule: RuleKind) -> Result<BoundReport, AnalysisError> {
    let (edges, vertices) = (t.edge_count(), t.vertex_count());
    let bound = match rule {
        RuleKind::Majority => edges,
        RuleKind::Biased => edges + vertices,
        other => return Err(AnalysisError::UnsupportedRule(other)),
    };
    Ok(BoundReport::ConsensusTime {
        rule,
        edges,
        vertices,
        bound,
    })
}

/// The two phase-transition densities `(p1, p2)` for a side-n torus: below
/// `p1` blue dies out, above `p2` blue takes over, and strictly between them
/// both colors coexist, all with probability approaching one as n grows.
///
/// Biased majority with Neumann neighborhood uses `1 / sqrt(ln n)` for `p2`
/// (natural logarithm). No values are established for biased majority with
/// Moore neighborhood.
pub fn threshold_values(
    rule: RuleKind,
    kind: NeighborhoodKind,
    n: usize,
) -> Result<(f64, f64), AnalysisError> {
    if n < 3 {
        return Err(AnalysisError::InvalidParameter(format!(
            "side must be >= 3 (got {n})"
        )));
    }
    let side = n as f64;
    match (rule, kind) {
        (RuleKind::Majority, NeighborhoodKind::Neumann) => {
            let p = side.powf(-0.5);
            Ok((p, 1.0 - p))
        }
        (RuleKind::Majority, NeighborhoodKind::Moore) => {
            let p = side.powf(-1.0 / 6.0);
            Ok((p, 1.0 - p))
        }
        (RuleKind::Biased, NeighborhoodKind::Neumann) => {
            Ok((side.recip(), side.ln().sqrt().recip()))
        }
        (RuleKind::Biased, NeighborhoodKind::Moore) => Err(AnalysisError::ThresholdsNotEstablished),
        (other, _) => Err(AnalysisError::UnsupportedRule(other)),
    }
}
