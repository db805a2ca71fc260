//! Reproducible Monte-Carlo experiments: seeded random initial generations,
//! independent trials, and density sweeps.
//!
//! Determinism contract: vertex `k` of a random generation is blue iff the
//! k-th splitmix64 output of the generation's stream, mapped to `[0, 1)` via
//! its top 53 bits, is below `p_b`. Trial seeds are derived as
//! `mix(base_seed ^ trial_index ^ mix(p_b.to_bits()))`, and a random-majority
//! rule inside a trial draws its tie stream from `mix(trial_seed)`. Identical
//! configs therefore produce byte-identical sweep CSVs, regardless of how
//! trials are scheduled across threads.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::dynamics::{run_to_cycle, Classification, DynamicsError, Generation, RuleKind, RunOutcome};
use crate::rng::{mix, SplitMix64};
use crate::topology::{NeighborhoodKind, Topology, TopologyError};

#[derive(Debug, Error, PartialEq)]
pub enum ExperimentError {
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

/// Which family of graphs a sweep runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopologyKind {
    Torus,
    Grid,
    Cycle,
}

impl TopologyKind {
    pub fn name(self) -> &'static str {
        match self {
            TopologyKind::Torus => "torus",
            TopologyKind::Grid => "grid",
            TopologyKind::Cycle => "cycle",
        }
    }
}

impl std::fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Step cap for runs: the automatic `|E| + |V| + 2` budget or an explicit
/// count. Serialized as the string `"auto"` or a positive integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StepBudget {
    #[default]
    Auto,
    Steps(usize),
}

impl StepBudget {
    pub fn as_option(self) -> Option<usize> {
        match self {
            StepBudget::Auto => None,
            StepBudget::Steps(s) => Some(s),
        }
    }
}

impl Serialize for StepBudget {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            StepBudget::Auto => serializer.serialize_str("auto"),
            StepBudget::Steps(s) => serializer.serialize_u64(*s as u64),
        }
    }
}

impl<'de> Deserialize<'de> for StepBudget {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct Visitor;
        impl serde::de::Visitor<'_> for Visitor {
            type Value = StepBudget;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("\"auto\" or a positive integer")
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<StepBudget, E> {
                if v == 0 {
                    return Err(E::custom("max_steps must be positive"));
                }
                Ok(StepBudget::Steps(v as usize))
            }

            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<StepBudget, E> {
                if v <= 0 {
                    return Err(E::custom("max_steps must be positive"));
                }
                Ok(StepBudget::Steps(v as usize))
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<StepBudget, E> {
                if v == "auto" {
                    Ok(StepBudget::Auto)
                } else {
                    Err(E::custom(format!("expected \"auto\", got \"{v}\"")))
                }
            }
        }
        deserializer.deserialize_any(Visitor)
    }
}

fn default_neighborhood() -> NeighborhoodKind {
    NeighborhoodKind::Neumann
}

/// Full description of a sweep: graph family, rule, densities, trial count,
/// and seeding. Mirrors the JSON config file field for field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub topology: TopologyKind,
    pub n: usize,
    #[serde(default = "default_neighborhood")]
    pub neighborhood: NeighborhoodKind,
    pub rule: RuleKind,
    pub p_b: Vec<f64>,
    pub trials: usize,
    pub base_seed: u64,
    #[serde(default)]
    pub max_steps: StepBudget,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.trials == 0 {
            return Err(ExperimentError::InvalidConfig("trials must be >= 1".into()));
        }
        if self.p_b.is_empty() {
            return Err(ExperimentError::InvalidConfig(
                "p_b list must be nonempty".into(),
            ));
        }
        for &p in &self.p_b {
            if !(0.0..=1.0).contains(&p) {
                return Err(ExperimentError::InvalidProbability(p));
            }
        }
        if self.p_b.windows(2).any(|w| w[0] > w[1]) {
            return Err(ExperimentError::InvalidConfig(
                "p_b values must be sorted ascending".into(),
            ));
        }
        Ok(())
    }

    pub fn build_topology(&self) -> Result<Topology, ExperimentError> {
        let t = match self.topology {
            TopologyKind::Torus => Topology::lattice(self.n, self.neighborhood, true)?,
            TopologyKind::Grid => Topology::lattice(self.n, self.neighborhood, false)?,
            TopologyKind::Cycle => Topology::cycle(self.n)?,
        };
        Ok(t)
    }

    pub fn from_json(text: &str) -> Result<Self, ExperimentError> {
        let cfg: ExperimentConfig = serde_json::from_str(text)
            .map_err(|e| ExperimentError::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Neighborhood column value for CSV rows; cycles have none.
    fn neighborhood_label(&self) -> &'static str {
        match self.topology {
            TopologyKind::Cycle => "-",
            _ => self.neighborhood.name(),
        }
    }
}

/// Random generation on `t`: vertex k is blue iff the k-th output of the
/// stream seeded with `seed` maps below `p_b`. Bit-exact by construction.
pub fn random_generation(
    t: &Topology,
    p_b: f64,
    seed: u64,
) -> Result<Generation, ExperimentError> {
    if !(0.0..=1.0).contains(&p_b) {
        return Err(ExperimentError::InvalidProbability(p_b));
    }
    let mut stream = SplitMix64::new(seed);
    let mut g = Generation::uniform(t, crate::dynamics::Color::Red);
    for v in 0..t.vertex_count() {
        if stream.next_f64() < p_b {
            g.set(v, crate::dynamics::Color::Blue);
        }
    }
    Ok(g)
}

/// Seed of one trial, derived so trials are independent and individually
/// replayable.
pub fn trial_seed(base_seed: u64, p_b: f64, trial_index: u64) -> u64 {
    mix(base_seed ^ trial_index ^ mix(p_b.to_bits()))
}

/// Runs one seeded trial of `cfg` at density `p_b`.
pub fn run_trial(
    cfg: &ExperimentConfig,
    p_b: f64,
    trial_index: u64,
) -> Result<RunOutcome, ExperimentError> {
    cfg.validate()?;
    let t = cfg.build_topology()?;
    run_trial_on(&t, cfg, p_b, trial_index)
}

fn run_trial_on(
    t: &Topology,
    cfg: &ExperimentConfig,
    p_b: f64,
    trial_index: u64,
) -> Result<RunOutcome, ExperimentError> {
    let seed = trial_seed(cfg.base_seed, p_b, trial_index);
    let g0 = random_generation(t, p_b, seed)?;
    let mut rule = cfg.rule.instantiate(mix(seed));
    let outcome = run_to_cycle(t, &mut rule, &g0, cfg.max_steps.as_option())?;
    Ok(outcome)
}

/// Aggregated results for one density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p_b: f64,
    pub trials: usize,
    pub b_monochromatic: usize,
    pub r_monochromatic: usize,
    pub bichromatic: usize,
    pub mean_consensus_time: f64,
    pub max_consensus_time: usize,
    pub mean_final_blue_density: f64,
}

impl SweepRow {
    pub fn frac_b_mono(&self) -> f64 {
        self.b_monochromatic as f64 / self.trials as f64
    }

    pub fn frac_r_mono(&self) -> f64 {
        self.r_monochromatic as f64 / self.trials as f64
    }

    pub fn frac_bichromatic(&self) -> f64 {
        self.bichromatic as f64 / self.trials as f64
    }
}

/// Results of a whole sweep, one row per density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub config: ExperimentConfig,
    pub rows: Vec<SweepRow>,
}

pub const SWEEP_CSV_HEADER: &str = "n,topology,neighborhood,rule,p_b,trials,frac_b_mono,frac_r_mono,frac_bichromatic,mean_consensus_time,max_consensus_time,mean_final_blue_density,base_seed";

impl SweepSummary {
    /// Serializes the sweep as CSV. Byte-identical for identical configs.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{SWEEP_CSV_HEADER}");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                self.config.n,
                self.config.topology,
                self.config.neighborhood_label(),
                self.config.rule,
                row.p_b,
                row.trials,
                row.frac_b_mono(),
                row.frac_r_mono(),
                row.frac_bichromatic(),
                row.mean_consensus_time,
                row.max_consensus_time,
                row.mean_final_blue_density,
                self.config.base_seed,
            );
        }
        out
    }

    /// Soft monotonicity check: the blue-takeover fraction should be
    /// non-decreasing in `p_b` up to three standard errors of Monte-Carlo
    /// noise. Returns one message per violating adjacent pair; callers
    /// report these, they are not assertions.
    pub fn monotonicity_report(&self) -> Vec<String> {
        let mut notes = Vec::new();
        for pair in self.rows.windows(2) {
            let (lo, hi) = (&pair[0], &pair[1]);
            let (p0, p1) = (lo.frac_b_mono(), hi.frac_b_mono());
            let var = p0 * (1.0 - p0) / lo.trials as f64 + p1 * (1.0 - p1) / hi.trials as f64;
            if p0 > p1 + 3.0 * var.sqrt() {
                notes.push(format!(
                    "frac_b_mono decreased from {p0} (p_b={}) to {p1} (p_b={}) beyond 3 standard errors",
                    lo.p_b, hi.p_b
                ));
            }
        }
        notes
    }
}

/// Runs `cfg.trials` independent trials per density, in parallel, and
/// aggregates. The summary is independent of scheduling.
pub fn sweep(cfg: &ExperimentConfig) -> Result<SweepSummary, ExperimentError> {
    cfg.validate()?;
    let t = cfg.build_topology()?;
    let vertex_count = t.vertex_count() as f64;
    let mut rows = Vec::with_capacity(cfg.p_b.len());
    for &p_b in &cfg.p_b {
        let outcomes: Vec<RunOutcome> = (0..cfg.trials as u64)
            .into_par_iter()
            .map(|trial| run_trial_on(&t, cfg, p_b, trial))
            .collect::<Result<_, _>>()?;
        let mut row = SweepRow {
            p_b,
            trials: cfg.trials,
            b_monochromatic: 0,
            r_monochromatic: 0,
            bichromatic: 0,
            mean_consensus_time: 0.0,
            max_consensus_time: 0,
            mean_final_blue_density: 0.0,
        };
        let mut consensus_sum = 0usize;
        let mut blue_sum = 0usize;
        for outcome in &outcomes {
            match outcome.classification {
                Classification::BMonochromatic => row.b_monochromatic += 1,
                Classification::RMonochromatic => row.r_monochromatic += 1,
                Classification::Bichromatic => row.bichromatic += 1,
            }
            consensus_sum += outcome.consensus_time;
            row.max_consensus_time = row.max_consensus_time.max(outcome.consensus_time);
            blue_sum += outcome.final_blue_count;
        }
        row.mean_consensus_time = consensus_sum as f64 / cfg.trials as f64;
        row.mean_final_blue_density = blue_sum as f64 / (cfg.trials as f64 * vertex_count);
        rows.push(row);
    }
    Ok(SweepSummary {
        config: cfg.clone(),
        rows,
    })
}
