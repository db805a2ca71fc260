//! Command-line driver: single runs, density sweeps, robust/eternal set
//! verification, closed-form bounds, and rectangle covers.
//!
//! Exit codes: 0 on success, 1 on domain errors (bad files, infeasible
//! verification, unsupported combinations), 2 on usage errors.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use majority_ca::analysis::{
    component_rectangles, consensus_time_bound, is_eternal_set, is_robust_set, parse_pattern,
    rectangulate, survival_bound, threshold_values, SurvivalKind,
};
use majority_ca::dynamics::{run_to_cycle_observed, Color, Generation, RuleKind, UpdateRule};
use majority_ca::experiments::{random_generation, sweep, ExperimentConfig, StepBudget};
use majority_ca::rng::mix;
use majority_ca::topology::{NeighborhoodKind, Topology};

/// Default seed so bare invocations are reproducible.
const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Parser)]
#[command(
    name = "majority-ca",
    version,
    about = "Majority-rule cellular automata: simulation, verification, and sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one initial generation to its detected cycle
    Simulate(SimulateArgs),
    /// Run a Monte-Carlo density sweep from a JSON config and emit CSV
    Sweep(SweepArgs),
    /// Check whether a pattern is a robust set
    VerifyRobust(VerifyArgs),
    /// Check whether a pattern is an eternal set (exhaustive over outside colorings)
    VerifyEternal(VerifyEternalArgs),
    /// Closed-form bounds: consensus time, survival probability, thresholds
    Bounds(BoundsArgs),
    /// Cover the blue cells of a generation with rectangles merged to distance >= 2
    Rectangulate(RectangulateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TopologyChoice {
    Torus,
    Grid,
    Cycle,
    Graph,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NeighborhoodChoice {
    Neumann,
    Moore,
}

impl From<NeighborhoodChoice> for NeighborhoodKind {
    fn from(c: NeighborhoodChoice) -> Self {
        match c {
            NeighborhoodChoice::Neumann => NeighborhoodKind::Neumann,
            NeighborhoodChoice::Moore => NeighborhoodKind::Moore,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RuleChoice {
    Majority,
    Biased,
    Random,
    Conservative,
}

impl From<RuleChoice> for RuleKind {
    fn from(c: RuleChoice) -> Self {
        match c {
            RuleChoice::Majority => RuleKind::Majority,
            RuleChoice::Biased => RuleKind::Biased,
            RuleChoice::Random => RuleKind::Random,
            RuleChoice::Conservative => RuleKind::Conservative,
        }
    }
}

/// Errors that should exit with the usage code rather than the domain code.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct UsageError(String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(UsageError(msg.into()))
}

#[derive(Args)]
struct TopologyArgs {
    /// Graph family to build
    #[arg(long, value_enum)]
    topology: TopologyChoice,
    /// Lattice side length, or cycle length
    #[arg(long)]
    n: Option<usize>,
    /// Lattice adjacency kind
    #[arg(long, value_enum, default_value = "neumann")]
    neighborhood: NeighborhoodChoice,
    /// Edge-list file (`V E` header, then `u v` lines) for --topology graph
    #[arg(long)]
    edge_file: Option<PathBuf>,
}

impl TopologyArgs {
    fn build(&self) -> Result<Topology> {
        match self.topology {
            TopologyChoice::Graph => {
                let path = self
                    .edge_file
                    .as_ref()
                    .ok_or_else(|| usage("--topology graph requires --edge-file"))?;
                if self.n.is_some() {
                    return Err(usage("--n does not apply to --topology graph"));
                }
                let text = fs::read_to_string(path)
                    .with_context(|| format!("failed to read {}", path.display()))?;
                Topology::parse_edge_list(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
            }
            choice => {
                if self.edge_file.is_some() {
                    return Err(usage("--edge-file only applies to --topology graph"));
                }
                let n = self
                    .n
                    .ok_or_else(|| usage("--n is required for torus, grid, and cycle"))?;
                let t = match choice {
                    TopologyChoice::Torus => Topology::lattice(n, self.neighborhood.into(), true)?,
                    TopologyChoice::Grid => Topology::lattice(n, self.neighborhood.into(), false)?,
                    TopologyChoice::Cycle => Topology::cycle(n)?,
                    TopologyChoice::Graph => unreachable!(),
                };
                Ok(t)
            }
        }
    }
}

fn parse_budget(s: &str) -> Result<StepBudget, String> {
    if s == "auto" {
        return Ok(StepBudget::Auto);
    }
    match s.parse::<usize>() {
        Ok(0) => Err("max steps must be positive".into()),
        Ok(n) => Ok(StepBudget::Steps(n)),
        Err(_) => Err(format!("expected `auto` or a positive integer, got `{s}`")),
    }
}

fn parse_color(s: &str) -> Result<Color, String> {
    match s.to_ascii_lowercase().as_str() {
        "b" | "blue" => Ok(Color::Blue),
        "r" | "red" => Ok(Color::Red),
        _ => Err(format!("expected b or r, got `{s}`")),
    }
}

#[derive(Args)]
#[command(group(ArgGroup::new("init").required(true).args(["init_file", "p_b"])))]
struct SimulateArgs {
    #[command(flatten)]
    topology: TopologyArgs,
    #[arg(long, value_enum)]
    rule: RuleChoice,
    /// Initial generation file (B/R grid, one row per line)
    #[arg(long)]
    init_file: Option<PathBuf>,
    /// Random initial blue density in [0, 1]
    #[arg(long)]
    p_b: Option<f64>,
    /// Seed for the random initial generation and tie-break stream
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Step cap: `auto` (= |E| + |V| + 2) or a positive integer
    #[arg(long, value_parser = parse_budget, default_value = "auto")]
    max_steps: StepBudget,
    /// Write every generation (step_000000.txt, ...) into this directory
    #[arg(long)]
    dump_steps: Option<PathBuf>,
    /// Emit one JSON object instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON config file mirroring the experiment fields
    #[arg(long)]
    config: PathBuf,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit the summary as JSON on stdout instead of CSV
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    topology: TopologyArgs,
    /// majority or biased (the verified characterizations cover these two)
    #[arg(long, value_enum)]
    rule: RuleChoice,
    /// Pattern file: B/R for set members, `.` for outside cells
    #[arg(long)]
    pattern: PathBuf,
    /// Set color; defaults to the pattern's color and must match it
    #[arg(long, value_parser = parse_color)]
    color: Option<Color>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyEternalArgs {
    #[command(flatten)]
    verify: VerifyArgs,
    /// Cap on |V \ S|; the check simulates 2^|V \ S| colorings
    #[arg(long, default_value_t = 24)]
    budget: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SurvivalChoice {
    Disjoint,
    Azuma,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").args(["survival", "thresholds"])))]
struct BoundsArgs {
    /// Graph family (consensus-time mode)
    #[arg(long, value_enum)]
    topology: Option<TopologyChoice>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "neumann")]
    neighborhood: NeighborhoodChoice,
    #[arg(long)]
    edge_file: Option<PathBuf>,
    #[arg(long, value_enum)]
    rule: Option<RuleChoice>,
    /// Survival-probability mode: disjoint or azuma
    #[arg(long, value_enum)]
    survival: Option<SurvivalChoice>,
    /// Number of eternal sets (survival mode)
    #[arg(long)]
    k: Option<u64>,
    /// Maximum eternal-set size (survival mode)
    #[arg(long)]
    s: Option<u32>,
    /// Initial blue density (survival mode)
    #[arg(long)]
    p_b: Option<f64>,
    /// Comma-separated per-vertex multiplicities a_i (azuma)
    #[arg(long, value_delimiter = ',')]
    multiplicities: Option<Vec<u64>>,
    /// Threshold mode: print the two phase-transition densities
    #[arg(long)]
    thresholds: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RectangulateArgs {
    #[command(flatten)]
    topology: TopologyArgs,
    /// Generation file whose blue cells get covered
    #[arg(long)]
    init_file: PathBuf,
    #[arg(long)]
    json: bool,
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        let code = if err.is::<UsageError>() { 2 } else { 1 };
        std::process::exit(code);
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Sweep(args) => run_sweep(args),
        Command::VerifyRobust(args) => verify_robust(args),
        Command::VerifyEternal(args) => verify_eternal(args),
        Command::Bounds(args) => bounds(args),
        Command::Rectangulate(args) => run_rectangulate(args),
    }
}

fn read_generation(path: &Path, t: &Topology) -> Result<Generation> {
    let text =
        fs::read_to_string(path).with_context(|| format!("failed to read {}", path.display()))?;
    Generation::parse(&text, t).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let t = args.topology.build()?;
    let g0 = match (&args.init_file, args.p_b) {
        (Some(path), None) => read_generation(path, &t)?,
        (None, Some(p_b)) => random_generation(&t, p_b, args.seed)?,
        _ => unreachable!("clap enforces the init group"),
    };
    let mut rule: UpdateRule = RuleKind::from(args.rule).instantiate(mix(args.seed));

    let dump_dir = args.dump_steps.as_deref();
    if let Some(dir) = dump_dir {
        fs::create_dir_all(dir).with_context(|| format!("failed to create {}", dir.display()))?;
    }
    let mut dump_error: Option<std::io::Error> = None;
    let outcome = run_to_cycle_observed(&t, &mut rule, &g0, args.max_steps.as_option(), |k, g| {
        if let Some(dir) = dump_dir {
            if dump_error.is_none() {
                let path = dir.join(format!("step_{k:06}.txt"));
                if let Err(e) = fs::write(&path, g.to_text(&t)) {
                    dump_error = Some(e);
                }
            }
        }
    })?;
    if let Some(e) = dump_error {
        return Err(anyhow!(e).context("failed to write step dump"));
    }
    if args.json {
        println!("{}", serde_json::to_string(&outcome)?);
    } else {
        println!("{outcome}");
    }
    Ok(())
}

fn run_sweep(args: SweepArgs) -> Result<()> {
    let text = fs::read_to_string(&args.config)
        .with_context(|| format!("failed to read {}", args.config.display()))?;
    let cfg = ExperimentConfig::from_json(&text)
        .map_err(|e| anyhow!("{}: {e}", args.config.display()))?;
    let summary = sweep(&cfg)?;
    for note in summary.monotonicity_report() {
        eprintln!("note: {note}");
    }
    let csv = summary.to_csv();
    match &args.out {
        Some(path) => {
            fs::write(path, &csv).with_context(|| format!("failed to write {}", path.display()))?
        }
        None if !args.json => print!("{csv}"),
        None => {}
    }
    if args.json {
        println!("{}", serde_json::to_string(&summary)?);
    }
    Ok(())
}

/// Reads the pattern and reconciles its color with an optional `--color`.
fn load_pattern(args: &VerifyArgs, t: &Topology) -> Result<(Vec<usize>, Color)> {
    let text = fs::read_to_string(&args.pattern)
        .with_context(|| format!("failed to read {}", args.pattern.display()))?;
    let (cells, pattern_color) =
        parse_pattern(&text, t).map_err(|e| anyhow!("{}: {e}", args.pattern.display()))?;
    let color = match args.color {
        Some(c) if c != pattern_color => {
            return Err(anyhow!(
                "--color {} contradicts the pattern, which is colored {}",
                c.to_char(),
                pattern_color.to_char()
            ))
        }
        Some(c) => c,
        None => pattern_color,
    };
    Ok((cells, color))
}

fn robust_check_description(rule: RuleKind, color: Color) -> &'static str {
    match (rule, color) {
        (RuleKind::Biased, Color::Red) => "2*|N_S(v)| > |N(v)| for every v in S",
        _ => "2*|N_S(v)| >= |N(v)| for every v in S",
    }
}

fn verify_robust(args: VerifyArgs) -> Result<()> {
    let t = args.topology.build()?;
    let (cells, color) = load_pattern(&args, &t)?;
    let rule = RuleKind::from(args.rule);
    let robust = is_robust_set(&t, rule, &cells, color)?;
    let check = robust_check_description(rule, color);
    if args.json {
        println!(
            "{}",
            serde_json::json!({
                "robust": robust,
                "rule": rule,
                "color": color,
                "set_size": cells.len(),
                "check": check,
            })
        );
    } else {
        println!("{robust} (checked: {check})");
    }
    Ok(())
}

fn verify_eternal(args: VerifyEternalArgs) -> Result<()> {
    let t = args.verify.topology.build()?;
    let (cells, color) = load_pattern(&args.verify, &t)?;
    let rule = RuleKind::from(args.verify.rule);
    let outside = t.vertex_count() - cells.len();
    let eternal = is_eternal_set(&t, rule, &cells, color, args.budget)?;
    let colorings = 1u128 << outside;
    if args.verify.json {
        println!(
            "{}",
            serde_json::json!({
                "eternal": eternal,
                "rule": rule,
                "color": color,
                "set_size": cells.len(),
                "outside_vertices": outside,
                "colorings_checked": colorings.to_string(),
            })
        );
    } else {
        println!("{eternal} (checked {colorings} outside colorings exhaustively)");
    }
    Ok(())
}

fn bounds(args: BoundsArgs) -> Result<()> {
    if let Some(kind) = args.survival {
        let k = args.k.ok_or_else(|| usage("--survival requires --k"))?;
        let s = args.s.ok_or_else(|| usage("--survival requires --s"))?;
        let p_b = args.p_b.ok_or_else(|| usage("--survival requires --p-b"))?;
        let kind = match kind {
            SurvivalChoice::Disjoint => SurvivalKind::Disjoint,
            SurvivalChoice::Azuma => SurvivalKind::Azuma,
        };
        let report = survival_bound(kind, k, s, p_b, args.multiplicities.as_deref())?;
        if args.json {
            println!("{}", serde_json::to_string(&report)?);
        } else {
            println!("{}", report.value());
        }
        return Ok(());
    }
    if args.thresholds {
        let rule: RuleKind = args
            .rule
            .ok_or_else(|| usage("--thresholds requires --rule"))?
            .into();
        let n = args.n.ok_or_else(|| usage("--thresholds requires --n"))?;
        let kind: NeighborhoodKind = args.neighborhood.into();
        let (p1, p2) = threshold_values(rule, kind, n)?;
        let note = matches!((rule, kind), (RuleKind::Biased, NeighborhoodKind::Neumann))
            .then_some("p2 = 1/sqrt(ln n), natural logarithm");
        if args.json {
            println!(
                "{}",
                serde_json::json!({
                    "rule": rule, "neighborhood": kind, "n": n,
                    "p1": p1, "p2": p2, "note": note,
                })
            );
        } else {
            match note {
                Some(note) => println!("p1={p1} p2={p2} ({note})"),
                None => println!("p1={p1} p2={p2}"),
            }
        }
        return Ok(());
    }
    // Consensus-time mode.
    let rule: RuleKind = args.rule.ok_or_else(|| usage("bounds requires --rule"))?.into();
    let topo_args = TopologyArgs {
        topology: args
            .topology
            .ok_or_else(|| usage("consensus-time bounds require --topology"))?,
        n: args.n,
        neighborhood: args.neighborhood,
        edge_file: args.edge_file,
    };
    let t = topo_args.build()?;
    let report = consensus_time_bound(&t, rule)?;
    if args.json {
        println!("{}", serde_json::to_string(&report)?);
    } else {
        println!("{}", report.value() as usize);
    }
    Ok(())
}

fn run_rectangulate(args: RectangulateArgs) -> Result<()> {
    let t = args.topology.build()?;
    let g = read_generation(&args.init_file, &t)?;
    let covers = component_rectangles(&t, &g, Color::Blue)?;
    let merged = rectangulate(&t, &covers)?;
    if args.json {
        println!(
            "{}",
            serde_json::json!({
                "input_rectangles": covers,
                "rectangles": merged,
            })
        );
    } else {
        for r in &merged {
            println!("{} {} {} {}", r.anchor_i, r.anchor_j, r.rows, r.cols);
        }
    }
    Ok(())
}
