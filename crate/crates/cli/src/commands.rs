use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, ValueEnum};
use num_rational::BigRational;
use packcolor::bounds::alpha::to_decimal;
use packcolor::bounds::{
    density_lower_bound, density_window_bound, fit_alpha, search_colorability, AlphaRule, Budget,
    Checkpoint, DensityCheckpoint, DensityOptions, DistanceMode, LowerBound, SearchOptions,
    SearchOutcome, SearchProblem, Status,
};
use packcolor::constructions::{assemble, plan_layout};
use packcolor::graph::window_dot;
use packcolor::verify::verify as verify_coloring;
use packcolor::{Error, GraphSpec, PeriodicColoring, Result, Verdict};
use serde::Serialize;
use serde_json::{json, Value};

use crate::exit;

/// What a subcommand prints, logs and exits with.
pub struct Outcome {
    pub text: String,
    pub summary: Value,
    pub exit: u8,
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct GraphArgs {
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub t: u64,
}

impl GraphArgs {
    pub fn spec(&self) -> Result<GraphSpec> {
        GraphSpec::new(self.k, self.t)
    }
}

pub fn normalize(args: &GraphArgs) -> Result<Outcome> {
    let (reduced, g) = args.spec()?.normalize();
    Ok(Outcome {
        text: format!("({},{}) ×{g}\n", reduced.k(), reduced.t()),
        summary: json!({"k": reduced.k(), "t": reduced.t(), "g": g}),
        exit: exit::OK,
    })
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    /// Pattern file: `period L`, optional `anchor A`, then L colors.
    #[arg(long, value_name = "FILE")]
    pub pattern: PathBuf,
}

fn verdict_outcome(verdict: &Verdict, coloring: &PeriodicColoring, extra: Value) -> Outcome {
    let mut summary = json!({
        "valid": verdict.is_valid(),
        "max_color": coloring.max_color(),
        "period": coloring.period(),
    });
    let map = summary.as_object_mut().expect("object");
    if let Value::Object(more) = extra {
        map.extend(more);
    }
    match verdict {
        Verdict::Valid => Outcome {
            text: format!("valid, max color {}\n", coloring.max_color()),
            summary,
            exit: exit::OK,
        },
        Verdict::Invalid(w) => {
            map.insert(
                "witness".into(),
                serde_json::to_value(w).expect("witness serializes"),
            );
            Outcome {
                text: format!(
                    "invalid: color {} at {} and {}, distance {}\n",
                    w.color, w.u, w.v, w.distance
                ),
                summary,
                exit: exit::NEGATIVE,
            }
        }
    }
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let spec = args.graph.spec()?;
    let coloring = PeriodicColoring::read_file(&args.pattern)?;
    let verdict = verify_coloring(&spec, &coloring)?;
    Ok(verdict_outcome(&verdict, &coloring, json!({})))
}

#[derive(Debug, Args, Serialize)]
pub struct ConstructArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    /// Write the verified pattern here.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

pub fn construct(args: &ConstructArgs) -> Result<Outcome> {
    let spec = args.graph.spec()?;
    let plan = plan_layout(&spec)?;
    let coloring = assemble(&plan)?;
    let verdict = verify_coloring(&spec, &coloring)?;
    if verdict.is_valid() {
        if let Some(path) = &args.out {
            coloring.write_file(path)?;
        }
    }
    let extra = json!({
        "theorem": plan.theorem.number(),
        "r": plan.r,
        "s": plan.s,
        "k1": plan.k1,
        "band_offsets": plan.band_offsets(),
    });
    let mut out = verdict_outcome(&verdict, &coloring, extra);
    let _ = writeln!(
        out.text,
        "{spec}: layout {} with r = {}, s = {}, k1 = {}; period {}",
        plan.theorem.number(),
        plan.r,
        plan.s,
        plan.k1,
        coloring.period()
    );
    if let (true, Some(path)) = (verdict.is_valid(), &args.out) {
        let _ = writeln!(out.text, "wrote {}", path.display());
    }
    Ok(out)
}

/// `V=C`: vertex `V` of the window gets color `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Precolor(pub u32, pub u32);

impl FromStr for Precolor {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (v, c) = s.split_once('=').ok_or("expected VERTEX=COLOR")?;
        let parse = |x: &str| x.trim().parse::<u32>().map_err(|e| format!("{x:?}: {e}"));
        Ok(Precolor(parse(v)?, parse(c)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Full,
    Induced,
}

impl From<ModeArg> for DistanceMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Full => DistanceMode::Full,
            ModeArg::Induced => DistanceMode::Induced,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BudgetArgs {
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Stop after this many more color assignments than the checkpoint holds.
    #[arg(long)]
    pub max_nodes: Option<u64>,
    /// Stop after this many seconds.
    #[arg(long, value_name = "SECS")]
    pub time_limit: Option<f64>,
    /// Resume from this file if it exists; save progress to it on timeout.
    #[arg(long, value_name = "FILE")]
    pub checkpoint: Option<PathBuf>,
}

impl BudgetArgs {
    fn time_limit(&self) -> Result<Option<Duration>> {
        self.time_limit
            .map(|s| {
                Duration::try_from_secs_f64(s)
                    .map_err(|e| Error::InvalidProblem(format!("time limit {s}: {e}")))
            })
            .transpose()
    }

    fn existing_checkpoint(&self) -> Option<&PathBuf> {
        self.checkpoint.as_ref().filter(|p| p.exists())
    }
}

#[derive(Debug, Args, Serialize)]
pub struct SearchArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    /// Window length: vertices 1..=p.
    #[arg(long)]
    pub p: u32,
    /// Colors 1..=c.
    #[arg(long)]
    pub c: u32,
    /// Fix a color in advance, e.g. `--precolor 1=12`. Repeatable.
    #[arg(long = "precolor", value_name = "V=C")]
    #[serde(rename = "precoloring")]
    pub precolor: Vec<Precolor>,
    /// Distances in the whole graph or in the window's induced subgraph.
    #[arg(long, value_enum, default_value_t = ModeArg::Full)]
    pub mode: ModeArg,
    #[command(flatten)]
    #[serde(flatten)]
    pub budget: BudgetArgs,
}

pub fn run_search(
    problem: &SearchProblem,
    mode: DistanceMode,
    budget: &BudgetArgs,
) -> Result<SearchOutcome> {
    let resume = budget
        .existing_checkpoint()
        .map(Checkpoint::load)
        .transpose()?;
    let done = resume.as_ref().map_or(0, |cp| cp.nodes);
    let options = SearchOptions {
        mode,
        jobs: budget.jobs.max(1),
        budget: Budget {
            max_nodes: budget.max_nodes.map(|n| done.saturating_add(n)),
            time_limit: budget.time_limit()?,
        },
        split_depth: None,
    };
    let outcome = search_colorability(problem, &options, resume.as_ref())?;
    if let (Some(cp), Some(path)) = (&outcome.checkpoint, &budget.checkpoint) {
        cp.save(path)?;
    }
    Ok(outcome)
}

pub fn search(args: &SearchArgs) -> Result<Outcome> {
    let spec = args.graph.spec()?;
    let pre = args.precolor.iter().map(|p| (p.0, p.1));
    let problem = SearchProblem::new(spec, args.p, args.c, pre)?;
    let outcome = run_search(&problem, args.mode.into(), &args.budget)?;
    let stats = &outcome.stats;
    let mut text = format!(
        "{}: {spec}, vertices 1..={}, colors 1..={}, {} distances\n",
        outcome.status.as_str(),
        args.p,
        args.c,
        args.mode.as_str()
    );
    let _ = writeln!(
        text,
        "nodes {}, max depth {}, {:.3} s",
        stats.nodes, stats.max_depth, stats.seconds
    );
    let precolored = !args.precolor.is_empty();
    let exit = match outcome.status {
        Status::Sat => {
            let w = outcome.witness.as_ref().expect("SAT carries a witness");
            let colors: Vec<String> = w.iter().map(u32::to_string).collect();
            let _ = writeln!(text, "witness: {}", colors.join(" "));
            exit::OK
        }
        Status::Unsat if precolored => {
            let _ = writeln!(
                text,
                "the precoloring does not extend; this alone does not bound χ_ρ({spec})"
            );
            exit::NEGATIVE
        }
        Status::Unsat => {
            let _ = writeln!(text, "χ_ρ({spec}) ≥ {}", args.c + 1);
            exit::NEGATIVE
        }
        Status::Timeout => {
            if let Some(path) = &args.budget.checkpoint {
                let _ = writeln!(text, "checkpoint saved to {}", path.display());
            }
            exit::TIMEOUT
        }
    };
    Ok(Outcome {
        text,
        summary: json!({
            "status": outcome.status.as_str(),
            "nodes": stats.nodes,
            "max_depth": stats.max_depth,
            "search_seconds": stats.seconds,
            "witness": outcome.witness,
            "precolored": precolored,
        }),
        exit,
    })
}

impl ModeArg {
    fn as_str(&self) -> &'static str {
        DistanceMode::from(*self).as_str()
    }
}

#[derive(Debug, Args, Serialize)]
pub struct DensityArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    /// Colors 1..=q.
    #[arg(long)]
    pub q: u32,
    /// Window length.
    #[arg(long)]
    pub w: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub budget: BudgetArgs,
}

/// `Ok(None)` when the budget ran out; the checkpoint is saved if asked.
pub fn run_density(
    spec: &GraphSpec,
    q: u32,
    w: u64,
    budget: &BudgetArgs,
) -> Result<Option<packcolor::bounds::DensityBound>> {
    let resume = budget
        .existing_checkpoint()
        .map(DensityCheckpoint::load)
        .transpose()?;
    let done = resume.as_ref().map_or(0, |cp| cp.nodes);
    let options = DensityOptions {
        jobs: budget.jobs.max(1),
        max_nodes: budget.max_nodes.map(|n| done.saturating_add(n)),
        time_limit: budget.time_limit()?,
    };
    match density_window_bound(spec, q, w, &options, resume.as_ref()) {
        Ok(bound) => Ok(Some(bound)),
        Err(Error::BudgetExceeded(cp)) => {
            if let Some(path) = &budget.checkpoint {
                cp.save(path)?;
            }
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

pub fn density(args: &DensityArgs) -> Result<Outcome> {
    let spec = args.graph.spec()?;
    match run_density(&spec, args.q, args.w, &args.budget)? {
        Some(bound) => Ok(Outcome {
            text: format!(
                "b = {bound}: at most {} of any {} consecutive vertices of {spec} carry colors 1..={}\n",
                bound.count_max, bound.w, args.q
            ),
            summary: json!({
                "status": "DONE",
                "count_max": bound.count_max,
                "w": bound.w,
                "b": bound.to_string(),
            }),
            exit: exit::OK,
        }),
        None => {
            let mut text = "TIMEOUT: budget exhausted\n".to_string();
            if let Some(path) = &args.budget.checkpoint {
                let _ = writeln!(text, "checkpoint saved to {}", path.display());
            }
            Ok(Outcome { text, summary: json!({"status": "TIMEOUT"}), exit: exit::TIMEOUT })
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct BoundArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    /// Colors 1..=q are covered by the density bound b.
    #[arg(long)]
    pub q: u32,
    /// Density bound for colors 1..=q, as NUM/DEN.
    #[arg(long, value_parser = parse_ratio)]
    #[serde(serialize_with = "ratio_as_string")]
    pub b: BigRational,
    /// Window offset: d(i) <= 1/(t*i - alpha).
    #[arg(
        long,
        requires = "imin",
        conflicts_with = "fit",
        allow_hyphen_values = true
    )]
    pub alpha: Option<i64>,
    /// First i where the alpha rule holds.
    #[arg(long, requires = "alpha")]
    pub imin: Option<u32>,
    /// Compute alpha from the graph for i = q+1 ..= q+13.
    #[arg(long, required_unless_present = "alpha")]
    pub fit: bool,
}

fn parse_ratio(s: &str) -> std::result::Result<BigRational, String> {
    BigRational::from_str(s.trim()).map_err(|e| format!("{s:?} is not NUM/DEN: {e}"))
}

fn ratio_as_string<S: serde::Serializer>(
    r: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn fitted_rule(spec: &GraphSpec, q: u32) -> Result<AlphaRule> {
    fit_alpha(spec, q + 1..=q + 13)
}

pub fn bound(args: &BoundArgs) -> Result<Outcome> {
    let spec = args.graph.spec()?;
    let rule = match (args.alpha, args.imin) {
        (Some(alpha), Some(i_min)) => AlphaRule { spec, alpha, i_min },
        _ => fitted_rule(&spec, args.q)?,
    };
    let result = density_lower_bound(&spec, args.q, &args.b, &rule)?;
    let rule_json = json!({"alpha": rule.alpha, "i_min": rule.i_min});
    Ok(match result {
        LowerBound::AtLeast { chi, partial_sum } => Outcome {
            text: format!(
                "χ_ρ ≥ {chi}\n{spec}: b + Σ_{{i={}}}^{{{}}} 1/({}i - {}) = {} ≈ {} < 1\n",
                args.q + 1,
                chi - 1,
                spec.t(),
                rule.alpha,
                partial_sum,
                to_decimal(&partial_sum, 7)
            ),
            summary: json!({
                "chi_lower": chi,
                "partial_sum": partial_sum.to_string(),
                "partial_sum_decimal": to_decimal(&partial_sum, 7),
                "rule": rule_json,
            }),
            exit: exit::OK,
        },
        LowerBound::NoBound => Outcome {
            text: "no bound: b >= 1\n".into(),
            summary: json!({"chi_lower": null, "rule": rule_json}),
            exit: exit::OK,
        },
    })
}

#[derive(Debug, Args, Serialize)]
pub struct DotArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    /// Vertices 1..=window.
    #[arg(long)]
    pub window: u32,
    /// Write here instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

pub fn export_dot(args: &DotArgs) -> Result<Outcome> {
    let spec = args.graph.spec()?;
    if args.window == 0 {
        return Err(Error::InvalidProblem(
            "the window must contain a vertex".into(),
        ));
    }
    let dot = window_dot(&spec, 1, args.window as i64);
    let edges = dot.lines().filter(|l| l.contains("--")).count();
    let summary = json!({"vertices": args.window, "edges": edges});
    let text = match &args.out {
        Some(path) => {
            std::fs::write(path, &dot)?;
            format!(
                "wrote {} ({} vertices, {edges} edges)\n",
                path.display(),
                args.window
            )
        }
        None => dot,
    };
    Ok(Outcome {
        text,
        summary,
        exit: exit::OK,
    })
}
