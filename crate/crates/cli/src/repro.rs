//! Recomputes the reference tables: exhaustive window searches, density
//! bounds, and the thresholds of the three layouts.
//!
//! Every row prints `MATCH`, `MISMATCH` or `PENDING` (budget ran out). The
//! exit status is 1 on any mismatch, otherwise 3 if anything is pending.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Subcommand};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use packcolor::bounds::alpha::to_decimal;
use packcolor::bounds::{density_lower_bound, AlphaRule, LowerBound, SearchProblem, Status};
use packcolor::constructions::{assemble, plan_layout};
use packcolor::verify::verify;
use packcolor::{Error, GraphSpec, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::commands::{fitted_rule, run_density, run_search, BudgetArgs, ModeArg, Outcome};
use crate::exit;

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "table")]
pub enum Table {
    /// Windows that cannot be packed (multi-hour rows need --long).
    #[serde(rename = "table2")]
    Table2(SearchTableArgs),
    /// Density bounds and the resulting lower bounds.
    #[serde(rename = "table3")]
    Table3(SearchTableArgs),
    /// Smallest t for each layout, residue r and k1.
    #[command(name = "table4-6")]
    #[serde(rename = "table4-6")]
    Table456(LayoutTableArgs),
}

impl Table {
    pub fn name(&self) -> &'static str {
        match self {
            Table::Table2(_) => "table2",
            Table::Table3(_) => "table3",
            Table::Table456(_) => "table4-6",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SearchTableArgs {
    /// Run without the default per-row time limit.
    #[arg(long)]
    pub long: bool,
    /// Only the rows for this pair, as K,T. Repeatable.
    #[arg(long, value_name = "K,T", value_parser = parse_pair)]
    pub only: Vec<(u64, u64)>,
    /// Keep one resumable checkpoint per row in this directory.
    #[arg(long, value_name = "DIR")]
    pub checkpoint_dir: Option<PathBuf>,
    /// Search without fixing the color of vertex 1 (table2 only).
    #[arg(long)]
    pub no_precolor: bool,
    /// Window distances for table2.
    #[arg(long, value_enum, default_value_t = ModeArg::Full)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Seconds per row; defaults to 10 without --long and unlimited with it.
    #[arg(long, value_name = "SECS")]
    pub time_limit: Option<f64>,
}

fn parse_pair(s: &str) -> std::result::Result<(u64, u64), String> {
    let (k, t) = s.split_once(',').ok_or("expected K,T")?;
    let parse = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
    Ok((parse(k)?, parse(t)?))
}

impl SearchTableArgs {
    fn wants(&self, k: u64, t: u64) -> bool {
        self.only.is_empty() || self.only.contains(&(k, t))
    }

    fn budget(&self, name: String) -> BudgetArgs {
        let default = if self.long { None } else { Some(10.0) };
        BudgetArgs {
            jobs: self.jobs,
            max_nodes: None,
            time_limit: self.time_limit.or(default),
            checkpoint: self.checkpoint_dir.as_ref().map(|d| d.join(name)),
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LayoutTableArgs {
    /// Only this table: 4 (k, t odd), 5 (k odd, t even) or 6 (k even, t odd).
    #[arg(long, value_parser = clap::value_parser!(u8).range(4..=6))]
    pub table: Option<u8>,
    /// Skip columns with r above this.
    #[arg(long)]
    pub max_r: Option<u64>,
    /// Only plan the layouts; do not assemble and verify them.
    #[arg(long)]
    pub no_verify: bool,
}

pub fn run(table: &Table) -> Result<Outcome> {
    match table {
        Table::Table2(a) => table2(a),
        Table::Table3(a) => table3(a),
        Table::Table456(a) => table456(a),
    }
}

#[derive(Default)]
struct Tally {
    text: String,
    rows: Vec<Value>,
    mismatches: usize,
    pending: usize,
}

impl Tally {
    fn row(&mut self, verdict: &str, line: String, data: Value) {
        match verdict {
            "MISMATCH" => self.mismatches += 1,
            "PENDING" => self.pending += 1,
            _ => {}
        }
        let _ = writeln!(self.text, "{verdict:<8} {line}");
        let mut data = data;
        data["verdict"] = json!(verdict);
        self.rows.push(data);
    }

    fn finish(mut self) -> Outcome {
        let _ = writeln!(
            self.text,
            "{} rows, {} mismatched, {} pending",
            self.rows.len(),
            self.mismatches,
            self.pending
        );
        let exit = if self.mismatches > 0 {
            exit::NEGATIVE
        } else if self.pending > 0 {
            exit::TIMEOUT
        } else {
            exit::OK
        };
        Outcome {
            text: self.text,
            summary: json!({
                "rows": self.rows,
                "mismatches": self.mismatches,
                "pending": self.pending,
            }),
            exit,
        }
    }
}

/// `(k, t, c, p, hours)`: vertex 1 colored `c` does not extend to a packing
/// of `1..=p` with colors `1..=c`.
const SEARCH_ROWS: &[(u64, u64, u32, u32, u32)] = &[
    (2, 3, 12, 213, 46),
    (2, 5, 13, 45, 327),
    (3, 4, 13, 43, 297),
    (3, 5, 12, 106, 35),
    (3, 7, 12, 54, 179),
    (4, 5, 12, 37, 23),
];

fn table2(args: &SearchTableArgs) -> Result<Outcome> {
    let mut tally = Tally::default();
    if !args.long {
        let _ = writeln!(
            tally.text,
            "note: every row took 23 to 327 hours in the reference runs; \
             without --long each stops after its time limit"
        );
    }
    for &(k, t, c, p, hours) in SEARCH_ROWS.iter().filter(|r| args.wants(r.0, r.1)) {
        let spec = GraphSpec::new(k, t)?;
        let pre: Vec<(u32, u32)> = if args.no_precolor {
            vec![]
        } else {
            vec![(1, c)]
        };
        let problem = SearchProblem::new(spec, p, c, pre.iter().copied())?;
        let name = format!(
            "table2-{k}-{t}{}.json",
            if args.no_precolor { "-free" } else { "" }
        );
        let out = run_search(&problem, args.mode.into(), &args.budget(name))?;
        let verdict = match out.status {
            Status::Unsat => "MATCH",
            Status::Sat => "MISMATCH",
            Status::Timeout => "PENDING",
        };
        let precolor = if args.no_precolor {
            String::new()
        } else {
            format!(", vertex 1 = {c}")
        };
        tally.row(
            verdict,
            format!(
                "{spec} p={p} c={c}{precolor}: {} after {} nodes, {:.1} s (expected UNSAT; reference {hours} h)",
                out.status.as_str(),
                out.stats.nodes,
                out.stats.seconds
            ),
            json!({
                "k": k, "t": t, "p": p, "c": c,
                "precoloring": pre,
                "status": out.status.as_str(),
                "nodes": out.stats.nodes,
                "seconds": out.stats.seconds,
                "witness": out.witness,
            }),
        );
        if let Some(w) = &out.witness {
            let colors: Vec<String> = w.iter().map(u32::to_string).collect();
            let _ = writeln!(tally.text, "witness: {}", colors.join(" "));
        }
    }
    Ok(tally.finish())
}

/// A density row: colors `1..=q` cover at most `num` of `den` consecutive
/// vertices, the listed window rule `d(i) <= 1/(t*i - alpha)` for
/// `i >= i_min`, and the lower bound on the packing chromatic number.
struct DensityRow {
    k: u64,
    t: u64,
    q: u32,
    num: u64,
    den: u64,
    alpha: i64,
    i_min: u32,
    chi: u32,
    reference_time: &'static str,
}

const fn row(
    (k, t, q): (u64, u64, u32),
    (num, den): (u64, u64),
    (alpha, i_min): (i64, u32),
    chi: u32,
    reference_time: &'static str,
) -> DensityRow {
    DensityRow {
        k,
        t,
        q,
        num,
        den,
        alpha,
        i_min,
        chi,
        reference_time,
    }
}

const DENSITY_ROWS: &[DensityRow] = &[
    row((2, 7, 5), (37, 45), (13, 5), 15, "14 min"),
    row((3, 8, 7), (38, 42), (17, 8), 14, "1 h"),
    row((3, 10, 8), (47, 50), (22, 9), 13, "125 h"),
    row((4, 7, 7), (44, 50), (8, 8), 16, "58 h"),
    row((4, 9, 7), (47, 52), (21, 8), 15, "145 h"),
    row((5, 6, 6), (43, 50), (-1, 5), 15, "7 h"),
    row((5, 7, 8), (47, 50), (5, 9), 13, "19 h"),
    row((5, 8, 8), (42, 45), (10, 9), 14, "58 h"),
    row((5, 9, 7), (48, 52), (19, 8), 13, "107 h"),
    row((6, 7, 6), (44, 50), (-1, 6), 15, "27 h"),
    row((7, 8, 6), (50, 55), (-1, 7), 14, "120 h"),
];

fn chi_of(result: &LowerBound) -> Option<u32> {
    match result {
        LowerBound::AtLeast { chi, .. } => Some(*chi),
        LowerBound::NoBound => None,
    }
}

fn table3(args: &SearchTableArgs) -> Result<Outcome> {
    let mut tally = Tally::default();
    for r in DENSITY_ROWS.iter().filter(|r| args.wants(r.k, r.t)) {
        let spec = GraphSpec::new(r.k, r.t)?;
        let budget = args.budget(format!("table3-{}-{}.json", r.k, r.t));
        let computed = run_density(&spec, r.q, r.den, &budget)?;
        let mut notes = Vec::new();
        let mut verdict = "MATCH";
        let count = match computed {
            Some(b) if b.count_max == r.num => {
                notes.push(format!("b = {b}"));
                b.count_max
            }
            Some(b) => {
                verdict = "MISMATCH";
                notes.push(format!("b = {b}, expected {}/{}", r.num, r.den));
                b.count_max
            }
            None => {
                verdict = "PENDING";
                notes.push(format!(
                    "b not finished (reference {}); using {}/{}",
                    r.reference_time, r.num, r.den
                ));
                r.num
            }
        };
        let b = BigRational::new(BigInt::from(count), BigInt::from(r.den));

        let rule = fitted_rule(&spec, r.q)?;
        if rule.alpha != r.alpha {
            verdict = "MISMATCH";
            let listed = AlphaRule {
                spec,
                alpha: r.alpha,
                i_min: r.i_min.max(r.q + 1),
            };
            let with_listed = density_lower_bound(&spec, r.q, &b, &listed)?;
            notes.push(format!(
                "alpha {} (listed {}, which would give χ_ρ ≥ {})",
                rule.alpha,
                r.alpha,
                chi_of(&with_listed).map_or("nothing".into(), |c| c.to_string())
            ));
        } else {
            notes.push(format!("alpha {}", rule.alpha));
        }

        let result = density_lower_bound(&spec, r.q, &b, &rule)?;
        let chi = chi_of(&result);
        if chi != Some(r.chi) {
            verdict = "MISMATCH";
        }
        let sum = match &result {
            LowerBound::AtLeast { partial_sum, .. } => to_decimal(partial_sum, 7),
            LowerBound::NoBound => "-".into(),
        };
        notes.push(format!(
            "χ_ρ ≥ {} (expected {}), partial sum {sum}",
            chi.map_or("?".into(), |c| c.to_string()),
            r.chi
        ));
        tally.row(
            verdict,
            format!("{spec} q={} w={}: {}", r.q, r.den, notes.join("; ")),
            json!({
                "k": r.k, "t": r.t, "q": r.q, "w": r.den,
                "count_max": computed.map(|b| b.count_max),
                "alpha": rule.alpha,
                "listed_alpha": r.alpha,
                "chi_lower": chi,
            }),
        );
    }
    Ok(tally.finish())
}

/// `(r, smallest t, k1 values)` per column.
type Column = (u64, u64, &'static [u64]);

const ODD: &[u64] = &[1, 3, 5, 7, 9, 11];
const EVEN: &[u64] = &[0, 2, 4, 6, 8, 10, 12];

const TABLE4: &[Column] = &[
    (1, 25, &[1]),
    (3, 75, &[1, 3]),
    (5, 125, &[1, 3, 5]),
    (7, 175, &[1, 3, 5, 7]),
    (9, 225, &[1, 3, 5, 7, 9]),
    (11, 275, ODD),
    (13, 325, ODD),
    (15, 375, ODD),
    (17, 425, ODD),
    (19, 475, ODD),
    (21, 525, ODD),
    (23, 575, ODD),
    (25, 625, &[3, 5, 7, 9, 11]),
    (27, 675, &[5, 7, 9, 11]),
    (29, 725, &[7, 9, 11]),
    (31, 775, &[9, 11]),
    (33, 825, &[11]),
];

const TABLE5: &[Column] = &[
    (2, 98, &[1]),
    (4, 148, &[1, 3]),
    (6, 198, &[1, 3, 5]),
    (8, 248, &[1, 3, 5, 7]),
    (10, 298, &[1, 3, 5, 7, 9]),
    (12, 348, ODD),
    (14, 398, ODD),
    (16, 448, ODD),
    (18, 498, ODD),
    (20, 548, ODD),
    (22, 598, ODD),
    (24, 648, ODD),
    (26, 698, &[3, 5, 7, 9, 11]),
    (28, 748, &[5, 7, 9, 11]),
    (30, 798, &[7, 9, 11]),
    (32, 848, &[9, 11]),
    (34, 898, &[11]),
];

const TABLE6: &[Column] = &[
    (1, 25, &[0]),
    (3, 123, &[0, 2]),
    (5, 173, &[0, 2, 4]),
    (7, 223, &[0, 2, 4, 6]),
    (9, 273, &[0, 2, 4, 6, 8]),
    (11, 323, &[0, 2, 4, 6, 8, 10]),
    (13, 373, EVEN),
    (15, 423, EVEN),
    (17, 473, EVEN),
    (19, 523, EVEN),
    (21, 573, EVEN),
    (23, 623, EVEN),
    (25, 673, &[2, 4, 6, 8, 10, 12]),
    (27, 723, &[4, 6, 8, 10, 12]),
    (29, 773, &[6, 8, 10, 12]),
    (31, 823, &[8, 10, 12]),
    (33, 873, &[10, 12]),
    (35, 923, &[12]),
];

/// Smallest `k < t` with `k ≡ ±k1 (mod 24)`, the given parity and
/// `gcd(k, t) = 1`.
fn pick_k(k1: u64, t: u64, odd: bool) -> Option<u64> {
    (0..t / 24 + 1)
        .flat_map(|m| [24 * m + k1, 24 * m + 24 - k1])
        .filter(|&k| k >= 1 && k < t && (k % 2 == 1) == odd && k.gcd(&t) == 1)
        .min()
}

fn table456(args: &LayoutTableArgs) -> Result<Outcome> {
    let mut tally = Tally::default();
    let tables: [(u8, &[Column], bool); 3] =
        [(4, TABLE4, true), (5, TABLE5, true), (6, TABLE6, false)];
    for (number, columns, k_odd) in tables {
        if args.table.is_some_and(|n| n != number) {
            continue;
        }
        for &(r, t, k1s) in columns {
            if args.max_r.is_some_and(|m| r > m) {
                continue;
            }
            for &k1 in k1s {
                let (verdict, line, data) = layout_cell(number, r, t, k1, k_odd, !args.no_verify)?;
                tally.row(
                    verdict,
                    format!("table {number} r={r} k1={k1}: {line}"),
                    data,
                );
            }
        }
    }
    Ok(tally.finish())
}

/// Checks that the layout applies at the first `t >= t_min` in the column's
/// residue class that has a matching `k`, and not at `t_min - 24`.
fn layout_cell(
    number: u8,
    r: u64,
    t_min: u64,
    k1: u64,
    k_odd: bool,
    check: bool,
) -> Result<(&'static str, String, Value)> {
    let shared = k1.gcd(&24).gcd(&(t_min % 24));
    if shared > 1 {
        let line = format!("every such pair shares the factor {shared}; nothing to build");
        return Ok(("EMPTY", line, json!({"t": t_min, "shared_factor": shared})));
    }
    let Some((k, t)) = (0..10)
        .map(|m| t_min + 24 * m)
        .find_map(|t| pick_k(k1, t, k_odd).map(|k| (k, t)))
    else {
        return Ok((
            "MISMATCH",
            format!("no k near t = {t_min}"),
            json!({"t": t_min}),
        ));
    };
    let spec = GraphSpec::new(k, t)?;
    let mut verdict = "MATCH";
    let mut notes = Vec::new();
    if t != t_min {
        notes.push(format!("no k for t = {t_min}"));
    }
    let plan = match plan_layout(&spec) {
        Ok(plan) => plan,
        Err(e) => {
            notes.push(format!("{spec}: {e}"));
            return Ok((
                "MISMATCH",
                notes.join("; "),
                json!({"k": k, "t": t, "error": e.kind()}),
            ));
        }
    };
    if plan.theorem.number() != number - 3 || plan.r != r {
        verdict = "MISMATCH";
    }
    notes.push(format!(
        "{spec} plans layout {} with r = {}",
        plan.theorem.number(),
        plan.r
    ));
    let mut max_color = None;
    if check {
        let coloring = assemble(&plan)?;
        let v = verify(&spec, &coloring)?;
        max_color = Some(coloring.max_color());
        if !v.is_valid() || coloring.max_color() > plan.theorem.palette() {
            verdict = "MISMATCH";
        }
        notes.push(format!(
            "{}, max color {}",
            if v.is_valid() { "valid" } else { "INVALID" },
            coloring.max_color()
        ));
    }
    let below = t_min.saturating_sub(24);
    if let Some(kb) = pick_k(k1, below, k_odd) {
        let smaller = GraphSpec::new(kb, below)?;
        match plan_layout(&smaller) {
            Err(Error::NotApplicable(_)) => notes.push(format!("{smaller} below threshold")),
            Ok(_) => {
                verdict = "MISMATCH";
                notes.push(format!("{smaller} also plans"));
            }
            Err(e) => notes.push(format!("{smaller}: {e}")),
        }
    }
    let data = json!({"k": k, "t": t, "r": plan.r, "max_color": max_color});
    Ok((verdict, notes.join("; "), data))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_choice() {
        assert_eq!(pick_k(1, 25, true), Some(1));
        assert_eq!(pick_k(0, 25, false), Some(24));
        assert_eq!(pick_k(3, 75, true), None);
        assert_eq!(pick_k(5, 75, true), Some(19));
        assert_eq!(pick_k(12, 923, false), Some(12));
    }

    #[test]
    fn thresholds_follow_r() {
        for &(r, t, _) in TABLE4 {
            assert_eq!(t, 25 * r);
        }
        for &(r, t, _) in TABLE5.iter().chain(&TABLE6[1..]) {
            assert_eq!(t, 25 * r + 48);
        }
    }
}
