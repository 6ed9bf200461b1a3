//! Exhaustive colorability search on finite metric spaces.
//!
//! The engine assigns colors to vertices in a fixed order (left to right),
//! trying colors in ascending order. For every vertex it keeps a bitmask of
//! colors not yet excluded by an assigned neighbor: assigning color `c` to
//! `v` excludes `c` at every vertex within distance `c` of `v`. A branch dies
//! as soon as some unassigned vertex has no color left.
//!
//! The DFS state is a stack of color choices, so a search can stop on a
//! budget and resume later from a [`Checkpoint`]. With several jobs the tree
//! is cut at a fixed depth into lexicographically ordered subtrees that run in
//! parallel; the smallest satisfiable subtree wins, so the witness does not
//! depend on the number of jobs.

use std::collections::{BTreeMap, VecDeque};
use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{offset_ball, vertex_distance, GraphSpec};

/// Largest number of colors the bitmask representation supports.
pub const MAX_COLORS: u32 = 63;
/// Distance used for pairs in different components.
pub const UNREACHABLE: u32 = u32::MAX;
const CHECKPOINT_VERSION: u32 = 1;
const FLUSH_EVERY: u64 = 4096;

/// Can the window `1..=p` of `D(k,t)` be packed with colors `1..=c`, with
/// some vertices colored in advance?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchProblem {
    pub spec: GraphSpec,
    pub p: u32,
    pub c: u32,
    pub precoloring: BTreeMap<u32, u32>,
}

impl SearchProblem {
    pub fn new(
        spec: GraphSpec,
        p: u32,
        c: u32,
        precoloring: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidProblem(
                "the window must contain a vertex".into(),
            ));
        }
        check_palette(c)?;
        let mut map = BTreeMap::new();
        for (v, col) in precoloring {
            if !(1..=p).contains(&v) {
                return Err(Error::InvalidProblem(format!(
                    "vertex {v} is outside 1..={p}"
                )));
            }
            if !(1..=c).contains(&col) {
                return Err(Error::InvalidProblem(format!(
                    "color {col} is outside 1..={c}"
                )));
            }
            if map.insert(v, col).is_some_and(|old| old != col) {
                return Err(Error::InvalidProblem(format!(
                    "vertex {v} is precolored twice"
                )));
            }
        }
        Ok(SearchProblem {
            spec,
            p,
            c,
            precoloring: map,
        })
    }
}

fn check_palette(c: u32) -> Result<()> {
    if c == 0 || c > MAX_COLORS {
        return Err(Error::InvalidProblem(format!(
            "colors must be in 1..={MAX_COLORS}, got {c}"
        )));
    }
    Ok(())
}

/// How distances between window vertices are measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceMode {
    /// Distance in the whole graph `D(k,t)`; paths may leave the window.
    #[default]
    Full,
    /// Distance in the subgraph induced by the window.
    Induced,
}

impl DistanceMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            DistanceMode::Full => "full",
            DistanceMode::Induced => "induced",
        }
    }
}

/// Limits on a search run. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub mode: DistanceMode,
    pub jobs: usize,
    pub budget: Budget,
    /// Depth at which the tree is cut for parallel runs; chosen automatically
    /// when `None`.
    pub split_depth: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mode: DistanceMode::Full,
            jobs: 1,
            budget: Budget::default(),
            split_depth: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Sat,
    Unsat,
    Timeout,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Sat => "SAT",
            Status::Unsat => "UNSAT",
            Status::Timeout => "TIMEOUT",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Color assignments tried, including those of earlier resumed runs.
    pub nodes: u64,
    /// Most free vertices colored at once.
    pub max_depth: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub status: Status,
    /// Colors of all vertices in order (vertex `1` first for windows).
    pub witness: Option<Vec<u32>>,
    pub stats: SearchStats,
    /// Present exactly when the status is [`Status::Timeout`].
    pub checkpoint: Option<Checkpoint>,
}

/// A subtree of the search: everything lexicographically after `choices`
/// that keeps the first `floor` choices fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frontier {
    pub floor: usize,
    pub choices: Vec<u8>,
    /// The last choice has been explored already and must be advanced.
    pub advance: bool,
}

/// Identifies the instance a checkpoint belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemKey {
    pub vertices: usize,
    pub colors: u32,
    pub precoloring: Vec<(usize, u32)>,
    /// SHA-256 of the constraint lists.
    pub digest: String,
}

/// Resumable search state, stored as JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub key: ProblemKey,
    pub nodes: u64,
    pub frontiers: Vec<Frontier>,
}

impl Checkpoint {
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let cp: Checkpoint = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        if cp.version != CHECKPOINT_VERSION {
            return Err(Error::CheckpointMismatch(format!(
                "unsupported version {}",
                cp.version
            )));
        }
        Ok(cp)
    }
}

/// Symmetric matrix of pairwise distances with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<u32>,
}

impl DistanceMatrix {
    pub fn new(n: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidDistanceMatrix(format!(
                "{} entries for {n} vertices",
                entries.len()
            )));
        }
        for i in 0..n {
            if entries[i * n + i] != 0 {
                return Err(Error::InvalidDistanceMatrix(format!(
                    "nonzero diagonal at {i}"
                )));
            }
            for j in i + 1..n {
                let d = entries[i * n + j];
                if d != entries[j * n + i] {
                    return Err(Error::InvalidDistanceMatrix(format!(
                        "asymmetric at ({i},{j})"
                    )));
                }
                if d == 0 {
                    return Err(Error::InvalidDistanceMatrix(format!(
                        "zero distance at ({i},{j})"
                    )));
                }
            }
        }
        Ok(DistanceMatrix { n, entries })
    }

    /// The `rows × cols` square lattice; vertex `(r, c)` has index
    /// `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let n = rows * cols;
        let mut entries = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let (ra, ca) = (a / cols, a % cols);
                let (rb, cb) = (b / cols, b % cols);
                entries[a * n + b] = (ra.abs_diff(rb) + ca.abs_diff(cb)) as u32;
            }
        }
        DistanceMatrix { n, entries }
    }

    /// Shortest paths inside the window `1..=p` of `D(k,t)`, by breadth-first
    /// search from every vertex. Index `i` stands for vertex `i + 1`.
    pub fn induced_window(spec: &GraphSpec, p: u32) -> Self {
        let n = p as usize;
        let steps = [spec.k() as usize, spec.t() as usize];
        let mut entries = vec![UNREACHABLE; n * n];
        let mut queue = VecDeque::new();
        for src in 0..n {
            let row = &mut entries[src * n..(src + 1) * n];
            row[src] = 0;
            queue.push_back(src);
            while let Some(v) = queue.pop_front() {
                let d = row[v];
                for s in steps {
                    for w in [v.checked_sub(s), v.checked_add(s).filter(|&w| w < n)]
                        .into_iter()
                        .flatten()
                    {
                        if row[w] == UNREACHABLE {
                            row[w] = d + 1;
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        DistanceMatrix { n, entries }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }
}

/// Decides whether the window `1..=p` can be packed with colors `1..=c`.
///
/// In [`DistanceMode::Full`] two window vertices conflict when their distance
/// in `D(k,t)` is at most the shared color, even if every shortest path
/// leaves the window. Full distances never exceed induced ones, so this mode
/// has at least the conflicts of [`DistanceMode::Induced`]. Any packing
/// coloring of `D(k,t)` restricted to the window satisfies both sets, so an
/// UNSAT answer in either mode gives `χ_ρ(D(k,t)) > c`.
///
/// A precolored run only shows that the precoloring does not extend.
pub fn search_colorability(
    problem: &SearchProblem,
    options: &SearchOptions,
    resume: Option<&Checkpoint>,
) -> Result<SearchOutcome> {
    let spec = &problem.spec;
    spec.require_coprime()?;
    let n = problem.p as usize;
    let c = problem.c;
    let pre: Vec<(usize, u32)> = problem
        .precoloring
        .iter()
        .map(|(&v, &col)| (v as usize - 1, col))
        .collect();
    match options.mode {
        DistanceMode::Full => {
            let ball = offset_ball(spec, c)?;
            let mut nbrs = vec![Vec::new(); n];
            for &delta in ball.positive() {
                let d = vertex_distance(spec, delta)? as u32;
                let delta = delta as usize;
                for v in 0..n.saturating_sub(delta) {
                    nbrs[v].push((v + delta, d));
                    nbrs[v + delta].push((v, d));
                }
            }
            let instance = Instance::new(nbrs, c);
            let check =
                |i: usize, j: usize| vertex_distance(spec, j as i64 - i as i64).map(|d| d as u32);
            solve(&instance, &pre, options, resume, check)
        }
        DistanceMode::Induced => {
            let matrix = DistanceMatrix::induced_window(spec, problem.p);
            search_finite_graph(&matrix, c, &pre, options, resume)
        }
    }
}

/// [`search_colorability`] for an arbitrary finite metric. Vertices are the
/// matrix indices `0..n`; the precoloring uses the same indices.
pub fn search_finite_graph(
    matrix: &DistanceMatrix,
    c: u32,
    precoloring: &[(usize, u32)],
    options: &SearchOptions,
    resume: Option<&Checkpoint>,
) -> Result<SearchOutcome> {
    check_palette(c)?;
    let n = matrix.len();
    for &(v, col) in precoloring {
        if v >= n || !(1..=c).contains(&col) {
            return Err(Error::InvalidProblem(format!(
                "bad precolored pair {v} -> {col}"
            )));
        }
    }
    let mut nbrs = vec![Vec::new(); n];
    for (i, list) in nbrs.iter_mut().enumerate() {
        for j in 0..n {
            let d = matrix.get(i, j);
            if i != j && d <= c {
                list.push((j, d));
            }
        }
    }
    let instance = Instance::new(nbrs, c);
    solve(&instance, precoloring, options, resume, |i, j| {
        Ok(matrix.get(i, j))
    })
}

/// Conflict lists: `nbrs[v]` holds `(w, dist)` for `w` within distance `c`,
/// sorted by distance.
struct Instance {
    c: u32,
    nbrs: Vec<Vec<(usize, u32)>>,
}

impl Instance {
    fn new(mut nbrs: Vec<Vec<(usize, u32)>>, c: u32) -> Self {
        for list in &mut nbrs {
            list.sort_unstable_by_key(|&(w, d)| (d, w));
        }
        Instance { c, nbrs }
    }

    fn len(&self) -> usize {
        self.nbrs.len()
    }

    fn key(&self, pre: &[(usize, u32)]) -> ProblemKey {
        let mut hasher = Sha256::new();
        for list in &self.nbrs {
            for &(w, d) in list {
                hasher.update((w as u64).to_le_bytes());
                hasher.update(d.to_le_bytes());
            }
            hasher.update(u64::MAX.to_le_bytes());
        }
        let digest = hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        let mut precoloring = pre.to_vec();
        precoloring.sort_unstable();
        ProblemKey {
            vertices: self.len(),
            colors: self.c,
            precoloring,
            digest,
        }
    }
}

#[derive(Clone)]
struct State<'a> {
    inst: &'a Instance,
    /// Free vertices in search order.
    order: Vec<usize>,
    color: Vec<u8>,
    blocked: Vec<u32>,
    avail: Vec<u64>,
}

impl<'a> State<'a> {
    /// `None` if the precoloring already conflicts or leaves a vertex without
    /// colors.
    fn new(inst: &'a Instance, pre: &[(usize, u32)]) -> Option<Self> {
        let n = inst.len();
        let all = ((1u64 << (inst.c + 1)) - 1) & !1;
        let mut state = State {
            inst,
            order: Vec::new(),
            color: vec![0; n],
            blocked: vec![0; n * (inst.c as usize + 1)],
            avail: vec![all; n],
        };
        for &(v, col) in pre {
            if state.avail[v] & (1 << col) == 0 {
                return None;
            }
            state.assign(v, col as u8);
        }
        state.order = (0..n).filter(|&v| state.color[v] == 0).collect();
        if state.order.iter().any(|&v| state.avail[v] == 0) {
            return None;
        }
        Some(state)
    }

    /// Returns `false` if some uncolored vertex ran out of colors.
    fn assign(&mut self, v: usize, col: u8) -> bool {
        self.color[v] = col;
        let stride = self.inst.c as usize + 1;
        let mut ok = true;
        for &(w, d) in &self.inst.nbrs[v] {
            if d > col as u32 {
                break;
            }
            let b = &mut self.blocked[w * stride + col as usize];
            if *b == 0 {
                self.avail[w] &= !(1u64 << col);
            }
            *b += 1;
            if self.color[w] == 0 && self.avail[w] == 0 {
                ok = false;
            }
        }
        ok
    }

    fn undo(&mut self, v: usize, col: u8) {
        self.color[v] = 0;
        let stride = self.inst.c as usize + 1;
        for &(w, d) in &self.inst.nbrs[v] {
            if d > col as u32 {
                break;
            }
            let b = &mut self.blocked[w * stride + col as usize];
            *b -= 1;
            if *b == 0 {
                self.avail[w] |= 1u64 << col;
            }
        }
    }

    fn next_color(&self, v: usize, after: u8) -> Option<u8> {
        let mask = self.avail[v] & !((2u64 << after) - 1);
        (mask != 0).then(|| mask.trailing_zeros() as u8)
    }

    fn apply(&mut self, choices: &[u8]) {
        for (d, &col) in choices.iter().enumerate() {
            self.assign(self.order[d], col);
        }
    }
}

struct Shared {
    nodes: AtomicU64,
    limit: Option<u64>,
    deadline: Option<Instant>,
    stop: AtomicBool,
    first_sat: AtomicUsize,
}

impl Shared {
    fn flush(&self, local: &mut u64) {
        let total = self.nodes.fetch_add(*local, Ordering::Relaxed) + *local;
        *local = 0;
        let over_nodes = self.limit.is_some_and(|l| total >= l);
        let over_time = self.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.stop.store(true, Ordering::Relaxed);
        }
    }
}

enum RunEnd {
    Sat(Vec<u8>),
    Exhausted,
    Paused(Frontier),
    Cancelled,
    /// A prefix of the requested length (only when collecting prefixes).
    Prefix,
}

struct Run<'s, 'a> {
    state: State<'a>,
    shared: &'s Shared,
    index: usize,
    local: u64,
    max_depth: usize,
}

impl Run<'_, '_> {
    /// Runs the DFS of `frontier`. With `cut = Some(d)`, stops at every
    /// consistent prefix of length `d`, stores it in `out` and continues.
    fn run(&mut self, frontier: Frontier, cut: Option<(usize, &mut Vec<Vec<u8>>)>) -> RunEnd {
        let Frontier {
            floor,
            mut choices,
            mut advance,
        } = frontier;
        let mut cut = cut;
        let depth_goal = self.state.order.len();
        loop {
            if self.local >= FLUSH_EVERY {
                self.shared.flush(&mut self.local);
                if self.shared.first_sat.load(Ordering::Relaxed) < self.index {
                    return RunEnd::Cancelled;
                }
            }
            if self.shared.stop.load(Ordering::Relaxed) {
                return RunEnd::Paused(Frontier {
                    floor,
                    choices,
                    advance,
                });
            }
            let (d, start) = if advance {
                if choices.len() == floor {
                    return RunEnd::Exhausted;
                }
                let col = choices.pop().expect("stack is above the floor");
                let d = choices.len();
                self.state.undo(self.state.order[d], col);
                (d, col)
            } else {
                if choices.len() == depth_goal {
                    return RunEnd::Sat(choices);
                }
                if let Some((len, out)) = cut.as_mut() {
                    if choices.len() == *len {
                        out.push(choices.clone());
                        advance = true;
                        if out.len() > 1 << 20 {
                            return RunEnd::Prefix;
                        }
                        continue;
                    }
                }
                (choices.len(), 0)
            };
            let v = self.state.order[d];
            match self.state.next_color(v, start) {
                None => advance = true,
                Some(col) => {
                    self.local += 1;
                    let ok = self.state.assign(v, col);
                    choices.push(col);
                    self.max_depth = self.max_depth.max(choices.len());
                    advance = !ok;
                }
            }
        }
    }
}

fn solve(
    inst: &Instance,
    pre: &[(usize, u32)],
    options: &SearchOptions,
    resume: Option<&Checkpoint>,
    distance: impl Fn(usize, usize) -> Result<u32>,
) -> Result<SearchOutcome> {
    let started = Instant::now();
    let key = inst.key(pre);
    if let Some(cp) = resume {
        if cp.key != key {
            return Err(Error::CheckpointMismatch(
                "instance differs from the checkpoint".into(),
            ));
        }
    }
    let base_nodes = resume.map_or(0, |cp| cp.nodes);
    let finish = |status, witness, nodes, max_depth, checkpoint| SearchOutcome {
        status,
        witness,
        stats: SearchStats {
            nodes,
            max_depth,
            seconds: started.elapsed().as_secs_f64(),
        },
        checkpoint,
    };
    let Some(root) = State::new(inst, pre) else {
        return Ok(finish(Status::Unsat, None, base_nodes, 0, None));
    };
    let shared = Shared {
        nodes: AtomicU64::new(base_nodes),
        limit: options.budget.max_nodes,
        deadline: options.budget.time_limit.map(|t| started + t),
        stop: AtomicBool::new(false),
        first_sat: AtomicUsize::new(usize::MAX),
    };
    let jobs = options.jobs.max(1);
    let mut max_depth = 0;
    let frontiers = match resume {
        Some(cp) => cp.frontiers.clone(),
        None if jobs == 1 && options.split_depth.is_none() => {
            vec![Frontier {
                floor: 0,
                choices: Vec::new(),
                advance: false,
            }]
        }
        None => {
            let (frontiers, depth) = split(&root, &shared, jobs, options.split_depth);
            max_depth = depth;
            frontiers
        }
    };

    let run_one = |index: usize, frontier: &Frontier| -> (RunEnd, usize) {
        if shared.first_sat.load(Ordering::Relaxed) < index {
            return (RunEnd::Cancelled, 0);
        }
        let mut state = root.clone();
        state.apply(&frontier.choices);
        let mut run = Run {
            state,
            shared: &shared,
            index,
            local: 0,
            max_depth: 0,
        };
        let end = run.run(frontier.clone(), None);
        shared.flush(&mut run.local);
        if let RunEnd::Sat(_) = end {
            shared.first_sat.fetch_min(index, Ordering::Relaxed);
        }
        (end, run.max_depth)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let results: Vec<(RunEnd, usize)> = pool.install(|| {
        frontiers
            .par_iter()
            .enumerate()
            .map(|(i, f)| run_one(i, f))
            .collect()
    });
    let nodes = shared.nodes.load(Ordering::Relaxed);
    max_depth = results.iter().map(|r| r.1).fold(max_depth, usize::max);

    let mut paused = Vec::new();
    for (end, _) in results {
        match end {
            RunEnd::Sat(choices) => {
                let mut state = root.clone();
                state.apply(&choices);
                let witness: Vec<u32> = state.color.iter().map(|&c| c as u32).collect();
                check_witness(&witness, &distance)?;
                return Ok(finish(Status::Sat, Some(witness), nodes, max_depth, None));
            }
            RunEnd::Paused(f) => paused.push(f),
            RunEnd::Exhausted | RunEnd::Cancelled => {}
            RunEnd::Prefix => return Err(Error::Internal("prefix marker outside split".into())),
        }
    }
    if paused.is_empty() {
        return Ok(finish(Status::Unsat, None, nodes, max_depth, None));
    }
    let checkpoint = Checkpoint {
        version: CHECKPOINT_VERSION,
        key,
        nodes,
        frontiers: paused,
    };
    Ok(finish(
        Status::Timeout,
        None,
        nodes,
        max_depth,
        Some(checkpoint),
    ))
}

/// Cuts the tree at the first depth giving at least `16 * jobs` subtrees (or
/// at `forced`), returning the subtrees in lexicographic order.
fn split(
    root: &State,
    shared: &Shared,
    jobs: usize,
    forced: Option<usize>,
) -> (Vec<Frontier>, usize) {
    let free = root.order.len();
    let whole = || {
        vec![Frontier {
            floor: 0,
            choices: Vec::new(),
            advance: false,
        }]
    };
    if free < 2 {
        return (whole(), 0);
    }
    let depths: Vec<usize> = match forced {
        Some(d) => vec![d.clamp(1, free - 1)],
        None => (1..free.min(12)).collect(),
    };
    let mut best = (whole(), 0);
    for depth in depths {
        let mut prefixes = Vec::new();
        let mut run = Run {
            state: root.clone(),
            shared,
            index: 0,
            local: 0,
            max_depth: 0,
        };
        let start = Frontier {
            floor: 0,
            choices: Vec::new(),
            advance: false,
        };
        let end = run.run(start, Some((depth, &mut prefixes)));
        shared.flush(&mut run.local);
        if let RunEnd::Sat(_) = end {
            // Cannot happen: depth < free vertices.
            break;
        }
        if matches!(end, RunEnd::Paused(_)) {
            break;
        }
        let frontiers: Vec<Frontier> = prefixes
            .into_iter()
            .map(|choices| Frontier {
                floor: depth,
                choices,
                advance: false,
            })
            .collect();
        let enough = frontiers.len() >= 16 * jobs;
        best = (frontiers, depth);
        if enough {
            break;
        }
    }
    best
}

fn check_witness(colors: &[u32], distance: &impl Fn(usize, usize) -> Result<u32>) -> Result<()> {
    for i in 0..colors.len() {
        for j in i + 1..colors.len() {
            if colors[i] == colors[j] && distance(i, j)? <= colors[i] {
                return Err(Error::Internal(format!(
                    "witness puts color {} on {i} and {j} at distance {}",
                    colors[i],
                    distance(i, j)?
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(k: u64, t: u64, p: u32, c: u32, pre: &[(u32, u32)]) -> SearchProblem {
        SearchProblem::new(GraphSpec::new(k, t).unwrap(), p, c, pre.iter().copied()).unwrap()
    }

    fn status(p: &SearchProblem) -> Status {
        search_colorability(p, &SearchOptions::default(), None)
            .unwrap()
            .status
    }

    #[test]
    fn trivial_instances() {
        assert_eq!(status(&problem(2, 3, 2, 1, &[])), Status::Sat);
        assert_eq!(status(&problem(2, 3, 3, 1, &[])), Status::Unsat);
        assert_eq!(status(&problem(1, 2, 1, 1, &[])), Status::Sat);
    }

    #[test]
    fn witness_is_reported_in_window_order() {
        let out = search_colorability(&problem(2, 3, 4, 3, &[]), &SearchOptions::default(), None)
            .unwrap();
        assert_eq!(out.status, Status::Sat);
        assert_eq!(out.witness.unwrap(), vec![1, 1, 2, 3]);
    }

    #[test]
    fn rejects_bad_problems() {
        let spec = GraphSpec::new(2, 3).unwrap();
        assert!(SearchProblem::new(spec, 0, 3, []).is_err());
        assert!(SearchProblem::new(spec, 5, 0, []).is_err());
        assert!(SearchProblem::new(spec, 5, 64, []).is_err());
        assert!(SearchProblem::new(spec, 5, 3, [(6, 1)]).is_err());
        assert!(SearchProblem::new(spec, 5, 3, [(1, 4)]).is_err());
    }

    #[test]
    fn precoloring_conflict_is_unsat() {
        // Vertices 1 and 3 are adjacent in D(2,3).
        assert_eq!(
            status(&problem(2, 3, 5, 3, &[(1, 1), (3, 1)])),
            Status::Unsat
        );
    }

    #[test]
    fn path_of_two() {
        let m = DistanceMatrix::new(2, vec![0, 1, 1, 0]).unwrap();
        let out = search_finite_graph(&m, 1, &[], &SearchOptions::default(), None).unwrap();
        assert_eq!(out.status, Status::Unsat);
    }

    #[test]
    fn matrix_validation() {
        assert!(DistanceMatrix::new(2, vec![0, 1, 2, 0]).is_err());
        assert!(DistanceMatrix::new(2, vec![1, 1, 1, 0]).is_err());
        assert!(DistanceMatrix::new(2, vec![0, 0, 0, 0]).is_err());
        assert!(DistanceMatrix::new(2, vec![0, 1, 1]).is_err());
    }

    #[test]
    fn induced_distances() {
        let spec = GraphSpec::new(2, 3).unwrap();
        let m = DistanceMatrix::induced_window(&spec, 4);
        // 1 -> 3 -> 5 is outside; inside the window 1 and 2 need 1 -> 4 -> 2.
        assert_eq!(m.get(0, 1), 2);
        let m = DistanceMatrix::induced_window(&spec, 2);
        assert_eq!(m.get(0, 1), UNREACHABLE);
    }

    #[test]
    fn budget_then_resume() {
        let p = problem(2, 3, 40, 7, &[(1, 7)]);
        let full = search_colorability(&p, &SearchOptions::default(), None).unwrap();
        let mut opts = SearchOptions::default();
        opts.budget.max_nodes = Some(5_000);
        let mut out = search_colorability(&p, &opts, None).unwrap();
        let mut rounds = 0;
        while out.status == Status::Timeout {
            let cp = out.checkpoint.take().unwrap();
            opts.budget.max_nodes = Some(cp.nodes + 5_000);
            out = search_colorability(&p, &opts, Some(&cp)).unwrap();
            rounds += 1;
        }
        assert!(rounds > 0);
        assert_eq!(out.status, full.status);
        assert_eq!(out.witness, full.witness);
    }

    #[test]
    fn parallel_matches_sequential() {
        for (k, t, p, c) in [(2, 3, 30, 6), (1, 3, 25, 5), (3, 5, 40, 7), (2, 5, 20, 4)] {
            let prob = problem(k, t, p, c, &[]);
            let seq = search_colorability(&prob, &SearchOptions::default(), None).unwrap();
            let opts = SearchOptions {
                jobs: 4,
                ..SearchOptions::default()
            };
            let par = search_colorability(&prob, &opts, None).unwrap();
            assert_eq!(seq.status, par.status);
            assert_eq!(seq.witness, par.witness);
        }
    }

    #[test]
    fn checkpoint_mismatch() {
        let a = problem(2, 3, 40, 7, &[(1, 7)]);
        let mut opts = SearchOptions::default();
        opts.budget.max_nodes = Some(10);
        let out = search_colorability(&a, &opts, None).unwrap();
        let cp = out.checkpoint.unwrap();
        let b = problem(2, 3, 41, 7, &[(1, 7)]);
        assert!(matches!(
            search_colorability(&b, &opts, Some(&cp)),
            Err(Error::CheckpointMismatch(_))
        ));
    }
}
