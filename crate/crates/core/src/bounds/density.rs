//! Density windows: how many vertices of `w` consecutive integers can carry
//! colors `1..=q` in a packing.
//!
//! Let `f(L)` be that maximum for windows of length `L`. Any packing of `Z`
//! meets every window of length `w` in at most `f(w)` vertices of
//! `X_1 ∪ ... ∪ X_q`, so `f(w)/w` bounds the density of that union.
//!
//! The values are computed with a Russian-doll search: `f(L)` is either
//! `f(L-1)` or `f(L-1) + 1`, and a packing of `1..=L` that beats `f(L-1)` must
//! color vertex `1`. While scanning the window left to right, the vertices
//! from position `i` on can add at most `f(L - i + 1)` more, which prunes the
//! search hard.

use std::fmt;
use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{offset_ball, vertex_distance, GraphSpec};

use super::search::MAX_COLORS;

const CHECKPOINT_VERSION: u32 = 1;
const FLUSH_EVERY: u64 = 4096;

/// `count_max` of the `w` window vertices can carry colors `1..=q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityBound {
    pub q: u32,
    pub w: u64,
    pub count_max: u64,
}

impl DensityBound {
    /// `count_max / w` in lowest terms.
    pub fn b(&self) -> Ratio<u64> {
        Ratio::new(self.count_max, self.w)
    }
}

impl fmt::Display for DensityBound {
    /// Unreduced, as `count_max/w`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.count_max, self.w)
    }
}

/// `maxima[L]` for every window length `L` finished so far.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityCheckpoint {
    pub version: u32,
    pub spec: GraphSpec,
    pub q: u32,
    pub maxima: Vec<u64>,
    pub nodes: u64,
}

impl DensityCheckpoint {
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let cp: DensityCheckpoint = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        if cp.version != CHECKPOINT_VERSION {
            return Err(Error::CheckpointMismatch(format!(
                "unsupported version {}",
                cp.version
            )));
        }
        Ok(cp)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityOptions {
    pub jobs: usize,
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Default for DensityOptions {
    fn default() -> Self {
        DensityOptions {
            jobs: 1,
            max_nodes: None,
            time_limit: None,
        }
    }
}

/// Computes `f(w)` for colors `1..=q`, distances in the whole graph.
///
/// On budget exhaustion returns [`Error::BudgetExceeded`] holding the
/// window maxima found so far; pass that checkpoint back to continue.
pub fn density_window_bound(
    spec: &GraphSpec,
    q: u32,
    w: u64,
    options: &DensityOptions,
    resume: Option<&DensityCheckpoint>,
) -> Result<DensityBound> {
    spec.require_coprime()?;
    if w == 0 {
        return Err(Error::InvalidProblem(
            "window length must be positive".into(),
        ));
    }
    if q > MAX_COLORS {
        return Err(Error::InvalidProblem(format!(
            "at most {MAX_COLORS} colors"
        )));
    }
    if q == 0 {
        return Ok(DensityBound { q, w, count_max: 0 });
    }
    let mut maxima = vec![0u64];
    let mut base_nodes = 0;
    if let Some(cp) = resume {
        if cp.spec != *spec || cp.q != q || cp.maxima.first() != Some(&0) {
            return Err(Error::CheckpointMismatch(
                "density checkpoint is for another run".into(),
            ));
        }
        maxima = cp.maxima.clone();
        base_nodes = cp.nodes;
    }
    if let Some(&f) = maxima.get(w as usize) {
        return Ok(DensityBound { q, w, count_max: f });
    }

    let started = Instant::now();
    let shared = Budget {
        nodes: AtomicU64::new(base_nodes),
        limit: options.max_nodes,
        deadline: options.time_limit.map(|t| started + t),
        stop: AtomicBool::new(false),
    };
    let ball = offset_ball(spec, q)?;
    let mut steps = Vec::new();
    for &delta in ball.positive() {
        steps.push((delta as usize, vertex_distance(spec, delta)? as u8));
    }
    steps.sort_unstable_by_key(|&(delta, d)| (d, delta));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;

    for len in maxima.len()..=w as usize {
        let prev = *maxima.last().expect("maxima starts with f(0)");
        let window = Window {
            len,
            q,
            steps: &steps,
            maxima: &maxima,
            target: prev + 1,
        };
        match window.improvable(&shared, &pool, options.jobs.max(1)) {
            Some(better) => maxima.push(if better { prev + 1 } else { prev }),
            None => {
                let nodes = shared.nodes.load(Ordering::Relaxed);
                let cp = DensityCheckpoint {
                    version: CHECKPOINT_VERSION,
                    spec: *spec,
                    q,
                    maxima,
                    nodes,
                };
                return Err(Error::BudgetExceeded(Box::new(cp)));
            }
        }
    }
    Ok(DensityBound {
        q,
        w,
        count_max: maxima[w as usize],
    })
}

struct Budget {
    nodes: AtomicU64,
    limit: Option<u64>,
    deadline: Option<Instant>,
    stop: AtomicBool,
}

impl Budget {
    fn flush(&self, local: &mut u64) -> bool {
        let total = self.nodes.fetch_add(*local, Ordering::Relaxed) + *local;
        *local = 0;
        if self.limit.is_some_and(|l| total >= l)
            || self.deadline.is_some_and(|d| Instant::now() >= d)
        {
            self.stop.store(true, Ordering::Relaxed);
        }
        self.stop.load(Ordering::Relaxed)
    }
}

/// One Russian-doll step: does a window of length `len` hold `target`
/// colored vertices?
struct Window<'a> {
    len: usize,
    q: u32,
    /// Positive offsets within distance `q`, with their distances.
    steps: &'a [(usize, u8)],
    maxima: &'a [u64],
    target: u64,
}

/// Per-position choice: a color, or `0` for uncolored.
type Prefix = Vec<u8>;

impl Window<'_> {
    /// `None` when the budget ran out.
    fn improvable(&self, budget: &Budget, pool: &rayon::ThreadPool, jobs: usize) -> Option<bool> {
        if jobs == 1 || self.len < 8 {
            let mut dfs = Dfs::new(self, budget);
            let found = dfs.search(0, 0, None);
            budget.flush(&mut dfs.local);
            return if budget.stop.load(Ordering::Relaxed) && found != Some(true) {
                None
            } else {
                found
            };
        }
        let depth = 4.min(self.len - 1);
        let mut prefixes = Vec::new();
        let mut dfs = Dfs::new(self, budget);
        dfs.search(0, 0, Some((depth, &mut prefixes)));
        budget.flush(&mut dfs.local);
        let found = AtomicBool::new(false);
        pool.install(|| {
            prefixes.par_iter().for_each(|prefix| {
                if found.load(Ordering::Relaxed) || budget.stop.load(Ordering::Relaxed) {
                    return;
                }
                let mut dfs = Dfs::new(self, budget);
                dfs.cancel = Some(&found);
                let mut colored = 0;
                for (pos, &col) in prefix.iter().enumerate() {
                    if col > 0 {
                        dfs.assign(pos, col);
                        colored += 1;
                    }
                }
                dfs.trail = prefix.clone();
                if dfs.search(prefix.len(), colored, None) == Some(true) {
                    found.store(true, Ordering::Relaxed);
                }
                budget.flush(&mut dfs.local);
            })
        });
        if found.load(Ordering::Relaxed) {
            Some(true)
        } else if budget.stop.load(Ordering::Relaxed) {
            None
        } else {
            Some(false)
        }
    }
}

struct Dfs<'w, 'a> {
    window: &'w Window<'a>,
    budget: &'w Budget,
    cancel: Option<&'w AtomicBool>,
    /// `blocked[v * (q+1) + c]`: assigned vertices excluding color `c` at `v`.
    blocked: Vec<u32>,
    /// Choices at positions `0..pos`.
    trail: Prefix,
    local: u64,
}

impl<'w, 'a> Dfs<'w, 'a> {
    fn new(window: &'w Window<'a>, budget: &'w Budget) -> Self {
        let stride = window.q as usize + 1;
        Dfs {
            window,
            budget,
            cancel: None,
            blocked: vec![0; window.len * stride],
            trail: Vec::new(),
            local: 0,
        }
    }

    fn assign(&mut self, v: usize, col: u8) {
        let stride = self.window.q as usize + 1;
        for &(delta, d) in self.window.steps {
            if d > col {
                break;
            }
            let w = v + delta;
            if w < self.window.len {
                self.blocked[w * stride + col as usize] += 1;
            }
        }
    }

    fn undo(&mut self, v: usize, col: u8) {
        let stride = self.window.q as usize + 1;
        for &(delta, d) in self.window.steps {
            if d > col {
                break;
            }
            let w = v + delta;
            if w < self.window.len {
                self.blocked[w * stride + col as usize] -= 1;
            }
        }
    }

    /// `Some(true)` if positions `pos..` can bring the count to the target.
    fn search(
        &mut self,
        pos: usize,
        colored: u64,
        mut collect: Option<(usize, &mut Vec<Prefix>)>,
    ) -> Option<bool> {
        let win = self.window;
        if colored >= win.target {
            return Some(true);
        }
        if pos > 0 && colored + win.maxima[win.len - pos] < win.target {
            return Some(false);
        }
        if let Some((depth, out)) = collect.as_mut() {
            if pos == *depth {
                out.push(self.trail.clone());
                return Some(false);
            }
        }
        self.local += 1;
        if self.local >= FLUSH_EVERY {
            if self.budget.flush(&mut self.local) {
                return None;
            }
            if self.cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
                return None;
            }
        }
        let stride = win.q as usize + 1;
        for col in 1..=win.q as u8 {
            if self.blocked[pos * stride + col as usize] > 0 {
                continue;
            }
            self.assign(pos, col);
            self.trail.push(col);
            let r = self.search(
                pos + 1,
                colored + 1,
                collect.as_mut().map(|(d, o)| (*d, &mut **o)),
            );
            self.trail.pop();
            self.undo(pos, col);
            if r != Some(false) {
                return r;
            }
        }
        if pos == 0 {
            return Some(false);
        }
        self.trail.push(0);
        let r = self.search(pos + 1, colored, collect);
        self.trail.pop();
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bound(k: u64, t: u64, q: u32, w: u64) -> DensityBound {
        let spec = GraphSpec::new(k, t).unwrap();
        density_window_bound(&spec, q, w, &DensityOptions::default(), None).unwrap()
    }

    #[test]
    fn no_colors() {
        assert_eq!(bound(2, 7, 0, 10).count_max, 0);
    }

    #[test]
    fn one_color_on_d12() {
        // X_1 is an independent set of D(1,2): at most 1 in any 3 consecutive.
        assert_eq!(bound(1, 2, 1, 3).count_max, 1);
        assert_eq!(bound(1, 2, 1, 9).count_max, 3);
        assert_eq!(bound(1, 2, 1, 10).count_max, 4);
    }

    #[test]
    fn display_keeps_the_window() {
        let b = DensityBound {
            q: 7,
            w: 42,
            count_max: 38,
        };
        assert_eq!(b.to_string(), "38/42");
        assert_eq!(b.b(), Ratio::new(19, 21));
    }

    #[test]
    fn parallel_agrees() {
        let spec = GraphSpec::new(2, 5).unwrap();
        let seq = density_window_bound(&spec, 3, 24, &DensityOptions::default(), None).unwrap();
        let opts = DensityOptions {
            jobs: 4,
            ..DensityOptions::default()
        };
        let par = density_window_bound(&spec, 3, 24, &opts, None).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn budget_and_resume() {
        let spec = GraphSpec::new(2, 7).unwrap();
        let full = density_window_bound(&spec, 3, 30, &DensityOptions::default(), None).unwrap();
        let mut step = 2_000;
        let mut opts = DensityOptions {
            max_nodes: Some(step),
            ..DensityOptions::default()
        };
        let mut resume = None;
        loop {
            match density_window_bound(&spec, 3, 30, &opts, resume.as_ref()) {
                Ok(b) => {
                    assert_eq!(b, full);
                    break;
                }
                Err(Error::BudgetExceeded(cp)) => {
                    // A window length restarts on resume, so the step must grow.
                    step *= 2;
                    opts.max_nodes = Some(cp.nodes + step);
                    resume = Some(*cp);
                }
                Err(e) => panic!("{e}"),
            }
        }
        assert!(resume.is_some());
    }
}
