//! Path colorings with colors `l, l+1, ..., 3l+2`.
//!
//! The search looks for a word of period `P` in which every color class is a
//! single residue class `a mod s` with `s | P` and `s >= c + 1`; such a class
//! is automatically a `c`-packing of the path. It runs in two phases.
//!
//! 1. Choose how many classes use each modulus `s`. The weights `P/s` must add
//!    up to `P`, and sorting the moduli must leave room for distinct colors:
//!    at most `s - l` classes may have modulus `<= s`.
//! 2. Check that residue classes with those moduli can tile `Z/P`. A multiset
//!    of moduli tiles the residues `0 mod d` if it is the single class `d`, or
//!    if for some prime `p` with `d*p` dividing every modulus it splits into
//!    `p` groups of equal weight that each tile one of the classes
//!    `i*d mod d*p`. The check is memoized on `(d, counts)`.
//!
//! Classes are then handed out by increasing modulus to colors `l, l+1, ...`;
//! colors left over stay unused.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::coloring::PeriodicColoring;
use crate::error::{Error, Result};
use crate::verify::verify_path_pattern;

/// Periods tried in order. Multiples of 144 keep the assembled colorings
/// short when the word shares a graph with the period-144 band word.
const PERIODS: [u64; 8] = [144, 288, 432, 576, 720, 864, 1152, 1296];
/// Phase-one candidates examined per period before giving up on it.
const COUNT_BUDGET: usize = 100_000;

/// A periodic word over colors `l..=3l+2` that packs the infinite path.
///
/// Results are cached per `l`.
pub fn goddard_word(l: u32) -> Result<PeriodicColoring> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<PeriodicColoring>>>> = OnceLock::new();
    if l == 0 {
        return Err(Error::SearchExhausted { l });
    }
    let cache = CACHE.get_or_init(Default::default);
    if let Some(w) = cache.lock().expect("goddard cache poisoned").get(&l) {
        return Ok(PeriodicColoring::clone(w));
    }
    let word = search(l)?;
    cache
        .lock()
        .expect("goddard cache poisoned")
        .insert(l, Arc::new(word.clone()));
    Ok(word)
}

/// Replaces colors 22 and 23 by 16 and 17, which strips never use.
pub fn remap_for_band(word: &PeriodicColoring) -> PeriodicColoring {
    word.map_colors(|c| match c {
        22 => 16,
        23 => 17,
        c => c,
    })
}

fn search(l: u32) -> Result<PeriodicColoring> {
    for &p in &PERIODS {
        if let Some(classes) = Search::new(l as u64, p).run() {
            let mut word = vec![0u32; p as usize];
            for (i, &(a, s)) in classes.iter().enumerate() {
                for x in (a..p).step_by(s as usize) {
                    word[x as usize] = l + i as u32;
                }
            }
            let word = PeriodicColoring::new(word, 0)
                .map_err(|e| Error::Internal(format!("tiling left holes: {e}")))?;
            if !verify_path_pattern(&word).is_valid() {
                return Err(Error::Internal(format!(
                    "path word for l={l} failed its check"
                )));
            }
            return Ok(word);
        }
    }
    Err(Error::SearchExhausted { l })
}

/// `(modulus, count)` pairs, sorted by modulus, nonzero counts only.
type Counts = Vec<(u64, u32)>;
/// Residue classes `(a, s)` meaning `a mod s`, relative to the node `0 mod d`.
type Classes = Vec<(u64, u64)>;

struct Search {
    l: u64,
    period: u64,
    moduli: Vec<u64>,
    colors: u64,
    tries: usize,
    memo: HashMap<(u64, Counts), Option<Classes>>,
}

impl Search {
    fn new(l: u64, period: u64) -> Self {
        let moduli = (l + 1..=period).filter(|s| period % s == 0).collect();
        Search {
            l,
            period,
            moduli,
            colors: 2 * l + 3,
            tries: 0,
            memo: HashMap::new(),
        }
    }

    fn run(&mut self) -> Option<Classes> {
        let mut chosen = Vec::new();
        let mut classes = self.choose_counts(0, 0, self.period, &mut chosen)?;
        classes.sort_by_key(|&(a, s)| (s, a));
        Some(classes)
    }

    fn choose_counts(
        &mut self,
        idx: usize,
        used: u64,
        remaining: u64,
        chosen: &mut Counts,
    ) -> Option<Classes> {
        if remaining == 0 {
            self.tries += 1;
            if self.tries > COUNT_BUDGET {
                return None;
            }
            return self.tile(1, chosen.clone());
        }
        if idx == self.moduli.len() || self.tries > COUNT_BUDGET {
            return None;
        }
        let s = self.moduli[idx];
        let weight = self.period / s;
        if (self.colors - used) * weight < remaining {
            return None;
        }
        let cap = (s - self.l).min(self.colors).saturating_sub(used);
        let hi = cap.min(remaining / weight);
        for n in (0..=hi).rev() {
            if n > 0 {
                chosen.push((s, n as u32));
            }
            let found = self.choose_counts(idx + 1, used + n, remaining - n * weight, chosen);
            if n > 0 {
                chosen.pop();
            }
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn tile(&mut self, d: u64, counts: Counts) -> Option<Classes> {
        if counts.len() == 1 && counts[0] == (d, 1) {
            return Some(vec![(0, d)]);
        }
        let key = (d, counts);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let counts = &key.1;
        let mut result = None;
        if counts.iter().map(|&(_, c)| c).sum::<u32>() >= 2 {
            for p in prime_factors(self.period / d) {
                if counts.iter().any(|&(s, _)| s % (d * p) != 0) {
                    continue;
                }
                let mut split = Split {
                    counts,
                    target: self.period / (d * p),
                    period: self.period,
                    groups: vec![vec![0; counts.len()]; p as usize],
                    loads: vec![0; p as usize],
                };
                if let Some(classes) = split.distribute(self, d * p, 0, 0, counts[0].1) {
                    result = Some(classes);
                    break;
                }
            }
        }
        self.memo.insert(key, result.clone());
        result
    }
}

/// Splitting one node's counts into `p` equal-weight children.
struct Split<'a> {
    counts: &'a Counts,
    target: u64,
    period: u64,
    groups: Vec<Vec<u32>>,
    loads: Vec<u64>,
}

impl Split<'_> {
    /// Places the `left` remaining classes of modulus number `i` into groups
    /// `j..`. Groups that agree on all earlier moduli take non-increasing
    /// counts, which removes permutations of identical groups.
    fn distribute(
        &mut self,
        search: &mut Search,
        child: u64,
        i: usize,
        j: usize,
        left: u32,
    ) -> Option<Classes> {
        let p = self.groups.len();
        if i == self.counts.len() {
            if self.loads.iter().any(|&x| x != self.target) {
                return None;
            }
            let step = child / p as u64;
            let mut classes = Vec::new();
            for (g, group) in self.groups.iter().enumerate() {
                let sub: Counts = self
                    .counts
                    .iter()
                    .zip(group)
                    .filter(|(_, &n)| n > 0)
                    .map(|(&(s, _), &n)| (s, n))
                    .collect();
                let shift = g as u64 * step;
                classes.extend(
                    search
                        .tile(child, sub)?
                        .into_iter()
                        .map(|(a, s)| (a + shift, s)),
                );
            }
            return Some(classes);
        }
        let weight = self.period / self.counts[i].0;
        let same_as_prev = j > 0 && self.groups[j - 1][..i] == self.groups[j][..i];
        let next_left = self.counts.get(i + 1).map_or(0, |&(_, c)| c);
        if j == p - 1 {
            let w = weight * left as u64;
            if self.loads[j] + w > self.target || (same_as_prev && left > self.groups[j - 1][i]) {
                return None;
            }
            self.groups[j][i] = left;
            self.loads[j] += w;
            let found = self.distribute(search, child, i + 1, 0, next_left);
            self.loads[j] -= w;
            self.groups[j][i] = 0;
            return found;
        }
        let mut hi = left.min(((self.target - self.loads[j]) / weight) as u32);
        if same_as_prev {
            hi = hi.min(self.groups[j - 1][i]);
        }
        for x in (0..=hi).rev() {
            self.groups[j][i] = x;
            self.loads[j] += x as u64 * weight;
            let found = self.distribute(search, child, i, j + 1, left - x);
            self.loads[j] -= x as u64 * weight;
            self.groups[j][i] = 0;
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    out
}
