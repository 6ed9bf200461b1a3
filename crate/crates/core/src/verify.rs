//! Exact verification of periodic packing colorings.
//!
//! # Why one period is enough
//!
//! Distances in `D(k,t)` depend only on differences, and a periodic coloring
//! with period `L` satisfies `color(u + L) = color(u)`. If `u` and `u + delta`
//! share color `c` with `dist(delta) <= c`, then so do `u' = u - mL` and
//! `u' + delta` for the `m` that moves `u'` into `[anchor, anchor + L)`. So it
//! suffices to test every `u` of a single period against every positive
//! `delta` in the distance ball of radius `color(u)`; negative offsets are the
//! same pairs seen from the other end.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::PeriodicColoring;
use crate::error::{Error, Result};
use crate::graph::{offset_ball, vertex_distance, GraphSpec};

/// Two vertices `u < v` of color `color` at distance `distance <= color`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationWitness {
    pub color: u32,
    pub u: i64,
    pub v: i64,
    pub distance: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Valid,
    Invalid(ViolationWitness),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn witness(&self) -> Option<&ViolationWitness> {
        match self {
            Verdict::Valid => None,
            Verdict::Invalid(w) => Some(w),
        }
    }
}

/// Checks `coloring` against `D(k,t)`.
///
/// The reported witness is the smallest `(color, u, v - u)` in lexicographic
/// order with `u` taken from `[anchor, anchor + L)`, whatever the thread count.
pub fn verify(spec: &GraphSpec, coloring: &PeriodicColoring) -> Result<Verdict> {
    spec.require_coprime()?;
    let l = coloring.period() as i64;
    let anchor = coloring.anchor();
    for c in coloring.colors() {
        let ball = offset_ball(spec, c)?;
        let positions: Vec<i64> = (0..l)
            .filter(|&i| coloring.word()[i as usize] == c)
            .map(|i| anchor + i)
            .collect();
        let hit = positions.par_iter().find_map_first(|&u| {
            ball.positive()
                .iter()
                .find(|&&delta| coloring.color_at(u + delta) == c)
                .map(|&delta| (u, delta))
        });
        if let Some((u, delta)) = hit {
            let distance = vertex_distance(spec, delta)?;
            return Ok(Verdict::Invalid(ViolationWitness {
                color: c,
                u,
                v: u + delta,
                distance,
            }));
        }
    }
    Ok(Verdict::Valid)
}

/// Smallest gap between two occurrences of `c` when the word colors the
/// infinite path `... - 1 - 0 - 1 - ...` periodically.
///
/// A color that occurs once per period repeats after exactly `L` steps, so
/// the answer is always finite.
pub fn min_same_color_distance_on_path(word: &PeriodicColoring, c: u32) -> Result<u64> {
    let positions = positions_of(word, c);
    if positions.is_empty() {
        return Err(Error::ColorAbsent { color: c });
    }
    let l = word.period() as u64;
    let wrap = positions[0] + l - positions[positions.len() - 1];
    Ok(positions
        .windows(2)
        .map(|p| p[1] - p[0])
        .chain([wrap])
        .min()
        .unwrap_or(wrap))
}

/// Checks the word as a packing coloring of the infinite path.
pub fn verify_path_pattern(word: &PeriodicColoring) -> Verdict {
    let l = word.period() as u64;
    for c in word.colors() {
        let positions = positions_of(word, c);
        for (idx, &p) in positions.iter().enumerate() {
            let next = positions.get(idx + 1).copied().unwrap_or(positions[0] + l);
            let gap = next - p;
            if gap <= c as u64 {
                let u = word.anchor() + p as i64;
                return Verdict::Invalid(ViolationWitness {
                    color: c,
                    u,
                    v: u + gap as i64,
                    distance: gap,
                });
            }
        }
    }
    Verdict::Valid
}

fn positions_of(word: &PeriodicColoring, c: u32) -> Vec<u64> {
    word.word()
        .iter()
        .enumerate()
        .filter(|(_, &x)| x == c)
        .map(|(i, _)| i as u64)
        .collect()
}
