//! The distance graph `D(k,t)` and the arithmetic behind it.
//!
//! Distances in `D(k,t)` only depend on the difference `delta = v - u`: a walk
//! from `u` to `v` uses `a` steps of `±k` and `b` steps of `±t` with
//! `a*k + b*t = delta`, so
//!
//! ```text
//! dist(u, v) = min { |a| + |b| : a*k + b*t = v - u }.
//! ```
//!
//! For coprime `k, t` every integer is reachable and the graph is connected.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The pair `(k, t)` with `0 < k < t` defining `D(k,t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct GraphSpec {
    k: u64,
    t: u64,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    k: u64,
    t: u64,
}

impl TryFrom<RawSpec> for GraphSpec {
    type Error = Error;
    fn try_from(raw: RawSpec) -> Result<Self> {
        GraphSpec::new(raw.k, raw.t)
    }
}

impl From<GraphSpec> for RawSpec {
    fn from(spec: GraphSpec) -> Self {
        RawSpec {
            k: spec.k,
            t: spec.t,
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D({},{})", self.k, self.t)
    }
}

impl GraphSpec {
    pub fn new(k: u64, t: u64) -> Result<Self> {
        // Keep t small enough that i*t and band arithmetic never leave i64.
        if k == 0 || k >= t || t > u32::MAX as u64 {
            return Err(Error::InvalidSpec { k, t });
        }
        Ok(GraphSpec { k, t })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn gcd(&self) -> u64 {
        self.k.gcd(&self.t)
    }

    /// `D(k,t)` is connected exactly when `gcd(k,t) = 1`.
    pub fn is_connected(&self) -> bool {
        self.gcd() == 1
    }

    /// Divides out `g = gcd(k,t)`. The components of `D(k,t)` are `g` copies
    /// of `D(k/g, t/g)`, so both graphs share the packing chromatic number.
    pub fn normalize(&self) -> (GraphSpec, u64) {
        let g = self.gcd();
        (
            GraphSpec {
                k: self.k / g,
                t: self.t / g,
            },
            g,
        )
    }

    pub(crate) fn require_coprime(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::NotCoprime {
                k: self.k,
                t: self.t,
            })
        }
    }

    /// Graph distance between `u` and `u + delta`.
    pub fn distance(&self, delta: i64) -> Result<u64> {
        vertex_distance(self, delta)
    }
}

/// See [`GraphSpec::normalize`].
pub fn normalize(spec: &GraphSpec) -> (GraphSpec, u64) {
    spec.normalize()
}

pub fn is_connected(spec: &GraphSpec) -> bool {
    spec.is_connected()
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    (old_r, old_s, old_t)
}

/// Exact distance from `0` to `delta` in `D(k,t)`.
///
/// All solutions of `a*k + b*t = delta` form the family
/// `(a0 + n*t, b0 - n*k)`, and `|a| + |b|` is convex and piecewise linear in
/// `n`, so the minimum sits next to one of the two breakpoints.
pub fn vertex_distance(spec: &GraphSpec, delta: i64) -> Result<u64> {
    let g = spec.gcd();
    if delta.rem_euclid(g as i64) != 0 {
        return Err(Error::UnreachableVertex { delta });
    }
    spec.require_coprime()?;
    let (k, t, d) = (spec.k as i128, spec.t as i128, delta as i128);
    let (_, x, y) = extended_gcd(k, t);
    let (a0, b0) = (d * x, d * y);
    let cost = |n: i128| (a0 + n * t).abs() + (b0 - n * k).abs();
    let n1 = (-a0).div_euclid(t);
    let n2 = b0.div_euclid(k);
    let best = [n1, n1 + 1, n2, n2 + 1]
        .into_iter()
        .map(cost)
        .min()
        .expect("candidate list is not empty");
    Ok(best as u64)
}

/// Distance by brute force: the smallest `s` such that some `|a| + |b| = s`
/// solves `a*k + b*t = delta`. Used as an internal cross-check of
/// [`vertex_distance`]; the cost grows quadratically with the answer.
pub fn distance_by_enumeration(spec: &GraphSpec, delta: i64) -> Result<u64> {
    let g = spec.gcd();
    if delta.rem_euclid(g as i64) != 0 {
        return Err(Error::UnreachableVertex { delta });
    }
    spec.require_coprime()?;
    let (k, t) = (spec.k as i64, spec.t as i64);
    let mut s: i64 = 0;
    loop {
        for a in -s..=s {
            let rest = s - a.abs();
            if a * k + rest * t == delta || a * k - rest * t == delta {
                return Ok(s as u64);
            }
        }
        s += 1;
    }
}

/// Position of a vertex in the band layout: `v = band * k + spoke * t` with
/// `0 <= band < t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BandCoordinate {
    pub band: u64,
    pub spoke: i64,
}

impl BandCoordinate {
    pub fn vertex(&self, spec: &GraphSpec) -> i64 {
        self.band as i64 * spec.k as i64 + self.spoke * spec.t as i64
    }
}

/// Band coordinates of `v`. Band `m` is the path `{m*k + j*t : j in Z}`; the
/// `t` bands partition `Z` when `gcd(k,t) = 1`.
pub fn coordinates(spec: &GraphSpec, v: i64) -> Result<BandCoordinate> {
    spec.require_coprime()?;
    let inverse = k_inverse_mod_t(spec);
    let t = spec.t as i128;
    let band = ((v as i128).rem_euclid(t) * inverse as i128).rem_euclid(t);
    let spoke = (v as i128 - band * spec.k as i128) / t;
    Ok(BandCoordinate {
        band: band as u64,
        spoke: spoke as i64,
    })
}

/// `k^{-1} mod t` for a coprime spec.
pub(crate) fn k_inverse_mod_t(spec: &GraphSpec) -> u64 {
    let (_, x, _) = extended_gcd(spec.k as i128, spec.t as i128);
    x.rem_euclid(spec.t as i128) as u64
}

/// All nonzero offsets within distance `radius` of `0`, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffsetBall {
    radius: u32,
    offsets: Vec<i64>,
    first_positive: usize,
}

impl OffsetBall {
    fn build(spec: &GraphSpec, radius: u32) -> Self {
        let (k, t, r) = (spec.k as i64, spec.t as i64, radius as i64);
        let mut set = BTreeSet::new();
        for a in -r..=r {
            let rest = r - a.abs();
            for b in -rest..=rest {
                let delta = a * k + b * t;
                if delta != 0 {
                    set.insert(delta);
                }
            }
        }
        let offsets: Vec<i64> = set.into_iter().collect();
        let first_positive = offsets.partition_point(|&d| d < 0);
        OffsetBall {
            radius,
            offsets,
            first_positive,
        }
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    /// The positive half; the ball is symmetric around `0`.
    pub fn positive(&self) -> &[i64] {
        &self.offsets[self.first_positive..]
    }

    pub fn contains(&self, delta: i64) -> bool {
        self.offsets.binary_search(&delta).is_ok()
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }
}

type BallCache = RwLock<HashMap<(GraphSpec, u32), Arc<OffsetBall>>>;

fn ball_cache() -> &'static BallCache {
    static CACHE: OnceLock<BallCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The distance ball of radius `i` around `0`, memoized per `(spec, i)`.
pub fn offset_ball(spec: &GraphSpec, i: u32) -> Result<Arc<OffsetBall>> {
    spec.require_coprime()?;
    if let Some(ball) = ball_cache()
        .read()
        .expect("ball cache poisoned")
        .get(&(*spec, i))
    {
        return Ok(Arc::clone(ball));
    }
    let ball = Arc::new(OffsetBall::build(spec, i));
    let mut cache = ball_cache().write().expect("ball cache poisoned");
    Ok(Arc::clone(cache.entry((*spec, i)).or_insert(ball)))
}

/// Largest `n <= search_limit` such that any `n` consecutive integers are
/// pairwise within distance `i`. Equivalently, the smallest `delta >= 1` with
/// `dist(delta) > i`.
pub fn max_window_with_diameter(spec: &GraphSpec, i: u32, search_limit: u64) -> Result<u64> {
    spec.require_coprime()?;
    for delta in 1..=search_limit {
        if vertex_distance(spec, delta as i64)? > i as u64 {
            return Ok(delta);
        }
    }
    Err(Error::LimitExceeded {
        limit: search_limit,
    })
}

/// DOT description of the subgraph induced by the vertices `from..=to`.
pub fn window_dot(spec: &GraphSpec, from: i64, to: i64) -> String {
    let mut out = format!("graph \"D({},{})\" {{\n", spec.k, spec.t);
    for v in from..=to {
        out.push_str(&format!("  {v};\n"));
    }
    for v in from..=to {
        for step in [spec.k as i64, spec.t as i64] {
            if v + step <= to {
                out.push_str(&format!("  {} -- {};\n", v, v + step));
            }
        }
    }
    out.push_str("}\n");
    out
}
