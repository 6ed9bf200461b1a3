//! Single-color densities and the density lower bound.
//!
//! If every two vertices among `n` consecutive integers are within distance
//! `i`, a window of that length holds at most one vertex of `X_i`, so
//! `d(X_i) <= 1/n`. For many graphs `n = t*i - α` for all large `i`.
//!
//! The densities of all color classes sum to 1. So if colors `1..=q`
//! together have density at most `b` and
//! `b + Σ_{i=q+1}^{c} 1/(t*i - α) < 1`, colors `1..=c` cannot cover `Z` and
//! `χ_ρ(D(k,t)) >= c + 1`.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{max_window_with_diameter, GraphSpec};

/// `d(X_i) <= 1/(t*i - alpha)` for every `i >= i_min`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaRule {
    pub spec: GraphSpec,
    pub alpha: i64,
    pub i_min: u32,
}

impl AlphaRule {
    /// The window length `t*i - alpha`.
    pub fn window(&self, i: u32) -> i64 {
        self.spec.t() as i64 * i as i64 - self.alpha
    }
}

/// Computes the largest diameter-`i` window for each `i` in the range and
/// checks that it equals `t*i - α` for one constant `α`.
pub fn fit_alpha(spec: &GraphSpec, i_range: RangeInclusive<u32>) -> Result<AlphaRule> {
    spec.require_coprime()?;
    let t = spec.t();
    let mut values = Vec::new();
    for i in i_range.clone() {
        // dist(delta) <= i forces |delta| <= i*t, so the answer is at most i*t + 1.
        let limit = t * i as u64 + 1;
        values.push((i, max_window_with_diameter(spec, i, limit)?));
    }
    let alphas: Vec<i64> = values
        .iter()
        .map(|&(i, n)| t as i64 * i as i64 - n as i64)
        .collect();
    match alphas.first() {
        Some(&alpha) if alphas.iter().all(|&a| a == alpha) => Ok(AlphaRule {
            spec: *spec,
            alpha,
            i_min: *i_range.start(),
        }),
        _ => Err(Error::NotAffine { values }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LowerBound {
    /// `χ_ρ >= chi`, because `b + Σ_{i=q+1}^{chi-1} d(i) = partial_sum < 1`.
    AtLeast { chi: u32, partial_sum: BigRational },
    /// `b >= 1`: the window bound alone says nothing.
    NoBound,
}

/// Sums densities exactly and returns the resulting lower bound.
pub fn density_lower_bound(
    spec: &GraphSpec,
    q: u32,
    b: &BigRational,
    rule: &AlphaRule,
) -> Result<LowerBound> {
    if rule.spec != *spec {
        return Err(Error::InvalidProblem(format!(
            "rule is for {}, not {spec}",
            rule.spec
        )));
    }
    if q + 1 < rule.i_min {
        return Err(Error::RuleRangeMismatch {
            q,
            i_min: rule.i_min,
        });
    }
    let one = BigRational::one();
    if b.is_negative() {
        return Err(Error::InvalidProblem("density bound is negative".into()));
    }
    if *b >= one {
        return Ok(LowerBound::NoBound);
    }
    let mut sum = b.clone();
    let mut c = q;
    loop {
        let n = rule.window(c + 1);
        if n <= 0 {
            return Err(Error::InvalidProblem(format!(
                "window t*i - alpha = {n} is not positive at i = {}",
                c + 1
            )));
        }
        let next = &sum + BigRational::new(BigInt::one(), BigInt::from(n));
        if next >= one {
            return Ok(LowerBound::AtLeast {
                chi: c + 1,
                partial_sum: sum,
            });
        }
        sum = next;
        c += 1;
    }
}

/// Decimal expansion of a nonnegative rational rounded to `digits` places,
/// halves rounded up.
pub fn to_decimal(x: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let scaled = (x * BigRational::from_integer(scale.clone()) + half)
        .floor()
        .to_integer();
    let (int, frac) = (&scaled / &scale, &scaled % &scale);
    if digits == 0 {
        return int.to_string();
    }
    format!("{int}.{:0>width$}", frac.to_string(), width = digits)
}
