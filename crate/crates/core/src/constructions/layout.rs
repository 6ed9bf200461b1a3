//! Strip and band decompositions of `D(k,t)`.
//!
//! Offsets are spoke indices: a strip placed at `(first_band, offset)` puts
//! row `r`, column `c` of the 24×24 pattern on the vertex
//! `(first_band + r)*k + (offset + c)*t`, repeated every 24 columns. A band
//! placed at `(band, offset)` starts its word at `band*k + offset*t`.
//!
//! Three layouts are supported, by the parities of `k` and `t`:
//!
//! * both odd: `S_0 B_24 S_25 B_49 ... B_{25r-1} S_{25r} ... S_{t-24}`, with
//!   `t = 24s + r`;
//! * exactly one even, general case: `S_0 S_24 B_48 S_49 ... S_{t-25} B_{t-1}`
//!   with `t = 24(s+2) + r`, the last band colored from `18..=56`;
//! * `k` even, `k ≡ 0 (mod 24)`, `t = 24s + 1`: `s` strips and one band with
//!   colors from `18..=56`.
//!
//! Here `k1 = min(k mod 24, 24 - k mod 24)` and `r` is the least admissible
//! value with `r ≡ t (mod 24)`. The layout needs `s >= r`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::GraphSpec;

use super::BAND_PERIOD;

/// Allowed differences between offsets of two bands 25 apart: `±6..=±25`.
pub const D_P: [std::ops::RangeInclusive<i64>; 2] = [-25..=-6, 6..=25];

fn in_dp(x: i64) -> bool {
    D_P.iter().any(|r| r.contains(&x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    /// `k` and `t` odd; 30 colors.
    KtOdd,
    /// `k` odd, `t` even; 56 colors.
    KOddTEven,
    /// `k` even, `t` odd; 56 colors.
    KEvenTOdd,
}

impl Theorem {
    pub fn number(&self) -> u8 {
        match self {
            Theorem::KtOdd => 1,
            Theorem::KOddTEven => 2,
            Theorem::KEvenTOdd => 3,
        }
    }

    /// Largest color the assembled coloring may use.
    pub fn palette(&self) -> u32 {
        match self {
            Theorem::KtOdd => 30,
            _ => 56,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripPlacement {
    pub first_band: u64,
    pub offset: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BandWord {
    /// The period-144 two-band word.
    Pair,
    /// The remapped path word with colors `16, 17, 18..=21, 24..=56`.
    Path,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandPlacement {
    pub band: u64,
    pub offset: i64,
    pub word: BandWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutPlan {
    pub spec: GraphSpec,
    pub theorem: Theorem,
    pub r: u64,
    pub s: u64,
    pub k1: u64,
    pub strips: Vec<StripPlacement>,
    pub bands: Vec<BandPlacement>,
}

impl LayoutPlan {
    /// Offsets `j_i` of the period-144 bands, in band order.
    pub fn band_offsets(&self) -> Vec<i64> {
        self.bands
            .iter()
            .filter(|b| b.word == BandWord::Pair)
            .map(|b| b.offset)
            .collect()
    }

    /// For each band index, the strip row or band that colors it.
    pub fn owners(&self) -> Result<Vec<Owner>> {
        let t = self.spec.t();
        let mut owners = vec![None; t as usize];
        let mut claim = |m: u64, owner: Owner| -> Result<()> {
            let slot = owners
                .get_mut(m as usize)
                .ok_or_else(|| Error::Internal(format!("band {m} is outside 0..{t}")))?;
            if slot.is_some() {
                return Err(Error::Internal(format!("band {m} is covered twice")));
            }
            *slot = Some(owner);
            Ok(())
        };
        for (idx, strip) in self.strips.iter().enumerate() {
            for row in 0..super::STRIP_SIZE as u64 {
                claim(
                    strip.first_band + row,
                    Owner::Strip {
                        strip: idx,
                        row: row as usize,
                    },
                )?;
            }
        }
        for (idx, band) in self.bands.iter().enumerate() {
            claim(band.band, Owner::Band(idx))?;
        }
        owners
            .into_iter()
            .enumerate()
            .map(|(m, o)| o.ok_or_else(|| Error::Internal(format!("band {m} is not covered"))))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Owner {
    Strip { strip: usize, row: usize },
    Band(usize),
}

/// Plans the decomposition for a coprime spec.
pub fn plan_layout(spec: &GraphSpec) -> Result<LayoutPlan> {
    spec.require_coprime()?;
    let (k, t) = (spec.k(), spec.t());
    let km = k % 24;
    let k1 = km.min(24 - km);
    // Offsets grow away from zero in the direction that cancels k mod 24.
    let sign: i64 = if km == k1 { -1 } else { 1 };
    match (k % 2, t % 2) {
        (1, 1) => plan_odd(spec, k1, sign),
        (1, 0) => plan_mixed(spec, Theorem::KOddTEven, k1, sign),
        (0, 1) if k1 == 0 && t % 24 == 1 => plan_single_band(spec),
        (0, 1) => plan_mixed(spec, Theorem::KEvenTOdd, k1, sign),
        _ => Err(Error::NotCoprime { k, t }),
    }
}

fn too_small(spec: &GraphSpec, need: u64) -> Error {
    Error::NotApplicable(format!("{spec} needs t >= {need}"))
}

fn plan_odd(spec: &GraphSpec, k1: u64, sign: i64) -> Result<LayoutPlan> {
    let t = spec.t();
    let mut r = t % 24;
    if r < k1 {
        r += 24;
    }
    if t < 25 * r {
        return Err(too_small(spec, 25 * r));
    }
    let s = (t - r) / 24;
    let mut strips = Vec::new();
    for i in 1..=r {
        let offset = if i + k1 <= r + 1 {
            if i % 2 == 1 {
                0
            } else {
                -1
            }
        } else {
            sign * (i + k1 - r - 1) as i64
        };
        strips.push(StripPlacement {
            first_band: 25 * (i - 1),
            offset,
        });
    }
    for i in r + 1..=s {
        strips.push(StripPlacement {
            first_band: 24 * (i - 1) + r,
            offset: sign * k1 as i64,
        });
    }
    let wrap = if s == r && r > 1 {
        Some(spec.k() as i64)
    } else {
        None
    };
    let offsets = choose_band_offsets(r as usize, wrap)
        .ok_or_else(|| Error::AssemblyInfeasible(format!("no band offsets for {spec}")))?;
    let bands = offsets
        .into_iter()
        .zip(1..)
        .map(|(offset, i)| BandPlacement {
            band: 25 * i - 1,
            offset,
            word: BandWord::Pair,
        })
        .collect();
    Ok(LayoutPlan {
        spec: *spec,
        theorem: Theorem::KtOdd,
        r,
        s,
        k1,
        strips,
        bands,
    })
}

fn plan_mixed(spec: &GraphSpec, theorem: Theorem, k1: u64, sign: i64) -> Result<LayoutPlan> {
    let t = spec.t();
    let mut r = t % 24;
    if r <= k1 {
        r += 24;
    }
    if t < 25 * r + 48 {
        return Err(too_small(spec, 25 * r + 48));
    }
    let s = (t - r) / 24 - 2;
    let mut strips = vec![StripPlacement {
        first_band: 0,
        offset: 0,
    }];
    for i in 1..=r {
        let offset = if i + k1 <= r {
            if i % 2 == 1 {
                0
            } else {
                -1
            }
        } else {
            sign * (i + k1 - r) as i64
        };
        strips.push(StripPlacement {
            first_band: 25 * i - 1,
            offset,
        });
    }
    for i in r + 1..=s + 1 {
        strips.push(StripPlacement {
            first_band: 24 * i + r - 1,
            offset: sign * k1 as i64,
        });
    }
    let offsets = choose_band_offsets(r as usize - 1, None)
        .ok_or_else(|| Error::AssemblyInfeasible(format!("no band offsets for {spec}")))?;
    let mut bands: Vec<BandPlacement> = offsets
        .into_iter()
        .zip(1..)
        .map(|(offset, i)| BandPlacement {
            band: 25 * i + 23,
            offset,
            word: BandWord::Pair,
        })
        .collect();
    bands.push(BandPlacement {
        band: t - 1,
        offset: 0,
        word: BandWord::Path,
    });
    Ok(LayoutPlan {
        spec: *spec,
        theorem,
        r,
        s,
        k1,
        strips,
        bands,
    })
}

fn plan_single_band(spec: &GraphSpec) -> Result<LayoutPlan> {
    let s = spec.t() / 24;
    let strips = (0..s)
        .map(|i| StripPlacement {
            first_band: 24 * i,
            offset: 0,
        })
        .collect();
    let bands = vec![BandPlacement {
        band: 24 * s,
        offset: 0,
        word: BandWord::Path,
    }];
    Ok(LayoutPlan {
        spec: *spec,
        theorem: Theorem::KEvenTOdd,
        r: 1,
        s,
        k1: 0,
        strips,
        bands,
    })
}

/// Offsets `j_1, ..., j_n` with `j_i` even for odd `i` and odd for even `i`,
/// consecutive differences in [`D_P`] and, when `wrap = Some(k)`,
/// `(j_n - j_1 + k) mod 144` in `D_P` read modulo 144.
///
/// Depth-first search taking candidates by increasing `|j|`, so the result is
/// the lexicographically smallest feasible sequence in that order.
pub(crate) fn choose_band_offsets(n: usize, wrap: Option<i64>) -> Option<Vec<i64>> {
    if n == 0 {
        return Some(Vec::new());
    }
    let mut seq = vec![0i64];
    if extend(&mut seq, n, wrap) {
        Some(seq)
    } else {
        None
    }
}

fn extend(seq: &mut Vec<i64>, n: usize, wrap: Option<i64>) -> bool {
    if seq.len() == n {
        return match wrap {
            None => true,
            Some(k) => {
                let x = (seq[n - 1] - seq[0] + k).rem_euclid(BAND_PERIOD as i64);
                in_dp(x) || in_dp(x - BAND_PERIOD as i64)
            }
        };
    }
    let last = *seq.last().expect("sequence starts with j_1");
    let mut candidates: Vec<i64> = D_P
        .iter()
        .flat_map(|r| r.clone())
        .filter(|d| d % 2 != 0)
        .map(|d| last + d)
        .collect();
    candidates.sort_by_key(|&j| (j.abs(), j));
    for j in candidates {
        seq.push(j);
        if extend(seq, n, wrap) {
            return true;
        }
        seq.pop();
    }
    false
}
