//! Explicit periodic colorings of `D(k,t)` for large `t`.
//!
//! Write every vertex as `v = m*k + j*t` with band index `0 <= m < t`. Band
//! `B_m` is the path of vertices with the same `m`, and 24 consecutive bands
//! form a strip. A coloring is described band by band:
//!
//! * strips carry the 24×24 [`strip_pattern`], rows running across bands and
//!   columns along `j`;
//! * single bands carry the period-144 [`band_pattern`] or, for even `k` or
//!   even `t`, a path coloring with colors `18..=56` from [`goddard_word`].
//!
//! [`plan_layout`] picks the decomposition and the offsets, [`assemble`] turns
//! the plan into one [`PeriodicColoring`](crate::PeriodicColoring) that the
//! verifier checks against the whole graph.

mod assemble;
mod goddard;
mod layout;

use std::sync::OnceLock;

use crate::coloring::{parse_grid, PeriodicColoring};

pub use assemble::assemble;
pub use goddard::{goddard_word, remap_for_band};
pub use layout::{plan_layout, BandPlacement, BandWord, LayoutPlan, StripPlacement, Theorem, D_P};

/// Side length of the strip pattern.
pub const STRIP_SIZE: usize = 24;
/// Period of the two-band word.
pub const BAND_PERIOD: usize = 144;

/// The 24×24 strip coloring with colors `1..=15, 22, 23`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripPattern {
    rows: Vec<Vec<u32>>,
}

impl StripPattern {
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.rows[row][col]
    }
}

/// The period-144 band word with colors `1, 16..=21, 24..=30`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandPattern {
    word: PeriodicColoring,
}

impl BandPattern {
    pub fn word(&self) -> &PeriodicColoring {
        &self.word
    }
}

pub fn strip_pattern() -> &'static StripPattern {
    static PATTERN: OnceLock<StripPattern> = OnceLock::new();
    PATTERN.get_or_init(|| {
        let rows = parse_grid(include_str!("../../data/strip_24x24.txt"))
            .expect("embedded strip pattern parses");
        StripPattern { rows }
    })
}

pub fn band_pattern() -> &'static BandPattern {
    static PATTERN: OnceLock<BandPattern> = OnceLock::new();
    PATTERN.get_or_init(|| {
        let word = PeriodicColoring::parse(include_str!("../../data/band_144.txt"))
            .expect("embedded band pattern parses");
        BandPattern { word }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{min_same_color_distance_on_path, verify_path_pattern};

    #[test]
    fn strip_shape_and_colors() {
        let p = strip_pattern();
        assert_eq!(p.rows().len(), STRIP_SIZE);
        assert!(p.rows().iter().all(|r| r.len() == STRIP_SIZE));
        assert_eq!(&p.rows()[0][..8], &[1, 2, 1, 3, 1, 2, 1, 10]);
        let all: Vec<u32> = p.rows().iter().flatten().copied().collect();
        assert!(all.contains(&22) && all.contains(&23));
        assert!(all.iter().all(|&c| c <= 15 || c == 22 || c == 23));
    }

    #[test]
    fn strip_ones_form_a_checkerboard() {
        let p = strip_pattern();
        for (r, row) in p.rows().iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                assert_eq!(x == 1, (r + c) % 2 == 0, "row {r} col {c}");
            }
        }
    }

    #[test]
    fn band_word_basics() {
        let w = band_pattern().word();
        assert_eq!(w.period(), BAND_PERIOD);
        assert_eq!(&w.word()[..6], &[1, 16, 1, 19, 1, 24]);
        assert!(w.word().iter().step_by(2).all(|&c| c == 1));
        let allowed = [1, 16, 17, 18, 19, 20, 21, 24, 25, 26, 27, 28, 29, 30];
        assert_eq!(w.colors(), allowed.to_vec());
        assert!(verify_path_pattern(w).is_valid());
    }

    #[test]
    fn band_word_gaps() {
        let w = band_pattern().word();
        let gaps: Vec<u64> = (25..=30)
            .map(|c| min_same_color_distance_on_path(w, c).unwrap())
            .collect();
        assert_eq!(gaps, vec![26, 32, 30, 32, 32, 36]);
    }
}
