use num_integer::Integer;

use crate::coloring::PeriodicColoring;
use crate::error::{Error, Result};

use super::layout::{BandWord, LayoutPlan, Owner};
use super::{band_pattern, goddard_word, remap_for_band, strip_pattern, STRIP_SIZE};

/// Level of the path word on the last band: colors `18..=56`.
const PATH_LEVEL: u32 = 18;

/// Turns a plan into one periodic coloring of `Z` anchored at `0`.
///
/// Every band is colored by a word in the spoke index `j`, of period 24, 144
/// or the path word's period. If `J` is the least common multiple of the
/// periods in use, the coloring of `Z` has period `J*t`: adding `J*t` to a
/// vertex keeps its band and moves it `J` spokes along.
///
/// The result is not verified here; pass it to [`crate::verify::verify`].
pub fn assemble(plan: &LayoutPlan) -> Result<PeriodicColoring> {
    let spec = plan.spec;
    let t = spec.t();
    let owners = plan.owners()?;
    let path = if plan.bands.iter().any(|b| b.word == BandWord::Path) {
        Some(remap_for_band(&goddard_word(PATH_LEVEL)?))
    } else {
        None
    };
    let mut spokes = (STRIP_SIZE as u64).lcm(&(super::BAND_PERIOD as u64));
    if let Some(p) = &path {
        spokes = spokes.lcm(&(p.period() as u64));
    }
    let len = spokes
        .checked_mul(t)
        .filter(|&l| l <= u32::MAX as u64)
        .ok_or_else(|| Error::AssemblyInfeasible(format!("period {spokes}*{t} is too long")))?;

    let strip = strip_pattern();
    let pair = band_pattern().word();
    let k = spec.k() as i128;
    let (t_i, len_i) = (t as i128, len as i128);
    let mut word = vec![0u32; len as usize];
    for (m, owner) in owners.iter().enumerate() {
        let color_of = |j: i64| -> u32 {
            match *owner {
                Owner::Strip { strip: s, row } => {
                    let col = (j - plan.strips[s].offset).rem_euclid(STRIP_SIZE as i64);
                    strip.get(row, col as usize)
                }
                Owner::Band(b) => {
                    let band = &plan.bands[b];
                    let w = match band.word {
                        BandWord::Pair => pair,
                        BandWord::Path => path.as_ref().expect("path word was built"),
                    };
                    w.color_at(j - band.offset)
                }
            }
        };
        for j in 0..spokes as i64 {
            let v = (m as i128 * k + j as i128 * t_i).rem_euclid(len_i);
            word[v as usize] = color_of(j);
        }
    }
    PeriodicColoring::new(word, 0)
        .map_err(|e| Error::Internal(format!("assembly left a vertex uncolored: {e}")))
}
