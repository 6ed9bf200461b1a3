//! Periodic colorings of `Z` and the plain-text pattern formats.
//!
//! A one-dimensional pattern file looks like
//!
//! ```text
//! # comments start with '#'
//! period 4
//! anchor 0
//! 1, 2, 1, 3
//! ```
//!
//! The `anchor` line is optional. Entries may be separated by commas or
//! whitespace and may span any number of lines. A two-dimensional grid file
//! starts with `rows R cols C` followed by `R` lines of `C` entries.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coloring `v -> word[(v - anchor) mod L]` of the integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicColoring {
    word: Vec<u32>,
    anchor: i64,
}

impl PeriodicColoring {
    /// Fails on an empty word or on color `0`.
    pub fn new(word: Vec<u32>, anchor: i64) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "empty word".into(),
            });
        }
        if let Some(pos) = word.iter().position(|&c| c == 0) {
            return Err(Error::Parse {
                line: 0,
                message: format!("color 0 at position {pos}"),
            });
        }
        Ok(PeriodicColoring { word, anchor })
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn anchor(&self) -> i64 {
        self.anchor
    }

    pub fn period(&self) -> usize {
        self.word.len()
    }

    pub fn color_at(&self, v: i64) -> u32 {
        let l = self.word.len() as i64;
        self.word[(v - self.anchor).rem_euclid(l) as usize]
    }

    pub fn max_color(&self) -> u32 {
        self.word.iter().copied().max().unwrap_or(0)
    }

    /// The distinct colors used, ascending.
    pub fn colors(&self) -> Vec<u32> {
        self.word
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Same coloring of `Z`, anchored at `new_anchor`.
    pub fn reanchored(&self, new_anchor: i64) -> Self {
        let l = self.word.len();
        let shift = (new_anchor - self.anchor).rem_euclid(l as i64) as usize;
        let mut word = self.word.clone();
        word.rotate_left(shift);
        PeriodicColoring {
            word,
            anchor: new_anchor,
        }
    }

    /// Replaces every color through `f`, keeping the anchor.
    pub fn map_colors(&self, f: impl Fn(u32) -> u32) -> Self {
        PeriodicColoring {
            word: self.word.iter().map(|&c| f(c)).collect(),
            anchor: self.anchor,
        }
    }

    pub fn to_pattern_string(&self) -> String {
        let mut out = format!("period {}\nanchor {}\n", self.word.len(), self.anchor);
        for chunk in self.word.chunks(24) {
            let line: Vec<String> = chunk.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "missing `period` line".into(),
        })?;
        let period: usize = keyword_value(header, "period", line_no)?;
        let mut anchor = 0i64;
        let mut word = Vec::with_capacity(period);
        for (line_no, line) in lines {
            if word.is_empty() && line.starts_with("anchor") {
                anchor = keyword_value(line, "anchor", line_no)?;
                continue;
            }
            word.extend(parse_entries(line, line_no)?);
        }
        if word.len() != period {
            return Err(Error::Parse {
                line: 0,
                message: format!("declared period {period} but found {} entries", word.len()),
            });
        }
        PeriodicColoring::new(word, anchor)
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_pattern_string())?;
        Ok(())
    }
}

/// Parses a `rows R cols C` grid file into its rows.
pub fn parse_grid(text: &str) -> Result<Vec<Vec<u32>>> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        message: "missing `rows` line".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (rows, cols) = match fields.as_slice() {
        ["rows", r, "cols", c] => (
            r.parse::<usize>().map_err(|e| parse_err(line_no, e))?,
            c.parse::<usize>().map_err(|e| parse_err(line_no, e))?,
        ),
        _ => {
            return Err(Error::Parse {
                line: line_no,
                message: "expected `rows R cols C`".into(),
            })
        }
    };
    let mut grid = Vec::with_capacity(rows);
    for (line_no, line) in lines {
        let row = parse_entries(line, line_no)?;
        if row.len() != cols {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {cols} entries, found {}", row.len()),
            });
        }
        grid.push(row);
    }
    if grid.len() != rows {
        return Err(Error::Parse {
            line: 0,
            message: format!("expected {rows} rows, found {}", grid.len()),
        });
    }
    Ok(grid)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_err(line: usize, e: impl std::fmt::Display) -> Error {
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

fn keyword_value<T: std::str::FromStr>(line: &str, keyword: &str, line_no: usize) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    let rest = line.strip_prefix(keyword).ok_or_else(|| Error::Parse {
        line: line_no,
        message: format!("expected `{keyword}`"),
    })?;
    rest.trim().parse().map_err(|e| parse_err(line_no, e))
}

fn parse_entries(line: &str, line_no: usize) -> Result<Vec<u32>> {
    line.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u32>()
                .map_err(|e| parse_err(line_no, format!("{s:?}: {e}")))
        })
        .collect()
}
