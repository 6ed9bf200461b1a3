//! Packing colorings of the infinite distance graphs `D(k,t)`.
//!
//! `D(k,t)` has the integers as vertices, and two integers are adjacent when
//! they differ by exactly `k` or `t`. A packing coloring splits the vertices
//! into classes `X_1, X_2, ...` where any two vertices of `X_i` are more than
//! `i` apart in the graph.
//!
//! The crate is organised around five pieces:
//!
//! * [`graph`]: the graph itself (connectivity, normalization, exact
//!   distances, band coordinates and distance balls).
//! * [`coloring`]: periodic colorings of `Z` and their text file formats.
//! * [`verify`]: the exact checker for periodic colorings.
//! * [`constructions`]: explicit 30- and 56-colorings for large `t`.
//! * [`bounds`]: exhaustive colorability search, density windows and the
//!   density lower bound on the packing chromatic number.
//!
//! ```
//! use packcolor::{constructions, graph::GraphSpec, verify};
//!
//! let spec = GraphSpec::new(1, 25)?;
//! let plan = constructions::plan_layout(&spec)?;
//! let coloring = constructions::assemble(&plan)?;
//! assert!(verify::verify(&spec, &coloring)?.is_valid());
//! assert_eq!(coloring.max_color(), 30);
//! # Ok::<(), packcolor::Error>(())
//! ```

pub mod bounds;
pub mod coloring;
pub mod constructions;
mod error;
pub mod graph;
pub mod verify;

pub use coloring::PeriodicColoring;
pub use error::{Error, Result};
pub use graph::GraphSpec;
pub use verify::{Verdict, ViolationWitness};
