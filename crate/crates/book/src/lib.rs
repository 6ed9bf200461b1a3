//! The guide's chapters as doc comments, so `cargo test` runs every Rust
//! block in them. mdbook cannot link external crates into its own tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/distance-graphs.md")]
pub mod distance_graphs {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}

#[doc = include_str!("../../../book/src/constructions.md")]
pub mod constructions {}

#[doc = include_str!("../../../book/src/lower-bounds.md")]
pub mod lower_bounds {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
