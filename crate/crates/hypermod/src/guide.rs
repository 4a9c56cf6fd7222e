//! The user guide, one module per book chapter.
//!
//! The chapters live as markdown under `book/` (an mdbook source tree) and
//! are included here as doc-comments, so `cargo test --doc` compiles and
//! runs every code snippet in the book. A failing snippet points at its
//! chapter through the module name.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/data-model.md")]
pub mod data_model {}

#[doc = include_str!("../../../book/src/modularity.md")]
pub mod modularity_criteria {}

#[doc = include_str!("../../../book/src/optimizers.md")]
pub mod optimizers {}

#[doc = include_str!("../../../book/src/generators.md")]
pub mod generators {}

#[doc = include_str!("../../../book/src/benchmarking.md")]
pub mod benchmarking {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
