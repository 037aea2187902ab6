//! The narrative guide, mirrored from the mdbook sources under `book/`.
//!
//! Each chapter is included verbatim as the documentation of an empty
//! module, so every code snippet in the book runs as a doc-test and the two
//! stay in sync by construction. Build the rendered book with
//! `mdbook build book` from the repository root.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/networks.md")]
pub mod networks {}

#[doc = include_str!("../../../book/src/dynamics.md")]
pub mod dynamics {}

#[doc = include_str!("../../../book/src/strategies.md")]
pub mod strategies {}

#[doc = include_str!("../../../book/src/harness.md")]
pub mod harness {}
