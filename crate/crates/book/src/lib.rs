//! The chapters of the guide under `book/src`, one module each, so that
//! `cargo test --doc` runs every snippet against the current library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/groups.md")]
pub mod groups {}
#[doc = include_str!("../../../book/src/presentations.md")]
pub mod presentations {}
#[doc = include_str!("../../../book/src/nu.md")]
pub mod nu {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../book/src/engel.md")]
pub mod engel {}
#[doc = include_str!("../../../book/src/lie.md")]
pub mod lie {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../book/src/reports.md")]
pub mod reports {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
