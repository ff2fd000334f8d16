//! The user guide under `book/`, compiled here so its examples run as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/exact.md")]
pub mod exact {}
#[doc = include_str!("../../../book/src/matrices.md")]
pub mod matrices {}
#[doc = include_str!("../../../book/src/modules.md")]
pub mod modules {}
#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
