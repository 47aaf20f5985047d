//! The guide in `book/`, compiled so its snippets run as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/configurations.md")]
pub mod configurations {}

#[doc = include_str!("../../../book/src/geometry.md")]
pub mod geometry {}

#[doc = include_str!("../../../book/src/distances.md")]
pub mod distances {}

#[doc = include_str!("../../../book/src/arms.md")]
pub mod arms {}

#[doc = include_str!("../../../book/src/shortcut.md")]
pub mod shortcut {}

#[doc = include_str!("../../../book/src/studies.md")]
pub mod studies {}
