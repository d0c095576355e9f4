//! The guide under `book/`, compiled so that its listings run as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/finite_fields.md")]
pub mod finite_fields {}

#[doc = include_str!("../../../book/src/motives.md")]
pub mod motives {}

#[doc = include_str!("../../../book/src/height_moduli.md")]
pub mod height_moduli {}

#[doc = include_str!("../../../book/src/sections.md")]
pub mod sections {}

#[doc = include_str!("../../../book/src/counting.md")]
pub mod counting {}

#[doc = include_str!("../../../book/src/weierstrass.md")]
pub mod weierstrass {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
