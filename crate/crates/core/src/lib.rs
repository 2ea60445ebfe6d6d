#![allow(clippy::result_large_err, clippy::large_enum_variant)]

pub mod alexander;
pub mod knots;
pub mod pl;
pub mod rational;
pub mod semigroup;
pub mod upsilon;
