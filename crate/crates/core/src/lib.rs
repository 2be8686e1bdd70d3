//! Selecting few members of a set family that separate every separable
//! pair of points, with exact oracles and geometric instances.

#![allow(clippy::len_without_is_empty, clippy::too_many_arguments)]

pub(crate) mod bitset;
pub mod cli;
pub mod constraint_select;
pub mod error;
pub mod geom_sep;
pub mod linear_select;
pub mod oracle;
pub mod phased_select;
pub mod setsystem;
pub mod vc_tools;

pub use error::{Error, Result};
