use crate::setsystem::{Density, SubsetMask};

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("family density {density} is not above 1/2")]
    DensityTooLow { density: Density },

    #[error("requirement {requirement} is not covered by any candidate")]
    Infeasible { requirement: usize },

    #[error("pair {{{x}, {y}}} is not separated by the family")]
    UnseparatedPair { x: u32, y: u32 },

    #[error("constraint {index} is not satisfied by any member of the family")]
    UnsatisfiableConstraint { index: usize },

    #[error("no cover with at most {max_size} members exists; the minimum is at least {lower_bound}")]
    BoundExceeded { max_size: usize, lower_bound: usize },

    #[error("the set is shattered by the family and has no type")]
    NoType,

    #[error("no subfamily of at most {t} members covers the ground set")]
    NotFound { t: usize },

    #[error("k-subsets {a} and {b} have the same hull and no convex set separates them")]
    Inseparable { a: SubsetMask, b: SubsetMask },

    #[error("point configuration is not in general position")]
    NotGeneralPosition,

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
