//! Rank-metric codes over small finite fields: isometries between codes,
//! extension of isometries to the ambient matrix space, the support-path
//! calculus behind the elementary extension construction, and brute-force
//! oracles that settle extendability exactly at desk scale.

pub mod cli;
pub mod code;
pub mod error;
pub mod extend;
pub mod fixtures;
pub mod gf;
pub mod isometry;
pub mod json;
pub mod matfq;
pub mod paths;

pub use code::RankCode;
pub use error::{Error, Result};
pub use extend::{ExtensionWitness, ScalarAssignment};
pub use gf::Field;
pub use isometry::{CodeMap, PropertyWitness, SearchLimits};
pub use matfq::{Matrix, SubspaceBasis, SubspaceRelation};
pub use paths::{Path, Position, ReductionChain, Support};
