//! Independent verification: exhaustive searches, the matrix model of the
//! Heisenberg group, and isomorphism spot-checks.

pub mod iso;
pub mod matrix;
pub mod search;

pub use iso::{grp_iso_check, IsoReport};
pub use matrix::{matrix_oracle_check, MatrixReport};
pub use search::{idempotent_search, unit_search, zero_divisor_search, SearchAlgebra, SearchReport, SearchSpace};
