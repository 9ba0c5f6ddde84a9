//! Exact complex group rings of group extensions, realized as crossed
//! products over the group ring of the normal subgroup.

pub mod cohomology;
pub mod crossed_product;
pub mod error;
pub mod factor_systems;
pub mod fibers;
pub mod format;
pub mod group_ring;
pub mod groups;
pub mod intmat;
pub mod oracles;
pub mod scalars;
pub mod selftest;

pub use error::{AlgebraError, Result};
pub use factor_systems::{CrossedSystem, FactorSystem, FactorWindow, ValidationReport};
pub use group_ring::{GroupRingElement, OneNorm};
pub use groups::{Group, GroupElement};
pub use intmat::IntMatrix;
pub use scalars::{CycScalar, Rational};
pub use cohomology::{BilinearCocycle, CohomologyVerdict};
pub use crossed_product::{CrossedProductElement, RelationReport};
pub use fibers::{Character, TwistedAlgebraElement};
pub use oracles::{SearchReport, SearchSpace};
