use thiserror::Error;

/// Errors raised by the algebraic core.
///
/// Verification failures (a cocycle identity that does not hold, a product that
/// is not the identity) are reported as data in the various report types, not
/// through this enum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("scalar order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),

    #[error("cyclotomic order {from} does not divide {to}")]
    NotEmbeddable { from: u32, to: u32 },

    #[error("not invertible")]
    NotInvertible,

    #[error("element {element} does not belong to {group}")]
    ElementMismatch { element: String, group: String },

    #[error("group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),

    #[error("crossed-system mismatch")]
    CrossedSystemMismatch,

    #[error("cannot certify invertibility: {0}")]
    CannotCertify(String),

    #[error("invalid section: {0}")]
    InvalidSection(String),

    #[error("{0} is not a central extension of a free abelian group")]
    NotCentral(String),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,

    #[error("invalid factor system: {0}")]
    InvalidFactorSystem(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
