use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a unit of the Novikov ring on the requested side")]
    NotAUnit(String),

    #[error("{0} does not lie in the rational subring S^-1 Z[z, z^-1]")]
    NotInRationalSubring(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a chain complex: d∘d != 0 at degree {degree}")]
    NotAComplex { degree: i64, product: String },

    #[error("not a chain map: square fails to commute at degree {degree}")]
    NotAChainMap { degree: i64 },

    #[error("base change from {from} to {to} would narrow the ring")]
    NarrowingNotSupported { from: &'static str, to: &'static str },

    #[error("invalid fundamental domain: identity `{identity}` fails at degree {degree}")]
    InvalidDomain { identity: &'static str, degree: i64 },

    #[error("diagonalization over the Novikov ring did not finish within {operations} operations")]
    Inconclusive { operations: usize },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}
