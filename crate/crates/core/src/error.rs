use num_bigint::BigInt;

use crate::fan::Cone;

/// Errors raised while validating or analysing stacky fans.
///
/// Display strings start with the variant name so that reports and scripts
/// can match on them.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    #[error("InvalidTorsionOrder: torsion order {0} must be at least 2")]
    InvalidTorsionOrder(BigInt),
    #[error("IndexOutOfRange: ray index {index} is not below n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("ZeroRay({0}): free part of column {0} is zero")]
    ZeroRay(usize),
    #[error("RaysDoNotSpan: rays span a rank-{rank} subspace, need rank {expected}")]
    RaysDoNotSpan { rank: usize, expected: usize },
    #[error("NonSimplicialCone({0}): generators are linearly dependent")]
    NonSimplicialCone(Cone),
    #[error("NestedCones: maximal cone {0} is contained in {1}")]
    NestedCones(Cone, Cone),
    #[error("InfiniteCokernel: coker beta has free rank {0}")]
    InfiniteCokernel(usize),
    #[error("NotPolytopal: operation needs a fan flagged polytopal")]
    NotPolytopal,
    #[error("NotInZSigma: zero set {0} is not contained in any maximal cone")]
    NotInZSigma(Cone),
    #[error("InvalidCone({0}): not a face of the fan")]
    InvalidCone(Cone),
    #[error("TorsionAmbient: explicit isotropy embeddings need a torsion-free N")]
    TorsionAmbient,
    #[error("MixedSignKernel: kernel generator {0:?} is not strictly one-signed")]
    MixedSignKernel(Vec<BigInt>),
    #[error("NotWps: stack is not a weighted projective stack")]
    NotWps,
    #[error("NotPrimitive: gcd of the shear vector is {0}, expected 1")]
    NotPrimitive(BigInt),
    #[error("NonPositive: {0} must be a positive integer")]
    NonPositive(String),
    #[error("NotPlanar: expected dimension 2, got {0}")]
    NotPlanar(usize),
    #[error("ZeroEntry: entries a, b, c must be nonzero")]
    ZeroEntry,
}

impl Error {
    /// True for violations of the stacky-fan data contract itself, as
    /// opposed to errors raised by a query on a valid fan.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::ShapeMismatch(_)
                | Error::InvalidTorsionOrder(_)
                | Error::IndexOutOfRange { .. }
                | Error::ZeroRay(_)
                | Error::RaysDoNotSpan { .. }
                | Error::NonSimplicialCone(_)
                | Error::NestedCones(..)
                | Error::InfiniteCokernel(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
