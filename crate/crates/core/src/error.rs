use num_bigint::BigInt;
use thiserror::Error;

use crate::num::Scalar;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("radicand {0} is not a squarefree integer >= 2")]
    InvalidRadicand(u64),

    #[error("cannot mix Q(sqrt {0}) and Q(sqrt {1}) in one instance")]
    MixedFields(u64, u64),

    #[error("zero vector")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {0} exceeds the supported maximum of {max}", max = crate::MAX_DIM)]
    DimensionTooLarge(usize),

    #[error("polyhedron is empty")]
    EmptyPolyhedron,

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("polyhedron has dimension {dim}, expected full dimension {expected}")]
    NotFullDimensional { dim: usize, expected: usize },

    #[error("vectors are linearly dependent")]
    DependentVectors,

    #[error("vectors are not primitive: {} lies in their span but not in their integer span", fmt_int(.witness))]
    NotPrimitive { witness: Vec<BigInt> },

    #[error("recession cone is not a linear space")]
    RecessionNotLinear,

    #[error("lineality space is irrational, not unimodularly splittable")]
    IrrationalLineality,

    #[error("lattice-freeness undecided within search cap {cap}")]
    Undecided { cap: u64 },

    #[error("polyhedron is not centrally symmetric: {} is in P but its negation is not", fmt_scalars(.point))]
    NotSymmetric { point: Vec<Scalar> },

    #[error("volume {volume} is below the required {required}")]
    VolumeShortfall { volume: Box<Scalar>, required: Box<Scalar> },

    #[error("direction is rational; its span contains nonzero lattice points")]
    RationalDirection,

    #[error("search cap {cap} exhausted")]
    CapExhausted { cap: u64 },

    #[error("no parity pair among {m} vectors in dimension {d}")]
    NoParityPair { m: usize, d: usize },

    #[error("polyhedron is not lattice-free: {} is an interior lattice point", fmt_int(.witness))]
    NotLatticeFree { witness: Vec<BigInt> },

    #[error("basis vector {index} of M has no valid closure certificate: {reason}")]
    UncertifiedSpace { index: usize, reason: String },

    #[error("no certified maximal superset inside box {box_n}; retry with a larger box")]
    BoxTooSmall { box_n: u64 },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema { path: path.into(), message: message.into() }
    }
}

fn fmt_int(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn fmt_scalars(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}
