use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Everything that can go wrong in the library.
///
/// Mathematical outcomes (an algebra is not associative, an obstruction does
/// not vanish) are usually reported through return values; the variants here
/// are precondition failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A vector that should lie in a subspace does not.
    SubspaceNotContained,
    /// Two lengths that must agree differ.
    LengthMismatch {
        expected: usize,
        found: usize,
    },
    /// An index range such as `1 <= i <= n` is violated.
    BadRange {
        what: &'static str,
        value: usize,
        bound: usize,
    },
    ArityMismatch {
        expected: usize,
        found: usize,
    },
    DegreeMismatch {
        expected: i32,
        found: i32,
    },
    /// Cochains or algebras over spaces of different dimension were combined.
    DimMismatch {
        expected: usize,
        found: usize,
    },
    NotAssociative {
        witness: [usize; 4],
    },
    BadPosition {
        position: usize,
        arity: usize,
    },
    /// A deformation or cochain that must satisfy (D_k) / δ = 0 does not.
    InvalidDeformation {
        order: usize,
        triple: [usize; 3],
    },
    NotACocycle,
    BadConstantTerm,
    OrderMismatch {
        left: usize,
        right: usize,
    },
    BaseMismatch,
    BadOrder {
        requested: usize,
        available: usize,
    },
    BaseNotCommutative {
        pair: [usize; 2],
    },
    OrderTooLow {
        required: usize,
        found: usize,
    },
    /// An operation that must be graded antisymmetric is not.
    NotAntisymmetric {
        arity: usize,
        inputs: Vec<(i32, usize)>,
    },
    TruncationTooSmall {
        truncation: usize,
    },
    FlavorMismatch,
    /// The series handed to an MC pushforward is not MC in the source.
    SourceNotMc {
        order: usize,
    },
    /// A graded space or map was malformed (unknown degree, wrong block size).
    Malformed(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Error::*;
        match self {
            SubspaceNotContained => write!(f, "subspace is not contained in the ambient subspace"),
            LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            BadRange { what, value, bound } => {
                write!(f, "{what} = {value} out of range (bound {bound})")
            }
            ArityMismatch { expected, found } => {
                write!(f, "arity mismatch: expected {expected}, found {found}")
            }
            DegreeMismatch { expected, found } => {
                write!(f, "degree mismatch: expected {expected}, found {found}")
            }
            DimMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            NotAssociative { witness } => write!(
                f,
                "algebra is not associative at (i,j,k,r) = ({}, {}, {}, {})",
                witness[0], witness[1], witness[2], witness[3]
            ),
            BadPosition { position, arity } => {
                write!(f, "insertion position {position} invalid for arity {arity}")
            }
            InvalidDeformation { order, triple } => write!(
                f,
                "(D_{order}) fails on basis triple ({}, {}, {})",
                triple[0], triple[1], triple[2]
            ),
            NotACocycle => write!(f, "cochain is not a Hochschild cocycle"),
            BadConstantTerm => write!(f, "formal automorphism must have constant term id"),
            OrderMismatch { left, right } => write!(f, "orders differ: {left} vs {right}"),
            BaseMismatch => write!(f, "deformations have different base algebras"),
            BadOrder {
                requested,
                available,
            } => {
                write!(
                    f,
                    "order {requested} requested but only {available} available"
                )
            }
            BaseNotCommutative { pair } => {
                write!(
                    f,
                    "base algebra is not commutative on e{} e{}",
                    pair[0], pair[1]
                )
            }
            OrderTooLow { required, found } => {
                write!(f, "order {found} is below the required {required}")
            }
            NotAntisymmetric { arity, inputs } => {
                write!(f, "l_{arity} is not graded antisymmetric at {inputs:?}")
            }
            TruncationTooSmall { truncation } => {
                write!(f, "truncation {truncation} is too small (need at least 2)")
            }
            FlavorMismatch => write!(f, "coderivations live on different coalgebras"),
            SourceNotMc { order } => {
                write!(f, "source series is not Maurer-Cartan at order {order}")
            }
            Malformed(msg) => write!(f, "malformed input: {msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

impl core::error::Error for Error {}
