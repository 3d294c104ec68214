use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::field::Element;

/// Errors shared by every layer of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `make_prime_field` was given a composite characteristic.
    CompositeCharacteristic(u64),
    /// An extension modulus factors over its base field.
    ReducibleModulus,
    /// Division or inversion of zero.
    DivisionByZero,
    /// Two operands belong to different fields.
    MismatchedFields,
    /// A Weierstrass model with vanishing discriminant.
    SingularCurve,
    /// The field is larger than the configured desk-scale limit.
    ScaleExceeded,
    /// A slope function was evaluated at one of its poles.
    PoleEvaluation,
    /// The two points defining the slope share an x-coordinate.
    VerticalSlope,
    /// Every rational point is a pole of the function sum.
    NoSafeEvaluationPoint,
    /// The kernel generator does not have the requested order.
    KernelOrderMismatch { expected: u64, actual: u64 },
    /// Clearing denominators dropped the preimage polynomial degree.
    DegreeCollapse { expected: usize, actual: usize },
    /// No point of the quotient curve has an irreducible preimage.
    NoGeneratorFound,
    /// The curve group has no point of the requested order.
    NoTorsionPoint { order: u64 },
    /// No scalar pair satisfies the normalization relation.
    NoScalarSolution,
    /// No rational point lies outside the n-torsion subgroup.
    NoAuxiliaryPoint,
    /// Neither candidate lift satisfies `phi(b) = b + t` with `n*b != O`.
    FrobeniusConditionFailed,
    /// The constructed evaluations are linearly dependent.
    NotABasis,
    /// The vector is a zero divisor of the convolution algebra; the
    /// offending factor of `X^n - 1` is reported.
    NotInvertible { gcd: Vec<Element> },
    /// Cyclic vectors of different lengths were combined.
    LengthMismatch { left: usize, right: usize },
    /// The configured search budget ran out before parameters were found.
    ParameterSearchExhausted,
    /// An internal cross-check failed; indicates a bug, surfaced loudly.
    Consistency(String),
    /// A malformed argument or override.
    InvalidParameter(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CompositeCharacteristic(p) => write!(f, "{p} is not prime"),
            Error::ReducibleModulus => write!(f, "modulus polynomial is reducible"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::MismatchedFields => write!(f, "operands belong to different fields"),
            Error::SingularCurve => write!(f, "curve discriminant is zero"),
            Error::ScaleExceeded => write!(f, "field size exceeds the desk-scale limit"),
            Error::PoleEvaluation => write!(f, "evaluation point is a pole"),
            Error::VerticalSlope => write!(f, "slope is vertical (equal x-coordinates)"),
            Error::NoSafeEvaluationPoint => {
                write!(f, "every rational point is a pole of the sum")
            }
            Error::KernelOrderMismatch { expected, actual } => {
                write!(f, "kernel generator has order {actual}, expected {expected}")
            }
            Error::DegreeCollapse { expected, actual } => {
                write!(f, "preimage polynomial has degree {actual}, expected {expected}")
            }
            Error::NoGeneratorFound => write!(f, "no point with an irreducible preimage"),
            Error::NoTorsionPoint { order } => write!(f, "no point of order {order}"),
            Error::NoScalarSolution => write!(f, "no scalar pair satisfies a*c + n*b = 1"),
            Error::NoAuxiliaryPoint => write!(f, "auxiliary point is n-torsion"),
            Error::FrobeniusConditionFailed => {
                write!(f, "no lift satisfies phi(b) = b + t with n*b != O")
            }
            Error::NotABasis => write!(f, "evaluations are linearly dependent"),
            Error::NotInvertible { .. } => {
                write!(f, "vector is not invertible modulo X^n - 1")
            }
            Error::LengthMismatch { left, right } => {
                write!(f, "length mismatch: {left} vs {right}")
            }
            Error::ParameterSearchExhausted => write!(f, "parameter search budget exhausted"),
            Error::Consistency(msg) => write!(f, "internal consistency failure: {msg}"),
            Error::InvalidParameter(msg) => write!(f, "{msg}"),
        }
    }
}
