use alloc::string::String;
use core::fmt;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NotPrime(u64),
    ReducibleModulus,
    InvalidDescriptor(String),
    DivisionByZero,
    FieldMismatch,
    ArityMismatch { expected: usize, found: usize },
    DegreeCapExceeded { cap: u32, degree: u64 },
    IndexOutOfRange { index: usize, n: usize },
    ExponentOverflow,
    InvalidFactor(String),
    NotStructured,
    Singular,
    NotTriangular,
    NotAffine,
    KernelViolation,
    NilpotencyCapExceeded(usize),
    UnsupportedCharacteristic(u32),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "NotPrime: {p} is not prime"),
            Error::ReducibleModulus => f.write_str("ReducibleModulus: modulus is not irreducible"),
            Error::InvalidDescriptor(m) => write!(f, "InvalidDescriptor: {m}"),
            Error::DivisionByZero => f.write_str("DivisionByZero"),
            Error::FieldMismatch => f.write_str("FieldMismatch: operands live in different fields"),
            Error::ArityMismatch { expected, found } => {
                write!(f, "ArityMismatch: expected {expected} variables, found {found}")
            }
            Error::DegreeCapExceeded { cap, degree } => {
                write!(f, "DegreeCapExceeded: degree bound {degree} exceeds cap {cap}")
            }
            Error::IndexOutOfRange { index, n } => {
                write!(f, "IndexOutOfRange: index {index} not in 1..={n}")
            }
            Error::ExponentOverflow => f.write_str("ExponentOverflow"),
            Error::InvalidFactor(m) => write!(f, "InvalidFactor: {m}"),
            Error::NotStructured => {
                f.write_str("NotStructured: only affine or triangular maps can be inverted from expanded form")
            }
            Error::Singular => f.write_str("Singular: matrix is not invertible"),
            Error::NotTriangular => f.write_str("NotTriangular"),
            Error::NotAffine => f.write_str("NotAffine"),
            Error::KernelViolation => f.write_str("KernelViolation: F is not in the kernel of D"),
            Error::NilpotencyCapExceeded(cap) => {
                write!(f, "NilpotencyCapExceeded: derivation iterates did not vanish within {cap} steps")
            }
            Error::UnsupportedCharacteristic(p) => {
                write!(f, "UnsupportedCharacteristic: characteristic {p} is not supported here")
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
