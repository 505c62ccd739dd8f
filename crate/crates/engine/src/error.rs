use alloc::string::String;
use core::fmt;

use cotame_core::Error;

/// Errors raised while constructing certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    Algebra(Error),
    IndexClash,
    ZeroScalar,
    DegenerateTarget,
    IdentityInput,
    UnsupportedField(String),
    NoSuchUnit,
    NotSpecial,
    NotAlternating(String),
    NotParabolic,
    NotTriangular,
    UnsupportedM(usize),
    UnsupportedCharacteristic(u32),
    InternalIdentityFailure(String),
    DegenerateChain(String),
    Unsupported(String),
}

impl From<Error> for EngineError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnsupportedCharacteristic(p) => EngineError::UnsupportedCharacteristic(p),
            e => EngineError::Algebra(e),
        }
    }
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::Algebra(e) => write!(f, "{e}"),
            EngineError::IndexClash => f.write_str("IndexClash: indices must differ"),
            EngineError::ZeroScalar => f.write_str("ZeroScalar: scalar must be nonzero"),
            EngineError::DegenerateTarget => f.write_str("DegenerateTarget: target is the identity"),
            EngineError::IdentityInput => f.write_str("IdentityInput: input is the identity"),
            EngineError::UnsupportedField(m) => write!(f, "UnsupportedField: {m}"),
            EngineError::NoSuchUnit => f.write_str("NoSuchUnit: no unit satisfies the required condition"),
            EngineError::NotSpecial => f.write_str("NotSpecial: Jacobian determinant is not 1"),
            EngineError::NotAlternating(m) => write!(f, "NotAlternating: {m}"),
            EngineError::NotParabolic => f.write_str("NotParabolic"),
            EngineError::NotTriangular => f.write_str("NotTriangular"),
            EngineError::UnsupportedM(m) => write!(f, "UnsupportedM: {m}-triangular words are not supported"),
            EngineError::UnsupportedCharacteristic(p) => {
                write!(f, "UnsupportedCharacteristic: characteristic {p} is not supported here")
            }
            EngineError::InternalIdentityFailure(m) => write!(f, "InternalIdentityFailure: {m}"),
            EngineError::DegenerateChain(m) => write!(f, "DegenerateChain: {m}"),
            EngineError::Unsupported(m) => write!(f, "Unsupported: {m}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, EngineError>;
