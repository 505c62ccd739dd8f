//! Exact algebra for polynomial automorphisms of affine space: coefficient
//! fields, sparse polynomials, endomorphisms, factored words, triangular
//! derivations, and a standalone certificate verifier.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cert;
pub mod derivation;
pub mod endo;
pub mod error;
pub mod factor;
pub mod field;
pub mod matrix;
pub mod poly;

pub use cert::{verify_certificate, Certificate, Evaluator, Claim, Item, NodeRef, Seed, Step, Verdict, VerificationReport};
pub use derivation::TriDerivation;
pub use endo::{Classification, Endo, VecDeg};
pub use error::{Error, Result};
pub use factor::{BasicFactor, FactoredAuto, Triangular};
pub use field::{Elem, Field, FieldDescriptor, FieldOp, Scalar};
pub use matrix::Matrix;
pub use poly::{Monomial, Poly, DEFAULT_DEGREE_CAP};
