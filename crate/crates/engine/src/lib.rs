//! Certificate construction: membership chains for the normal closure of
//! special linear maps, and reductions showing that triangular, parabolic,
//! m-triangular (m ≤ 4), and exponential-type special automorphisms generate
//! a nontrivial elementary map as a normal subgroup.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod builder;
pub mod cotame;
pub mod error;
pub mod lnd;
pub mod slin;

pub use builder::CertBuilder;
pub use error::{EngineError, Result};
