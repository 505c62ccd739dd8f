//! Text formats, certificate files, the identity suite and the command
//! surface around the core algebra and the certificate engine.
//!
//! The `verify` path (`text`, `nct`, `verify`) depends on the core crate only;
//! building with `--no-default-features` drops the engine entirely.

#[cfg(feature = "engine")]
pub mod commands;
pub mod corpus;
pub mod error;
pub mod identities;
pub mod nct;
pub mod text;
pub mod verify;

pub use error::{CliError, ParseError, Result};
