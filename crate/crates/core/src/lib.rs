//! Variable-length codes under word edit relations.
//!
//! The crate decides, for finite and regular languages, the code property,
//! completeness and maximality, independence and closedness under the edit
//! relations (deletion, insertion, substitution and their bounded unions),
//! computes substitution orbits symbolically, and runs the completion and
//! embedding constructions for non-complete codes.

pub mod closure;
pub mod codes;
pub mod edit;
pub mod error;
pub mod indep;
pub mod langs;
pub mod words;

pub use error::{Error, Result};
