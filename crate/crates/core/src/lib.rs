//! Exact-arithmetic analysis of exceptional-curve and extremal-ray
//! configurations on varieties with a finite polyhedral Mori cone.
//!
//! Everything is computed over arbitrary-precision integers and rationals;
//! floats appear only when a report prints a hyperbolic distance.

pub mod bitset;
pub mod bounds;
pub mod catalog;
pub mod cone;
pub mod config;
pub mod dot;
pub mod error;
pub mod exact;
pub mod lattice;
#[cfg(any(test, feature = "oracles"))]
pub mod oracles;
pub mod oriented;
pub mod report;
pub mod schema;

pub use error::{Error, Result};
