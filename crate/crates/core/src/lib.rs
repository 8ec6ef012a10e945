//! Exact computations for Dirac eigenvalue bounds on compact homogeneous spaces.
//!
//! The crate covers root systems and branching ([`lie`]), explicit matrix
//! models of representations ([`repr`]), spinors and Parthasarathy's formula
//! ([`spin`]), the Berger space SO(5)/SO(3) over ℚ(√5) ([`berger`]), the
//! index thresholds for maps into spheres and projective spaces ([`index`]),
//! and the shipped space catalog with its JSON records and cache.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod exec;
pub mod field;
pub mod lie;
pub mod linalg;
pub mod repr;
pub mod spin;
pub mod berger;
pub mod catalog;
pub mod index;
pub mod cache;
pub mod record;
pub mod commands;

pub use error::{Error, Result};
pub use exec::Exec;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
