//! Exact enumeration and verification of approximate lattices.
//!
//! The crate builds finite fragments of cut-and-project model sets, the Fish
//! set and the visible lattice points, checks the approximate-group axioms and
//! finiteness properties on a provably complete "core" of each fragment, and
//! runs coarse-geometry experiments: hull patch statistics, periodization
//! inequalities, word-metric comparisons, `BS(1,2)` distortion, Cartan gaps
//! in `SL2(R)` and the contracting random walk on the `ax+b` group.

pub mod algebra;
pub mod cutproject;
pub mod error;
pub mod ggt;
pub mod hull;
pub mod index;
pub mod io;
pub mod stationary;
pub mod verify;

pub use error::{Error, Result};

/// Default absolute tolerance for float comparisons.
pub const FLOAT_TOL: f64 = 1e-9;
