//! Combinatorics of trivalent graphs and the moduli of curves, bundles and
//! flat SL(2) connections attached to them.

pub mod error;
pub mod bundle;
pub mod curve;
pub mod field;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod mat2;
pub mod reps;
pub mod suite;
pub mod surface;

pub use error::{Error, Result};
