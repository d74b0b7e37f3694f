//! High-precision π and elementary functions via the arithmetic-geometric mean.
//!
//! The crate implements the Gauss–Legendre iteration and its quadratic and quartic relatives for π
//! with their theta-function error bounds and the equivalences between them,
//! the Madhava, Ramanujan and Chudnovsky series (the last by binary
//! splitting), complete elliptic integrals, Jacobi theta functions, and
//! AGM-based `log`, `exp`, `arctan` and `arccos`.

pub mod agm;
pub mod constants;
pub mod elemfn;
pub mod error;
pub mod mpreal;
pub mod piagm;
pub mod piseries;
pub mod tables;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};
pub use mpreal::{Complex, Precision, Real, Rounding};
