//! Arbitrary-precision real and complex arithmetic.
//!
//! Values are binary floating point (`mantissa · 2^exponent`) over `num-bigint`
//! integers, rounded to nearest at the working precision. Reciprocals and
//! square roots use Newton iterations seeded from hardware doubles with the
//! precision doubling at each step.

mod complex;
mod decimal;
pub(crate) mod float;
mod precision;
mod real;

pub use complex::Complex;
pub use decimal::Rounding;
pub use precision::{digits_to_bits, Precision, MIN_GUARD_BITS};
pub use real::Real;
