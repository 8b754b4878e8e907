//! High-precision evaluation of classical constants through binomially
//! weighted series, infinite products, Euler's series transformation and
//! double-exponential quadrature.
//!
//! All computations are pure functions of their inputs and a
//! [`PrecisionContext`](precision::PrecisionContext).

pub mod error;
pub mod integrals;
pub mod lerch;
pub mod precision;
pub mod products;
pub mod quadrature;
pub mod series;
pub mod zeta;

pub use error::{Error, Result};
pub use precision::{make_context, HPComplex, HPReal, PrecisionContext};
