//! Arbitrary-precision scalars, exact combinatorics and oracle constants.

mod complex;
mod constants;
mod context;
mod exact;
mod real;

pub use complex::HPComplex;
pub use constants::{reference_constant, reference_constant_by_name, ReferenceConstant};
pub use context::{make_context, PrecisionContext, CANCELLATION_DIGITS_PER_TERM, MIN_DIGITS};
pub use exact::{
    bernoulli_numbers, binomial, binomial_row, euler_polynomials_at_zero, ExactInteger,
};
pub use real::{format_significant, parse_decimal, HPReal};
