use crate::error::{Error, Result};

/// Smallest number of requested significant digits a context accepts.
pub const MIN_DIGITS: u32 = 10;

const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

/// Digits lost to cancellation per unit of outer index in a binomially
/// weighted alternating sum (log10 2, rounded up).
pub const CANCELLATION_DIGITS_PER_TERM: f64 = 0.302;

/// Working precision for a computation: requested digits plus guard digits.
///
/// A context may be escalated (extra guard digits for cancellation-prone inner
/// sums) up to a ceiling fixed at construction, twice the base working digits.
/// Escalating past the ceiling is a [`Error::PrecisionExhausted`] error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    digits: u32,
    guard: u32,
    ceiling: u32,
}

/// Builds a context; `guard` defaults to `max(10, digits / 10)`.
pub fn make_context(digits: u32, guard: Option<u32>) -> Result<PrecisionContext> {
    PrecisionContext::new(digits, guard)
}

impl PrecisionContext {
    pub fn new(digits: u32, guard: Option<u32>) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::InvalidPrecision {
                digits,
                min: MIN_DIGITS,
            });
        }
        let guard = guard.unwrap_or_else(|| (digits / 10).max(10));
        Ok(Self {
            digits,
            guard,
            ceiling: 2 * (digits + guard),
        })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    pub fn working_digits(&self) -> u32 {
        self.digits + self.guard
    }

    /// Largest working-digit count reachable by escalation.
    pub fn ceiling(&self) -> u32 {
        self.ceiling
    }

    /// Binary precision backing the working digits, in whole 64-bit words.
    pub fn bits(&self) -> usize {
        let exact = (f64::from(self.working_digits()) * BITS_PER_DIGIT).ceil() as usize;
        exact.div_ceil(64) * 64
    }

    /// Same context with `extra` additional guard digits.
    pub fn escalate(&self, extra: u32) -> Result<Self> {
        let needed = self.working_digits() + extra;
        if needed > self.ceiling {
            let available = self.ceiling.saturating_sub(self.working_digits());
            return Err(Error::PrecisionExhausted {
                required_extra: extra,
                available,
                // Raising `digits` by d raises the ceiling by at least 2d.
                shortfall: (needed - self.ceiling).div_ceil(2),
            });
        }
        Ok(Self {
            guard: self.guard + extra,
            ..*self
        })
    }

    /// Extra digits needed by an inner binomial sum at outer index `n`.
    pub fn cancellation_digits(n: u64) -> u32 {
        (n as f64 * CANCELLATION_DIGITS_PER_TERM).ceil() as u32
    }

    /// Context for the inner binomial sum at outer index `n`.
    pub fn for_inner_sum(&self, n: u64) -> Result<Self> {
        self.escalate(Self::cancellation_digits(n))
    }

    /// Escalation that ignores the ceiling, for short internal computations
    /// whose extra precision is fixed and independent of user input.
    pub(crate) fn escalate_unchecked(&self, extra: u32) -> Self {
        Self {
            guard: self.guard + extra,
            ..*self
        }
    }

    /// The more precise of two contexts (ties keep `self`).
    pub fn max(self, other: Self) -> Self {
        if other.working_digits() > self.working_digits() {
            other
        } else {
            self
        }
    }
}
