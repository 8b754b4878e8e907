use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact signed integer (binomial weights and other combinatorial data).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactInteger(BigInt);

impl ExactInteger {
    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn into_inner(self) -> BigInt {
        self.0
    }
}

impl From<BigInt> for ExactInteger {
    fn from(v: BigInt) -> Self {
        Self(v)
    }
}

impl From<i64> for ExactInteger {
    fn from(v: i64) -> Self {
        Self(BigInt::from(v))
    }
}

impl fmt::Display for ExactInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> ExactInteger {
    if k < 0 || k as u64 > n {
        return ExactInteger(BigInt::zero());
    }
    let k = (k as u64).min(n - k as u64);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    ExactInteger(c)
}

/// Row `n` of Pascal's triangle, `[C(n,0), ..., C(n,n)]`.
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for i in 0..n {
        c = c * (n - i) / (i + 1);
        row.push(c.clone());
    }
    row
}

/// Bernoulli numbers `B_0 .. B_{count-1}` with `B_1 = -1/2`.
pub fn bernoulli_numbers(count: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(count);
    for m in 0..count {
        if m == 0 {
            b.push(BigRational::one());
            continue;
        }
        let row = binomial_row(m as u64 + 1);
        let acc = (0..m).fold(BigRational::zero(), |acc, k| {
            acc + &b[k] * BigRational::from_integer(row[k].clone())
        });
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// Euler polynomial values `E_j(0)` for `j < count`, from
/// `E_n(1) + E_n(0) = 0` (n >= 1) and the Appell expansion of `E_n(1)`.
pub fn euler_polynomials_at_zero(count: usize) -> Vec<BigRational> {
    let mut e: Vec<BigRational> = Vec::with_capacity(count);
    for n in 0..count {
        if n == 0 {
            e.push(BigRational::one());
            continue;
        }
        let row = binomial_row(n as u64);
        let acc = (0..n).fold(BigRational::zero(), |acc, k| {
            acc + &e[k] * BigRational::from_integer(row[k].clone())
        });
        e.push(-acc / BigRational::from_integer(BigInt::from(2)));
    }
    e
}
