use hpconst::precision::{binomial, binomial_row};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

const N_MAX: u64 = 200;

#[test]
fn pascal_recursion_exhaustive() {
    for n in 1..=N_MAX {
        for k in 1..=n as i64 {
            let lhs = binomial(n, k).into_inner();
            let rhs = binomial(n - 1, k - 1).into_inner() + binomial(n - 1, k).into_inner();
            assert_eq!(lhs, rhs, "C({n}, {k})");
        }
    }
}

#[test]
fn row_sums_exhaustive() {
    for n in 1..=N_MAX {
        let row = binomial_row(n);
        let total: BigInt = row.iter().sum();
        assert_eq!(total, BigInt::one() << n, "row {n}");
        let alternating =
            row.iter().enumerate().fold(
                BigInt::zero(),
                |acc, (k, c)| if k % 2 == 0 { acc + c } else { acc - c },
            );
        assert!(alternating.is_zero(), "row {n}");
    }
}

#[test]
fn outside_the_triangle_is_zero() {
    assert!(binomial(5, -1).into_inner().is_zero());
    assert!(binomial(5, 6).into_inner().is_zero());
    assert_eq!(binomial(0, 0).into_inner(), BigInt::one());
}

proptest! {
    #[test]
    fn row_agrees_with_pointwise(n in 0u64..=N_MAX) {
        let row = binomial_row(n);
        prop_assert_eq!(row.len() as u64, n + 1);
        for (k, c) in row.iter().enumerate() {
            prop_assert_eq!(c, &binomial(n, k as i64).into_inner());
        }
    }

    #[test]
    fn symmetric(n in 0u64..=N_MAX, k in 0i64..=N_MAX as i64) {
        prop_assume!(k as u64 <= n);
        prop_assert_eq!(binomial(n, k), binomial(n, n as i64 - k));
    }
}
