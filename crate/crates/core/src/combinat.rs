use num_bigint::{BigInt, BigUint};
use num_traits::One;

/// `n choose 2`.
pub(crate) fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// Row `n` of Pascal's triangle.
pub(crate) fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for t in 1..=n {
        c = c * (n + 1 - t) / t;
        row.push(c.clone());
    }
    row
}
