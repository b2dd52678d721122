//! Exact truncated graphic power series.
//!
//! A graphic series carries coefficients `c_n = s_n / (n! (1+k)^C(n,2))` for
//! some weight `k`. The operations here are just what the identities
//! `A(k, z) Psi(k, z) = 1` and `B(z) Psi(z) = Psi(-z)` need: construction,
//! Cauchy product, reciprocal and exact comparison.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::combinat::{factorial, pairs};
use crate::counts::SequenceTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("sequence {sequence} has no value at n = {n}")]
    MissingValue { sequence: String, n: usize },
    #[error("series has a zero constant term")]
    ZeroConstantTerm,
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("weight k must be at least 1")]
    ZeroWeight,
}

/// Sign applied to `z`: the coefficient of `z^n` is multiplied by `sign^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Power series in `z` known exactly through `z^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphicSeries {
    coeffs: Vec<BigRational>,
    pub label: String,
}

impl GraphicSeries {
    /// Panics if `coeffs` is empty.
    pub fn new(coeffs: Vec<BigRational>, label: impl Into<String>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least its constant term"
        );
        GraphicSeries {
            coeffs,
            label: label.into(),
        }
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_fractions(values: &[(i64, i64)], label: impl Into<String>) -> Self {
        let coeffs = values
            .iter()
            .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
            .collect();
        GraphicSeries::new(coeffs, label)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    /// `f(-z)`.
    pub fn negate_argument(&self) -> GraphicSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 1 { -c } else { c.clone() })
            .collect();
        GraphicSeries {
            coeffs,
            label: format!("{}(-z)", self.label),
        }
    }

    /// `s_n = c_n n! (1+k)^C(n,2)` when every one of them is an integer.
    pub fn weighted_numerators(&self, k: u64) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                let scaled = c * BigRational::from_integer(graphic_weight(k, n));
                scaled.is_integer().then(|| scaled.to_integer())
            })
            .collect()
    }
}

impl fmt::Display for GraphicSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// `n! (1+k)^C(n,2)`.
fn graphic_weight(k: u64, n: usize) -> BigInt {
    let base = BigUint::from(k) + 1u32;
    BigInt::from(factorial(n) * base.pow(pairs(n) as u32))
}

/// `Psi(k, z) = sum (-1)^n z^n / (n! (1+k)^C(n,2))` through `z^order`.
pub fn psi_series(k: u64, order: usize) -> Result<GraphicSeries, SeriesError> {
    if k == 0 {
        return Err(SeriesError::ZeroWeight);
    }
    let coeffs = (0..=order)
        .map(|n| {
            let num = if n % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            BigRational::new(num, graphic_weight(k, n))
        })
        .collect();
    Ok(GraphicSeries::new(coeffs, format!("Psi({k}, z)")))
}

/// Graphic series of a tabulated sequence: `sign^n values[n] / (n! (1+k)^C(n,2))`.
pub fn from_sequence(
    values: &SequenceTable,
    k: u64,
    sign: Sign,
    order: usize,
) -> Result<GraphicSeries, SeriesError> {
    if k == 0 {
        return Err(SeriesError::ZeroWeight);
    }
    let coeffs = (0..=order)
        .map(|n| {
            let value = values
                .values
                .get(&n)
                .ok_or_else(|| SeriesError::MissingValue {
                    sequence: values.kind.to_string(),
                    n,
                })?;
            let mut num = BigInt::from(value.clone());
            if sign == Sign::Minus && n % 2 == 1 {
                num = -num;
            }
            Ok(BigRational::new(num, graphic_weight(k, n)))
        })
        .collect::<Result<_, _>>()?;
    let z = if sign == Sign::Minus { "-z" } else { "z" };
    Ok(GraphicSeries::new(
        coeffs,
        format!("{}[{k}]({z})", values.kind),
    ))
}

/// Cauchy product truncated at the smaller order.
pub fn multiply(f: &GraphicSeries, g: &GraphicSeries) -> GraphicSeries {
    let order = f.order().min(g.order());
    let coeffs = (0..=order)
        .map(|n| {
            (0..=n).fold(BigRational::zero(), |acc, i| {
                acc + &f.coeffs[i] * &g.coeffs[n - i]
            })
        })
        .collect();
    GraphicSeries::new(coeffs, format!("{} * {}", f.label, g.label))
}

/// `1 / f` through the order of `f`, by `g_0 = 1/f_0`,
/// `g_n = -(sum_{i=1}^{n} f_i g_{n-i}) / f_0`.
pub fn reciprocal(f: &GraphicSeries) -> Result<GraphicSeries, SeriesError> {
    let f0 = &f.coeffs[0];
    if f0.is_zero() {
        return Err(SeriesError::ZeroConstantTerm);
    }
    let inv0 = f0.recip();
    let mut g: Vec<BigRational> = Vec::with_capacity(f.coeffs.len());
    g.push(inv0.clone());
    for n in 1..=f.order() {
        let s = (1..=n).fold(BigRational::zero(), |acc, i| acc + &f.coeffs[i] * &g[n - i]);
        g.push(-s * &inv0);
    }
    Ok(GraphicSeries::new(g, format!("1 / {}", f.label)))
}

/// Result of an exact coefficient comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityCheck {
    Holds,
    Mismatch {
        index: usize,
        lhs: BigRational,
        rhs: BigRational,
    },
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityCheck::Holds)
    }
}

/// Compares two series of equal order coefficient by coefficient.
pub fn verify_identity(
    lhs: &GraphicSeries,
    rhs: &GraphicSeries,
) -> Result<IdentityCheck, SeriesError> {
    if lhs.order() != rhs.order() {
        return Err(SeriesError::OrderMismatch {
            left: lhs.order(),
            right: rhs.order(),
        });
    }
    let first = lhs.coeffs.iter().zip(&rhs.coeffs).position(|(a, b)| a != b);
    Ok(match first {
        None => IdentityCheck::Holds,
        Some(index) => IdentityCheck::Mismatch {
            index,
            lhs: lhs.coeffs[index].clone(),
            rhs: rhs.coeffs[index].clone(),
        },
    })
}

/// The unit series `1 + 0 z + ... + 0 z^order`.
pub fn unit(order: usize) -> GraphicSeries {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    coeffs[0] = BigRational::one();
    GraphicSeries::new(coeffs, "1")
}
