//! Binary fixed-point reals with an arbitrary-precision mantissa.
//!
//! A [`Real`] is `mantissa / 2^bits`. All operands of one computation share
//! the same `bits`, which the caller chooses from a precision context; there
//! is no global precision state. Products and quotients truncate, so each
//! operation loses at most one unit in the last place.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Real {
    mantissa: BigInt,
    bits: u32,
}

impl Real {
    pub fn zero(bits: u32) -> Self {
        Real {
            mantissa: BigInt::zero(),
            bits,
        }
    }

    pub fn one(bits: u32) -> Self {
        Real::from_int(1, bits)
    }

    pub fn from_int(value: impl Into<BigInt>, bits: u32) -> Self {
        Real {
            mantissa: value.into() << bits,
            bits,
        }
    }

    pub fn from_biguint(value: &BigUint, bits: u32) -> Self {
        Real::from_int(BigInt::from(value.clone()), bits)
    }

    /// `num / den`, truncated toward zero. Panics if `den` is zero.
    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>, bits: u32) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "zero denominator");
        Real {
            mantissa: (num.into() << bits) / den,
            bits,
        }
    }

    /// Parses a plain decimal such as `-1.488` (no exponent).
    pub fn parse_decimal(text: &str, bits: u32) -> Option<Self> {
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text.strip_prefix('+').unwrap_or(text)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
        {
            return None;
        }
        let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let value = Real::from_ratio(digits, scale, bits);
        Some(if negative { -value } else { value })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn abs(&self) -> Self {
        Real {
            mantissa: self.mantissa.abs(),
            bits: self.bits,
        }
    }

    pub fn mul(&self, other: &Real) -> Real {
        self.check(other);
        Real {
            mantissa: (&self.mantissa * &other.mantissa) >> self.bits,
            bits: self.bits,
        }
    }

    /// `None` when `other` is zero.
    pub fn div(&self, other: &Real) -> Option<Real> {
        self.check(other);
        if other.is_zero() {
            return None;
        }
        Some(Real {
            mantissa: (&self.mantissa << self.bits) / &other.mantissa,
            bits: self.bits,
        })
    }

    pub fn mul_int(&self, factor: &BigInt) -> Real {
        Real {
            mantissa: &self.mantissa * factor,
            bits: self.bits,
        }
    }

    /// Panics if `divisor` is zero.
    pub fn div_int(&self, divisor: &BigInt) -> Real {
        Real {
            mantissa: &self.mantissa / divisor,
            bits: self.bits,
        }
    }

    pub fn powi(&self, exp: u32) -> Real {
        let mut acc = Real::one(self.bits);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// `10^-digits` at this precision.
    pub fn decimal_epsilon(digits: u32, bits: u32) -> Real {
        Real::from_ratio(1, BigInt::from(10u32).pow(digits), bits)
    }

    /// Decimal rendering rounded half away from zero to `decimals` places.
    pub fn to_fixed(&self, decimals: u32) -> String {
        let scale = BigUint::from(10u32).pow(decimals);
        let magnitude = self.mantissa.magnitude() * scale;
        let half = if self.bits == 0 {
            BigUint::zero()
        } else {
            BigUint::one() << (self.bits - 1)
        };
        let rounded: BigUint = (magnitude + half) >> self.bits;
        Self::render(self.mantissa.sign() == Sign::Minus, rounded, decimals)
    }

    /// Decimal rendering truncated toward zero to `decimals` places.
    pub fn to_fixed_truncated(&self, decimals: u32) -> String {
        let scale = BigUint::from(10u32).pow(decimals);
        let truncated: BigUint = (self.mantissa.magnitude() * scale) >> self.bits;
        Self::render(self.mantissa.sign() == Sign::Minus, truncated, decimals)
    }

    fn render(negative: bool, scaled: BigUint, decimals: u32) -> String {
        let (int_part, frac_part) = scaled.div_rem(&BigUint::from(10u32).pow(decimals));
        let sign = if negative && !(int_part.is_zero() && frac_part.is_zero()) {
            "-"
        } else {
            ""
        };
        if decimals == 0 {
            format!("{sign}{int_part}")
        } else {
            format!(
                "{sign}{int_part}.{frac_part:0>width$}",
                width = decimals as usize
            )
        }
    }

    /// Nearest `f64`, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        self.to_fixed(20).parse().unwrap_or(f64::NAN)
    }

    fn check(&self, other: &Real) {
        debug_assert_eq!(self.bits, other.bits, "mixed-precision arithmetic");
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        self.check(other);
        self.mantissa.cmp(&other.mantissa)
    }
}

impl Add for &Real {
    type Output = Real;

    fn add(self, other: &Real) -> Real {
        self.check(other);
        Real {
            mantissa: &self.mantissa + &other.mantissa,
            bits: self.bits,
        }
    }
}

impl Sub for &Real {
    type Output = Real;

    fn sub(self, other: &Real) -> Real {
        self.check(other);
        Real {
            mantissa: &self.mantissa - &other.mantissa,
            bits: self.bits,
        }
    }
}

impl Neg for Real {
    type Output = Real;

    fn neg(self) -> Real {
        Real {
            mantissa: -self.mantissa,
            bits: self.bits,
        }
    }
}

impl Neg for &Real {
    type Output = Real;

    fn neg(self) -> Real {
        -(self.clone())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let decimals = f.precision().unwrap_or(20) as u32;
        f.write_str(&self.to_fixed(decimals))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const BITS: u32 = 128;

    #[test]
    fn rendering_rounds_half_away() {
        let x = Real::parse_decimal("1.23456", BITS).unwrap();
        assert_eq!(x.to_fixed(4), "1.2346");
        assert_eq!(x.to_fixed_truncated(4), "1.2345");
        assert_eq!((-&x).to_fixed(2), "-1.23");
        assert_eq!(
            Real::parse_decimal("-0.0000001", BITS).unwrap().to_fixed(3),
            "0.000"
        );
        assert_eq!(Real::from_int(42, BITS).to_fixed(0), "42");
        assert_eq!(format!("{:.3}", Real::from_ratio(1, 3, BITS)), "0.333");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Real::parse_decimal("", BITS).is_none());
        assert!(Real::parse_decimal("1.2e5", BITS).is_none());
        assert!(Real::parse_decimal("abc", BITS).is_none());
        assert_eq!(
            Real::parse_decimal(".5", BITS).unwrap(),
            Real::from_ratio(1, 2, BITS)
        );
    }

    #[test]
    fn arithmetic() {
        let a = Real::from_ratio(3, 2, BITS);
        let b = Real::from_ratio(1, 4, BITS);
        assert_eq!((&a + &b).to_fixed(2), "1.75");
        assert_eq!((&a - &b).to_fixed(2), "1.25");
        assert_eq!(a.mul(&b).to_fixed(3), "0.375");
        assert_eq!(a.div(&b).unwrap().to_fixed(1), "6.0");
        assert!(a.div(&Real::zero(BITS)).is_none());
        assert_eq!(a.powi(3).to_fixed(3), "3.375");
        assert!(b < a);
    }

    proptest! {
        #[test]
        fn division_inverts_multiplication(p in -10_000i64..10_000, q in 1i64..10_000) {
            let x = Real::from_ratio(p, 997, BITS);
            let y = Real::from_ratio(q, 13, BITS);
            let back = x.mul(&y).div(&y).unwrap();
            let err = (&back - &x).abs();
            prop_assert!(err <= Real::decimal_epsilon(30, BITS));
        }
    }
}
