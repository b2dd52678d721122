//! Exact counting of labelled acyclic digraphs and their variants.
//!
//! Every count here comes from the source-removal inclusion-exclusion
//! recurrence
//!
//! ```text
//! A_n(x) = sum_{t=0}^{n-1} C(n,t) (-1)^{n-t-1} u(x)^{t(n-t)} A_t(x),   A_0 = 1
//! ```
//!
//! with `u(x) = 1 + x` for simple digraphs and `u(x) = 1 + x + ... + x^k` for
//! the arc enumerator of `k`-multidigraphs. Scalar counts use `u = 1 + k`.
//! Lower orders are memoised inside a [`Census`], which may be shared between
//! threads.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{PoisonError, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinat::{binomial_row, factorial, pairs};

/// Default largest order accepted by a [`Census`].
pub const DEFAULT_ORDER_CAP: usize = 200;

/// Largest arc-enumerator degree `k * C(n, 2)` a census will materialise.
pub const MAX_ENUMERATOR_DEGREE: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("order {n} exceeds the configured cap of {cap}")]
    OrderTooLarge { n: usize, cap: usize },
    #[error("arc multiplicity k must be at least 1")]
    ZeroMultiplicity,
    #[error("order n must be at least 1 for this count")]
    ZeroOrder,
    #[error("simplex dimension r must lie in 1..=64, got {0}")]
    SimplexDimension(u32),
    #[error("arc enumerator of degree {degree} is too large to store")]
    DegreeTooLarge { degree: u128 },
    #[error("small-cover class count at n = {n} is not an integer (remainder {remainder})")]
    InexactDivision { n: usize, remainder: BigUint },
}

/// Arc-count enumerator of an acyclic (multi)digraph family of fixed order.
///
/// Coefficient `m` counts labelled acyclic digraphs on `order` vertices with
/// `m` arcs (parallel arcs counted with multiplicity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcPolynomial {
    order: usize,
    multiplicity: u64,
    coeffs: Vec<BigUint>,
}

impl ArcPolynomial {
    fn from_signed(order: usize, multiplicity: u64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let coeffs = coeffs
            .into_iter()
            .map(|c| {
                c.to_biguint()
                    .expect("arc enumerator coefficients are nonnegative")
            })
            .collect();
        ArcPolynomial {
            order,
            multiplicity,
            coeffs,
        }
    }

    /// Number of vertices described.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Largest number of parallel arcs allowed between an ordered pair.
    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigUint {
        self.coeffs.last().expect("nonempty")
    }

    /// Horner evaluation at a nonnegative integer.
    pub fn eval(&self, x: &BigUint) -> BigUint {
        self.coeffs
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_u64(&self, x: u64) -> BigUint {
        self.eval(&BigUint::from(x))
    }
}

impl fmt::Display for ArcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && !(m == 0 && self.coeffs.len() == 1) {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match m {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => f.write_str("x")?,
                1 => write!(f, "{c}x")?,
                _ if c.is_one() => write!(f, "x^{m}")?,
                _ => write!(f, "{c}x^{m}")?,
            }
        }
        Ok(())
    }
}

/// The integer sequences the census can tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SequenceKind {
    /// Acyclic digraphs, `a_n`.
    A,
    /// Bicolored acyclic digraphs whose red vertices are all sources, `b_n`.
    B,
    /// Small-cover classes over the `n`-th power of an `r`-simplex, `A_n(2^r - 1)`.
    H { r: u32 },
    /// Equivariant diffeomorphism classes of small covers over the `n`-cube.
    Eq7,
    /// Acyclic `k`-multidigraphs, `A_n(k)`.
    Ak { k: u64 },
}

impl SequenceKind {
    pub fn name(self) -> &'static str {
        match self {
            SequenceKind::A => "a",
            SequenceKind::B => "b",
            SequenceKind::H { .. } => "h",
            SequenceKind::Eq7 => "eq7",
            SequenceKind::Ak { .. } => "Ak",
        }
    }

    pub fn parameter(self) -> Option<u64> {
        match self {
            SequenceKind::H { r } => Some(u64::from(r)),
            SequenceKind::Ak { k } => Some(k),
            _ => None,
        }
    }

    /// Rebuilds a kind from its serialized name and parameter.
    pub fn from_parts(name: &str, parameter: Option<u64>) -> Option<Self> {
        match (name, parameter) {
            ("a", None) => Some(SequenceKind::A),
            ("b", None) => Some(SequenceKind::B),
            ("eq7", None) => Some(SequenceKind::Eq7),
            ("h", Some(r)) => u32::try_from(r).ok().map(|r| SequenceKind::H { r }),
            ("Ak" | "ak", Some(k)) => Some(SequenceKind::Ak { k }),
            _ => None,
        }
    }

    /// Smallest index at which the sequence is defined.
    pub fn first_index(self) -> usize {
        match self {
            SequenceKind::H { .. } | SequenceKind::Eq7 => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter() {
            Some(p) => write!(f, "{}({p})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

/// A named run of sequence values, the exchange format for caches and output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTable", into = "RawTable")]
pub struct SequenceTable {
    pub kind: SequenceKind,
    pub values: BTreeMap<usize, BigUint>,
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    name: String,
    parameter: Option<u64>,
    values: Vec<(usize, String)>,
}

impl From<SequenceTable> for RawTable {
    fn from(t: SequenceTable) -> Self {
        RawTable {
            name: t.kind.name().to_owned(),
            parameter: t.kind.parameter(),
            values: t
                .values
                .into_iter()
                .map(|(n, v)| (n, v.to_string()))
                .collect(),
        }
    }
}

impl TryFrom<RawTable> for SequenceTable {
    type Error = String;

    fn try_from(raw: RawTable) -> Result<Self, String> {
        let kind = SequenceKind::from_parts(&raw.name, raw.parameter).ok_or_else(|| {
            format!(
                "unknown sequence {:?} with parameter {:?}",
                raw.name, raw.parameter
            )
        })?;
        let values = raw
            .values
            .into_iter()
            .map(|(n, v)| {
                v.parse::<BigUint>()
                    .map(|v| (n, v))
                    .map_err(|e| format!("bad value at n = {n}: {e}"))
            })
            .collect::<Result<_, _>>()?;
        Ok(SequenceTable { kind, values })
    }
}

/// A stored value that does not match recomputation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableMismatch {
    #[error("{kind} at n = {n}: stored {stored}, recomputed {expected}")]
    Value {
        kind: SequenceKind,
        n: usize,
        stored: BigUint,
        expected: BigUint,
    },
    #[error(transparent)]
    Count(#[from] CountError),
}

impl SequenceTable {
    /// Recomputes every stored value from scratch.
    pub fn revalidate(&self) -> Result<(), TableMismatch> {
        let census = Census::new();
        for (&n, stored) in &self.values {
            let expected = census.value(self.kind, n)?;
            if &expected != stored {
                return Err(TableMismatch::Value {
                    kind: self.kind,
                    n,
                    stored: stored.clone(),
                    expected,
                });
            }
        }
        Ok(())
    }
}

/// Memoising evaluator for every counting sequence.
///
/// Readers share the memo tables; growth takes a short write lock.
#[derive(Debug)]
pub struct Census {
    cap: usize,
    scalar: RwLock<HashMap<u64, Vec<BigInt>>>,
    simple_poly: RwLock<Vec<Vec<BigInt>>>,
    multi_poly: RwLock<HashMap<u64, Vec<Vec<BigInt>>>>,
}

impl Default for Census {
    fn default() -> Self {
        Census::new()
    }
}

impl Census {
    pub fn new() -> Self {
        Census::with_cap(DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(cap: usize) -> Self {
        Census {
            cap,
            scalar: RwLock::new(HashMap::new()),
            simple_poly: RwLock::new(vec![vec![BigInt::one()]]),
            multi_poly: RwLock::new(HashMap::new()),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check_order(&self, n: usize) -> Result<(), CountError> {
        if n > self.cap {
            Err(CountError::OrderTooLarge { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// `a_n`, the number of labelled acyclic digraphs on `n` vertices.
    pub fn count_acyclic(&self, n: usize) -> Result<BigUint, CountError> {
        self.check_order(n)?;
        Ok(self.scalar_value(1, n))
    }

    /// `A_n(x)`, acyclic digraphs on `n` vertices by number of arcs.
    pub fn arc_enumerator(&self, n: usize) -> Result<ArcPolynomial, CountError> {
        self.check_order(n)?;
        if let Some(p) = read(&self.simple_poly).get(n) {
            return Ok(ArcPolynomial::from_signed(n, 1, p.clone()));
        }
        let mut table = write(&self.simple_poly);
        extend_polynomials(&mut table, n, binomial_power);
        Ok(ArcPolynomial::from_signed(n, 1, table[n].clone()))
    }

    /// `A_n(k)`, labelled acyclic `k`-multidigraphs, by the integer recurrence.
    pub fn eval_at_k(&self, n: usize, k: u64) -> Result<BigUint, CountError> {
        if k == 0 {
            return Err(CountError::ZeroMultiplicity);
        }
        self.check_order(n)?;
        Ok(self.scalar_value(k, n))
    }

    /// `A_n(k)` obtained by evaluating the arc enumerator `A_n(x)` at `x = k`.
    pub fn eval_at_k_via_polynomial(&self, n: usize, k: u64) -> Result<BigUint, CountError> {
        if k == 0 {
            return Err(CountError::ZeroMultiplicity);
        }
        Ok(self.arc_enumerator(n)?.eval_u64(k))
    }

    /// `M_n^(k)(x)`, acyclic `k`-multidigraphs on `n` vertices by number of arcs.
    pub fn multi_arc_enumerator(&self, n: usize, k: u64) -> Result<ArcPolynomial, CountError> {
        if k == 0 {
            return Err(CountError::ZeroMultiplicity);
        }
        self.check_order(n)?;
        let degree = u128::from(k) * pairs(n) as u128;
        if degree > MAX_ENUMERATOR_DEGREE {
            return Err(CountError::DegreeTooLarge { degree });
        }
        if let Some(p) = read(&self.multi_poly).get(&k).and_then(|t| t.get(n)) {
            return Ok(ArcPolynomial::from_signed(n, k, p.clone()));
        }
        let mut guard = write(&self.multi_poly);
        let table = guard.entry(k).or_insert_with(|| vec![vec![BigInt::one()]]);
        let unit = vec![BigInt::one(); k as usize + 1];
        extend_polynomials(table, n, |e| poly::pow(&unit, e));
        Ok(ArcPolynomial::from_signed(n, k, table[n].clone()))
    }

    /// `b_n`, bicolored acyclic digraphs in which every red vertex is a source.
    pub fn count_bicolored(&self, n: usize) -> Result<BigUint, CountError> {
        self.check_order(n)?;
        if n == 0 {
            return Ok(BigUint::one());
        }
        let binom = binomial_row(n);
        let two = BigUint::from(2u32);
        let total = (0..=n).fold(BigUint::zero(), |acc, t| {
            let c = binom[t].to_biguint().expect("binomials are positive");
            acc + c * two.pow(exponent(t * (n - t))) * self.scalar_value(1, t)
        });
        Ok(total)
    }

    /// Equivariant diffeomorphism classes of small covers over the `n`-cube:
    /// `b_n * prod_{i<n} (2^n - 2^i) / (n! 2^n)`.
    pub fn smallcover_cube_classes(&self, n: usize) -> Result<BigUint, CountError> {
        if n == 0 {
            return Err(CountError::ZeroOrder);
        }
        let b = self.count_bicolored(n)?;
        let full = BigUint::one() << n;
        let general_linear = (0..n).fold(BigUint::one(), |acc, i| {
            acc * (&full - (BigUint::one() << i))
        });
        let denominator = factorial(n) * &full;
        let (q, r) = (b * general_linear).div_rem(&denominator);
        if !r.is_zero() {
            return Err(CountError::InexactDivision { n, remainder: r });
        }
        Ok(q)
    }

    /// `h_n^(r) = A_n(2^r - 1)`, Davis-Januszkiewicz classes of small covers
    /// over the `n`-fold power of the `r`-simplex.
    pub fn smallcover_simplexpower_classes(&self, n: usize, r: u32) -> Result<BigUint, CountError> {
        if n == 0 {
            return Err(CountError::ZeroOrder);
        }
        self.eval_at_k(n, simplex_multiplicity(r)?)
    }

    /// Value of any tabulated sequence at `n`.
    pub fn value(&self, kind: SequenceKind, n: usize) -> Result<BigUint, CountError> {
        match kind {
            SequenceKind::A => self.count_acyclic(n),
            SequenceKind::B => self.count_bicolored(n),
            SequenceKind::H { r } => self.smallcover_simplexpower_classes(n, r),
            SequenceKind::Eq7 => self.smallcover_cube_classes(n),
            SequenceKind::Ak { k } => self.eval_at_k(n, k),
        }
    }

    /// Values from the sequence's first index up to `n_max` inclusive.
    pub fn table(&self, kind: SequenceKind, n_max: usize) -> Result<SequenceTable, CountError> {
        let values = (kind.first_index()..=n_max)
            .map(|n| self.value(kind, n).map(|v| (n, v)))
            .collect::<Result<_, _>>()?;
        Ok(SequenceTable { kind, values })
    }

    fn scalar_value(&self, k: u64, n: usize) -> BigUint {
        if let Some(v) = read(&self.scalar).get(&k).and_then(|t| t.get(n)) {
            return to_unsigned(v);
        }
        let mut guard = write(&self.scalar);
        let table = guard.entry(k).or_insert_with(|| vec![BigInt::one()]);
        let base = BigInt::from(k) + 1u32;
        while table.len() <= n {
            let m = table.len();
            let binom = binomial_row(m);
            let mut acc = BigInt::zero();
            for t in 0..m {
                let term = &binom[t] * base.pow(exponent(t * (m - t))) * &table[t];
                if (m - t - 1).is_multiple_of(2) {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            table.push(acc);
        }
        to_unsigned(&table[n])
    }
}

/// `2^r - 1`.
pub fn simplex_multiplicity(r: u32) -> Result<u64, CountError> {
    match r {
        0 | 65.. => Err(CountError::SimplexDimension(r)),
        64 => Ok(u64::MAX),
        _ => Ok((1u64 << r) - 1),
    }
}

/// `a_n` with a throwaway census.
pub fn count_acyclic(n: usize) -> Result<BigUint, CountError> {
    Census::new().count_acyclic(n)
}

pub fn arc_enumerator(n: usize) -> Result<ArcPolynomial, CountError> {
    Census::new().arc_enumerator(n)
}

pub fn eval_at_k(n: usize, k: u64) -> Result<BigUint, CountError> {
    Census::new().eval_at_k(n, k)
}

pub fn multi_arc_enumerator(n: usize, k: u64) -> Result<ArcPolynomial, CountError> {
    Census::new().multi_arc_enumerator(n, k)
}

pub fn count_bicolored(n: usize) -> Result<BigUint, CountError> {
    Census::new().count_bicolored(n)
}

pub fn smallcover_cube_classes(n: usize) -> Result<BigUint, CountError> {
    Census::new().smallcover_cube_classes(n)
}

pub fn smallcover_simplexpower_classes(n: usize, r: u32) -> Result<BigUint, CountError> {
    Census::new().smallcover_simplexpower_classes(n, r)
}

fn read<T>(lock: &RwLock<T>) -> std::sync::RwLockReadGuard<'_, T> {
    lock.read().unwrap_or_else(PoisonError::into_inner)
}

fn write<T>(lock: &RwLock<T>) -> std::sync::RwLockWriteGuard<'_, T> {
    lock.write().unwrap_or_else(PoisonError::into_inner)
}

fn exponent(e: usize) -> u32 {
    e.to_u32()
        .expect("exponent fits in u32 below the order cap")
}

fn to_unsigned(v: &BigInt) -> BigUint {
    debug_assert!(!v.is_negative());
    v.to_biguint().expect("acyclic counts are positive")
}

/// Grows `table` (indexed by order) through order `n` using the recurrence
/// with `power(e) = u(x)^e`.
fn extend_polynomials(
    table: &mut Vec<Vec<BigInt>>,
    n: usize,
    power: impl Fn(usize) -> Vec<BigInt>,
) {
    while table.len() <= n {
        let m = table.len();
        let binom = binomial_row(m);
        let mut acc: Vec<BigInt> = Vec::new();
        for t in 0..m {
            let term = poly::mul(&power(t * (m - t)), &table[t]);
            let negative = (m - t - 1) % 2 == 1;
            poly::add_scaled(&mut acc, &term, &binom[t], negative);
        }
        table.push(acc);
    }
}

/// Coefficients of `(1 + x)^e`.
fn binomial_power(e: usize) -> Vec<BigInt> {
    binomial_row(e)
}

/// Dense integer polynomial helpers (coefficient `i` is the `x^i` term).
mod poly {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    pub(super) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    /// Binary powering.
    pub(super) fn pow(base: &[BigInt], mut e: usize) -> Vec<BigInt> {
        let mut result = vec![BigInt::one()];
        let mut square = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = mul(&result, &square);
            }
            e >>= 1;
            if e > 0 {
                square = mul(&square, &square);
            }
        }
        result
    }

    /// `acc += scale * term`, or `acc -= scale * term` when `negative`.
    pub(super) fn add_scaled(
        acc: &mut Vec<BigInt>,
        term: &[BigInt],
        scale: &BigInt,
        negative: bool,
    ) {
        if acc.len() < term.len() {
            acc.resize(term.len(), BigInt::zero());
        }
        for (a, t) in acc.iter_mut().zip(term) {
            let s = scale * t;
            if negative {
                *a -= s;
            } else {
                *a += s;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    fn coeffs(p: &ArcPolynomial) -> Vec<u64> {
        p.coeffs().iter().map(|c| c.to_u64().unwrap()).collect()
    }

    #[test]
    fn acyclic_counts() {
        let c = Census::new();
        assert_eq!(c.count_acyclic(0).unwrap(), BigUint::one());
        assert_eq!(c.count_acyclic(3).unwrap(), big("25"));
        assert_eq!(c.count_acyclic(6).unwrap(), big("3781503"));
    }

    #[test]
    fn arc_enumerator_small_orders() {
        let c = Census::new();
        assert_eq!(coeffs(&c.arc_enumerator(0).unwrap()), vec![1]);
        assert_eq!(coeffs(&c.arc_enumerator(1).unwrap()), vec![1]);
        // 2 vertices: empty digraph plus one arc in either direction.
        assert_eq!(coeffs(&c.arc_enumerator(2).unwrap()), vec![1, 2]);
        assert_eq!(c.arc_enumerator(4).unwrap().eval_u64(1), big("543"));
        assert_eq!(c.arc_enumerator(2).unwrap().to_string(), "1 + 2x");
    }

    #[test]
    fn multidigraph_counts() {
        let c = Census::new();
        assert_eq!(c.eval_at_k(3, 3).unwrap(), big("289"));
        assert_eq!(c.eval_at_k(2, 2).unwrap(), big("5"));
        assert_eq!(c.eval_at_k(5, 7).unwrap(), big("98267258881"));
        assert_eq!(c.eval_at_k(2, 0), Err(CountError::ZeroMultiplicity));
        assert_eq!(
            c.eval_at_k_via_polynomial(2, 0),
            Err(CountError::ZeroMultiplicity)
        );
    }

    #[test]
    fn multi_arc_enumerator_small() {
        let c = Census::new();
        let p = c.multi_arc_enumerator(2, 2).unwrap();
        assert_eq!(coeffs(&p), vec![1, 2, 2]);
        assert_eq!(p.to_string(), "1 + 2x + 2x^2");
        assert_eq!(coeffs(&c.multi_arc_enumerator(1, 5).unwrap()), vec![1]);
        assert_eq!(c.multi_arc_enumerator(3, 1).unwrap().eval_u64(1), big("25"));
        assert_eq!(
            c.multi_arc_enumerator(3, 0),
            Err(CountError::ZeroMultiplicity)
        );
    }

    #[test]
    fn bicolored_counts() {
        let c = Census::new();
        assert_eq!(c.count_bicolored(0).unwrap(), BigUint::one());
        assert_eq!(c.count_bicolored(1).unwrap(), big("2"));
        assert_eq!(c.count_bicolored(4).unwrap(), big("1664"));
    }

    #[test]
    fn cube_small_covers() {
        let c = Census::new();
        assert_eq!(c.smallcover_cube_classes(1).unwrap(), big("1"));
        assert_eq!(c.smallcover_cube_classes(2).unwrap(), big("6"));
        assert_eq!(c.smallcover_cube_classes(3).unwrap(), big("259"));
        assert_eq!(c.smallcover_cube_classes(0), Err(CountError::ZeroOrder));
    }

    #[test]
    fn simplex_power_small_covers() {
        let c = Census::new();
        assert_eq!(
            c.smallcover_simplexpower_classes(4, 2).unwrap(),
            big("63487")
        );
        assert_eq!(
            c.smallcover_simplexpower_classes(6, 4).unwrap(),
            big("705367139018659069951")
        );
        assert_eq!(
            c.smallcover_simplexpower_classes(5, 1).unwrap(),
            big("29281")
        );
        assert_eq!(
            c.smallcover_simplexpower_classes(3, 0),
            Err(CountError::SimplexDimension(0))
        );
        assert_eq!(simplex_multiplicity(64).unwrap(), u64::MAX);
    }

    #[test]
    fn order_cap_is_enforced() {
        let c = Census::with_cap(5);
        assert!(c.count_acyclic(5).is_ok());
        assert_eq!(
            c.count_acyclic(6),
            Err(CountError::OrderTooLarge { n: 6, cap: 5 })
        );
        assert!(matches!(
            c.arc_enumerator(9),
            Err(CountError::OrderTooLarge { .. })
        ));
        assert!(matches!(
            c.multi_arc_enumerator(9, 2),
            Err(CountError::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn arc_enumerator_degree_and_leading_term() {
        let c = Census::new();
        for n in 1..=25 {
            let p = c.arc_enumerator(n).unwrap();
            assert_eq!(p.degree(), pairs(n), "n = {n}");
            assert_eq!(p.leading(), &factorial(n), "n = {n}");
            assert_eq!(p.coeffs()[0], BigUint::one());
            assert_eq!(p.eval_u64(1), c.count_acyclic(n).unwrap());
        }
    }

    #[test]
    fn multi_enumerator_reduces_to_simple() {
        let c = Census::new();
        for n in 1..=10 {
            assert_eq!(
                c.multi_arc_enumerator(n, 1).unwrap().coeffs(),
                c.arc_enumerator(n).unwrap().coeffs()
            );
            for k in 1..=3 {
                let p = c.multi_arc_enumerator(n, k).unwrap();
                assert_eq!(p.eval_u64(1), c.eval_at_k(n, k).unwrap());
                assert_eq!(p.degree(), k as usize * pairs(n));
                assert_eq!(p.leading(), &factorial(n));
            }
        }
    }

    #[test]
    fn monotone_in_order_and_dimension() {
        let c = Census::new();
        for n in 1..12 {
            assert!(c.count_acyclic(n + 1).unwrap() > c.count_acyclic(n).unwrap());
            assert!(c.count_bicolored(n + 1).unwrap() > c.count_bicolored(n).unwrap());
            for r in 1..=4 {
                let h = c.smallcover_simplexpower_classes(n, r).unwrap();
                assert!(c.smallcover_simplexpower_classes(n + 1, r).unwrap() > h);
                if n >= 2 {
                    assert!(c.smallcover_simplexpower_classes(n, r + 1).unwrap() > h);
                }
            }
        }
    }

    #[test]
    fn concurrent_readers_share_memo() {
        let c = Census::new();
        std::thread::scope(|s| {
            for n in [8usize, 12, 10, 15] {
                let c = &c;
                s.spawn(move || {
                    assert_eq!(
                        c.count_acyclic(n).unwrap(),
                        c.arc_enumerator(n).unwrap().eval_u64(1)
                    );
                });
            }
        });
    }

    #[test]
    fn table_serde_and_revalidation() {
        let c = Census::new();
        let table = c.table(SequenceKind::H { r: 2 }, 4).unwrap();
        assert_eq!(
            table.values.keys().copied().collect::<Vec<_>>(),
            vec![1, 2, 3, 4]
        );
        let json = serde_json::to_string(&table).unwrap();
        assert_eq!(
            json,
            r#"{"name":"h","parameter":2,"values":[[1,"1"],[2,"7"],[3,"289"],[4,"63487"]]}"#
        );
        let back: SequenceTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, table);
        back.revalidate().unwrap();

        let mut stale = table;
        stale.values.insert(3, big("288"));
        assert!(matches!(
            stale.revalidate(),
            Err(TableMismatch::Value { n: 3, .. })
        ));
        let bad = r#"{"name":"zz","parameter":null,"values":[]}"#;
        assert!(serde_json::from_str::<SequenceTable>(bad).is_err());
    }

    #[test]
    fn table_first_index() {
        let c = Census::new();
        let a = c.table(SequenceKind::A, 2).unwrap();
        assert_eq!(a.values[&0], BigUint::one());
        let b = c.table(SequenceKind::B, 0).unwrap();
        assert_eq!(b.values[&0], BigUint::one());
        assert!(!c
            .table(SequenceKind::Eq7, 3)
            .unwrap()
            .values
            .contains_key(&0));
    }
}
