//! High-precision evaluation of the alternating graphic series
//!
//! ```text
//! Psi(k, z) = sum_{n>=0} (-1)^n z^n / (n! (1+k)^C(n,2))
//! ```
//!
//! its least positive root `omega_k`, the prefactor
//! `lambda_k = -1 / (omega_k Psi'(k, omega_k))`, and the asymptotic laws
//! `A_n(k) ~ lambda_k n! (1+k)^C(n,2) / omega_k^n` and
//! `b_n ~ Psi(1, -omega_1) a_n`.
//!
//! Precision travels in a [`PrecisionContext`]; every value is a fixed-point
//! [`Real`] at `target + guard` decimal digits.

use num_bigint::{BigInt, BigUint};
use thiserror::Error;

use crate::combinat::{factorial, pairs};
use crate::counts::{simplex_multiplicity, Census, CountError, SequenceKind};
use crate::exec::Execution;
use crate::real::Real;

/// Largest `|z|` accepted by the series evaluators.
pub const MAX_ARGUMENT: i64 = 4;

const SCAN_START: i64 = 20; // 1.00 in twentieths
const SCAN_END: i64 = 32; // 1.60
const BISECTION_STEPS: usize = 10;
const MAX_NEWTON_STEPS: usize = 200;
/// Extra decimal digits used by [`certified_least_root`] for its re-run.
pub const CERTIFY_EXTRA_DIGITS: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsymptoticError {
    #[error("multiplicity k must be at least 1")]
    ZeroMultiplicity,
    #[error("|z| must not exceed {MAX_ARGUMENT}, got {0}")]
    ArgumentOutOfRange(String),
    #[error("series did not converge within {0} terms")]
    NoConvergence(usize),
    #[error("no sign change of Psi(k = {0}, z) on [1, 1.6]")]
    NoSignChange(u64),
    #[error("Newton iteration for k = {0} did not settle")]
    NewtonStalled(u64),
    #[error("derivative of Psi vanishes at the root for k = {0}")]
    DegenerateDerivative(u64),
    #[error("root residual {residual} exceeds 1e-{digits}")]
    ResidualTooLarge { residual: String, digits: u32 },
    #[error("digits of {what} for k = {k} change when precision is raised: {low} vs {high}")]
    UnstableDigits {
        what: &'static str,
        k: u64,
        low: String,
        high: String,
    },
    #[error("no asymptotic law for sequence {0}")]
    UnsupportedSequence(SequenceKind),
    #[error("precision context needs target >= 1 and guard >= 10 digits")]
    InvalidPrecision,
    #[error(transparent)]
    Count(#[from] CountError),
}

/// Working precision for one computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    pub target_digits: u32,
    pub guard_digits: u32,
    pub max_terms: usize,
}

impl PrecisionContext {
    pub const DEFAULT_GUARD: u32 = 20;
    pub const DEFAULT_MAX_TERMS: usize = 10_000;

    pub fn new(target_digits: u32) -> Result<Self, AsymptoticError> {
        PrecisionContext::with_guard(target_digits, Self::DEFAULT_GUARD)
    }

    pub fn with_guard(target_digits: u32, guard_digits: u32) -> Result<Self, AsymptoticError> {
        if target_digits < 1 || guard_digits < 10 {
            return Err(AsymptoticError::InvalidPrecision);
        }
        Ok(PrecisionContext {
            target_digits,
            guard_digits,
            max_terms: Self::DEFAULT_MAX_TERMS,
        })
    }

    pub fn working_digits(&self) -> u32 {
        self.target_digits + self.guard_digits
    }

    /// Fractional bits covering the working digits, plus slack for rounding.
    pub fn bits(&self) -> u32 {
        // log2(10) < 3.3220
        (u64::from(self.working_digits()) * 33_220 / 10_000) as u32 + 16
    }

    pub fn real(&self, value: impl Into<BigInt>) -> Real {
        Real::from_int(value, self.bits())
    }

    pub fn ratio(&self, num: impl Into<BigInt>, den: impl Into<BigInt>) -> Real {
        Real::from_ratio(num, den, self.bits())
    }

    pub fn parse(&self, text: &str) -> Option<Real> {
        Real::parse_decimal(text, self.bits())
    }

    /// `10^-digits` at working precision.
    pub fn epsilon(&self, digits: u32) -> Real {
        Real::decimal_epsilon(digits, self.bits())
    }

    pub fn raised(&self, extra: u32) -> Self {
        PrecisionContext {
            target_digits: self.target_digits + extra,
            ..*self
        }
    }
}

/// The least positive root of `Psi(k, z)` and its asymptotic prefactor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootResult {
    pub k: u64,
    pub omega: Real,
    pub lambda: Real,
    pub precision_digits: u32,
    /// `|Psi(k, omega)|` at working precision.
    pub residual: Real,
}

/// Both routes to `Psi'(k, z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiDerivative {
    /// Differentiating the series term by term.
    pub termwise: Real,
    /// `-Psi(k, z / (1 + k))`.
    pub via_identity: Real,
}

impl PsiDerivative {
    pub fn value(&self) -> &Real {
        &self.termwise
    }

    /// `|termwise - via_identity|`.
    pub fn discrepancy(&self) -> Real {
        (&self.termwise - &self.via_identity).abs()
    }

    /// Whether the two routes agree to the context's target digits.
    pub fn agrees(&self, ctx: &PrecisionContext) -> bool {
        self.discrepancy() < ctx.epsilon(ctx.target_digits)
    }
}

fn check_k(k: u64) -> Result<BigInt, AsymptoticError> {
    if k == 0 {
        Err(AsymptoticError::ZeroMultiplicity)
    } else {
        Ok(BigInt::from(k) + 1)
    }
}

fn check_argument(z: &Real, ctx: &PrecisionContext) -> Result<(), AsymptoticError> {
    if z.abs() > ctx.real(MAX_ARGUMENT) {
        Err(AsymptoticError::ArgumentOutOfRange(z.to_fixed(6)))
    } else {
        Ok(())
    }
}

/// Sums `t_0 + t_1 + ...` where `t_n = t_{n-1} * (-z) / divisor(n)`.
///
/// `divisor` must be increasing fast enough that the ratio
/// `|z| / divisor(n+1)` is nonincreasing once below one. Summation stops at
/// the first `n` where that ratio is at most 1/2 and `2 |t_n|` (term plus
/// geometric tail bound) is below `10^-(target + guard)`.
fn sum_alternating(
    first: Real,
    z: &Real,
    divisor: impl Fn(usize) -> BigInt,
    ctx: &PrecisionContext,
) -> Result<Real, AsymptoticError> {
    let eps = ctx.epsilon(ctx.working_digits());
    let neg_z = -z;
    let twice_abs_z = z.abs().mul_int(&BigInt::from(2));
    let mut term = first;
    let mut sum = term.clone();
    let mut next_divisor = divisor(1);
    for n in 1..=ctx.max_terms {
        term = term.mul(&neg_z).div_int(&next_divisor);
        sum = &sum + &term;
        next_divisor = divisor(n + 1);
        let ratio_small = twice_abs_z <= ctx.real(next_divisor.clone());
        if ratio_small && term.abs().mul_int(&BigInt::from(2)) < eps {
            return Ok(sum);
        }
    }
    Err(AsymptoticError::NoConvergence(ctx.max_terms))
}

/// `Psi(k, z)` to `target + guard` digits.
pub fn eval_psi(k: u64, z: &Real, ctx: &PrecisionContext) -> Result<Real, AsymptoticError> {
    let base = check_k(k)?;
    check_argument(z, ctx)?;
    // t_n / t_{n-1} = -z / (n (1+k)^(n-1))
    sum_alternating(
        ctx.real(1),
        z,
        |n| BigInt::from(n) * base.pow(n as u32 - 1),
        ctx,
    )
}

/// `Psi'(k, z)`, by term-wise differentiation and by `-Psi(k, z/(1+k))`.
pub fn eval_psi_derivative(
    k: u64,
    z: &Real,
    ctx: &PrecisionContext,
) -> Result<PsiDerivative, AsymptoticError> {
    let base = check_k(k)?;
    check_argument(z, ctx)?;
    // d/dz of the n-th term: (-1)^n z^(n-1) / ((n-1)! (1+k)^C(n,2)); with m = n - 1
    // the ratio of consecutive terms is -z / (m (1+k)^m).
    let termwise = sum_alternating(
        -ctx.real(1),
        z,
        |m| BigInt::from(m) * base.pow(m as u32),
        ctx,
    )?;
    let shrunk = z.div_int(&base);
    let via_identity = -eval_psi(k, &shrunk, ctx)?;
    Ok(PsiDerivative {
        termwise,
        via_identity,
    })
}

/// `-1 / (omega Psi'(k, omega))`.
pub fn lambda_constant(
    k: u64,
    omega: &Real,
    ctx: &PrecisionContext,
) -> Result<Real, AsymptoticError> {
    let derivative = eval_psi_derivative(k, omega, ctx)?;
    let denominator = omega.mul(derivative.value());
    ctx.real(-1)
        .div(&denominator)
        .ok_or(AsymptoticError::DegenerateDerivative(k))
}

/// Least positive root of `Psi(k, z)`: sign scan of `[1, 1.6]` in steps of
/// 0.05, ten bisection steps, then Newton until steps fall below
/// `10^-(target + guard/2)`.
pub fn find_least_root(k: u64, ctx: &PrecisionContext) -> Result<RootResult, AsymptoticError> {
    check_k(k)?;
    let grid = |i: i64| ctx.ratio(i, 20);
    let mut lo = grid(SCAN_START);
    let mut f_lo = eval_psi(k, &lo, ctx)?;
    if !f_lo.is_positive() {
        return Err(AsymptoticError::NoSignChange(k));
    }
    let mut bracket = None;
    for i in SCAN_START + 1..=SCAN_END {
        let hi = grid(i);
        let f_hi = eval_psi(k, &hi, ctx)?;
        if !f_hi.is_positive() {
            bracket = Some(hi);
            break;
        }
        lo = hi;
        f_lo = f_hi;
    }
    let mut hi = bracket.ok_or(AsymptoticError::NoSignChange(k))?;
    debug_assert!(f_lo.is_positive());

    let half = ctx.ratio(1, 2);
    for _ in 0..BISECTION_STEPS {
        let mid = (&lo + &hi).mul(&half);
        if eval_psi(k, &mid, ctx)?.is_positive() {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let tolerance = ctx.epsilon(ctx.target_digits + ctx.guard_digits / 2);
    let mut z = (&lo + &hi).mul(&half);
    let mut settled = false;
    for _ in 0..MAX_NEWTON_STEPS {
        let value = eval_psi(k, &z, ctx)?;
        let slope = eval_psi_derivative(k, &z, ctx)?;
        let step = value
            .div(slope.value())
            .ok_or(AsymptoticError::DegenerateDerivative(k))?;
        z = &z - &step;
        if step.abs() < tolerance {
            settled = true;
            break;
        }
    }
    if !settled {
        return Err(AsymptoticError::NewtonStalled(k));
    }

    let residual = eval_psi(k, &z, ctx)?.abs();
    if residual >= ctx.epsilon(ctx.target_digits) {
        return Err(AsymptoticError::ResidualTooLarge {
            residual: residual.to_fixed(ctx.working_digits()),
            digits: ctx.target_digits,
        });
    }
    let lambda = lambda_constant(k, &z, ctx)?;
    Ok(RootResult {
        k,
        omega: z,
        lambda,
        precision_digits: ctx.target_digits,
        residual,
    })
}

/// [`find_least_root`], re-run with [`CERTIFY_EXTRA_DIGITS`] more digits; fails
/// if the rounded `omega` or `lambda` strings differ between the two runs.
pub fn certified_least_root(k: u64, ctx: &PrecisionContext) -> Result<RootResult, AsymptoticError> {
    let root = find_least_root(k, ctx)?;
    let check = find_least_root(k, &ctx.raised(CERTIFY_EXTRA_DIGITS))?;
    let digits = ctx.target_digits;
    for (what, low, high) in [
        ("omega", &root.omega, &check.omega),
        ("lambda", &root.lambda, &check.lambda),
    ] {
        let (low, high) = (low.to_fixed(digits), high.to_fixed(digits));
        if low != high {
            return Err(AsymptoticError::UnstableDigits { what, k, low, high });
        }
    }
    Ok(root)
}

/// Least roots for several `k`, in input order.
pub fn least_roots(
    ks: &[u64],
    ctx: &PrecisionContext,
    exec: Execution,
) -> Vec<Result<RootResult, AsymptoticError>> {
    exec.map_slice(ks, |&k| certified_least_root(k, ctx))
}

/// `Psi(1, -omega_1)`, the bicolored-to-plain growth ratio.
pub fn psi_at_negative_root(
    root: &RootResult,
    ctx: &PrecisionContext,
) -> Result<Real, AsymptoticError> {
    eval_psi(root.k, &-&root.omega, ctx)
}

/// Asymptotic law `value_n ~ prefactor n! (1+k)^C(n,2) / omega^n` for one sequence.
#[derive(Debug, Clone)]
pub struct AsymptoticLaw {
    pub kind: SequenceKind,
    pub root: RootResult,
    pub prefactor: Real,
    ctx: PrecisionContext,
}

impl AsymptoticLaw {
    pub fn new(kind: SequenceKind, ctx: &PrecisionContext) -> Result<Self, AsymptoticError> {
        let k = match kind {
            SequenceKind::A | SequenceKind::B => 1,
            SequenceKind::H { r } => simplex_multiplicity(r)?,
            SequenceKind::Ak { k } => k,
            SequenceKind::Eq7 => return Err(AsymptoticError::UnsupportedSequence(kind)),
        };
        let root = find_least_root(k, ctx)?;
        let prefactor = match kind {
            SequenceKind::B => root.lambda.mul(&psi_at_negative_root(&root, ctx)?),
            _ => root.lambda.clone(),
        };
        Ok(AsymptoticLaw {
            kind,
            root,
            prefactor,
            ctx: *ctx,
        })
    }

    pub fn estimate(&self, n: usize) -> Real {
        let base = BigUint::from(self.root.k) + 1u32;
        let scale = factorial(n) * base.pow(pairs(n) as u32);
        let growth = self.root.omega.powi(n as u32);
        Real::from_biguint(&scale, self.ctx.bits())
            .mul(&self.prefactor)
            .div(&growth)
            .expect("omega is positive")
    }
}

/// Asymptotic estimate of `sequence` at `n`.
pub fn asymptotic_estimate(
    kind: SequenceKind,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<Real, AsymptoticError> {
    Ok(AsymptoticLaw::new(kind, ctx)?.estimate(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub exact: BigUint,
    pub estimate: Real,
    /// `exact / estimate`.
    pub ratio: Real,
}

impl ConvergenceRow {
    /// `|ratio - 1|`.
    pub fn deviation(&self) -> Real {
        (&self.ratio - &Real::one(self.ratio.bits())).abs()
    }
}

/// Exact values against the asymptotic law for `n = 1..=n_max`.
pub fn convergence_report(
    kind: SequenceKind,
    n_max: usize,
    ctx: &PrecisionContext,
    census: &Census,
) -> Result<Vec<ConvergenceRow>, AsymptoticError> {
    let law = AsymptoticLaw::new(kind, ctx)?;
    (1..=n_max)
        .map(|n| {
            let exact = census.value(kind, n)?;
            let estimate = law.estimate(n);
            let ratio = Real::from_biguint(&exact, ctx.bits())
                .div(&estimate)
                .expect("estimates are positive");
            Ok(ConvergenceRow {
                n,
                exact,
                estimate,
                ratio,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const OMEGA_1: &str = "1.4880785455997102947";
    const LAMBDA_1: &str = "1.7410611252932298403";

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(25).unwrap()
    }

    #[test]
    fn psi_at_origin() {
        let c = ctx();
        assert_eq!(eval_psi(1, &c.real(0), &c).unwrap(), c.real(1));
        let d = eval_psi_derivative(1, &c.real(0), &c).unwrap();
        assert_eq!(d.termwise, c.real(-1));
        assert_eq!(d.via_identity, c.real(-1));
        assert_eq!(
            eval_psi_derivative(3, &c.real(0), &c).unwrap().termwise,
            c.real(-1)
        );
    }

    #[test]
    fn psi_small_argument_matches_truncated_sum() {
        let c = ctx();
        // Psi(1, 1/2) = 1 - 1/2 + 1/16 - 1/384 + 1/24576 - ...; the next term is ~2.5e-7.
        let z = c.ratio(1, 2);
        let v = eval_psi(1, &z, &c).unwrap().to_f64();
        let partial = 1.0 - 0.5 + 1.0 / 16.0 - 1.0 / 384.0 + 1.0 / 24576.0;
        assert!((v - partial).abs() < 3e-7, "{v} vs {partial}");
    }

    #[test]
    fn psi_vanishes_at_published_root() {
        let c = ctx();
        let omega = c.parse(OMEGA_1).unwrap();
        // The published root carries 19 decimals; |Psi'| < 1 so the value is below 1e-19.
        assert!(eval_psi(1, &omega, &c).unwrap().abs() < c.epsilon(19));
        // The rounded root shifts Psi(-omega) in the 20th decimal.
        let neg = eval_psi(1, &-&omega, &c).unwrap();
        let published = c.parse("3.1135745244678549301").unwrap();
        assert!((&neg - &published).abs() < c.epsilon(18));
    }

    #[test]
    fn derivative_at_root_inverts_lambda() {
        let c = ctx();
        let omega = c.parse(OMEGA_1).unwrap();
        let lambda = c.parse(LAMBDA_1).unwrap();
        let expected = c.real(-1).div(&omega.mul(&lambda)).unwrap();
        let d = eval_psi_derivative(1, &omega, &c).unwrap();
        assert!(d.agrees(&c));
        assert!((&d.termwise - &expected).abs() < c.epsilon(17));
        assert_eq!(d.termwise.to_fixed(4), "-0.3860");
    }

    #[test]
    fn argument_and_parameter_errors() {
        let c = ctx();
        assert!(matches!(
            eval_psi(1, &c.real(5), &c),
            Err(AsymptoticError::ArgumentOutOfRange(_))
        ));
        assert_eq!(
            eval_psi(0, &c.real(1), &c),
            Err(AsymptoticError::ZeroMultiplicity)
        );
        assert_eq!(
            find_least_root(0, &c).unwrap_err(),
            AsymptoticError::ZeroMultiplicity
        );
        assert_eq!(
            PrecisionContext::new(0).unwrap_err(),
            AsymptoticError::InvalidPrecision
        );
        assert_eq!(
            PrecisionContext::with_guard(5, 9).unwrap_err(),
            AsymptoticError::InvalidPrecision
        );
        assert!(matches!(
            AsymptoticLaw::new(SequenceKind::Eq7, &c),
            Err(AsymptoticError::UnsupportedSequence(SequenceKind::Eq7))
        ));
    }

    #[test]
    fn truncated_term_budget_is_reported() {
        let mut c = ctx();
        c.max_terms = 3;
        assert_eq!(
            eval_psi(1, &c.ratio(3, 2), &c),
            Err(AsymptoticError::NoConvergence(3))
        );
    }

    #[test]
    fn least_roots_of_the_simplex_family() {
        let c = ctx();
        let r1 = find_least_root(1, &c).unwrap();
        assert!(r1.omega.to_fixed(25).starts_with("1.48807854559971029465"));
        assert!(r1.lambda.to_fixed(25).starts_with("1.74106112529322984034"));
        assert!(r1.residual < c.epsilon(25));
        let r3 = find_least_root(3, &c).unwrap();
        assert_eq!(r3.omega.to_fixed(19), "1.1657706116147275128");
        let r31 = find_least_root(31, &c).unwrap();
        assert_eq!(r31.omega.to_fixed(19), "1.0161277190328587378");
    }

    #[test]
    fn lambda_routes_agree() {
        let c = ctx();
        for k in [1, 7, 15] {
            let root = find_least_root(k, &c).unwrap();
            let base = BigInt::from(k + 1);
            let alt = c
                .real(1)
                .div(
                    &root
                        .omega
                        .mul(&eval_psi(k, &root.omega.div_int(&base), &c).unwrap()),
                )
                .unwrap();
            assert!((&alt - &root.lambda).abs() < c.epsilon(25), "k = {k}");
            assert!(root.lambda.is_positive());
        }
        let l7 = find_least_root(7, &c).unwrap().lambda;
        assert_eq!(l7.to_fixed(19), "1.0763509327694490247");
    }

    #[test]
    fn large_multiplicity_root_approaches_one() {
        let c = ctx();
        let root = find_least_root(1 << 20, &c).unwrap();
        assert!(root.omega > c.real(1));
        assert!(root.omega < c.ratio(21, 20));
    }

    #[test]
    fn root_computation_is_deterministic() {
        let c = ctx();
        let a = find_least_root(3, &c).unwrap();
        let b = find_least_root(3, &c).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.omega.to_fixed(25), b.omega.to_fixed(25));
    }

    #[test]
    fn certified_roots_in_parallel_match_sequential() {
        let c = PrecisionContext::new(20).unwrap();
        let ks = [1, 3, 7];
        let seq = least_roots(&ks, &c, Execution::Sequential);
        let par = least_roots(&ks, &c, Execution::Parallel);
        assert_eq!(seq, par);
        assert!(seq.iter().all(Result::is_ok));
    }

    #[test]
    fn estimates_track_exact_counts() {
        let c = PrecisionContext::new(20).unwrap();
        let census = Census::new();
        let a6 = asymptotic_estimate(SequenceKind::A, 6, &c)
            .unwrap()
            .to_f64();
        assert!((a6 / 3_781_503.0 - 1.0).abs() < 1e-3);
        let h6 = asymptotic_estimate(SequenceKind::H { r: 2 }, 6, &c)
            .unwrap()
            .to_f64();
        assert!((h6 / 367_404_658_687.0 - 1.0).abs() < 1e-3);

        let b = convergence_report(SequenceKind::B, 5, &c, &census).unwrap();
        assert!(b[4].deviation() < b[3].deviation());

        let a = convergence_report(SequenceKind::A, 12, &c, &census).unwrap();
        assert_eq!(a.len(), 12);
        assert!(a[11].deviation() < c.epsilon(4));
        let single = convergence_report(SequenceKind::A, 1, &c, &census).unwrap();
        assert_eq!(single.len(), 1);
        assert!(single[0].ratio.is_positive());
    }

    #[test]
    fn simplex_power_convergence_is_eventually_monotone() {
        let c = PrecisionContext::new(20).unwrap();
        let rows = convergence_report(SequenceKind::H { r: 3 }, 8, &c, &Census::new()).unwrap();
        let devs: Vec<Real> = rows.iter().map(ConvergenceRow::deviation).collect();
        let start = devs
            .windows(2)
            .rposition(|w| w[1] >= w[0])
            .map_or(0, |i| i + 1);
        assert!(start < devs.len() - 2, "no monotone tail: {devs:?}");
    }
}
