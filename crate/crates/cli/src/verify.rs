//! Verification suites: every published value and every identity the
//! library relies on, re-derived and compared.

use std::collections::BTreeMap;
use std::path::Path;

use acyclic_census::asymptotics::{self, convergence_report, PrecisionContext};
use acyclic_census::counts::{Census, SequenceKind};
use acyclic_census::oracle::{Oracle, OracleError, DEFAULT_BUDGET};
use acyclic_census::series::{self, Sign};
use acyclic_census::Real;
use num_bigint::{BigInt, BigUint};

use crate::cache::Cache;
use crate::envelope::{record, OutputEnvelope, Record, Status};
use crate::reference::{Constant, Row, CONSTANTS, PUBLISHED_DIGITS, TABLE1};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Suite {
    Table1,
    Oracle,
    Series,
    Constants,
    Derivative,
    Integrality,
    Asymptotics,
    Conventions,
    Cache,
    All,
}

impl Suite {
    const EACH: [Suite; 9] = [
        Suite::Table1,
        Suite::Oracle,
        Suite::Series,
        Suite::Constants,
        Suite::Derivative,
        Suite::Integrality,
        Suite::Asymptotics,
        Suite::Conventions,
        Suite::Cache,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Table1 => "table1",
            Suite::Oracle => "oracle",
            Suite::Series => "series",
            Suite::Constants => "constants",
            Suite::Derivative => "derivative",
            Suite::Integrality => "integrality",
            Suite::Asymptotics => "asymptotics",
            Suite::Conventions => "conventions",
            Suite::Cache => "cache",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Truncation order for the series identities.
    pub order: usize,
    /// Candidate-matrix budget for the oracle suite.
    pub budget: u128,
    /// Cache file whose contents are revalidated.
    pub cache: Option<std::path::PathBuf>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            order: 12,
            budget: DEFAULT_BUDGET,
            cache: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Refused,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

impl Check {
    fn new(suite: Suite, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            suite: suite.name(),
            name: name.into(),
            outcome: if passed { Outcome::Pass } else { Outcome::Fail },
            detail: detail.into(),
        }
    }

    fn error(suite: Suite, name: impl Into<String>, detail: impl ToString) -> Self {
        Check::new(suite, name, false, detail.to_string())
    }

    fn equal<T: PartialEq + std::fmt::Display>(
        suite: Suite,
        name: impl Into<String>,
        got: T,
        expected: T,
    ) -> Self {
        let passed = got == expected;
        let detail = if passed {
            format!("{got}")
        } else {
            format!("got {got}, expected {expected}")
        };
        Check::new(suite, name, passed, detail)
    }

    fn to_record(&self) -> Record {
        let status = match self.outcome {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Refused => "refused",
        };
        record([
            ("check", format!("{}/{}", self.suite, self.name)),
            ("detail", self.detail.clone()),
            ("status", status.to_owned()),
            ("suite", self.suite.to_owned()),
        ])
    }
}

/// Runs a suite (or all of them) and packs the results.
pub fn cmd_verify(suite: Suite, options: &VerifyOptions) -> OutputEnvelope {
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        one => vec![one],
    };
    let checks: Vec<Check> = run_suites(&suites, options).into_iter().flatten().collect();
    let status = if checks.iter().any(|c| c.outcome == Outcome::Fail) {
        Status::Error
    } else if checks.iter().any(|c| c.outcome == Outcome::Refused) {
        Status::Refused
    } else {
        Status::Ok
    };
    let mut parameters = BTreeMap::from([
        ("suite".to_owned(), suite.name().to_owned()),
        ("order".to_owned(), options.order.to_string()),
        ("budget".to_owned(), options.budget.to_string()),
    ]);
    if let Some(path) = &options.cache {
        parameters.insert("cache".to_owned(), path.display().to_string());
    }
    OutputEnvelope {
        command: "verify".to_owned(),
        parameters,
        reason: None,
        results: checks.iter().map(Check::to_record).collect(),
        status,
        timing_ms: 0,
    }
}

#[cfg(feature = "parallel")]
fn run_suites(suites: &[Suite], options: &VerifyOptions) -> Vec<Vec<Check>> {
    use rayon::prelude::*;
    suites.par_iter().map(|&s| run_suite(s, options)).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_suites(suites: &[Suite], options: &VerifyOptions) -> Vec<Vec<Check>> {
    suites.iter().map(|&s| run_suite(s, options)).collect()
}

pub fn run_suite(suite: Suite, options: &VerifyOptions) -> Vec<Check> {
    match suite {
        Suite::Table1 => table1(),
        Suite::Oracle => oracle(options.budget),
        Suite::Series => series_identities(options.order),
        Suite::Constants => constants(),
        Suite::Derivative => derivative(),
        Suite::Integrality => integrality(),
        Suite::Asymptotics => asymptotic_convergence(),
        Suite::Conventions => conventions(),
        Suite::Cache => cache(options.cache.as_deref()),
        Suite::All => Suite::EACH
            .iter()
            .flat_map(|&s| run_suite(s, options))
            .collect(),
    }
}

fn table1() -> Vec<Check> {
    let census = Census::new();
    let mut checks = Vec::new();
    for (label, row, values) in TABLE1 {
        for (i, expected) in values.iter().enumerate() {
            let n = i + 1;
            let got = match row {
                Row::Acyclic => census.count_acyclic(n),
                Row::SimplexPower(r) => census.smallcover_simplexpower_classes(n, r),
                Row::Bicolored => census.count_bicolored(n),
            };
            let name = format!("{label}[{n}]");
            checks.push(match got {
                Ok(v) => Check::equal(Suite::Table1, name, v.to_string(), expected.to_string()),
                Err(e) => Check::error(Suite::Table1, name, e),
            });
        }
    }
    checks
}

fn oracle_check(
    name: String,
    result: Result<BigUint, OracleError>,
    expected: Result<BigUint, impl ToString>,
) -> Check {
    match (result, expected) {
        (Ok(got), Ok(expected)) => Check::equal(Suite::Oracle, name, got, expected),
        (Err(e @ OracleError::BudgetExceeded { .. }), _) => Check {
            suite: Suite::Oracle.name(),
            name,
            outcome: Outcome::Refused,
            detail: e.to_string(),
        },
        (Err(e), _) => Check::error(Suite::Oracle, name, e),
        (_, Err(e)) => Check::error(Suite::Oracle, name, e.to_string()),
    }
}

fn oracle(budget: u128) -> Vec<Check> {
    let census = Census::new();
    let oracle = Oracle::with_budget(budget);
    let mut checks = Vec::new();
    for n in 1..=5 {
        let name = format!("brute_count({n},1) = A_{n}(x)");
        checks.push(match (oracle.brute_count(n, 1), census.arc_enumerator(n)) {
            (Ok(tally), Ok(poly)) => {
                let got: Vec<BigUint> = tally.by_arcs.iter().map(|&c| BigUint::from(c)).collect();
                let passed = got.as_slice() == poly.coeffs();
                Check::new(
                    Suite::Oracle,
                    name,
                    passed,
                    format!("{} coefficients, total {}", got.len(), tally.total()),
                )
            }
            (Err(e), _) => oracle_check(name, Err(e), Ok::<_, String>(BigUint::default())),
            (_, Err(e)) => Check::error(Suite::Oracle, name, e),
        });
    }
    let tally = oracle.brute_count(4, 3).map(|t| BigUint::from(t.total()));
    checks.push(oracle_check(
        "brute_count(4,3) total = A_4(3)".into(),
        tally.clone(),
        census.eval_at_k(4, 3),
    ));
    checks.push(oracle_check(
        "brute_count(4,3) total = 63487".into(),
        tally,
        Ok::<_, String>(BigUint::from(63487u32)),
    ));
    for k in [1u64, 3, 7, 15] {
        for n in 1..=5 {
            checks.push(oracle_check(
                format!("weighted({n},{k}) = A_{n}({k})"),
                oracle.brute_count_weighted(n, k),
                census.eval_at_k(n, k),
            ));
        }
    }
    for n in 1..=4 {
        checks.push(oracle_check(
            format!("bicolored({n}) = b_{n}"),
            oracle.brute_count_bicolored(n),
            census.count_bicolored(n),
        ));
    }
    for n in 1..=4 {
        let name = format!("kahn = dfs on all digraphs of order {n}");
        checks.push(match oracle.cross_check_acyclicity(n, 1) {
            Ok(count) => Check::new(Suite::Oracle, name, true, format!("{count} digraphs")),
            Err(e) => oracle_check(name, Err(e), Ok::<_, String>(BigUint::default())),
        });
    }
    checks
}

fn series_identities(order: usize) -> Vec<Check> {
    let census = Census::new();
    let mut checks = Vec::new();
    let mut identity = |name: String,
                        lhs: Result<series::GraphicSeries, String>,
                        rhs: Result<series::GraphicSeries, String>| {
        let check = match (lhs, rhs) {
            (Ok(l), Ok(r)) => match series::verify_identity(&l, &r) {
                Ok(series::IdentityCheck::Holds) => {
                    Check::new(Suite::Series, name, true, format!("order {order}"))
                }
                Ok(series::IdentityCheck::Mismatch { index, lhs, rhs }) => Check::new(
                    Suite::Series,
                    name,
                    false,
                    format!("z^{index}: {lhs} vs {rhs}"),
                ),
                Err(e) => Check::error(Suite::Series, name, e),
            },
            (Err(e), _) | (_, Err(e)) => Check::error(Suite::Series, name, e),
        };
        checks.push(check);
    };
    let table = |kind| census.table(kind, order).map_err(|e| e.to_string());
    let graphic = |kind, k| -> Result<series::GraphicSeries, String> {
        series::from_sequence(&table(kind)?, k, Sign::Plus, order).map_err(|e| e.to_string())
    };
    let psi = |k| series::psi_series(k, order).map_err(|e| e.to_string());
    let recip = |k| -> Result<series::GraphicSeries, String> {
        series::reciprocal(&psi(k)?).map_err(|e| e.to_string())
    };

    identity(
        "A(z) = 1/Psi(z)".into(),
        recip(1),
        graphic(SequenceKind::A, 1),
    );
    for k in [1u64, 3, 7, 15] {
        identity(
            format!("A({k},z) = 1/Psi({k},z)"),
            recip(k),
            graphic(SequenceKind::Ak { k }, k),
        );
    }
    let product = psi(1).and_then(|p| Ok(series::multiply(&graphic(SequenceKind::B, 1)?, &p)));
    identity(
        "B(z) Psi(z) = Psi(-z)".into(),
        product,
        psi(1).map(|p| p.negate_argument()),
    );
    checks
}

fn constants() -> Vec<Check> {
    let ctx = PrecisionContext::new(25).expect("valid precision");
    let mut checks = Vec::new();
    let mut roots = BTreeMap::new();
    for (k, quantity, published) in CONSTANTS {
        let root = roots
            .entry(k)
            .or_insert_with(|| asymptotics::certified_least_root(k, &ctx));
        let name = match quantity {
            Constant::Omega => format!("omega_{k}"),
            Constant::Lambda => format!("lambda_{k}"),
            Constant::PsiNegOmega => "psi(-omega)".to_owned(),
        };
        let value: Result<Real, String> = match root {
            Ok(root) => match quantity {
                Constant::Omega => Ok(root.omega.clone()),
                Constant::Lambda => Ok(root.lambda.clone()),
                Constant::PsiNegOmega => {
                    asymptotics::psi_at_negative_root(root, &ctx).map_err(|e| e.to_string())
                }
            },
            Err(e) => Err(e.to_string()),
        };
        if quantity == Constant::PsiNegOmega {
            checks.push(match value {
                Ok(v) => psi_check(name, &v, published, &ctx),
                Err(e) => Check::error(Suite::Constants, name, e),
            });
            continue;
        }
        checks.push(match value {
            Ok(v) => {
                let rounded = v.to_fixed(PUBLISHED_DIGITS);
                let passed = rounded == published;
                Check::new(
                    Suite::Constants,
                    name,
                    passed,
                    format!(
                        "{} rounds to {rounded}, published {published}",
                        v.to_fixed(25)
                    ),
                )
            }
            Err(e) => Check::error(Suite::Constants, name, e),
        });
    }
    checks
}

/// The printed `Psi(-omega)` is `Psi` evaluated at the printed (rounded) `omega_1`,
/// so it need not be the correct rounding of the true value. Check that it is
/// reproduced from the printed `omega_1` and lies within one unit of the last
/// printed place of the true value.
fn psi_check(name: String, value: &Real, published: &str, ctx: &PrecisionContext) -> Check {
    let printed_omega = CONSTANTS
        .iter()
        .find(|(k, q, _)| *k == 1 && *q == Constant::Omega)
        .and_then(|(_, _, s)| ctx.parse(s))
        .expect("omega_1 is listed");
    let published_value = ctx.parse(published).expect("published constant parses");
    match asymptotics::eval_psi(1, &-&printed_omega, ctx) {
        Ok(reproduced) => {
            let reproduced = reproduced.to_fixed(PUBLISHED_DIGITS);
            let gap = (value - &published_value).abs();
            let passed = reproduced == published && gap <= ctx.epsilon(PUBLISHED_DIGITS);
            Check::new(
                Suite::Constants,
                name,
                passed,
                format!(
                    "{}; at printed omega {reproduced}, published {published}",
                    value.to_fixed(25)
                ),
            )
        }
        Err(e) => Check::error(Suite::Constants, name, e),
    }
}

/// Twenty evenly spaced points on `[-1.5, 1.5]`.
pub fn derivative_sample_points(ctx: &PrecisionContext) -> Vec<Real> {
    (0..20).map(|i| ctx.ratio(-15 * 19 + 30 * i, 190)).collect()
}

fn derivative() -> Vec<Check> {
    let ctx = PrecisionContext::new(25).expect("valid precision");
    let points = derivative_sample_points(&ctx);
    [1u64, 3, 7, 15, 31]
        .into_iter()
        .map(|k| {
            let name = format!("Psi'({k},z) = -Psi({k},z/{})", k + 1);
            let mut worst = Real::zero(ctx.bits());
            for z in &points {
                match asymptotics::eval_psi_derivative(k, z, &ctx) {
                    Ok(d) => worst = worst.max(d.discrepancy()),
                    Err(e) => return Check::error(Suite::Derivative, name, e),
                }
            }
            let passed = worst < ctx.epsilon(ctx.target_digits);
            Check::new(
                Suite::Derivative,
                name,
                passed,
                format!("20 points, max |difference| {:.30}", worst),
            )
        })
        .collect()
}

fn integrality() -> Vec<Check> {
    let census = Census::new();
    let mut checks: Vec<Check> = (1..=12)
        .map(|n| match census.smallcover_cube_classes(n) {
            Ok(v) => Check::new(
                Suite::Integrality,
                format!("cube classes n={n} exact"),
                true,
                v.to_string(),
            ),
            Err(e) => Check::error(Suite::Integrality, format!("cube classes n={n} exact"), e),
        })
        .collect();
    for (n, expected) in [(1usize, 1u32), (2, 6), (3, 259)] {
        let name = format!("cube classes n={n} value");
        checks.push(match census.smallcover_cube_classes(n) {
            Ok(v) => Check::equal(Suite::Integrality, name, v, BigUint::from(expected)),
            Err(e) => Check::error(Suite::Integrality, name, e),
        });
    }
    checks
}

fn asymptotic_convergence() -> Vec<Check> {
    let ctx = PrecisionContext::new(30).expect("valid precision");
    let census = Census::new();
    [
        (SequenceKind::A, 20usize, 10usize),
        (SequenceKind::B, 12, 6),
        (SequenceKind::H { r: 2 }, 12, 6),
    ]
    .into_iter()
    .map(|(kind, n_max, n_mid)| {
        let name = format!("{kind}: |ratio-1| at n={n_max} < at n={n_mid}, ratios positive");
        match convergence_report(kind, n_max, &ctx, &census) {
            Ok(rows) => {
                let positive = rows.iter().all(|r| r.ratio.is_positive());
                let (late, mid) = (rows[n_max - 1].deviation(), rows[n_mid - 1].deviation());
                Check::new(
                    Suite::Asymptotics,
                    name,
                    positive && late < mid,
                    format!(
                        "ratio at {n_mid}: {:.12}, at {n_max}: {:.12}",
                        rows[n_mid - 1].ratio,
                        rows[n_max - 1].ratio
                    ),
                )
            }
            Err(e) => Check::error(Suite::Asymptotics, name, e),
        }
    })
    .collect()
}

fn conventions() -> Vec<Check> {
    let census = Census::new();
    let mut checks = Vec::new();
    for k in [1u64, 3, 7, 15, 31] {
        let name = format!("A_n({k}) by polynomial = by recurrence, n<=12");
        let mismatch = (1..=12)
            .find(|&n| census.eval_at_k(n, k).ok() != census.eval_at_k_via_polynomial(n, k).ok());
        checks.push(match mismatch {
            None => Check::new(Suite::Conventions, name, true, "12 orders"),
            Some(n) => Check::new(Suite::Conventions, name, false, format!("differs at n={n}")),
        });
    }
    for k in 1u64..=3 {
        let name = format!("M_n^({k})(1) = A_n({k}), n<=10");
        let mismatch = (1..=10).find(|&n| {
            census
                .multi_arc_enumerator(n, k)
                .map(|p| p.eval_u64(1))
                .ok()
                != census.eval_at_k(n, k).ok()
        });
        checks.push(match mismatch {
            None => Check::new(Suite::Conventions, name, true, "10 orders"),
            Some(n) => Check::new(Suite::Conventions, name, false, format!("differs at n={n}")),
        });
    }
    let name = "M_n^(1)(x) = A_n(x), n<=10";
    let mismatch = (1..=10).find(|&n| {
        census
            .multi_arc_enumerator(n, 1)
            .ok()
            .map(|p| p.coeffs().to_vec())
            != census.arc_enumerator(n).ok().map(|p| p.coeffs().to_vec())
    });
    checks.push(Check::new(
        Suite::Conventions,
        name,
        mismatch.is_none(),
        mismatch.map_or("10 orders".to_owned(), |n| format!("differs at n={n}")),
    ));
    let eq4 = (0..=8).all(|n| {
        let psi = series::psi_series(3, 8).expect("k >= 1");
        let recip = series::reciprocal(&psi).expect("unit constant term");
        recip.weighted_numerators(3).map(|s| s[n].clone())
            == census.eval_at_k(n, 3).ok().map(BigInt::from)
    });
    checks.push(Check::new(
        Suite::Conventions,
        "1/Psi(3,z) numerators = A_n(3), n<=8",
        eq4,
        "rescaled by n! 4^C(n,2)",
    ));
    checks
}

fn cache(path: Option<&Path>) -> Vec<Check> {
    let Some(path) = path else {
        return Vec::new();
    };
    let cache = Cache::load(path);
    if cache.tables().is_empty() {
        return vec![Check::new(
            Suite::Cache,
            "cache",
            true,
            format!("{} holds no tables", path.display()),
        )];
    }
    cache
        .tables()
        .iter()
        .map(|table| {
            let name = format!("{} recomputed", table.kind);
            match table.revalidate() {
                Ok(()) => Check::new(
                    Suite::Cache,
                    name,
                    true,
                    format!("{} values", table.values.len()),
                ),
                Err(e) => Check::error(Suite::Cache, name, e),
            }
        })
        .collect()
}
