use std::collections::BTreeMap;
use std::path::Path;

use acyclic_census::asymptotics::{self, AsymptoticError, PrecisionContext};
use acyclic_census::counts::{Census, CountError, SequenceKind};
use thiserror::Error;

use crate::cache::Cache;
use crate::envelope::{record, OutputEnvelope, Status};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Refused(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn into_envelope(self, command: &str) -> OutputEnvelope {
        let status = match self {
            CliError::Refused(_) => Status::Refused,
            _ => Status::Error,
        };
        OutputEnvelope::failure(command, status, self.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Refused(_) => 4,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        match e {
            CountError::OrderTooLarge { .. } | CountError::DegreeTooLarge { .. } => {
                CliError::Refused(e.to_string())
            }
            CountError::InexactDivision { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<AsymptoticError> for CliError {
    fn from(e: AsymptoticError) -> Self {
        match e {
            AsymptoticError::Count(c) => c.into(),
            AsymptoticError::ZeroMultiplicity | AsymptoticError::InvalidPrecision => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}

/// Values of one sequence from its first index through `n_max`, optionally
/// served from and recorded into a cache file.
pub fn cmd_count(
    kind: SequenceKind,
    n_max: usize,
    cache: Option<&Path>,
) -> Result<OutputEnvelope, CliError> {
    if n_max < kind.first_index() {
        return Err(CliError::Usage(format!(
            "{kind} starts at n = {}",
            kind.first_index()
        )));
    }
    let census = Census::new();
    if n_max > census.cap() {
        return Err(CountError::OrderTooLarge {
            n: n_max,
            cap: census.cap(),
        }
        .into());
    }
    let mut cache = cache.map(Cache::load);
    let (table, source) = match cache.as_ref().and_then(|c| c.lookup(kind, n_max)) {
        Some(table) => (table, "cache"),
        None => {
            let table = census.table(kind, n_max)?;
            if let Some(cache) = cache.as_mut() {
                cache.store(&table);
                if let Err(e) = cache.save() {
                    eprintln!(
                        "warning: could not write cache {}: {e}",
                        cache.path().display()
                    );
                }
            }
            (table, "computed")
        }
    };
    let mut params = record([
        ("sequence", kind.name().to_owned()),
        ("n_max", n_max.to_string()),
        ("source", source.to_owned()),
    ]);
    if let Some(p) = kind.parameter() {
        let key = if matches!(kind, SequenceKind::H { .. }) {
            "r"
        } else {
            "k"
        };
        params.insert(key.to_owned(), p.to_string());
    }
    let results = table
        .values
        .iter()
        .map(|(n, v)| record([("n", n.to_string()), ("value", v.to_string())]))
        .collect();
    Ok(OutputEnvelope::ok("count", params, results))
}

/// Coefficients of the arc enumerator `A_n(x)` (`k = 1`) or `M_n^(k)(x)`.
pub fn cmd_poly(n: usize, k: u64) -> Result<OutputEnvelope, CliError> {
    let census = Census::new();
    let poly = if k == 1 {
        census.arc_enumerator(n)?
    } else {
        census.multi_arc_enumerator(n, k)?
    };
    let params = record([("n", n.to_string()), ("k", k.to_string())]);
    let results = poly
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, c)| record([("arcs", m.to_string()), ("count", c.to_string())]))
        .collect();
    Ok(OutputEnvelope::ok("poly", params, results))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CoverKind {
    /// Equivariant diffeomorphism classes over the n-cube.
    CubeDiffeo,
    /// Davis-Januszkiewicz classes over the n-th power of the r-simplex.
    SimplexpowerDj,
}

pub fn cmd_smallcover(
    kind: CoverKind,
    n: usize,
    r: Option<u32>,
) -> Result<OutputEnvelope, CliError> {
    let census = Census::new();
    let (name, value, params) = match (kind, r) {
        (CoverKind::CubeDiffeo, None) => (
            "cube-diffeo",
            census.smallcover_cube_classes(n)?,
            record([("n", n.to_string())]),
        ),
        (CoverKind::CubeDiffeo, Some(_)) => {
            return Err(CliError::Usage("cube-diffeo takes no --r".into()));
        }
        (CoverKind::SimplexpowerDj, Some(r)) => (
            "simplexpower-dj",
            census.smallcover_simplexpower_classes(n, r)?,
            record([("n", n.to_string()), ("r", r.to_string())]),
        ),
        (CoverKind::SimplexpowerDj, None) => {
            return Err(CliError::Usage("simplexpower-dj requires --r".into()));
        }
    };
    let mut params = params;
    params.insert("kind".into(), name.into());
    let mut result = params.clone();
    result.insert("value".into(), value.to_string());
    Ok(OutputEnvelope::ok("smallcover", params, vec![result]))
}

/// `omega_k`, `lambda_k` and, for `k = 1`, `Psi(-omega)`, each to `digits` decimals.
pub fn cmd_constants(k: u64, digits: u32) -> Result<OutputEnvelope, CliError> {
    if digits == 0 {
        return Err(CliError::Usage("--digits must be at least 1".into()));
    }
    let ctx = PrecisionContext::new(digits)?;
    let root = asymptotics::certified_least_root(k, &ctx)?;
    let row = |name: &str, value: String| {
        record([
            ("k", k.to_string()),
            ("name", name.to_owned()),
            ("value", value),
        ])
    };
    let mut results = vec![
        row("omega", root.omega.to_fixed(digits)),
        row("lambda", root.lambda.to_fixed(digits)),
    ];
    if k == 1 {
        let psi = asymptotics::psi_at_negative_root(&root, &ctx)?;
        results.push(row("psi_neg_omega", psi.to_fixed(digits)));
    }
    let params = BTreeMap::from([
        ("k".to_owned(), k.to_string()),
        ("digits".to_owned(), digits.to_string()),
    ]);
    Ok(OutputEnvelope::ok("constants", params, results))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(env: &OutputEnvelope, column: &str) -> Vec<String> {
        env.results.iter().map(|r| r[column].clone()).collect()
    }

    #[test]
    fn count_rows() {
        let a = cmd_count(SequenceKind::A, 6, None).unwrap();
        assert_eq!(
            values(&a, "value"),
            ["1", "1", "3", "25", "543", "29281", "3781503"]
        );
        let b = cmd_count(SequenceKind::B, 3, None).unwrap();
        assert_eq!(values(&b, "value"), ["1", "2", "8", "74"]);
        let h = cmd_count(SequenceKind::H { r: 4 }, 3, None).unwrap();
        assert_eq!(values(&h, "value"), ["1", "31", "23041"]);
        assert_eq!(h.parameters["r"], "4");
        assert!(matches!(
            cmd_count(SequenceKind::A, 201, None),
            Err(CliError::Refused(_))
        ));
        assert!(matches!(
            cmd_count(SequenceKind::H { r: 2 }, 0, None),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn poly_rows() {
        assert_eq!(values(&cmd_poly(2, 1).unwrap(), "count"), ["1", "2"]);
        assert_eq!(values(&cmd_poly(2, 2).unwrap(), "count"), ["1", "2", "2"]);
        assert_eq!(values(&cmd_poly(1, 9).unwrap(), "count"), ["1"]);
        assert!(matches!(cmd_poly(2, 0), Err(CliError::Usage(_))));
    }

    #[test]
    fn smallcover_values() {
        let v = |e: OutputEnvelope| e.results[0]["value"].clone();
        assert_eq!(
            v(cmd_smallcover(CoverKind::CubeDiffeo, 2, None).unwrap()),
            "6"
        );
        assert_eq!(
            v(cmd_smallcover(CoverKind::SimplexpowerDj, 6, Some(3)).unwrap()),
            "18033699790913535"
        );
        assert_eq!(
            v(cmd_smallcover(CoverKind::SimplexpowerDj, 1, Some(1)).unwrap()),
            "1"
        );
        assert!(matches!(
            cmd_smallcover(CoverKind::SimplexpowerDj, 3, None),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            cmd_smallcover(CoverKind::CubeDiffeo, 0, None),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn constants_at_published_digits() {
        // The printed Psi(-omega) ends in 301; see the constants suite.
        let one = cmd_constants(1, 19).unwrap();
        assert_eq!(
            values(&one, "value"),
            [
                "1.4880785455997102947",
                "1.7410611252932298403",
                "3.1135745244678549300"
            ]
        );
        assert_eq!(
            cmd_constants(15, 19).unwrap().results[0]["value"],
            "1.0333224614072573348"
        );
        assert_eq!(
            cmd_constants(3, 19).unwrap().results[1]["value"],
            "1.1928652399365987835"
        );
        assert!(matches!(cmd_constants(0, 19), Err(CliError::Usage(_))));
    }
}
