use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Output rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Refused,
    Error,
}

/// One record: column name to decimal or textual value.
pub type Record = BTreeMap<String, String>;

/// Machine-readable result of one command.
///
/// Field names are in lexicographic order and every map is a `BTreeMap`, so
/// the serialized JSON is canonical: parsing and re-rendering it reproduces
/// the same bytes. Exact integers are always decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub results: Vec<Record>,
    pub status: Status,
    pub timing_ms: u64,
}

impl OutputEnvelope {
    pub fn ok(command: &str, parameters: BTreeMap<String, String>, results: Vec<Record>) -> Self {
        debug_assert!(!results.is_empty());
        OutputEnvelope {
            command: command.to_owned(),
            parameters,
            reason: None,
            results,
            status: Status::Ok,
            timing_ms: 0,
        }
    }

    pub fn failure(command: &str, status: Status, reason: String) -> Self {
        OutputEnvelope {
            command: command.to_owned(),
            parameters: BTreeMap::new(),
            reason: Some(reason),
            results: Vec::new(),
            status,
            timing_ms: 0,
        }
    }

    /// Process exit code: 0 ok, 2 usage, 3 verification failure, 4 refusal.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Refused => 4,
            Status::Error if self.command == "verify" && self.reason.is_none() => 3,
            Status::Error => 2,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("envelope serializes");
        out.push('\n');
        out
    }

    /// Header row from the first record's keys, one row per record.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        if let Some(first) = self.results.first() {
            writer.write_record(first.keys()).expect("in-memory write");
            for record in &self.results {
                writer
                    .write_record(
                        first
                            .keys()
                            .map(|k| record.get(k).map_or("", String::as_str)),
                    )
                    .expect("in-memory write");
            }
        }
        String::from_utf8(writer.into_inner().expect("flush to memory")).expect("utf-8 csv")
    }

    pub fn to_text(&self) -> String {
        if let Some(reason) = &self.reason {
            return format!("{}: {reason}\n", self.command);
        }
        let get = |r: &Record, k: &str| r.get(k).cloned().unwrap_or_default();
        let mut out = String::new();
        match self.command.as_str() {
            "count" => {
                let name = self.parameters.get("sequence").cloned().unwrap_or_default();
                for r in &self.results {
                    out += &format!("{name}({}) = {}\n", get(r, "n"), get(r, "value"));
                }
            }
            "poly" => {
                let coeffs: Vec<String> = self.results.iter().map(|r| get(r, "count")).collect();
                out += &format!("[{}]\n", coeffs.join(", "));
            }
            "smallcover" => {
                for r in &self.results {
                    out += &format!("{}\n", get(r, "value"));
                }
            }
            "constants" => {
                for r in &self.results {
                    out += &format!("{}_{} = {}\n", get(r, "name"), get(r, "k"), get(r, "value"));
                }
            }
            "verify" => {
                let failed = self
                    .results
                    .iter()
                    .filter(|r| get(r, "status") != "pass")
                    .count();
                for r in &self.results {
                    let mark = get(r, "status").to_uppercase();
                    out += &format!("{mark} {}: {}\n", get(r, "check"), get(r, "detail"));
                }
                out += &format!("{} checks, {failed} not passed\n", self.results.len());
            }
            _ => {
                for r in &self.results {
                    let fields: Vec<String> = r.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    out += &format!("{}\n", fields.join(" "));
                }
            }
        }
        out
    }
}

/// Builds a record from `(column, value)` pairs.
pub fn record<const N: usize>(fields: [(&str, String); N]) -> Record {
    fields.into_iter().map(|(k, v)| (k.to_owned(), v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputEnvelope {
        let params = record([("sequence", "a".into()), ("n_max", "2".into())]);
        let results = vec![
            record([("n", "0".into()), ("value", "1".into())]),
            record([("n", "1".into()), ("value", "1".into())]),
            record([("n", "2".into()), ("value", "3".into())]),
        ];
        OutputEnvelope {
            timing_ms: 7,
            ..OutputEnvelope::ok("count", params, results)
        }
    }

    #[test]
    fn json_is_canonical() {
        let json = sample().to_json();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let mut again = serde_json::to_string_pretty(&value).unwrap();
        again.push('\n');
        assert_eq!(json, again);
        let back: OutputEnvelope = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sample());
    }

    #[test]
    fn csv_and_text() {
        assert_eq!(sample().to_csv(), "n,value\n0,1\n1,1\n2,3\n");
        assert_eq!(sample().to_text(), "a(0) = 1\na(1) = 1\na(2) = 3\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(sample().exit_code(), 0);
        assert_eq!(
            OutputEnvelope::failure("count", Status::Error, "bad".into()).exit_code(),
            2
        );
        assert_eq!(
            OutputEnvelope::failure("verify", Status::Refused, "budget".into()).exit_code(),
            4
        );
        let failed = OutputEnvelope {
            status: Status::Error,
            ..OutputEnvelope::ok(
                "verify",
                BTreeMap::new(),
                vec![record([("check", "x".into())])],
            )
        };
        assert_eq!(failed.exit_code(), 3);
    }
}
