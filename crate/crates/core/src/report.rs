//! Serializable records of suite and experiment runs.
//!
//! Reports are deterministic: field order is fixed, maps are ordered, and
//! instance records are sorted by key, so two runs with the same seed and
//! version serialize byte-identically. Exhaustive suites do not store one
//! record per corpus instance; they keep every failure, the tightest passing
//! instance, and the aggregate counts.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::error::Result;

/// One exact inequality evaluated on one instance: both sides rendered as
/// integers or rationals, never floats.
#[derive(Clone, Debug, Serialize)]
pub struct CheckedInequality {
    pub description: String,
    pub lhs: String,
    pub relation: &'static str,
    pub rhs: String,
    pub holds: bool,
}

impl CheckedInequality {
    pub fn ge(description: impl Into<String>, lhs: i128, rhs: i128) -> Self {
        CheckedInequality {
            description: description.into(),
            lhs: lhs.to_string(),
            relation: ">=",
            rhs: rhs.to_string(),
            holds: lhs >= rhs,
        }
    }

    pub fn lt(description: impl Into<String>, lhs: i128, rhs: i128) -> Self {
        CheckedInequality {
            description: description.into(),
            lhs: lhs.to_string(),
            relation: "<",
            rhs: rhs.to_string(),
            holds: lhs < rhs,
        }
    }

    pub fn eq(description: impl Into<String>, lhs: i128, rhs: i128) -> Self {
        CheckedInequality {
            description: description.into(),
            lhs: lhs.to_string(),
            relation: "==",
            rhs: rhs.to_string(),
            holds: lhs == rhs,
        }
    }
}

/// Per-instance record: a stable key, metric strings, the inequalities that
/// were decided on it, and optionally a serialized witness.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceRecord {
    pub key: String,
    pub pass: bool,
    pub metrics: BTreeMap<String, String>,
    pub checks: Vec<CheckedInequality>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
}

impl InstanceRecord {
    pub fn new(key: impl Into<String>) -> Self {
        InstanceRecord {
            key: key.into(),
            pass: true,
            metrics: BTreeMap::new(),
            checks: Vec::new(),
            graph: None,
            certificate: None,
        }
    }

    pub fn metric(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.metrics.insert(name.into(), value.to_string());
        self
    }

    pub fn check(&mut self, c: CheckedInequality) -> &mut Self {
        self.pass &= c.holds;
        self.checks.push(c);
        self
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub instances: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean: Option<f64>,
}

/// Record of one suite or command run.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    /// Generator spec, file digest, or corpus description.
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub params: BTreeMap<String, String>,
    /// True for suites that measure trends rather than proven statements.
    pub observational: bool,
    pub instances: Vec<InstanceRecord>,
    pub summary: Summary,
    pub version: &'static str,
}

impl Report {
    pub fn new(command: impl Into<String>, input: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            input: input.into(),
            seed: None,
            params: BTreeMap::new(),
            observational: false,
            instances: Vec::new(),
            summary: Summary::default(),
            version: crate::VERSION,
        }
    }

    pub fn param(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.params.insert(name.into(), value.to_string());
        self
    }

    /// Appends a record, keeping the failure count in sync.
    pub fn push(&mut self, rec: InstanceRecord) {
        if !rec.pass {
            self.summary.failures += 1;
        }
        self.instances.push(rec);
    }

    /// Sorts records by key; call once after parallel assembly.
    pub fn finalize(&mut self) {
        self.instances.sort_by(|a, b| a.key.cmp(&b.key));
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failures == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports are serializable")
    }

    /// CSV: one row per instance, rows sorted by key; metric columns are the
    /// union of all metric names in alphabetical order.
    pub fn to_csv(&self) -> Result<String> {
        let mut columns: Vec<String> = self
            .instances
            .iter()
            .flat_map(|r| r.metrics.keys().cloned())
            .collect();
        columns.sort();
        columns.dedup();
        let mut wtr = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["key".to_string(), "pass".to_string()];
        header.extend(columns.iter().cloned());
        wtr.write_record(&header).map_err(csv_err)?;
        let mut rows: Vec<&InstanceRecord> = self.instances.iter().collect();
        rows.sort_by(|a, b| a.key.cmp(&b.key));
        for rec in rows {
            let mut row = vec![rec.key.clone(), rec.pass.to_string()];
            for col in &columns {
                row.push(rec.metrics.get(col).cloned().unwrap_or_default());
            }
            wtr.write_record(&row).map_err(csv_err)?;
        }
        let bytes = wtr.into_inner().map_err(|e| csv_err(e.into_error().into()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Human-readable summary with one line per failing instance (or per
    /// instance when there are few).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {}  input {}  version {}\n",
            self.command, self.input, self.version
        ));
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed {seed}\n"));
        }
        for (k, v) in &self.params {
            out.push_str(&format!("param {k} = {v}\n"));
        }
        let verbose = self.instances.len() <= 32;
        for rec in &self.instances {
            if rec.pass && !verbose {
                continue;
            }
            out.push_str(&format!(
                "{} {}\n",
                if rec.pass { "pass" } else { "FAIL" },
                rec.key
            ));
            for c in &rec.checks {
                if !c.holds || verbose {
                    out.push_str(&format!(
                        "    {}: {} {} {} [{}]\n",
                        c.description,
                        c.lhs,
                        c.relation,
                        c.rhs,
                        if c.holds { "ok" } else { "VIOLATED" }
                    ));
                }
            }
            if !rec.pass {
                for (k, v) in &rec.metrics {
                    out.push_str(&format!("    {k} = {v}\n"));
                }
                if let Some(g) = &rec.graph {
                    out.push_str("    graph:\n");
                    for line in g.lines() {
                        out.push_str(&format!("        {line}\n"));
                    }
                }
                if let Some(c) = &rec.certificate {
                    out.push_str(&format!("    certificate: {c}\n"));
                }
            }
        }
        out.push_str(&format!(
            "{}: {} instances, {} failures{}\n",
            if self.all_pass() { "PASS" } else { "FAIL" },
            self.summary.instances,
            self.summary.failures,
            if self.observational {
                " (observational)"
            } else {
                ""
            }
        ));
        out
    }

    pub fn write_to(&self, mut w: impl Write, format: ReportFormat) -> Result<()> {
        let text = match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Csv => self.to_csv()?,
            ReportFormat::Text => self.to_text(),
        };
        w.write_all(text.as_bytes())?;
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> crate::Error {
    crate::Error::Io(std::io::Error::other(e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            other => Err(format!("unknown format {other:?} (json|csv|text)")),
        }
    }
}

/// Hex SHA-256 of an input file's bytes, recorded in reports.
pub fn digest_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> Report {
        let mut r = Report::new("demo", "corpus n<=2");
        r.param("gamma", "1/2");
        let mut rec = InstanceRecord::new("n=2/code=1");
        rec.metric("bias", 1u64);
        rec.check(CheckedInequality::ge("one >= zero", 1, 0));
        r.push(rec);
        r.summary.instances = 1;
        r.finalize();
        r
    }

    #[test]
    fn json_round_trips_and_is_deterministic() {
        let a = sample_report().to_json();
        let b = sample_report().to_json();
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["command"], "demo");
        assert_eq!(v["summary"]["failures"], 0);
    }

    #[test]
    fn empty_report_is_valid() {
        let mut r = Report::new("empty", "nothing");
        r.finalize();
        assert!(r.all_pass());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["summary"]["instances"], 0);
        assert!(r.to_csv().unwrap().starts_with("key,pass"));
    }

    #[test]
    fn csv_rows_sorted_by_key() {
        let mut r = Report::new("demo", "x");
        for key in ["b", "a", "c"] {
            let mut rec = InstanceRecord::new(key);
            rec.metric("m", 1u64);
            r.push(rec);
        }
        let csv = r.to_csv().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[1].split(',').next().unwrap(), "a");
        assert_eq!(lines[3].split(',').next().unwrap(), "c");
    }

    #[test]
    fn failing_check_marks_report() {
        let mut r = Report::new("demo", "x");
        let mut rec = InstanceRecord::new("bad");
        rec.check(CheckedInequality::ge("zero >= one", 0, 1));
        r.push(rec);
        assert!(!r.all_pass());
        assert!(r.to_text().contains("VIOLATED"));
    }
}
