//! Structured, deterministic suite reports.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const SCHEMA: &str = "penta-geom/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: String,
    pub suite: String,
    /// The statement the suite checks.
    pub claim: String,
    pub pass: bool,
    /// Number of executed checks.
    pub n: u64,
    pub seed: u64,
    pub counts: BTreeMap<String, u64>,
    pub tolerances: BTreeMap<String, f64>,
    pub worst: BTreeMap<String, f64>,
    /// Free-form lines, e.g. a calibration log.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Kept out of the JSON so reports are byte-identical across runs.
    #[serde(skip)]
    pub wall_clock: Duration,
}

impl SuiteReport {
    pub fn new(suite: &str, claim: &str, seed: u64) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            suite: suite.to_string(),
            claim: claim.to_string(),
            pass: false,
            n: 0,
            seed,
            counts: BTreeMap::new(),
            tolerances: BTreeMap::new(),
            worst: BTreeMap::new(),
            notes: Vec::new(),
            wall_clock: Duration::ZERO,
        }
    }

    pub fn tolerance(&mut self, key: &str, value: f64) -> &mut Self {
        self.tolerances.insert(key.to_string(), value);
        self
    }

    pub fn count(&mut self, key: &str, value: u64) -> &mut Self {
        *self.counts.entry(key.to_string()).or_insert(0) += value;
        self
    }

    pub fn worst(&mut self, key: &str, value: f64) -> &mut Self {
        self.worst.insert(key.to_string(), value);
        self
    }

    pub fn note(&mut self, line: impl Into<String>) -> &mut Self {
        self.notes.push(line.into());
        self
    }

    /// Sets `pass`; a report with no executed checks never passes.
    pub fn finish(&mut self, n: u64, ok: bool) -> &mut Self {
        self.n = n;
        self.pass = ok && n > 0;
        self
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self)
            .map_err(|e| crate::error::GeomError::InvalidParams(format!("report serialization: {e}")))
    }

    /// One-line summary for terminals.
    pub fn summary(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        let worst: Vec<String> = self.worst.iter().map(|(k, v)| format!("{k}={v:.3e}")).collect();
        format!(
            "[{status}] {} n={} seed={} {} ({:.2}s)",
            self.suite,
            self.n,
            self.seed,
            worst.join(" "),
            self.wall_clock.as_secs_f64()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_reports_fail() {
        let mut r = SuiteReport::new("x", "claim", 1);
        r.finish(0, true);
        assert!(!r.pass);
        r.finish(3, true);
        assert!(r.pass);
    }

    #[test]
    fn wall_clock_is_not_serialized() {
        let mut a = SuiteReport::new("x", "claim", 1);
        let mut b = a.clone();
        a.wall_clock = Duration::from_secs(3);
        b.wall_clock = Duration::from_millis(7);
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
        assert!(a.to_json().unwrap().contains("\"schema\": \"penta-geom/1\""));
    }
}
