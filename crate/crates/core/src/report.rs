//! Structured outcome of an identity sweep.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::qfield::RatQ;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Mismatch,
    Error,
}

/// One coefficient where the two sides were compared.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub alpha: Vec<i64>,
    pub lhs: String,
    pub rhs: String,
    /// Evaluation point, for comparisons made at a prime `q = p`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub mismatches: Vec<Comparison>,
    /// Full table of compared values, for exploratory reports.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<Comparison>,
    pub ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VerificationReport {
    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Same report with the timing field zeroed, for byte comparisons.
    pub fn without_timing(&self) -> Self {
        VerificationReport { ms: 0, ..self.clone() }
    }
}

/// Accumulates comparisons and timing for one report.
pub struct ReportBuilder {
    identity: String,
    params: BTreeMap<String, Value>,
    mismatches: Vec<Comparison>,
    table: Vec<Comparison>,
    keep_table: bool,
    started: Instant,
}

fn alpha_vec<T: Copy + Into<i64>>(alpha: &[T]) -> Vec<i64> {
    alpha.iter().map(|&a| a.into()).collect()
}

impl ReportBuilder {
    pub fn new(identity: &str) -> Self {
        ReportBuilder {
            identity: identity.to_string(),
            params: BTreeMap::new(),
            mismatches: Vec::new(),
            table: Vec::new(),
            keep_table: false,
            started: Instant::now(),
        }
    }

    /// Record every comparison, not only the failing ones.
    pub fn keep_table(mut self) -> Self {
        self.keep_table = true;
        self
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn set_param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    /// Compares two exact values at `alpha`; returns whether they agree.
    pub fn compare<T: Copy + Into<i64>>(&mut self, alpha: &[T], lhs: &RatQ, rhs: &RatQ) -> bool {
        self.compare_strings(alpha, lhs == rhs, lhs.to_string(), rhs.to_string())
    }

    pub fn compare_strings<T: Copy + Into<i64>>(&mut self, alpha: &[T], equal: bool, lhs: String, rhs: String) -> bool {
        self.push(Comparison { alpha: alpha_vec(alpha), lhs, rhs, prime: None }, equal)
    }

    /// Compares two exact values obtained at `q = p`.
    pub fn compare_at_prime<T: Copy + Into<i64>>(&mut self, alpha: &[T], p: u64, lhs: &RatQ, rhs: &RatQ) -> bool {
        let c = Comparison { alpha: alpha_vec(alpha), lhs: lhs.to_string(), rhs: rhs.to_string(), prime: Some(p) };
        self.push(c, lhs == rhs)
    }

    fn push(&mut self, c: Comparison, equal: bool) -> bool {
        if self.keep_table {
            self.table.push(c.clone());
        }
        if !equal {
            self.mismatches.push(c);
        }
        equal
    }

    fn elapsed(&self) -> u64 {
        self.started.elapsed().as_millis() as u64
    }

    pub fn finish(self) -> VerificationReport {
        let ms = self.elapsed();
        let status = if self.mismatches.is_empty() { Status::Verified } else { Status::Mismatch };
        VerificationReport {
            identity: self.identity,
            params: self.params,
            status,
            mismatches: self.mismatches,
            table: self.table,
            ms,
            error: None,
        }
    }

    pub fn fail(self, error: impl ToString) -> VerificationReport {
        let ms = self.elapsed();
        VerificationReport {
            identity: self.identity,
            params: self.params,
            status: Status::Error,
            mismatches: self.mismatches,
            table: self.table,
            ms,
            error: Some(error.to_string()),
        }
    }
}
