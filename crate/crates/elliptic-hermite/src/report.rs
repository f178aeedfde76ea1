//! Machine-readable reports: one record per verified identity, wrapped with
//! schema and provenance metadata. The JSON schema is versioned; every
//! report embeds the version so downstream tooling can reject incompatible
//! majors.

use serde::{Deserialize, Serialize};

/// Semantic version of the JSON report schema.
pub const SCHEMA_VERSION: &str = "1.0.0";

/// The schema version embedded in every report.
pub fn report_schema_version() -> &'static str {
    SCHEMA_VERSION
}

/// Which way a check's threshold points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Pass when the measured value is at most the tolerance (identities).
    AtMost,
    /// Pass when the measured value is at least the tolerance (negative
    /// tests and support fractions).
    AtLeast,
}

/// Outcome of one verified identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub max_abs_err: f64,
    pub tol: f64,
    pub kind: CheckKind,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    /// Identity-style check: passes when `err ≤ tol`.
    pub fn at_most(check: impl Into<String>, err: f64, tol: f64) -> Self {
        Self {
            check: check.into(),
            max_abs_err: err,
            tol,
            kind: CheckKind::AtMost,
            pass: err.is_finite() && err <= tol,
            detail: None,
        }
    }

    /// Threshold-exceedance check: passes when `value ≥ tol`.
    pub fn at_least(check: impl Into<String>, value: f64, tol: f64) -> Self {
        Self {
            check: check.into(),
            max_abs_err: value,
            tol,
            kind: CheckKind::AtLeast,
            pass: value.is_finite() && value >= tol,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// A full report artifact.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<String>,
    pub params: serde_json::Value,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl Report {
    pub fn new(
        command: impl Into<String>,
        params: serde_json::Value,
        checks: Vec<CheckResult>,
        with_timestamp: bool,
    ) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.into(),
            timestamp: with_timestamp.then(|| chrono::Utc::now().to_rfc3339()),
            rng: None,
            params,
            checks,
            pass,
        }
    }

    pub fn with_rng(mut self, rng: impl Into<String>) -> Self {
        self.rng = Some(rng.into());
        self
    }

    /// Parse a serialized report, rejecting an incompatible schema major.
    pub fn parse(json: &str) -> std::result::Result<Self, String> {
        let report: Report = serde_json::from_str(json).map_err(|e| e.to_string())?;
        let major = |v: &str| v.split('.').next().map(str::to_string);
        if major(&report.schema_version) != major(SCHEMA_VERSION) {
            return Err(format!(
                "incompatible report schema {} (tooling understands {})",
                report.schema_version, SCHEMA_VERSION
            ));
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_version_is_stable() {
        assert_eq!(report_schema_version(), "1.0.0");
    }

    #[test]
    fn report_embeds_schema_and_pass_flag() {
        let checks = vec![
            CheckResult::at_most("demo.le", 1e-12, 1e-10),
            CheckResult::at_least("demo.ge", 0.5, 0.1),
        ];
        let report = Report::new("verify", serde_json::json!({"tau": 0.5}), checks, false);
        assert!(report.pass);
        let json = serde_json::to_string(&report).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["schema_version"], "1.0.0");
        assert!(value.get("timestamp").is_none());
        let parsed = Report::parse(&json).unwrap();
        assert_eq!(parsed.checks.len(), 2);
    }

    #[test]
    fn incompatible_major_is_rejected() {
        let mut report = Report::new("verify", serde_json::json!({}), vec![], false);
        report.schema_version = "2.0.0".into();
        let json = serde_json::to_string(&report).unwrap();
        let err = Report::parse(&json).unwrap_err();
        assert!(err.contains("incompatible"));
    }

    #[test]
    fn failing_check_fails_report() {
        let checks = vec![CheckResult::at_most("demo", 1.0, 1e-10)];
        let report = Report::new("verify", serde_json::json!({}), checks, true);
        assert!(!report.pass);
        assert!(report.timestamp.is_some());
    }
}
