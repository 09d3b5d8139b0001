//! Suite reports and their serializations.
//!
//! Reports are deterministic for a given config and seed: the JSON form is
//! emitted with fixed field order and contains no timing; wall time lives
//! in the struct for display on stderr only.

use altspec_core::bimod::SectorElement;
use altspec_core::compalg::StructureTable;
use serde::Serialize;

/// Outcome of one named check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Largest absolute residual as a `"p/q"` string, when meaningful.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    /// Violating basis pairs, lexicographic.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<(usize, usize)>,
    /// Free-form diagnostics (gauge verdicts, dimensions, sign triples).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
}

impl CheckResult {
    pub fn pass(name: &str) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: true,
            residual: None,
            witnesses: Vec::new(),
            detail: None,
        }
    }

    pub fn fail(name: &str) -> Self {
        CheckResult {
            passed: false,
            ..Self::pass(name)
        }
    }

    pub fn with_residual(mut self, r: &altspec_core::ExactScalar) -> Self {
        self.residual = Some(r.to_string());
        self
    }

    pub fn with_witnesses(mut self, w: Vec<(usize, usize)>) -> Self {
        self.witnesses = w;
        self
    }

    pub fn with_detail(mut self, d: serde_json::Value) -> Self {
        self.detail = Some(d);
        self
    }
}

/// Full report of one suite run.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    /// Wall-clock milliseconds; never part of the serialized report.
    #[serde(skip)]
    pub wall_ms: u128,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        SuiteReport {
            suite: suite.to_string(),
            seed,
            passed,
            checks,
            wall_ms: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Render a report; stable bytes for fixed suite content.
pub fn emit(report: &SuiteReport, format: Format) -> String {
    if report.checks.is_empty() {
        return match format {
            Format::Json => "{}\n".to_string(),
            Format::Text => "no checks run\n".to_string(),
        };
    }
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "suite {} (seed {})\n",
                report.suite, report.seed
            ));
            for c in &report.checks {
                let verdict = if c.passed { "PASS" } else { "FAIL" };
                out.push_str(&format!("{verdict} {}", c.name));
                if let Some(r) = &c.residual {
                    out.push_str(&format!(" residual={r}"));
                }
                if !c.witnesses.is_empty() {
                    let shown: Vec<String> = c
                        .witnesses
                        .iter()
                        .take(8)
                        .map(|(a, b)| format!("({a},{b})"))
                        .collect();
                    out.push_str(&format!(" witnesses={}", shown.join(",")));
                    if c.witnesses.len() > 8 {
                        out.push_str(&format!(" (+{} more)", c.witnesses.len() - 8));
                    }
                }
                if let Some(d) = &c.detail {
                    out.push_str(&format!(" {d}"));
                }
                out.push('\n');
            }
            let npass = report.checks.iter().filter(|c| c.passed).count();
            out.push_str(&format!(
                "{}: {npass}/{} checks passed\n",
                if report.passed { "ok" } else { "FAILED" },
                report.checks.len()
            ));
            out
        }
    }
}

/// Structure table as a JSON array of signed triples `(I, J, K, sign)`.
pub fn table_json(table: &StructureTable) -> serde_json::Value {
    serde_json::Value::Array(
        table
            .signed_triples()
            .into_iter()
            .map(|(i, j, k, s)| serde_json::json!([i, j, k, s]))
            .collect(),
    )
}

/// Sector element as `{sector: [i, j], coeffs: 8x8 "p/q" strings}` blocks.
pub fn sector_element_json(e: &SectorElement) -> serde_json::Value {
    let blocks: Vec<serde_json::Value> = e
        .sectors()
        .map(|sec| {
            let coeffs: Vec<Vec<String>> = (0..8)
                .map(|s| (0..8).map(|t| e.coeff(sec, s, t).to_string()).collect())
                .collect();
            serde_json::json!({ "sector": [sec.0, sec.1], "coeffs": coeffs })
        })
        .collect();
    serde_json::Value::Array(blocks)
}
