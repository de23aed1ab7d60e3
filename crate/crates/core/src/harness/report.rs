use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;

/// Header of the per-suite CSV report.
pub const SUITE_CSV_HEADER: [&str; 9] = [
    "suite", "case_id", "p", "n", "lhs", "rhs", "abs_err", "tol", "pass",
];

/// How lhs and rhs are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// |lhs − rhs| ≤ tol
    Eq,
    /// lhs ≤ rhs + tol
    Le,
    /// lhs < rhs
    Lt,
    /// lhs > rhs
    Gt,
    /// observed values only; always passes
    Report,
}

impl Relation {
    pub fn holds(self, lhs: f64, rhs: f64, tol: f64) -> bool {
        match self {
            Relation::Eq => (lhs - rhs).abs() <= tol,
            Relation::Le => lhs <= rhs + tol,
            Relation::Lt => lhs < rhs,
            Relation::Gt => lhs > rhs,
            Relation::Report => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub case_id: String,
    pub p: u32,
    /// Subgroup index, or 0 when the case is not tied to a subgroup.
    pub n: u32,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub tolerance: f64,
    pub relation: Relation,
    pub pass: bool,
    #[serde(default)]
    pub metadata: BTreeMap<String, Value>,
}

impl CaseRecord {
    /// Builds a case whose verdict follows from `relation`.
    pub fn compare(
        case_id: impl Into<String>,
        p: u32,
        n: u32,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        relation: Relation,
    ) -> Self {
        let pass = relation.holds(lhs, rhs, tolerance);
        Self::with_verdict(case_id, p, n, lhs, rhs, tolerance, relation, pass)
    }

    /// Builds a case whose verdict was decided elsewhere (e.g. exact rationals).
    #[allow(clippy::too_many_arguments)]
    pub fn with_verdict(
        case_id: impl Into<String>,
        p: u32,
        n: u32,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        relation: Relation,
        pass: bool,
    ) -> Self {
        Self {
            case_id: case_id.into(),
            p,
            n,
            lhs: finite(lhs),
            rhs: finite(rhs),
            abs_err: finite((lhs - rhs).abs()),
            tolerance,
            relation,
            pass,
            metadata: BTreeMap::new(),
        }
    }

    pub fn meta(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    /// Adds a sub-check to this case; the case passes only if every
    /// sub-check does.
    pub fn require(mut self, key: &str, ok: bool) -> Self {
        self.pass &= ok;
        self.metadata.insert(key.to_string(), Value::Bool(ok));
        self
    }
}

/// JSON cannot carry NaN or ±∞; clamp them to the largest finite values.
fn finite(x: f64) -> f64 {
    if x.is_nan() {
        f64::MAX
    } else {
        x.clamp(f64::MIN, f64::MAX) + 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub p_min: u64,
    pub p_max: u64,
    pub residue_filter: Option<String>,
    pub indices: Vec<u32>,
    pub seed: u64,
    pub samples: usize,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub provenance: Provenance,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: &str, provenance: Provenance, mut cases: Vec<CaseRecord>) -> Self {
        cases.sort_by(|a, b| (a.p, a.n, &a.case_id).cmp(&(b.p, b.n, &b.case_id)));
        let passed = cases.iter().filter(|c| c.pass).count();
        let summary = Summary {
            total: cases.len(),
            passed,
            failed: cases.len() - passed,
        };
        Self {
            suite: suite.to_string(),
            provenance,
            cases,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(SUITE_CSV_HEADER)?;
        for c in &self.cases {
            w.write_record([
                self.suite.clone(),
                c.case_id.clone(),
                c.p.to_string(),
                c.n.to_string(),
                c.lhs.to_string(),
                c.rhs.to_string(),
                c.abs_err.to_string(),
                c.tolerance.to_string(),
                c.pass.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}
