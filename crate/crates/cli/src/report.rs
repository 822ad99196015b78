//! Suite reports and their text and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Duration;

use galcom_core::{Status, ValidationReport, Witness};
use serde::Serialize;
use serde_json::{json, Value};

use crate::format::FORMAT_VERSION;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub suite: String,
    pub name: String,
    pub status: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub module: String,
    pub rank: usize,
    pub source_dim: usize,
    pub target_dim: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub is_galois: Option<bool>,
    pub comonadic: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub seed: u64,
    pub family_size: Option<usize>,
    /// Names of the right `A`-modules used as the test family.
    pub family: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// Outcome of one or more suites on one instance. Timing is kept out of the JSON form so that
/// reports are byte-identical across runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub format_version: u32,
    pub instance: String,
    pub field: String,
    pub suite: String,
    pub config: ConfigEcho,
    pub verdicts: Verdicts,
    /// Per-suite verdict: `pass`, `fail` or `skipped`.
    pub suites: BTreeMap<String, String>,
    pub summary: Summary,
    pub checks: Vec<Entry>,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

pub fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Basis { space, index } => json!({"kind": "basis", "space": space, "index": index}),
        Witness::BasisSet { space, indices } => json!({"kind": "basis_set", "space": space, "indices": indices}),
        Witness::Triple(a, b, c) => json!({"kind": "triple", "indices": [a, b, c]}),
        Witness::Rank {
            rank,
            source_dim,
            target_dim,
        } => json!({"kind": "rank", "rank": rank, "source_dim": source_dim, "target_dim": target_dim}),
        Witness::Module {
            name,
            rank,
            source_dim,
            target_dim,
        } => json!({"kind": "module", "module": name, "rank": rank, "source_dim": source_dim, "target_dim": target_dim}),
        Witness::Note(s) => json!({"kind": "note", "text": s}),
    }
}

impl Report {
    pub fn new(instance: &str, field: String, suite: &str, config: ConfigEcho) -> Self {
        Report {
            format_version: FORMAT_VERSION,
            instance: instance.to_string(),
            field,
            suite: suite.to_string(),
            config,
            verdicts: Verdicts::default(),
            suites: BTreeMap::new(),
            summary: Summary::default(),
            checks: Vec::new(),
            elapsed: None,
        }
    }

    /// Appends the checks of one suite and records its verdict.
    pub fn add_suite(&mut self, suite: &str, rep: &ValidationReport) {
        let mut verdict = "skipped";
        for c in rep.checks() {
            match c.status {
                Status::Pass => {
                    self.summary.passed += 1;
                    if verdict == "skipped" {
                        verdict = "pass";
                    }
                }
                Status::Fail => {
                    self.summary.failed += 1;
                    verdict = "fail";
                }
                Status::Skipped => self.summary.skipped += 1,
            }
            self.checks.push(Entry {
                suite: suite.to_string(),
                name: c.name.clone(),
                status: c.status.to_string(),
                detail: c.detail.clone(),
                witness: c.witness.as_ref().map(witness_json),
            });
        }
        self.suites.insert(suite.to_string(), verdict.to_string());
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn suite_verdict(&self, suite: &str) -> Option<&str> {
        self.suites.get(suite).map(String::as_str)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.checks.iter().filter(|e| e.status == "fail")
    }

    pub fn to_json(&self) -> String {
        crate::format::to_json(self)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "instance: {} over {}", self.instance, self.field);
        let _ = writeln!(s, "suite: {}  seed: {}", self.suite, self.config.seed);
        let _ = writeln!(s, "family: {}", self.config.family.join(", "));
        for e in &self.checks {
            let _ = write!(s, "[{}] {}: {}", e.status, e.suite, e.name);
            if !e.detail.is_empty() {
                let _ = write!(s, ": {}", e.detail);
            }
            if let Some(w) = &e.witness {
                let _ = write!(s, " {w}");
            }
            s.push('\n');
        }
        let opt = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
        let _ = writeln!(s, "is_galois: {}  comonadic: {}", opt(self.verdicts.is_galois), opt(self.verdicts.comonadic));
        if let Some(c) = &self.verdicts.counterexample {
            let _ = writeln!(s, "counterexample: {} (rank {} for a map {} -> {})", c.module, c.rank, c.source_dim, c.target_dim);
        }
        for (suite, v) in &self.suites {
            let _ = writeln!(s, "suite {suite}: {v}");
        }
        let _ = writeln!(
            s,
            "summary: {} passed, {} failed, {} skipped",
            self.summary.passed, self.summary.failed, self.summary.skipped
        );
        if let Some(t) = self.elapsed {
            let _ = writeln!(s, "elapsed: {:.3}s", t.as_secs_f64());
        }
        s
    }
}
