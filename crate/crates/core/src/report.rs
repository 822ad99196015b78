//! Check outcomes shared by every validation procedure.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// Evidence attached to a failed (or otherwise notable) check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A basis element of the named space on which an identity fails.
    Basis { space: String, index: usize },
    /// Several basis elements on which an identity fails.
    BasisSet { space: String, indices: Vec<usize> },
    /// A triple of basis indices, e.g. for associativity.
    Triple(usize, usize, usize),
    /// Rank of a map that should have been an isomorphism.
    Rank {
        rank: usize,
        source_dim: usize,
        target_dim: usize,
    },
    /// A named test object together with a rank certificate.
    Module {
        name: String,
        rank: usize,
        source_dim: usize,
        target_dim: usize,
    },
    Note(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Basis { space, index } => write!(f, "basis element {index} of {space}"),
            Witness::BasisSet { space, indices } => write!(f, "basis elements {indices:?} of {space}"),
            Witness::Triple(a, b, c) => write!(f, "basis triple ({a}, {b}, {c})"),
            Witness::Rank {
                rank,
                source_dim,
                target_dim,
            } => write!(f, "rank {rank} for a map {source_dim} -> {target_dim}"),
            Witness::Module {
                name,
                rank,
                source_dim,
                target_dim,
            } => write!(f, "{name}: rank {rank} for a map {source_dim} -> {target_dim}"),
            Witness::Note(s) => f.write_str(s),
        }
    }
}

impl Witness {
    pub fn rank(rank: usize, source_dim: usize, target_dim: usize) -> Self {
        Witness::Rank {
            rank,
            source_dim,
            target_dim,
        }
    }

    pub fn basis(space: impl Into<String>, index: usize) -> Self {
        Witness::Basis {
            space: space.into(),
            index,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub witness: Option<Witness>,
}

/// Ordered list of named checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    checks: Vec<CheckOutcome>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn checks(&self) -> &[CheckOutcome] {
        &self.checks
    }

    pub fn push(&mut self, outcome: CheckOutcome) {
        self.checks.push(outcome);
    }

    pub fn pass(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(CheckOutcome {
            name: name.into(),
            status: Status::Pass,
            detail: detail.into(),
            witness: None,
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>, witness: Option<Witness>) {
        self.push(CheckOutcome {
            name: name.into(),
            status: Status::Fail,
            detail: detail.into(),
            witness,
        });
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.push(CheckOutcome {
            name: name.into(),
            status: Status::Skipped,
            detail: reason.into(),
            witness: None,
        });
    }

    /// Records `Pass` when `witness` is `None`, `Fail` otherwise.
    pub fn expect_none(&mut self, name: impl Into<String>, detail: impl Into<String>, witness: Option<Witness>) {
        match witness {
            None => self.pass(name, detail),
            Some(w) => self.fail(name, detail, Some(w)),
        }
    }

    pub fn record(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        if ok {
            self.pass(name, detail);
        } else {
            self.fail(name, detail, None);
        }
    }

    /// Appends another report, prefixing its check names.
    pub fn merge(&mut self, prefix: &str, other: ValidationReport) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.name = format!("{prefix}.{}", c.name);
            }
            self.checks.push(c);
        }
    }

    /// No check failed. Skipped checks do not count as failures.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn status_of(&self, name: &str) -> Option<Status> {
        self.get(name).map(|c| c.status)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "[{}] {}", c.status, c.name)?;
            if !c.detail.is_empty() {
                write!(f, ": {}", c.detail)?;
            }
            if let Some(w) = &c.witness {
                write!(f, " ({w})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
