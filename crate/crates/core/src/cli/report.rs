//! Deterministic line-oriented reports.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    /// Failing input on FAIL, diagnostic on ERROR.
    pub witness: Option<String>,
    pub values: Vec<(String, String)>,
}

impl CheckRecord {
    pub fn new(name: &str) -> Self {
        CheckRecord { name: name.to_string(), status: Status::Pass, witness: None, values: Vec::new() }
    }

    pub fn value(&mut self, key: &str, v: impl ToString) {
        self.values.push((key.to_string(), v.to_string()));
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        if self.status == Status::Pass {
            self.status = Status::Fail;
            self.witness = Some(witness.into());
        }
    }

    pub fn error(name: &str, diagnostic: impl Into<String>) -> Self {
        CheckRecord { name: name.to_string(), status: Status::Error, witness: Some(diagnostic.into()), values: Vec::new() }
    }
}

/// Check records in manifest order plus the environment they ran in.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub env: Vec<(String, String)>,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.passed() == self.checks.len()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.env {
            let _ = writeln!(out, "env {k} = {v}");
        }
        for c in &self.checks {
            let _ = writeln!(out, "check {} = {}", c.name, c.status.label());
            if let Some(w) = &c.witness {
                let key = if c.status == Status::Error { "error" } else { "witness" };
                let _ = writeln!(out, "  {key} = {}", w.replace('\n', " "));
            }
            for (k, v) in &c.values {
                let _ = writeln!(out, "  value {k} = {v}");
            }
        }
        let _ = writeln!(out, "summary = {}/{}", self.passed(), self.checks.len());
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}
