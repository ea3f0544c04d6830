//! Verification reports: named checks with a pass/fail status and a witness.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The mathematical statement the check exercises.
    pub paper_ref: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: &str, statement: &str, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            paper_ref: statement.into(),
            status: Status::Pass,
            witness: Some(witness.into()),
        }
    }

    pub fn fail(name: &str, statement: &str, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            paper_ref: statement.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn from_bool(name: &str, statement: &str, ok: bool, witness: impl Into<String>) -> Self {
        if ok {
            Self::pass(name, statement, witness)
        } else {
            Self::fail(name, statement, witness)
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            inputs: BTreeMap::new(),
            checks: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn with_input(mut self, key: &str, value: impl Into<String>) -> Self {
        self.inputs.insert(key.into(), value.into());
        self
    }

    pub fn set_input(&mut self, key: &str, value: impl Into<String>) {
        self.inputs.insert(key.into(), value.into());
    }

    pub fn push(&mut self, check: Check) {
        self.summary.total += 1;
        if check.passed() {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
        self.checks.push(check);
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.name = format!("{prefix}/{}", c.name);
            }
            self.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,paper_ref,status,witness\n");
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "fail" };
            let _ = writeln!(
                out,
                "{},{},{},{}",
                csv_field(&c.name),
                csv_field(&c.paper_ref),
                status,
                csv_field(c.witness.as_deref().unwrap_or(""))
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let _ = write!(out, "[{status}] {}", c.name);
            if let Some(w) = &c.witness {
                let _ = write!(out, " ({w})");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{}/{} checks passed",
            self.summary.passed, self.summary.total
        );
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_tracks_pushes() {
        let mut r = Report::new("demo").with_input("group", "c2");
        r.push(Check::pass("a", "stmt", "x"));
        r.push(Check::fail("b", "stmt", "y, z"));
        assert!(!r.passed());
        assert_eq!(
            r.summary,
            Summary {
                total: 2,
                passed: 1,
                failed: 1
            }
        );
        assert!(r.to_csv().contains("\"y, z\""));
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
