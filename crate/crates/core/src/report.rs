//! Pass/fail reports shared by the checkers.

use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            checked: 0,
            witness: None,
        }
    }

    pub fn tick(&mut self) {
        self.checked += 1;
    }

    /// Record one evaluation; keeps the first witness.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(witness());
        }
    }

    pub fn fail(&mut self, witness: String) {
        if self.passed {
            self.passed = false;
            self.witness = Some(witness);
        }
    }

    pub fn merge(&mut self, other: Check) {
        self.checked += other.checked;
        if !other.passed {
            if let Some(w) = other.witness {
                self.fail(w);
            } else {
                self.passed = false;
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "witness": self.witness,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
    pub notes: Vec<(String, Value)>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn note(&mut self, key: impl Into<String>, v: Value) {
        self.notes.push((key.into(), v));
    }

    pub fn to_json(&self) -> Value {
        let mut notes = serde_json::Map::new();
        for (k, v) in &self.notes {
            notes.insert(k.clone(), v.clone());
        }
        json!({
            "subject": self.subject,
            "passed": self.passed(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "notes": notes,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}: {}\n", self.subject, if self.passed() { "PASS" } else { "FAIL" });
        for c in &self.checks {
            s.push_str(&format!(
                "  {:<28} {} ({} checked)",
                c.name,
                if c.passed { "pass" } else { "FAIL" },
                c.checked
            ));
            if let Some(w) = &c.witness {
                s.push_str(&format!("  witness: {w}"));
            }
            s.push('\n');
        }
        for (k, v) in &self.notes {
            s.push_str(&format!("  {k}: {v}\n"));
        }
        s
    }
}
