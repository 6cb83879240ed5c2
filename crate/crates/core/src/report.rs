//! Verification reports shared by the checking modules and the CLI.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl Serialize, computed: impl Serialize, pass: bool) -> Self {
        Self {
            name: name.into(),
            expected: serde_json::to_value(expected).unwrap_or(Value::Null),
            computed: serde_json::to_value(computed).unwrap_or(Value::Null),
            pass,
        }
    }

    /// Passes iff `expected == computed`.
    pub fn equal<T: Serialize + PartialEq>(name: impl Into<String>, expected: T, computed: T) -> Self {
        let pass = expected == computed;
        Self::new(name, expected, computed, pass)
    }

    /// A boolean property.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self::new(name, true, ok, ok)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: Value,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub runtime_ms: u128,
}

impl Report {
    pub fn new(suite: impl Into<String>, params: Value, seed: u64) -> Self {
        Self {
            suite: suite.into(),
            params,
            checks: Vec::new(),
            seed,
            runtime_ms: 0,
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).unwrap_or(Value::Null)
    }

    /// One line per check, then a verdict line.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let _ = writeln!(
                s,
                "{} {:width$}  expected {}  computed {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.expected,
                c.computed,
            );
        }
        let bad = self.failures().len();
        let _ = writeln!(
            s,
            "{}: {} checks, {} failed, {} ms",
            self.suite,
            self.checks.len(),
            bad,
            self.runtime_ms
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        let mut r = Report::new("demo", serde_json::json!({}), 0);
        r.push(Check::equal("same", 3, 3));
        assert!(r.pass());
        r.push(Check::equal("diff", 3, 4));
        assert!(!r.pass());
        assert_eq!(r.failures().len(), 1);
        assert!(r.summary().contains("FAIL diff"));
        assert_eq!(r.to_json()["checks"][1]["computed"], 4);
    }
}
