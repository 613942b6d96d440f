//! Structured pass/fail records shared by every checker.

use std::fmt;

use serde::Serialize;

use crate::scalar::Scalar;

/// Evidence for a failed identity: the basis tuple it failed on and the two
/// sides, as coefficient vectors written with `Display`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

impl Witness {
    pub fn new(indices: &[usize], lhs: &[Scalar], rhs: &[Scalar]) -> Witness {
        Witness {
            indices: indices.to_vec(),
            lhs: lhs.iter().map(ToString::to_string).collect(),
            rhs: rhs.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn note(indices: &[usize], message: &str) -> Witness {
        Witness {
            indices: indices.to_vec(),
            lhs: vec![message.to_string()],
            rhs: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new() -> CheckReport {
        CheckReport::default()
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: true,
            witness: None,
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: Witness) {
        self.checks.push(Check {
            name: name.into(),
            passed: false,
            witness: Some(witness),
        });
    }

    /// Records `name` as passing unless `first_failure` produced a witness.
    pub fn record(&mut self, name: impl Into<String>, first_failure: Option<Witness>) {
        match first_failure {
            None => self.pass(name),
            Some(w) => self.fail(name, w),
        }
    }

    /// Appends another report's checks, prefixing their names.
    pub fn merge(&mut self, prefix: &str, other: CheckReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn is_pass(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            write!(f, "{mark:>4}  {}", c.name)?;
            if let Some(w) = &c.witness {
                write!(
                    f,
                    "  at {:?}: lhs [{}] rhs [{}]",
                    w.indices,
                    w.lhs.join(", "),
                    w.rhs.join(", ")
                )?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
