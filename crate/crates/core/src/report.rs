//! Law reports shared by every checker in the crate.
//!
//! A report lists the laws that were examined and, for each law that failed,
//! the first witness found. Witnesses are stored as labelled pairs so that
//! they can be printed or serialized without access to the original carrier.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<(String, String)>,
}

impl Violation {
    pub fn new(law: impl Into<String>) -> Self {
        Self { law: law.into(), witness: Vec::new() }
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.witness.push((key.into(), value.into()));
        self
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.law)?;
        if !self.witness.is_empty() {
            write!(f, " at ")?;
            for (i, (k, v)) in self.witness.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{k}={v}")?;
            }
        }
        Ok(())
    }
}

/// Outcome of a single yes/no check that carries a witness when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Violation),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(v) => Some(v),
        }
    }
}

impl From<Option<Violation>> for Verdict {
    fn from(v: Option<Violation>) -> Self {
        match v {
            None => Verdict::Holds,
            Some(v) => Verdict::Fails(v),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub checked: Vec<String>,
    pub violations: Vec<Violation>,
    /// Instance counts, keyed by what was counted.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub counts: BTreeMap<String, u64>,
    /// Expected witnesses, such as the counterexample a negative check must find.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, String>,
}

impl LawReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records that `law` was examined, and its violation if one was found.
    pub fn record(&mut self, law: &str, violation: Option<Violation>) {
        if !self.checked.iter().any(|c| c == law) {
            self.checked.push(law.to_string());
        }
        if let Some(v) = violation {
            self.violations.push(v);
        }
    }

    pub fn violated(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn first(&self, law: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.law == law)
    }

    pub fn count(&mut self, key: &str, n: u64) {
        *self.counts.entry(key.to_string()).or_default() += n;
    }

    pub fn note(&mut self, key: &str, value: impl Into<String>) {
        self.notes.insert(key.to_string(), value.into());
    }

    pub fn merge(&mut self, other: LawReport) {
        self.checked.extend(other.checked);
        self.violations.extend(other.violations);
        for (k, n) in other.counts {
            self.count(&k, n);
        }
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "ok ({} laws)", self.checked.len())
        } else {
            for (i, v) in self.violations.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "violated {v}")?;
            }
            Ok(())
        }
    }
}
