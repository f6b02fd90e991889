use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use vspaces::{LawReport, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessEntry {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictEntry {
    pub law: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<WitnessEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub verdicts: Vec<VerdictEntry>,
    pub counts: BTreeMap<String, u64>,
    pub notes: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            command,
            status: Status::Pass,
            error: None,
            verdicts: Vec::new(),
            counts: BTreeMap::new(),
            notes: BTreeMap::new(),
            output: None,
            result: None,
            timing_ms: None,
        }
    }

    pub fn error(command: Vec<String>, message: String) -> Self {
        let mut r = Report::new(command);
        r.status = Status::Error;
        r.error = Some(message);
        r
    }

    pub fn verdict(&mut self, law: &str, violation: Option<&Violation>) {
        let witness = violation
            .map(|v| v.witness.iter().map(|(k, v)| WitnessEntry { name: k.clone(), value: v.clone() }).collect())
            .unwrap_or_default();
        self.verdicts.push(VerdictEntry { law: law.to_string(), holds: violation.is_none(), witness });
        if violation.is_some() {
            self.status = Status::Fail;
        }
    }

    pub fn absorb(&mut self, laws: &LawReport) {
        for law in &laws.checked {
            self.verdict(law, laws.first(law));
        }
        for (k, n) in &laws.counts {
            *self.counts.entry(k.clone()).or_default() += n;
        }
        self.notes.extend(laws.notes.clone());
    }

    pub fn note(&mut self, key: &str, value: impl Into<String>) {
        self.notes.insert(key.to_string(), value.into());
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "vspaces {}", self.command.join(" ")).unwrap();
        for v in &self.verdicts {
            let mark = if v.holds { "PASS" } else { "FAIL" };
            write!(s, "{mark} {}", v.law).unwrap();
            if !v.witness.is_empty() {
                let w: Vec<String> = v.witness.iter().map(|e| format!("{}={}", e.name, e.value)).collect();
                write!(s, " at {}", w.join(", ")).unwrap();
            }
            s.push('\n');
        }
        for (k, n) in &self.counts {
            writeln!(s, "count {k}: {n}").unwrap();
        }
        for (k, v) in &self.notes {
            writeln!(s, "note {k}: {v}").unwrap();
        }
        if let Some(e) = &self.error {
            writeln!(s, "error: {e}").unwrap();
        }
        if let Some(o) = &self.output {
            writeln!(s, "wrote {o}").unwrap();
        }
        if let Some(t) = self.timing_ms {
            writeln!(s, "time: {t} ms").unwrap();
        }
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        };
        writeln!(s, "status: {status}").unwrap();
        if let Some(r) = &self.result {
            s.push_str(&serde_json::to_string_pretty(r).unwrap());
            s.push('\n');
        }
        s
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).unwrap();
        s.push('\n');
        s
    }
}
