use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::Serialize;

/// What a command did and what it found. Every number is an exact string.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub answers: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub queries: Option<u64>,
    pub wall_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transcript: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip)]
    started: Option<Instant>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Agree,
    Disagree,
    /// No independent answer was available (e.g. the brute force is over budget).
    Unchecked,
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Agree => "AGREE",
            Verdict::Disagree => "DISAGREE",
            Verdict::Unchecked => "UNCHECKED",
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

impl RunReport {
    pub fn start(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            parameters: BTreeMap::new(),
            answers: BTreeMap::new(),
            queries: None,
            wall_ms: 0,
            transcript: None,
            verdict: None,
            notes: Vec::new(),
            started: Some(Instant::now()),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn answer(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.answers.insert(key.to_string(), value.to_string());
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn finish(&mut self) {
        if let Some(t) = self.started.take() {
            self.wall_ms = t.elapsed().as_millis() as u64;
        }
    }

    pub fn failed(&self) -> bool {
        matches!(self.verdict, Some(Verdict::Disagree | Verdict::Fail))
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return serde_json::to_string_pretty(self).expect("report serializes");
        }
        let mut out = format!("command: {}\n", self.command);
        for (k, v) in &self.parameters {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        for (k, v) in &self.answers {
            out.push_str(&format!("{k}: {v}\n"));
        }
        if let Some(q) = self.queries {
            out.push_str(&format!("queries: {q}\n"));
        }
        if let Some(t) = &self.transcript {
            out.push_str(&format!("transcript: {t}\n"));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        if let Some(v) = self.verdict {
            out.push_str(&format!("verdict: {v}\n"));
        }
        out.push_str(&format!("wall time: {} ms\n", self.wall_ms));
        out
    }
}
