//! Structured run reports shared by `verify` and `hamilton`.

use crate::Format;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::time::Duration;

#[derive(Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

#[derive(Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// One command invocation: parameters, per-check outcomes, the overall
/// result (fail beats skip beats pass), and wall time. `elapsed_ms` is the
/// only nondeterministic field; comparisons must drop it.
#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<CheckEntry>,
    pub result: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            checks: Vec::new(),
            result: Status::Pass,
            certificate: None,
            elapsed_ms: 0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl fmt::Display) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    pub fn check(&mut self, name: &str, status: Status, detail: impl Into<String>) {
        let detail = detail.into();
        debug_assert!(!detail.contains(','), "details must stay comma-free for CSV");
        self.checks.push(CheckEntry {
            name: name.to_string(),
            status,
            detail,
        });
    }

    /// Recompute the overall result and record the elapsed time.
    pub fn finish(&mut self, elapsed: Duration) {
        self.result = if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Skip) {
            Status::Skip
        } else {
            Status::Pass
        };
        self.elapsed_ms = elapsed.as_millis();
    }

    pub fn render(&self, format: Format, quiet: bool) -> String {
        match format {
            Format::Table => self.render_text(quiet),
            Format::Csv => self.render_csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }

    fn render_text(&self, quiet: bool) -> String {
        let mut s = String::new();
        write!(s, "{}", self.command).unwrap();
        for (key, value) in &self.parameters {
            write!(s, " {key}={value}").unwrap();
        }
        s.push('\n');
        for c in &self.checks {
            writeln!(s, "{}: {} ({})", c.name, c.status, c.detail).unwrap();
        }
        if let Some(vertices) = self
            .certificate
            .as_ref()
            .and_then(|c| c.get("vertices"))
            .and_then(|v| v.as_array())
        {
            let joined: Vec<String> = vertices.iter().map(|x| x.to_string()).collect();
            writeln!(s, "cycle: {}", joined.join(" ")).unwrap();
        }
        writeln!(s, "result: {}", self.result).unwrap();
        if !quiet {
            writeln!(s, "elapsed_ms: {}", self.elapsed_ms).unwrap();
        }
        s
    }

    fn render_csv(&self) -> String {
        let mut s = String::from("check,status,detail\n");
        for c in &self.checks {
            writeln!(s, "{},{},{}", c.name, c.status, c.detail).unwrap();
        }
        writeln!(s, "result,{},", self.result).unwrap();
        s
    }
}
