//! Report bundles and their text, JSON and CSV renderings.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub failing: Vec<String>,
}

/// Everything one subcommand produces.
///
/// `payload` must not depend on anything but the arguments; timing goes in `meta`.
#[derive(Debug, Clone, Serialize)]
pub struct ReportBundle {
    pub command: Vec<String>,
    pub config: Value,
    pub payload: Value,
    pub diff: Value,
    pub checks: Vec<Check>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Value>,
    #[serde(skip)]
    pub text: String,
    #[serde(skip)]
    pub csv: Option<String>,
}

impl ReportBundle {
    pub fn new(command: Vec<String>, config: impl Serialize) -> Self {
        Self {
            command,
            config: to_value(config),
            payload: Value::Null,
            diff: Value::Null,
            checks: Vec::new(),
            summary: Summary {
                passed: 0,
                failed: 0,
                failing: Vec::new(),
            },
            meta: None,
            text: String::new(),
            csv: None,
        }
    }

    pub fn payload(&mut self, v: impl Serialize) {
        self.payload = to_value(v);
    }

    pub fn diff(&mut self, v: impl Serialize) {
        self.diff = to_value(v);
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
        self.summary.passed = self.checks.iter().filter(|c| c.passed).count();
        self.summary.failed = self.checks.len() - self.summary.passed;
        self.summary.failing = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.clone())
            .collect();
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("bundle serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.csv.clone().unwrap_or_else(|| self.checks_csv()),
            Format::Text => self.render_text(),
        }
    }

    fn checks_csv(&self) -> String {
        let mut s = String::from("check,passed,detail\n");
        for c in &self.checks {
            let _ = writeln!(
                s,
                "{},{},\"{}\"",
                c.name,
                c.passed,
                c.detail.replace('"', "\"\"")
            );
        }
        s
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: causet-qft {}", self.command.join(" "));
        if !self.text.is_empty() {
            s.push('\n');
            s.push_str(&self.text);
        }
        if !self.checks.is_empty() {
            s.push_str("\nchecks:\n");
            let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &self.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "  {tag}  {:<width$}  {}", c.name, c.detail);
            }
        }
        let _ = writeln!(
            s,
            "\nsummary: {} passed, {} failed",
            self.summary.passed, self.summary.failed
        );
        if let Some(meta) = &self.meta {
            let _ = writeln!(s, "meta: {meta}");
        }
        s
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

/// `1.5e-12` style, or `0` for exact zeros.
pub fn sci(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.3e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_tracks_failures() {
        let mut b = ReportBundle::new(vec!["x".into()], ());
        b.check("a", true, "");
        b.check("b", false, "bad");
        assert!(!b.all_passed());
        assert_eq!(b.summary.failing, vec!["b".to_string()]);
        let text = b.render(Format::Text);
        assert!(text.contains("FAIL  b"));
        assert!(b.render(Format::Csv).ends_with("b,false,\"bad\"\n"));
    }

    #[test]
    fn json_round_trips() {
        let mut b = ReportBundle::new(vec!["speeds".into()], serde_json::json!({"t": 2}));
        b.payload(vec![1, 2]);
        let v: Value = serde_json::from_str(&b.render(Format::Json)).unwrap();
        assert_eq!(v["payload"], serde_json::json!([1, 2]));
        assert!(v.get("meta").is_none());
    }

    #[test]
    fn sci_format() {
        assert_eq!(sci(0.0), "0");
        assert_eq!(sci(1.5e-12), "1.500e-12");
    }
}
