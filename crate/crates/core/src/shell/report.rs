//! Check results and their text and JSON renderings.

use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};

pub const REPORT_SCHEMA: &str = "heun-atlas/run-report/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CheckStatus {
    Pass,
    Warn,
    Fail,
}

impl CheckStatus {
    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Warn => "WARN",
            CheckStatus::Fail => "FAIL",
        }
    }

    pub fn from_ok(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
    /// Machine-readable payload; `Null` when there is nothing to add.
    pub data: Value,
    pub elapsed: Duration,
}

impl Check {
    pub fn new(name: impl Into<String>, status: CheckStatus, detail: impl Into<String>) -> Self {
        Check { name: name.into(), status, detail: detail.into(), data: Value::Null, elapsed: Duration::ZERO }
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = data;
        self
    }

    fn to_json(&self, timings: bool) -> Value {
        let mut v = json!({ "name": self.name, "status": self.status, "detail": self.detail });
        if !self.data.is_null() {
            v["data"] = self.data.clone();
        }
        if timings {
            v["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        }
        v
    }
}

/// Time a block that yields checks and charge the elapsed time to each of them.
pub fn timed(f: impl FnOnce() -> Vec<Check>) -> Vec<Check> {
    let start = Instant::now();
    let mut checks = f();
    let elapsed = start.elapsed();
    for c in &mut checks {
        c.elapsed = elapsed;
    }
    checks
}

#[derive(Clone, Debug, Default)]
pub struct RunReport {
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn new(checks: Vec<Check>) -> Self {
        RunReport { checks }
    }

    pub fn extend(&mut self, other: RunReport) {
        self.checks.extend(other.checks);
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn failed(&self) -> bool {
        self.count(CheckStatus::Fail) > 0
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed())
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self, timings: bool) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let line = format!("{} {:<width$}  {}", c.status.label(), c.name, c.detail);
            out.push_str(line.trim_end());
            if timings {
                out.push_str(&format!("  [{:.2}s]", c.elapsed.as_secs_f64()));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} passed, {} warnings, {} failed\n",
            self.count(CheckStatus::Pass),
            self.count(CheckStatus::Warn),
            self.count(CheckStatus::Fail)
        ));
        out
    }

    pub fn to_json(&self, timings: bool) -> Value {
        json!({
            "schema": REPORT_SCHEMA,
            "version": env!("CARGO_PKG_VERSION"),
            "summary": {
                "pass": self.count(CheckStatus::Pass),
                "warn": self.count(CheckStatus::Warn),
                "fail": self.count(CheckStatus::Fail),
            },
            "checks": self.checks.iter().map(|c| c.to_json(timings)).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_follows_failures() {
        let mut r = RunReport::new(vec![Check::new("a", CheckStatus::Pass, ""), Check::new("b", CheckStatus::Warn, "")]);
        assert_eq!(r.exit_code(), 0);
        r.checks.push(Check::new("c", CheckStatus::Fail, "x"));
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.to_json(false)["summary"]["fail"], 1);
    }

    #[test]
    fn json_omits_timings_unless_asked() {
        let r = RunReport::new(timed(|| vec![Check::new("a", CheckStatus::Pass, "ok")]));
        assert!(r.to_json(false)["checks"][0].get("elapsed_ms").is_none());
        assert!(r.to_json(true)["checks"][0].get("elapsed_ms").is_some());
        assert_eq!(r.to_text(false), "PASS a  ok\n1 passed, 0 warnings, 0 failed\n");
    }
}
