use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::Caps;

pub const REPORT_VERSION: u32 = 1;

/// Outcome of one check, ordered from best to worst.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Inapplicable,
    Inconclusive,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Inapplicable => "inapplicable",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Fail => "fail",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub version: u32,
    pub claim_id: String,
    /// Human label, always of the form "finite truncation of ...".
    pub label: String,
    pub params: BTreeMap<String, Value>,
    pub caps: Caps,
    pub status: Verdict,
    pub checks: Vec<Check>,
    pub witnesses: Vec<Witness>,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub timings_ms: BTreeMap<String, u64>,
}

impl ScenarioReport {
    /// Worst verdict among the checks; a report without checks is inconclusive.
    pub fn aggregate(checks: &[Check]) -> Verdict {
        checks.iter().map(|c| c.verdict).max().unwrap_or(Verdict::Inconclusive)
    }

    /// The report with wall-clock fields cleared, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        ScenarioReport { elapsed_ms: 0, timings_ms: BTreeMap::new(), ..self.clone() }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn witness(&self, name: &str) -> Option<&Value> {
        self.witnesses.iter().find(|w| w.name == name).map(|w| &w.value)
    }
}

/// Accumulates checks and witnesses while a scenario runs.
#[derive(Debug)]
pub struct ReportBuilder {
    claim_id: String,
    label: String,
    params: BTreeMap<String, Value>,
    caps: Caps,
    checks: Vec<Check>,
    witnesses: Vec<Witness>,
    timings: BTreeMap<String, u64>,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(claim_id: &str, claim: &str, caps: Caps) -> Self {
        ReportBuilder {
            claim_id: claim_id.to_string(),
            label: format!("finite truncation of {claim}"),
            params: BTreeMap::new(),
            caps,
            checks: Vec::new(),
            witnesses: Vec::new(),
            timings: BTreeMap::new(),
            started: Instant::now(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.params.insert(key.to_string(), to_value(value));
        self
    }

    pub fn check(&mut self, name: &str, verdict: Verdict, detail: impl Into<String>) -> &mut Self {
        self.checks.push(Check { name: name.to_string(), verdict, detail: detail.into() });
        self
    }

    pub fn check_bool(&mut self, name: &str, ok: bool, detail: impl Into<String>) -> bool {
        self.check(name, Verdict::from_bool(ok), detail);
        ok
    }

    pub fn witness(&mut self, name: &str, value: impl Serialize) -> &mut Self {
        self.witnesses.push(Witness { name: name.to_string(), value: to_value(value) });
        self
    }

    /// Runs `f`, recording its wall-clock time under `name`.
    pub fn timed<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.insert(name.to_string(), start.elapsed().as_millis() as u64);
        out
    }

    pub fn has_failure(&self) -> bool {
        self.checks.iter().any(|c| c.verdict == Verdict::Fail)
    }

    pub fn finish(self) -> ScenarioReport {
        ScenarioReport {
            version: REPORT_VERSION,
            status: ScenarioReport::aggregate(&self.checks),
            claim_id: self.claim_id,
            label: self.label,
            params: self.params,
            caps: self.caps,
            checks: self.checks,
            witnesses: self.witnesses,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
            timings_ms: self.timings,
        }
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_is_worst_verdict() {
        let mut b = ReportBuilder::new("x", "something", Caps::default());
        b.check("a", Verdict::Pass, "");
        b.check("b", Verdict::Inapplicable, "");
        assert!(!b.has_failure());
        b.check("c", Verdict::Inconclusive, "");
        let r = b.finish();
        assert_eq!(r.status, Verdict::Inconclusive);
        assert_eq!(r.label, "finite truncation of something");
        assert_eq!(ScenarioReport::aggregate(&[]), Verdict::Inconclusive);
    }

    #[test]
    fn json_round_trip() {
        let mut b = ReportBuilder::new("x", "y", Caps::default());
        b.param("n", 3).check("ok", Verdict::Pass, "fine").witness("set", vec![1, 2, 3]);
        let r = b.finish();
        let text = serde_json::to_string(&r).unwrap();
        let back: ScenarioReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.status, Verdict::Pass);
        assert!(text.contains("\"version\":1"));
    }
}
