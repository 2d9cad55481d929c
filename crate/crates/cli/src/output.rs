use std::fmt::Write;

use ringsteps::ring::{AxiomReport, Coverage};
use ringsteps::scenario::{lookup, CriterionOutcome, ScenarioReport, Verdict};

const WITNESS_WIDTH: usize = 160;

fn mark(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Inapplicable => "N/A ",
        Verdict::Inconclusive => "INC ",
        Verdict::Fail => "FAIL",
    }
}

fn clip(s: &str, width: usize) -> String {
    if s.chars().count() <= width {
        s.to_string()
    } else {
        let mut out: String = s.chars().take(width.saturating_sub(3)).collect();
        out.push_str("...");
        out
    }
}

fn compact(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn report_table(r: &ScenarioReport) -> String {
    let mut s = String::new();
    let location = lookup(&r.claim_id).map(|e| e.location()).unwrap_or("");
    let _ = writeln!(s, "{} {} ({location})  {} ms", mark(r.status), r.claim_id, r.elapsed_ms);
    let _ = writeln!(s, "  {}", r.label);
    if !r.params.is_empty() {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={}", compact(v))).collect();
        let _ = writeln!(s, "  params: {}", clip(&params.join(" "), WITNESS_WIDTH));
    }
    let width = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &r.checks {
        let _ = writeln!(s, "  {} {:<width$}  {}", mark(c.verdict), c.name, c.detail);
    }
    for w in &r.witnesses {
        let _ = writeln!(s, "  witness {}: {}", w.name, clip(&compact(&w.value), WITNESS_WIDTH));
    }
    s
}

pub fn suite_table(outcomes: &[CriterionOutcome]) -> String {
    let mut s = String::new();
    let _ =
        writeln!(s, "{:>3}  {:<6} {:<14} {:<20} {:>10}  {}", "#", "status", "location", "claim", "time", "criterion");
    for o in outcomes {
        let _ = writeln!(
            s,
            "{:>3}  {:<6} {:<14} {:<20} {:>8.1} s  {} (budget {} s)",
            o.number,
            mark(o.status),
            o.location,
            o.claim_id,
            o.elapsed_ms as f64 / 1000.0,
            o.title,
            o.budget_ms / 1000
        );
        for p in &o.problems {
            let _ = writeln!(s, "       {p}");
        }
        for r in &o.reports {
            for c in r.checks.iter().filter(|c| c.verdict != Verdict::Pass) {
                let _ = writeln!(s, "       {} {}: {}", mark(c.verdict), c.name, c.detail);
            }
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    let _ = writeln!(s, "{passed}/{} criteria passed", outcomes.len());
    s
}

fn coverage(c: &Coverage) -> String {
    match c {
        Coverage::Exhaustive => "exhaustive".into(),
        Coverage::Sampled { samples, seed } => format!("{samples} sampled (seed {seed})"),
    }
}

pub fn axiom_line(r: &AxiomReport) -> String {
    let flags = [
        (r.commutative, "commutative"),
        (r.unital(), "unital"),
        (r.left_s_unital, "left-s-unital"),
        (r.right_s_unital, "right-s-unital"),
    ];
    let flags: Vec<&str> = flags.iter().filter(|(on, _)| *on).map(|(_, n)| *n).collect();
    let mut s = format!(
        "{} {:<24} size {:>5}  char {:>4}  {}  triples {}",
        if r.is_ring() { "PASS" } else { "FAIL" },
        r.label,
        r.size,
        r.characteristic,
        if flags.is_empty() { "-".to_string() } else { flags.join(",") },
        coverage(&r.triple_coverage)
    );
    for f in &r.failures {
        let _ = write!(s, "\n  {}", serde_json::to_string(f).expect("failures serialize"));
    }
    s
}
