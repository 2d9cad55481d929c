use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};

use super::registry::{lookup, ScenarioEntry};
use super::report::{ScenarioReport, Verdict};
use super::{Context, Params};
use crate::error::{Error, Result};

/// A value a report must carry, addressed by run index and parameter or witness name.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Expectation {
    pub run: usize,
    pub key: &'static str,
    pub value: Value,
}

/// One acceptance criterion: a scenario, the parameter sets it runs with and its runtime budget.
#[derive(Debug, Clone, Serialize)]
pub struct Criterion {
    pub number: u32,
    pub title: &'static str,
    pub claim_id: &'static str,
    pub runs: Vec<Params>,
    pub expectations: Vec<Expectation>,
    /// Rerun every parameter set and require identical reports up to timing.
    pub rerun_identical: bool,
    pub budget: Duration,
    /// The first runs, which must finish together within a tighter budget.
    pub fast_prefix: Option<(usize, Duration)>,
}

impl Criterion {
    pub fn entry(&self) -> &'static ScenarioEntry {
        lookup(self.claim_id).expect("criteria name registered scenarios")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub number: u32,
    pub title: &'static str,
    pub claim_id: &'static str,
    pub location: &'static str,
    pub reports: Vec<ScenarioReport>,
    /// Worst status among the reports, or fail when an expectation or rerun disagrees.
    pub status: Verdict,
    pub problems: Vec<String>,
    pub elapsed_ms: u64,
    pub budget_ms: u64,
}

impl CriterionOutcome {
    pub fn passed(&self) -> bool {
        self.status == Verdict::Pass
    }
}

fn p() -> Params {
    Params::new()
}

fn expect(run: usize, key: &'static str, value: Value) -> Expectation {
    Expectation { run, key, value }
}

/// The acceptance matrix with default parameters.
pub fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    let c = |number, title, claim_id, runs, expectations, budget| Criterion {
        number,
        title,
        claim_id,
        runs,
        expectations,
        rerun_identical: false,
        budget,
        fast_prefix: None,
    };
    vec![
        Criterion {
            fast_prefix: Some((2, secs(5))),
            ..c(
                1,
                "step counts in P({0..2^n-1}) for n = 2, 3, 4",
                "z2-steps",
                vec![p().with("n", 2), p().with("n", 3), p().with("n", 4)],
                vec![
                    expect(0, "witness", json!("{1,2,3}")),
                    expect(0, "min_steps", json!(2)),
                    expect(1, "min_steps", json!(3)),
                ],
                secs(305),
            )
        },
        c(
            2,
            "nested chain for (n, m) = (2, 3), (3, 3)",
            "nested-chain",
            vec![p().with("n", 2).with("m", 3), p().with("n", 3).with("m", 3)],
            vec![],
            secs(30),
        ),
        c(
            3,
            "Z[X] product set without finite-index ideals, m = 2, 3",
            "zx-no-ideal",
            vec![p().with("m", 2), p().with("m", 3)],
            vec![],
            secs(5),
        ),
        c(
            4,
            "XZ[X] variant for m = 2, 3, 5",
            "xz-no-ideal",
            vec![p().with("m", 2), p().with("m", 3), p().with("m", 5)],
            vec![],
            secs(5),
        ),
        c(
            5,
            "exotic ring for (a, b) = (1, 1), (2, 2), (3, 3)",
            "exotic-ring",
            vec![p().with("a", 1).with("b", 1), p().with("a", 2).with("b", 2), p().with("a", 3).with("b", 3)],
            vec![],
            secs(30),
        ),
        c(6, "nilpotent ring with k = 9", "nilpotent-stab", vec![p().with("k", 9)], vec![], secs(5)),
        c(7, "seeded triangularization", "triangularize", vec![p()], vec![], secs(60)),
        c(
            8,
            "index bound for all subgroups of Z_2^4 and Z_3^3",
            "zq-index-bound",
            vec![p().with("q", 2).with("N", 4), p().with("q", 3).with("N", 3)],
            vec![expect(0, "subgroups", json!(67)), expect(1, "subgroups", json!(28))],
            secs(600),
        ),
        c(9, "3n bound for 500 generic sets", "generic-3n-bound", vec![p()], vec![], secs(60)),
        c(10, "factorial inclusion for 100 thick sets", "sunital-factorial", vec![p()], vec![], secs(60)),
        c(
            11,
            "finitely generated ring witnesses",
            "fg-ideal-witness",
            vec![
                p().with("n", 1).with("k", 2).with("pairs", [[1, 3]]),
                p().with("n", 1).with("k", 3).with("pairs", [[0, 2]]),
                p().with("n", 2).with("k", 2).with("pairs", [[1, 2], [1, 2]]),
            ],
            vec![
                expect(0, "quotient_size", json!(8)),
                expect(1, "quotient_size", json!(9)),
                expect(2, "generator_count", json!(3)),
            ],
            secs(5),
        ),
        c(12, "ideals inside H + R·H over the corpus", "ideal-in-half-step", vec![p()], vec![], secs(600)),
        Criterion {
            rerun_identical: true,
            ..c(13, "property corpus with seed 1", "corpus", vec![p().with("budget", 100)], vec![], secs(300))
        },
    ]
}

fn lookup_value<'a>(report: &'a ScenarioReport, key: &str) -> Option<&'a Value> {
    report.params.get(key).or_else(|| report.witness(key))
}

/// Runs every parameter set of `criterion` and evaluates expectations, reruns and the budget.
pub fn run_criterion(criterion: &Criterion, ctx: &Context) -> Result<CriterionOutcome> {
    let entry = criterion.entry();
    let start = Instant::now();
    let mut reports = Vec::new();
    let mut problems = Vec::new();
    for (i, params) in criterion.runs.iter().enumerate() {
        if let Some((k, limit)) = criterion.fast_prefix {
            if i == k && start.elapsed() > limit {
                problems.push(format!(
                    "first {k} runs took {:.1} s, budget {} s",
                    start.elapsed().as_secs_f64(),
                    limit.as_secs()
                ));
            }
        }
        let report = (entry.run)(params, ctx)?;
        if criterion.rerun_identical {
            let again = (entry.run)(params, ctx)?;
            if again.without_timing() != report.without_timing() {
                problems.push("rerun produced a different report".to_string());
            }
        }
        reports.push(report);
    }
    for e in &criterion.expectations {
        let report = reports.get(e.run).ok_or_else(|| Error::InvalidParameter(format!("no run {}", e.run)))?;
        match lookup_value(report, e.key) {
            Some(v) if *v == e.value => {}
            other => problems.push(format!(
                "run {}: expected {} = {}, found {}",
                e.run,
                e.key,
                e.value,
                other.map_or("nothing".into(), |v| v.to_string())
            )),
        }
    }
    let elapsed = start.elapsed();
    if elapsed > criterion.budget {
        problems.push(format!("took {:.1} s, budget {} s", elapsed.as_secs_f64(), criterion.budget.as_secs()));
    }
    let worst = reports.iter().map(|r| r.status).max().unwrap_or(Verdict::Inconclusive);
    let status = if problems.is_empty() { worst } else { Verdict::Fail };
    Ok(CriterionOutcome {
        number: criterion.number,
        title: criterion.title,
        claim_id: entry.id,
        location: entry.location(),
        reports,
        status,
        problems,
        elapsed_ms: elapsed.as_millis() as u64,
        budget_ms: criterion.budget.as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thirteen_criteria_with_registered_ids() {
        let all = criteria();
        assert_eq!(all.len(), 13);
        for (i, c) in all.iter().enumerate() {
            assert_eq!(c.number as usize, i + 1);
            let _ = c.entry();
        }
    }

    #[test]
    fn quick_criterion_runs() {
        let six = criteria().into_iter().find(|c| c.number == 6).unwrap();
        let out = run_criterion(&six, &Context::default()).unwrap();
        assert!(out.passed(), "{:#?}", out.problems);
        assert_eq!(out.location, "example-7.4");
    }
}
