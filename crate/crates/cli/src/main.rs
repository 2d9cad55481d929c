mod args;
mod output;
mod pool;

use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde::{Deserialize, Serialize};
use serde_json::json;

use ringsteps::ring::{check_ring_axioms, RingDescriptor};
use ringsteps::scenario::{
    corpus_rings, criteria, lookup, matches_filter, run_corpus, run_criterion, Caps, Context, CriterionOutcome, Params,
    ScenarioReport, Verdict,
};
use ringsteps::Error;

use args::{Cli, Command, Format, GlobalOpts};

/// Process exit statuses, most severe first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Outcome {
    Pass = 0,
    Inconclusive = 3,
    Fail = 1,
    Invalid = 2,
}

impl Outcome {
    fn from_verdict(v: Verdict) -> Self {
        match v {
            Verdict::Pass => Outcome::Pass,
            Verdict::Inapplicable | Verdict::Inconclusive => Outcome::Inconclusive,
            Verdict::Fail => Outcome::Fail,
        }
    }

    fn from_error(e: &Error) -> Self {
        match e {
            Error::RingTooLarge { .. } => Outcome::Inconclusive,
            _ => Outcome::Invalid,
        }
    }
}

/// A batch of scenarios read from a JSON file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    scenarios: Vec<ScenarioSpec>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    caps: Option<Caps>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioSpec {
    claim_id: String,
    #[serde(default)]
    params: Params,
}

#[derive(Debug)]
struct Invalid(String);

impl<E: std::fmt::Display> From<E> for Invalid {
    fn from(e: E) -> Self {
        Invalid(e.to_string())
    }
}

fn context(opts: &GlobalOpts, seed: Option<u64>, caps: Option<Caps>) -> Context {
    let base = Context::default();
    let mut caps = caps.unwrap_or(base.caps);
    if let Some(v) = opts.max_ring_size {
        caps.max_ring_size = v;
    }
    if let Some(v) = opts.max_steps {
        caps.max_steps = v;
    }
    if let Some(v) = opts.search_caps {
        caps.search_caps = v;
    }
    Context { seed: opts.seed.or(seed).unwrap_or(base.seed), caps }
}

fn read_file(path: &Path) -> Result<ScenarioFile, Invalid> {
    let text = std::fs::read_to_string(path).map_err(|e| Invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Invalid(format!("{}: {e}", path.display())))
}

fn emit_reports(results: &[Result<ScenarioReport, (String, Error)>], format: Format) -> Outcome {
    let mut outcome = Outcome::Pass;
    for r in results {
        match r {
            Ok(report) => {
                match format {
                    Format::Json => println!("{}", serde_json::to_string(report).expect("reports serialize")),
                    Format::Table => print!("{}", output::report_table(report)),
                }
                outcome = outcome.max(Outcome::from_verdict(report.status));
            }
            Err((claim, e)) => {
                eprintln!("error: {claim}: {e}");
                outcome = outcome.max(Outcome::from_error(e));
            }
        }
    }
    outcome
}

fn cmd_run(opts: &GlobalOpts, claim: Option<String>, file: Option<&Path>, rest: &[String]) -> Result<Outcome, Invalid> {
    let (specs, ctx, opts) = match (claim, file) {
        (Some(_), Some(_)) => return Err(Invalid("give a claim id or --file, not both".into())),
        (None, None) => return Err(Invalid("give a claim id or --file".into())),
        (Some(claim_id), None) => {
            let (params, overrides) = args::parse_params(rest)?;
            let opts = opts.merged(&overrides);
            let ctx = context(&opts, None, None);
            (vec![ScenarioSpec { claim_id, params }], ctx, opts)
        }
        (None, Some(path)) => {
            if !rest.is_empty() {
                return Err(Invalid(format!("unexpected arguments with --file: {}", rest.join(" "))));
            }
            let f = read_file(path)?;
            if f.scenarios.is_empty() {
                return Err(Invalid(format!("{}: no scenarios", path.display())));
            }
            let ctx = context(opts, f.seed, f.caps);
            let specs = f
                .scenarios
                .into_iter()
                .filter(|s| {
                    opts.only.as_ref().is_none_or(|o| lookup(&s.claim_id).is_some_and(|e| matches_filter(e, o)))
                })
                .collect();
            (specs, ctx, opts.clone())
        }
    };
    let entries = specs
        .iter()
        .map(|s| lookup(&s.claim_id).ok_or_else(|| Invalid(format!("unknown claim id {:?}", s.claim_id))))
        .collect::<Result<Vec<_>, _>>()?;
    let results = pool::par_map(&specs, opts.jobs(), |i, spec| {
        (entries[i].run)(&spec.params, &ctx).map_err(|e| (spec.claim_id.clone(), e))
    });
    Ok(emit_reports(&results, opts.format))
}

fn cmd_paper_suite(opts: &GlobalOpts) -> Result<Outcome, Invalid> {
    let ctx = context(opts, None, None);
    let selected: Vec<_> =
        criteria().into_iter().filter(|c| opts.only.as_ref().is_none_or(|o| matches_filter(c.entry(), o))).collect();
    if selected.is_empty() {
        return Err(Invalid(format!("no criterion matches {:?}", opts.only.as_deref().unwrap_or(""))));
    }
    let results = pool::par_map(&selected, opts.jobs(), |_, c| run_criterion(c, &ctx));
    let mut outcomes: Vec<CriterionOutcome> = Vec::new();
    let mut outcome = Outcome::Pass;
    for (c, r) in selected.iter().zip(results) {
        match r {
            Ok(o) => {
                outcome = outcome.max(Outcome::from_verdict(o.status));
                outcomes.push(o);
            }
            Err(e) => {
                eprintln!("error: criterion {}: {e}", c.number);
                outcome = outcome.max(Outcome::from_error(&e));
            }
        }
    }
    match opts.format {
        Format::Table => print!("{}", output::suite_table(&outcomes)),
        Format::Json => {
            let summary = json!({
                "version": ringsteps::scenario::REPORT_VERSION,
                "seed": ctx.seed,
                "caps": ctx.caps,
                "status": outcomes.iter().map(|o| o.status).max().unwrap_or(Verdict::Inconclusive),
                "criteria": outcomes,
            });
            println!("{}", serde_json::to_string(&summary).expect("summary serializes"));
        }
    }
    Ok(outcome)
}

fn cmd_axioms(opts: &GlobalOpts, rings: &[String]) -> Result<Outcome, Invalid> {
    let descriptors: Vec<RingDescriptor> = if rings.is_empty() {
        corpus_rings().into_iter().map(|c| c.descriptor).collect()
    } else {
        rings
            .iter()
            .map(|r| serde_json::from_str(r).map_err(|e| Invalid(format!("ring descriptor {r}: {e}"))))
            .collect::<Result<_, _>>()?
    };
    let caps = context(opts, None, None).caps;
    let results = pool::par_map(&descriptors, opts.jobs(), |_, d| {
        let ring = d.build()?;
        if ring.size() > caps.max_ring_size {
            return Err(Error::RingTooLarge { size: ring.size() as u128, limit: caps.max_ring_size });
        }
        Ok(check_ring_axioms(&ring))
    });
    let mut outcome = Outcome::Pass;
    for (d, r) in descriptors.iter().zip(&results) {
        match r {
            Ok(report) => {
                outcome = outcome.max(if report.is_ring() { Outcome::Pass } else { Outcome::Fail });
                match opts.format {
                    Format::Json => println!("{}", json!({"ring": d, "report": report})),
                    Format::Table => println!("{}", output::axiom_line(report)),
                }
            }
            Err(e) => {
                eprintln!("error: {}: {e}", serde_json::to_string(d).expect("descriptors serialize"));
                outcome = outcome.max(Outcome::from_error(e));
            }
        }
    }
    Ok(outcome)
}

fn cmd_corpus(opts: &GlobalOpts, budget: Option<usize>) -> Result<Outcome, Invalid> {
    let ctx = context(opts, None, None);
    let mut params = Params::new();
    if let Some(b) = budget {
        params = params.with("budget", b);
    }
    let result = run_corpus(&params, &ctx).map_err(|e| ("corpus".to_string(), e));
    Ok(emit_reports(&[result], opts.format))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { Outcome::Invalid as u8 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let opts = &cli.opts;
    let result = match cli.command {
        Command::Run { claim, file, params } => cmd_run(opts, claim, file.as_deref(), &params),
        Command::PaperSuite => cmd_paper_suite(opts),
        Command::Axioms { rings } => cmd_axioms(opts, &rings),
        Command::Corpus { budget } => cmd_corpus(opts, budget),
    };
    match result {
        Ok(outcome) => ExitCode::from(outcome as u8),
        Err(Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(Outcome::Invalid as u8)
        }
    }
}
