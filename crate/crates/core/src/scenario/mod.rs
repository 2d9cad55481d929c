//! Self-verifying scenarios, one per claim, each producing a [`ScenarioReport`].

mod bounds;
mod corpus;
mod exotic;
mod family;
mod nilpotent;
mod polys;
mod registry;
mod report;
mod suite;
mod z2;
mod zq;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::MAX_RING_SIZE;
use crate::stepgen::IDEAL_SEARCH_LIMIT;

pub use bounds::{run_generic_bound, run_ideal_in_half_step, run_sunital_factorial};
pub use corpus::{corpus_rings, run_corpus, run_corpus_properties, run_corpus_with_fault, CorpusRing, Fault};
pub use exotic::run_exotic;
pub use family::{canonical_independent_family, is_independent, IndependentFamily};
pub use nilpotent::{run_nilpotent, NilpotentWitness};
pub use polys::{run_fg_ideal_witness, run_xz_lemma, run_zx_lemma};
pub use registry::{lookup, matches_filter, registry, Runner, ScenarioEntry};
pub use report::{Check, ReportBuilder, ScenarioReport, Verdict, Witness, REPORT_VERSION};
pub use suite::{criteria, run_criterion, Criterion, CriterionOutcome, Expectation};
pub use z2::{nested_family, run_nested_chain, run_z2_steps};
pub use zq::{run_triangularize, run_zq_subgroup};

/// Resource limits applied by every scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    pub max_ring_size: usize,
    pub max_steps: u32,
    /// Largest ring on which ideal search is exhaustive.
    pub search_caps: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_ring_size: MAX_RING_SIZE, max_steps: 8, search_caps: IDEAL_SEARCH_LIMIT }
    }
}

/// Shared run configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Context {
    pub seed: u64,
    pub caps: Caps,
}

impl Default for Context {
    fn default() -> Self {
        Context { seed: 1, caps: Caps::default() }
    }
}

/// Scenario parameters as a JSON object.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Params(pub BTreeMap<String, Value>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.0.insert(key.to_string(), serde_json::to_value(value).expect("parameter serializes"));
        self
    }

    /// Rejects keys outside `allowed`.
    pub fn expect_only(&self, allowed: &[&str]) -> Result<()> {
        match self.0.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::InvalidParameter(format!(
                "unknown parameter {k:?}; accepted: {}",
                if allowed.is_empty() { "none".to_string() } else { allowed.join(", ") }
            ))),
            None => Ok(()),
        }
    }

    fn get(&self, key: &str) -> Option<Value> {
        self.0.get(key).map(|v| match v {
            Value::String(s) => serde_json::from_str(s).unwrap_or_else(|_| v.clone()),
            other => other.clone(),
        })
    }

    /// Typed parameter, reading numeric strings as JSON.
    pub fn opt<T: for<'de> Deserialize<'de>>(&self, key: &str) -> Result<Option<T>> {
        match self.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => serde_json::from_value(v.clone())
                .map(Some)
                .map_err(|e| Error::InvalidParameter(format!("parameter {key}: cannot read {v}: {e}"))),
        }
    }

    pub fn get_or<T: for<'de> Deserialize<'de>>(&self, key: &str, default: T) -> Result<T> {
        Ok(self.opt(key)?.unwrap_or(default))
    }

    pub fn require<T: for<'de> Deserialize<'de>>(&self, key: &str) -> Result<T> {
        self.opt(key)?.ok_or_else(|| Error::InvalidParameter(format!("missing parameter {key}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_read_strings_and_numbers() {
        let p = Params::new().with("n", "3").with("m", 4).with("gens", "[[1,0],[0,1]]");
        assert_eq!(p.require::<u32>("n").unwrap(), 3);
        assert_eq!(p.get_or::<u32>("m", 0).unwrap(), 4);
        assert_eq!(p.get_or::<u32>("k", 9).unwrap(), 9);
        assert_eq!(p.require::<Vec<Vec<i64>>>("gens").unwrap(), vec![vec![1, 0], vec![0, 1]]);
        assert!(p.require::<u32>("missing").is_err());
        assert!(Params::new().with("n", "x").require::<u32>("n").is_err());
        assert!(p.expect_only(&["n", "m"]).is_err());
        assert!(p.expect_only(&["n", "m", "gens"]).is_ok());
    }

    #[test]
    fn caps_defaults() {
        let c: Caps = serde_json::from_str(r#"{"max_steps": 4}"#).unwrap();
        assert_eq!(c.max_steps, 4);
        assert_eq!(c.max_ring_size, MAX_RING_SIZE);
        assert!(serde_json::from_str::<Caps>(r#"{"bogus": 1}"#).is_err());
    }
}
