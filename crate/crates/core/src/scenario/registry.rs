use super::report::ScenarioReport;
use super::{
    corpus, run_exotic, run_fg_ideal_witness, run_generic_bound, run_ideal_in_half_step, run_nested_chain,
    run_nilpotent, run_sunital_factorial, run_triangularize, run_xz_lemma, run_z2_steps, run_zq_subgroup, run_zx_lemma,
    Context, Params,
};
use crate::error::Result;

pub type Runner = fn(&Params, &Context) -> Result<ScenarioReport>;

/// A registered scenario: its canonical id, alternative names and filter groups.
#[derive(Clone, Copy)]
pub struct ScenarioEntry {
    pub id: &'static str,
    pub aliases: &'static [&'static str],
    pub groups: &'static [&'static str],
    pub title: &'static str,
    pub run: Runner,
}

impl std::fmt::Debug for ScenarioEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScenarioEntry").field("id", &self.id).field("aliases", &self.aliases).finish()
    }
}

impl ScenarioEntry {
    /// The first alias, used as the location column in summaries.
    pub fn location(&self) -> &'static str {
        self.aliases.first().copied().unwrap_or(self.id)
    }
}

const ENTRIES: &[ScenarioEntry] = &[
    ScenarioEntry {
        id: "sunital-factorial",
        aliases: &["lemma-3.2"],
        groups: &["section-3"],
        title: "n!·R inside R·D for thick D in s-unital rings",
        run: run_sunital_factorial,
    },
    ScenarioEntry {
        id: "generic-3n-bound",
        aliases: &["lemma-4.2"],
        groups: &["section-4"],
        title: "E^(+3n) = <D> for generic symmetric D",
        run: run_generic_bound,
    },
    ScenarioEntry {
        id: "ideal-in-half-step",
        aliases: &["theorem-4.4"],
        groups: &["section-4"],
        title: "verified ideals inside H + R·H",
        run: run_ideal_in_half_step,
    },
    ScenarioEntry {
        id: "fg-ideal-witness",
        aliases: &["prop-5.2"],
        groups: &["section-5"],
        title: "finite-index ideal witness in finitely generated rings",
        run: run_fg_ideal_witness,
    },
    ScenarioEntry {
        id: "zx-no-ideal",
        aliases: &["lemma-7.1"],
        groups: &["section-7", "section-7.1"],
        title: "Z[X]: R·H contains no finite-index ideal",
        run: run_zx_lemma,
    },
    ScenarioEntry {
        id: "exotic-ring",
        aliases: &["example-7.2", "lemma-7.2"],
        groups: &["section-7", "section-7.2"],
        title: "exotic ring identity and escaping ideals",
        run: run_exotic,
    },
    ScenarioEntry {
        id: "xz-no-ideal",
        aliases: &["section-7.3", "example-7.3"],
        groups: &["section-7", "section-7.3"],
        title: "XZ[X]: Q''_m outside (R∪{1})·H",
        run: run_xz_lemma,
    },
    ScenarioEntry {
        id: "nilpotent-stab",
        aliases: &["example-7.4", "lemma-7.4"],
        groups: &["section-7", "section-7.4"],
        title: "nilpotent ring: stabilizer of an index-2 subgroup",
        run: run_nilpotent,
    },
    ScenarioEntry {
        id: "triangularize",
        aliases: &["lemma-7.5"],
        groups: &["section-7", "section-7.5"],
        title: "triangular generators of subgroups of Z_q^N",
        run: run_triangularize,
    },
    ScenarioEntry {
        id: "zq-index-bound",
        aliases: &["prop-7.6"],
        groups: &["section-7", "section-7.5"],
        title: "ideal index below q^[R:H] inside R·H",
        run: run_zq_subgroup,
    },
    ScenarioEntry {
        id: "z2-steps",
        aliases: &["prop-7.7"],
        groups: &["section-7", "section-7.6"],
        title: "unbounded step counts in power set rings",
        run: run_z2_steps,
    },
    ScenarioEntry {
        id: "nested-chain",
        aliases: &["lemma-7.8"],
        groups: &["section-7", "section-7.6"],
        title: "nested chain with separated step counts",
        run: run_nested_chain,
    },
    ScenarioEntry {
        id: "corpus",
        aliases: &["properties"],
        groups: &["properties"],
        title: "module invariants over the seeded corpus",
        run: corpus::run_corpus,
    },
];

/// All registered scenarios in presentation order.
pub fn registry() -> &'static [ScenarioEntry] {
    ENTRIES
}

/// Finds a scenario by id or alias, ignoring ASCII case.
pub fn lookup(name: &str) -> Option<&'static ScenarioEntry> {
    ENTRIES.iter().find(|e| e.id.eq_ignore_ascii_case(name) || e.aliases.iter().any(|a| a.eq_ignore_ascii_case(name)))
}

/// True when any comma-separated term of `filter` names the entry, one of its
/// aliases or one of its groups.
pub fn matches_filter(entry: &ScenarioEntry, filter: &str) -> bool {
    filter.split(',').map(str::trim).filter(|t| !t.is_empty()).any(|term| {
        entry.id.eq_ignore_ascii_case(term)
            || entry.aliases.iter().chain(entry.groups).any(|a| a.eq_ignore_ascii_case(term))
    })
}
