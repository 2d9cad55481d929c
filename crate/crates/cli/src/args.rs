use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ringsteps::scenario::Params;

use crate::Invalid;

#[derive(Debug, Parser)]
#[command(
    name = "ringsteps",
    version,
    about = "Step-counted ideal generation: scenarios, property corpus and ring checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Seed for every randomized scenario.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; output order does not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Comma-separated claim ids, aliases or groups.
    #[arg(long, global = true)]
    pub only: Option<String>,
    #[arg(long, global = true)]
    pub max_ring_size: Option<usize>,
    #[arg(long, global = true)]
    pub max_steps: Option<u32>,
    /// Largest ring on which ideal search is exhaustive.
    #[arg(long, global = true)]
    pub search_caps: Option<usize>,
}

impl GlobalOpts {
    pub fn jobs(&self) -> usize {
        self.jobs.unwrap_or(1).max(1)
    }

    /// Runner options that appeared among trailing scenario parameters.
    pub fn merged(&self, o: &Overrides) -> GlobalOpts {
        GlobalOpts {
            format: o.format.unwrap_or(self.format),
            seed: o.seed.or(self.seed),
            jobs: o.jobs.or(self.jobs),
            only: self.only.clone(),
            max_ring_size: o.max_ring_size.or(self.max_ring_size),
            max_steps: o.max_steps.or(self.max_steps),
            search_caps: o.search_caps.or(self.search_caps),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one scenario by claim id or alias (`run zx-no-ideal --m 2`), or a scenario file.
    Run {
        claim: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Scenario parameters as `--key value` pairs.
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, value_name = "--KEY VALUE")]
        params: Vec<String>,
    },
    /// Run the full acceptance matrix and print a claim-by-claim summary.
    PaperSuite,
    /// Check ring axioms for the given JSON descriptors, or for every corpus ring.
    Axioms { rings: Vec<String> },
    /// Run the seeded property corpus.
    Corpus {
        /// Instances per property family.
        #[arg(long)]
        budget: Option<usize>,
    },
}

#[derive(Debug, Default)]
pub struct Overrides {
    format: Option<Format>,
    seed: Option<u64>,
    jobs: Option<usize>,
    max_ring_size: Option<usize>,
    max_steps: Option<u32>,
    search_caps: Option<usize>,
}

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, Invalid> {
    value.parse().map_err(|_| Invalid(format!("--{key} expects a number, got {value:?}")))
}

/// Splits trailing `--key value` or `--key=value` arguments into scenario
/// parameters and runner options such as `--format`.
pub fn parse_params(args: &[String]) -> Result<(Params, Overrides), Invalid> {
    let mut params = Params::new();
    let mut o = Overrides::default();
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let Some(key) = arg.strip_prefix("--") else {
            return Err(Invalid(format!("expected --key, got {arg:?}")));
        };
        let (key, value) = match key.split_once('=') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => {
                let v = it.next().ok_or_else(|| Invalid(format!("--{key} needs a value")))?;
                (key.to_string(), v.clone())
            }
        };
        match key.as_str() {
            "format" => {
                o.format =
                    Some(Format::from_str(&value, true).map_err(|_| Invalid(format!("unknown format {value:?}")))?)
            }
            "seed" => o.seed = Some(number(&key, &value)?),
            "jobs" => o.jobs = Some(number(&key, &value)?),
            "max-ring-size" => o.max_ring_size = Some(number(&key, &value)?),
            "max-steps" => o.max_steps = Some(number(&key, &value)?),
            "search-caps" => o.search_caps = Some(number(&key, &value)?),
            "" => return Err(Invalid("empty parameter name".into())),
            _ if params.0.contains_key(&key) => return Err(Invalid(format!("parameter --{key} given twice"))),
            _ => params = params.with(&key, value),
        }
    }
    Ok((params, o))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn params_and_overrides() {
        let (p, o) =
            parse_params(&strings(&["--m", "2", "--gens=[[1,1]]", "--format", "json", "--seed", "7"])).unwrap();
        assert_eq!(p.require::<u32>("m").unwrap(), 2);
        assert_eq!(p.require::<Vec<Vec<i64>>>("gens").unwrap(), vec![vec![1, 1]]);
        assert_eq!(o.format, Some(Format::Json));
        assert_eq!(o.seed, Some(7));
    }

    #[test]
    fn bad_params() {
        assert!(parse_params(&strings(&["m", "2"])).is_err());
        assert!(parse_params(&strings(&["--m"])).is_err());
        assert!(parse_params(&strings(&["--m", "1", "--m", "2"])).is_err());
        assert!(parse_params(&strings(&["--seed", "x"])).is_err());
    }
}
