//! Evaluation and the paired baseline / extended-sense-set experiment.

mod metrics;
mod synth;

use std::collections::BTreeMap;
use std::path::Path;

pub use metrics::{
    aggregate, aggregate_with, f_score, precision, recall, EvalReport, Scores, SenseCounts,
    SenseRow, SenseTally,
};
pub use synth::{generate_synthetic, sense_name, SynthSpec, SyntheticCorpus};

use crate::bitext::{split, SplitSpec, TaggedInstance};
use crate::corpus::CooccurrenceSet;
use crate::disambig::{disambiguate_context, Decision, Policy};
use crate::error::{read_to_string, Error, Result};
use crate::inventory::{SenseInventory, Taxonomy};
use crate::model::{train, ModelConfig, SenseModel};

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub counts: SenseCounts,
    /// One decision per test instance, in input order.
    pub decisions: Vec<Decision>,
    pub report: EvalReport,
}

impl Evaluation {
    pub fn decided(&self) -> impl Iterator<Item = bool> + '_ {
        self.decisions.iter().map(|d| !d.abstained)
    }
}

pub fn evaluate(model: &SenseModel, test: &[TaggedInstance], policy: Policy) -> Result<Evaluation> {
    if test.is_empty() {
        return Err(Error::Metric("empty test set"));
    }
    let mut counts = SenseCounts::new();
    // rows in dictionary order for every tested word
    let mut words: Vec<&str> = test.iter().map(|t| t.word.as_str()).collect();
    words.sort_unstable();
    words.dedup();
    for w in words {
        for e in model.inventory.senses(w).into_iter().flatten() {
            counts.entry(w, &e.id);
        }
    }

    let mut decisions = Vec::with_capacity(test.len());
    let mut abstained = 0;
    for inst in test {
        let d = disambiguate_context(
            model,
            &inst.word,
            inst.context.iter().map(String::as_str),
            policy,
        )?;
        if d.abstained {
            abstained += 1;
            counts.record(&inst.word, &inst.tag, None);
        } else {
            counts.record(&inst.word, &inst.tag, Some(&d.chosen));
        }
        decisions.push(d);
    }
    let report = aggregate_with(&counts, abstained)?;
    Ok(Evaluation {
        counts,
        decisions,
        report,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentArm {
    pub config: ModelConfig,
    pub policy: Policy,
}

impl ExperimentArm {
    pub fn new(config: ModelConfig) -> Self {
        ExperimentArm {
            config,
            policy: Policy::for_config(&config),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfigs {
    pub baseline: ExperimentArm,
    pub ess: ExperimentArm,
}

impl Default for ExperimentConfigs {
    /// Base senses with abstention versus extended senses deciding every item.
    fn default() -> Self {
        ExperimentConfigs {
            baseline: ExperimentArm::new(ModelConfig::baseline()),
            ess: ExperimentArm::new(ModelConfig::default()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutcome {
    pub baseline: Evaluation,
    pub ess: Evaluation,
    /// Micro recall gain of the extended arm, in points.
    pub recall_delta: f64,
}

impl ExperimentOutcome {
    pub fn render(&self) -> String {
        format!(
            "== baseline (sense set) ==\n{}\n== extended sense set ==\n{}\nrecall_delta={:.1}\n",
            self.baseline.report.render(),
            self.ess.report.render(),
            self.recall_delta
        )
    }
}

/// Trains both arms on `train` and evaluates them on the same `test` items.
pub fn compare(
    train_set: &[TaggedInstance],
    test_set: &[TaggedInstance],
    inv: &SenseInventory,
    taxonomy: &Taxonomy,
    cws: &BTreeMap<String, CooccurrenceSet>,
    arms: &ExperimentConfigs,
) -> Result<ExperimentOutcome> {
    if test_set.is_empty() {
        return Err(Error::Metric("empty test split"));
    }
    let run = |arm: &ExperimentArm| -> Result<Evaluation> {
        let model = train(train_set, inv, taxonomy, cws, &arm.config)?;
        evaluate(&model, test_set, arm.policy)
    };
    let baseline = run(&arms.baseline)?;
    let ess = run(&arms.ess)?;
    let recall_delta = ess.report.micro.recall - baseline.report.micro.recall;
    Ok(ExperimentOutcome {
        baseline,
        ess,
        recall_delta,
    })
}

pub fn run_experiment(
    instances: &[TaggedInstance],
    inv: &SenseInventory,
    taxonomy: &Taxonomy,
    cws: &BTreeMap<String, CooccurrenceSet>,
    arms: &ExperimentConfigs,
    split_spec: &SplitSpec,
) -> Result<ExperimentOutcome> {
    let (train_set, test_set) = split(instances, split_spec)?;
    compare(&train_set, &test_set, inv, taxonomy, cws, arms)
}

/// `key = value` lines; `#` starts a comment line. Keys are normalized to
/// use `-` so they match command-line flag names.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::malformed(idx + 1, "expected `key = value`"))?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() {
            return Err(Error::malformed(idx + 1, "empty key"));
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

pub fn load_config(path: impl AsRef<Path>) -> Result<BTreeMap<String, String>> {
    parse_config(&read_to_string(path.as_ref())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file() {
        let c = parse_config("# c\nalpha = 0.25\nuse_ess=false\n\n").unwrap();
        assert_eq!(c["alpha"], "0.25");
        assert_eq!(c["use-ess"], "false");
        assert!(parse_config("alpha 0.3").is_err());
    }

    #[test]
    fn identical_arms_give_identical_reports() {
        let spec = SynthSpec {
            train_per_sense: 60,
            test_per_sense: 20,
            sparsity: 0.3,
            ..SynthSpec::default()
        };
        let s = generate_synthetic(&spec).unwrap();
        let arm = ExperimentArm::new(ModelConfig::baseline());
        let arms = ExperimentConfigs {
            baseline: arm,
            ess: arm,
        };
        let out = compare(&s.train, &s.test, &s.inventory, &s.taxonomy, &s.cws, &arms).unwrap();
        assert_eq!(out.baseline, out.ess);
        assert_eq!(out.recall_delta, 0.0);
        assert!(compare(&s.train, &[], &s.inventory, &s.taxonomy, &s.cws, &arms).is_err());
    }
}
