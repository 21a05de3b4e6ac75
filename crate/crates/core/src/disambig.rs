//! Sense selection: argmax of `log P(m|w) + Σ log P(c|w,m)` over the sense
//! space, mapped back to a base sense.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use crate::corpus::{tokenize, Sentence};
use crate::error::{read_to_string, Error, Result};
use crate::inventory::SenseId;
use crate::model::{ModelConfig, SenseModel, WordModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Policy {
    /// Decline to decide when no context word carries training evidence.
    pub abstain_on_no_evidence: bool,
}

impl Policy {
    /// Abstain for base-sense models, decide everything with extended sets.
    pub fn for_config(cfg: &ModelConfig) -> Self {
        Policy {
            abstain_on_no_evidence: !cfg.use_ess,
        }
    }

    pub fn never_abstain() -> Self {
        Policy {
            abstain_on_no_evidence: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    pub word: String,
    /// Base sense; meaningful only when not abstained.
    pub chosen: SenseId,
    pub raw_winner: SenseId,
    /// Natural-log score of every sense in the space.
    pub scores: BTreeMap<SenseId, f64>,
    pub abstained: bool,
    pub evidence: BTreeSet<String>,
}

impl Decision {
    pub fn winner_score(&self) -> f64 {
        self.scores[&self.raw_winner]
    }
}

fn effective_context<'a, I>(wm: &WordModel, word: &str, context: I) -> BTreeSet<&'a str>
where
    I: IntoIterator<Item = &'a str>,
{
    context
        .into_iter()
        .filter(|c| *c != word && wm.vocabulary.contains(*c))
        .collect()
}

fn score_in(wm: &WordModel, m: &SenseId, context: &BTreeSet<&str>) -> f64 {
    let mut score = wm.prior[m].ln();
    let lik = &wm.likelihood[m];
    for c in context {
        score += lik[*c].ln();
    }
    score
}

/// Log score of sense `m` for `word` given a context word set. Words outside
/// the model vocabulary contribute nothing.
pub fn score_sense<'a, I>(model: &SenseModel, word: &str, m: &SenseId, context: I) -> Result<f64>
where
    I: IntoIterator<Item = &'a str>,
{
    let wm = model.word(word)?;
    if !wm.space.contains(m) {
        return Err(Error::SenseNotInSpace {
            word: word.to_string(),
            sense: m.to_string(),
        });
    }
    Ok(score_in(wm, m, &effective_context(wm, word, context)))
}

pub fn disambiguate_context<'a, I>(
    model: &SenseModel,
    word: &str,
    context: I,
    policy: Policy,
) -> Result<Decision>
where
    I: IntoIterator<Item = &'a str>,
{
    let wm = model.word(word)?;
    let context = effective_context(wm, word, context);
    let scores: BTreeMap<SenseId, f64> = wm
        .space
        .senses()
        .map(|m| (m.clone(), score_in(wm, m, &context)))
        .collect();

    // higher score, then higher prior, then smaller id
    let raw_winner = wm
        .space
        .senses()
        .max_by(|a, b| {
            scores[*a]
                .total_cmp(&scores[*b])
                .then_with(|| wm.prior[*a].total_cmp(&wm.prior[*b]))
                .then_with(|| b.cmp(a))
        })
        .expect("sense space is never empty")
        .clone();
    let chosen = wm.space.base_sense_of(&raw_winner)?.clone();

    let evidence: BTreeSet<String> = context
        .iter()
        .filter(|c| wm.evidence.contains(**c))
        .map(|c| c.to_string())
        .collect();
    let abstained = policy.abstain_on_no_evidence && evidence.is_empty();
    Ok(Decision {
        word: word.to_string(),
        chosen,
        raw_winner,
        scores,
        abstained,
        evidence,
    })
}

/// Decides `word` in a tokenized sentence; every other token is context.
pub fn disambiguate(
    model: &SenseModel,
    word: &str,
    sentence: &Sentence,
    policy: Policy,
) -> Result<Decision> {
    disambiguate_context(
        model,
        word,
        sentence.tokens.iter().map(String::as_str),
        policy,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct TagRecord {
    /// 1-based line number.
    pub line_no: usize,
    pub decision: Decision,
}

impl TagRecord {
    /// `line_no<TAB>word<TAB>chosen<TAB>raw_winner<TAB>abstained<TAB>log10 score`
    pub fn to_line(&self) -> String {
        let d = &self.decision;
        format!(
            "{}\t{}\t{}\t{}\t{}\t{:.6}",
            self.line_no,
            d.word,
            d.chosen,
            d.raw_winner,
            d.abstained,
            d.winner_score() / std::f64::consts::LN_10
        )
    }
}

/// One record per occurrence of a model word, in line then token order.
pub fn tag_text(model: &SenseModel, text: &str, policy: Policy) -> Result<Vec<TagRecord>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let sentence = tokenize(line);
        let mut cache: BTreeMap<&str, Decision> = BTreeMap::new();
        for tok in &sentence.tokens {
            if !model.words.contains_key(tok) {
                continue;
            }
            let decision = match cache.get(tok.as_str()) {
                Some(d) => d.clone(),
                None => {
                    let d = disambiguate(model, tok, &sentence, policy)?;
                    cache.insert(tok, d.clone());
                    d
                }
            };
            out.push(TagRecord {
                line_no: idx + 1,
                decision,
            });
        }
    }
    Ok(out)
}

pub fn tag_file(
    model: &SenseModel,
    path: impl AsRef<Path>,
    policy: Policy,
) -> Result<Vec<TagRecord>> {
    tag_text(model, &read_to_string(path.as_ref())?, policy)
}

pub fn write_records(records: &[TagRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let _ = writeln!(out, "{}", r.to_line());
    }
    out
}
