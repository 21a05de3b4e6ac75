//! Bitext sentence alignment, dictionary-based sense tagging, and the
//! extraction of sense-tagged training instances.
//!
//! Alignment and tagging both favour precision: sentence pairs without enough
//! dictionary anchors are dropped, and an occurrence is tagged only when the
//! target sentence contains translations of exactly one of its senses.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{content_filter, tokenize, FunctionWordList, Sentence};
use crate::error::{read_to_string, Error, Result};
use crate::inventory::{SenseId, SenseInventory};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitextPair {
    pub source: Sentence,
    pub target: Sentence,
    /// Line index of the source sentence in its document.
    pub source_index: usize,
    /// Line index of the target sentence in its document.
    pub target_index: usize,
}

impl BitextPair {
    pub fn new(source: Sentence, target: Sentence) -> Self {
        BitextPair {
            source,
            target,
            source_index: 0,
            target_index: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlignConfig {
    pub min_anchor_count: usize,
    pub max_length_ratio: f64,
}

impl Default for AlignConfig {
    fn default() -> Self {
        AlignConfig {
            min_anchor_count: 1,
            max_length_ratio: 3.0,
        }
    }
}

/// Number of distinct source words having some translation present in the
/// target sentence.
pub fn anchor_count(source: &Sentence, target: &Sentence, inv: &SenseInventory) -> usize {
    let target_words = target.token_set();
    source
        .token_set()
        .into_iter()
        .filter(|w| {
            inv.senses(w).is_some_and(|senses| {
                senses.iter().any(|e| {
                    e.translations
                        .iter()
                        .any(|t| target_words.contains(t.as_str()))
                })
            })
        })
        .count()
}

fn length_ratio_ok(a: usize, b: usize, max_ratio: f64) -> bool {
    if a == 0 || b == 0 {
        return false;
    }
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    hi as f64 / lo as f64 <= max_ratio
}

/// Chain score: total anchors first, then number of pairs.
type ChainKey = (u64, u64);

struct Cell {
    i: usize,
    j: usize,
    key: ChainKey,
    prev: Option<usize>,
}

/// Prefix-maximum Fenwick tree over target indices.
struct PrefixMax {
    tree: Vec<Option<(ChainKey, usize)>>,
}

impl PrefixMax {
    fn new(n: usize) -> Self {
        PrefixMax {
            tree: vec![None; n + 1],
        }
    }

    /// Best entry among positions `0..end`.
    fn query(&self, end: usize) -> Option<(ChainKey, usize)> {
        let mut best: Option<(ChainKey, usize)> = None;
        let mut k = end;
        while k > 0 {
            if let Some(v) = self.tree[k] {
                if best.is_none_or(|b| v.0 > b.0) {
                    best = Some(v);
                }
            }
            k &= k - 1;
        }
        best
    }

    fn update(&mut self, pos: usize, value: (ChainKey, usize)) {
        let mut k = pos + 1;
        while k < self.tree.len() {
            if self.tree[k].is_none_or(|cur| value.0 > cur.0) {
                self.tree[k] = Some(value);
            }
            k += k & k.wrapping_neg();
        }
    }
}

/// Monotone 1-1 alignment maximizing the total number of anchors over an
/// index-increasing chain of qualifying sentence pairs.
pub fn align_sentences(
    source_doc: &[Sentence],
    target_doc: &[Sentence],
    inv: &SenseInventory,
    cfg: &AlignConfig,
) -> Vec<BitextPair> {
    // translation -> target lines containing it
    let mut postings: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (j, tgt) in target_doc.iter().enumerate() {
        for t in tgt.token_set() {
            postings.entry(t).or_default().push(j);
        }
    }

    let mut cells: Vec<Cell> = Vec::new();
    let mut best = PrefixMax::new(target_doc.len());
    let mut anchors: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, src) in source_doc.iter().enumerate() {
        anchors.clear();
        for w in src.token_set() {
            let Some(senses) = inv.senses(w) else {
                continue;
            };
            let mut hits: BTreeSet<usize> = BTreeSet::new();
            for t in senses.iter().flat_map(|e| &e.translations) {
                hits.extend(postings.get(t.as_str()).into_iter().flatten());
            }
            for j in hits {
                *anchors.entry(j).or_default() += 1;
            }
        }
        let row_start = cells.len();
        for (&j, &count) in &anchors {
            let tgt = &target_doc[j];
            if count < cfg.min_anchor_count
                || !length_ratio_ok(src.len(), tgt.len(), cfg.max_length_ratio)
            {
                continue;
            }
            let prev = best.query(j);
            let base = prev.map_or((0, 0), |p| p.0);
            cells.push(Cell {
                i,
                j,
                key: (base.0 + count as u64, base.1 + 1),
                prev: prev.map(|p| p.1),
            });
        }
        // rows are committed only after the whole row is scored so that a
        // chain never uses two cells from the same source sentence
        for (idx, c) in cells.iter().enumerate().skip(row_start) {
            best.update(c.j, (c.key, idx));
        }
    }

    let mut cursor = best.query(target_doc.len()).map(|b| b.1);
    let mut chain = Vec::new();
    while let Some(idx) = cursor {
        let c = &cells[idx];
        chain.push(BitextPair {
            source: source_doc[c.i].clone(),
            target: target_doc[c.j].clone(),
            source_index: c.i,
            target_index: c.j,
        });
        cursor = c.prev;
    }
    chain.reverse();
    chain
}

/// The unique sense of `word` whose translations occur in the target
/// sentence, if there is exactly one.
pub fn tag_occurrence(pair: &BitextPair, word: &str, inv: &SenseInventory) -> Option<SenseId> {
    let senses = inv.senses(word)?;
    let target = pair.target.token_set();
    let mut matched = senses
        .iter()
        .filter(|e| e.translations.iter().any(|t| target.contains(t.as_str())));
    let first = matched.next()?;
    match matched.next() {
        Some(_) => None,
        None => Some(first.id.clone()),
    }
}

/// One sense-tagged occurrence of an inventory word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaggedInstance {
    pub word: String,
    pub tag: SenseId,
    pub context: BTreeSet<String>,
}

impl TaggedInstance {
    pub fn new<I, S>(word: &str, tag: SenseId, context: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut context: BTreeSet<String> = context.into_iter().map(Into::into).collect();
        context.remove(word);
        TaggedInstance {
            word: word.to_string(),
            tag,
            context,
        }
    }

    pub fn to_line(&self) -> String {
        let ctx: Vec<&str> = self.context.iter().map(String::as_str).collect();
        format!("{}\t{}\t{}", self.word, self.tag, ctx.join(","))
    }
}

pub fn extract_training(
    bitext: &[BitextPair],
    inv: &SenseInventory,
    fw: &FunctionWordList,
) -> Vec<TaggedInstance> {
    let mut out = Vec::new();
    for pair in bitext {
        let content = content_filter(&pair.source, fw);
        for w in &pair.source.tokens {
            if !inv.contains_word(w) {
                continue;
            }
            if let Some(tag) = tag_occurrence(pair, w, inv) {
                out.push(TaggedInstance::new(w, tag, content.tokens.iter().cloned()));
            }
        }
    }
    out
}

pub fn write_instances(instances: &[TaggedInstance]) -> String {
    let mut out = String::new();
    for inst in instances {
        out.push_str(&inst.to_line());
        out.push('\n');
    }
    out
}

pub fn parse_instances(text: &str) -> Result<Vec<TaggedInstance>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = raw.split('\t').collect();
        if f.len() != 3 {
            return Err(Error::malformed(
                line,
                "expected `word<TAB>sense<TAB>context`",
            ));
        }
        let word = f[0].trim();
        if word.is_empty() {
            return Err(Error::malformed(line, "empty word"));
        }
        let tag = SenseId::parse(f[1].trim())
            .ok_or_else(|| Error::malformed(line, "invalid sense id"))?;
        let context = f[2].split(',').map(str::trim).filter(|c| !c.is_empty());
        out.push(TaggedInstance::new(word, tag, context));
    }
    Ok(out)
}

pub fn load_instances(path: impl AsRef<Path>) -> Result<Vec<TaggedInstance>> {
    parse_instances(&read_to_string(path.as_ref())?)
}

/// One tokenized sentence per line; blank lines are kept as empty sentences
/// so indices match line numbers.
pub fn load_document(path: impl AsRef<Path>) -> Result<Vec<Sentence>> {
    Ok(read_to_string(path.as_ref())?
        .lines()
        .map(tokenize)
        .collect())
}

/// `source<TAB>target` per line, already aligned.
pub fn parse_pre_aligned(text: &str) -> Result<Vec<BitextPair>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        if raw.trim().is_empty() {
            continue;
        }
        let (src, tgt) = raw
            .split_once('\t')
            .ok_or_else(|| Error::malformed(idx + 1, "expected `source<TAB>target`"))?;
        out.push(BitextPair {
            source: tokenize(src),
            target: tokenize(tgt),
            source_index: idx,
            target_index: idx,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec {
            train_fraction: 0.8,
            seed: 0,
        }
    }
}

/// Stratified per `(word, tag)`: each stratum is shuffled with a seeded RNG
/// and cut at `round(train_fraction * n)`. Both halves keep input order.
pub fn split(
    instances: &[TaggedInstance],
    spec: &SplitSpec,
) -> Result<(Vec<TaggedInstance>, Vec<TaggedInstance>)> {
    if !(spec.train_fraction > 0.0 && spec.train_fraction < 1.0) {
        return Err(Error::Config(format!(
            "train fraction must be in (0, 1), got {}",
            spec.train_fraction
        )));
    }
    let mut strata: BTreeMap<(&str, &SenseId), Vec<usize>> = BTreeMap::new();
    for (i, inst) in instances.iter().enumerate() {
        strata.entry((&inst.word, &inst.tag)).or_default().push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut in_train = vec![false; instances.len()];
    for idx in strata.values_mut() {
        idx.shuffle(&mut rng);
        let cut = (spec.train_fraction * idx.len() as f64).round() as usize;
        for &i in &idx[..cut] {
            in_train[i] = true;
        }
    }
    let (mut train, mut test) = (Vec::new(), Vec::new());
    for (inst, keep) in instances.iter().zip(in_train) {
        if keep {
            train.push(inst.clone());
        } else {
            test.push(inst.clone());
        }
    }
    Ok((train, test))
}
