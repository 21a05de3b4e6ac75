//! Seeded synthetic corpora for desk-scale validation.
//!
//! One ambiguous word gets `senses` base senses, each with its own hypernym
//! chain, its own "seen" vocabulary (used in training and ordinary test
//! items) and a held-out vocabulary that only sparse test items use. Context
//! words can also be drawn from a pool shared by all senses. Background
//! sentences without the target word make the association statistics
//! meaningful.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bitext::{write_instances, TaggedInstance};
use crate::corpus::{extract_cws, CooccurrenceSet, CwsConfig, FunctionWordList, Sentence};
use crate::error::{Error, Result};
use crate::inventory::{SenseId, SenseInventory, Taxonomy};

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub word: String,
    pub senses: usize,
    /// Hypernym chain length above each base sense.
    pub taxonomy_depth: usize,
    pub vocabulary_per_sense: usize,
    /// Per-sense words that appear only in sparse test items.
    pub heldout_per_sense: usize,
    pub shared_vocabulary: usize,
    pub context_words: usize,
    pub train_per_sense: usize,
    pub test_per_sense: usize,
    /// Probability that a context word comes from the shared pool.
    pub overlap: f64,
    /// Fraction of test items whose context uses only held-out words.
    pub sparsity: f64,
    pub background_sentences: usize,
    pub background_vocabulary: usize,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec {
            word: "bank".into(),
            senses: 3,
            taxonomy_depth: 2,
            vocabulary_per_sense: 24,
            heldout_per_sense: 12,
            shared_vocabulary: 10,
            context_words: 4,
            train_per_sense: 500,
            test_per_sense: 125,
            overlap: 0.0,
            sparsity: 0.0,
            background_sentences: 1000,
            background_vocabulary: 200,
            seed: 7,
        }
    }
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if self.word.is_empty() || self.word.chars().any(|c| !c.is_alphanumeric()) {
            return fail(format!("target word `{}` must be alphanumeric", self.word));
        }
        if self.senses == 0 {
            return fail("at least one sense is required".into());
        }
        if self.context_words == 0 {
            return fail("context_words must be positive".into());
        }
        if self.vocabulary_per_sense < self.context_words {
            return fail(format!(
                "vocabulary_per_sense ({}) is smaller than context_words ({})",
                self.vocabulary_per_sense, self.context_words
            ));
        }
        if self.sparsity > 0.0 && self.heldout_per_sense < self.context_words {
            return fail(format!(
                "heldout_per_sense ({}) is smaller than context_words ({})",
                self.heldout_per_sense, self.context_words
            ));
        }
        if self.overlap > 0.0 && self.shared_vocabulary == 0 {
            return fail("overlap needs a non-empty shared vocabulary".into());
        }
        for (name, v) in [("overlap", self.overlap), ("sparsity", self.sparsity)] {
            if !(0.0..=1.0).contains(&v) {
                return fail(format!("{name} must be in [0, 1], got {v}"));
            }
        }
        if self.background_sentences > 0 && self.background_vocabulary == 0 {
            return fail("background sentences need a background vocabulary".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticCorpus {
    pub inventory: SenseInventory,
    pub taxonomy: Taxonomy,
    pub cws: BTreeMap<String, CooccurrenceSet>,
    pub train: Vec<TaggedInstance>,
    pub test: Vec<TaggedInstance>,
    /// Test items whose context is drawn only from held-out words.
    pub sparse_test: Vec<bool>,
    /// Every tagged sentence plus the background sentences.
    pub corpus: Vec<Sentence>,
}

impl SyntheticCorpus {
    pub fn instances(&self) -> Vec<TaggedInstance> {
        self.train.iter().chain(&self.test).cloned().collect()
    }

    /// Fixture files by name.
    pub fn files(&self) -> Vec<(&'static str, String)> {
        let corpus: String = self
            .corpus
            .iter()
            .map(|s| s.tokens.join(" ") + "\n")
            .collect();
        vec![
            ("dictionary.tsv", self.inventory.to_text()),
            ("taxonomy.tsv", self.taxonomy.to_text()),
            ("cws.tsv", crate::corpus::write_cws(self.cws.values())),
            ("train.tsv", write_instances(&self.train)),
            ("test.tsv", write_instances(&self.test)),
            ("instances.tsv", write_instances(&self.instances())),
            ("corpus.txt", corpus),
        ]
    }
}

pub fn sense_name(k: usize) -> SenseId {
    SenseId::new(format!("sense{k}"))
}

fn hypernym_name(k: usize, level: usize) -> SenseId {
    SenseId::new(format!("sense{k}_h{level}"))
}

/// Draws `n` distinct words; each slot prefers `shared` with probability
/// `overlap` and falls back to the other pool once one is exhausted.
fn draw(
    rng: &mut ChaCha8Rng,
    own: &[String],
    shared: &[String],
    overlap: f64,
    n: usize,
) -> BTreeSet<String> {
    let mut picked = BTreeSet::new();
    while picked.len() < n {
        let from_shared = !shared.is_empty() && rng.gen_bool(overlap);
        let pool = if from_shared { shared } else { own };
        let available: Vec<&String> = pool.iter().filter(|w| !picked.contains(*w)).collect();
        let pool: Vec<&String> = if available.is_empty() {
            own.iter()
                .chain(shared)
                .filter(|w| !picked.contains(*w))
                .collect()
        } else {
            available
        };
        let w = pool[rng.gen_range(0..pool.len())];
        picked.insert(w.clone());
    }
    picked
}

pub fn generate_synthetic(spec: &SynthSpec) -> Result<SyntheticCorpus> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let word = spec.word.as_str();

    let mut inventory = SenseInventory::new();
    let mut edges = Vec::new();
    for k in 0..spec.senses {
        inventory.add_sense(word, sense_name(k), [format!("tr{k}")])?;
        let mut child = sense_name(k);
        for level in 1..=spec.taxonomy_depth {
            let parent = hypernym_name(k, level);
            edges.push((child, parent.clone()));
            child = parent;
        }
    }
    let taxonomy = Taxonomy::from_edges(edges)?;

    let seen: Vec<Vec<String>> = (0..spec.senses)
        .map(|k| {
            (0..spec.vocabulary_per_sense)
                .map(|i| format!("s{k}w{i}"))
                .collect()
        })
        .collect();
    let heldout: Vec<Vec<String>> = (0..spec.senses)
        .map(|k| {
            (0..spec.heldout_per_sense)
                .map(|i| format!("s{k}u{i}"))
                .collect()
        })
        .collect();
    let shared: Vec<String> = (0..spec.shared_vocabulary)
        .map(|i| format!("shared{i}"))
        .collect();
    let background: Vec<String> = (0..spec.background_vocabulary)
        .map(|i| format!("bg{i}"))
        .collect();

    let mut train = Vec::new();
    let mut test = Vec::new();
    let mut sparse_test = Vec::new();
    for k in 0..spec.senses {
        let tag = sense_name(k);
        for _ in 0..spec.train_per_sense {
            let ctx = draw(
                &mut rng,
                &seen[k],
                &shared,
                spec.overlap,
                spec.context_words,
            );
            train.push(TaggedInstance::new(word, tag.clone(), ctx));
        }
        for _ in 0..spec.test_per_sense {
            let sparse = rng.gen_bool(spec.sparsity);
            let ctx = if sparse {
                draw(&mut rng, &heldout[k], &[], 0.0, spec.context_words)
            } else {
                draw(
                    &mut rng,
                    &seen[k],
                    &shared,
                    spec.overlap,
                    spec.context_words,
                )
            };
            test.push(TaggedInstance::new(word, tag.clone(), ctx));
            sparse_test.push(sparse);
        }
    }

    let mut corpus: Vec<Sentence> = train
        .iter()
        .chain(&test)
        .map(|inst| {
            Sentence::new(std::iter::once(inst.word.clone()).chain(inst.context.iter().cloned()))
        })
        .collect();
    let bg_len = spec.context_words.max(2) + 2;
    for _ in 0..spec.background_sentences {
        let toks = draw(
            &mut rng,
            &background,
            &[],
            0.0,
            bg_len.min(background.len()),
        );
        corpus.push(Sentence::new(toks));
    }

    let cws_set = extract_cws(
        &corpus,
        word,
        &CwsConfig::default(),
        &FunctionWordList::default(),
    );
    let cws = BTreeMap::from([(word.to_string(), cws_set)]);

    Ok(SyntheticCorpus {
        inventory,
        taxonomy,
        cws,
        train,
        test,
        sparse_test,
        corpus,
    })
}
