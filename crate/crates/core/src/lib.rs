//! Noun sense selection from sentence context.
//!
//! A word's senses are scored with a naive-Bayes model over its
//! co-occurrence word set. Training data is sense-tagged automatically from a
//! bilingual corpus, and sparse estimates are helped by extending each word's
//! sense set with the hypernyms that generalize exactly one of its senses.
//!
//! Module map:
//!
//! - [`inventory`]: sense inventory, is-a taxonomy, extended sense sets, `wg`
//! - [`corpus`]: tokenization, function words, co-occurrence word sets
//! - [`bitext`]: sentence alignment, dictionary tagging, training extraction
//! - [`model`]: count tables, smoothed estimates, model files
//! - [`disambig`]: argmax decision and file tagging
//! - [`harness`]: metrics, paired experiments, synthetic corpora

pub mod bitext;
pub mod corpus;
pub mod disambig;
mod error;
pub mod harness;
pub mod inventory;
pub mod model;

pub use bitext::{
    align_sentences, extract_training, split, tag_occurrence, AlignConfig, BitextPair, SplitSpec,
    TaggedInstance,
};
pub use corpus::{
    association_score, content_filter, count_cooccurrence, extract_cws, tokenize, Contingency,
    CooccurrenceSet, CwsConfig, FunctionWordList, Sentence,
};
pub use disambig::{disambiguate, score_sense, tag_file, Decision, Policy};
pub use error::{Error, Result};
pub use harness::{
    aggregate, evaluate, generate_synthetic, run_experiment, EvalReport, SenseCounts, SynthSpec,
};
pub use inventory::{wg, ExtendedSenseSet, SenseId, SenseInventory, Taxonomy};
pub use model::{
    accumulate_counts, estimate_likelihood, estimate_prior, train, CountTables, ModelConfig,
    SenseModel,
};
