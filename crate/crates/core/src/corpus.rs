//! Tokenization, function-word filtering and co-occurrence word sets.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, AddAssign};
use std::path::Path;

use crate::error::{read_to_string, Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Sentence {
    pub tokens: Vec<String>,
}

impl Sentence {
    pub fn new<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Sentence {
            tokens: tokens
                .into_iter()
                .map(Into::into)
                .filter(|t: &String| !t.is_empty())
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.tokens.iter().any(|t| t == word)
    }

    pub fn token_set(&self) -> BTreeSet<&str> {
        self.tokens.iter().map(String::as_str).collect()
    }
}

/// Whitespace split, strip leading/trailing non-alphanumerics, lowercase.
pub fn tokenize(text: &str) -> Sentence {
    Sentence {
        tokens: text
            .split_whitespace()
            .map(|t| {
                t.trim_matches(|c: char| !c.is_alphanumeric())
                    .to_lowercase()
            })
            .filter(|t| !t.is_empty())
            .collect(),
    }
}

/// Closed-class words excluded from co-occurrence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FunctionWordList {
    words: BTreeSet<String>,
}

const ENGLISH_FUNCTION_WORDS: &[&str] = &[
    // articles and determiners
    "a",
    "an",
    "the",
    "this",
    "that",
    "these",
    "those",
    "each",
    "every",
    "either",
    "neither",
    "some",
    "any",
    "no",
    "all",
    "both",
    "another",
    "such",
    "what",
    "which",
    "whose",
    "my",
    "your",
    "his",
    "her",
    "its",
    "our",
    "their",
    "much",
    "many",
    "few",
    "several",
    // prepositions
    "about",
    "above",
    "across",
    "after",
    "against",
    "along",
    "among",
    "around",
    "as",
    "at",
    "before",
    "behind",
    "below",
    "beneath",
    "beside",
    "between",
    "beyond",
    "by",
    "despite",
    "down",
    "during",
    "except",
    "for",
    "from",
    "in",
    "inside",
    "into",
    "like",
    "near",
    "of",
    "off",
    "on",
    "onto",
    "out",
    "outside",
    "over",
    "past",
    "since",
    "through",
    "throughout",
    "till",
    "to",
    "toward",
    "towards",
    "under",
    "underneath",
    "until",
    "up",
    "upon",
    "via",
    "with",
    "within",
    "without",
    // conjunctions
    "and",
    "but",
    "or",
    "nor",
    "so",
    "yet",
    "although",
    "because",
    "if",
    "unless",
    "whereas",
    "while",
    "though",
    "than",
    "whether",
    "once",
    "when",
    "where",
];

impl FunctionWordList {
    pub fn new<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        FunctionWordList {
            words: words
                .into_iter()
                .map(|w| w.as_ref().trim().to_lowercase())
                .filter(|w| !w.is_empty())
                .collect(),
        }
    }

    /// English articles, determiners, prepositions and conjunctions.
    pub fn english() -> Self {
        Self::new(ENGLISH_FUNCTION_WORDS)
    }

    pub fn parse(text: &str) -> Self {
        Self::new(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        )
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(Self::parse(&read_to_string(path.as_ref())?))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Drops function words, preserving order.
pub fn content_filter(sentence: &Sentence, fw: &FunctionWordList) -> Sentence {
    Sentence {
        tokens: sentence
            .tokens
            .iter()
            .filter(|t| !fw.contains(t))
            .cloned()
            .collect(),
    }
}

/// Sentence-level 2x2 table for a target word `w` and a candidate `c`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Contingency {
    pub both: u64,
    pub w_only: u64,
    pub c_only: u64,
    pub neither: u64,
}

impl Contingency {
    pub fn new(both: u64, w_only: u64, c_only: u64, neither: u64) -> Self {
        Contingency {
            both,
            w_only,
            c_only,
            neither,
        }
    }

    pub fn total(&self) -> u64 {
        self.both + self.w_only + self.c_only + self.neither
    }
}

impl Add for Contingency {
    type Output = Contingency;

    fn add(self, rhs: Self) -> Self {
        Contingency {
            both: self.both + rhs.both,
            w_only: self.w_only + rhs.w_only,
            c_only: self.c_only + rhs.c_only,
            neither: self.neither + rhs.neither,
        }
    }
}

impl AddAssign for Contingency {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

/// Raw sentence counts for one target word. Shards can be counted
/// independently and merged.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CooccurrenceCounts {
    pub word: String,
    pub sentences: u64,
    pub with_word: u64,
    /// Sentences containing each content word.
    pub doc_freq: BTreeMap<String, u64>,
    /// Sentences containing both the target and each content word.
    pub joint: BTreeMap<String, u64>,
}

impl CooccurrenceCounts {
    pub fn new(word: &str) -> Self {
        CooccurrenceCounts {
            word: word.to_string(),
            ..Default::default()
        }
    }

    pub fn observe(&mut self, sentence: &Sentence, fw: &FunctionWordList) {
        let words: BTreeSet<&str> = sentence
            .tokens
            .iter()
            .map(String::as_str)
            .filter(|t| !fw.contains(t))
            .collect();
        self.sentences += 1;
        let has_w = words.contains(self.word.as_str());
        if has_w {
            self.with_word += 1;
        }
        for c in words {
            if c == self.word {
                continue;
            }
            *self.doc_freq.entry(c.to_string()).or_insert(0) += 1;
            if has_w {
                *self.joint.entry(c.to_string()).or_insert(0) += 1;
            }
        }
    }

    pub fn merge(&mut self, other: &CooccurrenceCounts) {
        self.sentences += other.sentences;
        self.with_word += other.with_word;
        for (c, n) in &other.doc_freq {
            *self.doc_freq.entry(c.clone()).or_insert(0) += n;
        }
        for (c, n) in &other.joint {
            *self.joint.entry(c.clone()).or_insert(0) += n;
        }
    }

    pub fn table(&self, c: &str) -> Contingency {
        let both = self.joint.get(c).copied().unwrap_or(0);
        let df = self.doc_freq.get(c).copied().unwrap_or(0);
        Contingency {
            both,
            w_only: self.with_word - both,
            c_only: df - both,
            neither: self.sentences + both - self.with_word - df,
        }
    }

    /// Tables for every content word seen at least once.
    pub fn tables(&self) -> BTreeMap<&str, Contingency> {
        self.doc_freq
            .keys()
            .map(|c| (c.as_str(), self.table(c)))
            .collect()
    }
}

pub fn count_cooccurrence<'a, I>(corpus: I, word: &str, fw: &FunctionWordList) -> CooccurrenceCounts
where
    I: IntoIterator<Item = &'a Sentence>,
{
    let mut counts = CooccurrenceCounts::new(word);
    for s in corpus {
        counts.observe(s, fw);
    }
    counts
}

fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// Log-likelihood ratio statistic G² for independence of a 2x2 table.
pub fn association_score(t: &Contingency) -> Result<f64> {
    let n = t.total();
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    let row_w = t.both + t.w_only;
    let row_nw = t.c_only + t.neither;
    let col_c = t.both + t.c_only;
    let col_nc = t.w_only + t.neither;
    if row_w == 0 || row_nw == 0 || col_c == 0 || col_nc == 0 {
        return Ok(0.0);
    }
    let cells = [t.both, t.w_only, t.c_only, t.neither]
        .iter()
        .map(|&x| xlnx(x as f64))
        .sum::<f64>();
    let margins = [row_w, row_nw, col_c, col_nc]
        .iter()
        .map(|&x| xlnx(x as f64))
        .sum::<f64>();
    let g2 = 2.0 * (cells - margins + xlnx(n as f64));
    Ok(g2.max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CwsConfig {
    pub min_joint: u64,
    pub score_threshold: f64,
    pub top_k: usize,
}

impl Default for CwsConfig {
    fn default() -> Self {
        CwsConfig {
            min_joint: 3,
            score_threshold: 10.83,
            top_k: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CwsMember {
    pub joint: u64,
    pub score: f64,
}

/// `C(w)`: content words significantly associated with `word`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CooccurrenceSet {
    pub word: String,
    pub members: BTreeMap<String, CwsMember>,
}

impl CooccurrenceSet {
    pub fn new(word: &str) -> Self {
        CooccurrenceSet {
            word: word.to_string(),
            members: BTreeMap::new(),
        }
    }

    pub fn from_counts(counts: &CooccurrenceCounts, cfg: &CwsConfig) -> Self {
        let mut scored: Vec<(&str, CwsMember)> = Vec::new();
        if counts.sentences > 0 {
            for (c, &joint) in &counts.joint {
                if joint < cfg.min_joint {
                    continue;
                }
                // total > 0 is guaranteed by sentences > 0
                let score = association_score(&counts.table(c)).unwrap_or(0.0);
                if score >= cfg.score_threshold {
                    scored.push((c, CwsMember { joint, score }));
                }
            }
        }
        scored.sort_by(|a, b| b.1.score.total_cmp(&a.1.score).then_with(|| a.0.cmp(b.0)));
        scored.truncate(cfg.top_k);
        CooccurrenceSet {
            word: counts.word.clone(),
            members: scored
                .into_iter()
                .map(|(c, m)| (c.to_string(), m))
                .collect(),
        }
    }

    pub fn contains(&self, c: &str) -> bool {
        self.members.contains_key(c)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn extract_cws<'a, I>(
    corpus: I,
    word: &str,
    cfg: &CwsConfig,
    fw: &FunctionWordList,
) -> CooccurrenceSet
where
    I: IntoIterator<Item = &'a Sentence>,
{
    CooccurrenceSet::from_counts(&count_cooccurrence(corpus, word, fw), cfg)
}

/// Writes `word<TAB>member<TAB>joint<TAB>score` lines, sets in word order.
pub fn write_cws<'a, I>(sets: I) -> String
where
    I: IntoIterator<Item = &'a CooccurrenceSet>,
{
    let mut out = String::new();
    for set in sets {
        for (c, m) in &set.members {
            out.push_str(&format!("{}\t{c}\t{}\t{}\n", set.word, m.joint, m.score));
        }
    }
    out
}

pub fn parse_cws(text: &str) -> Result<BTreeMap<String, CooccurrenceSet>> {
    let mut sets: BTreeMap<String, CooccurrenceSet> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = raw.split('\t').collect();
        if f.len() != 4 {
            return Err(Error::malformed(line, "expected 4 tab-separated fields"));
        }
        let joint = f[2]
            .parse()
            .map_err(|_| Error::malformed(line, "joint count is not an integer"))?;
        let score: f64 = f[3]
            .parse()
            .map_err(|_| Error::malformed(line, "score is not a number"))?;
        let set = sets
            .entry(f[0].to_string())
            .or_insert_with(|| CooccurrenceSet::new(f[0]));
        set.members
            .insert(f[1].to_string(), CwsMember { joint, score });
    }
    Ok(sets)
}

pub fn load_cws(path: impl AsRef<Path>) -> Result<BTreeMap<String, CooccurrenceSet>> {
    parse_cws(&read_to_string(path.as_ref())?)
}
