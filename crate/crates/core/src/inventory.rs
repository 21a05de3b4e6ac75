//! Sense inventory, is-a taxonomy and extended sense sets.
//!
//! The inventory lists the base senses `M(w)` of every source word together
//! with the target-language words that translate each sense. The taxonomy is
//! a DAG of `child -> parent` edges; `isa` is its strict transitive closure.
//! An [`ExtendedSenseSet`] adds to `M(w)` every ancestor that generalizes
//! exactly one base sense of `w`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use crate::error::{read_to_string, Error, Result};

/// A semantic tag. Compared by exact string equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SenseId(String);

impl SenseId {
    /// Panics if `id` is empty or contains whitespace; use [`SenseId::parse`]
    /// for untrusted input.
    pub fn new(id: impl Into<String>) -> Self {
        let id = id.into();
        assert!(is_valid_id(&id), "invalid sense id {id:?}");
        SenseId(id)
    }

    pub fn parse(id: &str) -> Option<Self> {
        is_valid_id(id).then(|| SenseId(id.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

fn is_valid_id(id: &str) -> bool {
    !id.is_empty() && !id.chars().any(char::is_whitespace)
}

impl fmt::Display for SenseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for SenseId {
    fn from(s: &str) -> Self {
        SenseId::new(s)
    }
}

impl AsRef<str> for SenseId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenseEntry {
    pub id: SenseId,
    pub translations: BTreeSet<String>,
}

/// Per-word base sense lists, in dictionary order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SenseInventory {
    entries: BTreeMap<String, Vec<SenseEntry>>,
}

impl SenseInventory {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one sense of `word`. Words are lowercased to match tokenized text,
    /// as are translation words.
    pub fn add_sense<I, S>(&mut self, word: &str, sense: SenseId, translations: I) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.add_sense_at(0, word, sense, translations)
    }

    fn add_sense_at<I, S>(
        &mut self,
        line: usize,
        word: &str,
        sense: SenseId,
        translations: I,
    ) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let word = word.to_lowercase();
        let translations: BTreeSet<String> = translations
            .into_iter()
            .map(|t| t.as_ref().trim().to_lowercase())
            .filter(|t| !t.is_empty())
            .collect();
        if translations.is_empty() {
            return Err(Error::EmptyTranslations {
                line,
                word,
                sense: sense.0,
            });
        }
        let senses = self.entries.entry(word.clone()).or_default();
        if senses.iter().any(|e| e.id == sense) {
            return Err(Error::DuplicateSense {
                line,
                word,
                sense: sense.0,
            });
        }
        senses.push(SenseEntry {
            id: sense,
            translations,
        });
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut inv = SenseInventory::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = raw.split('\t').collect();
            if fields.len() != 3 {
                return Err(Error::malformed(
                    line,
                    format!("expected 3 tab-separated fields, found {}", fields.len()),
                ));
            }
            let word = fields[0].trim();
            if word.is_empty() || word.chars().any(char::is_whitespace) {
                return Err(Error::malformed(line, "empty or multi-token word"));
            }
            let sense = SenseId::parse(fields[1].trim())
                .ok_or_else(|| Error::malformed(line, "invalid sense id"))?;
            inv.add_sense_at(line, word, sense, fields[2].split(','))?;
        }
        Ok(inv)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&read_to_string(path.as_ref())?)
    }

    /// Serializes in the dictionary file format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (word, senses) in &self.entries {
            for e in senses {
                let tr: Vec<&str> = e.translations.iter().map(String::as_str).collect();
                out.push_str(&format!("{word}\t{}\t{}\n", e.id, tr.join(",")));
            }
        }
        out
    }

    pub fn senses(&self, word: &str) -> Option<&[SenseEntry]> {
        self.entries.get(word).map(Vec::as_slice)
    }

    /// `M(w)` as ids.
    pub fn base_senses(&self, word: &str) -> Option<Vec<SenseId>> {
        self.senses(word)
            .map(|s| s.iter().map(|e| e.id.clone()).collect())
    }

    pub fn contains_word(&self, word: &str) -> bool {
        self.entries.contains_key(word)
    }

    pub fn has_sense(&self, word: &str, sense: &SenseId) -> bool {
        self.senses(word)
            .is_some_and(|s| s.iter().any(|e| &e.id == sense))
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Is-a DAG over sense ids with a precomputed strict-ancestor closure.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Taxonomy {
    parents: BTreeMap<SenseId, BTreeSet<SenseId>>,
    ancestors: BTreeMap<SenseId, BTreeSet<SenseId>>,
}

impl Taxonomy {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds the taxonomy from `(child, parent)` edges, rejecting self-loops
    /// and cycles.
    pub fn from_edges<I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SenseId, SenseId)>,
    {
        let mut parents: BTreeMap<SenseId, BTreeSet<SenseId>> = BTreeMap::new();
        for (child, parent) in edges {
            if child == parent {
                return Err(Error::SelfEdge(child.0));
            }
            parents.entry(child).or_default().insert(parent);
        }
        let ancestors = close(&parents)?;
        Ok(Taxonomy { parents, ancestors })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = raw.split('\t').map(str::trim).collect();
            if fields.len() != 2 {
                return Err(Error::malformed(line, "expected `child<TAB>parent`"));
            }
            let child = SenseId::parse(fields[0])
                .ok_or_else(|| Error::malformed(line, "invalid child sense id"))?;
            let parent = SenseId::parse(fields[1])
                .ok_or_else(|| Error::malformed(line, "invalid parent sense id"))?;
            edges.push((child, parent));
        }
        Self::from_edges(edges)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&read_to_string(path.as_ref())?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (child, ps) in &self.parents {
            for p in ps {
                out.push_str(&format!("{child}\t{p}\n"));
            }
        }
        out
    }

    pub fn edges(&self) -> impl Iterator<Item = (&SenseId, &SenseId)> {
        self.parents
            .iter()
            .flat_map(|(c, ps)| ps.iter().map(move |p| (c, p)))
    }

    pub fn parents(&self, m: &SenseId) -> impl Iterator<Item = &SenseId> {
        self.parents.get(m).into_iter().flatten()
    }

    /// Strict ancestors of `m`; empty for unknown ids.
    pub fn ancestors(&self, m: &SenseId) -> impl Iterator<Item = &SenseId> {
        self.ancestors.get(m).into_iter().flatten()
    }

    /// True iff `hypernym` is reachable from `m` by one or more parent edges.
    pub fn isa(&self, m: &SenseId, hypernym: &SenseId) -> bool {
        self.ancestors.get(m).is_some_and(|a| a.contains(hypernym))
    }

    /// Every id mentioned by an edge.
    pub fn nodes(&self) -> BTreeSet<&SenseId> {
        self.edges().flat_map(|(c, p)| [c, p]).collect()
    }
}

fn close(
    parents: &BTreeMap<SenseId, BTreeSet<SenseId>>,
) -> Result<BTreeMap<SenseId, BTreeSet<SenseId>>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Active,
        Done,
    }

    fn visit(
        node: &SenseId,
        parents: &BTreeMap<SenseId, BTreeSet<SenseId>>,
        marks: &mut BTreeMap<SenseId, Mark>,
        out: &mut BTreeMap<SenseId, BTreeSet<SenseId>>,
    ) -> Result<()> {
        match marks.get(node) {
            Some(Mark::Done) => return Ok(()),
            Some(Mark::Active) => return Err(Error::Cycle(node.0.clone())),
            None => {}
        }
        marks.insert(node.clone(), Mark::Active);
        let mut acc = BTreeSet::new();
        for p in parents.get(node).into_iter().flatten() {
            visit(p, parents, marks, out)?;
            acc.insert(p.clone());
            if let Some(up) = out.get(p) {
                acc.extend(up.iter().cloned());
            }
        }
        marks.insert(node.clone(), Mark::Done);
        if !acc.is_empty() {
            out.insert(node.clone(), acc);
        }
        Ok(())
    }

    let mut marks = BTreeMap::new();
    let mut out = BTreeMap::new();
    for node in parents.keys() {
        visit(node, parents, &mut marks, &mut out)?;
    }
    Ok(out)
}

/// `E(w)`: the base senses of a word plus the hypernyms owned by exactly one
/// of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedSenseSet {
    pub word: String,
    pub base: Vec<SenseId>,
    /// Virtual sense -> the unique base sense it generalizes.
    pub virtual_senses: BTreeMap<SenseId, SenseId>,
}

impl ExtendedSenseSet {
    pub fn build(inv: &SenseInventory, taxonomy: &Taxonomy, word: &str) -> Result<Self> {
        let base = inv
            .base_senses(word)
            .ok_or_else(|| Error::UnknownWord(word.to_string()))?;
        let base_set: BTreeSet<&SenseId> = base.iter().collect();
        let mut virtual_senses = BTreeMap::new();
        for m in &base {
            for h in taxonomy.ancestors(m) {
                if base_set.contains(h) {
                    continue;
                }
                let shared = base
                    .iter()
                    .any(|other| other != m && taxonomy.isa(other, h));
                if !shared {
                    virtual_senses.insert(h.clone(), m.clone());
                }
            }
        }
        Ok(ExtendedSenseSet {
            word: word.to_string(),
            base,
            virtual_senses,
        })
    }

    /// Only the base senses; the sense space when extension is disabled.
    pub fn base_only(inv: &SenseInventory, word: &str) -> Result<Self> {
        let base = inv
            .base_senses(word)
            .ok_or_else(|| Error::UnknownWord(word.to_string()))?;
        Ok(ExtendedSenseSet {
            word: word.to_string(),
            base,
            virtual_senses: BTreeMap::new(),
        })
    }

    /// Base senses in dictionary order, then virtual senses in id order.
    pub fn senses(&self) -> impl Iterator<Item = &SenseId> {
        self.base.iter().chain(self.virtual_senses.keys())
    }

    pub fn len(&self) -> usize {
        self.base.len() + self.virtual_senses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, m: &SenseId) -> bool {
        self.base.contains(m) || self.virtual_senses.contains_key(m)
    }

    pub fn is_virtual(&self, m: &SenseId) -> bool {
        self.virtual_senses.contains_key(m)
    }

    /// Maps a member of `E(w)` back to the base sense it stands for.
    pub fn base_sense_of(&self, m: &SenseId) -> Result<&SenseId> {
        if let Some(b) = self.base.iter().find(|b| *b == m) {
            return Ok(b);
        }
        self.virtual_senses
            .get(m)
            .ok_or_else(|| Error::SenseNotInSpace {
                word: self.word.clone(),
                sense: m.0.clone(),
            })
    }
}

/// Count-transfer weight from an observed tag `observed` to an evaluated tag
/// `evaluated`: 1 when equal, `alpha` when `evaluated` is a strict hypernym
/// of `observed`, 0 otherwise.
pub fn wg(taxonomy: &Taxonomy, evaluated: &SenseId, observed: &SenseId, alpha: f64) -> f64 {
    if evaluated == observed {
        1.0
    } else if taxonomy.isa(observed, evaluated) {
        alpha
    } else {
        0.0
    }
}
