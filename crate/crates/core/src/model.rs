//! Count tables and smoothed parameter estimation with hypernym weighting.
//!
//! For a word `w`, an evaluated sense `m` and context word `c`:
//!
//! ```text
//! P(m|w)   = (Σ_m' CT(w,m')·WG(m,m') + 1) / (CT(w) + N1)
//! P(c|w,m) = (Σ_m' CT(w,m',c)·WG(m,m') + 1) / (Σ_m' CT(w,m')·WG(m,m') + N2)
//! ```
//!
//! where `m'` ranges over observed base tags and `WG` is [`wg`]. Counts are
//! kept as integers; the model file stores counts and configuration and
//! recomputes every probability on load.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use crate::bitext::TaggedInstance;
use crate::corpus::{parse_cws, write_cws, CooccurrenceSet};
use crate::error::{read_to_string, Error, Result};
use crate::inventory::{wg, ExtendedSenseSet, SenseId, SenseInventory, Taxonomy};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelConfig {
    /// WG weight for a hypernym of an observed tag.
    pub alpha: f64,
    /// Prior smoothing constant; `None` means `|S(w)|`.
    pub n1: Option<f64>,
    /// Likelihood smoothing constant; `None` means `|C(w)| + 1`.
    pub n2: Option<f64>,
    /// Score over `E(w)` instead of `M(w)`.
    pub use_ess: bool,
    /// Ignore context words outside `C(w)` when counting and scoring.
    pub cws_restrict: bool,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            alpha: 0.5,
            n1: None,
            n2: None,
            use_ess: true,
            cws_restrict: true,
        }
    }
}

impl ModelConfig {
    pub fn baseline() -> Self {
        ModelConfig {
            use_ess: false,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::Config(format!(
                "alpha must be in [0, 1], got {}",
                self.alpha
            )));
        }
        for (name, v) in [("n1", self.n1), ("n2", self.n2)] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(Error::Config(format!("{name} must be positive, got {v}")));
                }
            }
        }
        Ok(())
    }

    pub fn smoothing(&self, space_size: usize, vocabulary_size: usize) -> Smoothing {
        Smoothing {
            n1: self.n1.unwrap_or(space_size as f64),
            n2: self.n2.unwrap_or(vocabulary_size as f64 + 1.0),
        }
    }
}

/// Smoothing constants resolved for one word.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Smoothing {
    pub n1: f64,
    pub n2: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TagCounts {
    /// `CT(w,m)`
    pub count: u64,
    /// `CT(w,m,c)`
    pub context: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordCounts {
    /// `CT(w)`
    pub total: u64,
    pub tags: BTreeMap<SenseId, TagCounts>,
}

impl WordCounts {
    pub fn merge(&mut self, other: &WordCounts) {
        self.total += other.total;
        for (m, tc) in &other.tags {
            let mine = self.tags.entry(m.clone()).or_default();
            mine.count += tc.count;
            for (c, n) in &tc.context {
                *mine.context.entry(c.clone()).or_insert(0) += n;
            }
        }
    }

    /// `Σ_m' CT(w,m')·WG(m,m')`
    pub fn weighted_mass(&self, taxonomy: &Taxonomy, m: &SenseId, alpha: f64) -> f64 {
        self.tags
            .iter()
            .map(|(obs, tc)| tc.count as f64 * wg(taxonomy, m, obs, alpha))
            .sum()
    }

    /// `Σ_m' CT(w,m',c)·WG(m,m')`
    pub fn weighted_joint(&self, taxonomy: &Taxonomy, m: &SenseId, c: &str, alpha: f64) -> f64 {
        self.tags
            .iter()
            .map(|(obs, tc)| {
                tc.context.get(c).copied().unwrap_or(0) as f64 * wg(taxonomy, m, obs, alpha)
            })
            .sum()
    }
}

/// The `CT` tables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountTables {
    pub words: BTreeMap<String, WordCounts>,
}

impl CountTables {
    pub fn ct_w(&self, w: &str) -> u64 {
        self.words.get(w).map_or(0, |wc| wc.total)
    }

    pub fn ct_wm(&self, w: &str, m: &SenseId) -> u64 {
        self.words
            .get(w)
            .and_then(|wc| wc.tags.get(m))
            .map_or(0, |tc| tc.count)
    }

    pub fn ct_wmc(&self, w: &str, m: &SenseId, c: &str) -> u64 {
        self.words
            .get(w)
            .and_then(|wc| wc.tags.get(m))
            .and_then(|tc| tc.context.get(c))
            .copied()
            .unwrap_or(0)
    }

    /// Adds one instance, counting only context words accepted by `keep`.
    pub fn observe(&mut self, inst: &TaggedInstance, keep: impl Fn(&str) -> bool) {
        let wc = self.words.entry(inst.word.clone()).or_default();
        wc.total += 1;
        let tc = wc.tags.entry(inst.tag.clone()).or_default();
        tc.count += 1;
        for c in &inst.context {
            if c != &inst.word && keep(c) {
                *tc.context.entry(c.clone()).or_insert(0) += 1;
            }
        }
    }

    /// Cell-wise sum.
    pub fn merge(&mut self, other: &CountTables) {
        for (w, wc) in &other.words {
            self.words.entry(w.clone()).or_default().merge(wc);
        }
    }

    fn set(&mut self, w: &str, m: &SenseId, c: Option<&str>, n: u64) {
        let wc = self.words.entry(w.to_string()).or_default();
        let tc = wc.tags.entry(m.clone()).or_default();
        match c {
            Some(c) => {
                tc.context.insert(c.to_string(), n);
            }
            None => {
                wc.total += n;
                tc.count = n;
            }
        }
    }
}

pub fn accumulate_counts(
    instances: &[TaggedInstance],
    inv: &SenseInventory,
    cws: &BTreeMap<String, CooccurrenceSet>,
    cfg: &ModelConfig,
) -> Result<CountTables> {
    let mut ct = CountTables::default();
    for inst in instances {
        if !inv.contains_word(&inst.word) {
            return Err(Error::UnknownWord(inst.word.clone()));
        }
        if !inv.has_sense(&inst.word, &inst.tag) {
            return Err(Error::TagNotInInventory {
                word: inst.word.clone(),
                sense: inst.tag.to_string(),
            });
        }
        if cfg.cws_restrict {
            let set = cws.get(&inst.word);
            ct.observe(inst, |c| set.is_some_and(|s| s.contains(c)));
        } else {
            ct.observe(inst, |_| true);
        }
    }
    Ok(ct)
}

/// An unreduced ratio, so hand-computed values can be checked exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fraction {
    pub numerator: f64,
    pub denominator: f64,
}

impl Fraction {
    pub fn value(&self) -> f64 {
        self.numerator / self.denominator
    }
}

fn word_counts<'a>(ct: &'a CountTables, w: &str) -> &'a WordCounts {
    static EMPTY: std::sync::OnceLock<WordCounts> = std::sync::OnceLock::new();
    ct.words
        .get(w)
        .unwrap_or_else(|| EMPTY.get_or_init(WordCounts::default))
}

pub fn estimate_prior(
    ct: &CountTables,
    taxonomy: &Taxonomy,
    w: &str,
    m: &SenseId,
    alpha: f64,
    smoothing: Smoothing,
) -> Fraction {
    let wc = word_counts(ct, w);
    Fraction {
        numerator: wc.weighted_mass(taxonomy, m, alpha) + 1.0,
        denominator: wc.total as f64 + smoothing.n1,
    }
}

pub fn estimate_likelihood(
    ct: &CountTables,
    taxonomy: &Taxonomy,
    w: &str,
    m: &SenseId,
    c: &str,
    alpha: f64,
    smoothing: Smoothing,
) -> Fraction {
    let wc = word_counts(ct, w);
    Fraction {
        numerator: wc.weighted_joint(taxonomy, m, c, alpha) + 1.0,
        denominator: wc.weighted_mass(taxonomy, m, alpha) + smoothing.n2,
    }
}

/// Trained parameters for one word.
#[derive(Debug, Clone, PartialEq)]
pub struct WordModel {
    /// The sense space `S(w)`: `E(w)` or, without extension, `M(w)`.
    pub space: ExtendedSenseSet,
    /// Context words the likelihoods range over.
    pub vocabulary: BTreeSet<String>,
    pub smoothing: Smoothing,
    pub prior: BTreeMap<SenseId, f64>,
    pub likelihood: BTreeMap<SenseId, BTreeMap<String, f64>>,
    /// Vocabulary words with positive weighted count for some sense in `S(w)`.
    pub evidence: BTreeSet<String>,
}

impl WordModel {
    pub fn prior(&self, m: &SenseId) -> Option<f64> {
        self.prior.get(m).copied()
    }

    pub fn likelihood(&self, m: &SenseId, c: &str) -> Option<f64> {
        self.likelihood.get(m)?.get(c).copied()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SenseModel {
    pub config: ModelConfig,
    pub inventory: SenseInventory,
    pub taxonomy: Taxonomy,
    pub cws: BTreeMap<String, CooccurrenceSet>,
    pub counts: CountTables,
    pub words: BTreeMap<String, WordModel>,
}

pub fn train(
    instances: &[TaggedInstance],
    inv: &SenseInventory,
    taxonomy: &Taxonomy,
    cws: &BTreeMap<String, CooccurrenceSet>,
    cfg: &ModelConfig,
) -> Result<SenseModel> {
    cfg.validate()?;
    let counts = accumulate_counts(instances, inv, cws, cfg)?;
    SenseModel::from_counts(*cfg, inv.clone(), taxonomy.clone(), cws.clone(), counts)
}

impl SenseModel {
    /// Materializes every parameter from counts.
    pub fn from_counts(
        config: ModelConfig,
        inventory: SenseInventory,
        taxonomy: Taxonomy,
        cws: BTreeMap<String, CooccurrenceSet>,
        counts: CountTables,
    ) -> Result<Self> {
        config.validate()?;
        let mut words = BTreeMap::new();
        for w in inventory.words() {
            let space = if config.use_ess {
                ExtendedSenseSet::build(&inventory, &taxonomy, w)?
            } else {
                ExtendedSenseSet::base_only(&inventory, w)?
            };
            let wc = word_counts(&counts, w);
            let mut vocabulary: BTreeSet<String> = cws
                .get(w)
                .map(|s| s.members.keys().cloned().collect())
                .unwrap_or_default();
            if !config.cws_restrict {
                for tc in wc.tags.values() {
                    vocabulary.extend(tc.context.keys().cloned());
                }
            }
            let smoothing = config.smoothing(space.len(), vocabulary.len());
            let mut prior = BTreeMap::new();
            let mut likelihood = BTreeMap::new();
            let mut evidence = BTreeSet::new();
            for m in space.senses() {
                let p = estimate_prior(&counts, &taxonomy, w, m, config.alpha, smoothing);
                prior.insert(m.clone(), p.value());
                let mut per_c = BTreeMap::new();
                for c in &vocabulary {
                    let l =
                        estimate_likelihood(&counts, &taxonomy, w, m, c, config.alpha, smoothing);
                    if l.numerator > 1.0 {
                        evidence.insert(c.clone());
                    }
                    per_c.insert(c.clone(), l.value());
                }
                likelihood.insert(m.clone(), per_c);
            }
            words.insert(
                w.to_string(),
                WordModel {
                    space,
                    vocabulary,
                    smoothing,
                    prior,
                    likelihood,
                    evidence,
                },
            );
        }
        Ok(SenseModel {
            config,
            inventory,
            taxonomy,
            cws,
            counts,
            words,
        })
    }

    pub fn word(&self, w: &str) -> Result<&WordModel> {
        self.words
            .get(w)
            .ok_or_else(|| Error::UnknownWord(w.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let opt = |v: Option<f64>| v.map_or("auto".to_string(), |v| v.to_string());
        let _ = writeln!(out, "{MODEL_MAGIC} {MODEL_VERSION}");
        out.push_str("[config]\n");
        let _ = writeln!(out, "alpha = {}", c.alpha);
        let _ = writeln!(out, "n1 = {}", opt(c.n1));
        let _ = writeln!(out, "n2 = {}", opt(c.n2));
        let _ = writeln!(out, "use_ess = {}", c.use_ess);
        let _ = writeln!(out, "cws_restrict = {}", c.cws_restrict);
        out.push_str("[inventory]\n");
        out.push_str(&self.inventory.to_text());
        out.push_str("[taxonomy]\n");
        out.push_str(&self.taxonomy.to_text());
        out.push_str("[cws]\n");
        out.push_str(&write_cws(self.cws.values()));
        out.push_str("[counts]\n");
        for (w, wc) in &self.counts.words {
            for (m, tc) in &wc.tags {
                let _ = writeln!(out, "{w}\t{m}\t\t{}", tc.count);
                for (ctx, n) in &tc.context {
                    let _ = writeln!(out, "{w}\t{m}\t{ctx}\t{n}");
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::CorruptModel("empty file".into()))?;
        match header.split_once(' ') {
            Some((MODEL_MAGIC, v)) if v.trim() == MODEL_VERSION => {}
            Some((MODEL_MAGIC, v)) => return Err(Error::ModelVersion(v.trim().to_string())),
            _ => return Err(Error::CorruptModel(format!("bad header `{header}`"))),
        }

        let mut sections: BTreeMap<&str, String> = BTreeMap::new();
        let mut current: Option<&str> = None;
        for line in lines {
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                if !SECTIONS.contains(&name) {
                    return Err(Error::CorruptModel(format!("unknown section `{name}`")));
                }
                current = Some(SECTIONS.iter().find(|s| **s == name).unwrap());
                sections.entry(current.unwrap()).or_default();
                continue;
            }
            let name = current
                .ok_or_else(|| Error::CorruptModel("content before first section".into()))?;
            let body = sections.get_mut(name).unwrap();
            body.push_str(line);
            body.push('\n');
        }
        for s in SECTIONS {
            if !sections.contains_key(s) {
                return Err(Error::CorruptModel(format!("missing section `{s}`")));
            }
        }
        let corrupt = |section: &str, e: Error| Error::CorruptModel(format!("[{section}] {e}"));

        let config = parse_config(&sections["config"])?;
        let inventory =
            SenseInventory::parse(&sections["inventory"]).map_err(|e| corrupt("inventory", e))?;
        let taxonomy =
            Taxonomy::parse(&sections["taxonomy"]).map_err(|e| corrupt("taxonomy", e))?;
        let cws = parse_cws(&sections["cws"]).map_err(|e| corrupt("cws", e))?;

        let mut counts = CountTables::default();
        for (idx, line) in sections["counts"].lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split('\t').collect();
            let bad = || Error::CorruptModel(format!("[counts] line {}: `{line}`", idx + 1));
            if f.len() != 4 {
                return Err(bad());
            }
            let m = SenseId::parse(f[1]).ok_or_else(bad)?;
            let n: u64 = f[3].parse().map_err(|_| bad())?;
            let ctx = (!f[2].is_empty()).then_some(f[2]);
            counts.set(f[0], &m, ctx, n);
        }
        SenseModel::from_counts(config, inventory, taxonomy, cws, counts)
            .map_err(|e| Error::CorruptModel(e.to_string()))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&read_to_string(path.as_ref())?)
    }
}

pub const MODEL_MAGIC: &str = "wsd-model";
pub const MODEL_VERSION: &str = "1";
const SECTIONS: [&str; 5] = ["config", "inventory", "taxonomy", "cws", "counts"];

fn parse_config(body: &str) -> Result<ModelConfig> {
    let mut cfg = ModelConfig::default();
    let bad = |k: &str, v: &str| Error::CorruptModel(format!("[config] bad value `{v}` for `{k}`"));
    for line in body.lines().filter(|l| !l.trim().is_empty()) {
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::CorruptModel(format!("[config] `{line}`")))?;
        let (k, v) = (k.trim(), v.trim());
        let opt = |v: &str| -> Option<Option<f64>> {
            if v == "auto" {
                Some(None)
            } else {
                v.parse().ok().map(Some)
            }
        };
        match k {
            "alpha" => cfg.alpha = v.parse().map_err(|_| bad(k, v))?,
            "n1" => cfg.n1 = opt(v).ok_or_else(|| bad(k, v))?,
            "n2" => cfg.n2 = opt(v).ok_or_else(|| bad(k, v))?,
            "use_ess" => cfg.use_ess = v.parse().map_err(|_| bad(k, v))?,
            "cws_restrict" => cfg.cws_restrict = v.parse().map_err(|_| bad(k, v))?,
            _ => return Err(Error::CorruptModel(format!("[config] unknown key `{k}`"))),
        }
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(id: &str) -> SenseId {
        SenseId::new(id)
    }

    fn inst(w: &str, m: &str, ctx: &[&str]) -> TaggedInstance {
        TaggedInstance::new(w, s(m), ctx.iter().copied())
    }

    fn two_sense_inventory() -> SenseInventory {
        let mut inv = SenseInventory::new();
        inv.add_sense("w", s("m1"), ["x"]).unwrap();
        inv.add_sense("w", s("m2"), ["y"]).unwrap();
        inv
    }

    fn unrestricted() -> ModelConfig {
        ModelConfig {
            cws_restrict: false,
            ..ModelConfig::default()
        }
    }

    #[test]
    fn single_instance_counts() {
        let inv = two_sense_inventory();
        let ct = accumulate_counts(
            &[inst("w", "m1", &["c1", "c2"])],
            &inv,
            &BTreeMap::new(),
            &unrestricted(),
        )
        .unwrap();
        assert_eq!(ct.ct_w("w"), 1);
        assert_eq!(ct.ct_wm("w", &s("m1")), 1);
        assert_eq!(ct.ct_wmc("w", &s("m1"), "c1"), 1);
        assert_eq!(ct.ct_wmc("w", &s("m1"), "c2"), 1);
        let empty = accumulate_counts(&[], &inv, &BTreeMap::new(), &unrestricted()).unwrap();
        assert_eq!(empty, CountTables::default());
    }

    #[test]
    fn ct_w_is_sum_of_tags() {
        let inv = two_sense_inventory();
        let mut data = vec![inst("w", "m1", &[]); 3];
        data.extend(vec![inst("w", "m2", &[]); 2]);
        let ct = accumulate_counts(&data, &inv, &BTreeMap::new(), &unrestricted()).unwrap();
        assert_eq!(ct.ct_w("w"), 5);
        assert_eq!(ct.ct_wm("w", &s("m1")) + ct.ct_wm("w", &s("m2")), 5);
    }

    #[test]
    fn cws_restriction_drops_context() {
        let inv = two_sense_inventory();
        let mut set = CooccurrenceSet::new("w");
        set.members.insert(
            "c1".into(),
            crate::corpus::CwsMember {
                joint: 5,
                score: 20.0,
            },
        );
        let cws = BTreeMap::from([("w".to_string(), set)]);
        let ct = accumulate_counts(
            &[inst("w", "m1", &["c1", "c2"])],
            &inv,
            &cws,
            &ModelConfig::default(),
        )
        .unwrap();
        assert_eq!(ct.ct_wmc("w", &s("m1"), "c1"), 1);
        assert_eq!(ct.ct_wmc("w", &s("m1"), "c2"), 0);
    }

    #[test]
    fn rejects_foreign_tags_and_words() {
        let inv = two_sense_inventory();
        let cfg = ModelConfig::default();
        assert!(matches!(
            accumulate_counts(&[inst("w", "m9", &[])], &inv, &BTreeMap::new(), &cfg),
            Err(Error::TagNotInInventory { .. })
        ));
        assert!(matches!(
            train(
                &[inst("v", "m1", &[])],
                &inv,
                &Taxonomy::empty(),
                &BTreeMap::new(),
                &cfg
            ),
            Err(Error::UnknownWord(_))
        ));
    }

    #[test]
    fn unseen_word_prior_is_uniform_floor() {
        let ct = CountTables::default();
        let sm = Smoothing { n1: 3.0, n2: 1.0 };
        let p = estimate_prior(&ct, &Taxonomy::empty(), "w", &s("m"), 0.5, sm);
        assert_eq!((p.numerator, p.denominator), (1.0, 3.0));
    }

    #[test]
    fn unseen_context_word_gets_numerator_floor() {
        let inv = two_sense_inventory();
        let ct = accumulate_counts(
            &vec![inst("w", "m1", &["a"]); 6],
            &inv,
            &BTreeMap::new(),
            &unrestricted(),
        )
        .unwrap();
        let sm = Smoothing { n1: 2.0, n2: 4.0 };
        let l = estimate_likelihood(&ct, &Taxonomy::empty(), "w", &s("m1"), "zzz", 0.5, sm);
        assert_eq!((l.numerator, l.denominator), (1.0, 10.0));
    }

    #[test]
    fn zero_instances_still_gives_a_model() {
        let inv = two_sense_inventory();
        let model = train(
            &[],
            &inv,
            &Taxonomy::empty(),
            &BTreeMap::new(),
            &ModelConfig::default(),
        )
        .unwrap();
        let wm = model.word("w").unwrap();
        assert_eq!(wm.prior(&s("m1")), Some(0.5));
        assert_eq!(wm.prior(&s("m2")), Some(0.5));
    }

    #[test]
    fn sense_space_follows_use_ess() {
        let inv = two_sense_inventory();
        let tax = Taxonomy::from_edges([(s("m1"), s("h1"))]).unwrap();
        let base = train(&[], &inv, &tax, &BTreeMap::new(), &ModelConfig::baseline()).unwrap();
        assert_eq!(base.word("w").unwrap().space.len(), 2);
        let ess = train(&[], &inv, &tax, &BTreeMap::new(), &ModelConfig::default()).unwrap();
        assert_eq!(ess.word("w").unwrap().space.len(), 3);
    }

    #[test]
    fn config_validation() {
        let bad = ModelConfig {
            alpha: 1.5,
            ..ModelConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = ModelConfig {
            n2: Some(0.0),
            ..ModelConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn model_file_errors() {
        assert!(matches!(
            SenseModel::parse("wsd-model 9\n"),
            Err(Error::ModelVersion(v)) if v == "9"
        ));
        assert!(matches!(SenseModel::parse(""), Err(Error::CorruptModel(_))));
        assert!(matches!(
            SenseModel::parse("wsd-model 1\n[config]\nalpha = x\n"),
            Err(Error::CorruptModel(_))
        ));
        assert!(matches!(
            SenseModel::parse("wsd-model 1\n[config]\n"),
            Err(Error::CorruptModel(_))
        ));
    }

    #[test]
    fn round_trip_with_overrides() {
        let inv = two_sense_inventory();
        let cfg = ModelConfig {
            alpha: 0.3,
            n1: Some(2.5),
            n2: Some(7.0),
            use_ess: false,
            cws_restrict: false,
        };
        let data = [inst("w", "m1", &["a", "b"]), inst("w", "m2", &["b"])];
        let model = train(&data, &inv, &Taxonomy::empty(), &BTreeMap::new(), &cfg).unwrap();
        let back = SenseModel::parse(&model.to_text()).unwrap();
        assert_eq!(back, model);
    }
}
