//! The `wsd` command line.
//!
//! Every long option can also come from a `--config` file of `key = value`
//! lines, using the option name as the key. Flags given on the command line
//! win over the file.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use wsd_core::bitext::{
    align_sentences, extract_training, load_document, load_instances, parse_pre_aligned,
    write_instances, AlignConfig, SplitSpec,
};
use wsd_core::corpus::{
    extract_cws, load_cws, tokenize, write_cws, CooccurrenceSet, CwsConfig, FunctionWordList,
};
use wsd_core::disambig::{tag_file, write_records, Policy};
use wsd_core::harness::{
    aggregate, compare, evaluate, generate_synthetic, load_config, run_experiment, ExperimentArm,
    ExperimentConfigs, SenseCounts, SynthSpec,
};
use wsd_core::inventory::{SenseInventory, Taxonomy};
use wsd_core::model::{train, ModelConfig, SenseModel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Data(#[from] wsd_core::Error),
}

impl CliError {
    fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Data(wsd_core::Error::Io {
            path: path.to_path_buf(),
            source: e,
        })
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "wsd",
    version,
    about = "Noun sense selection with co-occurrence sets and extended sense sets",
    arg_required_else_help = true
)]
struct Cli {
    /// File of `key = value` defaults for any long option
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extract co-occurrence word sets from a raw corpus
    Cws(CwsArgs),
    /// Align a bitext and extract sense-tagged instances
    Extract(ExtractArgs),
    /// Train a model from tagged instances
    Train(TrainArgs),
    /// Tag every known word in a corpus
    Tag(TagArgs),
    /// Evaluate a model on tagged instances, or report on raw counts
    Eval(EvalArgs),
    /// Compare the base-sense and extended-sense configurations
    Experiment(ExperimentArgs),
    /// Write a synthetic fixture corpus
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
struct CwsArgs {
    /// Raw corpus, one sentence per line
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Comma-separated target words
    #[arg(long)]
    words: Option<String>,
    /// Use every dictionary word as a target
    #[arg(long)]
    dict: Option<PathBuf>,
    #[arg(long)]
    function_words: Option<PathBuf>,
    #[arg(long)]
    min_joint: Option<u64>,
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long)]
    top_k: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExtractArgs {
    #[arg(long)]
    dict: Option<PathBuf>,
    /// Source-language document
    #[arg(long)]
    source: Option<PathBuf>,
    /// Target-language document
    #[arg(long)]
    target: Option<PathBuf>,
    /// Pre-aligned `source<TAB>target` file
    #[arg(long)]
    pairs: Option<PathBuf>,
    #[arg(long)]
    function_words: Option<PathBuf>,
    #[arg(long)]
    min_anchors: Option<usize>,
    #[arg(long)]
    max_length_ratio: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args, Clone)]
struct ModelArgs {
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    n1: Option<f64>,
    #[arg(long)]
    n2: Option<f64>,
    #[arg(long)]
    cws_restrict: Option<bool>,
}

#[derive(Debug, Args)]
struct TrainArgs {
    #[arg(long)]
    dict: Option<PathBuf>,
    #[arg(long)]
    taxonomy: Option<PathBuf>,
    #[arg(long)]
    instances: Option<PathBuf>,
    #[arg(long)]
    cws: Option<PathBuf>,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    use_ess: Option<bool>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TagArgs {
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Override the model's default abstention policy
    #[arg(long)]
    abstain: Option<bool>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long)]
    instances: Option<PathBuf>,
    /// Per-sense `word<TAB>sense<TAB>gold<TAB>correct<TAB>estimated` counts
    #[arg(long)]
    counts: Option<PathBuf>,
    #[arg(long)]
    abstain: Option<bool>,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    #[arg(long)]
    dict: Option<PathBuf>,
    #[arg(long)]
    taxonomy: Option<PathBuf>,
    /// All instances, split by --train-fraction and --seed
    #[arg(long)]
    instances: Option<PathBuf>,
    /// Fixed training split (with --test)
    #[arg(long)]
    train: Option<PathBuf>,
    #[arg(long)]
    test: Option<PathBuf>,
    #[arg(long)]
    cws: Option<PathBuf>,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    train_fraction: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    baseline_abstain: Option<bool>,
    #[arg(long)]
    ess_abstain: Option<bool>,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    word: Option<String>,
    #[arg(long)]
    senses: Option<usize>,
    #[arg(long)]
    taxonomy_depth: Option<usize>,
    #[arg(long)]
    vocabulary_per_sense: Option<usize>,
    #[arg(long)]
    heldout_per_sense: Option<usize>,
    #[arg(long)]
    shared_vocabulary: Option<usize>,
    #[arg(long)]
    context_words: Option<usize>,
    #[arg(long)]
    train_per_sense: Option<usize>,
    #[arg(long)]
    test_per_sense: Option<usize>,
    #[arg(long)]
    overlap: Option<f64>,
    #[arg(long)]
    sparsity: Option<f64>,
    #[arg(long)]
    background_sentences: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

const CONFIG_KEYS: &[&str] = &[
    "corpus",
    "words",
    "dict",
    "function-words",
    "min-joint",
    "threshold",
    "top-k",
    "out",
    "source",
    "target",
    "pairs",
    "min-anchors",
    "max-length-ratio",
    "taxonomy",
    "instances",
    "cws",
    "alpha",
    "n1",
    "n2",
    "cws-restrict",
    "use-ess",
    "model",
    "abstain",
    "counts",
    "train",
    "test",
    "train-fraction",
    "seed",
    "baseline-abstain",
    "ess-abstain",
    "out-dir",
    "word",
    "senses",
    "taxonomy-depth",
    "vocabulary-per-sense",
    "heldout-per-sense",
    "shared-vocabulary",
    "context-words",
    "train-per-sense",
    "test-per-sense",
    "overlap",
    "sparsity",
    "background-sentences",
];

/// Flag values backed by config-file defaults.
struct Settings {
    file: BTreeMap<String, String>,
}

impl Settings {
    fn get<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("config: invalid value `{raw}` for `{key}`"))),
        }
    }

    fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<T> {
        self.get(flag, key)?
            .ok_or_else(|| CliError::Usage(format!("missing required option --{key}")))
    }

    fn model_config(
        &self,
        args: &ModelArgs,
        use_ess: bool,
        have_cws: bool,
    ) -> CliResult<ModelConfig> {
        let d = ModelConfig::default();
        let cfg = ModelConfig {
            alpha: self.get(args.alpha, "alpha")?.unwrap_or(d.alpha),
            n1: self.get(args.n1, "n1")?,
            n2: self.get(args.n2, "n2")?,
            use_ess,
            // without a co-occurrence file the vocabulary comes from training contexts
            cws_restrict: self
                .get(args.cws_restrict, "cws-restrict")?
                .unwrap_or(have_cws),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

fn function_words(s: &Settings, flag: Option<PathBuf>) -> CliResult<FunctionWordList> {
    Ok(match s.get(flag, "function-words")? {
        Some(p) => FunctionWordList::load(p)?,
        None => FunctionWordList::english(),
    })
}

fn taxonomy(s: &Settings, flag: Option<PathBuf>) -> CliResult<Taxonomy> {
    Ok(match s.get(flag, "taxonomy")? {
        Some(p) => Taxonomy::load(p)?,
        None => Taxonomy::empty(),
    })
}

fn cws_file(
    s: &Settings,
    flag: Option<PathBuf>,
) -> CliResult<Option<BTreeMap<String, CooccurrenceSet>>> {
    Ok(match s.get(flag, "cws")? {
        Some(p) => Some(load_cws(p)?),
        None => None,
    })
}

fn cmd_cws(s: &Settings, a: CwsArgs, out: &mut dyn Write) -> CliResult<()> {
    let corpus_path: PathBuf = s.require(a.corpus, "corpus")?;
    let mut targets: Vec<String> = match s.get(a.words, "words")? {
        Some(w) => w
            .split(',')
            .map(|w| w.trim().to_lowercase())
            .filter(|w| !w.is_empty())
            .collect(),
        None => Vec::new(),
    };
    if let Some(dict) = s.get(a.dict, "dict")? {
        targets.extend(SenseInventory::load(dict)?.words().map(str::to_string));
    }
    if targets.is_empty() {
        return Err(CliError::Usage("cws needs --words or --dict".into()));
    }
    targets.sort();
    targets.dedup();
    let d = CwsConfig::default();
    let cfg = CwsConfig {
        min_joint: s.get(a.min_joint, "min-joint")?.unwrap_or(d.min_joint),
        score_threshold: s
            .get(a.threshold, "threshold")?
            .unwrap_or(d.score_threshold),
        top_k: s.get(a.top_k, "top-k")?.unwrap_or(d.top_k),
    };
    if cfg.min_joint == 0 || cfg.top_k == 0 {
        return Err(CliError::Usage(
            "--min-joint and --top-k must be at least 1".into(),
        ));
    }
    let fw = function_words(s, a.function_words)?;
    let text = fs::read_to_string(&corpus_path).map_err(|e| CliError::io(&corpus_path, e))?;
    let corpus: Vec<_> = text.lines().map(tokenize).collect();
    let sets: Vec<CooccurrenceSet> = targets
        .iter()
        .map(|w| extract_cws(&corpus, w, &cfg, &fw))
        .collect();
    emit(out, s.get(a.out, "out")?.as_deref(), &write_cws(&sets))
}

fn cmd_extract(s: &Settings, a: ExtractArgs, out: &mut dyn Write) -> CliResult<()> {
    let inv = SenseInventory::load(s.require::<PathBuf>(a.dict, "dict")?)?;
    let fw = function_words(s, a.function_words)?;
    let pairs = match (
        s.get(a.pairs, "pairs")?,
        s.get(a.source, "source")?,
        s.get(a.target, "target")?,
    ) {
        (Some(p), None, None) => {
            let text = fs::read_to_string(&p).map_err(|e| CliError::io(&p, e))?;
            parse_pre_aligned(&text)?
        }
        (None, Some(src), Some(tgt)) => {
            let d = AlignConfig::default();
            let cfg = AlignConfig {
                min_anchor_count: s
                    .get(a.min_anchors, "min-anchors")?
                    .unwrap_or(d.min_anchor_count),
                max_length_ratio: s
                    .get(a.max_length_ratio, "max-length-ratio")?
                    .unwrap_or(d.max_length_ratio),
            };
            align_sentences(&load_document(src)?, &load_document(tgt)?, &inv, &cfg)
        }
        _ => {
            return Err(CliError::Usage(
                "extract needs either --pairs or both --source and --target".into(),
            ))
        }
    };
    let instances = extract_training(&pairs, &inv, &fw);
    emit(
        out,
        s.get(a.out, "out")?.as_deref(),
        &write_instances(&instances),
    )
}

fn cmd_train(s: &Settings, a: TrainArgs, out: &mut dyn Write) -> CliResult<()> {
    let out_path: PathBuf = s.require(a.out, "out")?;
    let inv = SenseInventory::load(s.require::<PathBuf>(a.dict, "dict")?)?;
    let tax = taxonomy(s, a.taxonomy)?;
    let instances = load_instances(s.require::<PathBuf>(a.instances, "instances")?)?;
    let cws = cws_file(s, a.cws)?;
    let use_ess = s.get(a.use_ess, "use-ess")?.unwrap_or(true);
    let cfg = s.model_config(&a.model, use_ess, cws.is_some())?;
    let model = train(&instances, &inv, &tax, &cws.unwrap_or_default(), &cfg)?;
    model.save(&out_path)?;
    writeln!(
        out,
        "trained {} words from {} instances -> {}",
        model.words.len(),
        instances.len(),
        out_path.display()
    )
    .map_err(|e| CliError::io(Path::new("<stdout>"), e))
}

fn policy_for(s: &Settings, model: &SenseModel, flag: Option<bool>) -> CliResult<Policy> {
    Ok(match s.get(flag, "abstain")? {
        Some(b) => Policy {
            abstain_on_no_evidence: b,
        },
        None => Policy::for_config(&model.config),
    })
}

fn cmd_tag(s: &Settings, a: TagArgs, out: &mut dyn Write) -> CliResult<()> {
    let model = SenseModel::load(s.require::<PathBuf>(a.model, "model")?)?;
    let policy = policy_for(s, &model, a.abstain)?;
    let records = tag_file(&model, s.require::<PathBuf>(a.corpus, "corpus")?, policy)?;
    emit(
        out,
        s.get(a.out, "out")?.as_deref(),
        &write_records(&records),
    )
}

fn cmd_eval(s: &Settings, a: EvalArgs, out: &mut dyn Write) -> CliResult<()> {
    let report = match (s.get(a.counts, "counts")?, s.get(a.model, "model")?) {
        (Some(counts), None) => aggregate(&SenseCounts::load(counts)?)?,
        (None, Some(model)) => {
            let model = SenseModel::load(model)?;
            let policy = policy_for(s, &model, a.abstain)?;
            let test = load_instances(s.require::<PathBuf>(a.instances, "instances")?)?;
            evaluate(&model, &test, policy)?.report
        }
        _ => {
            return Err(CliError::Usage(
                "eval needs either --counts or --model with --instances".into(),
            ))
        }
    };
    emit(out, None, &report.render())
}

fn cmd_experiment(s: &Settings, a: ExperimentArgs, out: &mut dyn Write) -> CliResult<()> {
    let inv = SenseInventory::load(s.require::<PathBuf>(a.dict, "dict")?)?;
    let tax = taxonomy(s, a.taxonomy)?;
    let cws = cws_file(s, a.cws)?;
    let have_cws = cws.is_some();
    let cws = cws.unwrap_or_default();
    let mut arms = ExperimentConfigs {
        baseline: ExperimentArm::new(s.model_config(&a.model, false, have_cws)?),
        ess: ExperimentArm::new(s.model_config(&a.model, true, have_cws)?),
    };
    if let Some(b) = s.get(a.baseline_abstain, "baseline-abstain")? {
        arms.baseline.policy.abstain_on_no_evidence = b;
    }
    if let Some(b) = s.get(a.ess_abstain, "ess-abstain")? {
        arms.ess.policy.abstain_on_no_evidence = b;
    }
    let outcome = match (
        s.get(a.instances, "instances")?,
        s.get(a.train, "train")?,
        s.get(a.test, "test")?,
    ) {
        (Some(all), None, None) => {
            let d = SplitSpec::default();
            let spec = SplitSpec {
                train_fraction: s
                    .get(a.train_fraction, "train-fraction")?
                    .unwrap_or(d.train_fraction),
                seed: s.get(a.seed, "seed")?.unwrap_or(d.seed),
            };
            run_experiment(&load_instances(all)?, &inv, &tax, &cws, &arms, &spec)?
        }
        (None, Some(tr), Some(te)) => compare(
            &load_instances(tr)?,
            &load_instances(te)?,
            &inv,
            &tax,
            &cws,
            &arms,
        )?,
        _ => {
            return Err(CliError::Usage(
                "experiment needs either --instances or both --train and --test".into(),
            ))
        }
    };
    emit(out, None, &outcome.render())
}

fn cmd_synth(s: &Settings, a: SynthArgs, out: &mut dyn Write) -> CliResult<()> {
    let dir: PathBuf = s.require(a.out_dir, "out-dir")?;
    let d = SynthSpec::default();
    let spec = SynthSpec {
        word: s.get(a.word, "word")?.unwrap_or(d.word),
        senses: s.get(a.senses, "senses")?.unwrap_or(d.senses),
        taxonomy_depth: s
            .get(a.taxonomy_depth, "taxonomy-depth")?
            .unwrap_or(d.taxonomy_depth),
        vocabulary_per_sense: s
            .get(a.vocabulary_per_sense, "vocabulary-per-sense")?
            .unwrap_or(d.vocabulary_per_sense),
        heldout_per_sense: s
            .get(a.heldout_per_sense, "heldout-per-sense")?
            .unwrap_or(d.heldout_per_sense),
        shared_vocabulary: s
            .get(a.shared_vocabulary, "shared-vocabulary")?
            .unwrap_or(d.shared_vocabulary),
        context_words: s
            .get(a.context_words, "context-words")?
            .unwrap_or(d.context_words),
        train_per_sense: s
            .get(a.train_per_sense, "train-per-sense")?
            .unwrap_or(d.train_per_sense),
        test_per_sense: s
            .get(a.test_per_sense, "test-per-sense")?
            .unwrap_or(d.test_per_sense),
        overlap: s.get(a.overlap, "overlap")?.unwrap_or(d.overlap),
        sparsity: s.get(a.sparsity, "sparsity")?.unwrap_or(d.sparsity),
        background_sentences: s
            .get(a.background_sentences, "background-sentences")?
            .unwrap_or(d.background_sentences),
        seed: s.get(a.seed, "seed")?.unwrap_or(d.seed),
        ..d
    };
    if let Err(e) = spec.validate() {
        return Err(CliError::Usage(e.to_string()));
    }
    let corpus = generate_synthetic(&spec)?;
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    for (name, text) in corpus.files() {
        let p = dir.join(name);
        fs::write(&p, text).map_err(|e| CliError::io(&p, e))?;
    }
    writeln!(out, "wrote synthetic corpus to {}", dir.display())
        .map_err(|e| CliError::io(Path::new("<stdout>"), e))
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    let file = match &cli.config {
        Some(p) => load_config(p).map_err(|e| CliError::Usage(format!("config: {e}")))?,
        None => BTreeMap::new(),
    };
    if let Some(k) = file.keys().find(|k| !CONFIG_KEYS.contains(&k.as_str())) {
        return Err(CliError::Usage(format!("config: unknown key `{k}`")));
    }
    let s = Settings { file };
    match cli.command {
        Command::Cws(a) => cmd_cws(&s, a, out),
        Command::Extract(a) => cmd_extract(&s, a, out),
        Command::Train(a) => cmd_train(&s, a, out),
        Command::Tag(a) => cmd_tag(&s, a, out),
        Command::Eval(a) => cmd_eval(&s, a, out),
        Command::Experiment(a) => cmd_experiment(&s, a, out),
        Command::Synth(a) => cmd_synth(&s, a, out),
    }
}

/// Runs the CLI and returns the process exit code: 0 on success, 1 for usage
/// errors, 2 for data errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
