//! Worked examples checked against independent brute-force references.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{brute_scores, ess_brute, g2_expected, isa_dfs, Edges};
use wsd_core::bitext::{
    align_sentences, extract_training, tag_occurrence, AlignConfig, BitextPair,
};
use wsd_core::corpus::{
    association_score, extract_cws, tokenize, Contingency, CwsConfig, FunctionWordList, Sentence,
};
use wsd_core::disambig::{disambiguate_context, score_sense, Policy};
use wsd_core::harness::{compare, generate_synthetic, ExperimentConfigs, SynthSpec};
use wsd_core::inventory::{ExtendedSenseSet, SenseId, SenseInventory, Taxonomy};
use wsd_core::model::{
    accumulate_counts, estimate_likelihood, estimate_prior, train, ModelConfig, Smoothing,
};
use wsd_core::TaggedInstance;

fn s(id: &str) -> SenseId {
    SenseId::new(id)
}

fn edges(list: &[(&str, &str)]) -> Edges {
    list.iter()
        .map(|(c, p)| (c.to_string(), p.to_string()))
        .collect()
}

fn taxonomy(e: &Edges) -> Taxonomy {
    Taxonomy::from_edges(e.iter().map(|(c, p)| (s(c), s(p)))).unwrap()
}

fn inventory(word: &str, senses: &[&str]) -> SenseInventory {
    let mut inv = SenseInventory::new();
    for (i, m) in senses.iter().enumerate() {
        inv.add_sense(word, s(m), [format!("t{i}")]).unwrap();
    }
    inv
}

#[test]
fn isa_two_edge_chain() {
    let e = edges(&[("plant", "living_thing"), ("living_thing", "thing")]);
    assert!(isa_dfs(&e, "plant", "thing"));
    assert!(taxonomy(&e).isa(&s("plant"), &s("thing")));
}

#[test]
fn ess_examples_match_set_builder() {
    let e = edges(&[
        ("factory", "work_area"),
        ("work_area", "establishment"),
        ("establishment", "place"),
        ("plant", "living_thing"),
        ("equipment", "goods"),
    ]);
    let base = ["factory", "plant", "equipment"];
    let ess = ExtendedSenseSet::build(&inventory("plant", &base), &taxonomy(&e), "plant").unwrap();
    let base_s: Vec<String> = base.iter().map(|b| b.to_string()).collect();
    let expected = ess_brute(&e, &base_s);
    let got: BTreeMap<String, String> = ess
        .virtual_senses
        .iter()
        .map(|(v, o)| (v.to_string(), o.to_string()))
        .collect();
    assert_eq!(got, expected);
    assert_eq!(got.len(), 5);

    let e = edges(&[("a", "r"), ("b", "r")]);
    let ess = ExtendedSenseSet::build(&inventory("w", &["a", "b"]), &taxonomy(&e), "w").unwrap();
    assert!(ess_brute(&e, &["a".into(), "b".into()]).is_empty());
    assert!(ess.virtual_senses.is_empty());
}

#[test]
fn wg_direction_lets_hypernyms_inherit_counts() {
    // one instance tagged `plant`; the hypernym's prior must rise above the
    // smoothing floor it would get with no inherited mass
    let inv = inventory("w", &["plant", "factory"]);
    let tax = taxonomy(&edges(&[("plant", "living_thing")]));
    let data = [TaggedInstance::new("w", s("plant"), ["leaf"])];
    let cfg = ModelConfig {
        cws_restrict: false,
        ..ModelConfig::default()
    };
    let model = train(&data, &inv, &tax, &BTreeMap::new(), &cfg).unwrap();
    let wm = model.word("w").unwrap();
    let floor = 1.0 / (1.0 + wm.smoothing.n1);
    assert!(wm.prior(&s("living_thing")).unwrap() > floor);
    assert_eq!(wm.prior(&s("factory")).unwrap(), floor);
}

#[test]
fn g2_diagonal_matches_expected_count_oracle() {
    let oracle = g2_expected(10, 0, 0, 10);
    assert!((oracle - 27.725887222397812).abs() < 1e-9);
    let got = association_score(&Contingency::new(10, 0, 0, 10)).unwrap();
    assert!((got - oracle).abs() < 1e-6);
}

#[test]
fn soil_enters_the_plant_cws() {
    let mut corpus: Vec<Sentence> = (0..10)
        .map(|i| tokenize(&format!("the plant grew in soil near hill{i}")))
        .collect();
    corpus.extend((0..40).map(|i| tokenize(&format!("a story about town{i} and weather"))));
    let counts = wsd_core::count_cooccurrence(&corpus, "plant", &FunctionWordList::english());
    let t = counts.table("soil");
    assert_eq!(t, Contingency::new(10, 0, 0, 40));
    let oracle = g2_expected(t.both, t.w_only, t.c_only, t.neither);
    assert!(oracle > 10.83);
    let cws = extract_cws(
        &corpus,
        "plant",
        &CwsConfig::default(),
        &FunctionWordList::english(),
    );
    assert!(cws.contains("soil"));
    assert!((cws.members["soil"].score - oracle).abs() < 1e-9);
}

/// Best monotone chain by exhaustive enumeration of all subsets of eligible
/// cells.
fn brute_align(weights: &[Vec<usize>], min_anchor: usize) -> (usize, usize) {
    let cells: Vec<(usize, usize, usize)> = weights
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &w)| (i, j, w)))
        .filter(|&(_, _, w)| w > 0 && w >= min_anchor)
        .collect();
    let mut best = (0, 0);
    for mask in 0u32..(1 << cells.len()) {
        let chosen: Vec<_> = (0..cells.len())
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| cells[b])
            .collect();
        let monotone = chosen
            .windows(2)
            .all(|p| p[0].0 < p[1].0 && p[0].1 < p[1].1);
        if monotone {
            let key = (chosen.iter().map(|c| c.2).sum(), chosen.len());
            best = best.max(key);
        }
    }
    best
}

#[test]
fn alignment_skips_anchor_free_target() {
    let inv = SenseInventory::parse(
        "bank\tshore\tgang\nriver\triver\tgangmul\nmoney\tmoney\ton\nloan\tloan\tdaechul\n",
    )
    .unwrap();
    let src: Vec<Sentence> = ["bank river", "money loan", "bank money"]
        .iter()
        .map(|t| tokenize(t))
        .collect();
    let tgt: Vec<Sentence> = ["gang gangmul", "pul namu", "unhaeng on daechul gang"]
        .iter()
        .map(|t| tokenize(t))
        .collect();
    let weights: Vec<Vec<usize>> = src
        .iter()
        .map(|a| {
            tgt.iter()
                .map(|b| wsd_core::bitext::anchor_count(a, b, &inv))
                .collect()
        })
        .collect();
    let cfg = AlignConfig::default();
    let out = align_sentences(&src, &tgt, &inv, &cfg);
    let got_anchors: usize = out
        .iter()
        .map(|p| weights[p.source_index][p.target_index])
        .sum();
    assert_eq!(
        (got_anchors, out.len()),
        brute_align(&weights, cfg.min_anchor_count)
    );
    assert_eq!(out.len(), 2);
    assert!(out
        .windows(2)
        .all(|p| p[0].source_index < p[1].source_index && p[0].target_index < p[1].target_index));
    assert!(out.iter().all(|p| p.target_index != 1));
}

#[test]
fn tagging_matches_exhaustive_sense_check() {
    let inv =
        SenseInventory::parse("bank\tshore\tgang,mulga\nbank\tenterprise\tunhaeng\n").unwrap();
    let targets = ["gang", "mulga nal", "unhaeng", "gang unhaeng", "nothing"];
    for t in targets {
        let pair = BitextPair::new(tokenize("the bank"), tokenize(t));
        let tokens = tokenize(t).tokens;
        let matching: Vec<&SenseId> = inv
            .senses("bank")
            .unwrap()
            .iter()
            .filter(|e| e.translations.iter().any(|tr| tokens.contains(tr)))
            .map(|e| &e.id)
            .collect();
        let expected = (matching.len() == 1).then(|| matching[0].clone());
        assert_eq!(
            tag_occurrence(&pair, "bank", &inv),
            expected,
            "target `{t}`"
        );
    }
}

#[test]
fn ten_pairs_seven_resolvable() {
    let inv = SenseInventory::parse("bank\tshore\tgang\nbank\tenterprise\tunhaeng\n").unwrap();
    let mut pairs = Vec::new();
    for i in 0..7 {
        let tgt = if i % 2 == 0 { "gang" } else { "unhaeng" };
        pairs.push(BitextPair::new(
            tokenize(&format!("bank word{i}")),
            tokenize(tgt),
        ));
    }
    pairs.push(BitextPair::new(
        tokenize("bank x"),
        tokenize("gang unhaeng"),
    ));
    pairs.push(BitextPair::new(tokenize("bank y"), tokenize("zzz")));
    pairs.push(BitextPair::new(
        tokenize("no target word"),
        tokenize("gang"),
    ));
    let out = extract_training(&pairs, &inv, &FunctionWordList::english());
    assert_eq!(out.len(), 7);
}

#[test]
fn prior_and_likelihood_hand_arithmetic() {
    let inv = inventory("w", &["m1", "m2"]);
    let tax = taxonomy(&edges(&[("m1", "h")]));
    let mut data = vec![TaggedInstance::new("w", s("m1"), ["c"]); 3];
    data.extend(vec![TaggedInstance::new("w", s("m1"), ["d"]); 3]);
    data.extend(vec![TaggedInstance::new("w", s("m2"), ["e"]); 4]);
    let cfg = ModelConfig {
        cws_restrict: false,
        ..ModelConfig::default()
    };
    let ct = accumulate_counts(&data, &inv, &BTreeMap::new(), &cfg).unwrap();
    let sm = Smoothing { n1: 2.0, n2: 4.0 };

    let p = estimate_prior(&ct, &Taxonomy::empty(), "w", &s("m1"), 0.5, sm);
    assert_eq!((p.numerator, p.denominator), (7.0, 12.0));
    assert_eq!(p.value(), 7.0 / 12.0);

    let p = estimate_prior(&ct, &tax, "w", &s("h"), 0.5, sm);
    assert_eq!((p.numerator, p.denominator), (4.0, 12.0));

    let l = estimate_likelihood(&ct, &Taxonomy::empty(), "w", &s("m1"), "c", 0.5, sm);
    assert_eq!((l.numerator, l.denominator), (4.0, 10.0));
    assert_eq!(l.value(), 0.4);
}

#[test]
fn alpha_one_equals_relabel_and_recount() {
    let inv = inventory("w", &["m", "k"]);
    let tax = taxonomy(&edges(&[("m", "h")]));
    let data = vec![
        TaggedInstance::new("w", s("m"), ["a", "b"]),
        TaggedInstance::new("w", s("m"), ["a"]),
        TaggedInstance::new("w", s("k"), ["b", "c"]),
        TaggedInstance::new("w", s("m"), ["c"]),
        TaggedInstance::new("w", s("k"), ["a"]),
    ];
    let cfg = ModelConfig {
        cws_restrict: false,
        ..ModelConfig::default()
    };
    let ct = accumulate_counts(&data, &inv, &BTreeMap::new(), &cfg).unwrap();

    // relabel every `m` observation as `h` and count without any taxonomy
    let mut relabeled_inv = inv.clone();
    relabeled_inv.add_sense("w", s("h"), ["th"]).unwrap();
    let relabeled: Vec<TaggedInstance> = data
        .iter()
        .map(|i| {
            let tag = if i.tag == s("m") {
                s("h")
            } else {
                i.tag.clone()
            };
            TaggedInstance::new("w", tag, i.context.iter().cloned())
        })
        .collect();
    let ct2 = accumulate_counts(&relabeled, &relabeled_inv, &BTreeMap::new(), &cfg).unwrap();

    let sm = Smoothing { n1: 3.0, n2: 5.0 };
    for c in ["a", "b", "c", "zzz"] {
        let via_wg = estimate_likelihood(&ct, &tax, "w", &s("h"), c, 1.0, sm);
        let via_relabel = estimate_likelihood(&ct2, &Taxonomy::empty(), "w", &s("h"), c, 1.0, sm);
        assert_eq!(via_wg, via_relabel, "context `{c}`");
    }
}

#[test]
fn log_scores_match_plain_probability_oracle() {
    let inv = inventory("w", &["m1", "m2"]);
    let data: Vec<TaggedInstance> = vec![
        TaggedInstance::new("w", s("m1"), ["x", "y"]),
        TaggedInstance::new("w", s("m1"), ["x"]),
        TaggedInstance::new("w", s("m2"), ["z"]),
    ];
    let vocab: BTreeSet<String> = ["x", "y", "z"].iter().map(|v| v.to_string()).collect();
    let mut cws = wsd_core::CooccurrenceSet::new("w");
    for v in &vocab {
        cws.members.insert(
            v.clone(),
            wsd_core::corpus::CwsMember {
                joint: 3,
                score: 20.0,
            },
        );
    }
    let cws = BTreeMap::from([("w".to_string(), cws)]);
    let model = train(
        &data,
        &inv,
        &Taxonomy::empty(),
        &cws,
        &ModelConfig::baseline(),
    )
    .unwrap();
    let items: Vec<common::Item> = data
        .iter()
        .map(|i| (i.tag.to_string(), i.context.clone()))
        .collect();
    let context: BTreeSet<String> = ["x", "z", "q"].iter().map(|v| v.to_string()).collect();
    let space = vec!["m1".to_string(), "m2".to_string()];
    // N1 = |M(w)| = 2, N2 = |C(w)| + 1 = 4
    let oracle = brute_scores(
        &Edges::new(),
        &space,
        &items,
        &vocab,
        &context,
        0.5,
        2.0,
        4.0,
    );
    for m in &space {
        let got = score_sense(&model, "w", &s(m), context.iter().map(String::as_str)).unwrap();
        assert!((got - oracle[m].ln()).abs() < 1e-9, "{m}");
    }
}

#[test]
fn river_context_picks_the_shore_sense() {
    let inv = inventory("bank", &["m1", "m2"]);
    let mut data = vec![TaggedInstance::new("bank", s("m1"), ["loan"]); 3];
    data.extend(vec![TaggedInstance::new("bank", s("m2"), ["river"]); 2]);
    let cfg = ModelConfig {
        cws_restrict: false,
        ..ModelConfig::baseline()
    };
    let model = train(&data, &inv, &Taxonomy::empty(), &BTreeMap::new(), &cfg).unwrap();
    let items: Vec<common::Item> = data
        .iter()
        .map(|i| (i.tag.to_string(), i.context.clone()))
        .collect();
    let vocab: BTreeSet<String> = ["loan", "river"].iter().map(|v| v.to_string()).collect();
    let ctx: BTreeSet<String> = BTreeSet::from(["river".to_string()]);
    let space = vec!["m1".to_string(), "m2".to_string()];
    let oracle = brute_scores(&Edges::new(), &space, &items, &vocab, &ctx, 0.5, 2.0, 3.0);
    assert!(oracle["m2"] > oracle["m1"]);
    let d = disambiguate_context(&model, "bank", ["river"], Policy::never_abstain()).unwrap();
    assert_eq!(d.chosen, s("m2"));
}

#[test]
fn synthetic_clean_data_is_solved_by_baseline() {
    let spec = SynthSpec {
        train_per_sense: 200,
        test_per_sense: 50,
        overlap: 0.0,
        sparsity: 0.0,
        ..SynthSpec::default()
    };
    let corpus = generate_synthetic(&spec).unwrap();
    // every test context word occurs in training with its own sense only
    let mut seen_with: BTreeMap<&str, BTreeSet<&SenseId>> = BTreeMap::new();
    for i in &corpus.train {
        for c in &i.context {
            seen_with.entry(c).or_default().insert(&i.tag);
        }
    }
    for i in &corpus.test {
        for c in &i.context {
            assert_eq!(seen_with[c.as_str()], BTreeSet::from([&i.tag]));
        }
    }
    let out = compare(
        &corpus.train,
        &corpus.test,
        &corpus.inventory,
        &corpus.taxonomy,
        &corpus.cws,
        &ExperimentConfigs::default(),
    )
    .unwrap();
    assert_eq!(out.baseline.report.micro.recall, 100.0);
    assert_eq!(out.baseline.report.micro.precision, 100.0);
}

#[test]
fn sparse_synthetic_data_makes_the_baseline_abstain() {
    let spec = SynthSpec {
        train_per_sense: 100,
        test_per_sense: 40,
        sparsity: 0.5,
        ..SynthSpec::default()
    };
    let corpus = generate_synthetic(&spec).unwrap();
    let out = compare(
        &corpus.train,
        &corpus.test,
        &corpus.inventory,
        &corpus.taxonomy,
        &corpus.cws,
        &ExperimentConfigs::default(),
    )
    .unwrap();
    let base_abstain = out
        .baseline
        .decisions
        .iter()
        .filter(|d| d.abstained)
        .count();
    let ess_abstain = out.ess.decisions.iter().filter(|d| d.abstained).count();
    let sparse = corpus.sparse_test.iter().filter(|s| **s).count();
    assert_eq!(base_abstain, sparse);
    assert!(ess_abstain <= base_abstain);
}
