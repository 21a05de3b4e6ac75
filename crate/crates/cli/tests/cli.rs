use std::fs;
use std::path::Path;
use std::process::Command;

use wsd_cli::run;

fn wsd(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("wsd").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

const TABLE4: &str = "\
plant\tfactory\t2007\t987\t1004
plant\tplant\t2619\t1741\t1763
plant\tequipment\t364\t52\t54
bank\tenterprise\t1050\t825\t838
bank\tembankment\t263\t12\t12
bank\tshore\t566\t293\t301
";

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_wsd");
    let none = Command::new(bin).output().unwrap();
    assert_eq!(none.status.code(), Some(1));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("experiment"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(wsd(&[]).0, 1);
    assert_eq!(wsd(&["frobnicate"]).0, 1);
    assert_eq!(wsd(&["eval"]).0, 1);
    assert_eq!(wsd(&["train", "--alpha", "x"]).0, 1);
}

#[test]
fn missing_input_is_a_data_error() {
    let (code, _, err) = wsd(&["eval", "--counts", "/nonexistent/counts.tsv"]);
    assert_eq!(code, 2);
    assert!(err.contains("/nonexistent/counts.tsv"), "{err}");
}

#[test]
fn eval_counts_reproduces_published_averages() {
    let dir = tempfile::tempdir().unwrap();
    let counts = dir.path().join("t4.tsv");
    fs::write(&counts, TABLE4).unwrap();
    let (code, out, err) = wsd(&["eval", "--counts", p(&counts)]);
    assert_eq!(code, 0, "{err}");
    assert!(
        out.contains("micro_recall=56.9;micro_precision=98.4;micro_f=72.1;"),
        "{out}"
    );
    assert!(out.contains("abstained=2897"), "{out}");
    let factory = out.lines().find(|l| l.contains("factory")).unwrap();
    assert!(factory.contains("987/1004") && factory.contains("49.2") && factory.contains("65.6"));
}

fn synth(dir: &Path) {
    let (code, _, err) = wsd(&[
        "synth",
        "--out-dir",
        p(dir),
        "--train-per-sense",
        "80",
        "--test-per-sense",
        "20",
        "--sparsity",
        "0.5",
        "--background-sentences",
        "100",
    ]);
    assert_eq!(code, 0, "{err}");
}

#[test]
fn train_then_eval_matches_experiment_baseline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth(d);
    let model = d.join("base.model");
    let (code, _, err) = wsd(&[
        "train",
        "--dict",
        p(&d.join("dictionary.tsv")),
        "--taxonomy",
        p(&d.join("taxonomy.tsv")),
        "--cws",
        p(&d.join("cws.tsv")),
        "--instances",
        p(&d.join("train.tsv")),
        "--use-ess",
        "false",
        "--out",
        p(&model),
    ]);
    assert_eq!(code, 0, "{err}");
    let (code, eval_out, err) = wsd(&[
        "eval",
        "--model",
        p(&model),
        "--instances",
        p(&d.join("test.tsv")),
    ]);
    assert_eq!(code, 0, "{err}");

    let (code, exp_out, err) = wsd(&[
        "experiment",
        "--dict",
        p(&d.join("dictionary.tsv")),
        "--taxonomy",
        p(&d.join("taxonomy.tsv")),
        "--cws",
        p(&d.join("cws.tsv")),
        "--train",
        p(&d.join("train.tsv")),
        "--test",
        p(&d.join("test.tsv")),
    ]);
    assert_eq!(code, 0, "{err}");
    let summary = |s: &str| {
        s.lines()
            .find(|l| l.starts_with("micro_recall="))
            .unwrap()
            .to_string()
    };
    assert_eq!(summary(&eval_out), summary(&exp_out));
    assert!(exp_out.contains("recall_delta="));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth(d);
    let cfg = d.join("wsd.conf");
    fs::write(
        &cfg,
        format!(
            "# experiment inputs\ndict = {}\ntaxonomy = {}\ncws = {}\ntrain = {}\ntest = {}\nbaseline_abstain = false\n",
            p(&d.join("dictionary.tsv")),
            p(&d.join("taxonomy.tsv")),
            p(&d.join("cws.tsv")),
            p(&d.join("train.tsv")),
            p(&d.join("test.tsv")),
        ),
    )
    .unwrap();
    let (code, no_abstain, err) = wsd(&["--config", p(&cfg), "experiment"]);
    assert_eq!(code, 0, "{err}");
    let first = no_abstain
        .lines()
        .find(|l| l.starts_with("micro_recall="))
        .unwrap();
    assert!(first.ends_with("abstained=0"), "{first}");

    let (code, overridden, err) = wsd(&[
        "--config",
        p(&cfg),
        "experiment",
        "--baseline-abstain",
        "true",
    ]);
    assert_eq!(code, 0, "{err}");
    let first = overridden
        .lines()
        .find(|l| l.starts_with("micro_recall="))
        .unwrap();
    assert!(!first.ends_with("abstained=0"), "{first}");

    fs::write(&cfg, "no_such_key = 1\n").unwrap();
    assert_eq!(wsd(&["--config", p(&cfg), "eval"]).0, 1);
}

#[test]
fn tag_writes_one_record_per_occurrence() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth(d);
    let model = d.join("ess.model");
    let (code, _, err) = wsd(&[
        "train",
        "--dict",
        p(&d.join("dictionary.tsv")),
        "--taxonomy",
        p(&d.join("taxonomy.tsv")),
        "--cws",
        p(&d.join("cws.tsv")),
        "--instances",
        p(&d.join("train.tsv")),
        "--out",
        p(&model),
    ]);
    assert_eq!(code, 0, "{err}");
    let text = d.join("in.txt");
    fs::write(
        &text,
        "the bank near s0w10 and s0w12\nno target here\nbank bank s2w10 s2w4\n",
    )
    .unwrap();
    let (code, out, err) = wsd(&["tag", "--model", p(&model), "--corpus", p(&text)]);
    assert_eq!(code, 0, "{err}");
    let lines: Vec<Vec<&str>> = out.lines().map(|l| l.split('\t').collect()).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0][..5], ["1", "bank", "sense0", "sense0", "false"]);
    assert_eq!(lines[1][0], "3");
    assert_eq!(lines[1][2], "sense2");
    assert_eq!(lines[1], lines[2]);
    assert!(lines[0][5].parse::<f64>().unwrap() < 0.0);
}
