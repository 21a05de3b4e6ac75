//! Shared fixtures for the pipeline benchmarks.

use wsd_core::corpus::Sentence;
use wsd_core::harness::{generate_synthetic, SynthSpec, SyntheticCorpus};
use wsd_core::inventory::SenseInventory;

/// Synthetic corpus with the given number of training items per sense.
pub fn corpus(train_per_sense: usize) -> SyntheticCorpus {
    generate_synthetic(&SynthSpec {
        train_per_sense,
        test_per_sense: train_per_sense / 4,
        sparsity: 0.3,
        overlap: 0.2,
        ..SynthSpec::default()
    })
    .expect("valid synthetic spec")
}

/// Parallel documents of `n` lines where every fifth target line has no
/// translation anchors.
pub fn bitext(n: usize) -> (SenseInventory, Vec<Sentence>, Vec<Sentence>) {
    let mut inv = SenseInventory::new();
    for i in 0..50 {
        inv.add_sense(
            &format!("word{i}"),
            wsd_core::SenseId::new(format!("s{i}")),
            [format!("tr{i}")],
        )
        .expect("fresh sense");
    }
    let mut source = Vec::with_capacity(n);
    let mut target = Vec::with_capacity(n);
    for k in 0..n {
        let words: Vec<usize> = (0..6).map(|j| (k * 7 + j * 13) % 50).collect();
        source.push(Sentence::new(words.iter().map(|w| format!("word{w}"))));
        if k % 5 == 4 {
            target.push(Sentence::new(["noise"; 6]));
        } else {
            target.push(Sentence::new(words.iter().map(|w| format!("tr{w}"))));
        }
    }
    (inv, source, target)
}
