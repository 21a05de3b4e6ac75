//! Per-sense recall, precision and F-score with micro and macro averages.

use std::fmt::Write as _;
use std::path::Path;

use indexmap::IndexMap;

use crate::error::{read_to_string, Error, Result};
use crate::inventory::SenseId;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SenseTally {
    /// Test items whose gold tag is this sense.
    pub gold_total: u64,
    /// Non-abstained decisions for this sense.
    pub estimated: u64,
    /// Decisions for this sense that match the gold tag.
    pub correct: u64,
}

impl SenseTally {
    pub fn new(gold_total: u64, estimated: u64, correct: u64) -> Self {
        SenseTally {
            gold_total,
            estimated,
            correct,
        }
    }
}

/// Per `(word, sense)` tallies, in insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SenseCounts {
    pub entries: IndexMap<(String, SenseId), SenseTally>,
}

impl SenseCounts {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entry(&mut self, word: &str, sense: &SenseId) -> &mut SenseTally {
        self.entries
            .entry((word.to_string(), sense.clone()))
            .or_default()
    }

    pub fn insert(&mut self, word: &str, sense: &SenseId, tally: SenseTally) {
        self.entries
            .insert((word.to_string(), sense.clone()), tally);
    }

    /// Records one test item. `decided` is `None` for an abstention.
    pub fn record(&mut self, word: &str, gold: &SenseId, decided: Option<&SenseId>) {
        self.entry(word, gold).gold_total += 1;
        if let Some(d) = decided {
            let t = self.entry(word, d);
            t.estimated += 1;
            if d == gold {
                t.correct += 1;
            }
        }
    }

    pub fn totals(&self) -> SenseTally {
        self.entries
            .values()
            .fold(SenseTally::default(), |acc, t| SenseTally {
                gold_total: acc.gold_total + t.gold_total,
                estimated: acc.estimated + t.estimated,
                correct: acc.correct + t.correct,
            })
    }

    /// `word<TAB>sense<TAB>gold_total<TAB>correct<TAB>estimated` per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut counts = SenseCounts::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            if raw.trim().is_empty() || raw.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = raw.split('\t').map(str::trim).collect();
            if f.len() != 5 {
                return Err(Error::malformed(
                    line,
                    "expected `word<TAB>sense<TAB>gold<TAB>correct<TAB>estimated`",
                ));
            }
            let sense =
                SenseId::parse(f[1]).ok_or_else(|| Error::malformed(line, "invalid sense id"))?;
            let num = |s: &str| -> Result<u64> {
                s.parse()
                    .map_err(|_| Error::malformed(line, format!("`{s}` is not a count")))
            };
            let tally = SenseTally::new(num(f[2])?, num(f[4])?, num(f[3])?);
            if tally.correct > tally.estimated || tally.correct > tally.gold_total {
                return Err(Error::malformed(line, "correct exceeds gold or estimated"));
            }
            counts.insert(f[0], &sense, tally);
        }
        Ok(counts)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&read_to_string(path.as_ref())?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for ((w, m), t) in &self.entries {
            let _ = writeln!(
                out,
                "{w}\t{m}\t{}\t{}\t{}",
                t.gold_total, t.correct, t.estimated
            );
        }
        out
    }
}

pub fn recall(t: &SenseTally) -> Result<f64> {
    if t.gold_total == 0 {
        return Err(Error::Metric("recall undefined: no gold items"));
    }
    Ok(100.0 * t.correct as f64 / t.gold_total as f64)
}

pub fn precision(t: &SenseTally) -> Result<f64> {
    if t.estimated == 0 {
        return Err(Error::Metric("precision undefined: no estimations"));
    }
    Ok(100.0 * t.correct as f64 / t.estimated as f64)
}

/// Balanced harmonic mean; 0 when both inputs are 0.
pub fn f_score(recall: f64, precision: f64) -> f64 {
    if recall + precision == 0.0 {
        0.0
    } else {
        2.0 * recall * precision / (recall + precision)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Scores {
    pub recall: f64,
    pub precision: f64,
    pub f: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SenseRow {
    pub word: String,
    pub sense: SenseId,
    pub tally: SenseTally,
    pub recall: Option<f64>,
    pub precision: Option<f64>,
    pub f: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub rows: Vec<SenseRow>,
    /// Ratios of summed counts.
    pub micro: Scores,
    /// Unweighted means of the defined per-sense values.
    pub macro_avg: Scores,
    pub abstained: u64,
    pub total: u64,
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

/// Builds a report; abstentions are the gold items with no estimation at all.
pub fn aggregate(counts: &SenseCounts) -> Result<EvalReport> {
    let totals = counts.totals();
    aggregate_with(counts, totals.gold_total.saturating_sub(totals.estimated))
}

pub fn aggregate_with(counts: &SenseCounts, abstained: u64) -> Result<EvalReport> {
    let rows: Vec<SenseRow> = counts
        .entries
        .iter()
        .filter(|(_, t)| t.gold_total > 0 || t.estimated > 0)
        .map(|((w, m), t)| {
            let r = recall(t).ok();
            let p = precision(t).ok();
            SenseRow {
                word: w.clone(),
                sense: m.clone(),
                tally: *t,
                recall: r,
                precision: p,
                f: r.zip(p).map(|(r, p)| f_score(r, p)),
            }
        })
        .collect();
    if rows.is_empty() {
        return Err(Error::Metric("no sense entries to aggregate"));
    }
    let t = counts.totals();
    let micro_r = if t.gold_total > 0 {
        100.0 * t.correct as f64 / t.gold_total as f64
    } else {
        0.0
    };
    let micro_p = if t.estimated > 0 {
        100.0 * t.correct as f64 / t.estimated as f64
    } else {
        0.0
    };
    let macro_avg = Scores {
        recall: mean(rows.iter().filter_map(|r| r.recall)),
        precision: mean(rows.iter().filter_map(|r| r.precision)),
        f: mean(rows.iter().filter_map(|r| r.f)),
    };
    Ok(EvalReport {
        rows,
        micro: Scores {
            recall: micro_r,
            precision: micro_p,
            f: f_score(micro_r, micro_p),
        },
        macro_avg,
        abstained,
        total: t.gold_total,
    })
}

impl EvalReport {
    pub fn summary_line(&self) -> String {
        format!(
            "micro_recall={:.1};micro_precision={:.1};micro_f={:.1};\
             macro_recall={:.1};macro_precision={:.1};macro_f={:.1};abstained={}",
            self.micro.recall,
            self.micro.precision,
            self.micro.f,
            self.macro_avg.recall,
            self.macro_avg.precision,
            self.macro_avg.f,
            self.abstained
        )
    }

    /// Aligned table followed by the summary line.
    pub fn render(&self) -> String {
        let fmt = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.1}"));
        let mut table: Vec<[String; 7]> = vec![[
            "word".into(),
            "sense".into(),
            "sentences".into(),
            "correct/estimated".into(),
            "recall".into(),
            "precision".into(),
            "f-score".into(),
        ]];
        for r in &self.rows {
            table.push([
                r.word.clone(),
                r.sense.to_string(),
                r.tally.gold_total.to_string(),
                format!("{}/{}", r.tally.correct, r.tally.estimated),
                fmt(r.recall),
                fmt(r.precision),
                fmt(r.f),
            ]);
        }
        let t = self
            .rows
            .iter()
            .fold(SenseTally::default(), |a, r| SenseTally {
                gold_total: a.gold_total + r.tally.gold_total,
                estimated: a.estimated + r.tally.estimated,
                correct: a.correct + r.tally.correct,
            });
        for (name, s, tally) in [
            (
                "micro",
                self.micro,
                format!("{}/{}", t.correct, t.estimated),
            ),
            ("macro", self.macro_avg, String::new()),
        ] {
            table.push([
                name.into(),
                String::new(),
                if name == "micro" {
                    t.gold_total.to_string()
                } else {
                    String::new()
                },
                tally,
                format!("{:.1}", s.recall),
                format!("{:.1}", s.precision),
                format!("{:.1}", s.f),
            ]);
        }
        let mut widths = [0usize; 7];
        for row in &table {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        for row in &table {
            let line: Vec<String> = row
                .iter()
                .zip(widths)
                .enumerate()
                .map(|(i, (cell, w))| {
                    if i < 2 {
                        format!("{cell:<w$}")
                    } else {
                        format!("{cell:>w$}")
                    }
                })
                .collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        let _ = writeln!(out, "abstained: {} of {}", self.abstained, self.total);
        let _ = writeln!(out, "{}", self.summary_line());
        out
    }
}
