//! Brute-force reference implementations used as test oracles. None of these
//! call into the library's estimation or scoring code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

/// `(child, parent)` edges as plain strings.
pub type Edges = Vec<(String, String)>;

/// Strict ancestry by depth-first search from `m`.
pub fn isa_dfs(edges: &Edges, m: &str, hyper: &str) -> bool {
    let mut stack: Vec<&str> = vec![m];
    let mut seen = BTreeSet::new();
    while let Some(node) = stack.pop() {
        for (c, p) in edges {
            if c == node && seen.insert(p.as_str()) {
                if p == hyper {
                    return true;
                }
                stack.push(p);
            }
        }
    }
    false
}

/// Every node mentioned by an edge.
pub fn nodes(edges: &Edges) -> BTreeSet<String> {
    edges
        .iter()
        .flat_map(|(c, p)| [c.clone(), p.clone()])
        .collect()
}

/// Set-builder for the extended sense set, scanning every taxonomy node.
/// Returns virtual sense -> owner.
pub fn ess_brute(edges: &Edges, base: &[String]) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for cand in nodes(edges) {
        if base.contains(&cand) {
            continue;
        }
        let owners: Vec<&String> = base.iter().filter(|m| isa_dfs(edges, m, &cand)).collect();
        if owners.len() == 1 {
            out.insert(cand, owners[0].clone());
        }
    }
    out
}

/// G² from observed and expected counts cell by cell.
pub fn g2_expected(both: u64, w_only: u64, c_only: u64, neither: u64) -> f64 {
    let obs = [
        [both as f64, w_only as f64],
        [c_only as f64, neither as f64],
    ];
    let n: f64 = obs.iter().flatten().sum();
    let rows = [obs[0][0] + obs[0][1], obs[1][0] + obs[1][1]];
    let cols = [obs[0][0] + obs[1][0], obs[0][1] + obs[1][1]];
    let mut g = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let e = rows[i] * cols[j] / n;
            if obs[i][j] > 0.0 && e > 0.0 {
                g += obs[i][j] * (obs[i][j] / e).ln();
            }
        }
    }
    2.0 * g
}

/// A tagged training item: (tag, context words).
pub type Item = (String, BTreeSet<String>);

fn weight(edges: &Edges, evaluated: &str, observed: &str, alpha: f64) -> f64 {
    if evaluated == observed {
        1.0
    } else if isa_dfs(edges, observed, evaluated) {
        alpha
    } else {
        0.0
    }
}

/// Naive-Bayes sense scores in plain probability space, computed directly
/// from the training items. `vocab` is the co-occurrence set; context words
/// outside it are ignored.
#[allow(clippy::too_many_arguments)]
pub fn brute_scores(
    edges: &Edges,
    space: &[String],
    items: &[Item],
    vocab: &BTreeSet<String>,
    context: &BTreeSet<String>,
    alpha: f64,
    n1: f64,
    n2: f64,
) -> BTreeMap<String, f64> {
    let total = items.len() as f64;
    let mut out = BTreeMap::new();
    for m in space {
        let mass: f64 = items.iter().map(|(t, _)| weight(edges, m, t, alpha)).sum();
        let mut p = (mass + 1.0) / (total + n1);
        for c in context.iter().filter(|c| vocab.contains(*c)) {
            let joint: f64 = items
                .iter()
                .filter(|(_, ctx)| ctx.contains(c))
                .map(|(t, _)| weight(edges, m, t, alpha))
                .sum();
            p *= (joint + 1.0) / (mass + n2);
        }
        out.insert(m.clone(), p);
    }
    out
}

/// Best `(total anchors, pairs)` over index-increasing chains of cells with
/// positive weight, by quadratic dynamic programming over the full grid.
pub fn chain_dp(weights: &[Vec<usize>]) -> (usize, usize) {
    let cells: Vec<(usize, usize, usize)> = weights
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &w)| (i, j, w)))
        .filter(|&(_, _, w)| w > 0)
        .collect();
    let mut best: Vec<(usize, usize)> = Vec::with_capacity(cells.len());
    for (k, &(i, j, w)) in cells.iter().enumerate() {
        let prev = (0..k)
            .filter(|&q| cells[q].0 < i && cells[q].1 < j)
            .map(|q| best[q])
            .max()
            .unwrap_or((0, 0));
        best.push((prev.0 + w, prev.1 + 1));
    }
    best.into_iter().max().unwrap_or((0, 0))
}
