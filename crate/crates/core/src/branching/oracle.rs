//! Brute-force prefix enumeration, used to cross-check the branching graph.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::expansions::{Base, DigitWord, PointSpec};

use super::classify::{CardinalityVerdict, Certificate, ChildOutcome};

/// All words `d_1..d_n` whose remainders
/// `r_k = q^k x - sum_{i<=k} d_i q^{k-i}` stay in `[0, 1/(q-1)]` for every
/// `k <= n`; these are exactly the length-n prefixes of expansions of x.
pub fn feasible_prefixes(x: &PointSpec, base: &Base, n: usize) -> Result<BTreeSet<DigitWord>> {
    let mut out = BTreeSet::new();
    let mut stack = vec![(Vec::new(), x.value.clone())];
    let q = base.gen();
    while let Some((word, r)) = stack.pop() {
        if word.len() == n {
            out.insert(word);
            continue;
        }
        let qr = &r * &q;
        for d in [0u8, 1] {
            let next = &qr - &base.field().from_int(i64::from(d));
            if next.signum().is_lt() || next.cmp_element(base.top())?.is_gt() {
                continue;
            }
            let mut w = word.clone();
            w.push(d);
            stack.push((w, next));
        }
    }
    Ok(out)
}

pub fn prefix_count_oracle(x: &PointSpec, base: &Base, n: usize) -> Result<usize> {
    Ok(feasible_prefixes(x, base, n)?.len())
}

/// Length-n prefixes read off a classification, or `None` when a path
/// shorter than n runs into an unexplored or unresolved part of the graph.
pub fn tree_paths(v: &CardinalityVerdict, n: usize) -> Option<BTreeSet<DigitWord>> {
    let mut out = BTreeSet::new();
    if let Certificate::UniqueExpansion(e) = &v.certificate {
        out.insert(e.prefix(n));
        return Some(out);
    }
    let g = &v.graph;
    if g.nodes.is_empty() {
        return None;
    }
    // (word so far, node about to branch)
    let mut stack = vec![(v.prefix.clone(), 0usize)];
    while let Some((word, i)) = stack.pop() {
        if word.len() >= n {
            out.insert(word[..n].to_vec());
            continue;
        }
        for (d, c) in g.nodes[i].children.as_ref()?.iter().enumerate() {
            match c {
                ChildOutcome::Unique { expansion } => {
                    let mut w = word.clone();
                    w.push(d as u8);
                    if w.len() < n {
                        w.extend(expansion.prefix(n - w.len()));
                    }
                    out.insert(w[..n].to_vec());
                }
                ChildOutcome::Node { word: edge, target } => {
                    let mut w = word.clone();
                    w.extend_from_slice(edge);
                    stack.push((w, *target));
                }
                ChildOutcome::Unresolved { word: edge } => {
                    if word.len() + edge.len() < n {
                        return None;
                    }
                    let mut w = word.clone();
                    w.extend_from_slice(edge);
                    out.insert(w[..n].to_vec());
                }
            }
        }
    }
    Some(out)
}
