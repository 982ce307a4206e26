//! Cardinality of the set of expansions of a point, decided on the finite
//! graph of branching points its orbits visit.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::walk::{minimal_to_switch, SwitchOutcome};
use crate::error::Result;
use crate::expansions::{
    identify_special, in_j, t_apply, t_apply_word, unique_expansion, Base, DigitWord, EventuallyPeriodic, PointSpec,
    SpecialPoint,
};

pub const DEFAULT_DEPTH: usize = 64;
/// Upper bound on distinct branching points explored per query.
pub const NODE_CAP: usize = 2048;
/// Upper bound on consecutive forced maps between two branching points.
pub const STEP_LIMIT: usize = 512;

/// Depth limit from `BETA_BRANCH_DEPTH`, falling back to 64.
pub fn default_depth() -> usize {
    std::env::var("BETA_BRANCH_DEPTH").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_DEPTH)
}

pub(crate) type Key = (Vec<BigInt>, BigInt);

/// What happens after taking one digit at a branching point.
#[derive(Clone, Debug)]
pub enum ChildOutcome {
    /// The child has a unique expansion.
    Unique { expansion: EventuallyPeriodic },
    /// Forced maps lead to another branching point; `word` starts with the
    /// digit taken.
    Node { word: DigitWord, target: usize },
    /// The forced walk did not reach the switch region in time.
    Unresolved { word: DigitWord },
}

#[derive(Clone, Debug)]
pub struct GraphNode {
    pub point: PointSpec,
    pub depth: usize,
    pub children: Option<[ChildOutcome; 2]>,
}

/// Branching points reachable from a start point, keyed by exact value.
#[derive(Clone, Debug, Default)]
pub struct BranchGraph {
    pub nodes: Vec<GraphNode>,
    index: HashMap<Key, usize>,
    pub complete: bool,
}

impl BranchGraph {
    fn intern(&mut self, point: PointSpec, depth: usize) -> (usize, bool) {
        let key = point.value.canonical_key();
        if let Some(&i) = self.index.get(&key) {
            return (i, false);
        }
        self.nodes.push(GraphNode { point, depth, children: None });
        self.index.insert(key, self.nodes.len() - 1);
        (self.nodes.len() - 1, true)
    }

    /// Breadth-first exploration. Every time the node count doubles,
    /// `stop` is consulted on the partial graph and exploration ends early
    /// if it returns true (the graph is then marked incomplete).
    fn explore(
        root: PointSpec,
        base: &Base,
        depth_limit: usize,
        mut stop: impl FnMut(&BranchGraph) -> bool,
    ) -> Result<Self> {
        let mut g = BranchGraph { complete: true, ..Default::default() };
        let mut queue = VecDeque::from([g.intern(root, 0).0]);
        let mut checkpoint = 16;
        while let Some(i) = queue.pop_front() {
            if g.nodes.len() >= checkpoint {
                checkpoint *= 2;
                if stop(&g) {
                    g.complete = false;
                    break;
                }
            }
            let depth = g.nodes[i].depth;
            if depth >= depth_limit || g.nodes.len() > NODE_CAP {
                g.complete = false;
                continue;
            }
            let point = g.nodes[i].point.clone();
            let mut kids = Vec::with_capacity(2);
            for d in [0u8, 1] {
                let child = t_apply(&point, d, base)?;
                if let Some(expansion) = unique_expansion(&child.value, base)? {
                    kids.push(ChildOutcome::Unique { expansion });
                    continue;
                }
                let out = match minimal_to_switch(&child, base, STEP_LIMIT)? {
                    SwitchOutcome::Landed { word, point } => {
                        let (target, fresh) = g.intern(point, depth + 1);
                        if fresh {
                            queue.push_back(target);
                        }
                        ChildOutcome::Node { word: prepend(d, &word), target }
                    }
                    SwitchOutcome::Resolved { expansion, .. } => ChildOutcome::Unique { expansion },
                    SwitchOutcome::LimitExceeded { word, .. } => {
                        g.complete = false;
                        ChildOutcome::Unresolved { word: prepend(d, &word) }
                    }
                };
                kids.push(out);
            }
            let [k0, k1]: [ChildOutcome; 2] = kids.try_into().unwrap();
            g.nodes[i].children = Some([k0, k1]);
        }
        Ok(g)
    }

    fn targets(&self, i: usize) -> Vec<(u8, usize)> {
        match &self.nodes[i].children {
            None => Vec::new(),
            Some(ch) => ch
                .iter()
                .enumerate()
                .filter_map(|(d, c)| match c {
                    ChildOutcome::Node { target, .. } => Some((d as u8, *target)),
                    _ => None,
                })
                .collect(),
        }
    }

    fn edge_word(&self, i: usize, d: u8) -> &DigitWord {
        match &self.nodes[i].children.as_ref().unwrap()[d as usize] {
            ChildOutcome::Node { word, .. } => word,
            _ => unreachable!("edge requested for a non-node child"),
        }
    }

    /// Strongly connected components (Tarjan), as component ids per node.
    fn scc(&self) -> Vec<usize> {
        struct St {
            index: Vec<Option<usize>>,
            low: Vec<usize>,
            on: Vec<bool>,
            stack: Vec<usize>,
            comp: Vec<usize>,
            next: usize,
            ncomp: usize,
        }
        let n = self.nodes.len();
        let mut st = St {
            index: vec![None; n],
            low: vec![0; n],
            on: vec![false; n],
            stack: Vec::new(),
            comp: vec![usize::MAX; n],
            next: 0,
            ncomp: 0,
        };
        // Iterative to stay clear of stack limits on long chains.
        for s in 0..n {
            if st.index[s].is_some() {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(s, 0)];
            st.index[s] = Some(st.next);
            st.low[s] = st.next;
            st.next += 1;
            st.stack.push(s);
            st.on[s] = true;
            while let Some(&mut (v, ref mut ei)) = call.last_mut() {
                let ts = self.targets(v);
                if *ei < ts.len() {
                    let w = ts[*ei].1;
                    *ei += 1;
                    match st.index[w] {
                        None => {
                            st.index[w] = Some(st.next);
                            st.low[w] = st.next;
                            st.next += 1;
                            st.stack.push(w);
                            st.on[w] = true;
                            call.push((w, 0));
                        }
                        Some(iw) if st.on[w] => st.low[v] = st.low[v].min(iw),
                        _ => {}
                    }
                } else {
                    call.pop();
                    if let Some(&(u, _)) = call.last() {
                        st.low[u] = st.low[u].min(st.low[v]);
                    }
                    if Some(st.low[v]) == st.index[v] {
                        loop {
                            let w = st.stack.pop().unwrap();
                            st.on[w] = false;
                            st.comp[w] = st.ncomp;
                            if w == v {
                                break;
                            }
                        }
                        st.ncomp += 1;
                    }
                }
            }
        }
        st.comp
    }

    /// Map word leading from `from` to `to` inside one component.
    fn path_within(&self, from: usize, to: usize, comp: &[usize]) -> Option<DigitWord> {
        let mut prev: HashMap<usize, (usize, u8)> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        let mut seen = vec![false; self.nodes.len()];
        seen[from] = true;
        if from == to {
            return Some(Vec::new());
        }
        while let Some(v) = queue.pop_front() {
            for (d, w) in self.targets(v) {
                if comp[w] != comp[from] || seen[w] {
                    continue;
                }
                seen[w] = true;
                prev.insert(w, (v, d));
                if w == to {
                    let mut word = Vec::new();
                    let mut cur = to;
                    while cur != from {
                        let (p, d) = prev[&cur];
                        let mut seg = self.edge_word(p, d).clone();
                        seg.extend(word);
                        word = seg;
                        cur = p;
                    }
                    return Some(word);
                }
                queue.push_back(w);
            }
        }
        None
    }
}

fn prepend(d: u8, w: &[u8]) -> DigitWord {
    let mut out = vec![d];
    out.extend_from_slice(w);
    out
}

/// A map word `b` returning the branching point `w` to itself, with the
/// switch-region points met along the way.
#[derive(Clone, Debug)]
pub struct CycleWitness {
    pub w: PointSpec,
    pub b: DigitWord,
    /// Positions (1-based prefix lengths of `b`) at which the orbit is in
    /// the switch region, with the point reached there.
    pub hits: Vec<(usize, PointSpec)>,
    /// At each hit but the last, the digit leading to the side with a
    /// unique expansion, if that side is known to be unique.
    pub finite_side: Vec<Option<u8>>,
}

#[derive(Clone, Debug)]
pub enum SigmaClass {
    Unique,
    Finite(BigInt),
    CountablyInfinite,
    Continuum,
    DepthExceeded(usize),
}

impl SigmaClass {
    pub fn name(&self) -> String {
        match self {
            SigmaClass::Unique => "Unique".into(),
            SigmaClass::Finite(n) => format!("Finite({n})"),
            SigmaClass::CountablyInfinite => "CountablyInfinite".into(),
            SigmaClass::Continuum => "Continuum".into(),
            SigmaClass::DepthExceeded(d) => format!("DepthExceeded({d})"),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, SigmaClass::CountablyInfinite | SigmaClass::Continuum)
    }
}

impl fmt::Display for SigmaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Debug)]
pub enum Certificate {
    UniqueExpansion(EventuallyPeriodic),
    /// Fully resolved acyclic graph of branching points.
    FiniteTree {
        nodes: usize,
    },
    Cycle(CycleWitness),
    /// Two distinct returns to the same branching point, one through each
    /// digit: every infinite sequence of choices between them is an
    /// expansion.
    TwoCycles {
        node: PointSpec,
        via0: DigitWord,
        via1: DigitWord,
    },
    Unresolved,
}

#[derive(Clone, Debug)]
pub struct CardinalityVerdict {
    pub class: SigmaClass,
    /// Forced maps from the point to its first branching point.
    pub prefix: DigitWord,
    pub certificate: Certificate,
    pub graph: BranchGraph,
}

/// Classifies `#Sigma_q(x)`. Unique leaves come from the explicit
/// unique-expansion set, so q must lie strictly between the golden ratio
/// and q_f. Exploration stops as soon as a continuum witness appears.
pub fn classify_sigma(x: &PointSpec, base: &Base, depth_limit: usize) -> Result<CardinalityVerdict> {
    classify_with(x, base, depth_limit, true)
}

/// Same verdict as [`classify_sigma`], but the graph is explored up to the
/// depth limit even after a continuum witness, so every path of the tree
/// can be read off it.
pub fn branching_tree(x: &PointSpec, base: &Base, depth_limit: usize) -> Result<CardinalityVerdict> {
    classify_with(x, base, depth_limit, false)
}

fn classify_with(x: &PointSpec, base: &Base, depth_limit: usize, early_stop: bool) -> Result<CardinalityVerdict> {
    base.check_unique_range()?;
    let verdict = |class, prefix, certificate, graph| CardinalityVerdict { class, prefix, certificate, graph };
    if let Some(e) = unique_expansion(&x.value, base)? {
        return Ok(verdict(SigmaClass::Unique, Vec::new(), Certificate::UniqueExpansion(e), BranchGraph::default()));
    }
    let (prefix, root) = match minimal_to_switch(x, base, STEP_LIMIT)? {
        SwitchOutcome::Landed { word, point } => (word, point),
        SwitchOutcome::Resolved { word, expansion } => {
            return Ok(verdict(
                SigmaClass::Unique,
                word,
                Certificate::UniqueExpansion(expansion),
                BranchGraph::default(),
            ))
        }
        SwitchOutcome::LimitExceeded { word, .. } => {
            return Ok(verdict(SigmaClass::DepthExceeded(0), word, Certificate::Unresolved, BranchGraph::default()))
        }
    };
    let g = BranchGraph::explore(root, base, depth_limit, |g| early_stop && double_loop(g, &g.scc()).is_some())?;
    let comp = g.scc();
    if let Some(i) = double_loop(&g, &comp) {
        let mut via = [Vec::new(), Vec::new()];
        for (d, t) in g.targets(i) {
            let mut w = g.edge_word(i, d).clone();
            w.extend(g.path_within(t, i, &comp).expect("same component"));
            via[d as usize] = w;
        }
        let [via0, via1] = via;
        let node = g.nodes[i].point.clone();
        return Ok(verdict(SigmaClass::Continuum, prefix, Certificate::TwoCycles { node, via0, via1 }, g));
    }
    if !g.complete {
        return Ok(verdict(SigmaClass::DepthExceeded(depth_limit), prefix, Certificate::Unresolved, g));
    }
    if let Some(w) = best_cycle(&g, &comp, base)? {
        return Ok(verdict(SigmaClass::CountablyInfinite, prefix, Certificate::Cycle(w), g));
    }
    let count = count_paths(&g);
    let nodes = g.nodes.len();
    Ok(verdict(SigmaClass::Finite(count), prefix, Certificate::FiniteTree { nodes }, g))
}

/// A node with both children inside its own component carries two
/// independent loops: continuum many expansions. Adding nodes only merges
/// components, so a hit on a partial graph stays a hit.
fn double_loop(g: &BranchGraph, comp: &[usize]) -> Option<usize> {
    (0..g.nodes.len()).find(|&i| {
        let ts = g.targets(i);
        ts.len() == 2 && comp[ts[0].1] == comp[i] && comp[ts[1].1] == comp[i]
    })
}

/// Number of expansions of the root of an acyclic, fully explored graph.
fn count_paths(g: &BranchGraph) -> BigInt {
    fn go(g: &BranchGraph, i: usize, memo: &mut HashMap<usize, BigInt>) -> BigInt {
        if let Some(n) = memo.get(&i) {
            return n.clone();
        }
        let mut total = BigInt::zero();
        for c in g.nodes[i].children.as_ref().unwrap() {
            total += match c {
                ChildOutcome::Unique { .. } => BigInt::one(),
                ChildOutcome::Node { target, .. } => go(g, *target, memo),
                ChildOutcome::Unresolved { .. } => unreachable!("graph is complete"),
            };
        }
        memo.insert(i, total.clone());
        total
    }
    go(g, 0, &mut HashMap::new())
}

/// Among the simple cycles of the graph, prefers one whose exits all have
/// unique expansions and starts it at a point of J when possible.
fn best_cycle(g: &BranchGraph, comp: &[usize], base: &Base) -> Result<Option<CycleWitness>> {
    let mut best: Option<(bool, Vec<usize>)> = None;
    let mut done = vec![false; g.nodes.len()];
    for s in 0..g.nodes.len() {
        if done[s] {
            continue;
        }
        let inner: Vec<(u8, usize)> = g.targets(s).into_iter().filter(|&(_, t)| comp[t] == comp[s]).collect();
        if inner.is_empty() {
            continue;
        }
        let mut cycle = vec![s];
        let mut cur = inner[0].1;
        while cur != s {
            cycle.push(cur);
            cur = g.targets(cur).into_iter().find(|&(_, t)| comp[t] == comp[s]).unwrap().1;
        }
        for &c in &cycle {
            done[c] = true;
        }
        let clean = cycle
            .iter()
            .all(|&c| g.nodes[c].children.as_ref().unwrap().iter().any(|k| matches!(k, ChildOutcome::Unique { .. })));
        if best.as_ref().is_none_or(|(b, _)| clean && !b) {
            best = Some((clean, cycle));
        }
    }
    let Some((_, cycle)) = best else { return Ok(None) };
    let mut start = 0;
    for (k, &c) in cycle.iter().enumerate() {
        let p = &g.nodes[c].point.value;
        if in_j(p, base)? && identify_special(p, base)?.is_some() {
            start = k;
            break;
        }
    }
    let n = cycle.len();
    let mut b = Vec::new();
    let mut hits = Vec::new();
    let mut finite_side = Vec::new();
    for k in 0..n {
        let v = cycle[(start + k) % n];
        let next = cycle[(start + k + 1) % n];
        let (d, _) = g.targets(v).into_iter().find(|&(_, t)| t == next).unwrap();
        let other = &g.nodes[v].children.as_ref().unwrap()[1 - d as usize];
        finite_side.push(matches!(other, ChildOutcome::Unique { .. }).then_some(1 - d));
        b.extend_from_slice(g.edge_word(v, d));
        hits.push((b.len(), g.nodes[next].point.clone()));
    }
    let w = g.nodes[cycle[start]].point.clone();
    Ok(Some(CycleWitness { w, b, hits, finite_side }))
}

/// Outcome of following the infinite side of every branching point.
#[derive(Clone, Debug)]
pub enum NullInfinite {
    Yes(CycleWitness),
    No(NotNullWitness),
    DepthExceeded(usize),
}

#[derive(Clone, Debug)]
pub enum NotNullWitness {
    /// The point itself has a unique expansion.
    Unique(EventuallyPeriodic),
    /// Both sides of this branching point are finite, so the point has
    /// finitely many expansions.
    Finite { at: PointSpec, path: DigitWord },
    /// Both sides of this branching point are infinite.
    TwoSided { at: PointSpec, path: DigitWord },
}

impl NullInfinite {
    pub fn name(&self) -> &'static str {
        match self {
            NullInfinite::Yes(_) => "Yes",
            NullInfinite::No(_) => "No",
            NullInfinite::DepthExceeded(_) => "DepthExceeded",
        }
    }
}

/// Decides whether `x` is null infinite: infinitely many expansions, and
/// at every branching point exactly one side has finitely many. Below
/// q-check (the least base with a point having exactly two expansions) a
/// side is finite iff it has a unique expansion; from q-check on the
/// sides are classified with [`classify_sigma`].
pub fn is_null_infinite(x: &PointSpec, base: &Base, depth_limit: usize) -> Result<NullInfinite> {
    base.check_unique_range()?;
    let fast = base.q().cmp_algebraic(&crate::constants::NamedConstant::QCheck.value()) == std::cmp::Ordering::Less;
    if let Some(e) = unique_expansion(&x.value, base)? {
        return Ok(NullInfinite::No(NotNullWitness::Unique(e)));
    }
    let mut path = match minimal_to_switch(x, base, STEP_LIMIT)? {
        SwitchOutcome::Landed { word, .. } => word,
        SwitchOutcome::Resolved { expansion, .. } => return Ok(NullInfinite::No(NotNullWitness::Unique(expansion))),
        SwitchOutcome::LimitExceeded { .. } => return Ok(NullInfinite::DepthExceeded(0)),
    };
    let mut w = t_apply_word(x, &path, base)?;
    // (position in path where the point was reached, point, digit to finite side)
    let mut seen: HashMap<Key, usize> = HashMap::new();
    let mut hits: Vec<(usize, PointSpec, Option<u8>)> = Vec::new();
    for _ in 0..=depth_limit {
        if let Some(&i) = seen.get(&w.value.canonical_key()) {
            return Ok(NullInfinite::Yes(rotate_cycle(&path, &hits[i..], base)?));
        }
        let c = [t_apply(&w, 0, base)?, t_apply(&w, 1, base)?];
        let mut finite = [false, false];
        for d in 0..2 {
            finite[d] = if fast {
                unique_expansion(&c[d].value, base)?.is_some()
            } else {
                match classify_sigma(&c[d], base, depth_limit)?.class {
                    SigmaClass::Unique | SigmaClass::Finite(_) => true,
                    SigmaClass::CountablyInfinite | SigmaClass::Continuum => false,
                    SigmaClass::DepthExceeded(d) => return Ok(NullInfinite::DepthExceeded(d)),
                }
            };
        }
        let go = match finite {
            [true, true] => return Ok(NullInfinite::No(NotNullWitness::Finite { at: w, path })),
            [false, false] => return Ok(NullInfinite::No(NotNullWitness::TwoSided { at: w, path })),
            [true, false] => 1u8,
            [false, true] => 0u8,
        };
        seen.insert(w.value.canonical_key(), hits.len());
        hits.push((path.len(), w.clone(), Some(1 - go)));
        path.push(go);
        match minimal_to_switch(&c[go as usize], base, STEP_LIMIT)? {
            SwitchOutcome::Landed { word, point } => {
                path.extend(word);
                w = point;
            }
            SwitchOutcome::Resolved { .. } => {
                return Ok(NullInfinite::No(NotNullWitness::Finite { at: w, path }));
            }
            SwitchOutcome::LimitExceeded { .. } => return Ok(NullInfinite::DepthExceeded(depth_limit)),
        }
    }
    Ok(NullInfinite::DepthExceeded(depth_limit))
}

/// Builds a cycle witness from the branching points of one period,
/// starting at a point of J that is one of the special closed forms if
/// there is one.
fn rotate_cycle(path: &[u8], cyc: &[(usize, PointSpec, Option<u8>)], base: &Base) -> Result<CycleWitness> {
    let n = cyc.len();
    let mut start = 0;
    for (k, (_, p, _)) in cyc.iter().enumerate() {
        if in_j(&p.value, base)? && identify_special(&p.value, base)?.is_some() {
            start = k;
            break;
        }
    }
    let origin = cyc[0].0;
    let period: DigitWord = path[origin..].to_vec();
    let offset = cyc[start].0 - origin;
    let mut b = period[offset..].to_vec();
    b.extend_from_slice(&period[..offset]);
    let w = cyc[start].1.clone();
    let mut hits = Vec::new();
    let mut finite_side = Vec::new();
    for k in 1..=n {
        let (pos, p, _) = &cyc[(start + k) % n];
        let rel = (pos + period.len() - cyc[start].0) % period.len();
        let rel = if rel == 0 { period.len() } else { rel };
        hits.push((rel, p.clone()));
        finite_side.push(cyc[(start + k - 1) % n].2);
    }
    Ok(CycleWitness { w, b, hits, finite_side })
}

/// Result of re-checking a cycle certificate.
#[derive(Clone, Debug)]
pub struct CycleCheck {
    pub valid: bool,
    pub reason: Option<String>,
    /// Switch-region hits: prefix length and the closed form matched.
    pub hits: Vec<(usize, Option<SpecialPoint>)>,
}

/// Independent check of a cycle certificate: `w` must be one of the closed
/// forms in J, every switch-region point met while applying `b` must be
/// one of the closed forms `y_j`, `z_j`, `1/q`, `1/(q^2-q)`, and `b(w) = w`.
pub fn cycle_certificate_check(w: &PointSpec, b: &[u8], base: &Base) -> Result<CycleCheck> {
    let fail = |reason: String, hits| Ok(CycleCheck { valid: false, reason: Some(reason), hits });
    if b.is_empty() {
        return fail("empty map word".into(), Vec::new());
    }
    if !in_j(&w.value, base)? {
        return fail(format!("w = {} is not in J", w.decimal(5)), Vec::new());
    }
    if identify_special(&w.value, base)?.is_none() {
        return fail(format!("w = {} is not a y_j or z_j", w.decimal(5)), Vec::new());
    }
    let mut p = w.clone();
    let mut hits = Vec::new();
    for (i, &d) in b.iter().enumerate() {
        p = t_apply(&p, d, base)?;
        if crate::expansions::in_switch(&p.value, base)? {
            let s = identify_special(&p.value, base)?;
            hits.push((i + 1, s));
            if s.is_none() {
                return fail(
                    format!("switch-region point {} after {} maps is not a closed form", p.decimal(5), i + 1),
                    hits,
                );
            }
        }
    }
    if p.value != w.value {
        return fail(format!("b(w) = {} differs from w = {}", p.decimal(5), w.decimal(5)), hits);
    }
    Ok(CycleCheck { valid: true, reason: None, hits })
}
