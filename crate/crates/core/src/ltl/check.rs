//! Existential and universal LTL model checking over explicit structures.
//!
//! The automaton of the formula is multiplied with the structure and the
//! generalized acceptance condition is degeneralized with a level counter;
//! emptiness is decided by nested depth-first search. A product node reads the
//! label of its structure state, so projecting an accepting lasso of the
//! product onto structure states yields a run satisfying the formula.

use std::collections::HashSet;

use serde::Serialize;

use super::buchi::Buchi;
use super::formula::Ltl;
use super::lasso::{eval_lasso, Lasso};
use crate::error::LtlError;
use crate::kripke::KripkeStructure;

/// Outcome of an existential query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    /// A run satisfying the formula, present exactly when `holds`.
    pub witness: Option<Lasso>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Node {
    state: u32,
    q: u32,
    level: u32,
    accepting: bool,
}

struct Product<'a> {
    k: &'a KripkeStructure,
    b: &'a Buchi,
    labels: Vec<u64>,
    sets: u32,
}

impl Product<'_> {
    fn successors(&self, n: Node) -> Vec<Node> {
        let mut out = Vec::new();
        let label = self.labels[n.state as usize];
        for e in self.b.edges(n.q as usize) {
            if !e.enabled(label) {
                continue;
            }
            let mut level = n.level;
            while level < self.sets && e.marks >> level & 1 == 1 {
                level += 1;
            }
            let accepting = level == self.sets;
            if accepting {
                level = 0;
            }
            for &t in self.k.successors(n.state as usize) {
                out.push(Node { state: t as u32, q: e.target as u32, level, accepting });
            }
        }
        out
    }
}

/// Decides whether some run from an initial state satisfies `phi`.
pub fn mc_exists(k: &KripkeStructure, phi: &Ltl) -> Result<Verdict, LtlError> {
    let b = Buchi::build(phi, phi.atoms())?;
    mc_exists_with(k, phi, &b)
}

/// As [`mc_exists`] with a prebuilt automaton for `phi`, which lets callers
/// reuse one translation across many structures.
pub fn mc_exists_with(k: &KripkeStructure, phi: &Ltl, b: &Buchi) -> Result<Verdict, LtlError> {
    let positions: Vec<usize> = b
        .atoms()
        .iter()
        .map(|a| {
            k.vars()
                .iter()
                .position(|v| v == a)
                .ok_or_else(|| LtlError::UnknownAtom(a.clone()))
        })
        .collect::<Result<_, _>>()?;
    let labels = k
        .states()
        .iter()
        .map(|s| {
            positions
                .iter()
                .enumerate()
                .fold(0u64, |m, (bit, &v)| m | (u64::from(s.get(v)) << bit))
        })
        .collect();
    let product = Product { k, b, labels, sets: b.acceptance_sets() as u32 };
    let Some((stem, cycle)) = nested_dfs(&product) else {
        return Ok(Verdict { holds: false, witness: None });
    };
    let states = k.states();
    let lasso = Lasso::new(
        stem.iter().map(|n| states[n.state as usize]).collect(),
        cycle.iter().map(|n| states[n.state as usize]).collect(),
    )?;
    if !eval_lasso(phi, &lasso, k.vars(), 0)? {
        return Err(LtlError::InvalidWitness);
    }
    let lasso = shorten(phi, k, lasso)?;
    Ok(Verdict { holds: true, witness: Some(lasso) })
}

/// Decides whether every run from an initial state satisfies `phi`, as the
/// complement of the existential query for `!phi`.
pub fn mc_all(k: &KripkeStructure, phi: &Ltl) -> Result<bool, LtlError> {
    Ok(!mc_exists(k, &Ltl::not(phi.clone()))?.holds)
}

// Visited product nodes: a flat bit vector when the product is small
// enough, a hash set otherwise.
enum Visited {
    Dense { seen: Vec<bool>, states: usize, levels: usize },
    Sparse(HashSet<Node>),
}

const DENSE_LIMIT: usize = 1 << 24;

impl Visited {
    fn new(p: &Product<'_>) -> Self {
        let levels = p.sets.max(1) as usize;
        let size = p.k.len().saturating_mul(p.b.state_count()).saturating_mul(levels * 2);
        if size <= DENSE_LIMIT {
            Visited::Dense { seen: vec![false; size], states: p.b.state_count(), levels }
        } else {
            Visited::Sparse(HashSet::new())
        }
    }

    /// Marks `n`; true when it was not marked before.
    fn insert(&mut self, n: Node) -> bool {
        match self {
            Visited::Dense { seen, states, levels } => {
                let i = ((n.state as usize * *states + n.q as usize) * *levels + n.level as usize) * 2
                    + usize::from(n.accepting);
                !std::mem::replace(&mut seen[i], true)
            }
            Visited::Sparse(set) => set.insert(n),
        }
    }
}

// Returns the product path from an initial node to an accepting seed
// (excluding the seed) and the cycle through the seed (starting at it).
fn nested_dfs(p: &Product<'_>) -> Option<(Vec<Node>, Vec<Node>)> {
    let mut outer_seen = Visited::new(p);
    let mut inner_seen = Visited::new(p);
    let roots: Vec<Node> = p
        .k
        .initials()
        .iter()
        .map(|&s| Node { state: s as u32, q: p.b.initial() as u32, level: 0, accepting: p.sets == 0 })
        .collect();
    for root in roots {
        if !outer_seen.insert(root) {
            continue;
        }
        let mut stack: Vec<(Node, Vec<Node>, usize)> = vec![(root, p.successors(root), 0)];
        while let Some((node, succ, i)) = stack.last_mut() {
            if let Some(&next) = succ.get(*i) {
                *i += 1;
                if outer_seen.insert(next) {
                    let s = p.successors(next);
                    stack.push((next, s, 0));
                }
                continue;
            }
            let seed = *node;
            if seed.accepting {
                if let Some(cycle) = inner_dfs(p, seed, &mut inner_seen) {
                    let path: Vec<Node> = stack[..stack.len() - 1].iter().map(|f| f.0).collect();
                    return Some((path, cycle));
                }
            }
            stack.pop();
        }
    }
    None
}

fn inner_dfs(p: &Product<'_>, seed: Node, seen: &mut Visited) -> Option<Vec<Node>> {
    let mut stack: Vec<(Node, Vec<Node>, usize)> = vec![(seed, p.successors(seed), 0)];
    while let Some((_, succ, i)) = stack.last_mut() {
        if let Some(&next) = succ.get(*i) {
            *i += 1;
            if next == seed {
                return Some(stack.iter().map(|f| f.0).collect());
            }
            if seen.insert(next) {
                let s = p.successors(next);
                stack.push((next, s, 0));
            }
            continue;
        }
        stack.pop();
    }
    None
}

/// Greedy witness shortening: canonicalize the lasso, then repeatedly cut
/// repeated-state segments out of the stem and cycle while the formula still
/// holds. The result is shorter but not necessarily minimal.
fn shorten(phi: &Ltl, k: &KripkeStructure, mut lasso: Lasso) -> Result<Lasso, LtlError> {
    let vars = k.vars();
    let holds = |l: &Lasso| eval_lasso(phi, l, vars, 0);
    loop {
        normalize(&mut lasso);
        let mut improved = false;
        'search: for cand in candidates(&lasso) {
            if cand.len() < lasso.len() && cand.is_run_of(k) && holds(&cand)? {
                lasso = cand;
                improved = true;
                break 'search;
            }
        }
        if !improved {
            return Ok(lasso);
        }
    }
}

// Rewrites that preserve the infinite word.
fn normalize(l: &mut Lasso) {
    while let (Some(&s), Some(&c)) = (l.stem.last(), l.cycle.last()) {
        if s != c {
            break;
        }
        l.stem.pop();
        l.cycle.rotate_right(1);
    }
    let n = l.cycle.len();
    if let Some(p) = (1..n).find(|&p| n % p == 0 && (p..n).all(|i| l.cycle[i] == l.cycle[i - p])) {
        l.cycle.truncate(p);
    }
}

fn candidates(l: &Lasso) -> Vec<Lasso> {
    let mut out = Vec::new();
    let (stem, cycle) = (&l.stem, &l.cycle);
    for i in 0..stem.len() {
        for j in i + 1..stem.len() {
            if stem[i] == stem[j] {
                let mut s = stem[..i].to_vec();
                s.extend_from_slice(&stem[j..]);
                out.push(Lasso { stem: s, cycle: cycle.clone() });
            }
        }
        for (c, &t) in cycle.iter().enumerate() {
            if stem[i] == t {
                let mut rotated = cycle.clone();
                rotated.rotate_left(c);
                out.push(Lasso { stem: stem[..i].to_vec(), cycle: rotated });
            }
        }
    }
    for i in 0..cycle.len() {
        for j in i + 1..cycle.len() {
            if cycle[i] == cycle[j] {
                let mut c = cycle[..i].to_vec();
                c.extend_from_slice(&cycle[j..]);
                out.push(Lasso { stem: stem.clone(), cycle: c });
            }
        }
    }
    out
}
