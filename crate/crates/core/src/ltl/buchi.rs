//! Tableau translation of LTL into transition-based generalized Büchi
//! automata.
//!
//! A state is a set of obligations (NNF formulas that must hold from the
//! current position on). Expanding the conjunction of a state into disjunctive
//! normal form yields one transition per term: the literals the current
//! position must satisfy, the obligations passed to the next position, and the
//! until-formulas whose fulfilment was postponed. A transition belongs to the
//! acceptance set of `a U b` unless it postpones `a U b`.

use std::collections::HashMap;
use std::fmt;

use super::formula::Ltl;
use super::lasso::Lasso;
use crate::error::LtlError;

pub(crate) type NodeId = u32;

const TRUE: NodeId = 0;
const FALSE: NodeId = 1;

/// Most atoms or until-subformulas one automaton can track.
pub const MAX_TRACKED: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Node {
    True,
    False,
    Lit(u32, bool),
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
    Next(NodeId),
    Until(NodeId, NodeId),
    Release(NodeId, NodeId),
}

/// Hash-consed negation normal form.
#[derive(Clone, Debug)]
struct Arena {
    nodes: Vec<Node>,
    ids: HashMap<Node, NodeId>,
}

impl Arena {
    fn new() -> Self {
        let mut a = Arena { nodes: Vec::new(), ids: HashMap::new() };
        a.intern(Node::True);
        a.intern(Node::False);
        a
    }

    fn intern(&mut self, n: Node) -> NodeId {
        if let Some(&id) = self.ids.get(&n) {
            return id;
        }
        let id = self.nodes.len() as NodeId;
        self.nodes.push(n);
        self.ids.insert(n, id);
        id
    }

    fn mk(&mut self, n: Node) -> NodeId {
        match n {
            Node::And(a, b) => {
                if a == FALSE || b == FALSE {
                    FALSE
                } else if a == TRUE || a == b {
                    b
                } else if b == TRUE {
                    a
                } else {
                    self.intern(Node::And(a.min(b), a.max(b)))
                }
            }
            Node::Or(a, b) => {
                if a == TRUE || b == TRUE {
                    TRUE
                } else if a == FALSE || a == b {
                    b
                } else if b == FALSE {
                    a
                } else {
                    self.intern(Node::Or(a.min(b), a.max(b)))
                }
            }
            Node::Next(a) if a == TRUE || a == FALSE => a,
            Node::Until(a, b) if b == TRUE || b == FALSE || a == FALSE => b,
            Node::Release(a, b) if b == TRUE || b == FALSE || a == TRUE => b,
            other => self.intern(other),
        }
    }

    fn nnf(&mut self, f: &Ltl, positive: bool, atoms: &[String]) -> NodeId {
        let p = positive;
        match f {
            Ltl::True => if p { TRUE } else { FALSE },
            Ltl::False => if p { FALSE } else { TRUE },
            Ltl::Atom(a) => {
                let i = atoms.iter().position(|x| x == a).expect("atom collected");
                self.mk(Node::Lit(i as u32, p))
            }
            Ltl::Not(a) => self.nnf(a, !p, atoms),
            Ltl::And(a, b) => {
                let (x, y) = (self.nnf(a, p, atoms), self.nnf(b, p, atoms));
                self.mk(if p { Node::And(x, y) } else { Node::Or(x, y) })
            }
            Ltl::Or(a, b) => {
                let (x, y) = (self.nnf(a, p, atoms), self.nnf(b, p, atoms));
                self.mk(if p { Node::Or(x, y) } else { Node::And(x, y) })
            }
            Ltl::Implies(a, b) => {
                let (x, y) = (self.nnf(a, !p, atoms), self.nnf(b, p, atoms));
                self.mk(if p { Node::Or(x, y) } else { Node::And(x, y) })
            }
            Ltl::Iff(a, b) => {
                let (ap, an) = (self.nnf(a, true, atoms), self.nnf(a, false, atoms));
                let (bp, bn) = (self.nnf(b, true, atoms), self.nnf(b, false, atoms));
                let (l, r) = if p {
                    (self.mk(Node::And(ap, bp)), self.mk(Node::And(an, bn)))
                } else {
                    (self.mk(Node::And(ap, bn)), self.mk(Node::And(an, bp)))
                };
                self.mk(Node::Or(l, r))
            }
            Ltl::Next(a) => {
                let x = self.nnf(a, p, atoms);
                self.mk(Node::Next(x))
            }
            Ltl::Finally(a) => {
                let x = self.nnf(a, p, atoms);
                self.mk(if p { Node::Until(TRUE, x) } else { Node::Release(FALSE, x) })
            }
            Ltl::Globally(a) => {
                let x = self.nnf(a, p, atoms);
                self.mk(if p { Node::Release(FALSE, x) } else { Node::Until(TRUE, x) })
            }
            Ltl::Until(a, b) => {
                let (x, y) = (self.nnf(a, p, atoms), self.nnf(b, p, atoms));
                self.mk(if p { Node::Until(x, y) } else { Node::Release(x, y) })
            }
        }
    }

    fn branches(&self, id: NodeId) -> bool {
        matches!(
            self.nodes[id as usize],
            Node::Or(..) | Node::Until(..) | Node::Release(..)
        )
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, id: NodeId, atoms: &[String]) -> fmt::Result {
        match self.nodes[id as usize] {
            Node::True => f.write_str("true"),
            Node::False => f.write_str("false"),
            Node::Lit(a, true) => f.write_str(&atoms[a as usize]),
            Node::Lit(a, false) => write!(f, "!{}", atoms[a as usize]),
            Node::And(a, b) => self.bin(f, "&", a, b, atoms),
            Node::Or(a, b) => self.bin(f, "|", a, b, atoms),
            Node::Until(a, b) => self.bin(f, "U", a, b, atoms),
            Node::Release(a, b) => self.bin(f, "R", a, b, atoms),
            Node::Next(a) => {
                f.write_str("X ")?;
                self.write(f, a, atoms)
            }
        }
    }

    fn bin(&self, f: &mut fmt::Formatter<'_>, op: &str, a: NodeId, b: NodeId, atoms: &[String]) -> fmt::Result {
        f.write_str("(")?;
        self.write(f, a, atoms)?;
        write!(f, " {op} ")?;
        self.write(f, b, atoms)?;
        f.write_str(")")
    }
}

/// One automaton transition: the current position must make every atom in
/// `pos` true and every atom in `neg` false.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub pos: u64,
    pub neg: u64,
    pub target: usize,
    /// Bit `k` set when the transition belongs to acceptance set `k`.
    pub marks: u64,
}

impl Edge {
    /// Whether a position labelled by atom mask `label` enables this edge.
    pub fn enabled(&self, label: u64) -> bool {
        self.pos & !label == 0 && self.neg & label == 0
    }
}

/// Transition-based generalized Büchi automaton over atom masks.
#[derive(Clone, Debug)]
pub struct Buchi {
    atoms: Vec<String>,
    arena: Arena,
    states: Vec<Vec<NodeId>>,
    edges: Vec<Vec<Edge>>,
    acceptance: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Term {
    pos: u64,
    neg: u64,
    next: Vec<NodeId>,
    postponed: u64,
}

#[derive(Clone)]
struct Partial {
    todo: Vec<NodeId>,
    done: Vec<NodeId>,
    pos: u64,
    neg: u64,
    next: Vec<NodeId>,
    postponed: u64,
}

/// Translates `phi` into an automaton accepting exactly its models. Atom
/// bit `i` of a label refers to `atoms()[i]`.
pub fn to_buchi(phi: &Ltl) -> Result<Buchi, LtlError> {
    Buchi::build(phi, phi.atoms())
}

impl Buchi {
    /// Builds the automaton over an explicit atom list, which must contain
    /// every atom of `phi`.
    pub fn build(phi: &Ltl, atoms: Vec<String>) -> Result<Buchi, LtlError> {
        if atoms.len() > MAX_TRACKED {
            return Err(LtlError::TooLarge(format!("{} atoms", atoms.len())));
        }
        if let Some(a) = phi.atoms().into_iter().find(|a| !atoms.contains(a)) {
            return Err(LtlError::UnknownAtom(a));
        }
        let mut arena = Arena::new();
        let root = arena.nnf(phi, true, &atoms);
        let untils: HashMap<NodeId, u32> = arena
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| matches!(n, Node::Until(..)))
            .enumerate()
            .map(|(k, (id, _))| (id as NodeId, k as u32))
            .collect();
        if untils.len() > MAX_TRACKED {
            return Err(LtlError::TooLarge(format!("{} until-subformulas", untils.len())));
        }
        let all_marks = if untils.len() == 64 { u64::MAX } else { (1u64 << untils.len()) - 1 };

        let initial = vec![root].into_iter().filter(|&r| r != TRUE).collect::<Vec<_>>();
        let mut b = Buchi {
            atoms,
            arena,
            states: vec![initial.clone()],
            edges: vec![Vec::new()],
            acceptance: untils.len(),
        };
        let mut index: HashMap<Vec<NodeId>, usize> = HashMap::from([(initial, 0)]);
        let mut work = vec![0usize];
        while let Some(q) = work.pop() {
            let terms = b.expand(&b.states[q].clone(), &untils);
            let mut edges = Vec::with_capacity(terms.len());
            for t in terms {
                let target = *index.entry(t.next.clone()).or_insert_with(|| {
                    b.states.push(t.next.clone());
                    b.edges.push(Vec::new());
                    work.push(b.states.len() - 1);
                    b.states.len() - 1
                });
                edges.push(Edge { pos: t.pos, neg: t.neg, target, marks: all_marks & !t.postponed });
            }
            b.edges[q] = edges;
        }
        Ok(b)
    }

    fn expand(&self, obligations: &[NodeId], untils: &HashMap<NodeId, u32>) -> Vec<Term> {
        let nodes = &self.arena.nodes;
        let mut out: Vec<Term> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![Partial {
            todo: obligations.to_vec(),
            done: Vec::new(),
            pos: 0,
            neg: 0,
            next: Vec::new(),
            postponed: 0,
        }];
        'branch: while let Some(mut p) = stack.pop() {
            loop {
                // settle non-branching obligations first so conflicts prune early
                let pick = p
                    .todo
                    .iter()
                    .rposition(|&f| !self.arena.branches(f))
                    .or_else(|| p.todo.len().checked_sub(1));
                let Some(k) = pick else { break };
                let f = p.todo.swap_remove(k);
                if p.done.contains(&f) {
                    continue;
                }
                p.done.push(f);
                match nodes[f as usize] {
                    Node::True => {}
                    Node::False => continue 'branch,
                    Node::Lit(a, true) => {
                        if p.neg >> a & 1 == 1 {
                            continue 'branch;
                        }
                        p.pos |= 1 << a;
                    }
                    Node::Lit(a, false) => {
                        if p.pos >> a & 1 == 1 {
                            continue 'branch;
                        }
                        p.neg |= 1 << a;
                    }
                    Node::And(a, b) => p.todo.extend([a, b]),
                    Node::Next(a) => p.next.push(a),
                    Node::Or(a, b) => {
                        let mut q = p.clone();
                        q.todo.push(b);
                        stack.push(q);
                        p.todo.push(a);
                    }
                    Node::Until(a, b) => {
                        let mut q = p.clone();
                        q.todo.push(a);
                        q.next.push(f);
                        q.postponed |= 1 << untils[&f];
                        stack.push(q);
                        p.todo.push(b);
                    }
                    Node::Release(a, b) => {
                        let mut q = p.clone();
                        q.todo.push(b);
                        q.next.push(f);
                        stack.push(q);
                        p.todo.extend([a, b]);
                    }
                }
            }
            p.next.retain(|&n| n != TRUE);
            p.next.sort_unstable();
            p.next.dedup();
            if p.next.contains(&FALSE) || self.contradictory(&p.next) {
                continue;
            }
            let term = Term { pos: p.pos, neg: p.neg, next: p.next, postponed: p.postponed };
            if seen.insert(term.clone()) {
                out.push(term);
            }
        }
        out
    }

    // Next-obligations containing a literal and its complement lead nowhere.
    fn contradictory(&self, next: &[NodeId]) -> bool {
        let (mut pos, mut neg) = (0u64, 0u64);
        for &n in next {
            match self.arena.nodes[n as usize] {
                Node::Lit(a, true) => pos |= 1 << a,
                Node::Lit(a, false) => neg |= 1 << a,
                _ => {}
            }
        }
        pos & neg != 0
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn edges(&self, q: usize) -> &[Edge] {
        &self.edges[q]
    }

    pub fn acceptance_sets(&self) -> usize {
        self.acceptance
    }

    pub fn all_marks(&self) -> u64 {
        if self.acceptance == 64 {
            u64::MAX
        } else {
            (1u64 << self.acceptance) - 1
        }
    }

    /// Whether the automaton accepts the infinite word spelled by `run`.
    /// Emptiness here uses strongly connected components of the product
    /// with the lasso, independently of the nested search in `mc_exists`.
    pub fn accepts(&self, run: &Lasso, vars: &[String]) -> Result<bool, LtlError> {
        let map: Vec<usize> = self
            .atoms
            .iter()
            .map(|a| {
                vars.iter()
                    .position(|v| v == a)
                    .ok_or_else(|| LtlError::UnknownAtom(a.clone()))
            })
            .collect::<Result<_, _>>()?;
        let labels: Vec<u64> = (0..run.len())
            .map(|p| {
                let s = run.at(p);
                map.iter()
                    .enumerate()
                    .fold(0u64, |m, (k, &v)| m | (u64::from(s.get(v)) << k))
            })
            .collect();
        let len = run.len();
        let id = |q: usize, p: usize| q * len + p;
        let n = self.state_count() * len;
        let mut adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
        for q in 0..self.state_count() {
            for p in 0..len {
                for e in &self.edges[q] {
                    if e.enabled(labels[p]) {
                        adj[id(q, p)].push((id(e.target, run.succ(p)), e.marks));
                    }
                }
            }
        }
        let reach = crate::graph::reachable(&adj, [id(self.initial(), 0)]);
        let comp = crate::graph::scc(&adj);
        let mut marks: HashMap<usize, u64> = HashMap::new();
        for u in 0..n {
            if !reach[u] {
                continue;
            }
            for &(v, m) in &adj[u] {
                if comp[u] == comp[v] {
                    *marks.entry(comp[u]).or_default() |= m;
                }
            }
        }
        Ok(marks.values().any(|&m| m == self.all_marks()))
    }
}

impl fmt::Display for Buchi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "automaton: {} states, {} acceptance sets",
            self.state_count(),
            self.acceptance
        )?;
        for (q, obligations) in self.states.iter().enumerate() {
            write!(f, "q{q} {{")?;
            for (i, &o) in obligations.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                self.arena.write(f, o, &self.atoms)?;
            }
            writeln!(f, "}}")?;
            for e in &self.edges[q] {
                let lits: Vec<String> = (0..self.atoms.len())
                    .filter_map(|a| {
                        if e.pos >> a & 1 == 1 {
                            Some(self.atoms[a].clone())
                        } else if e.neg >> a & 1 == 1 {
                            Some(format!("!{}", self.atoms[a]))
                        } else {
                            None
                        }
                    })
                    .collect();
                writeln!(f, "  [{}] -> q{} marks={:b}", lits.join(" "), e.target, e.marks)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::State;

    fn vars() -> Vec<String> {
        vec!["p".into()]
    }

    fn run(stem: &[u64], cycle: &[u64]) -> Lasso {
        Lasso::new(
            stem.iter().map(|&b| State(b)).collect(),
            cycle.iter().map(|&b| State(b)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn eventually_p() {
        let b = to_buchi(&Ltl::finally(Ltl::atom("p"))).unwrap();
        assert_eq!(b.state_count(), 2);
        assert!(b.accepts(&run(&[0, 0], &[1]), &vars()).unwrap());
        assert!(b.accepts(&run(&[1], &[0]), &vars()).unwrap());
        assert!(!b.accepts(&run(&[0], &[0]), &vars()).unwrap());
    }

    #[test]
    fn infinitely_often_p() {
        let gf = Ltl::globally(Ltl::finally(Ltl::atom("p")));
        let dual = Ltl::not(Ltl::finally(Ltl::globally(Ltl::not(Ltl::atom("p")))));
        let (a, b) = (to_buchi(&gf).unwrap(), to_buchi(&dual).unwrap());
        for (stem, cycle) in [(vec![], vec![0, 1]), (vec![1], vec![0]), (vec![0], vec![1]), (vec![], vec![0])] {
            let r = run(&stem, &cycle);
            assert_eq!(a.accepts(&r, &vars()).unwrap(), b.accepts(&r, &vars()).unwrap());
        }
        assert!(a.accepts(&run(&[], &[0, 0, 1]), &vars()).unwrap());
        assert!(!a.accepts(&run(&[1, 1], &[0]), &vars()).unwrap());
    }

    #[test]
    fn constants() {
        let t = to_buchi(&Ltl::True).unwrap();
        assert!(t.accepts(&run(&[], &[0]), &vars()).unwrap());
        let f = to_buchi(&Ltl::False).unwrap();
        assert!(!f.accepts(&run(&[], &[0]), &vars()).unwrap());
        assert_eq!(f.edge_count(), 0);
    }

    #[test]
    fn display_lists_states() {
        let b = to_buchi(&Ltl::until(Ltl::atom("p"), Ltl::atom("q"))).unwrap();
        let text = b.to_string();
        assert!(text.contains("(p U q)"), "{text}");
    }
}
