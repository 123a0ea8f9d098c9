//! Reduced ordered binary decision diagrams with complement edges.
//!
//! Every function is an [`Edge`]: a node index plus a complement bit. Node 0
//! is the single terminal, read as `true`; `false` is its complemented edge.
//! The high edge of a stored node is never complemented, which keeps the
//! representation canonical: two functions are equal iff their edges are.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::error::BddError;
use crate::expr::{Assignment, BoolExpr, VarRef};

/// Default cap on the node table.
pub const DEFAULT_NODE_CAP: usize = 5_000_000;

static NEXT_MANAGER: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(u32);

impl Edge {
    const TRUE: Edge = Edge(0);
    const FALSE: Edge = Edge(1);

    fn node(self) -> usize {
        (self.0 >> 1) as usize
    }

    fn complemented(self) -> bool {
        self.0 & 1 == 1
    }

    fn regular(self) -> Edge {
        Edge(self.0 & !1)
    }

    fn flip(self) -> Edge {
        Edge(self.0 ^ 1)
    }

    fn flip_if(self, c: bool) -> Edge {
        Edge(self.0 ^ u32::from(c))
    }

    fn is_const(self) -> bool {
        self.node() == 0
    }
}

/// A function owned by one manager.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bdd {
    manager: u64,
    edge: Edge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Node {
    level: u32,
    low: Edge,
    high: Edge,
}

const TERMINAL_LEVEL: u32 = u32::MAX;

/// A total order over variables; earlier variables are tested first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ordering {
    vars: Vec<VarRef>,
}

impl Ordering {
    pub fn new(vars: Vec<VarRef>) -> Result<Self, BddError> {
        let mut seen = BTreeSet::new();
        for v in &vars {
            if !seen.insert(v) {
                return Err(BddError::DuplicateVar(v.to_string()));
            }
        }
        Ok(Ordering { vars })
    }

    /// Unprimed variables only, in the given order.
    pub fn plain(vars: &[String]) -> Self {
        Ordering { vars: vars.iter().map(VarRef::current).collect() }
    }

    /// `x1 < x1' < x2 < x2' < ...`.
    pub fn interleaved(vars: &[String]) -> Self {
        Ordering {
            vars: vars.iter().flat_map(|v| [VarRef::current(v.clone()), VarRef::next(v.clone())]).collect(),
        }
    }

    /// Reverses the order of the variables, keeping each primed copy right
    /// after its unprimed variable.
    pub fn reversed(&self) -> Self {
        let mut groups: Vec<Vec<VarRef>> = Vec::new();
        for v in &self.vars {
            match groups.last_mut() {
                Some(g) if v.primed && g[0].name == v.name && !g[0].primed => g.push(v.clone()),
                _ => groups.push(vec![v.clone()]),
            }
        }
        Ordering { vars: groups.into_iter().rev().flatten().collect() }
    }

    /// `natural`, `reverse`, or a comma-separated list such as `x1,x1',x2`.
    /// A list without primed names gets each primed copy interleaved when
    /// `with_primes` is set.
    pub fn parse(text: &str, vars: &[String], with_primes: bool) -> Result<Self, BddError> {
        let base = if with_primes { Ordering::interleaved(vars) } else { Ordering::plain(vars) };
        match text.trim() {
            "natural" => Ok(base),
            "reverse" => Ok(base.reversed()),
            list => {
                let mut out = Vec::new();
                for item in list.split(',').map(str::trim) {
                    let (name, primed) = match item.strip_suffix('\'') {
                        Some(n) => (n, true),
                        None => (item, false),
                    };
                    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                        return Err(BddError::BadOrdering(format!("bad entry `{item}`")));
                    }
                    out.push(VarRef { name: name.to_string(), primed });
                }
                if with_primes && out.iter().all(|v| !v.primed) {
                    out = out.into_iter().flat_map(|v| [v.clone(), v.with_prime(true)]).collect();
                }
                let ord = Ordering::new(out)?;
                for v in &base.vars {
                    if !ord.vars.contains(v) {
                        return Err(BddError::MissingVar(v.to_string()));
                    }
                }
                Ok(ord)
            }
        }
    }

    pub fn vars(&self) -> &[VarRef] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }
}

/// Owns the node table and operation caches for one ordering.
#[derive(Debug)]
pub struct Manager {
    id: u64,
    ordering: Ordering,
    levels: HashMap<VarRef, u32>,
    nodes: Vec<Node>,
    unique: HashMap<Node, u32>,
    and_cache: HashMap<(Edge, Edge), Edge>,
    xor_cache: HashMap<(Edge, Edge), Edge>,
    cap: usize,
}

impl Manager {
    pub fn new(ordering: Ordering) -> Self {
        Manager::with_cap(ordering, DEFAULT_NODE_CAP)
    }

    pub fn with_cap(ordering: Ordering, cap: usize) -> Self {
        let levels = ordering.vars.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect();
        Manager {
            id: NEXT_MANAGER.fetch_add(1, AtomicOrdering::Relaxed),
            ordering,
            levels,
            nodes: vec![Node { level: TERMINAL_LEVEL, low: Edge::TRUE, high: Edge::TRUE }],
            unique: HashMap::new(),
            and_cache: HashMap::new(),
            xor_cache: HashMap::new(),
            cap,
        }
    }

    pub fn ordering(&self) -> &Ordering {
        &self.ordering
    }

    /// Entries in the node table, including the terminal. Nothing is ever
    /// freed, so this is also the peak size.
    pub fn table_size(&self) -> usize {
        self.nodes.len()
    }

    /// Every node allocated so far, counted like [`Manager::node_count`]
    /// (both terminals included). Nothing is freed, so this is the peak.
    pub fn peak_node_count(&self) -> usize {
        self.nodes.len() + 1
    }

    fn wrap(&self, edge: Edge) -> Bdd {
        Bdd { manager: self.id, edge }
    }

    fn check(&self, f: Bdd) -> Result<Edge, BddError> {
        if f.manager == self.id {
            Ok(f.edge)
        } else {
            Err(BddError::ForeignManager)
        }
    }

    pub fn constant(&self, value: bool) -> Bdd {
        self.wrap(if value { Edge::TRUE } else { Edge::FALSE })
    }

    pub fn is_true(&self, f: Bdd) -> bool {
        f.manager == self.id && f.edge == Edge::TRUE
    }

    pub fn is_false(&self, f: Bdd) -> bool {
        f.manager == self.id && f.edge == Edge::FALSE
    }

    pub fn level_of(&self, v: &VarRef) -> Result<u32, BddError> {
        self.levels.get(v).copied().ok_or_else(|| BddError::MissingVar(v.to_string()))
    }

    pub fn var(&mut self, v: &VarRef) -> Result<Bdd, BddError> {
        let level = self.level_of(v)?;
        let e = self.mk(level, Edge::FALSE, Edge::TRUE)?;
        Ok(self.wrap(e))
    }

    fn level(&self, e: Edge) -> u32 {
        self.nodes[e.node()].level
    }

    // Cofactors of `e` with respect to `level` (which must be at or above
    // the top level of `e`).
    fn cofactors(&self, e: Edge, level: u32) -> (Edge, Edge) {
        let n = self.nodes[e.node()];
        if n.level != level {
            return (e, e);
        }
        let c = e.complemented();
        (n.low.flip_if(c), n.high.flip_if(c))
    }

    fn mk(&mut self, level: u32, low: Edge, high: Edge) -> Result<Edge, BddError> {
        if low == high {
            return Ok(low);
        }
        let c = high.complemented();
        let key = Node { level, low: low.flip_if(c), high: high.flip_if(c) };
        if let Some(&i) = self.unique.get(&key) {
            return Ok(Edge(i << 1).flip_if(c));
        }
        if self.peak_node_count() >= self.cap {
            return Err(BddError::NodeLimit(self.cap));
        }
        let i = self.nodes.len() as u32;
        self.nodes.push(key);
        self.unique.insert(key, i);
        Ok(Edge(i << 1).flip_if(c))
    }

    pub fn not(&self, f: Bdd) -> Result<Bdd, BddError> {
        Ok(self.wrap(self.check(f)?.flip()))
    }

    fn and_e(&mut self, f: Edge, g: Edge) -> Result<Edge, BddError> {
        if f == Edge::FALSE || g == Edge::FALSE || f == g.flip() {
            return Ok(Edge::FALSE);
        }
        if f == Edge::TRUE || f == g {
            return Ok(g);
        }
        if g == Edge::TRUE {
            return Ok(f);
        }
        let key = if f < g { (f, g) } else { (g, f) };
        if let Some(&r) = self.and_cache.get(&key) {
            return Ok(r);
        }
        let level = self.level(f).min(self.level(g));
        let (f0, f1) = self.cofactors(f, level);
        let (g0, g1) = self.cofactors(g, level);
        let low = self.and_e(f0, g0)?;
        let high = self.and_e(f1, g1)?;
        let r = self.mk(level, low, high)?;
        self.and_cache.insert(key, r);
        Ok(r)
    }

    fn xor_e(&mut self, f: Edge, g: Edge) -> Result<Edge, BddError> {
        // complements factor out of both arguments
        let c = f.complemented() ^ g.complemented();
        let (f, g) = (f.regular(), g.regular());
        if f == g {
            return Ok(Edge::FALSE.flip_if(c));
        }
        if f == Edge::TRUE {
            return Ok(g.flip_if(!c));
        }
        if g == Edge::TRUE {
            return Ok(f.flip_if(!c));
        }
        let key = if f < g { (f, g) } else { (g, f) };
        if let Some(&r) = self.xor_cache.get(&key) {
            return Ok(r.flip_if(c));
        }
        let level = self.level(f).min(self.level(g));
        let (f0, f1) = self.cofactors(f, level);
        let (g0, g1) = self.cofactors(g, level);
        let low = self.xor_e(f0, g0)?;
        let high = self.xor_e(f1, g1)?;
        let r = self.mk(level, low, high)?;
        self.xor_cache.insert(key, r);
        Ok(r.flip_if(c))
    }

    pub fn and(&mut self, f: Bdd, g: Bdd) -> Result<Bdd, BddError> {
        let (f, g) = (self.check(f)?, self.check(g)?);
        let r = self.and_e(f, g)?;
        Ok(self.wrap(r))
    }

    pub fn or(&mut self, f: Bdd, g: Bdd) -> Result<Bdd, BddError> {
        let (f, g) = (self.check(f)?, self.check(g)?);
        let r = self.and_e(f.flip(), g.flip())?;
        Ok(self.wrap(r.flip()))
    }

    pub fn xor(&mut self, f: Bdd, g: Bdd) -> Result<Bdd, BddError> {
        let (f, g) = (self.check(f)?, self.check(g)?);
        let r = self.xor_e(f, g)?;
        Ok(self.wrap(r))
    }

    pub fn iff(&mut self, f: Bdd, g: Bdd) -> Result<Bdd, BddError> {
        let r = self.xor(f, g)?;
        self.not(r)
    }

    pub fn implies(&mut self, f: Bdd, g: Bdd) -> Result<Bdd, BddError> {
        let (f, g) = (self.check(f)?, self.check(g)?);
        let r = self.and_e(f, g.flip())?;
        Ok(self.wrap(r.flip()))
    }

    pub fn apply(&mut self, op: BinOp, f: Bdd, g: Bdd) -> Result<Bdd, BddError> {
        match op {
            BinOp::And => self.and(f, g),
            BinOp::Or => self.or(f, g),
            BinOp::Xor => self.xor(f, g),
            BinOp::Implies => self.implies(f, g),
            BinOp::Iff => self.iff(f, g),
        }
    }

    /// `if c then t else e`.
    pub fn ite(&mut self, c: Bdd, t: Bdd, e: Bdd) -> Result<Bdd, BddError> {
        let a = self.and(c, t)?;
        let nc = self.not(c)?;
        let b = self.and(nc, e)?;
        self.or(a, b)
    }

    /// Canonical diagram of `expr`.
    pub fn build(&mut self, expr: &BoolExpr) -> Result<Bdd, BddError> {
        Ok(match expr {
            BoolExpr::Const(c) => self.constant(*c),
            BoolExpr::Var(v) => self.var(v)?,
            BoolExpr::Not(a) => {
                let a = self.build(a)?;
                self.not(a)?
            }
            BoolExpr::And(a, b) => self.bin(BinOp::And, a, b)?,
            BoolExpr::Or(a, b) => self.bin(BinOp::Or, a, b)?,
            BoolExpr::Implies(a, b) => self.bin(BinOp::Implies, a, b)?,
            BoolExpr::Iff(a, b) | BoolExpr::Eq(a, b) => self.bin(BinOp::Iff, a, b)?,
        })
    }

    fn bin(&mut self, op: BinOp, a: &BoolExpr, b: &BoolExpr) -> Result<Bdd, BddError> {
        let a = self.build(a)?;
        let b = self.build(b)?;
        self.apply(op, a, b)
    }

    /// Follows one path under `assignment`.
    pub fn evaluate(&self, f: Bdd, assignment: &impl Assignment) -> Result<bool, BddError> {
        let mut e = self.check(f)?;
        let mut value = true;
        loop {
            value ^= e.complemented();
            let n = self.nodes[e.node()];
            if n.level == TERMINAL_LEVEL {
                return Ok(value);
            }
            let v = &self.ordering.vars[n.level as usize];
            let bit = assignment.value(v).ok_or_else(|| BddError::Unassigned(v.to_string()))?;
            e = if bit { n.high } else { n.low };
        }
    }

    /// `∃ vars. f`.
    pub fn exists(&mut self, f: Bdd, vars: &[VarRef]) -> Result<Bdd, BddError> {
        let e = self.check(f)?;
        let mut levels = vec![false; self.ordering.len()];
        for v in vars {
            levels[self.level_of(v)? as usize] = true;
        }
        let last = levels.iter().rposition(|&b| b);
        let Some(last) = last else { return Ok(f) };
        let mut memo = HashMap::new();
        let r = self.exists_e(e, &levels, last as u32, &mut memo)?;
        Ok(self.wrap(r))
    }

    fn exists_e(&mut self, e: Edge, levels: &[bool], last: u32, memo: &mut HashMap<Edge, Edge>) -> Result<Edge, BddError> {
        let level = self.level(e);
        if e.is_const() || level > last {
            return Ok(e);
        }
        if let Some(&r) = memo.get(&e) {
            return Ok(r);
        }
        let (lo, hi) = self.cofactors(e, level);
        let l = self.exists_e(lo, levels, last, memo)?;
        let h = self.exists_e(hi, levels, last, memo)?;
        let r = if levels[level as usize] {
            self.and_e(l.flip(), h.flip())?.flip()
        } else {
            self.mk(level, l, h)?
        };
        memo.insert(e, r);
        Ok(r)
    }

    /// Substitutes variables by variables. Works for any substitution,
    /// order-preserving or not.
    pub fn rename(&mut self, f: Bdd, map: &HashMap<VarRef, VarRef>) -> Result<Bdd, BddError> {
        let e = self.check(f)?;
        let mut target = Vec::with_capacity(self.ordering.len());
        for v in self.ordering.vars.clone() {
            let t = map.get(&v).unwrap_or(&v);
            target.push(self.level_of(t)?);
        }
        let mut memo = HashMap::new();
        let r = self.rename_e(e, &target, &mut memo)?;
        Ok(self.wrap(r))
    }

    fn rename_e(&mut self, e: Edge, target: &[u32], memo: &mut HashMap<Edge, Edge>) -> Result<Edge, BddError> {
        if e.is_const() {
            return Ok(e);
        }
        if let Some(&r) = memo.get(&e) {
            return Ok(r);
        }
        let level = self.level(e);
        let (lo, hi) = self.cofactors(e, level);
        let l = self.rename_e(lo, target, memo)?;
        let h = self.rename_e(hi, target, memo)?;
        let v = self.mk(target[level as usize], Edge::FALSE, Edge::TRUE)?;
        // ite(v, h, l)
        let a = self.and_e(v, h)?;
        let b = self.and_e(v.flip(), l)?;
        let r = self.and_e(a.flip(), b.flip())?.flip();
        memo.insert(e, r);
        Ok(r)
    }

    /// Decision nodes reachable from `f` plus the terminal values it can
    /// produce: 1 for a constant, 3 for a single variable.
    pub fn node_count(&self, f: Bdd) -> Result<usize, BddError> {
        let e = self.check(f)?;
        if e.is_const() {
            return Ok(1);
        }
        Ok(self.reachable_nodes(e).len() + 2)
    }

    fn reachable_nodes(&self, e: Edge) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![e.node()];
        while let Some(i) = stack.pop() {
            if i == 0 || !seen.insert(i) {
                continue;
            }
            let n = self.nodes[i];
            stack.push(n.low.node());
            stack.push(n.high.node());
        }
        seen
    }

    /// Variables `f` depends on.
    pub fn support(&self, f: Bdd) -> Result<Vec<VarRef>, BddError> {
        let e = self.check(f)?;
        let levels: BTreeSet<u32> = self.reachable_nodes(e).into_iter().map(|i| self.nodes[i].level).collect();
        Ok(levels.into_iter().map(|l| self.ordering.vars[l as usize].clone()).collect())
    }

    /// Checks that the table is ordered, reduced, free of duplicates and
    /// that stored high edges are regular.
    pub fn validate(&self) -> Result<(), String> {
        let mut seen = HashMap::new();
        for (i, n) in self.nodes.iter().enumerate().skip(1) {
            if n.low == n.high {
                return Err(format!("node {i} has equal children"));
            }
            if n.high.complemented() {
                return Err(format!("node {i} has a complemented high edge"));
            }
            for child in [n.low, n.high] {
                if self.level(child) <= n.level {
                    return Err(format!("node {i} is not ordered above its children"));
                }
            }
            if let Some(j) = seen.insert(*n, i) {
                return Err(format!("nodes {j} and {i} are identical"));
            }
            if self.unique.get(n) != Some(&(i as u32)) {
                return Err(format!("node {i} missing from the unique table"));
            }
        }
        Ok(())
    }

    /// Graphviz rendering of `f`. Dashed edges are low edges, dotted edges
    /// complemented.
    pub fn to_dot(&self, f: Bdd) -> Result<String, BddError> {
        let e = self.check(f)?;
        let mut s = String::from("digraph bdd {\n  t [shape=box,label=\"1\"];\n");
        let edge_attr = |e: Edge, low: bool| {
            let mut a = Vec::new();
            if low {
                a.push("style=dashed");
            }
            if e.complemented() {
                a.push("arrowhead=odot");
            }
            a.join(",")
        };
        let name = |i: usize| if i == 0 { "t".to_string() } else { format!("n{i}") };
        let _ = writeln!(s, "  root [shape=point];\n  root -> {} [{}];", name(e.node()), edge_attr(e, false));
        for i in self.reachable_nodes(e) {
            let n = self.nodes[i];
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", self.ordering.vars[n.level as usize]);
            let _ = writeln!(s, "  n{i} -> {} [{}];", name(n.low.node()), edge_attr(n.low, true));
            let _ = writeln!(s, "  n{i} -> {} [{}];", name(n.high.node()), edge_attr(n.high, false));
        }
        s.push_str("}\n");
        Ok(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    And,
    Or,
    Xor,
    Implies,
    Iff,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::eval_bool;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn constants_and_variables() {
        let mut m = Manager::new(Ordering::plain(&names(2)));
        let t = m.constant(true);
        assert_eq!(m.node_count(t).unwrap(), 1);
        let x = m.var(&VarRef::current("x1")).unwrap();
        assert_eq!(m.node_count(x).unwrap(), 3);
        let nx = m.not(x).unwrap();
        let both = m.and(x, nx).unwrap();
        assert!(m.is_false(both));
        assert!(m.var(&VarRef::current("zz")).is_err());
    }

    #[test]
    fn implication_over_primed_pair() {
        let vars = vec!["x".to_string()];
        let mut m = Manager::new(Ordering::interleaved(&vars));
        let f = m.build(&BoolExpr::implies(BoolExpr::var("x"), BoolExpr::primed("x"))).unwrap();
        for (x, xp) in [(false, false), (false, true), (true, false), (true, true)] {
            let a = |v: &VarRef| Some(if v.primed { xp } else { x });
            assert_eq!(m.evaluate(f, &a).unwrap(), !x || xp);
        }
        assert_eq!(m.node_count(f).unwrap(), 4);
        m.validate().unwrap();
    }

    #[test]
    fn parity_is_linear() {
        for n in 1..=16 {
            for ord in [Ordering::plain(&names(n)), Ordering::plain(&names(n)).reversed()] {
                let mut m = Manager::new(ord);
                let mut f = m.constant(false);
                for v in names(n) {
                    let x = m.var(&VarRef::current(v)).unwrap();
                    f = m.xor(f, x).unwrap();
                }
                assert_eq!(m.node_count(f).unwrap(), n + 2);
                m.validate().unwrap();
            }
        }
    }

    #[test]
    fn exists_and_rename() {
        let mut m = Manager::new(Ordering::interleaved(&names(2)));
        let xy = m.build(&BoolExpr::and(BoolExpr::var("x1"), BoolExpr::var("x2"))).unwrap();
        let x = m.build(&BoolExpr::var("x1")).unwrap();
        assert_eq!(m.exists(xy, &[VarRef::current("x2")]).unwrap(), x);
        assert_eq!(m.exists(xy, &[]).unwrap(), xy);
        let map = HashMap::from([(VarRef::current("x1"), VarRef::next("x2"))]);
        let r = m.rename(x, &map).unwrap();
        assert_eq!(r, m.var(&VarRef::next("x2")).unwrap());
    }

    #[test]
    fn foreign_handles_are_rejected() {
        let mut a = Manager::new(Ordering::plain(&names(1)));
        let mut b = Manager::new(Ordering::plain(&names(1)));
        let x = a.var(&VarRef::current("x1")).unwrap();
        let y = b.var(&VarRef::current("x1")).unwrap();
        assert_eq!(a.and(x, y).unwrap_err(), BddError::ForeignManager);
    }

    #[test]
    fn node_cap() {
        let mut m = Manager::with_cap(Ordering::plain(&names(3)), 3);
        let x = m.var(&VarRef::current("x1")).unwrap();
        assert_eq!(m.peak_node_count(), 3);
        assert_eq!(m.node_count(x).unwrap(), 3);
        assert_eq!(m.var(&VarRef::current("x2")).unwrap_err(), BddError::NodeLimit(3));
    }

    #[test]
    fn build_matches_eval() {
        let e = BoolExpr::iff(
            BoolExpr::or(BoolExpr::var("x1"), BoolExpr::not(BoolExpr::var("x3"))),
            BoolExpr::eq(BoolExpr::var("x2"), BoolExpr::Const(false)),
        );
        let mut m = Manager::new(Ordering::plain(&names(3)));
        let f = m.build(&e).unwrap();
        for bits in 0..8u32 {
            let a = |v: &VarRef| Some(bits >> (v.name[1..].parse::<u32>().unwrap() - 1) & 1 == 1);
            assert_eq!(m.evaluate(f, &a).unwrap(), eval_bool(&e, &a).unwrap());
        }
    }

    #[test]
    fn ordering_parse() {
        let vars = names(2);
        assert_eq!(
            Ordering::parse("reverse", &vars, true).unwrap().vars(),
            Ordering::parse("x2,x2',x1,x1'", &vars, true).unwrap().vars()
        );
        assert_eq!(Ordering::parse("x2,x1", &vars, true).unwrap().len(), 4);
        assert!(matches!(Ordering::parse("x1", &vars, false), Err(BddError::MissingVar(_))));
        assert!(matches!(Ordering::parse("x1,x1", &vars, false), Err(BddError::DuplicateVar(_))));
    }

    #[test]
    fn dot_mentions_every_node() {
        let mut m = Manager::new(Ordering::plain(&names(2)));
        let f = m.build(&BoolExpr::or(BoolExpr::var("x1"), BoolExpr::var("x2"))).unwrap();
        let dot = m.to_dot(f).unwrap();
        assert!(dot.contains("label=\"x1\"") && dot.contains("label=\"x2\""));
    }
}
