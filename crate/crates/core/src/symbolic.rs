//! BDD-based state-set computations: images, reachability, the set of
//! initial states from which a run satisfies a formula, and the node-growth
//! harness.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bdd::{Bdd, Manager, Ordering, DEFAULT_NODE_CAP};
use crate::error::{BddError, LtlError, SymbolicError};
use crate::expr::{BoolExpr, VarRef};
use crate::kripke::expand;
use crate::ltl::{mc_exists_with, Buchi, Ltl};
use crate::reductions::mcs0_fixed;
use crate::strips::{canonical_var, Operator, StripsInstance};
use crate::system::{State, TransitionSystem};

type Result<T> = std::result::Result<T, SymbolicError>;

/// A transition system compiled into one manager.
#[derive(Debug)]
pub struct SymbolicModel {
    manager: Manager,
    system: TransitionSystem,
    init: Bdd,
    trans: Bdd,
}

impl SymbolicModel {
    pub fn manager(&self) -> &Manager {
        &self.manager
    }

    pub fn manager_mut(&mut self) -> &mut Manager {
        &mut self.manager
    }

    pub fn system(&self) -> &TransitionSystem {
        &self.system
    }

    pub fn vars(&self) -> &[String] {
        self.system.vars()
    }

    pub fn init(&self) -> Bdd {
        self.init
    }

    pub fn trans(&self) -> Bdd {
        self.trans
    }

    fn current(&self) -> Vec<VarRef> {
        self.vars().iter().map(VarRef::current).collect()
    }

    fn primed(&self) -> Vec<VarRef> {
        self.vars().iter().map(VarRef::next).collect()
    }

    fn prime_map(&self, to_primed: bool) -> HashMap<VarRef, VarRef> {
        self.vars()
            .iter()
            .map(|v| {
                let (a, b) = (VarRef::current(v), VarRef::next(v));
                if to_primed {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect()
    }

    /// The same model with every transition reversed.
    pub fn reversed(&self) -> Result<SymbolicModel> {
        let mut manager = Manager::new(self.manager.ordering().clone());
        let map: HashMap<VarRef, VarRef> = self
            .vars()
            .iter()
            .flat_map(|v| [(VarRef::current(v), VarRef::next(v)), (VarRef::next(v), VarRef::current(v))])
            .collect();
        let init = manager.build(self.system.init())?;
        let trans = manager.build(&self.system.trans().map_vars(&|v| map[v].clone()))?;
        Ok(SymbolicModel { manager, system: self.system.clone(), init, trans })
    }

    /// The set containing exactly `s`.
    pub fn state(&mut self, s: State) -> Result<Bdd> {
        let mut f = self.manager.constant(true);
        for (i, v) in self.system.vars().to_vec().iter().enumerate() {
            let x = self.manager.var(&VarRef::current(v))?;
            let lit = if s.get(i) { x } else { self.manager.not(x)? };
            f = self.manager.and(f, lit)?;
        }
        Ok(f)
    }

    /// Whether `s` belongs to the set `f`.
    pub fn contains(&self, f: Bdd, s: State) -> Result<bool> {
        let vars = self.vars();
        let a = |v: &VarRef| (!v.primed).then(|| vars.iter().position(|x| *x == v.name).map(|i| s.get(i))).flatten();
        Ok(self.manager.evaluate(f, &a)?)
    }

    /// Explicit enumeration of a set over the current variables.
    pub fn states_of(&self, f: Bdd) -> Result<Vec<State>> {
        let n = self.vars().len();
        if n > 20 {
            return Err(SymbolicError::Unsupported(format!("enumerating {n} variables")));
        }
        let mut out = Vec::new();
        for bits in 0..1u64 << n {
            if self.contains(f, State(bits))? {
                out.push(State(bits));
            }
        }
        Ok(out)
    }
}

/// Compiles `ts`; `ord` must mention every variable and its primed copy.
pub fn encode(ts: &TransitionSystem, ord: Ordering) -> Result<SymbolicModel> {
    encode_with_cap(ts, ord, DEFAULT_NODE_CAP)
}

pub fn encode_with_cap(ts: &TransitionSystem, ord: Ordering, cap: usize) -> Result<SymbolicModel> {
    for v in ts.vars() {
        for r in [VarRef::current(v), VarRef::next(v)] {
            if !ord.vars().contains(&r) {
                return Err(BddError::MissingVar(r.to_string()).into());
            }
        }
    }
    let mut manager = Manager::with_cap(ord, cap);
    let init = manager.build(ts.init())?;
    let trans = manager.build(ts.trans())?;
    Ok(SymbolicModel { manager, system: ts.clone(), init, trans })
}

/// Successors of `s`.
pub fn image(m: &mut SymbolicModel, s: Bdd) -> Result<Bdd> {
    let trans = m.trans;
    image_under(m, trans, s)
}

/// Predecessors of `s`.
pub fn preimage(m: &mut SymbolicModel, s: Bdd) -> Result<Bdd> {
    let trans = m.trans;
    preimage_under(m, trans, s)
}

fn image_under(m: &mut SymbolicModel, trans: Bdd, s: Bdd) -> Result<Bdd> {
    let (cur, map) = (m.current(), m.prime_map(false));
    let st = m.manager.and(s, trans)?;
    let next = m.manager.exists(st, &cur)?;
    Ok(m.manager.rename(next, &map)?)
}

fn preimage_under(m: &mut SymbolicModel, trans: Bdd, s: Bdd) -> Result<Bdd> {
    let (primed, map) = (m.primed(), m.prime_map(true));
    let sp = m.manager.rename(s, &map)?;
    let st = m.manager.and(trans, sp)?;
    Ok(m.manager.exists(st, &primed)?)
}

/// Least fixpoint of `S = init | image(S)`.
pub fn reachable(m: &mut SymbolicModel) -> Result<Bdd> {
    let mut s = m.init;
    loop {
        let img = image(m, s)?;
        let next = m.manager.or(s, img)?;
        if next == s {
            return Ok(s);
        }
        s = next;
    }
}

/// How `legal_initial_states_with` may proceed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Fixpoints when the formula has a supported shape, otherwise explicit.
    Auto,
    /// Fixpoints only; other shapes are an error.
    Fixpoint,
    /// Per-state explicit model checking.
    Explicit,
}

/// Initial states with some run satisfying `phi`.
pub fn legal_initial_states(m: &mut SymbolicModel, phi: &Ltl) -> Result<Bdd> {
    legal_initial_states_with(m, phi, Strategy::Auto)
}

pub fn legal_initial_states_with(m: &mut SymbolicModel, phi: &Ltl, strategy: Strategy) -> Result<Bdd> {
    for a in phi.atoms() {
        if !m.vars().contains(&a) {
            return Err(LtlError::UnknownAtom(a).into());
        }
    }
    if strategy != Strategy::Explicit {
        if let Some(shape) = Shape::of(phi) {
            return fixpoint_path(m, &shape);
        }
        if strategy == Strategy::Fixpoint {
            return Err(SymbolicError::Unsupported(format!("formula `{phi}` has no fixpoint encoding")));
        }
    }
    explicit_path(m, phi)
}

/// `preds & F goal & G step` with each part optional.
struct Shape {
    preds: BoolExpr,
    goal: BoolExpr,
    step: BoolExpr,
}

impl Shape {
    fn of(phi: &Ltl) -> Option<Shape> {
        let mut conjuncts = Vec::new();
        flatten(phi, &mut conjuncts);
        let (mut preds, mut goal, mut step) = (Vec::new(), None, Vec::new());
        for c in conjuncts {
            if let Some(p) = state_pred(c) {
                preds.push(p);
                continue;
            }
            match c {
                Ltl::Finally(g) if goal.is_none() => goal = Some(state_pred(g)?),
                Ltl::Globally(s) => step.push(step_pred(s)?),
                _ => return None,
            }
        }
        Some(Shape {
            preds: BoolExpr::all(preds),
            goal: goal.unwrap_or(BoolExpr::Const(true)),
            step: BoolExpr::all(step),
        })
    }
}

fn flatten<'a>(phi: &'a Ltl, out: &mut Vec<&'a Ltl>) {
    match phi {
        Ltl::And(a, b) => {
            flatten(a, out);
            flatten(b, out);
        }
        Ltl::True => {}
        _ => out.push(phi),
    }
}

fn state_pred(phi: &Ltl) -> Option<BoolExpr> {
    to_bool(phi, false, false)
}

fn step_pred(phi: &Ltl) -> Option<BoolExpr> {
    to_bool(phi, false, true)
}

// Propositional formulas, with `X` of a propositional formula allowed when
// `step` is set; `X` maps atoms to primed variables.
fn to_bool(phi: &Ltl, primed: bool, step: bool) -> Option<BoolExpr> {
    let rec = |a: &Ltl| to_bool(a, primed, step);
    Some(match phi {
        Ltl::True => BoolExpr::Const(true),
        Ltl::False => BoolExpr::Const(false),
        Ltl::Atom(a) => BoolExpr::Var(VarRef { name: a.clone(), primed }),
        Ltl::Not(a) => BoolExpr::not(rec(a)?),
        Ltl::And(a, b) => BoolExpr::and(rec(a)?, rec(b)?),
        Ltl::Or(a, b) => BoolExpr::or(rec(a)?, rec(b)?),
        Ltl::Implies(a, b) => BoolExpr::implies(rec(a)?, rec(b)?),
        Ltl::Iff(a, b) => BoolExpr::iff(rec(a)?, rec(b)?),
        Ltl::Next(a) if step && !primed => to_bool(a, true, step)?,
        _ => return None,
    })
}

fn fixpoint_path(m: &mut SymbolicModel, shape: &Shape) -> Result<Bdd> {
    let step = m.manager.build(&shape.step)?;
    let trans = m.manager.and(m.trans, step)?;
    // states with an infinite path
    let mut inf = m.manager.constant(true);
    loop {
        let pre = preimage_under(m, trans, inf)?;
        let next = m.manager.and(inf, pre)?;
        if next == inf {
            break;
        }
        inf = next;
    }
    let goal = m.manager.build(&shape.goal)?;
    let mut reach = m.manager.and(goal, inf)?;
    loop {
        let pre = preimage_under(m, trans, reach)?;
        let next = m.manager.or(reach, pre)?;
        if next == reach {
            break;
        }
        reach = next;
    }
    let preds = m.manager.build(&shape.preds)?;
    let start = m.manager.and(m.init, preds)?;
    Ok(m.manager.and(start, reach)?)
}

fn explicit_path(m: &mut SymbolicModel, phi: &Ltl) -> Result<Bdd> {
    let k = expand(&m.system)?;
    let b = Buchi::build(phi, phi.atoms())?;
    let mut set = m.manager.constant(false);
    for &i in k.initials() {
        if mc_exists_with(&k.with_initials([i]), phi, &b)?.holds {
            let s = m.state(k.states()[i])?;
            set = m.manager.or(set, s)?;
        }
    }
    Ok(set)
}

/// Generators for the growth exhibit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Legal start sets of seeded `mcs0_fixed` models.
    PlansatMcs0,
    /// Bit `n-1` of the product of two `n`-bit numbers.
    MultMiddleBit,
    /// Exclusive or of `n` variables.
    Parity,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::PlansatMcs0 => "plansat-mcs0",
            Family::MultMiddleBit => "mult-middle-bit",
            Family::Parity => "parity",
        }
    }
}

impl FromStr for Family {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plansat-mcs0" => Ok(Family::PlansatMcs0),
            "mult-middle-bit" => Ok(Family::MultMiddleBit),
            "parity" => Ok(Family::Parity),
            _ => Err(SymbolicError::Unknown { kind: "family", name: s.to_string() }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub family: String,
    pub n: usize,
    pub ordering: String,
    pub peak_nodes: usize,
    /// `None` when the node cap was hit.
    pub final_nodes: Option<usize>,
    pub seconds: f64,
    pub capped: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub rows: Vec<GrowthRow>,
}

pub const CSV_HEADER: &str = "family,n,ordering,peak_nodes,final_nodes,seconds,capped";

impl GrowthReport {
    /// CSV text. Timings are left blank unless `timing` is set so that the
    /// output only depends on the inputs.
    pub fn to_csv(&self, timing: bool) -> String {
        let mut s = format!("{CSV_HEADER}\n");
        for r in &self.rows {
            let final_nodes = r.final_nodes.map(|n| n.to_string()).unwrap_or_default();
            let seconds = if timing { format!("{:.6}", r.seconds) } else { String::new() };
            let ordering = if r.ordering.contains(',') { format!("\"{}\"", r.ordering) } else { r.ordering.clone() };
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{}",
                r.family, r.n, ordering, r.peak_nodes, final_nodes, seconds, r.capped
            );
        }
        s
    }

    /// Final node counts for one family and ordering, by increasing `n`.
    pub fn series(&self, family: Family, ordering: &str) -> Vec<(usize, Option<usize>)> {
        self.rows
            .iter()
            .filter(|r| r.family == family.name() && r.ordering == ordering)
            .map(|r| (r.n, r.final_nodes))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrowthConfig {
    pub node_cap: usize,
    pub seed: u64,
}

impl Default for GrowthConfig {
    fn default() -> Self {
        GrowthConfig { node_cap: DEFAULT_NODE_CAP, seed: 0 }
    }
}

/// One row per `(n, ordering)`, each computed in a fresh manager.
pub fn growth_experiment(
    family: Family,
    sizes: impl IntoIterator<Item = usize>,
    orderings: &[String],
    config: GrowthConfig,
) -> Result<GrowthReport> {
    let cells: Vec<(usize, &String)> = sizes.into_iter().flat_map(|n| orderings.iter().map(move |o| (n, o))).collect();
    let mut rows = cells
        .par_iter()
        .map(|&(n, ord)| growth_cell(family, n, ord, config))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| r.n);
    Ok(GrowthReport { rows })
}

fn growth_cell(family: Family, n: usize, ordering: &str, config: GrowthConfig) -> Result<GrowthRow> {
    let start = Instant::now();
    let (peak, result) = match family {
        Family::Parity => {
            let vars: Vec<String> = (1..=n).map(canonical_var).collect();
            let mut m = Manager::with_cap(Ordering::parse(ordering, &vars, false)?, config.node_cap);
            let r = parity(&mut m, &vars).and_then(|f| m.node_count(f));
            (m.peak_node_count(), r.map_err(SymbolicError::from))
        }
        Family::MultMiddleBit => {
            let vars = mult_vars(n);
            let mut m = Manager::with_cap(Ordering::parse(ordering, &vars, false)?, config.node_cap);
            let r = middle_bit(&mut m, n).and_then(|f| m.node_count(f));
            (m.peak_node_count(), r.map_err(SymbolicError::from))
        }
        Family::PlansatMcs0 => {
            let inst = mcs0_fixed(&mcs0_family_instance(n, config.seed));
            let ts = inst.compose()?;
            let ord = Ordering::parse(ordering, ts.vars(), true)?;
            let mut m = encode_with_cap(&ts, ord, config.node_cap)?;
            let r = legal_initial_states_with(&mut m, &inst.formula, Strategy::Fixpoint)
                .and_then(|f| Ok(m.manager().node_count(f)?));
            (m.manager().peak_node_count(), r)
        }
    };
    let (final_nodes, capped) = match result {
        Ok(c) => (Some(c), false),
        Err(SymbolicError::Bdd(BddError::NodeLimit(_))) => (None, true),
        Err(e) => return Err(e),
    };
    Ok(GrowthRow {
        family: family.name().to_string(),
        n,
        ordering: ordering.to_string(),
        peak_nodes: peak,
        final_nodes,
        seconds: start.elapsed().as_secs_f64(),
        capped,
    })
}

pub fn parity(m: &mut Manager, vars: &[String]) -> std::result::Result<Bdd, BddError> {
    let mut f = m.constant(false);
    for v in vars {
        let x = m.var(&VarRef::current(v))?;
        f = m.xor(f, x)?;
    }
    Ok(f)
}

/// `a0..a{n-1}` then `b0..b{n-1}`, least significant bit first.
pub fn mult_vars(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("a{i}")).chain((0..n).map(|i| format!("b{i}"))).collect()
}

/// Bit `n-1` of `a * b` by shift-and-add over the low `n` bits.
pub fn middle_bit(m: &mut Manager, n: usize) -> std::result::Result<Bdd, BddError> {
    if n == 0 {
        return Ok(m.constant(false));
    }
    let a = (0..n).map(|i| m.var(&VarRef::current(format!("a{i}")))).collect::<std::result::Result<Vec<_>, _>>()?;
    let b = (0..n).map(|i| m.var(&VarRef::current(format!("b{i}")))).collect::<std::result::Result<Vec<_>, _>>()?;
    let mut acc = vec![m.constant(false); n];
    for (i, &bi) in b.iter().enumerate() {
        let mut carry = m.constant(false);
        for k in i..n {
            let p = m.and(a[k - i], bi)?;
            let ap = m.xor(acc[k], p)?;
            let sum = m.xor(ap, carry)?;
            if k + 1 < n {
                // majority(acc, p, carry)
                let both = m.and(acc[k], p)?;
                let either = m.and(ap, carry)?;
                carry = m.or(both, either)?;
            }
            acc[k] = sum;
        }
    }
    Ok(acc[n - 1])
}

/// The seeded planning instance behind the `plansat-mcs0` family: `n`
/// variables, `2n` operators, random preconditions and goal.
pub fn mcs0_family_instance(n: usize, seed: u64) -> StripsInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let vars: Vec<String> = (1..=n).map(canonical_var).collect();
    let ops = (0..2 * n)
        .map(|k| {
            let post = rng.gen_range(0..n);
            let mut op = Operator::new::<String>(format!("o{}", k + 1), [], [], (vars[post].clone(), rng.gen()));
            for (i, v) in vars.iter().enumerate() {
                if i == post {
                    continue;
                }
                match rng.gen_range(0..4u8) {
                    0 => {
                        op.pos_pre.insert(v.clone());
                    }
                    1 => {
                        op.neg_pre.insert(v.clone());
                    }
                    _ => {}
                }
            }
            op
        })
        .collect();
    let (mut goal_pos, mut goal_neg) = (BTreeSet::new(), BTreeSet::new());
    for v in &vars {
        match rng.gen_range(0..4u8) {
            0 => {
                goal_pos.insert(v.clone());
            }
            1 => {
                goal_neg.insert(v.clone());
            }
            _ => {}
        }
    }
    StripsInstance { vars, ops, init: BTreeSet::new(), goal_pos, goal_neg }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{compose_sync, initial_states, successors};

    fn ts(vars: &[&str], init: BoolExpr, trans: BoolExpr) -> TransitionSystem {
        TransitionSystem::new("m", vars.iter().map(|v| v.to_string()).collect(), init, trans).unwrap()
    }

    fn model(t: &TransitionSystem) -> SymbolicModel {
        encode(t, Ordering::interleaved(t.vars())).unwrap()
    }

    #[test]
    fn free_system_has_true_relation() {
        let m = model(&ts(&["x"], BoolExpr::Const(true), BoolExpr::Const(true)));
        assert!(m.manager().is_true(m.trans()));
    }

    #[test]
    fn ordering_must_cover_primes() {
        let t = ts(&["x"], BoolExpr::Const(true), BoolExpr::Const(true));
        assert!(encode(&t, Ordering::plain(t.vars())).is_err());
    }

    #[test]
    fn sync_composition_conjoins_relations() {
        let a = ts(&["x"], BoolExpr::Const(true), BoolExpr::implies(BoolExpr::var("x"), BoolExpr::primed("x")));
        let b = ts(&["x", "y"], BoolExpr::Const(true), BoolExpr::iff(BoolExpr::primed("y"), BoolExpr::var("x")));
        let c = compose_sync(&[a.clone(), b.clone()]).unwrap();
        let ord = Ordering::interleaved(c.vars());
        let mut m = Manager::new(ord);
        let ta = m.build(a.trans()).unwrap();
        let tb = m.build(b.trans()).unwrap();
        let tc = m.build(c.trans()).unwrap();
        assert_eq!(m.and(ta, tb).unwrap(), tc);
    }

    #[test]
    fn image_matches_successors() {
        let t = ts(
            &["x", "y"],
            BoolExpr::not(BoolExpr::var("y")),
            BoolExpr::and(
                BoolExpr::iff(BoolExpr::primed("x"), BoolExpr::not(BoolExpr::var("x"))),
                BoolExpr::implies(BoolExpr::var("x"), BoolExpr::primed("y")),
            ),
        );
        let mut m = model(&t);
        for bits in 0..4 {
            let s = m.state(State(bits)).unwrap();
            let img = image(&mut m, s).unwrap();
            let mut want = successors(&t, State(bits)).unwrap();
            want.sort();
            assert_eq!(m.states_of(img).unwrap(), want);
        }
        let empty = m.manager().constant(false);
        let img = image(&mut m, empty).unwrap();
        assert!(m.manager().is_false(img));
        let r = reachable(&mut m).unwrap();
        let img = image(&mut m, r).unwrap();
        let init = m.init();
        let back = m.manager_mut().or(img, init).unwrap();
        assert_eq!(back, r);
        assert!(initial_states(&t).unwrap().iter().all(|&s| m.contains(r, s).unwrap()));
    }

    #[test]
    fn frozen_system_reaches_only_init() {
        let t = ts(
            &["x", "y"],
            BoolExpr::var("x"),
            BoolExpr::and(
                BoolExpr::iff(BoolExpr::primed("x"), BoolExpr::var("x")),
                BoolExpr::iff(BoolExpr::primed("y"), BoolExpr::var("y")),
            ),
        );
        let mut m = model(&t);
        let r = reachable(&mut m).unwrap();
        assert_eq!(r, m.init());
    }

    #[test]
    fn trivial_goals() {
        let t = ts(&["x"], BoolExpr::var("x"), BoolExpr::Const(true));
        let mut m = model(&t);
        let all = legal_initial_states(&mut m, &Ltl::finally(Ltl::True)).unwrap();
        assert_eq!(all, m.init());
        let none = legal_initial_states(&mut m, &Ltl::finally(Ltl::False)).unwrap();
        assert!(m.manager().is_false(none));
        let unknown = legal_initial_states(&mut m, &Ltl::atom("zz"));
        assert!(unknown.is_err());
    }

    #[test]
    fn unsupported_shapes_fall_back() {
        let t = ts(&["x"], BoolExpr::Const(true), BoolExpr::iff(BoolExpr::primed("x"), BoolExpr::not(BoolExpr::var("x"))));
        let mut m = model(&t);
        let phi = Ltl::globally(Ltl::finally(Ltl::atom("x")));
        assert!(legal_initial_states_with(&mut m, &phi, Strategy::Fixpoint).is_err());
        let s = legal_initial_states(&mut m, &phi).unwrap();
        assert_eq!(s, m.init());
    }

    #[test]
    fn deadlocks_are_not_legal() {
        // x can only be raised once, and the raised state has no successor
        let t = ts(&["x"], BoolExpr::Const(true), BoolExpr::and(BoolExpr::not(BoolExpr::var("x")), BoolExpr::primed("x")));
        let mut m = model(&t);
        let s = legal_initial_states(&mut m, &Ltl::finally(Ltl::atom("x"))).unwrap();
        assert!(m.manager().is_false(s));
    }

    #[test]
    fn family_names_round_trip() {
        for f in [Family::PlansatMcs0, Family::MultMiddleBit, Family::Parity] {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("nope".parse::<Family>().is_err());
    }

    #[test]
    fn middle_bit_matches_arithmetic() {
        for n in 1..=4 {
            let vars = mult_vars(n);
            let mut m = Manager::new(Ordering::plain(&vars));
            let f = middle_bit(&mut m, n).unwrap();
            for a in 0..1u64 << n {
                for b in 0..1u64 << n {
                    let val = |v: &VarRef| {
                        let i: u32 = v.name[1..].parse().unwrap();
                        Some(if v.name.starts_with('a') { a >> i & 1 == 1 } else { b >> i & 1 == 1 })
                    };
                    assert_eq!(m.evaluate(f, &val).unwrap(), (a * b) >> (n - 1) & 1 == 1);
                }
            }
        }
    }

    #[test]
    fn csv_leaves_timing_blank() {
        let r = growth_experiment(Family::Parity, 2..=3, &["natural".into()], GrowthConfig::default()).unwrap();
        assert_eq!(r.to_csv(false), format!("{CSV_HEADER}\nparity,2,natural,5,4,,false\nparity,3,natural,8,5,,false\n"));
    }

    #[test]
    fn capped_cells_are_recorded() {
        let cfg = GrowthConfig { node_cap: 20, seed: 0 };
        let r = growth_experiment(Family::MultMiddleBit, [8], &["natural".into()], cfg).unwrap();
        assert!(r.rows[0].capped && r.rows[0].final_nodes.is_none());
    }
}
