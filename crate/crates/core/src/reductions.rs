//! Reductions from single-postcondition STRIPS plan existence to LTL model
//! checking of concurrent transition systems, and the representative
//! equivalence check.
//!
//! All constructions first rename the `i`-th planning variable to `x<i>`, so
//! the fixed part of a reduction depends only on the number of variables.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Error};
use crate::expr::BoolExpr;
use crate::kripke::expand;
use crate::ltl::{mc_exists, mc_exists_with, Buchi, Lasso, Ltl};
use crate::strips::{canonical_var, class_of, plan_exists, plan_from, repr_of, Operator, StripsInstance};
use crate::syntax::SystemFile;
use crate::system::{compose_interleaved, compose_sync, State, TransitionSystem};

/// Name of the goal latch variable.
pub const GOAL_VAR: &str = "x_g";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Sync,
    Interleaved,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Sync => "sync",
            Mode::Interleaved => "interleaved",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quantifier {
    Exists,
    All,
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantifier::Exists => "exists",
            Quantifier::All => "all",
        })
    }
}

/// A model-checking query over a composition of processes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McInstance {
    pub systems: Vec<TransitionSystem>,
    pub mode: Mode,
    pub formula: Ltl,
    pub quantifier: Quantifier,
}

/// Verdict of a query; `witness` is a satisfying run for a true existential
/// query or a violating run for a false universal one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub holds: bool,
    pub witness: Option<Lasso>,
    pub vars: Vec<String>,
}

impl McInstance {
    /// The composed system. Composing no processes yields the one-state
    /// system with a self-loop.
    pub fn compose(&self) -> Result<TransitionSystem, CoreError> {
        if self.systems.is_empty() {
            return TransitionSystem::new("empty", vec![], BoolExpr::Const(true), BoolExpr::Const(true));
        }
        match self.mode {
            Mode::Sync => compose_sync(&self.systems),
            Mode::Interleaved => compose_interleaved(&self.systems),
        }
    }

    pub fn to_file(&self) -> SystemFile {
        SystemFile {
            systems: self.systems.clone(),
            mode: Some(self.mode),
            formula: Some((self.quantifier, self.formula.clone())),
        }
    }

    /// Reads an instance back from a system file; the mode defaults to
    /// synchronous and a formula is required.
    pub fn from_file(file: SystemFile) -> Option<Self> {
        let (quantifier, formula) = file.formula?;
        Some(McInstance { systems: file.systems, mode: file.mode.unwrap_or(Mode::Sync), formula, quantifier })
    }

    /// The query with the formula negated and the quantifier swapped.
    pub fn dual(&self) -> McInstance {
        McInstance {
            systems: self.systems.clone(),
            mode: self.mode,
            formula: Ltl::not(self.formula.clone()),
            quantifier: match self.quantifier {
                Quantifier::Exists => Quantifier::All,
                Quantifier::All => Quantifier::Exists,
            },
        }
    }
}

const AUTOMATON_CACHE: usize = 64;

thread_local! {
    // Sweeps check many instances against the same few formulas.
    static AUTOMATA: RefCell<HashMap<Ltl, Rc<Buchi>>> = RefCell::new(HashMap::new());
}

fn automaton(phi: &Ltl) -> Result<Rc<Buchi>, Error> {
    if let Some(b) = AUTOMATA.with(|c| c.borrow().get(phi).cloned()) {
        return Ok(b);
    }
    let b = Rc::new(Buchi::build(phi, phi.atoms())?);
    AUTOMATA.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() >= AUTOMATON_CACHE {
            c.clear();
        }
        c.insert(phi.clone(), b.clone());
    });
    Ok(b)
}

/// Decides an instance by explicit expansion. A universal query is answered
/// through the existential query for the negated formula.
pub fn decide(m: &McInstance) -> Result<Decision, Error> {
    let ts = m.compose()?;
    let k = expand(&ts)?;
    let vars = ts.vars().to_vec();
    let phi = match m.quantifier {
        Quantifier::Exists => m.formula.clone(),
        Quantifier::All => Ltl::not(m.formula.clone()),
    };
    let b = automaton(&phi)?;
    let v = mc_exists_with(&k, &phi, &b)?;
    let holds = match m.quantifier {
        Quantifier::Exists => v.holds,
        Quantifier::All => !v.holds,
    };
    Ok(Decision { holds, witness: v.witness, vars })
}

/// Shortcut returning only the truth value.
pub fn decide_bool(m: &McInstance) -> Result<bool, Error> {
    Ok(decide(m)?.holds)
}

/// Renames the `i`-th variable to `x<i>` throughout.
pub fn canonical(y: &StripsInstance) -> StripsInstance {
    let rename = |v: &String| canonical_var(y.index_of(v).expect("validated instance") + 1);
    let set = |s: &BTreeSet<String>| s.iter().map(rename).collect::<BTreeSet<_>>();
    StripsInstance {
        vars: (1..=y.vars.len()).map(canonical_var).collect(),
        ops: y
            .ops
            .iter()
            .map(|op| Operator {
                name: op.name.clone(),
                pos_pre: set(&op.pos_pre),
                neg_pre: set(&op.neg_pre),
                post: op.post.as_ref().map(|(v, b)| (rename(v), *b)),
            })
            .collect(),
        init: set(&y.init),
        goal_pos: set(&y.goal_pos),
        goal_neg: set(&y.goal_neg),
    }
}

fn stays(v: &str) -> Ltl {
    Ltl::iff(Ltl::atom(v), Ltl::next(Ltl::atom(v)))
}

fn ltl_pre(op: &Operator) -> Vec<Ltl> {
    op.pos_pre
        .iter()
        .map(|v| Ltl::atom(v.clone()))
        .chain(op.neg_pre.iter().map(|v| Ltl::not(Ltl::atom(v.clone()))))
        .collect()
}

fn ltl_goal(y: &StripsInstance) -> Ltl {
    Ltl::all(
        y.vars
            .iter()
            .filter(|v| y.goal_pos.contains(*v) || y.goal_neg.contains(*v))
            .map(|v| Ltl::lit(v.clone(), y.goal_pos.contains(v))),
    )
}

fn finish(systems: Vec<TransitionSystem>, mode: Mode, inner: Ltl, literal: bool) -> McInstance {
    if literal {
        McInstance { systems, mode, formula: Ltl::not(inner), quantifier: Quantifier::All }
    } else {
        McInstance { systems, mode, formula: inner, quantifier: Quantifier::Exists }
    }
}

/// One unconstrained single-variable process per planning variable.
pub fn free_processes(n: usize) -> Vec<TransitionSystem> {
    (1..=n)
        .map(|i| {
            let x = canonical_var(i);
            let pair = |a: bool, b: bool| {
                BoolExpr::and(
                    BoolExpr::var_is(crate::expr::VarRef::current(x.clone()), a),
                    BoolExpr::var_is(crate::expr::VarRef::next(x.clone()), b),
                )
            };
            let trans = BoolExpr::any([pair(false, false), pair(false, true), pair(true, false), pair(true, true)]);
            let init = BoolExpr::or(BoolExpr::var(x.clone()), BoolExpr::not(BoolExpr::var(x.clone())));
            TransitionSystem::new(format!("m{i}"), vec![x.clone()], init, trans)
                .and_then(|t| t.with_locals([x]))
                .expect("well-formed process")
        })
        .collect()
}

/// The reduction whose model depends only on the variables: the formula
/// fixes the initial state, requires the goal eventually, and requires every
/// step to be one operator application.
pub fn reduce_model_fixed(y: &StripsInstance, mode: Mode) -> McInstance {
    reduce_model_fixed_with(y, mode, false)
}

/// As [`reduce_model_fixed`]; `literal` yields the negated formula under
/// universal quantification.
pub fn reduce_model_fixed_with(y: &StripsInstance, mode: Mode, literal: bool) -> McInstance {
    let y = canonical(y);
    finish(free_processes(y.vars.len()), mode, model_fixed_formula(&y), literal)
}

fn model_fixed_formula(y: &StripsInstance) -> Ltl {
    let phi_i = Ltl::all(y.vars.iter().map(|v| Ltl::lit(v.clone(), y.init.contains(v))));
    let phi_g = Ltl::finally(ltl_goal(y));
    let noop = Ltl::all(y.vars.iter().map(|v| stays(v)));
    let steps = std::iter::once(noop).chain(y.ops.iter().map(|op| {
        let (post, b) = op.post.as_ref().expect("listed operators have a postcondition");
        let mut parts = ltl_pre(op);
        parts.push(Ltl::next(Ltl::lit(post.clone(), *b)));
        parts.extend(y.vars.iter().filter(|v| *v != post).map(|v| stays(v)));
        Ltl::all(parts)
    }));
    let phi_o = Ltl::globally(Ltl::any(steps));
    Ltl::and(Ltl::and(phi_i, phi_g), phi_o)
}

/// The formula that is fixed for all instances over `n` variables: the latch
/// is eventually raised and at most one variable changes per step. Index 0
/// of the one-change constraint is the latch.
pub fn formula_fixed_formula(n: usize) -> Ltl {
    let vars: Vec<String> = (1..=n).map(canonical_var).collect();
    let per_var = std::iter::once(GOAL_VAR.to_string()).chain(vars.iter().cloned()).map(|xi| {
        let others = Ltl::all(vars.iter().filter(|xj| **xj != xi).map(|xj| stays(xj)));
        Ltl::implies(Ltl::not(stays(&xi)), others)
    });
    Ltl::and(Ltl::finally(Ltl::atom(GOAL_VAR)), Ltl::globally(Ltl::all(per_var)))
}

/// How the operator processes and the latch of the formula-fixed reduction
/// are encoded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Encoding {
    /// Processes move only by firing an operator; the latch moves only once
    /// the goal holds.
    Literal,
    /// Every process may also keep its variable, and the latch keeps its
    /// value while the goal does not hold.
    Repaired,
}

fn bool_goal(y: &StripsInstance) -> BoolExpr {
    BoolExpr::all(
        y.vars
            .iter()
            .filter(|v| y.goal_pos.contains(*v) || y.goal_neg.contains(*v))
            .map(|v| {
                let x = BoolExpr::var(v.clone());
                if y.goal_pos.contains(v) {
                    x
                } else {
                    BoolExpr::not(x)
                }
            }),
    )
}

fn keeps(v: &str) -> BoolExpr {
    BoolExpr::eq(BoolExpr::primed(v), BoolExpr::var(v))
}

fn ordered(y: &StripsInstance, set: &BTreeSet<&str>) -> Vec<String> {
    y.vars.iter().filter(|v| set.contains(v.as_str())).cloned().collect()
}

// Initial condition fixing each variable of `vars` to its value in `init`.
fn fixed_init(vars: &[String], init: Option<&BTreeSet<String>>) -> BoolExpr {
    match init {
        None => BoolExpr::Const(true),
        Some(i) => BoolExpr::all(vars.iter().map(|v| {
            let x = BoolExpr::var(v.clone());
            if i.contains(v) {
                x
            } else {
                BoolExpr::not(x)
            }
        })),
    }
}

/// Operator processes, the frame process for variables no operator writes,
/// and the goal latch. `init = None` makes every assignment of the
/// planning variables initial.
fn operator_processes(y: &StripsInstance, encoding: Encoding, init: Option<&BTreeSet<String>>) -> Vec<TransitionSystem> {
    let goal = bool_goal(y);
    let goal_vars: BTreeSet<&str> = y.goal_pos.iter().chain(&y.goal_neg).map(String::as_str).collect();
    let written: BTreeSet<&str> = y.ops.iter().filter_map(|o| o.post.as_ref()).map(|p| p.0.as_str()).collect();
    let mut out = Vec::new();
    for x in y.vars.iter().filter(|v| written.contains(v.as_str())) {
        let ops: Vec<&Operator> = y.ops.iter().filter(|o| o.post.as_ref().is_some_and(|p| &p.0 == x)).collect();
        let mut scope: BTreeSet<&str> = goal_vars.clone();
        for op in &ops {
            scope.extend(op.condition_vars());
        }
        let vars = ordered(y, &scope);
        let mut moves: Vec<BoolExpr> = ops
            .iter()
            .map(|op| {
                let b = op.post.as_ref().expect("written").1;
                let mut parts: Vec<BoolExpr> = op.pos_pre.iter().map(|v| BoolExpr::var(v.clone())).collect();
                parts.extend(op.neg_pre.iter().map(|v| BoolExpr::not(BoolExpr::var(v.clone()))));
                parts.push(BoolExpr::not(goal.clone()));
                parts.push(BoolExpr::eq(BoolExpr::primed(x.clone()), BoolExpr::Const(b)));
                BoolExpr::all(parts)
            })
            .collect();
        if encoding == Encoding::Repaired {
            moves.push(keeps(x));
        }
        let ts = TransitionSystem::new(format!("m_{x}"), vars.clone(), fixed_init(&vars, init), BoolExpr::any(moves))
            .and_then(|t| t.with_locals([x.clone()]))
            .expect("well-formed process");
        out.push(ts);
    }
    let frame: Vec<String> = y.vars.iter().filter(|v| !written.contains(v.as_str())).cloned().collect();
    if !frame.is_empty() {
        let trans = BoolExpr::all(frame.iter().map(|v| keeps(v)));
        let ts = TransitionSystem::new("m_frame", frame.clone(), fixed_init(&frame, init), trans)
            .and_then(|t| t.with_locals(frame.clone()))
            .expect("well-formed process");
        out.push(ts);
    }
    let mut latch_vars = vec![GOAL_VAR.to_string()];
    latch_vars.extend(ordered(y, &goal_vars));
    let raise = BoolExpr::and(goal.clone(), BoolExpr::eq(BoolExpr::primed(GOAL_VAR), BoolExpr::Const(true)));
    let trans = match encoding {
        Encoding::Literal => raise,
        Encoding::Repaired => BoolExpr::or(raise, BoolExpr::and(BoolExpr::not(goal), keeps(GOAL_VAR))),
    };
    let latch = TransitionSystem::new(
        "m_goal",
        latch_vars,
        BoolExpr::eq(BoolExpr::var(GOAL_VAR), BoolExpr::Const(false)),
        trans,
    )
    .and_then(|t| t.with_locals([GOAL_VAR]))
    .expect("well-formed latch");
    out.push(latch);
    out
}

/// The reduction whose formula depends only on the number of variables;
/// the instance is encoded in synchronously composed processes.
pub fn reduce_formula_fixed(y: &StripsInstance) -> McInstance {
    reduce_formula_fixed_with(y, Encoding::Repaired, false)
}

pub fn reduce_formula_fixed_with(y: &StripsInstance, encoding: Encoding, literal: bool) -> McInstance {
    let y = canonical(y);
    let systems = operator_processes(&y, encoding, Some(&y.init));
    debug_assert!(systems.len() <= y.vars.len() + 1);
    finish(systems, Mode::Sync, formula_fixed_formula(y.vars.len()), literal)
}

/// A fixed model and formula together with a candidate start state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McS0Instance {
    pub fixed: McInstance,
    pub s0: State,
}

/// Interleaved operator processes in which every assignment of the planning
/// variables is initial (the latch starts low), with formula
/// `F(goal & x_g)`. The initial state `I` of `y` is ignored; it is supplied
/// through `s0`.
pub fn mcs0_fixed(y: &StripsInstance) -> McInstance {
    let y = canonical(y);
    let systems = operator_processes(&y, Encoding::Repaired, None);
    let formula = Ltl::finally(Ltl::and(ltl_goal(&y), Ltl::atom(GOAL_VAR)));
    McInstance { systems, mode: Mode::Interleaved, formula, quantifier: Quantifier::Exists }
}

pub fn build_mcs0(y: &StripsInstance, s0: State) -> McS0Instance {
    McS0Instance { fixed: mcs0_fixed(y), s0 }
}

/// The state of the composed `mcs0_fixed(y)` model that sets the planning
/// variables true in `true_vars` (original names) and the latch low.
pub fn encode_start(y: &StripsInstance, true_vars: &BTreeSet<String>) -> Result<State, Error> {
    let ts = mcs0_fixed(y).compose()?;
    let mut s = State(0);
    for v in true_vars {
        let i = y.index_of(v).ok_or_else(|| crate::error::StripsError::UnknownVar(v.clone()))?;
        let j = ts.index_of(&canonical_var(i + 1)).expect("planning variable");
        s = s.with(j, true);
    }
    Ok(s)
}

/// True iff `s0` satisfies the composed initial condition and some run from
/// `s0` satisfies the formula.
pub fn decide_mcs0(inst: &McS0Instance) -> Result<bool, Error> {
    let ts = inst.fixed.compose()?;
    let k = expand(&ts)?;
    let Some(i) = k.index_of(inst.s0) else {
        return Ok(false);
    };
    if !k.initials().contains(&i) {
        return Ok(false);
    }
    Ok(mc_exists(&k.with_initials([i]), &inst.fixed.formula)?.holds)
}

/// The explicit oracle for `decide_mcs0`: a plan from the planning part of
/// `s0` when `s0` is a legal start.
pub fn mcs0_oracle(y: &StripsInstance, s0: State) -> Result<bool, Error> {
    let ts = mcs0_fixed(y).compose()?;
    let g = ts.index_of(GOAL_VAR).expect("latch variable");
    if s0.get(g) || (ts.vars().len() < 64 && s0.0 >> ts.vars().len() != 0) {
        return Ok(false);
    }
    let start: BTreeSet<String> = y
        .vars
        .iter()
        .enumerate()
        .filter(|(i, _)| s0.get(ts.index_of(&canonical_var(i + 1)).expect("planning variable")))
        .map(|(_, v)| v.clone())
        .collect();
    Ok(plan_from(y, &start, crate::strips::DEFAULT_PLAN_BOUND)?.is_some())
}

/// Which fixed part is replaced by the representative's.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reduction {
    ModelFixed(Mode),
    FormulaFixed,
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reduction::ModelFixed(m) => write!(f, "model_fixed/{m}"),
            Reduction::FormulaFixed => f.write_str("formula_fixed"),
        }
    }
}

/// Both sides of the representative-equivalence condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReprOutcome {
    pub original: bool,
    pub representative: bool,
}

impl ReprOutcome {
    pub fn agrees(&self) -> bool {
        self.original == self.representative
    }
}

/// Decides `(r(y), h(y))` and `(r(Repr(Class(y))), h(y))` with `decide`.
pub fn check_repr_equivalence(
    y: &StripsInstance,
    reduction: Reduction,
    decide: impl Fn(&McInstance) -> Result<bool, Error>,
) -> Result<ReprOutcome, Error> {
    let repr = repr_of(class_of(y));
    let (original, swapped) = match reduction {
        Reduction::ModelFixed(mode) => {
            let m = reduce_model_fixed(y, mode);
            let r = reduce_model_fixed(&repr, mode);
            let swapped = McInstance { systems: r.systems, ..m.clone() };
            (m, swapped)
        }
        Reduction::FormulaFixed => {
            let m = reduce_formula_fixed(y);
            let r = reduce_formula_fixed(&repr);
            let swapped = McInstance { formula: r.formula, ..m.clone() };
            (m, swapped)
        }
    };
    Ok(ReprOutcome { original: decide(&original)?, representative: decide(&swapped)? })
}

/// Verdicts of the plan oracle and the three reductions on one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Soundness {
    pub plan: bool,
    pub model_interleaved: bool,
    pub model_sync: bool,
    pub formula_fixed: bool,
}

impl Soundness {
    pub fn agrees(&self) -> bool {
        self.plan == self.model_interleaved && self.plan == self.model_sync && self.plan == self.formula_fixed
    }
}

pub fn soundness(y: &StripsInstance) -> Result<Soundness, Error> {
    Ok(Soundness {
        plan: plan_exists(y)?.is_some(),
        model_interleaved: decide_bool(&reduce_model_fixed(y, Mode::Interleaved))?,
        model_sync: decide_bool(&reduce_model_fixed(y, Mode::Sync))?,
        formula_fixed: decide_bool(&reduce_formula_fixed(y))?,
    })
}

/// Every single-postcondition operator over `vars`: each postcondition
/// literal combined with each assignment of `+`, `-` or nothing to the
/// other variables.
pub fn operator_alphabet(vars: &[String]) -> Vec<Operator> {
    let n = vars.len();
    let mut out = Vec::new();
    for (p, post) in vars.iter().enumerate() {
        for b in [true, false] {
            let others: Vec<&String> = vars.iter().enumerate().filter(|(i, _)| *i != p).map(|(_, v)| v).collect();
            for code in 0..3usize.pow((n - 1) as u32) {
                let mut c = code;
                let mut op = Operator::new::<String>(String::new(), [], [], (post.clone(), b));
                for v in &others {
                    match c % 3 {
                        1 => {
                            op.pos_pre.insert((*v).clone());
                        }
                        2 => {
                            op.neg_pre.insert((*v).clone());
                        }
                        _ => {}
                    }
                    c /= 3;
                }
                op.name = format!("o{}", out.len() + 1);
                out.push(op);
            }
        }
    }
    out
}

/// All `(pos, neg)` goal pairs over `vars`.
pub fn all_goals(vars: &[String]) -> Vec<(BTreeSet<String>, BTreeSet<String>)> {
    (0..3usize.pow(vars.len() as u32))
        .map(|mut c| {
            let (mut pos, mut neg) = (BTreeSet::new(), BTreeSet::new());
            for v in vars {
                match c % 3 {
                    1 => {
                        pos.insert(v.clone());
                    }
                    2 => {
                        neg.insert(v.clone());
                    }
                    _ => {}
                }
                c /= 3;
            }
            (pos, neg)
        })
        .collect()
}

/// All subsets of `vars`.
pub fn all_subsets(vars: &[String]) -> Vec<BTreeSet<String>> {
    (0..1usize << vars.len())
        .map(|m| vars.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, v)| v.clone()).collect())
        .collect()
}

/// All sets of at most `k` distinct elements of `items`, in lexicographic
/// order of indices.
pub fn combinations<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(Vec<T>, usize)> = vec![(Vec::new(), 0)];
    for _ in 0..k {
        let mut next = Vec::new();
        for (set, from) in &frontier {
            for (i, it) in items.iter().enumerate().skip(*from) {
                let mut s = set.clone();
                s.push(it.clone());
                out.push(s.clone());
                next.push((s, i + 1));
            }
        }
        frontier = next;
    }
    out
}

/// A random instance over `x1..xn` with `n` in `1..=max_vars` and up to
/// `max_ops` operators; each precondition slot is `+`, `-` or empty with
/// equal probability.
pub fn random_instance(rng: &mut impl Rng, max_vars: usize, max_ops: usize) -> StripsInstance {
    let n = rng.gen_range(1..=max_vars);
    let vars: Vec<String> = (1..=n).map(canonical_var).collect();
    let lit = |rng: &mut dyn rand::RngCore| rng.gen_range(0..3u8);
    let m = rng.gen_range(0..=max_ops);
    let ops = (0..m)
        .map(|k| {
            let post = rng.gen_range(0..n);
            let mut op = Operator::new::<String>(format!("o{}", k + 1), [], [], (vars[post].clone(), rng.gen()));
            for (i, v) in vars.iter().enumerate() {
                match lit(rng) {
                    1 if i != post || rng.gen_bool(0.5) => {
                        op.pos_pre.insert(v.clone());
                    }
                    2 if i != post || rng.gen_bool(0.5) => {
                        op.neg_pre.insert(v.clone());
                    }
                    _ => {}
                }
            }
            op
        })
        .collect();
    let init = vars.iter().filter(|_| rng.gen()).cloned().collect();
    let (mut goal_pos, mut goal_neg) = (BTreeSet::new(), BTreeSet::new());
    for v in &vars {
        match rng.gen_range(0..3u8) {
            1 => {
                goal_pos.insert(v.clone());
            }
            2 => {
                goal_neg.insert(v.clone());
            }
            _ => {}
        }
    }
    StripsInstance { vars, ops, init, goal_pos, goal_neg }
}

/// `count` instances from `random_instance` with a ChaCha8 stream seeded
/// by `seed`.
pub fn random_instances(seed: u64, count: usize, max_vars: usize, max_ops: usize) -> Vec<StripsInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_instance(&mut rng, max_vars, max_ops)).collect()
}

/// Every instance over `x1..xn` whose initial state is in `inits`, whose
/// goal is any goal, and whose operators are a set of at most `max_ops`
/// distinct alphabet operators.
pub fn grid_instances(
    n: usize,
    max_ops: usize,
    inits: Vec<BTreeSet<String>>,
) -> impl Iterator<Item = StripsInstance> {
    let vars: Vec<String> = (1..=n).map(canonical_var).collect();
    let op_sets = combinations(&operator_alphabet(&vars), max_ops);
    let goals = all_goals(&vars);
    op_sets.into_iter().flat_map(move |ops| {
        let (vars, goals) = (vars.clone(), goals.clone());
        inits.clone().into_iter().flat_map(move |init| {
            let (vars, ops) = (vars.clone(), ops.clone());
            goals.clone().into_iter().map(move |(goal_pos, goal_neg)| StripsInstance {
                vars: vars.clone(),
                ops: ops.clone(),
                init: init.clone(),
                goal_pos,
                goal_neg,
            })
        })
    })
}

/// `check_repr_equivalence` with explicit decisions over many instances,
/// spread over the rayon pool.
pub fn repr_sweep(instances: &[StripsInstance], reduction: Reduction) -> Result<Vec<ReprOutcome>, Error> {
    instances.par_iter().map(|y| check_repr_equivalence(y, reduction, decide_bool)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::{eval_lasso, Fragment, TemporalOp};
    use crate::strips::Operator;

    fn set(vars: &[&str]) -> BTreeSet<String> {
        vars.iter().map(|v| v.to_string()).collect()
    }

    fn one_var(ops: Vec<Operator>) -> StripsInstance {
        StripsInstance::new(vec!["x1".into()], ops, set(&[]), set(&["x1"]), set(&[])).unwrap()
    }

    fn raise() -> Operator {
        Operator::new::<&str>("a", [], [], ("x1", true))
    }

    #[test]
    fn representative_is_satisfied_by_stuttering() {
        for mode in [Mode::Sync, Mode::Interleaved] {
            let m = reduce_model_fixed(&repr_of(3), mode);
            assert_eq!(m.systems.len(), 3);
            let d = decide(&m).unwrap();
            assert!(d.holds);
            let w = d.witness.unwrap();
            assert!(eval_lasso(&m.formula, &w, &d.vars, 0).unwrap());
            assert_eq!(w.cycle, vec![State(0)]);
        }
    }

    #[test]
    fn model_fixed_examples() {
        for mode in [Mode::Sync, Mode::Interleaved] {
            assert!(decide_bool(&reduce_model_fixed(&one_var(vec![raise()]), mode)).unwrap());
            assert!(!decide_bool(&reduce_model_fixed(&one_var(vec![]), mode)).unwrap());
        }
    }

    #[test]
    fn literal_form_is_the_complement() {
        for y in [one_var(vec![raise()]), one_var(vec![])] {
            let a = decide_bool(&reduce_model_fixed_with(&y, Mode::Sync, false)).unwrap();
            let b = decide_bool(&reduce_model_fixed_with(&y, Mode::Sync, true)).unwrap();
            assert_eq!(a, !b);
            let a = decide_bool(&reduce_formula_fixed_with(&y, Encoding::Repaired, false)).unwrap();
            let b = decide_bool(&reduce_formula_fixed_with(&y, Encoding::Repaired, true)).unwrap();
            assert_eq!(a, !b);
        }
    }

    #[test]
    fn formula_fixed_witness_raises_latch_after_goal() {
        let y = StripsInstance::new(
            vec!["x1".into(), "x2".into()],
            vec![Operator::new::<&str>("a", [], [], ("x1", true)), Operator::new::<&str>("b", ["x1"], [], ("x2", true))],
            set(&[]),
            set(&["x2"]),
            set(&[]),
        )
        .unwrap();
        let m = reduce_formula_fixed(&y);
        assert!(m.systems.len() <= 3);
        let d = decide(&m).unwrap();
        assert!(d.holds);
        let w = d.witness.unwrap();
        let g = d.vars.iter().position(|v| v == GOAL_VAR).unwrap();
        let x2 = d.vars.iter().position(|v| v == "x2").unwrap();
        let first_latch = (0..w.len()).find(|&i| w.at(i).get(g)).unwrap();
        assert!(first_latch >= 1 && w.at(first_latch - 1).get(x2));
        assert!(!w.at(first_latch - 1).get(g));
    }

    #[test]
    fn formula_fixed_unsolvable() {
        assert!(!decide_bool(&reduce_formula_fixed(&one_var(vec![]))).unwrap());
        let y = one_var(vec![Operator::new::<&str>("a", ["x1"], [], ("x1", true))]);
        assert!(!decide_bool(&reduce_formula_fixed(&y)).unwrap());
    }

    #[test]
    fn literal_latch_deadlocks_before_the_goal() {
        let y = one_var(vec![raise()]);
        assert!(plan_exists(&y).unwrap().is_some());
        assert!(!decide_bool(&reduce_formula_fixed_with(&y, Encoding::Literal, false)).unwrap());
    }

    #[test]
    fn fragments() {
        let fgx = Fragment::of([TemporalOp::F, TemporalOp::G, TemporalOp::X]);
        let y = one_var(vec![raise()]);
        assert!(fgx.contains(&reduce_model_fixed(&y, Mode::Sync).formula));
        assert!(fgx.contains(&reduce_formula_fixed(&y).formula));
        assert!(Fragment::of([TemporalOp::F]).contains(&mcs0_fixed(&y).formula));
    }

    #[test]
    fn mcs0_examples() {
        let y = one_var(vec![raise()]);
        let ts = mcs0_fixed(&y).compose().unwrap();
        let g = ts.index_of(GOAL_VAR).unwrap();
        let s0 = encode_start(&y, &set(&[])).unwrap();
        assert!(decide_mcs0(&build_mcs0(&y, s0)).unwrap());
        assert!(!decide_mcs0(&build_mcs0(&y, s0.with(g, true))).unwrap());
        let unsolvable = one_var(vec![]);
        let s0 = encode_start(&unsolvable, &set(&[])).unwrap();
        assert!(!decide_mcs0(&build_mcs0(&unsolvable, s0)).unwrap());
    }

    #[test]
    fn repr_equivalence_on_representative() {
        for r in [Reduction::ModelFixed(Mode::Sync), Reduction::FormulaFixed] {
            let o = check_repr_equivalence(&repr_of(2), r, decide_bool).unwrap();
            assert!(o.agrees() && o.original);
        }
    }

    #[test]
    fn alphabet_sizes() {
        let vars: Vec<String> = (1..=3).map(canonical_var).collect();
        assert_eq!(operator_alphabet(&vars).len(), 2 * 3 * 9);
        assert_eq!(all_goals(&vars).len(), 27);
        assert_eq!(all_subsets(&vars).len(), 8);
        assert_eq!(combinations(&[1, 2, 3, 4], 2).len(), 1 + 4 + 6);
    }
}
