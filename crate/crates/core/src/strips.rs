//! STRIPS instances whose operators have a single postcondition, a
//! breadth-first plan-existence oracle, and the classification,
//! representative and extension functions on instances.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::StripsError;

/// Default cap on `|P|` for the breadth-first search.
pub const DEFAULT_PLAN_BOUND: usize = 20;

/// An operator with arbitrary preconditions and one postcondition. The
/// implicit no-op has no postcondition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Operator {
    pub name: String,
    pub pos_pre: BTreeSet<String>,
    pub neg_pre: BTreeSet<String>,
    /// `(variable, value)`: value `true` adds the variable, `false` deletes it.
    pub post: Option<(String, bool)>,
}

impl Operator {
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        pos_pre: impl IntoIterator<Item = S>,
        neg_pre: impl IntoIterator<Item = S>,
        post: (impl Into<String>, bool),
    ) -> Self {
        Operator {
            name: name.into(),
            pos_pre: pos_pre.into_iter().map(Into::into).collect(),
            neg_pre: neg_pre.into_iter().map(Into::into).collect(),
            post: Some((post.0.into(), post.1)),
        }
    }

    /// The operator that is always applicable and changes nothing.
    pub fn noop() -> Self {
        Operator { name: "o0".into(), pos_pre: BTreeSet::new(), neg_pre: BTreeSet::new(), post: None }
    }

    pub fn is_noop(&self) -> bool {
        self.post.is_none()
    }

    /// Variables mentioned by the preconditions and the postcondition.
    pub fn condition_vars(&self) -> BTreeSet<&str> {
        self.pos_pre
            .iter()
            .chain(&self.neg_pre)
            .chain(self.post.as_ref().map(|p| &p.0))
            .map(String::as_str)
            .collect()
    }
}

/// `⟨P, O, I, G⟩` with `G = (goal_pos, goal_neg)`. The no-op operator is
/// implicit and never listed in `ops`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StripsInstance {
    pub vars: Vec<String>,
    pub ops: Vec<Operator>,
    pub init: BTreeSet<String>,
    pub goal_pos: BTreeSet<String>,
    pub goal_neg: BTreeSet<String>,
}

impl StripsInstance {
    pub fn new(
        vars: Vec<String>,
        ops: Vec<Operator>,
        init: BTreeSet<String>,
        goal_pos: BTreeSet<String>,
        goal_neg: BTreeSet<String>,
    ) -> Result<Self, StripsError> {
        let y = StripsInstance { vars, ops, init, goal_pos, goal_neg };
        y.validate()?;
        Ok(y)
    }

    pub fn validate(&self) -> Result<(), StripsError> {
        let mut seen = BTreeSet::new();
        for v in &self.vars {
            if !seen.insert(v.as_str()) {
                return Err(StripsError::Invalid(format!("variable `{v}` listed twice")));
            }
        }
        let known = |v: &String| {
            if seen.contains(v.as_str()) {
                Ok(())
            } else {
                Err(StripsError::UnknownVar(v.clone()))
            }
        };
        for op in &self.ops {
            if op.is_noop() {
                return Err(StripsError::Invalid(format!("operator `{}` has no postcondition", op.name)));
            }
            op.pos_pre.iter().chain(&op.neg_pre).chain(op.post.as_ref().map(|p| &p.0)).try_for_each(known)?;
        }
        self.init.iter().chain(&self.goal_pos).chain(&self.goal_neg).try_for_each(known)?;
        if let Some(v) = self.goal_pos.intersection(&self.goal_neg).next() {
            return Err(StripsError::Invalid(format!("goal requires `{v}` both true and false")));
        }
        Ok(())
    }

    pub fn index_of(&self, v: &str) -> Option<usize> {
        self.vars.iter().position(|x| x == v)
    }

    /// Whether a state (the set of true variables) satisfies the goal.
    pub fn is_goal(&self, s: &BTreeSet<String>) -> bool {
        self.goal_pos.is_subset(s) && self.goal_neg.is_disjoint(s)
    }

    /// Length in bytes of the canonical text form.
    pub fn size(&self) -> usize {
        crate::syntax::print_strips(self).len()
    }
}

/// Whether `op` can fire in the state whose true variables are `s`.
pub fn applicable(op: &Operator, s: &BTreeSet<String>) -> bool {
    op.pos_pre.is_subset(s) && op.neg_pre.is_disjoint(s)
}

/// The state reached by firing `op` in `s`.
pub fn apply_op(op: &Operator, s: &BTreeSet<String>) -> Result<BTreeSet<String>, StripsError> {
    if !applicable(op, s) {
        return Err(StripsError::Inapplicable(op.name.clone()));
    }
    let mut out = s.clone();
    match &op.post {
        Some((v, true)) => {
            out.insert(v.clone());
        }
        Some((v, false)) => {
            out.remove(v);
        }
        None => {}
    }
    Ok(out)
}

/// Operators over bit masks of `vars`.
#[derive(Clone, Copy, Debug)]
struct MaskOp {
    pos: u64,
    neg: u64,
    set: u64,
    clear: u64,
}

fn mask_of<'a>(y: &StripsInstance, vars: impl IntoIterator<Item = &'a String>) -> u64 {
    vars.into_iter()
        .filter_map(|v| y.index_of(v))
        .fold(0, |m, i| m | 1 << i)
}

fn mask_ops(y: &StripsInstance) -> Vec<MaskOp> {
    y.ops
        .iter()
        .map(|op| {
            let (set, clear) = match &op.post {
                Some((v, true)) => (mask_of(y, [v]), 0),
                Some((v, false)) => (0, mask_of(y, [v])),
                None => (0, 0),
            };
            MaskOp { pos: mask_of(y, &op.pos_pre), neg: mask_of(y, &op.neg_pre), set, clear }
        })
        .collect()
}

/// Breadth-first search from the initial state with the default bound.
/// Returns a shortest plan as indices into `y.ops`; the empty plan when the
/// initial state already satisfies the goal.
pub fn plan_exists(y: &StripsInstance) -> Result<Option<Vec<usize>>, StripsError> {
    plan_exists_bounded(y, DEFAULT_PLAN_BOUND)
}

pub fn plan_exists_bounded(y: &StripsInstance, bound: usize) -> Result<Option<Vec<usize>>, StripsError> {
    plan_from(y, &y.init, bound)
}

/// Plan search from an arbitrary start state.
pub fn plan_from(
    y: &StripsInstance,
    start: &BTreeSet<String>,
    bound: usize,
) -> Result<Option<Vec<usize>>, StripsError> {
    let n = y.vars.len();
    if n > bound || n >= 64 {
        return Err(StripsError::Capacity { vars: n, bound: bound.min(63) });
    }
    let ops = mask_ops(y);
    let (gp, gn) = (mask_of(y, &y.goal_pos), mask_of(y, &y.goal_neg));
    let is_goal = |s: u64| s & gp == gp && s & gn == 0;
    let s0 = mask_of(y, start);
    // parent[s] = (previous state, operator index)
    let mut parent: Vec<Option<(u64, usize)>> = vec![None; 1 << n];
    let mut seen = vec![false; 1 << n];
    seen[s0 as usize] = true;
    let mut queue = VecDeque::from([s0]);
    while let Some(s) = queue.pop_front() {
        if is_goal(s) {
            let mut plan = Vec::new();
            let mut cur = s;
            while let Some((prev, op)) = parent[cur as usize] {
                plan.push(op);
                cur = prev;
            }
            plan.reverse();
            let end = replay_from(y, start, &plan)?;
            debug_assert!(y.is_goal(&end));
            if !y.is_goal(&end) {
                return Err(StripsError::Invalid("plan replay missed the goal".into()));
            }
            return Ok(Some(plan));
        }
        for (i, op) in ops.iter().enumerate() {
            if s & op.pos == op.pos && s & op.neg == 0 {
                let t = (s | op.set) & !op.clear;
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    parent[t as usize] = Some((s, i));
                    queue.push_back(t);
                }
            }
        }
    }
    Ok(None)
}

/// Fires the operators of `plan` in order from the initial state.
pub fn replay(y: &StripsInstance, plan: &[usize]) -> Result<BTreeSet<String>, StripsError> {
    replay_from(y, &y.init, plan)
}

fn replay_from(y: &StripsInstance, start: &BTreeSet<String>, plan: &[usize]) -> Result<BTreeSet<String>, StripsError> {
    plan.iter().try_fold(start.clone(), |s, &i| {
        let op = y.ops.get(i).ok_or_else(|| StripsError::Invalid(format!("no operator {i}")))?;
        apply_op(op, &s)
    })
}

/// `|P|`.
pub fn class_of(y: &StripsInstance) -> usize {
    y.vars.len()
}

/// Canonical name of the `i`-th (1-based) planning variable.
pub fn canonical_var(i: usize) -> String {
    format!("x{i}")
}

/// The instance over `x1..xn` with no operators, empty initial state and
/// empty goal.
pub fn repr_of(n: usize) -> StripsInstance {
    StripsInstance {
        vars: (1..=n).map(canonical_var).collect(),
        ops: Vec::new(),
        init: BTreeSet::new(),
        goal_pos: BTreeSet::new(),
        goal_neg: BTreeSet::new(),
    }
}

/// Pads the variable list with fresh `x<k>` names up to `n` variables;
/// operators, initial state and goal are unchanged.
pub fn extend(y: &StripsInstance, n: usize) -> Result<StripsInstance, StripsError> {
    let class = class_of(y);
    if n < class {
        return Err(StripsError::Shrink { n, class });
    }
    let mut out = y.clone();
    let mut k = 1;
    while out.vars.len() < n {
        let name = canonical_var(k);
        if !out.vars.contains(&name) {
            out.vars.push(name);
        }
        k += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vars: &[&str]) -> BTreeSet<String> {
        vars.iter().map(|v| v.to_string()).collect()
    }

    fn one_var(ops: Vec<Operator>) -> StripsInstance {
        StripsInstance::new(vec!["x".into()], ops, set(&[]), set(&["x"]), set(&[])).unwrap()
    }

    #[test]
    fn noop_always_applies() {
        let o0 = Operator::noop();
        for s in [set(&[]), set(&["x", "y"])] {
            assert!(applicable(&o0, &s));
            assert_eq!(apply_op(&o0, &s).unwrap(), s);
        }
    }

    #[test]
    fn pre_and_post() {
        let op = Operator::new("a", ["x"], [], ("y", true));
        assert!(!applicable(&op, &set(&[])));
        assert_eq!(apply_op(&op, &set(&[])).unwrap_err(), StripsError::Inapplicable("a".into()));
        let del = Operator::new::<&str>("d", [], [], ("x", false));
        assert_eq!(apply_op(&del, &set(&["x", "y"])).unwrap(), set(&["y"]));
        let add = Operator::new::<&str>("s", [], [], ("x", true));
        assert_eq!(apply_op(&add, &set(&[])).unwrap(), set(&["x"]));
    }

    #[test]
    fn bfs_examples() {
        assert_eq!(plan_exists(&repr_of(3)).unwrap(), Some(vec![]));
        let y = one_var(vec![Operator::new::<&str>("a", [], [], ("x", true))]);
        assert_eq!(plan_exists(&y).unwrap(), Some(vec![0]));
        assert_eq!(plan_exists(&one_var(vec![])).unwrap(), None);
    }

    #[test]
    fn shortest_plan_is_replayed() {
        let y = StripsInstance::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                Operator::new::<&str>("ab", ["a"], [], ("b", true)),
                Operator::new::<&str>("a", [], [], ("a", true)),
                Operator::new::<&str>("bc", ["b"], ["c"], ("c", true)),
            ],
            set(&[]),
            set(&["c"]),
            set(&[]),
        )
        .unwrap();
        let plan = plan_exists(&y).unwrap().unwrap();
        assert_eq!(plan, vec![1, 0, 2]);
        assert!(y.is_goal(&replay(&y, &plan).unwrap()));
    }

    #[test]
    fn capacity() {
        assert!(matches!(plan_exists(&repr_of(21)), Err(StripsError::Capacity { .. })));
    }

    #[test]
    fn classification_and_extension() {
        assert_eq!(class_of(&repr_of(3)), 3);
        assert_eq!(repr_of(3).vars, ["x1", "x2", "x3"]);
        assert_eq!(class_of(&repr_of(0)), 0);
        let y = one_var(vec![Operator::new::<&str>("a", [], [], ("x", true))]);
        assert_eq!(extend(&y, 1).unwrap(), y);
        let e = extend(&y, 7).unwrap();
        assert_eq!(class_of(&e), 7);
        assert_eq!(e.ops, y.ops);
        assert_eq!(extend(&y, 0).unwrap_err(), StripsError::Shrink { n: 0, class: 1 });
    }

    #[test]
    fn validation() {
        let bad = StripsInstance::new(vec!["x".into()], vec![], set(&[]), set(&["x"]), set(&["x"]));
        assert!(matches!(bad, Err(StripsError::Invalid(_))));
        let unknown = StripsInstance::new(vec![], vec![], set(&["q"]), set(&[]), set(&[]));
        assert_eq!(unknown.unwrap_err(), StripsError::UnknownVar("q".into()));
    }
}
