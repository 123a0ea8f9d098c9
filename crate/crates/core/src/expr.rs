//! Boolean formulas over current-state and next-state variables.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CoreError;

/// A reference to a state variable, either its current value `x` or its
/// next-state copy `x'`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VarRef {
    pub name: String,
    pub primed: bool,
}

impl VarRef {
    pub fn current(name: impl Into<String>) -> Self {
        VarRef { name: name.into(), primed: false }
    }

    pub fn next(name: impl Into<String>) -> Self {
        VarRef { name: name.into(), primed: true }
    }

    pub fn with_prime(&self, primed: bool) -> Self {
        VarRef { name: self.name.clone(), primed }
    }
}

impl fmt::Display for VarRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.primed {
            write!(f, "{}'", self.name)
        } else {
            f.write_str(&self.name)
        }
    }
}

/// Propositional formula used for initial conditions and transition relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoolExpr {
    Const(bool),
    Var(VarRef),
    Not(Box<BoolExpr>),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
    Implies(Box<BoolExpr>, Box<BoolExpr>),
    Iff(Box<BoolExpr>, Box<BoolExpr>),
    /// `a = b` where both sides are variables or constants.
    Eq(Box<BoolExpr>, Box<BoolExpr>),
}

impl BoolExpr {
    pub fn var(name: impl Into<String>) -> Self {
        BoolExpr::Var(VarRef::current(name))
    }

    pub fn primed(name: impl Into<String>) -> Self {
        BoolExpr::Var(VarRef::next(name))
    }

    pub fn not(e: BoolExpr) -> Self {
        BoolExpr::Not(Box::new(e))
    }

    pub fn and(a: BoolExpr, b: BoolExpr) -> Self {
        BoolExpr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: BoolExpr, b: BoolExpr) -> Self {
        BoolExpr::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: BoolExpr, b: BoolExpr) -> Self {
        BoolExpr::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: BoolExpr, b: BoolExpr) -> Self {
        BoolExpr::Iff(Box::new(a), Box::new(b))
    }

    pub fn eq(a: BoolExpr, b: BoolExpr) -> Self {
        BoolExpr::Eq(Box::new(a), Box::new(b))
    }

    /// `x = 0` or `x = 1`.
    pub fn var_is(var: VarRef, value: bool) -> Self {
        BoolExpr::eq(BoolExpr::Var(var), BoolExpr::Const(value))
    }

    /// Left-nested conjunction; the empty conjunction is `1`.
    pub fn all(items: impl IntoIterator<Item = BoolExpr>) -> Self {
        items
            .into_iter()
            .reduce(BoolExpr::and)
            .unwrap_or(BoolExpr::Const(true))
    }

    /// Left-nested disjunction; the empty disjunction is `0`.
    pub fn any(items: impl IntoIterator<Item = BoolExpr>) -> Self {
        items
            .into_iter()
            .reduce(BoolExpr::or)
            .unwrap_or(BoolExpr::Const(false))
    }

    /// Every variable reference in the expression, in first-occurrence order.
    pub fn vars(&self) -> Vec<VarRef> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        self.visit_vars(&mut |v| {
            if seen.insert(v.clone()) {
                out.push(v.clone());
            }
        });
        out
    }

    pub fn has_primed(&self) -> bool {
        let mut found = false;
        self.visit_vars(&mut |v| found |= v.primed);
        found
    }

    fn visit_vars(&self, f: &mut impl FnMut(&VarRef)) {
        match self {
            BoolExpr::Const(_) => {}
            BoolExpr::Var(v) => f(v),
            BoolExpr::Not(a) => a.visit_vars(f),
            BoolExpr::And(a, b)
            | BoolExpr::Or(a, b)
            | BoolExpr::Implies(a, b)
            | BoolExpr::Iff(a, b)
            | BoolExpr::Eq(a, b) => {
                a.visit_vars(f);
                b.visit_vars(f);
            }
        }
    }

    /// Rewrites every variable reference through `f`.
    pub fn map_vars(&self, f: &impl Fn(&VarRef) -> VarRef) -> BoolExpr {
        let bx = |e: &BoolExpr| Box::new(e.map_vars(f));
        match self {
            BoolExpr::Const(c) => BoolExpr::Const(*c),
            BoolExpr::Var(v) => BoolExpr::Var(f(v)),
            BoolExpr::Not(a) => BoolExpr::Not(bx(a)),
            BoolExpr::And(a, b) => BoolExpr::And(bx(a), bx(b)),
            BoolExpr::Or(a, b) => BoolExpr::Or(bx(a), bx(b)),
            BoolExpr::Implies(a, b) => BoolExpr::Implies(bx(a), bx(b)),
            BoolExpr::Iff(a, b) => BoolExpr::Iff(bx(a), bx(b)),
            BoolExpr::Eq(a, b) => BoolExpr::Eq(bx(a), bx(b)),
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            BoolExpr::Const(_) | BoolExpr::Var(_) => 1,
            BoolExpr::Not(a) => 1 + a.size(),
            BoolExpr::And(a, b)
            | BoolExpr::Or(a, b)
            | BoolExpr::Implies(a, b)
            | BoolExpr::Iff(a, b)
            | BoolExpr::Eq(a, b) => 1 + a.size() + b.size(),
        }
    }
}

/// A (possibly partial) valuation of variable references.
pub trait Assignment {
    fn value(&self, var: &VarRef) -> Option<bool>;
}

impl Assignment for BTreeMap<VarRef, bool> {
    fn value(&self, var: &VarRef) -> Option<bool> {
        self.get(var).copied()
    }
}

impl Assignment for HashMap<VarRef, bool> {
    fn value(&self, var: &VarRef) -> Option<bool> {
        self.get(var).copied()
    }
}

impl<F: Fn(&VarRef) -> Option<bool>> Assignment for F {
    fn value(&self, var: &VarRef) -> Option<bool> {
        self(var)
    }
}

/// Evaluates `expr` under `a` with the usual Boolean semantics.
pub fn eval_bool(expr: &BoolExpr, a: &impl Assignment) -> Result<bool, CoreError> {
    Ok(match expr {
        BoolExpr::Const(c) => *c,
        BoolExpr::Var(v) => a
            .value(v)
            .ok_or_else(|| CoreError::Unbound(v.to_string()))?,
        BoolExpr::Not(e) => !eval_bool(e, a)?,
        BoolExpr::And(l, r) => eval_bool(l, a)? & eval_bool(r, a)?,
        BoolExpr::Or(l, r) => eval_bool(l, a)? | eval_bool(r, a)?,
        BoolExpr::Implies(l, r) => !eval_bool(l, a)? | eval_bool(r, a)?,
        BoolExpr::Iff(l, r) | BoolExpr::Eq(l, r) => eval_bool(l, a)? == eval_bool(r, a)?,
    })
}

// Binding strength used by the printer: higher binds tighter.
fn precedence(e: &BoolExpr) -> u8 {
    match e {
        BoolExpr::Iff(..) => 1,
        BoolExpr::Implies(..) => 2,
        BoolExpr::Or(..) => 3,
        BoolExpr::And(..) => 4,
        BoolExpr::Not(..) => 5,
        BoolExpr::Eq(..) => 6,
        BoolExpr::Const(_) | BoolExpr::Var(_) => 7,
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &BoolExpr, min: u8) -> fmt::Result {
    if precedence(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for BoolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoolExpr::Const(c) => write!(f, "{}", u8::from(*c)),
            BoolExpr::Var(v) => write!(f, "{v}"),
            BoolExpr::Not(a) => {
                f.write_str("!")?;
                write_operand(f, a, 5)
            }
            // left-associative operators: the right operand must bind tighter
            BoolExpr::And(a, b) => {
                write_operand(f, a, 4)?;
                f.write_str(" & ")?;
                write_operand(f, b, 5)
            }
            BoolExpr::Or(a, b) => {
                write_operand(f, a, 3)?;
                f.write_str(" | ")?;
                write_operand(f, b, 4)
            }
            BoolExpr::Implies(a, b) => {
                write_operand(f, a, 3)?;
                f.write_str(" -> ")?;
                write_operand(f, b, 2)
            }
            BoolExpr::Iff(a, b) => {
                write_operand(f, a, 1)?;
                f.write_str(" <-> ")?;
                write_operand(f, b, 2)
            }
            BoolExpr::Eq(a, b) => {
                write_operand(f, a, 7)?;
                f.write_str("=")?;
                write_operand(f, b, 7)
            }
        }
    }
}

/// An expression compiled against a fixed variable order: current variable
/// `i` is bit `i` of a word, primed variable `i` is bit `n + i`.
#[derive(Clone, Debug)]
pub(crate) enum Compiled {
    Const(bool),
    Bit(u32),
    Not(Box<Compiled>),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
    Iff(Box<Compiled>, Box<Compiled>),
}

/// Three-valued result of evaluating under a partial assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Tri {
    False,
    True,
    Unknown,
}

impl Compiled {
    pub(crate) fn compile(
        expr: &BoolExpr,
        index: &impl Fn(&VarRef) -> Option<u32>,
    ) -> Result<Compiled, CoreError> {
        let rec = |e: &BoolExpr| Compiled::compile(e, index).map(Box::new);
        Ok(match expr {
            BoolExpr::Const(c) => Compiled::Const(*c),
            BoolExpr::Var(v) => {
                Compiled::Bit(index(v).ok_or_else(|| CoreError::Unbound(v.to_string()))?)
            }
            BoolExpr::Not(a) => Compiled::Not(rec(a)?),
            BoolExpr::And(a, b) => Compiled::And(rec(a)?, rec(b)?),
            BoolExpr::Or(a, b) => Compiled::Or(rec(a)?, rec(b)?),
            BoolExpr::Implies(a, b) => Compiled::Or(Box::new(Compiled::Not(rec(a)?)), rec(b)?),
            BoolExpr::Iff(a, b) | BoolExpr::Eq(a, b) => Compiled::Iff(rec(a)?, rec(b)?),
        })
    }

    /// Evaluates with only the bits in `known` defined.
    pub(crate) fn eval3(&self, word: u64, known: u64) -> Tri {
        match self {
            Compiled::Const(c) => Tri::from(*c),
            Compiled::Bit(i) => {
                if known >> i & 1 == 1 {
                    Tri::from(word >> i & 1 == 1)
                } else {
                    Tri::Unknown
                }
            }
            Compiled::Not(a) => match a.eval3(word, known) {
                Tri::True => Tri::False,
                Tri::False => Tri::True,
                Tri::Unknown => Tri::Unknown,
            },
            Compiled::And(a, b) => match a.eval3(word, known) {
                Tri::False => Tri::False,
                Tri::True => b.eval3(word, known),
                Tri::Unknown => match b.eval3(word, known) {
                    Tri::False => Tri::False,
                    _ => Tri::Unknown,
                },
            },
            Compiled::Or(a, b) => match a.eval3(word, known) {
                Tri::True => Tri::True,
                Tri::False => b.eval3(word, known),
                Tri::Unknown => match b.eval3(word, known) {
                    Tri::True => Tri::True,
                    _ => Tri::Unknown,
                },
            },
            Compiled::Iff(a, b) => match (a.eval3(word, known), b.eval3(word, known)) {
                (Tri::Unknown, _) | (_, Tri::Unknown) => Tri::Unknown,
                (x, y) => Tri::from(x == y),
            },
        }
    }
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assign(pairs: &[(&str, bool, bool)]) -> BTreeMap<VarRef, bool> {
        pairs
            .iter()
            .map(|&(n, p, v)| (VarRef { name: n.into(), primed: p }, v))
            .collect()
    }

    #[test]
    fn stays_true_relation() {
        let rho = BoolExpr::implies(BoolExpr::var("x"), BoolExpr::primed("x"));
        let a = assign(&[("x", false, true), ("x", true, true)]);
        assert!(eval_bool(&rho, &a).unwrap());
        let a = assign(&[("x", false, true), ("x", true, false)]);
        assert!(!eval_bool(&rho, &a).unwrap());
    }

    #[test]
    fn excluded_middle() {
        let e = BoolExpr::or(BoolExpr::var("x"), BoolExpr::not(BoolExpr::var("x")));
        assert!(eval_bool(&e, &assign(&[("x", false, false)])).unwrap());
    }

    #[test]
    fn equality_with_constants() {
        let e = BoolExpr::var_is(VarRef::current("x"), false);
        assert!(eval_bool(&e, &assign(&[("x", false, false)])).unwrap());
        assert!(!eval_bool(&e, &assign(&[("x", false, true)])).unwrap());
    }

    #[test]
    fn unbound_variable_is_named() {
        let e = BoolExpr::and(BoolExpr::var("x"), BoolExpr::primed("y"));
        let err = eval_bool(&e, &assign(&[("x", false, true)])).unwrap_err();
        assert_eq!(err, CoreError::Unbound("y'".into()));
    }

    #[test]
    fn three_valued_agrees_when_total() {
        let e = BoolExpr::iff(
            BoolExpr::var("a"),
            BoolExpr::or(BoolExpr::primed("a"), BoolExpr::not(BoolExpr::var("b"))),
        );
        let idx = |v: &VarRef| {
            let base = if v.name == "a" { 0 } else { 1 };
            Some(base + if v.primed { 2 } else { 0 })
        };
        let c = Compiled::compile(&e, &idx).unwrap();
        for w in 0..8u64 {
            let a = |v: &VarRef| idx(v).map(|i| w >> i & 1 == 1);
            assert_eq!(c.eval3(w, 0b111), Tri::from(eval_bool(&e, &a).unwrap()));
        }
        // `a'` unknown: a=1, b=0 makes the right side true regardless
        assert_eq!(c.eval3(0b001, 0b011), Tri::True);
    }

    #[test]
    fn printer_parenthesizes_by_precedence() {
        let e = BoolExpr::and(
            BoolExpr::or(BoolExpr::var("a"), BoolExpr::var("b")),
            BoolExpr::not(BoolExpr::var_is(VarRef::next("c"), true)),
        );
        assert_eq!(e.to_string(), "(a | b) & !c'=1");
        let r = BoolExpr::implies(
            BoolExpr::implies(BoolExpr::var("a"), BoolExpr::var("b")),
            BoolExpr::var("c"),
        );
        assert_eq!(r.to_string(), "(a -> b) -> c");
    }
}
