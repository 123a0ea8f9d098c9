use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Linear temporal logic over atomic propositions named by state variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ltl {
    True,
    False,
    Atom(String),
    Not(Box<Ltl>),
    And(Box<Ltl>, Box<Ltl>),
    Or(Box<Ltl>, Box<Ltl>),
    Implies(Box<Ltl>, Box<Ltl>),
    Iff(Box<Ltl>, Box<Ltl>),
    Next(Box<Ltl>),
    Finally(Box<Ltl>),
    Globally(Box<Ltl>),
    Until(Box<Ltl>, Box<Ltl>),
}

/// The four temporal operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TemporalOp {
    X,
    F,
    G,
    U,
}

impl Ltl {
    pub fn atom(name: impl Into<String>) -> Ltl {
        Ltl::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Ltl) -> Ltl {
        Ltl::Not(Box::new(a))
    }

    pub fn and(a: Ltl, b: Ltl) -> Ltl {
        Ltl::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Ltl, b: Ltl) -> Ltl {
        Ltl::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Ltl, b: Ltl) -> Ltl {
        Ltl::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Ltl, b: Ltl) -> Ltl {
        Ltl::Iff(Box::new(a), Box::new(b))
    }

    pub fn next(a: Ltl) -> Ltl {
        Ltl::Next(Box::new(a))
    }

    pub fn finally(a: Ltl) -> Ltl {
        Ltl::Finally(Box::new(a))
    }

    pub fn globally(a: Ltl) -> Ltl {
        Ltl::Globally(Box::new(a))
    }

    pub fn until(a: Ltl, b: Ltl) -> Ltl {
        Ltl::Until(Box::new(a), Box::new(b))
    }

    /// A literal: the atom itself or its negation.
    pub fn lit(name: impl Into<String>, positive: bool) -> Ltl {
        let a = Ltl::atom(name);
        if positive {
            a
        } else {
            Ltl::not(a)
        }
    }

    /// Left-nested conjunction, `true` when empty.
    pub fn all(items: impl IntoIterator<Item = Ltl>) -> Ltl {
        items.into_iter().reduce(Ltl::and).unwrap_or(Ltl::True)
    }

    /// Left-nested disjunction, `false` when empty.
    pub fn any(items: impl IntoIterator<Item = Ltl>) -> Ltl {
        items.into_iter().reduce(Ltl::or).unwrap_or(Ltl::False)
    }

    pub fn children(&self) -> Vec<&Ltl> {
        match self {
            Ltl::True | Ltl::False | Ltl::Atom(_) => vec![],
            Ltl::Not(a) | Ltl::Next(a) | Ltl::Finally(a) | Ltl::Globally(a) => vec![a],
            Ltl::And(a, b)
            | Ltl::Or(a, b)
            | Ltl::Implies(a, b)
            | Ltl::Iff(a, b)
            | Ltl::Until(a, b) => vec![a, b],
        }
    }

    fn temporal_op(&self) -> Option<TemporalOp> {
        match self {
            Ltl::Next(_) => Some(TemporalOp::X),
            Ltl::Finally(_) => Some(TemporalOp::F),
            Ltl::Globally(_) => Some(TemporalOp::G),
            Ltl::Until(..) => Some(TemporalOp::U),
            _ => None,
        }
    }

    /// Temporal operators used anywhere in the formula.
    pub fn temporal_ops(&self) -> BTreeSet<TemporalOp> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            if let Some(op) = f.temporal_op() {
                out.insert(op);
            }
        });
        out
    }

    /// Number of temporal operator occurrences.
    pub fn temporal_count(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |f| n += usize::from(f.temporal_op().is_some()));
        n
    }

    pub fn is_propositional(&self) -> bool {
        self.temporal_count() == 0
    }

    /// Atom names in first-occurrence order.
    pub fn atoms(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        self.walk(&mut |f| {
            if let Ltl::Atom(a) = f {
                if !out.contains(a) {
                    out.push(a.clone());
                }
            }
        });
        out
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_| n += 1);
        n
    }

    fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Ltl)) {
        f(self);
        for c in self.children() {
            c.walk(f);
        }
    }
}

/// An LTL fragment `L(O1, ..., On)`: the formulas whose temporal operators
/// all come from the listed set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fragment {
    ops: BTreeSet<TemporalOp>,
}

impl Fragment {
    pub fn of(ops: impl IntoIterator<Item = TemporalOp>) -> Self {
        Fragment { ops: ops.into_iter().collect() }
    }

    pub fn full() -> Self {
        Fragment::of([TemporalOp::X, TemporalOp::F, TemporalOp::G, TemporalOp::U])
    }

    pub fn contains(&self, f: &Ltl) -> bool {
        f.temporal_ops().is_subset(&self.ops)
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.ops.iter().map(|o| format!("{o:?}")).collect();
        write!(f, "L({})", names.join(","))
    }
}

fn precedence(f: &Ltl) -> u8 {
    match f {
        Ltl::Iff(..) => 1,
        Ltl::Implies(..) => 2,
        Ltl::Or(..) => 3,
        Ltl::And(..) => 4,
        Ltl::Until(..) => 5,
        Ltl::Not(_) | Ltl::Next(_) | Ltl::Finally(_) | Ltl::Globally(_) => 6,
        Ltl::True | Ltl::False | Ltl::Atom(_) => 7,
    }
}

fn operand(f: &mut fmt::Formatter<'_>, e: &Ltl, min: u8) -> fmt::Result {
    if precedence(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

fn unary(f: &mut fmt::Formatter<'_>, op: &str, e: &Ltl) -> fmt::Result {
    if precedence(e) < 6 {
        write!(f, "{op}({e})")
    } else if op == "!" {
        write!(f, "!{e}")
    } else {
        write!(f, "{op} {e}")
    }
}

impl fmt::Display for Ltl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ltl::True => f.write_str("true"),
            Ltl::False => f.write_str("false"),
            Ltl::Atom(a) => f.write_str(a),
            Ltl::Not(a) => unary(f, "!", a),
            Ltl::Next(a) => unary(f, "X", a),
            Ltl::Finally(a) => unary(f, "F", a),
            Ltl::Globally(a) => unary(f, "G", a),
            Ltl::Until(a, b) => {
                operand(f, a, 5)?;
                f.write_str(" U ")?;
                operand(f, b, 6)
            }
            Ltl::And(a, b) => {
                operand(f, a, 4)?;
                f.write_str(" & ")?;
                operand(f, b, 5)
            }
            Ltl::Or(a, b) => {
                operand(f, a, 3)?;
                f.write_str(" | ")?;
                operand(f, b, 4)
            }
            Ltl::Implies(a, b) => {
                operand(f, a, 3)?;
                f.write_str(" -> ")?;
                operand(f, b, 2)
            }
            Ltl::Iff(a, b) => {
                operand(f, a, 1)?;
                f.write_str(" <-> ")?;
                operand(f, b, 2)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fragments() {
        let f = Ltl::and(
            Ltl::finally(Ltl::atom("g")),
            Ltl::globally(Ltl::iff(Ltl::atom("x"), Ltl::next(Ltl::atom("x")))),
        );
        assert!(Fragment::of([TemporalOp::F, TemporalOp::G, TemporalOp::X]).contains(&f));
        assert!(!Fragment::of([TemporalOp::F]).contains(&f));
        assert!(Fragment::of([TemporalOp::F]).contains(&Ltl::finally(Ltl::atom("g"))));
        assert_eq!(f.temporal_count(), 3);
        assert_eq!(f.atoms(), ["g", "x"]);
    }

    #[test]
    fn printing() {
        let f = Ltl::until(Ltl::not(Ltl::atom("x")), Ltl::atom("y"));
        assert_eq!(f.to_string(), "!x U y");
        let g = Ltl::finally(Ltl::and(Ltl::atom("a"), Ltl::next(Ltl::atom("b"))));
        assert_eq!(g.to_string(), "F(a & X b)");
        assert_eq!(Ltl::finally(Ltl::atom("x_g")).to_string(), "F x_g");
    }
}
