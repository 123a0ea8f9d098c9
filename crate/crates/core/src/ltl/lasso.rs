use std::fmt;

use serde::Serialize;

use super::formula::Ltl;
use crate::error::LtlError;
use crate::kripke::KripkeStructure;
use crate::system::State;

/// An ultimately periodic run `stem · cycle^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Lasso {
    pub stem: Vec<State>,
    pub cycle: Vec<State>,
}

impl Lasso {
    pub fn new(stem: Vec<State>, cycle: Vec<State>) -> Result<Self, LtlError> {
        if cycle.is_empty() {
            return Err(LtlError::EmptyCycle);
        }
        Ok(Lasso { stem, cycle })
    }

    /// Number of distinct positions (`stem + cycle`).
    pub fn len(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn at(&self, i: usize) -> State {
        if i < self.stem.len() {
            self.stem[i]
        } else {
            self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }

    /// Position following `i` on the infinite unrolling, folded into
    /// `0..len()`: the last cycle position wraps to the cycle start.
    pub fn succ(&self, i: usize) -> usize {
        if i + 1 < self.len() {
            i + 1
        } else {
            self.stem.len()
        }
    }

    pub fn start(&self) -> State {
        self.at(0)
    }

    /// Whether every step of the lasso, including the wrap-around edge, is a
    /// transition of `k`.
    pub fn is_run_of(&self, k: &KripkeStructure) -> bool {
        let idx: Option<Vec<usize>> = (0..self.len()).map(|i| k.index_of(self.at(i))).collect();
        let Some(idx) = idx else { return false };
        (0..self.len()).all(|i| k.has_edge(idx[i], idx[self.succ(i)]))
    }

    /// Whether the run starts in an initial state of `k`.
    pub fn starts_initial(&self, k: &KripkeStructure) -> bool {
        k.index_of(self.start())
            .is_some_and(|i| k.initials().contains(&i))
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> LassoDisplay<'a> {
        LassoDisplay { lasso: self, vars }
    }
}

/// `stem: [..] [..] ; cycle: [..]` with each state as sorted `var=bit` pairs.
pub struct LassoDisplay<'a> {
    lasso: &'a Lasso,
    vars: &'a [String],
}

impl fmt::Display for LassoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("stem:")?;
        for s in &self.lasso.stem {
            write!(f, " [{}]", s.display(self.vars))?;
        }
        f.write_str(" ; cycle:")?;
        for s in &self.lasso.cycle {
            write!(f, " [{}]", s.display(self.vars))?;
        }
        Ok(())
    }
}

/// Truth of `phi` at position `pos` of the infinite run denoted by `run`,
/// where atoms name entries of `vars`.
pub fn eval_lasso(phi: &Ltl, run: &Lasso, vars: &[String], pos: usize) -> Result<bool, LtlError> {
    if run.cycle.is_empty() {
        return Err(LtlError::EmptyCycle);
    }
    if pos >= run.len() {
        return Err(LtlError::Position { pos, len: run.len() });
    }
    Ok(eval_all(phi, run, vars)?[pos])
}

/// Truth of `phi` at every position of `run`.
pub fn eval_all(phi: &Ltl, run: &Lasso, vars: &[String]) -> Result<Vec<bool>, LtlError> {
    let len = run.len();
    let succ = |i: usize| run.succ(i);
    Ok(match phi {
        Ltl::True => vec![true; len],
        Ltl::False => vec![false; len],
        Ltl::Atom(a) => {
            let i = vars
                .iter()
                .position(|v| v == a)
                .ok_or_else(|| LtlError::UnknownAtom(a.clone()))?;
            (0..len).map(|p| run.at(p).get(i)).collect()
        }
        Ltl::Not(a) => eval_all(a, run, vars)?.into_iter().map(|v| !v).collect(),
        Ltl::And(a, b) => zip(eval_all(a, run, vars)?, eval_all(b, run, vars)?, |x, y| x && y),
        Ltl::Or(a, b) => zip(eval_all(a, run, vars)?, eval_all(b, run, vars)?, |x, y| x || y),
        Ltl::Implies(a, b) => zip(eval_all(a, run, vars)?, eval_all(b, run, vars)?, |x, y| !x || y),
        Ltl::Iff(a, b) => zip(eval_all(a, run, vars)?, eval_all(b, run, vars)?, |x, y| x == y),
        Ltl::Next(a) => {
            let v = eval_all(a, run, vars)?;
            (0..len).map(|p| v[succ(p)]).collect()
        }
        Ltl::Finally(a) => {
            let v = eval_all(a, run, vars)?;
            fixpoint(len, false, &succ, |p, next| v[p] || next)
        }
        Ltl::Globally(a) => {
            let v = eval_all(a, run, vars)?;
            fixpoint(len, true, &succ, |p, next| v[p] && next)
        }
        Ltl::Until(a, b) => {
            let va = eval_all(a, run, vars)?;
            let vb = eval_all(b, run, vars)?;
            fixpoint(len, false, &succ, |p, next| vb[p] || (va[p] && next))
        }
    })
}

fn zip(a: Vec<bool>, b: Vec<bool>, f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

// Iterates `v[p] = step(p, v[succ(p)])` from the bottom (least fixpoint) or top
// (greatest fixpoint) until stable; backward sweeps converge in two passes.
fn fixpoint(
    len: usize,
    start: bool,
    succ: &impl Fn(usize) -> usize,
    step: impl Fn(usize, bool) -> bool,
) -> Vec<bool> {
    let mut v = vec![start; len];
    loop {
        let mut changed = false;
        for p in (0..len).rev() {
            let nv = step(p, v[succ(p)]);
            if nv != v[p] {
                v[p] = nv;
                changed = true;
            }
        }
        if !changed {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<String> {
        vec!["x".into(), "x_g".into()]
    }

    #[test]
    fn globally_on_constant_run() {
        let run = Lasso::new(vec![State(1)], vec![State(1), State(1)]).unwrap();
        assert!(eval_lasso(&Ltl::globally(Ltl::atom("x")), &run, &vars(), 0).unwrap());
    }

    #[test]
    fn eventually_reaches_goal_latch() {
        // x_g is raised at step p+1 = 2 and held
        let run = Lasso::new(vec![State(0), State(1)], vec![State(0b11)]).unwrap();
        let f = Ltl::finally(Ltl::atom("x_g"));
        assert!(eval_lasso(&f, &run, &vars(), 0).unwrap());
        assert!(!eval_lasso(&Ltl::globally(Ltl::atom("x_g")), &run, &vars(), 0).unwrap());
    }

    #[test]
    fn next_wraps_to_cycle_start() {
        let run = Lasso::new(vec![State(0)], vec![State(1), State(0)]).unwrap();
        let xx = Ltl::next(Ltl::atom("x"));
        assert_eq!(eval_all(&xx, &run, &vars()).unwrap(), vec![true, false, true]);
    }

    #[test]
    fn until_needs_the_right_side() {
        let a = Ltl::until(Ltl::atom("x"), Ltl::atom("x_g"));
        let never = Lasso::new(vec![], vec![State(1)]).unwrap();
        assert!(!eval_lasso(&a, &never, &vars(), 0).unwrap());
        let later = Lasso::new(vec![State(1), State(1)], vec![State(2)]).unwrap();
        assert!(eval_lasso(&a, &later, &vars(), 0).unwrap());
    }

    #[test]
    fn errors() {
        let run = Lasso::new(vec![], vec![State(0)]).unwrap();
        assert_eq!(
            eval_lasso(&Ltl::atom("nope"), &run, &vars(), 0).unwrap_err(),
            LtlError::UnknownAtom("nope".into())
        );
        assert!(eval_lasso(&Ltl::True, &run, &vars(), 1).is_err());
        assert_eq!(Lasso::new(vec![], vec![]).unwrap_err(), LtlError::EmptyCycle);
    }

    #[test]
    fn display_format() {
        let run = Lasso::new(vec![State(0)], vec![State(3)]).unwrap();
        assert_eq!(
            run.display(&vars()).to_string(),
            "stem: [x=0 x_g=0] ; cycle: [x=1 x_g=1]"
        );
    }
}
