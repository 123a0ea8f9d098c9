//! Finite-state transition systems and their parallel composition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::expr::{BoolExpr, Compiled, Tri, VarRef};

/// Widest system whose current and next state fit in one machine word.
pub const MAX_WORD_VARS: usize = 32;

/// A total assignment to the variables of one system: bit `i` holds the
/// value of the system's `i`-th variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct State(pub u64);

impl State {
    pub fn get(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize, value: bool) -> State {
        if value {
            State(self.0 | 1 << i)
        } else {
            State(self.0 & !(1 << i))
        }
    }

    /// Builds a state from named values; missing names default to `0`.
    pub fn from_values<'a>(
        vars: &[String],
        values: impl IntoIterator<Item = (&'a str, bool)>,
    ) -> Result<State, CoreError> {
        let mut s = State(0);
        for (name, v) in values {
            let i = vars
                .iter()
                .position(|x| x == name)
                .ok_or_else(|| CoreError::Unbound(name.to_string()))?;
            s = s.with(i, v);
        }
        Ok(s)
    }

    /// Names of the variables set to `1`.
    pub fn true_vars(self, vars: &[String]) -> BTreeSet<String> {
        vars.iter()
            .enumerate()
            .filter(|&(i, _)| self.get(i))
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Re-indexes this state from one variable order into another. Variables
    /// of `to` missing from `from` are `0`.
    pub fn project(self, from: &[String], to: &[String]) -> State {
        let mut out = State(0);
        for (j, name) in to.iter().enumerate() {
            if let Some(i) = from.iter().position(|v| v == name) {
                out = out.with(j, self.get(i));
            }
        }
        out
    }

    pub fn display<'a>(&self, vars: &'a [String]) -> StateDisplay<'a> {
        StateDisplay { state: *self, vars }
    }
}

/// Prints a state as space-separated `var=bit` pairs sorted by name.
pub struct StateDisplay<'a> {
    state: State,
    vars: &'a [String],
}

impl fmt::Display for StateDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sorted: BTreeMap<&str, bool> = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), self.state.get(i)))
            .collect();
        let mut first = true;
        for (name, v) in sorted {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{name}={}", u8::from(v))?;
        }
        Ok(())
    }
}

/// A triple of state variables, initial condition and transition relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionSystem {
    name: String,
    vars: Vec<String>,
    /// Explicitly declared local variables. `None` leaves locality to be
    /// inferred at composition time.
    locals: Option<BTreeSet<String>>,
    init: BoolExpr,
    trans: BoolExpr,
}

impl TransitionSystem {
    pub fn new(
        name: impl Into<String>,
        vars: Vec<String>,
        init: BoolExpr,
        trans: BoolExpr,
    ) -> Result<Self, CoreError> {
        let name = name.into();
        let mut seen = BTreeSet::new();
        for v in &vars {
            if !seen.insert(v.as_str()) {
                return Err(CoreError::Duplicate { system: name, var: v.clone() });
            }
        }
        for v in init.vars() {
            if v.primed {
                return Err(CoreError::PrimedInInit { system: name, var: v.to_string() });
            }
            if !seen.contains(v.name.as_str()) {
                return Err(CoreError::Undeclared { system: name, var: v.to_string() });
            }
        }
        for v in trans.vars() {
            if !seen.contains(v.name.as_str()) {
                return Err(CoreError::Undeclared { system: name, var: v.to_string() });
            }
        }
        Ok(TransitionSystem { name, vars, locals: None, init, trans })
    }

    /// Declares which variables are local; the rest are shared.
    pub fn with_locals<S: Into<String>>(
        mut self,
        locals: impl IntoIterator<Item = S>,
    ) -> Result<Self, CoreError> {
        let mut set = BTreeSet::new();
        for l in locals {
            let l = l.into();
            if !self.vars.contains(&l) {
                return Err(CoreError::Undeclared { system: self.name.clone(), var: l });
            }
            if !set.insert(l.clone()) {
                return Err(CoreError::Duplicate { system: self.name.clone(), var: l });
            }
        }
        self.locals = Some(set);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn init(&self) -> &BoolExpr {
        &self.init
    }

    pub fn trans(&self) -> &BoolExpr {
        &self.trans
    }

    pub fn declared_locals(&self) -> Option<&BTreeSet<String>> {
        self.locals.as_ref()
    }

    /// Local variables of the system viewed on its own: the declared set,
    /// or every variable when nothing was declared.
    pub fn local_vars(&self) -> BTreeSet<String> {
        match &self.locals {
            Some(l) => l.clone(),
            None => self.vars.iter().cloned().collect(),
        }
    }

    pub fn shared_vars(&self) -> BTreeSet<String> {
        let locals = self.local_vars();
        self.vars
            .iter()
            .filter(|v| !locals.contains(*v))
            .cloned()
            .collect()
    }

    pub fn index_of(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    pub(crate) fn stepper(&self) -> Result<Stepper, CoreError> {
        let n = self.vars.len();
        if n > MAX_WORD_VARS {
            return Err(CoreError::Capacity { vars: n, bound: MAX_WORD_VARS });
        }
        let index = |v: &VarRef| {
            self.index_of(&v.name)
                .map(|i| (i + if v.primed { n } else { 0 }) as u32)
        };
        Ok(Stepper {
            n,
            init: Compiled::compile(&self.init, &index)?,
            trans: Compiled::compile(&self.trans, &index)?,
        })
    }
}

/// Compiled initial condition and transition relation of one system.
pub(crate) struct Stepper {
    n: usize,
    init: Compiled,
    trans: Compiled,
}

impl Stepper {
    fn mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub(crate) fn initial_states(&self) -> Vec<State> {
        let mut out = Vec::new();
        self.enumerate(&self.init, 0, 0, 0, 0, &mut out);
        out.sort();
        out
    }

    pub(crate) fn successors(&self, s: State) -> Vec<State> {
        let base = s.0 & self.mask();
        let mut out = Vec::new();
        self.enumerate(&self.trans, base, self.mask(), self.n, 0, &mut out);
        out.sort();
        out
    }

    // Assigns the bits at `offset + i` one at a time, pruning as soon as the
    // formula is decided under the partial assignment.
    fn enumerate(&self, f: &Compiled, word: u64, known: u64, offset: usize, i: usize, out: &mut Vec<State>) {
        match f.eval3(word, known) {
            Tri::False => {}
            Tri::True => {
                let free = self.n - i;
                for rest in 0..(1u64 << free) {
                    let bits = (word >> offset & ((1u64 << i) - 1)) | rest << i;
                    out.push(State(bits));
                }
            }
            Tri::Unknown => {
                debug_assert!(i < self.n);
                let bit = 1u64 << (offset + i);
                self.enumerate(f, word, known | bit, offset, i + 1, out);
                self.enumerate(f, word | bit, known | bit, offset, i + 1, out);
            }
        }
    }
}

/// All states of `ts` satisfying its initial condition.
pub fn initial_states(ts: &TransitionSystem) -> Result<Vec<State>, CoreError> {
    Ok(ts.stepper()?.initial_states())
}

/// All `s'` such that `(s, s')` satisfies the transition relation.
pub fn successors(ts: &TransitionSystem, s: State) -> Result<Vec<State>, CoreError> {
    Ok(ts.stepper()?.successors(s))
}

struct Resolved {
    vars: Vec<String>,
    locals: Vec<BTreeSet<String>>,
}

fn resolve(systems: &[TransitionSystem]) -> Result<Resolved, CoreError> {
    if systems.is_empty() {
        return Err(CoreError::EmptyComposition);
    }
    let mut vars: Vec<String> = Vec::new();
    let mut occurrences: BTreeMap<&str, usize> = BTreeMap::new();
    for ts in systems {
        for v in ts.vars() {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
            *occurrences.entry(v).or_default() += 1;
        }
    }
    let mut owner: BTreeMap<&str, &str> = BTreeMap::new();
    for ts in systems {
        for l in ts.declared_locals().into_iter().flatten() {
            if let Some(first) = owner.insert(l, ts.name()) {
                return Err(CoreError::ConflictingLocality {
                    var: l.clone(),
                    first: first.to_string(),
                    second: ts.name().to_string(),
                });
            }
        }
    }
    let locals = systems
        .iter()
        .map(|ts| match ts.declared_locals() {
            Some(l) => l.clone(),
            None => ts
                .vars()
                .iter()
                .filter(|v| occurrences[v.as_str()] == 1 && !owner.contains_key(v.as_str()))
                .cloned()
                .collect(),
        })
        .collect();
    Ok(Resolved { vars, locals })
}

fn composite_name(systems: &[TransitionSystem]) -> String {
    systems.iter().map(|s| s.name()).collect::<Vec<_>>().join("_")
}

/// Synchronous composition: every process moves at every step.
pub fn compose_sync(systems: &[TransitionSystem]) -> Result<TransitionSystem, CoreError> {
    let resolved = resolve(systems)?;
    let init = BoolExpr::all(systems.iter().map(|s| s.init().clone()));
    let trans = BoolExpr::all(systems.iter().map(|s| s.trans().clone()));
    TransitionSystem::new(composite_name(systems), resolved.vars, init, trans)?
        .with_locals(resolved.locals.into_iter().flatten())
}

/// Interleaved asynchronous composition: one process moves per step and the
/// local variables of every other process keep their values.
pub fn compose_interleaved(systems: &[TransitionSystem]) -> Result<TransitionSystem, CoreError> {
    let resolved = resolve(systems)?;
    let init = BoolExpr::all(systems.iter().map(|s| s.init().clone()));
    let frame = |j: usize| {
        resolved.locals[j]
            .iter()
            .map(|v| BoolExpr::iff(BoolExpr::primed(v.clone()), BoolExpr::var(v.clone())))
            .collect::<Vec<_>>()
    };
    let trans = BoolExpr::any(systems.iter().enumerate().map(|(i, ts)| {
        let frozen: Vec<BoolExpr> = (0..systems.len())
            .filter(|&j| j != i)
            .flat_map(frame)
            .collect();
        if frozen.is_empty() {
            ts.trans().clone()
        } else {
            BoolExpr::and(ts.trans().clone(), BoolExpr::all(frozen))
        }
    }));
    TransitionSystem::new(composite_name(systems), resolved.vars, init, trans)?
        .with_locals(resolved.locals.into_iter().flatten())
}
