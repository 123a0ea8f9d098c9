//! Explicit Kripke structures obtained by enumerating a transition system.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::CoreError;
use crate::system::{State, TransitionSystem};

/// Default cap on the number of variables `expand` will enumerate.
pub const DEFAULT_EXPAND_BOUND: usize = 20;

/// States, transition relation, labelling and initial states. A state is
/// labelled with exactly the variables it sets to `1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KripkeStructure {
    vars: Vec<String>,
    states: Vec<State>,
    succ: Vec<Vec<usize>>,
    initials: Vec<usize>,
}

impl KripkeStructure {
    /// Builds a structure from explicit parts; edges and initials refer to
    /// positions in `states`.
    pub fn new(
        vars: Vec<String>,
        states: Vec<State>,
        edges: impl IntoIterator<Item = (usize, usize)>,
        initials: impl IntoIterator<Item = usize>,
    ) -> Result<Self, CoreError> {
        let n = states.len();
        let distinct: BTreeSet<_> = states.iter().collect();
        if distinct.len() != n {
            return Err(CoreError::InvalidKripke("duplicate state".into()));
        }
        if vars.len() < 64 && states.iter().any(|s| s.0 >> vars.len() != 0) {
            return Err(CoreError::InvalidKripke("state assigns an undeclared variable".into()));
        }
        let mut succ = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(CoreError::InvalidKripke(format!("edge ({a}, {b}) out of range")));
            }
            succ[a].push(b);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        let mut initials: Vec<usize> = initials.into_iter().collect();
        if initials.iter().any(|&i| i >= n) {
            return Err(CoreError::InvalidKripke("initial state out of range".into()));
        }
        initials.sort_unstable();
        initials.dedup();
        Ok(KripkeStructure { vars, states, succ, initials })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    pub fn initials(&self) -> &[usize] {
        &self.initials
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.succ[a].binary_search(&b).is_ok()
    }

    /// Position of `s` among the states, if present.
    pub fn index_of(&self, s: State) -> Option<usize> {
        // expanded structures store every assignment at its own index
        if self.states.get(s.0 as usize) == Some(&s) {
            return Some(s.0 as usize);
        }
        self.states.iter().position(|&t| t == s)
    }

    pub fn label(&self, i: usize) -> BTreeSet<String> {
        self.states[i].true_vars(&self.vars)
    }

    /// The same structure with a different set of initial states.
    pub fn with_initials(&self, initials: impl IntoIterator<Item = usize>) -> Self {
        let mut k = self.clone();
        k.initials = initials.into_iter().filter(|&i| i < self.len()).collect();
        k.initials.sort_unstable();
        k.initials.dedup();
        k
    }

    /// Edge set as `(from, to)` state pairs, for comparisons across structures.
    pub fn edge_set(&self) -> BTreeSet<(State, State)> {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(i, ss)| ss.iter().map(move |&j| (self.states[i], self.states[j])))
            .collect()
    }

    pub fn state_set(&self) -> BTreeSet<State> {
        self.states.iter().copied().collect()
    }

    pub fn initial_set(&self) -> BTreeSet<State> {
        self.initials.iter().map(|&i| self.states[i]).collect()
    }

}

/// Enumerates every assignment of `ts` with the default variable bound.
pub fn expand(ts: &TransitionSystem) -> Result<KripkeStructure, CoreError> {
    expand_bounded(ts, DEFAULT_EXPAND_BOUND)
}

pub fn expand_bounded(ts: &TransitionSystem, bound: usize) -> Result<KripkeStructure, CoreError> {
    let n = ts.vars().len();
    if n > bound {
        return Err(CoreError::Capacity { vars: n, bound });
    }
    let stepper = ts.stepper()?;
    let count = 1usize << n;
    let states: Vec<State> = (0..count as u64).map(State).collect();
    let succ = states
        .iter()
        .map(|&s| stepper.successors(s).into_iter().map(|t| t.0 as usize).collect())
        .collect();
    let initials = stepper
        .initial_states()
        .into_iter()
        .map(|s| s.0 as usize)
        .collect();
    Ok(KripkeStructure { vars: ts.vars().to_vec(), states, succ, initials })
}
