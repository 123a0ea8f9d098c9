//! Transition systems, LTL model checking, planning reductions and decision
//! diagrams.

pub mod bdd;
pub mod error;
pub mod expr;
mod graph;
pub mod kripke;
pub mod ltl;
pub mod reductions;
pub mod strips;
pub mod symbolic;
pub mod syntax;
pub mod system;

pub use bdd::{Bdd, BinOp, Manager, Ordering};
pub use error::{BddError, CoreError, Error, LtlError, ParseError, StripsError, SymbolicError};
pub use expr::{eval_bool, Assignment, BoolExpr, VarRef};
pub use kripke::{expand, expand_bounded, KripkeStructure, DEFAULT_EXPAND_BOUND};
pub use ltl::{eval_lasso, mc_all, mc_exists, to_buchi, Fragment, Lasso, Ltl, TemporalOp, Verdict};
pub use reductions::{McInstance, McS0Instance, Mode, Quantifier};
pub use strips::{Operator, StripsInstance};
pub use symbolic::{
    encode, growth_experiment, image, legal_initial_states, preimage, reachable, Family, GrowthReport, SymbolicModel,
};
pub use system::{compose_interleaved, compose_sync, initial_states, successors, State, TransitionSystem};
