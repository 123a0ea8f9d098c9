//! LTL formulas, lasso semantics and explicit-state model checking.

mod buchi;
mod check;
mod formula;
mod lasso;

pub use buchi::{to_buchi, Buchi, Edge, MAX_TRACKED};
pub use check::{mc_all, mc_exists, mc_exists_with, Verdict};
pub use formula::{Fragment, Ltl, TemporalOp};
pub use lasso::{eval_all, eval_lasso, Lasso, LassoDisplay};
