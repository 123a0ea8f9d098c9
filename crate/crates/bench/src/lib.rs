//! Benchmark inputs shared by the criterion targets.

use mclab_core::reductions::{reduce_formula_fixed, reduce_model_fixed};
use mclab_core::symbolic::mcs0_family_instance;
use mclab_core::{expand, KripkeStructure, Ltl, McInstance, Mode, TransitionSystem};

/// Model-fixed or formula-fixed reduction of the seeded `n`-variable
/// planning instance.
pub fn reduction(n: usize, model_fixed: bool) -> McInstance {
    let y = mcs0_family_instance(n, 7);
    if model_fixed {
        reduce_model_fixed(&y, Mode::Interleaved)
    } else {
        reduce_formula_fixed(&y)
    }
}

pub fn composed(n: usize, model_fixed: bool) -> TransitionSystem {
    reduction(n, model_fixed).compose().expect("reduction composes")
}

/// Expanded structure and formula, ready for the explicit checker.
pub fn explicit(n: usize, model_fixed: bool) -> (KripkeStructure, Ltl) {
    let m = reduction(n, model_fixed);
    let k = expand(&m.compose().expect("reduction composes")).expect("small enough to expand");
    (k, m.formula)
}
