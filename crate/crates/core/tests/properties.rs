use std::collections::BTreeSet;

use proptest::prelude::*;

use mclab_core::bdd::{Manager, Ordering};
use mclab_core::reductions::{mcs0_fixed, random_instance, reduce_formula_fixed, reduce_model_fixed, Mode};
use mclab_core::strips::{plan_exists, replay, StripsInstance};
use mclab_core::symbolic::{encode, image, legal_initial_states_with, preimage, reachable, Strategy as Search};
use mclab_core::syntax::{parse_bool, parse_ltl, parse_system, print_system};
use mclab_core::{
    eval_bool, eval_lasso, expand, mc_all, mc_exists, successors, BoolExpr, KripkeStructure, Ltl, State,
    TransitionSystem, VarRef,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const NAMES: [&str; 4] = ["a", "b", "c", "d"];

fn names(n: usize) -> Vec<String> {
    NAMES[..n].iter().map(|s| s.to_string()).collect()
}

fn expr(n: usize, primes: bool) -> impl Strategy<Value = BoolExpr> {
    let leaf = prop_oneof![
        any::<bool>().prop_map(BoolExpr::Const),
        (0..n, any::<bool>()).prop_map(move |(i, p)| BoolExpr::Var(VarRef { name: NAMES[i].into(), primed: p && primes })),
    ];
    let atoms = leaf.clone();
    leaf.prop_recursive(4, 24, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(BoolExpr::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BoolExpr::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BoolExpr::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BoolExpr::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BoolExpr::iff(a, b)),
            (inner, atoms.clone(), atoms.clone()).prop_map(|(_, a, b)| BoolExpr::eq(a, b)),
        ]
    })
}

fn ltl() -> impl Strategy<Value = Ltl> {
    let leaf = prop_oneof![
        Just(Ltl::True),
        Just(Ltl::False),
        (0..3usize).prop_map(|i| Ltl::atom(NAMES[i])),
    ];
    leaf.prop_recursive(5, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Ltl::not),
            inner.clone().prop_map(Ltl::next),
            inner.clone().prop_map(Ltl::finally),
            inner.clone().prop_map(Ltl::globally),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ltl::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ltl::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ltl::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ltl::iff(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Ltl::until(a, b)),
        ]
    })
}

fn system(n: usize) -> impl Strategy<Value = TransitionSystem> {
    (expr(n, false), expr(n, true))
        .prop_map(move |(init, trans)| TransitionSystem::new("m", names(n), init, trans).unwrap())
}

fn kripke() -> impl Strategy<Value = KripkeStructure> {
    (1..=4usize)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::sample::subsequence((0..8u64).collect::<Vec<_>>(), n),
                proptest::collection::vec(any::<bool>(), n * n),
                proptest::collection::vec(any::<bool>(), n),
            )
        })
        .prop_map(|(n, labels, edges, init)| {
            let edges: Vec<(usize, usize)> = (0..n * n).filter(|&k| edges[k]).map(|k| (k / n, k % n)).collect();
            let mut initials: Vec<usize> = (0..n).filter(|&i| init[i]).collect();
            if initials.is_empty() {
                initials.push(0);
            }
            KripkeStructure::new(names(3), labels.into_iter().map(State).collect(), edges, initials).unwrap()
        })
}

fn assignment(vars: &[String], bits: u64) -> impl Fn(&VarRef) -> Option<bool> + '_ {
    move |v: &VarRef| vars.iter().position(|x| *x == v.name).map(|i| bits >> i & 1 == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ltl_print_parse_round_trip(f in ltl()) {
        prop_assert_eq!(parse_ltl(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn bool_print_parse_round_trip(e in expr(4, true)) {
        prop_assert_eq!(parse_bool(&e.to_string()).unwrap(), e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn system_round_trip(ts in system(3)) {
        let text = print_system(&ts);
        let back = parse_system(&text).unwrap();
        prop_assert_eq!(back.len(), 1);
        prop_assert_eq!(print_system(&back[0]), text);
    }

    #[test]
    fn build_then_evaluate_is_eval(e in expr(4, false), reverse in any::<bool>()) {
        let vars = names(4);
        let ord = if reverse { Ordering::plain(&vars).reversed() } else { Ordering::plain(&vars) };
        let mut m = Manager::new(ord);
        let f = m.build(&e).unwrap();
        for bits in 0..16 {
            let a = assignment(&vars, bits);
            prop_assert_eq!(m.evaluate(f, &a).unwrap(), eval_bool(&e, &a).unwrap());
        }
        m.validate().map_err(TestCaseError::fail)?;
    }

    #[test]
    fn equal_tables_share_roots(a in expr(3, false), b in expr(3, false)) {
        let vars = names(3);
        let same = (0..8).all(|bits| {
            let v = assignment(&vars, bits);
            eval_bool(&a, &v).unwrap() == eval_bool(&b, &v).unwrap()
        });
        let mut m = Manager::new(Ordering::plain(&vars));
        let (fa, fb) = (m.build(&a).unwrap(), m.build(&b).unwrap());
        prop_assert_eq!(fa == fb, same);
    }

    #[test]
    fn node_count_ignores_neutral_operations(e in expr(4, false)) {
        let mut m = Manager::new(Ordering::plain(&names(4)));
        let f = m.build(&e).unwrap();
        let count = m.node_count(f).unwrap();
        let nn = m.not(f).and_then(|g| m.not(g)).unwrap();
        let t = m.constant(true);
        let z = m.constant(false);
        let and_t = m.and(f, t).unwrap();
        let or_z = m.or(f, z).unwrap();
        prop_assert_eq!(nn, f);
        prop_assert_eq!(and_t, f);
        prop_assert_eq!(and_t, m.and(f, f).unwrap());
        prop_assert_eq!(m.node_count(or_z).unwrap(), count);
    }

    #[test]
    fn universal_is_dual_of_existential(k in kripke(), f in ltl()) {
        let e = mc_exists(&k, &Ltl::not(f.clone())).unwrap();
        let a = mc_all(&k, &f).unwrap();
        prop_assert_eq!(a, !e.holds);
        if let Some(w) = &e.witness {
            prop_assert!(w.is_run_of(&k) && w.starts_initial(&k));
            prop_assert!(!eval_lasso(&f, w, k.vars(), 0).unwrap());
        }
    }

    #[test]
    fn image_matches_explicit_successors(ts in system(3)) {
        let mut m = encode(&ts, Ordering::interleaved(ts.vars())).unwrap();
        for bits in 0..8 {
            let s = m.state(State(bits)).unwrap();
            let img = image(&mut m, s).unwrap();
            let mut want = successors(&ts, State(bits)).unwrap();
            want.sort();
            prop_assert_eq!(m.states_of(img).unwrap(), want);
        }
    }

    #[test]
    fn preimage_is_image_of_the_reversed_relation(ts in system(3), set in expr(3, false)) {
        let mut m = encode(&ts, Ordering::interleaved(ts.vars())).unwrap();
        let mut r = m.reversed().unwrap();
        let s = m.manager_mut().build(&set).unwrap();
        let pre = preimage(&mut m, s).unwrap();
        let s = r.manager_mut().build(&set).unwrap();
        let img = image(&mut r, s).unwrap();
        prop_assert_eq!(m.states_of(pre).unwrap(), r.states_of(img).unwrap());
    }

    #[test]
    fn reachable_matches_breadth_first_search(ts in system(4)) {
        let mut m = encode(&ts, Ordering::interleaved(ts.vars())).unwrap();
        let r = reachable(&mut m).unwrap();
        let k = expand(&ts).unwrap();
        let mut seen: BTreeSet<usize> = k.initials().iter().copied().collect();
        let mut frontier: Vec<usize> = seen.iter().copied().collect();
        while let Some(i) = frontier.pop() {
            for &j in k.successors(i) {
                if seen.insert(j) {
                    frontier.push(j);
                }
            }
        }
        let want: Vec<State> = seen.into_iter().map(|i| k.states()[i]).collect();
        prop_assert_eq!(m.states_of(r).unwrap(), want);
        let img = image(&mut m, r).unwrap();
        let init = m.init();
        prop_assert_eq!(m.manager_mut().or(img, init).unwrap(), r);
    }

    #[test]
    fn fixpoint_path_equals_explicit_path(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = random_instance(&mut rng, 3, 4);
        for inst in [mcs0_fixed(&y), reduce_model_fixed(&y, Mode::Interleaved), reduce_model_fixed(&y, Mode::Sync), reduce_formula_fixed(&y)] {
            let ts = inst.compose().unwrap();
            let mut a = encode(&ts, Ordering::interleaved(ts.vars())).unwrap();
            let mut b = encode(&ts, Ordering::interleaved(ts.vars())).unwrap();
            let fix = legal_initial_states_with(&mut a, &inst.formula, Search::Fixpoint).unwrap();
            let exp = legal_initial_states_with(&mut b, &inst.formula, Search::Explicit).unwrap();
            prop_assert_eq!(a.states_of(fix).unwrap(), b.states_of(exp).unwrap());
        }
    }

    #[test]
    fn found_plans_replay_to_the_goal(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y: StripsInstance = random_instance(&mut rng, 5, 6);
        if let Some(plan) = plan_exists(&y).unwrap() {
            let end = replay(&y, &plan).unwrap();
            prop_assert!(y.is_goal(&end));
        }
    }
}
