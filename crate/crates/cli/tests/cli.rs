use std::io::Write;
use std::process::{Command, Output, Stdio};

use mclab_core::reductions::random_instances;
use mclab_core::strips::{plan_exists, repr_of};
use mclab_core::syntax::print_strips;

const SELF_LOOP: &str = "mode interleaved;\nformula exists G x;\nsystem m {\n  vars x;\n  init x;\n  trans x=1 & x'=1;\n}\n";

const PLAN: &str =
    "plan {\n  vars x1 x2 x3;\n  init x1;\n  goal +x2 -x3;\n  op a: pre +x1 -x2 => post +x2;\n  op b: post -x3;\n}\n";

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mclab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_self_loop_holds() {
    let o = run(&["check", "-"], SELF_LOOP);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("TRUE"));
    assert_eq!(lines.next(), Some("stem: ; cycle: [x=1]"));
}

#[test]
fn check_false_exits_one() {
    let o = run(&["check", "-", "--formula", "F !x"], SELF_LOOP);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "FALSE");
}

#[test]
fn check_json_has_verdict_and_witness() {
    let o = run(&["--format", "json", "check", "-"], SELF_LOOP);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "TRUE");
    assert!(v["witness"]["stem"].is_array());
    assert_eq!(v["witness"]["cycle"].as_array().unwrap().len(), 1);
}

#[test]
fn plan_on_representative_is_empty() {
    let o = run(&["plan", "-"], &print_strips(&repr_of(3)));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "PLAN 0\n");
}

#[test]
fn plan_lists_operator_names() {
    let o = run(&["plan", "-"], PLAN);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "PLAN 1\na\n");
}

#[test]
fn plan_json_fields() {
    let o = run(&["--format", "json", "plan", "-"], PLAN);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "PLAN");
    assert_eq!(v["plan"], serde_json::json!(["a"]));
}

#[test]
fn reduce_then_check_matches_planner() {
    for (i, y) in random_instances(5, 12, 3, 4).iter().enumerate() {
        let text = print_strips(y);
        let expected = plan_exists(y).unwrap().is_some();
        for fixed in ["model", "formula"] {
            let reduced = run(&["reduce", "-", "--fixed", fixed], &text);
            assert_eq!(reduced.status.code(), Some(0), "instance {i}");
            let checked = run(&["check", "-"], &stdout(&reduced));
            let code = if expected { 0 } else { 1 };
            assert_eq!(checked.status.code(), Some(code), "instance {i}, {fixed}-fixed");
        }
    }
}

#[test]
fn negated_reduction_flips_the_verdict() {
    let reduced = run(&["reduce", "-", "--fixed", "model", "--negated"], PLAN);
    let checked = run(&["check", "-"], &stdout(&reduced));
    assert_eq!(checked.status.code(), Some(1));
}

#[test]
fn mcs0_all_agrees() {
    let o = run(&["mcs0", "-", "--all"], PLAN);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    let (verdict, states) = lines.split_last().unwrap();
    assert_eq!(*verdict, "AGREE");
    assert!(!states.is_empty());
    assert!(states.iter().all(|l| l.ends_with("explicit TRUE symbolic TRUE") || l.ends_with("explicit FALSE symbolic FALSE")));
}

#[test]
fn parity_csv() {
    let o = run(&["bdd-growth", "--family", "parity", "--sizes", "1..3"], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "family,n,ordering,peak_nodes,final_nodes,seconds,capped\n\
         parity,1,natural,3,3,,false\n\
         parity,2,natural,5,4,,false\n\
         parity,3,natural,8,5,,false\n"
    );
}

#[test]
fn node_cap_marks_the_row() {
    let o = run(&["bdd-growth", "--family", "parity", "--sizes", "8", "--node-cap", "5"], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().nth(1), Some("parity,8,natural,5,,,true"));
}

#[test]
fn too_many_vars_exits_three() {
    let o = run(&["check", "-", "--max-vars", "0"], SELF_LOOP);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(run(&["check", "/nonexistent/file"], "").status.code(), Some(2));
    assert_eq!(run(&["check", "-"], "system {").status.code(), Some(2));
    assert_eq!(run(&["bdd-growth", "--family", "nope"], "").status.code(), Some(2));
}
