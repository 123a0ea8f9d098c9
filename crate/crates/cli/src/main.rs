use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mclab_core::bdd::DEFAULT_NODE_CAP;
use mclab_core::reductions::{
    self, all_subsets, build_mcs0, decide, decide_mcs0, encode_start, grid_instances, mcs0_fixed, random_instances,
    reduce_formula_fixed_with, reduce_model_fixed_with, repr_sweep, Encoding, Reduction,
};
use mclab_core::strips::{plan_exists_bounded, DEFAULT_PLAN_BOUND};
use mclab_core::symbolic::{self, legal_initial_states, Family, GrowthConfig};
use mclab_core::syntax::{parse_ltl, parse_strips, parse_system_file, print_strips, print_system, print_system_file};
use mclab_core::{
    compose_interleaved, compose_sync, Error, Lasso, McInstance, Mode, Ordering, Quantifier, State,
    StripsInstance, DEFAULT_EXPAND_BOUND,
};

const EXIT_FALSE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;

#[derive(Parser)]
#[command(name = "mclab", version, about = "Transition systems, LTL checking and planning reductions")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Sync,
    Interleaved,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Sync => Mode::Sync,
            ModeArg::Interleaved => Mode::Interleaved,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantifierArg {
    Exists,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fixed {
    Model,
    Formula,
}

#[derive(Clone, Copy, ValueEnum)]
enum EncodingArg {
    Repaired,
    Literal,
}

#[derive(Subcommand)]
enum Command {
    /// Compose the systems of a file and print the result.
    Compose {
        /// System file, or `-` for standard input.
        file: PathBuf,
        /// Overrides the file's `mode` directive.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Decide an existential or universal LTL query over composed systems.
    Check {
        file: PathBuf,
        /// Overrides the file's formula.
        #[arg(long)]
        formula: Option<String>,
        #[arg(long, value_enum)]
        quantifier: Option<QuantifierArg>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Largest number of variables expanded explicitly.
        #[arg(long, default_value_t = DEFAULT_EXPAND_BOUND)]
        max_vars: usize,
    },
    /// Search for a plan by breadth-first search.
    Plan {
        /// Planning file, or `-` for standard input.
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PLAN_BOUND)]
        max_vars: usize,
    },
    /// Translate a planning instance into a model-checking query.
    Reduce {
        file: PathBuf,
        /// Which part of the query depends only on the number of variables.
        #[arg(long, value_enum)]
        fixed: Fixed,
        /// Composition mode of the model-fixed reduction.
        #[arg(long, value_enum, default_value_t = ModeArg::Interleaved)]
        mode: ModeArg,
        /// Goal latch encoding of the formula-fixed reduction.
        #[arg(long, value_enum, default_value_t = EncodingArg::Repaired)]
        encoding: EncodingArg,
        /// Emit the negated formula with a universal quantifier.
        #[arg(long)]
        negated: bool,
    },
    /// Sweep instances through the representative-equivalence check.
    ReprEquiv {
        #[arg(long, value_enum, default_value_t = Fixed::Model)]
        fixed: Fixed,
        #[arg(long, value_enum, default_value_t = ModeArg::Interleaved)]
        mode: ModeArg,
        /// Exhaustive grid up to this many variables.
        #[arg(long, default_value_t = 2)]
        max_vars: usize,
        /// Exhaustive grid up to this many operators.
        #[arg(long, default_value_t = 2)]
        max_ops: usize,
        /// Additional random instances with up to 6 variables and operators.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decide whether a run from a start state reaches the goal.
    Mcs0 {
        file: PathBuf,
        /// Comma-separated true variables of the start state; defaults to
        /// the instance's initial state.
        #[arg(long, conflicts_with = "all")]
        start: Option<String>,
        /// Compare explicit and symbolic decisions on every start state.
        #[arg(long)]
        all: bool,
    },
    /// Record BDD node counts over a family of functions.
    BddGrowth {
        /// plansat-mcs0, mult-middle-bit or parity.
        #[arg(long)]
        family: String,
        /// `lo..hi` (inclusive), a comma list, or a single size.
        #[arg(long, default_value = "4..12")]
        sizes: String,
        /// `natural`, `reverse`, a comma list of those, or an explicit
        /// variable order; may be repeated.
        #[arg(long, default_values_t = vec!["natural".to_string()])]
        ordering: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        node_cap: usize,
        /// CSV destination; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed of the plansat-mcs0 generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fill in the `seconds` column.
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Run(Error),
}

impl<E: Into<Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Run(e.into())
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_capacity() { EXIT_CAPACITY } else { EXIT_USAGE })
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Compose { file, mode } => compose(&read(file)?, *mode, json),
        Command::Check { file, formula, quantifier, mode, max_vars } => {
            check(&read(file)?, formula.as_deref(), *quantifier, *mode, *max_vars, json)
        }
        Command::Plan { file, max_vars } => plan(&read(file)?, *max_vars, json),
        Command::Reduce { file, fixed, mode, encoding, negated } => {
            reduce(&read(file)?, *fixed, *mode, *encoding, *negated, json)
        }
        Command::ReprEquiv { fixed, mode, max_vars, max_ops, random, seed } => {
            repr_equiv(*fixed, *mode, *max_vars, *max_ops, *random, *seed, json)
        }
        Command::Mcs0 { file, start, all } => mcs0(&read(file)?, start.as_deref(), *all, json),
        Command::BddGrowth { family, sizes, ordering, node_cap, out, seed, timing } => {
            bdd_growth(family, sizes, ordering, *node_cap, out.as_deref(), *seed, *timing, json)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let r = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    r.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn emit(json: bool, value: &impl Serialize, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable output"));
    } else {
        print!("{}", text());
    }
}

fn verdict_word(holds: bool) -> &'static str {
    if holds {
        "TRUE"
    } else {
        "FALSE"
    }
}

fn status(ok: bool) -> u8 {
    if ok {
        0
    } else {
        EXIT_FALSE
    }
}

fn compose(text: &str, mode: Option<ModeArg>, json: bool) -> Outcome {
    let file = parse_system_file(text)?;
    if file.systems.is_empty() {
        return Err(Failure::Usage("no systems to compose".into()));
    }
    let mode = mode.map(Mode::from).or(file.mode).unwrap_or(Mode::Sync);
    let ts = match mode {
        Mode::Sync => compose_sync(&file.systems)?,
        Mode::Interleaved => compose_interleaved(&file.systems)?,
    };
    let printed = print_system(&ts);
    #[derive(Serialize)]
    struct Out<'a> {
        mode: String,
        system: &'a str,
    }
    emit(json, &Out { mode: mode.to_string(), system: &printed }, || printed.clone());
    Ok(0)
}

#[derive(Serialize)]
struct WitnessJson {
    stem: Vec<String>,
    cycle: Vec<String>,
}

fn witness_json(w: &Lasso, vars: &[String]) -> WitnessJson {
    let show = |s: &State| s.display(vars).to_string();
    WitnessJson { stem: w.stem.iter().map(show).collect(), cycle: w.cycle.iter().map(show).collect() }
}

fn check(
    text: &str,
    formula: Option<&str>,
    quantifier: Option<QuantifierArg>,
    mode: Option<ModeArg>,
    max_vars: usize,
    json: bool,
) -> Outcome {
    let mut file = parse_system_file(text)?;
    if let Some(f) = formula {
        let q = file.formula.as_ref().map(|(q, _)| *q).unwrap_or(Quantifier::Exists);
        file.formula = Some((q, parse_ltl(f)?));
    }
    if let Some(q) = quantifier {
        let Some((_, f)) = file.formula.take() else {
            return Err(Failure::Usage("no formula given".into()));
        };
        let q = match q {
            QuantifierArg::Exists => Quantifier::Exists,
            QuantifierArg::All => Quantifier::All,
        };
        file.formula = Some((q, f));
    }
    if let Some(m) = mode {
        file.mode = Some(m.into());
    }
    let m = McInstance::from_file(file).ok_or_else(|| Failure::Usage("no formula given".into()))?;
    let composed = m.compose()?;
    if composed.vars().len() > max_vars {
        return Err(Error::Core(mclab_core::CoreError::Capacity { vars: composed.vars().len(), bound: max_vars }).into());
    }
    let d = decide(&m)?;
    let witness = d.witness.as_ref().map(|w| witness_json(w, &d.vars));
    #[derive(Serialize)]
    struct Out {
        verdict: &'static str,
        quantifier: String,
        witness: Option<WitnessJson>,
    }
    let out = Out { verdict: verdict_word(d.holds), quantifier: m.quantifier.to_string(), witness };
    emit(json, &out, || {
        let mut s = format!("{}\n", out.verdict);
        if let Some(w) = &d.witness {
            s.push_str(&format!("{}\n", w.display(&d.vars)));
        }
        s
    });
    Ok(status(d.holds))
}

fn plan(text: &str, max_vars: usize, json: bool) -> Outcome {
    let y = parse_strips(text)?;
    let found = plan_exists_bounded(&y, max_vars)?;
    let names: Option<Vec<String>> = found.map(|p| p.into_iter().map(|i| y.ops[i].name.clone()).collect());
    #[derive(Serialize)]
    struct Out<'a> {
        verdict: &'static str,
        plan: Option<&'a [String]>,
    }
    let verdict = if names.is_some() { "PLAN" } else { "UNSOLVABLE" };
    emit(json, &Out { verdict, plan: names.as_deref() }, || match &names {
        Some(p) => {
            let mut s = format!("PLAN {}\n", p.len());
            for n in p {
                s.push_str(&format!("{n}\n"));
            }
            s
        }
        None => "UNSOLVABLE\n".to_string(),
    });
    Ok(status(names.is_some()))
}

fn reduce(text: &str, fixed: Fixed, mode: ModeArg, encoding: EncodingArg, negated: bool, json: bool) -> Outcome {
    let y = parse_strips(text)?;
    let m = match fixed {
        Fixed::Model => reduce_model_fixed_with(&y, mode.into(), negated),
        Fixed::Formula => {
            let e = match encoding {
                EncodingArg::Repaired => Encoding::Repaired,
                EncodingArg::Literal => Encoding::Literal,
            };
            reduce_formula_fixed_with(&y, e, negated)
        }
    };
    let printed = print_system_file(&m.to_file());
    #[derive(Serialize)]
    struct Out<'a> {
        instance: &'a str,
    }
    emit(json, &Out { instance: &printed }, || printed.clone());
    Ok(0)
}

#[derive(Serialize)]
struct SweepRow {
    n: usize,
    instances: usize,
    agree: usize,
    disagree: usize,
}

#[derive(Serialize)]
struct Violation {
    instance: String,
    original: bool,
    representative: bool,
}

fn repr_equiv(fixed: Fixed, mode: ModeArg, max_vars: usize, max_ops: usize, random: usize, seed: u64, json: bool) -> Outcome {
    let reduction = match fixed {
        Fixed::Model => Reduction::ModelFixed(mode.into()),
        Fixed::Formula => Reduction::FormulaFixed,
    };
    let mut instances: Vec<StripsInstance> = Vec::new();
    for n in 1..=max_vars {
        let vars: Vec<String> = (1..=n).map(mclab_core::strips::canonical_var).collect();
        instances.extend(grid_instances(n, max_ops, all_subsets(&vars)));
    }
    instances.extend(random_instances(seed, random, 6, 6));
    let outcomes = repr_sweep(&instances, reduction)?;
    let mut rows: Vec<SweepRow> = Vec::new();
    let mut violations = Vec::new();
    for (y, o) in instances.iter().zip(&outcomes) {
        let n = y.vars.len();
        let row = match rows.iter_mut().find(|r| r.n == n) {
            Some(r) => r,
            None => {
                rows.push(SweepRow { n, instances: 0, agree: 0, disagree: 0 });
                rows.last_mut().expect("just pushed")
            }
        };
        row.instances += 1;
        if o.agrees() {
            row.agree += 1;
        } else {
            row.disagree += 1;
            violations.push(Violation { instance: print_strips(y), original: o.original, representative: o.representative });
        }
    }
    rows.sort_by_key(|r| r.n);
    let ok = violations.is_empty();
    #[derive(Serialize)]
    struct Out<'a> {
        verdict: &'static str,
        reduction: String,
        rows: &'a [SweepRow],
        violations: &'a [Violation],
    }
    let out = Out { verdict: if ok { "AGREE" } else { "DISAGREE" }, reduction: reduction.to_string(), rows: &rows, violations: &violations };
    emit(json, &out, || {
        let mut s = format!("reduction {}\n{:>3} {:>10} {:>8} {:>9}\n", out.reduction, "n", "instances", "agree", "disagree");
        for r in &rows {
            s.push_str(&format!("{:>3} {:>10} {:>8} {:>9}\n", r.n, r.instances, r.agree, r.disagree));
        }
        for v in &violations {
            s.push_str(&format!(
                "violation: original {} representative {}\n{}",
                verdict_word(v.original),
                verdict_word(v.representative),
                v.instance
            ));
        }
        s.push_str(&format!("{}\n", out.verdict));
        s
    });
    Ok(status(ok))
}

fn mcs0(text: &str, start: Option<&str>, all: bool, json: bool) -> Outcome {
    let y = parse_strips(text)?;
    if !all {
        let true_vars: BTreeSet<String> = match start {
            Some(s) => s.split(',').map(str::trim).filter(|v| !v.is_empty()).map(String::from).collect(),
            None => y.init.clone(),
        };
        let s0 = encode_start(&y, &true_vars)?;
        let holds = decide_mcs0(&build_mcs0(&y, s0))?;
        #[derive(Serialize)]
        struct Out {
            verdict: &'static str,
        }
        let out = Out { verdict: verdict_word(holds) };
        emit(json, &out, || format!("{}\n", out.verdict));
        return Ok(status(holds));
    }
    let inst = mcs0_fixed(&y);
    let ts = inst.compose()?;
    if ts.vars().len() > DEFAULT_EXPAND_BOUND {
        return Err(Error::Core(mclab_core::CoreError::Capacity { vars: ts.vars().len(), bound: DEFAULT_EXPAND_BOUND }).into());
    }
    let mut model = symbolic::encode(&ts, Ordering::interleaved(ts.vars()))?;
    let legal = legal_initial_states(&mut model, &inst.formula)?;
    #[derive(Serialize)]
    struct Row {
        state: String,
        explicit: bool,
        symbolic: bool,
    }
    let mut rows = Vec::new();
    for bits in 0..1u64 << ts.vars().len() {
        let s0 = State(bits);
        let explicit = decide_mcs0(&reductions::McS0Instance { fixed: inst.clone(), s0 })?;
        let symbolic = model.contains(legal, s0)?;
        rows.push(Row { state: s0.display(ts.vars()).to_string(), explicit, symbolic });
    }
    let ok = rows.iter().all(|r| r.explicit == r.symbolic);
    #[derive(Serialize)]
    struct Out<'a> {
        verdict: &'static str,
        rows: &'a [Row],
    }
    let out = Out { verdict: if ok { "AGREE" } else { "DISAGREE" }, rows: &rows };
    emit(json, &out, || {
        let mut s = String::new();
        for r in &rows {
            s.push_str(&format!("[{}] explicit {} symbolic {}\n", r.state, verdict_word(r.explicit), verdict_word(r.symbolic)));
        }
        s.push_str(&format!("{}\n", out.verdict));
        s
    });
    Ok(status(ok))
}

fn parse_sizes(text: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Usage(format!("bad size range `{text}`"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    if let Some((lo, hi)) = text.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',').map(num).collect()
}

/// Splits `natural,reverse` into two orderings; any other comma list is one
/// explicit variable order.
fn parse_orderings(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    for a in args {
        let items: Vec<&str> = a.split(',').map(str::trim).collect();
        if items.iter().all(|i| matches!(*i, "natural" | "reverse")) {
            out.extend(items.into_iter().map(String::from));
        } else {
            out.push(a.clone());
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn bdd_growth(
    family: &str,
    sizes: &str,
    ordering: &[String],
    node_cap: usize,
    out: Option<&Path>,
    seed: u64,
    timing: bool,
    json: bool,
) -> Outcome {
    let family: Family = family.parse()?;
    let sizes = parse_sizes(sizes)?;
    let orderings = parse_orderings(ordering);
    let report = symbolic::growth_experiment(family, sizes, &orderings, GrowthConfig { node_cap, seed })?;
    let csv = report.to_csv(timing);
    if let Some(path) = out {
        fs::write(path, &csv).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    #[derive(Serialize)]
    struct Out<'a> {
        note: &'static str,
        rows: &'a [symbolic::GrowthRow],
    }
    let note = "observational: measured node counts, not a test of an asymptotic bound";
    emit(json, &Out { note, rows: &report.rows }, || match out {
        Some(path) => format!("# {note}\nwrote {} rows to {}\n", report.rows.len(), path.display()),
        None => csv.clone(),
    });
    Ok(0)
}
