//! Text formats for transition systems, LTL formulas and STRIPS instances.
//!
//! Systems:
//! ```text
//! mode sync;                       # optional
//! formula exists F x_g;            # optional
//! system m { vars x1 x2; local x1; init x1 & !x2; trans x1 -> x1'; }
//! ```
//! Plans:
//! ```text
//! plan { vars x1 x2 x3; init x1; goal +x2 -x3; op a: pre +x1 -x2 => post +x2; }
//! ```
//! `#` starts a comment that runs to the end of the line.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::ParseError;
use crate::expr::{BoolExpr, VarRef};
use crate::ltl::Ltl;
use crate::reductions::{Mode, Quantifier};
use crate::strips::{Operator, StripsInstance};
use crate::system::TransitionSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Primed(String),
    Bit(bool),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 14] = ["<->", "->", "=>", "!", "&", "|", "=", "(", ")", "{", "}", ";", ":", "+"];

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, col: &mut usize, k: usize| {
        *i += k;
        *col += k;
    };
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(&mut i, &mut col, 1);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (l, c0) = (line, col);
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                advance(&mut i, &mut col, 1);
            }
            let name: String = chars[start..i].iter().collect();
            if i < chars.len() && chars[i] == '\'' {
                advance(&mut i, &mut col, 1);
                if i < chars.len() && chars[i] == '\'' {
                    return Err(ParseError::new(line, col, "a variable can carry only one prime"));
                }
                out.push(Token { tok: Tok::Primed(name), line: l, col: c0 });
            } else {
                out.push(Token { tok: Tok::Ident(name), line: l, col: c0 });
            }
            continue;
        }
        if c == '0' || c == '1' {
            if chars.get(i + 1).is_some_and(|d| d.is_ascii_alphanumeric()) {
                return Err(ParseError::new(l, c0, "constants are `0` and `1`"));
            }
            advance(&mut i, &mut col, 1);
            out.push(Token { tok: Tok::Bit(c == '1'), line: l, col: c0 });
            continue;
        }
        if c == '\'' {
            return Err(ParseError::new(l, c0, "prime must follow a variable name"));
        }
        // `-` alone is a negative literal marker in plans
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        if let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            advance(&mut i, &mut col, sym.len());
            out.push(Token { tok: Tok::Sym(sym), line: l, col: c0 });
        } else if c == '-' {
            advance(&mut i, &mut col, 1);
            out.push(Token { tok: Tok::Sym("-"), line: l, col: c0 });
        } else {
            return Err(ParseError::new(l, c0, format!("unexpected character `{c}`")));
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Primed(s) => format!("`{s}'`"),
        Tok::Bit(b) => format!("`{}`", u8::from(*b)),
        Tok::Sym(s) => format!("`{s}`"),
        Tok::Eof => "end of input".into(),
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

const LTL_KEYWORDS: [&str; 6] = ["X", "F", "G", "U", "true", "false"];

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        let (l, c) = self.here();
        ParseError::new(l, c, msg)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error(format!("expected {wanted}, found {}", describe(self.peek())))
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(s) if *s == sym) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<(), ParseError> {
        if self.eat(sym) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{sym}`")))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.is_keyword(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn end(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    // ---- propositional expressions ----

    fn bool_expr(&mut self) -> Result<BoolExpr, ParseError> {
        let mut e = self.bool_implies()?;
        while self.eat("<->") {
            e = BoolExpr::iff(e, self.bool_implies()?);
        }
        Ok(e)
    }

    fn bool_implies(&mut self) -> Result<BoolExpr, ParseError> {
        let e = self.bool_or()?;
        if self.eat("->") {
            return Ok(BoolExpr::implies(e, self.bool_implies()?));
        }
        Ok(e)
    }

    fn bool_or(&mut self) -> Result<BoolExpr, ParseError> {
        let mut e = self.bool_and()?;
        while self.eat("|") {
            e = BoolExpr::or(e, self.bool_and()?);
        }
        Ok(e)
    }

    fn bool_and(&mut self) -> Result<BoolExpr, ParseError> {
        let mut e = self.bool_unary()?;
        while self.eat("&") {
            e = BoolExpr::and(e, self.bool_unary()?);
        }
        Ok(e)
    }

    fn bool_unary(&mut self) -> Result<BoolExpr, ParseError> {
        if self.eat("!") {
            return Ok(BoolExpr::not(self.bool_unary()?));
        }
        let a = self.bool_atom()?;
        if self.eat("=") {
            return Ok(BoolExpr::eq(a, self.bool_atom()?));
        }
        Ok(a)
    }

    fn bool_atom(&mut self) -> Result<BoolExpr, ParseError> {
        match self.peek().clone() {
            Tok::Bit(b) => {
                self.bump();
                Ok(BoolExpr::Const(b))
            }
            Tok::Ident(s) if s == "true" || s == "false" => {
                self.bump();
                Ok(BoolExpr::Const(s == "true"))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(BoolExpr::Var(VarRef::current(s)))
            }
            Tok::Primed(s) => {
                self.bump();
                Ok(BoolExpr::Var(VarRef::next(s)))
            }
            Tok::Sym("(") => {
                self.bump();
                let e = self.bool_expr()?;
                self.expect(")")?;
                Ok(e)
            }
            _ => Err(self.unexpected("an expression")),
        }
    }

    // ---- LTL ----

    fn ltl(&mut self) -> Result<Ltl, ParseError> {
        let mut e = self.ltl_implies()?;
        while self.eat("<->") {
            e = Ltl::iff(e, self.ltl_implies()?);
        }
        Ok(e)
    }

    fn ltl_implies(&mut self) -> Result<Ltl, ParseError> {
        let e = self.ltl_or()?;
        if self.eat("->") {
            return Ok(Ltl::implies(e, self.ltl_implies()?));
        }
        Ok(e)
    }

    fn ltl_or(&mut self) -> Result<Ltl, ParseError> {
        let mut e = self.ltl_and()?;
        while self.eat("|") {
            e = Ltl::or(e, self.ltl_and()?);
        }
        Ok(e)
    }

    fn ltl_and(&mut self) -> Result<Ltl, ParseError> {
        let mut e = self.ltl_until()?;
        while self.eat("&") {
            e = Ltl::and(e, self.ltl_until()?);
        }
        Ok(e)
    }

    fn ltl_until(&mut self) -> Result<Ltl, ParseError> {
        let mut e = self.ltl_unary()?;
        while self.eat_keyword("U") {
            e = Ltl::until(e, self.ltl_unary()?);
        }
        Ok(e)
    }

    fn ltl_unary(&mut self) -> Result<Ltl, ParseError> {
        if self.eat("!") {
            return Ok(Ltl::not(self.ltl_unary()?));
        }
        for (kw, op) in [("X", Ltl::next as fn(Ltl) -> Ltl), ("F", Ltl::finally), ("G", Ltl::globally)] {
            if self.eat_keyword(kw) {
                return Ok(op(self.ltl_unary()?));
            }
        }
        match self.peek().clone() {
            Tok::Ident(s) if s == "true" || s == "false" => {
                self.bump();
                Ok(if s == "true" { Ltl::True } else { Ltl::False })
            }
            Tok::Ident(s) if !LTL_KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(Ltl::Atom(s))
            }
            Tok::Sym("(") => {
                self.bump();
                let e = self.ltl()?;
                self.expect(")")?;
                Ok(e)
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    // ---- system files ----

    fn names_until_semi(&mut self, what: &str) -> Result<Vec<(String, (usize, usize))>, ParseError> {
        let mut out = Vec::new();
        while !self.eat(";") {
            let at = self.here();
            out.push((self.ident(what)?, at));
        }
        Ok(out)
    }

    fn system(&mut self) -> Result<TransitionSystem, ParseError> {
        let at = self.here();
        let name = self.ident("a system name")?;
        self.expect("{")?;
        let mut vars: Option<Vec<(String, (usize, usize))>> = None;
        let mut locals = None;
        let mut init = None;
        let mut trans = None;
        while !self.eat("}") {
            let kw_at = self.here();
            let kw = self.ident("`vars`, `local`, `init`, `trans` or `}`")?;
            let dup = |set: bool| {
                if set {
                    Err(ParseError::new(kw_at.0, kw_at.1, format!("`{kw}` given twice")))
                } else {
                    Ok(())
                }
            };
            match kw.as_str() {
                "vars" => {
                    dup(vars.is_some())?;
                    vars = Some(self.names_until_semi("a variable name")?);
                }
                "local" => {
                    dup(locals.is_some())?;
                    locals = Some(self.names_until_semi("a variable name")?);
                }
                "init" => {
                    dup(init.is_some())?;
                    init = Some(self.bool_expr()?);
                    self.expect(";")?;
                }
                "trans" => {
                    dup(trans.is_some())?;
                    trans = Some(self.bool_expr()?);
                    self.expect(";")?;
                }
                _ => {
                    return Err(ParseError::new(kw_at.0, kw_at.1, format!("unknown section `{kw}`")));
                }
            }
        }
        let vars = vars.unwrap_or_default();
        let mut seen = BTreeSet::new();
        for (v, (l, c)) in &vars {
            if !seen.insert(v.clone()) {
                return Err(ParseError::new(*l, *c, format!("variable `{v}` declared twice")));
            }
        }
        let ts = TransitionSystem::new(
            name,
            vars.into_iter().map(|v| v.0).collect(),
            init.unwrap_or(BoolExpr::Const(true)),
            trans.unwrap_or(BoolExpr::Const(true)),
        )
        .map_err(|e| ParseError::new(at.0, at.1, e.to_string()))?;
        match locals {
            None => Ok(ts),
            Some(ls) => ts
                .with_locals(ls.into_iter().map(|l| l.0))
                .map_err(|e| ParseError::new(at.0, at.1, e.to_string())),
        }
    }

    fn system_file(&mut self) -> Result<SystemFile, ParseError> {
        let mut file = SystemFile::default();
        loop {
            let at = self.here();
            if *self.peek() == Tok::Eof {
                return Ok(file);
            }
            let kw = self.ident("`system`, `mode` or `formula`")?;
            match kw.as_str() {
                "system" => file.systems.push(self.system()?),
                "mode" => {
                    if file.mode.is_some() {
                        return Err(ParseError::new(at.0, at.1, "`mode` given twice"));
                    }
                    let m = self.ident("`sync` or `interleaved`")?;
                    file.mode = Some(match m.as_str() {
                        "sync" => Mode::Sync,
                        "interleaved" => Mode::Interleaved,
                        _ => return Err(ParseError::new(at.0, at.1, format!("unknown mode `{m}`"))),
                    });
                    self.expect(";")?;
                }
                "formula" => {
                    if file.formula.is_some() {
                        return Err(ParseError::new(at.0, at.1, "`formula` given twice"));
                    }
                    let q = self.ident("`exists` or `all`")?;
                    let q = match q.as_str() {
                        "exists" => Quantifier::Exists,
                        "all" => Quantifier::All,
                        _ => return Err(ParseError::new(at.0, at.1, format!("unknown quantifier `{q}`"))),
                    };
                    let f = self.ltl()?;
                    self.expect(";")?;
                    file.formula = Some((q, f));
                }
                _ => return Err(ParseError::new(at.0, at.1, format!("unknown item `{kw}`"))),
            }
        }
    }

    // ---- plans ----

    fn literals_until(&mut self, stop: &str) -> Result<Vec<(String, bool, (usize, usize))>, ParseError> {
        let mut out = Vec::new();
        while !self.eat(stop) {
            let at = self.here();
            let sign = if self.eat("+") {
                true
            } else if self.eat("-") {
                false
            } else {
                return Err(self.unexpected(&format!("`+`, `-` or `{stop}`")));
            };
            out.push((self.ident("a variable name")?, sign, at));
        }
        Ok(out)
    }

    fn plan(&mut self) -> Result<StripsInstance, ParseError> {
        if !self.eat_keyword("plan") {
            return Err(self.unexpected("`plan`"));
        }
        self.expect("{")?;
        let mut vars: Vec<(String, (usize, usize))> = Vec::new();
        let mut init = Vec::new();
        let mut goal = Vec::new();
        let mut ops: Vec<(Operator, (usize, usize))> = Vec::new();
        while !self.eat("}") {
            let kw_at = self.here();
            let kw = self.ident("`vars`, `init`, `goal`, `op` or `}`")?;
            match kw.as_str() {
                "vars" => vars.extend(self.names_until_semi("a variable name")?),
                "init" => init.extend(self.names_until_semi("a variable name")?),
                "goal" => goal.extend(self.literals_until(";")?),
                "op" => {
                    let name = self.ident("an operator name")?;
                    self.expect(":")?;
                    let pre = if self.eat_keyword("pre") { self.literals_until("=>")? } else { Vec::new() };
                    if !self.eat_keyword("post") {
                        return Err(self.unexpected("`post`"));
                    }
                    let post = self.literals_until(";")?;
                    if post.len() != 1 {
                        return Err(ParseError::new(kw_at.0, kw_at.1, "`post` takes exactly one literal"));
                    }
                    let (v, b, _) = post.into_iter().next().expect("one literal");
                    let mut op = Operator::new::<String>(name, [], [], (v, b));
                    for (v, sign, _) in pre {
                        if sign { op.pos_pre.insert(v) } else { op.neg_pre.insert(v) };
                    }
                    ops.push((op, kw_at));
                }
                _ => return Err(ParseError::new(kw_at.0, kw_at.1, format!("unknown section `{kw}`"))),
            }
        }
        self.end()?;
        let mut seen = BTreeSet::new();
        for (v, (l, c)) in &vars {
            if !seen.insert(v.clone()) {
                return Err(ParseError::new(*l, *c, format!("variable `{v}` declared twice")));
            }
        }
        let known = |v: &str, (l, c): (usize, usize)| {
            if seen.contains(v) {
                Ok(())
            } else {
                Err(ParseError::new(l, c, format!("undeclared variable `{v}`")))
            }
        };
        for (v, at) in &init {
            known(v, *at)?;
        }
        for (v, _, at) in &goal {
            known(v, *at)?;
        }
        for (op, at) in &ops {
            for v in op.condition_vars() {
                known(v, *at)?;
            }
        }
        let goal_pos = goal.iter().filter(|g| g.1).map(|g| g.0.clone()).collect();
        let goal_neg = goal.iter().filter(|g| !g.1).map(|g| g.0.clone()).collect();
        StripsInstance::new(
            vars.into_iter().map(|v| v.0).collect(),
            ops.into_iter().map(|o| o.0).collect(),
            init.into_iter().map(|v| v.0).collect(),
            goal_pos,
            goal_neg,
        )
        .map_err(|e| ParseError::new(1, 1, e.to_string()))
    }
}

/// Systems plus the optional composition mode and query of a system file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SystemFile {
    pub systems: Vec<TransitionSystem>,
    pub mode: Option<Mode>,
    pub formula: Option<(Quantifier, Ltl)>,
}

pub fn parse_bool(text: &str) -> Result<BoolExpr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.bool_expr()?;
    p.end()?;
    Ok(e)
}

pub fn parse_ltl(text: &str) -> Result<Ltl, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.ltl()?;
    p.end()?;
    Ok(e)
}

/// Parses a system file, keeping any `mode` and `formula` directives.
pub fn parse_system_file(text: &str) -> Result<SystemFile, ParseError> {
    Parser::new(text)?.system_file()
}

/// Parses only the systems of a file.
pub fn parse_system(text: &str) -> Result<Vec<TransitionSystem>, ParseError> {
    Ok(parse_system_file(text)?.systems)
}

pub fn parse_strips(text: &str) -> Result<StripsInstance, ParseError> {
    Parser::new(text)?.plan()
}

pub fn print_system(ts: &TransitionSystem) -> String {
    let mut s = format!("system {} {{\n  vars", ts.name());
    for v in ts.vars() {
        let _ = write!(s, " {v}");
    }
    s.push_str(";\n");
    if let Some(locals) = ts.declared_locals() {
        s.push_str("  local");
        // keep declaration order for readability
        for v in ts.vars().iter().filter(|v| locals.contains(*v)) {
            let _ = write!(s, " {v}");
        }
        s.push_str(";\n");
    }
    let _ = writeln!(s, "  init {};", ts.init());
    let _ = writeln!(s, "  trans {};", ts.trans());
    s.push_str("}\n");
    s
}

pub fn print_system_file(file: &SystemFile) -> String {
    let mut s = String::new();
    if let Some(m) = file.mode {
        let _ = writeln!(s, "mode {m};");
    }
    if let Some((q, f)) = &file.formula {
        let _ = writeln!(s, "formula {q} {f};");
    }
    for ts in &file.systems {
        s.push_str(&print_system(ts));
    }
    s
}

fn literals(pos: &BTreeSet<String>, neg: &BTreeSet<String>, order: &[String]) -> String {
    let mut out = String::new();
    for v in order {
        if pos.contains(v) {
            let _ = write!(out, " +{v}");
        } else if neg.contains(v) {
            let _ = write!(out, " -{v}");
        }
    }
    out
}

pub fn print_strips(y: &StripsInstance) -> String {
    let mut s = String::from("plan {\n  vars");
    for v in &y.vars {
        let _ = write!(s, " {v}");
    }
    s.push_str(";\n  init");
    for v in y.vars.iter().filter(|v| y.init.contains(*v)) {
        let _ = write!(s, " {v}");
    }
    let _ = writeln!(s, ";\n  goal{};", literals(&y.goal_pos, &y.goal_neg, &y.vars));
    for op in &y.ops {
        let _ = write!(s, "  op {}:", op.name);
        if !op.pos_pre.is_empty() || !op.neg_pre.is_empty() {
            let _ = write!(s, " pre{} =>", literals(&op.pos_pre, &op.neg_pre, &y.vars));
        }
        if let Some((v, b)) = &op.post {
            let _ = write!(s, " post {}{v}", if *b { '+' } else { '-' });
        }
        s.push_str(";\n");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bool_precedence() {
        let e = parse_bool("a | b & !c -> d -> e <-> f").unwrap();
        let expect = BoolExpr::iff(
            BoolExpr::implies(
                BoolExpr::or(
                    BoolExpr::var("a"),
                    BoolExpr::and(BoolExpr::var("b"), BoolExpr::not(BoolExpr::var("c"))),
                ),
                BoolExpr::implies(BoolExpr::var("d"), BoolExpr::var("e")),
            ),
            BoolExpr::var("f"),
        );
        assert_eq!(e, expect);
        assert_eq!(parse_bool(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn equality_and_primes() {
        let e = parse_bool("x=0 & x'=1").unwrap();
        assert_eq!(
            e,
            BoolExpr::and(
                BoolExpr::eq(BoolExpr::var("x"), BoolExpr::Const(false)),
                BoolExpr::eq(BoolExpr::primed("x"), BoolExpr::Const(true)),
            )
        );
        assert_eq!(e.to_string(), "x=0 & x'=1");
    }

    #[test]
    fn double_prime_is_rejected_at_its_position() {
        let err = parse_bool("a & x''").unwrap_err();
        assert_eq!((err.line, err.col), (1, 7));
    }

    #[test]
    fn ltl_examples() {
        assert_eq!(parse_ltl("F(x_g)").unwrap(), Ltl::finally(Ltl::atom("x_g")));
        assert_eq!(
            parse_ltl("!x U y").unwrap(),
            Ltl::until(Ltl::not(Ltl::atom("x")), Ltl::atom("y"))
        );
        assert_eq!(
            parse_ltl("a U b U c").unwrap(),
            Ltl::until(Ltl::until(Ltl::atom("a"), Ltl::atom("b")), Ltl::atom("c"))
        );
        assert_eq!(
            parse_ltl("G(x <-> X x) & true").unwrap(),
            Ltl::and(
                Ltl::globally(Ltl::iff(Ltl::atom("x"), Ltl::next(Ltl::atom("x")))),
                Ltl::True
            )
        );
        assert!(parse_ltl("F").is_err());
        assert!(parse_ltl("x y").is_err());
    }

    #[test]
    fn system_round_trip() {
        let text = "mode interleaved;\nformula exists F x;\nsystem m {\n  vars x y;\n  local x;\n  init x | !x;\n  trans x=0 & x'=1 | x=1 & x'=1;\n}\n";
        let file = parse_system_file(text).unwrap();
        assert_eq!(file.mode, Some(Mode::Interleaved));
        assert_eq!(print_system_file(&file), text);
        assert_eq!(file.systems[0].declared_locals().unwrap().len(), 1);
    }

    #[test]
    fn system_errors() {
        let err = parse_system("system m { vars x x; }").unwrap_err();
        assert_eq!((err.line, err.col), (1, 19));
        assert!(parse_system("system m { vars x; init x'; }").is_err());
        assert!(parse_system("system m { vars x; trans y; }").is_err());
        let err = parse_system("system m {\n vars x;\n trans x -> ;\n}").unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn plan_round_trip() {
        let text = "plan {\n  vars x1 x2 x3;\n  init x1;\n  goal +x2 -x3;\n  op a: pre +x1 -x2 => post +x2;\n  op b: post -x3;\n}\n";
        let y = parse_strips(text).unwrap();
        assert_eq!(y.ops.len(), 2);
        assert_eq!(y.ops[0].neg_pre, BTreeSet::from(["x2".to_string()]));
        assert_eq!(print_strips(&y), text);
        assert!(parse_strips("plan { vars x; op a: post +x -x; }").is_err());
        assert!(parse_strips("plan { vars x; goal +y; }").is_err());
    }
}
