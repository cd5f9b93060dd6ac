//! Text syntax for formulas.
//!
//! ```text
//! top     := ['free' var* '.'] formula
//! formula := ('ex' | 'all') var '.' formula | iff
//! iff     := imp ['<->' imp]
//! imp     := or ['->' imp]
//! or      := and ('or' and)*
//! and     := unary ('and' unary)*
//! unary   := 'not' unary | quant | '(' formula ')' | atom
//! atom    := 'true' | 'false' | 'Sing' '(' var ')' | ('r0' | 'r1') '(' term ',' term ')'
//!          | 'img' '[' ord ']' '(' term ')'
//!          | term ('in' var | '<=' term | '<=lex' term | '=' term | '<=' '[' ord ']' term)
//! term    := var | 'root'
//! ```

use std::fmt;

use super::{is_set_var, Formula, MsoError, Node, Term};
use crate::ordinal::{ord_parse, Ordinal};

const KEYWORDS: &[&str] = &["ex", "all", "not", "and", "or", "in", "true", "false", "root", "r0", "r1", "Sing", "img", "free"];

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    Bracket(String),
    Sym(&'static str),
    End,
}

pub(crate) fn lex(text: &str) -> Result<Vec<(usize, Tok)>, MsoError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
            continue;
        }
        if c == b'[' {
            let close = text[i..].find(']').ok_or(MsoError::Syntax { pos: i, msg: "unclosed '['".into() })?;
            out.push((start, Tok::Bracket(text[i + 1..i + close].to_string())));
            i += close + 1;
            continue;
        }
        let syms = ["<->", "<=lex", "<=", "->", "(", ")", ",", ".", "="];
        match syms.iter().find(|s| text[i..].starts_with(**s)) {
            Some(s) => {
                out.push((start, Tok::Sym(s)));
                i += s.len();
            }
            None => {
                let ch = text[i..].chars().next().expect("nonempty");
                return Err(MsoError::Syntax { pos: i, msg: format!("unexpected character '{ch}'") });
            }
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

pub(crate) struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    bound: Vec<String>,
}

impl Parser {
    pub(crate) fn new(text: &str) -> Result<Parser, MsoError> {
        Ok(Parser { toks: lex(text)?, at: 0, bound: Vec::new() })
    }

    pub(crate) fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    pub(crate) fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    pub(crate) fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, MsoError> {
        Err(MsoError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    pub(crate) fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    pub(crate) fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    pub(crate) fn expect_sym(&mut self, s: &str) -> Result<(), MsoError> {
        if self.is_sym(s) {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!("expected '{s}'"))
        }
    }

    /// A fresh variable name (binding site).
    pub(crate) fn binder(&mut self) -> Result<String, MsoError> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            _ => self.syntax("expected a variable"),
        }
    }

    /// A variable occurrence, which must be in scope.
    pub(crate) fn var_use(&mut self) -> Result<String, MsoError> {
        let pos = self.pos();
        let name = self.binder()?;
        if !self.bound.contains(&name) {
            return Err(MsoError::Scope { pos, msg: format!("unbound variable {name}") });
        }
        Ok(name)
    }

    fn term(&mut self) -> Result<Term, MsoError> {
        if self.is_kw("root") {
            self.bump();
            return Ok(Term::Root);
        }
        let pos = self.pos();
        let name = self.var_use()?;
        if is_set_var(&name) {
            return Err(MsoError::Scope { pos, msg: format!("{name} is a set variable, expected a node") });
        }
        Ok(Term::Var(name))
    }

    fn level(&mut self) -> Result<Ordinal, MsoError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Bracket(text) => {
                let level = ord_parse(text.trim()).map_err(|e| MsoError::Syntax { pos, msg: e.to_string() })?;
                if level.is_zero() {
                    return Err(MsoError::Syntax { pos, msg: "level 0 has no tree power".into() });
                }
                Ok(level)
            }
            _ => Err(MsoError::Syntax { pos, msg: "expected '[level]'".into() }),
        }
    }

    fn formula(&mut self) -> Result<Node, MsoError> {
        if self.is_kw("ex") || self.is_kw("all") {
            return self.quantifier();
        }
        let left = self.implication()?;
        if self.is_sym("<->") {
            self.bump();
            let right = self.implication()?;
            return Ok(Node::Iff(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn quantifier(&mut self) -> Result<Node, MsoError> {
        let exists = self.is_kw("ex");
        self.bump();
        let x = self.binder()?;
        self.expect_sym(".")?;
        self.bound.push(x.clone());
        let body = self.formula();
        self.bound.pop();
        let body = Box::new(body?);
        Ok(if exists { Node::Exists(x, body) } else { Node::Forall(x, body) })
    }

    fn implication(&mut self) -> Result<Node, MsoError> {
        let left = self.disjunction()?;
        if self.is_sym("->") {
            self.bump();
            let right = if self.is_kw("ex") || self.is_kw("all") { self.quantifier()? } else { self.implication()? };
            return Ok(Node::Implies(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Node, MsoError> {
        let mut acc = self.conjunction()?;
        while self.is_kw("or") {
            self.bump();
            let right = self.conjunction()?;
            acc = Node::Or(Box::new(acc), Box::new(right));
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Node, MsoError> {
        let mut acc = self.unary()?;
        while self.is_kw("and") {
            self.bump();
            let right = self.unary()?;
            acc = Node::And(Box::new(acc), Box::new(right));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Node, MsoError> {
        if self.is_kw("not") {
            self.bump();
            return Ok(Node::Not(Box::new(self.unary()?)));
        }
        if self.is_kw("ex") || self.is_kw("all") {
            return self.quantifier();
        }
        if self.is_sym("(") {
            self.bump();
            let f = self.formula()?;
            self.expect_sym(")")?;
            return Ok(f);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Node, MsoError> {
        for (kw, node) in [("true", Node::True), ("false", Node::False)] {
            if self.is_kw(kw) {
                self.bump();
                return Ok(node);
            }
        }
        if self.is_kw("Sing") {
            self.bump();
            self.expect_sym("(")?;
            let x = self.var_use()?;
            self.expect_sym(")")?;
            return Ok(Node::Sing(x));
        }
        for (kw, d) in [("r0", 0u8), ("r1", 1u8)] {
            if self.is_kw(kw) {
                self.bump();
                self.expect_sym("(")?;
                let a = self.term()?;
                self.expect_sym(",")?;
                let b = self.term()?;
                self.expect_sym(")")?;
                return Ok(Node::Child(d, a, b));
            }
        }
        if self.is_kw("img") {
            self.bump();
            let level = self.level()?;
            self.expect_sym("(")?;
            let a = self.term()?;
            self.expect_sym(")")?;
            return Ok(Node::Img(level, a));
        }
        // set equality `X = Y` is the one atom whose left side is a set
        if let Tok::Ident(name) = self.peek().clone() {
            if is_set_var(&name) && !KEYWORDS.contains(&name.as_str()) {
                let x = self.var_use()?;
                self.expect_sym("=")?;
                let pos = self.pos();
                let y = self.var_use()?;
                if !is_set_var(&y) {
                    return Err(MsoError::Scope { pos, msg: format!("{y} is a node variable, expected a set") });
                }
                return Ok(Node::Eq(Term::Var(x), Term::Var(y)));
            }
        }
        let a = self.term()?;
        if self.is_kw("in") {
            self.bump();
            let x = self.var_use()?;
            return Ok(Node::In(a, x));
        }
        if self.is_sym("<=lex") {
            self.bump();
            return Ok(Node::LexLe(a, self.term()?));
        }
        if self.is_sym("=") {
            self.bump();
            return Ok(Node::Eq(a, self.term()?));
        }
        if self.is_sym("<=") {
            self.bump();
            if matches!(self.peek(), Tok::Bracket(_)) {
                let level = self.level()?;
                return Ok(Node::LeAt(level, a, self.term()?));
            }
            return Ok(Node::Le(a, self.term()?));
        }
        self.syntax("expected 'in', '<=', '<=lex' or '='")
    }
}

/// Parses a formula. Free variables must be declared with a leading
/// `free x Y.` clause; any other unbound occurrence is a scope error.
pub fn parse_mso(text: &str) -> Result<Formula, MsoError> {
    let mut p = Parser::new(text)?;
    let mut free = Vec::new();
    if p.is_kw("free") {
        p.bump();
        while !p.is_sym(".") {
            let pos = p.pos();
            let x = p.binder()?;
            if free.contains(&x) {
                return Err(MsoError::Scope { pos, msg: format!("variable {x} declared twice") });
            }
            free.push(x);
        }
        p.bump();
    }
    p.bound = free.clone();
    let node = p.formula()?;
    if *p.peek() != Tok::End {
        return p.syntax("unexpected trailing input");
    }
    Formula::with_free(node, free)
}

fn prec(n: &Node) -> u8 {
    match n {
        Node::Exists(..) | Node::Forall(..) => 0,
        Node::Iff(..) => 1,
        Node::Implies(..) => 2,
        Node::Or(..) => 3,
        Node::And(..) => 4,
        _ => 5,
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Root => write!(f, "root"),
            Term::Var(x) => write!(f, "{x}"),
        }
    }
}

fn show(n: &Node, ctx: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let p = prec(n);
    let wrap = p < ctx || (p == 0 && ctx > 0);
    if wrap {
        write!(f, "(")?;
    }
    match n {
        Node::True => write!(f, "true")?,
        Node::False => write!(f, "false")?,
        Node::In(t, x) => write!(f, "{t} in {x}")?,
        Node::Sing(x) => write!(f, "Sing({x})")?,
        Node::Child(d, a, b) => write!(f, "r{d}({a}, {b})")?,
        Node::Le(a, b) => write!(f, "{a} <= {b}")?,
        Node::LexLe(a, b) => write!(f, "{a} <=lex {b}")?,
        Node::Eq(a, b) => write!(f, "{a} = {b}")?,
        Node::LeAt(l, a, b) => write!(f, "{a} <=[{l}] {b}")?,
        Node::Img(l, a) => write!(f, "img[{l}]({a})")?,
        Node::Not(a) => {
            write!(f, "not ")?;
            show(a, 5, f)?;
        }
        Node::And(a, b) | Node::Or(a, b) => {
            show(a, p, f)?;
            write!(f, " {} ", if p == 4 { "and" } else { "or" })?;
            show(b, p + 1, f)?;
        }
        Node::Implies(a, b) => {
            show(a, p + 1, f)?;
            write!(f, " -> ")?;
            show(b, p, f)?;
        }
        Node::Iff(a, b) => {
            show(a, p + 1, f)?;
            write!(f, " <-> ")?;
            show(b, p + 1, f)?;
        }
        Node::Exists(x, b) | Node::Forall(x, b) => {
            write!(f, "{} {x}. ", if matches!(n, Node::Exists(..)) { "ex" } else { "all" })?;
            show(b, 0, f)?;
        }
    }
    if wrap {
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        show(self, 0, f)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.free().is_empty() {
            write!(f, "free {}. ", self.free().join(" "))?;
        }
        show(&self.node, 0, f)
    }
}
