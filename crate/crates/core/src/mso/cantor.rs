//! First-order logic over the Cantor space `(2^ω, ≤lex)` with Borel set
//! parameters. Points are ultimately periodic when bound from outside;
//! quantifiers range over all of `2^ω` and are decided with word automata.
//!
//! ```text
//! formula := ('ex' | 'all') var '.' formula | iff
//! iff     := imp ['<->' imp]
//! imp     := or ['->' imp]
//! or      := and ('or' and)*
//! and     := unary ('and' unary)*
//! unary   := 'not' unary | quant | '(' formula ')' | atom
//! atom    := 'true' | 'false' | var 'in' Set | var '<=' var | var '=' var
//! ```
//!
//! Lowercase names are points, uppercase names are set parameters. Free
//! points and all parameters are bound by a [`Binding`] map.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automata::{safra, WordAutomaton, DEFAULT_CAP};
use crate::borelcode::{
    code_equiv, code_intersect, decode, desc_complement, desc_sem, encode, lift, BorelDesc, CodeOpError,
};
use crate::treepower::UPWord;

use super::parse::{Parser, Tok};
use super::{is_set_var, MsoError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CantorNode {
    True,
    False,
    In(String, String),
    Le(String, String),
    Eq(String, String),
    Not(Box<CantorNode>),
    And(Box<CantorNode>, Box<CantorNode>),
    Or(Box<CantorNode>, Box<CantorNode>),
    Implies(Box<CantorNode>, Box<CantorNode>),
    Iff(Box<CantorNode>, Box<CantorNode>),
    Exists(String, Box<CantorNode>),
    Forall(String, Box<CantorNode>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CantorFormula {
    pub node: CantorNode,
    /// Free point variables, sorted.
    pub points: Vec<String>,
    /// Set parameters, sorted.
    pub params: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Binding {
    Set { desc: BorelDesc },
    Point { word: UPWord },
}

struct CantorParser {
    p: Parser,
    bound: Vec<String>,
    points: BTreeSet<String>,
    params: BTreeSet<String>,
}

impl CantorParser {
    fn formula(&mut self) -> Result<CantorNode, MsoError> {
        if self.p.is_kw("ex") || self.p.is_kw("all") {
            let exists = self.p.is_kw("ex");
            self.p.bump();
            let pos = self.p.pos();
            let x = self.p.binder()?;
            if is_set_var(&x) {
                return Err(MsoError::Scope { pos, msg: format!("set parameter {x} cannot be quantified") });
            }
            self.p.expect_sym(".")?;
            self.bound.push(x.clone());
            let body = self.formula();
            self.bound.pop();
            let body = Box::new(body?);
            return Ok(if exists { CantorNode::Exists(x, body) } else { CantorNode::Forall(x, body) });
        }
        self.iff()
    }

    fn iff(&mut self) -> Result<CantorNode, MsoError> {
        let a = self.imp()?;
        if self.p.is_sym("<->") {
            self.p.bump();
            let b = self.imp()?;
            return Ok(CantorNode::Iff(Box::new(a), Box::new(b)));
        }
        Ok(a)
    }

    fn imp(&mut self) -> Result<CantorNode, MsoError> {
        let a = self.or()?;
        if self.p.is_sym("->") {
            self.p.bump();
            let b = self.imp()?;
            return Ok(CantorNode::Implies(Box::new(a), Box::new(b)));
        }
        Ok(a)
    }

    fn or(&mut self) -> Result<CantorNode, MsoError> {
        let mut a = self.and()?;
        while self.p.is_kw("or") {
            self.p.bump();
            a = CantorNode::Or(Box::new(a), Box::new(self.and()?));
        }
        Ok(a)
    }

    fn and(&mut self) -> Result<CantorNode, MsoError> {
        let mut a = self.unary()?;
        while self.p.is_kw("and") {
            self.p.bump();
            a = CantorNode::And(Box::new(a), Box::new(self.unary()?));
        }
        Ok(a)
    }

    fn unary(&mut self) -> Result<CantorNode, MsoError> {
        if self.p.is_kw("not") {
            self.p.bump();
            return Ok(CantorNode::Not(Box::new(self.unary()?)));
        }
        if self.p.is_kw("ex") || self.p.is_kw("all") {
            return self.formula();
        }
        if self.p.is_sym("(") {
            self.p.bump();
            let f = self.formula()?;
            self.p.expect_sym(")")?;
            return Ok(f);
        }
        if self.p.is_kw("true") {
            self.p.bump();
            return Ok(CantorNode::True);
        }
        if self.p.is_kw("false") {
            self.p.bump();
            return Ok(CantorNode::False);
        }
        let x = self.point()?;
        if self.p.is_kw("in") {
            self.p.bump();
            let pos = self.p.pos();
            let h = self.p.binder()?;
            if !is_set_var(&h) {
                return Err(MsoError::Scope { pos, msg: format!("{h} is a point, not a set parameter") });
            }
            self.params.insert(h.clone());
            return Ok(CantorNode::In(x, h));
        }
        let le = match self.p.peek() {
            Tok::Sym("<=") => true,
            Tok::Sym("=") => false,
            _ => return self.p.syntax("expected 'in', '<=' or '='"),
        };
        self.p.bump();
        let y = self.point()?;
        Ok(if le { CantorNode::Le(x, y) } else { CantorNode::Eq(x, y) })
    }

    fn point(&mut self) -> Result<String, MsoError> {
        let pos = self.p.pos();
        let x = self.p.binder()?;
        if is_set_var(&x) {
            return Err(MsoError::Scope { pos, msg: format!("set parameter {x} used as a point") });
        }
        if !self.bound.contains(&x) {
            self.points.insert(x.clone());
        }
        Ok(x)
    }
}

pub fn parse_cantor(text: &str) -> Result<CantorFormula, MsoError> {
    let mut cp = CantorParser { p: Parser::new(text)?, bound: Vec::new(), points: BTreeSet::new(), params: BTreeSet::new() };
    let node = cp.formula()?;
    if *cp.p.peek() != Tok::End {
        return cp.p.syntax("unexpected trailing input");
    }
    Ok(CantorFormula { node, points: cp.points.into_iter().collect(), params: cp.params.into_iter().collect() })
}

impl fmt::Display for CantorNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CantorNode::True => write!(f, "true"),
            CantorNode::False => write!(f, "false"),
            CantorNode::In(x, h) => write!(f, "{x} in {h}"),
            CantorNode::Le(x, y) => write!(f, "{x} <= {y}"),
            CantorNode::Eq(x, y) => write!(f, "{x} = {y}"),
            CantorNode::Not(a) => write!(f, "not ({a})"),
            CantorNode::And(a, b) => write!(f, "({a}) and ({b})"),
            CantorNode::Or(a, b) => write!(f, "({a}) or ({b})"),
            CantorNode::Implies(a, b) => write!(f, "({a}) -> ({b})"),
            CantorNode::Iff(a, b) => write!(f, "({a}) <-> ({b})"),
            CantorNode::Exists(x, a) => write!(f, "ex {x}. ({a})"),
            CantorNode::Forall(x, a) => write!(f, "all {x}. ({a})"),
        }
    }
}

impl fmt::Display for CantorFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.node.fmt(f)
    }
}

/// `ρ ≤lex σ`.
pub fn cantor_le(rho: &UPWord, sigma: &UPWord) -> bool {
    match rho.first_difference(sigma) {
        None => true,
        Some(i) => rho.at(i) < sigma.at(i),
    }
}

/// `Δ(ρ, σ)`: the first position where the words differ.
pub fn cantor_delta(rho: &UPWord, sigma: &UPWord) -> Result<usize, MsoError> {
    rho.first_difference(sigma).ok_or(MsoError::EqualWords)
}

/// Safety automaton accepting exactly `w`.
pub fn point_automaton(w: &UPWord) -> WordAutomaton {
    let (p, c) = (w.prefix().len(), w.period().len());
    let n = p + c;
    WordAutomaton::safety(
        2,
        n + 1,
        0,
        |q, a| {
            if q < n && a == w.at(q) as usize {
                if q + 1 == n {
                    p
                } else {
                    q + 1
                }
            } else {
                n
            }
        },
        |q| q < n,
    )
}

/// Bit `i` of letter `a`.
fn bit(a: usize, i: usize) -> usize {
    (a >> i) & 1
}

fn lex_automaton() -> WordAutomaton {
    // 0: equal so far, 1: first letter smaller, 2: first letter larger.
    WordAutomaton::safety(
        4,
        3,
        0,
        |q, a| match (q, bit(a, 0).cmp(&bit(a, 1))) {
            (0, std::cmp::Ordering::Equal) => 0,
            (0, std::cmp::Ordering::Less) => 1,
            (0, std::cmp::Ordering::Greater) => 2,
            (q, _) => q,
        },
        |q| q != 2,
    )
}

fn eq_automaton() -> WordAutomaton {
    WordAutomaton::safety(4, 1, 0, |_, a| if bit(a, 0) == bit(a, 1) { 0 } else { 1 }, |q| q == 0)
}

struct CantorCompiler<'a> {
    sets: &'a BTreeMap<String, WordAutomaton>,
    env: Vec<String>,
    cap: usize,
}

impl CantorCompiler<'_> {
    fn track(&self, x: &str) -> usize {
        self.env.iter().rposition(|y| y == x).expect("points are bound")
    }

    fn letters(&self) -> usize {
        1 << self.env.len()
    }

    fn binary(&self, aut: &WordAutomaton, x: &str, y: &str) -> WordAutomaton {
        let (i, j) = (self.track(x), self.track(y));
        aut.map_letters(self.letters(), |a| bit(a, i) | bit(a, j) << 1)
    }

    fn node(&mut self, n: &CantorNode) -> Result<WordAutomaton, MsoError> {
        let k = self.letters();
        Ok(match n {
            CantorNode::True => WordAutomaton::universal(k),
            CantorNode::False => WordAutomaton::empty(k),
            CantorNode::In(x, h) => {
                let i = self.track(x);
                self.sets[h].map_letters(k, |a| bit(a, i))
            }
            CantorNode::Le(x, y) => self.binary(&lex_automaton(), x, y),
            CantorNode::Eq(x, y) => self.binary(&eq_automaton(), x, y),
            CantorNode::Not(a) => self.node(a)?.complement(),
            CantorNode::And(a, b) => self.node(a)?.and(&self.node(b)?)?,
            CantorNode::Or(a, b) => self.node(a)?.or(&self.node(b)?)?,
            CantorNode::Implies(a, b) => self.node(a)?.complement().or(&self.node(b)?)?,
            CantorNode::Iff(a, b) => {
                let (x, y) = (self.node(a)?, self.node(b)?);
                x.and(&y)?.or(&x.complement().and(&y.complement())?)?
            }
            CantorNode::Exists(x, body) => self.exists(x, body)?,
            CantorNode::Forall(x, body) => {
                let neg = CantorNode::Not(body.clone());
                self.exists(x, &neg)?.complement()
            }
        })
    }

    fn exists(&mut self, x: &str, body: &CantorNode) -> Result<WordAutomaton, MsoError> {
        self.env.push(x.to_string());
        let inner = self.node(body);
        self.env.pop();
        let inner = inner?.minimize();
        let bit = u32::try_from(self.env.len()).expect("few tracks");
        Ok(safra::determinize(&inner.project_bit(bit), self.cap)?.minimize())
    }
}

/// The letters of all words on their tracks, as one ultimately periodic word.
fn zip(words: &[&UPWord]) -> Result<UPWord, MsoError> {
    let p = words.iter().map(|w| w.prefix().len()).max().unwrap_or(0);
    let c = words.iter().map(|w| w.period().len()).fold(1, lcm);
    let letter = |i: usize| words.iter().enumerate().map(|(t, w)| (w.at(i) as usize) << t).sum::<usize>() as u8;
    UPWord::new((0..p).map(letter).collect(), (p..p + c).map(letter).collect())
        .map_err(|e| MsoError::Assignment(e.to_string()))
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn bound_sets(phi: &CantorFormula, bindings: &BTreeMap<String, Binding>) -> Result<BTreeMap<String, BorelDesc>, MsoError> {
    let mut out = BTreeMap::new();
    for h in &phi.params {
        match bindings.get(h) {
            Some(Binding::Set { desc }) => {
                out.insert(h.clone(), desc.clone());
            }
            _ => return Err(MsoError::Assignment(format!("parameter {h} needs a set binding"))),
        }
    }
    Ok(out)
}

fn bound_points<'a>(phi: &CantorFormula, bindings: &'a BTreeMap<String, Binding>) -> Result<Vec<&'a UPWord>, MsoError> {
    phi.points
        .iter()
        .map(|x| match bindings.get(x) {
            Some(Binding::Point { word }) if word.prefix().iter().chain(word.period()).all(|&b| b < 2) => Ok(word),
            _ => Err(MsoError::Assignment(format!("point {x} needs a binary word binding"))),
        })
        .collect()
}

fn decide_with_sets(phi: &CantorFormula, sets: &BTreeMap<String, BorelDesc>, points: &[&UPWord]) -> Result<bool, MsoError> {
    let mut sems = BTreeMap::new();
    for (h, d) in sets {
        crate::borelcode::desc_validate(d).map_err(|e| MsoError::Borel(e.to_string()))?;
        sems.insert(h.clone(), desc_sem(d)?);
    }
    let mut c = CantorCompiler { sets: &sems, env: phi.points.clone(), cap: DEFAULT_CAP };
    let aut = c.node(&phi.node)?;
    Ok(aut.accepts(&zip(points)?)?)
}

/// Truth of `φ` in `(2^ω, ≤lex)` with parameters and free points bound.
pub fn decide_cantor(phi: &CantorFormula, bindings: &BTreeMap<String, Binding>) -> Result<bool, MsoError> {
    let sets = bound_sets(phi, bindings)?;
    let points = bound_points(phi, bindings)?;
    decide_with_sets(phi, &sets, &points)
}

/// `ρ ∈ H` decided on codes: `c({ρ}) ⊆ c(H)`, with `{ρ}` lifted to the level
/// of `H`. When the shapes do not align the complement of `H` is used, and
/// `ρ ∈ H` iff `c({ρ}) ⊄ c(H')`. `None` when neither alignment exists.
pub fn cantor_code_member(rho: &UPWord, h: &BorelDesc) -> Result<Option<bool>, MsoError> {
    let borel = |e: crate::borelcode::Violation| MsoError::Borel(e.to_string());
    let point = lift(&BorelDesc::Closed { aut: point_automaton(rho) }, &h.level());
    let cs = encode(&point).map_err(borel)?;
    let contained = |target: &BorelDesc| -> Result<Option<bool>, MsoError> {
        let Ok(ch) = encode(target) else {
            return Ok(None);
        };
        match code_intersect(&cs, &ch) {
            Ok(meet) => Ok(Some(code_equiv(&meet, &cs))),
            Err(CodeOpError::IncompatibleShape) => Ok(None),
            Err(CodeOpError::LevelMismatch) => Err(MsoError::Borel("level mismatch".into())),
            Err(CodeOpError::Automata(e)) => Err(e.into()),
        }
    };
    encode(h).map_err(borel)?;
    if let Some(r) = contained(h)? {
        return Ok(Some(r));
    }
    Ok(contained(&desc_complement(h))?.map(|r| !r))
}

fn code_route(n: &CantorNode, sets: &BTreeMap<String, BorelDesc>, env: &BTreeMap<String, UPWord>) -> Result<Option<bool>, MsoError> {
    let both = |a: &CantorNode, b: &CantorNode| -> Result<Option<(bool, bool)>, MsoError> {
        Ok(code_route(a, sets, env)?.zip(code_route(b, sets, env)?))
    };
    Ok(match n {
        CantorNode::True => Some(true),
        CantorNode::False => Some(false),
        CantorNode::In(x, h) => cantor_code_member(&env[x], &sets[h])?,
        CantorNode::Le(x, y) => Some(cantor_le(&env[x], &env[y])),
        CantorNode::Eq(x, y) => Some(env[x] == env[y]),
        CantorNode::Not(a) => code_route(a, sets, env)?.map(|v| !v),
        CantorNode::And(a, b) => both(a, b)?.map(|(x, y)| x && y),
        CantorNode::Or(a, b) => both(a, b)?.map(|(x, y)| x || y),
        CantorNode::Implies(a, b) => both(a, b)?.map(|(x, y)| !x || y),
        CantorNode::Iff(a, b) => both(a, b)?.map(|(x, y)| x == y),
        CantorNode::Exists(..) | CantorNode::Forall(..) => unreachable!("quantifier-free by caller"),
    })
}

fn quantifier_free(n: &CantorNode) -> bool {
    match n {
        CantorNode::Exists(..) | CantorNode::Forall(..) => false,
        CantorNode::Not(a) => quantifier_free(a),
        CantorNode::And(a, b) | CantorNode::Or(a, b) | CantorNode::Implies(a, b) | CantorNode::Iff(a, b) => {
            quantifier_free(a) && quantifier_free(b)
        }
        _ => true,
    }
}

/// `φ` decided through the codes of its parameters. Quantifier-free
/// sentences evaluate each membership atom with [`cantor_code_member`];
/// with quantifiers every parameter is replaced by `decode(encode(H))` and
/// the automata decide. `None` when some atom has no code-level answer.
pub fn decide_cantor_codes(phi: &CantorFormula, bindings: &BTreeMap<String, Binding>) -> Result<Option<bool>, MsoError> {
    let sets = bound_sets(phi, bindings)?;
    let points = bound_points(phi, bindings)?;
    if quantifier_free(&phi.node) {
        let env = phi.points.iter().cloned().zip(points.into_iter().cloned()).collect();
        return code_route(&phi.node, &sets, &env);
    }
    let mut decoded = BTreeMap::new();
    for (h, d) in &sets {
        let code = encode(d).map_err(|e| MsoError::Borel(e.to_string()))?;
        decoded.insert(h.clone(), decode(&code).map_err(|e| MsoError::Borel(e.to_string()))?);
    }
    decide_with_sets(phi, &decoded, &points).map(Some)
}
