//! Monadic second-order logic over the binary tree `𝔑₂ = (T, r0, r1, ≤, ≤lex)`:
//! formulas, compilation to tree automata, the sentence decision, a bounded
//! reference evaluator, the `f^α` embeddings of tree powers into `T`, the
//! translation templates, and the decision fragment for the Cantor order with
//! Borel parameters.
//!
//! Variables whose name starts with an uppercase letter range over sets of
//! nodes; the others range over nodes and are read as singleton sets.

mod cantor;
mod compile;
mod embed;
mod eval;
mod parse;
pub mod regression;
mod templates;

#[cfg(test)]
mod tests;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automata::AutomataError;
use crate::ordinal::Ordinal;

pub use cantor::{
    cantor_code_member, cantor_delta, cantor_le, decide_cantor, decide_cantor_codes, parse_cantor, point_automaton,
    Binding, CantorFormula, CantorNode,
};
pub use compile::{compile, compile_with, decide_s2s, decide_s2s_with, marked_tree};
pub use embed::{embed_apply, embed_f, embed_invert, lg_of, ordinal_node, pair, unpair, Embedding};
pub use eval::{
    eval_bounded, eval_in, stable_depth, BoundedTree, PowerTruncation, Structure, Value, MAX_DEPTH, MAX_SET_DEPTH,
};
pub use parse::parse_mso;
pub use templates::{
    branch_power, branchset_of, down_power, formula_branch, formula_down, formula_path, meets, path_power,
    strategy_formula, subset_transfer,
    translate_tf, BranchSet, Player, StrategyShape,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MsoError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("scope error at {pos}: {msg}")]
    Scope { pos: usize, msg: String },
    #[error("unsupported level {0}")]
    UnsupportedLevel(Ordinal),
    #[error("bound exceeded: depth {depth} above {limit}")]
    BoundExceeded { depth: usize, limit: usize },
    #[error("not a sentence: free variables {0:?}")]
    NotASentence(Vec<String>),
    #[error("bad assignment: {0}")]
    Assignment(String),
    #[error("unsupported construct: {0}")]
    Unsupported(String),
    #[error("the two words are equal")]
    EqualWords,
    #[error("borel description: {0}")]
    Borel(String),
    #[error(transparent)]
    Automata(#[from] AutomataError),
}

pub fn is_set_var(name: &str) -> bool {
    name.chars().next().is_some_and(char::is_uppercase)
}

/// A node-valued term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Term {
    Root,
    Var(String),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Node {
    True,
    False,
    /// `t in X`; for an individual `X` this is equality.
    In(Term, String),
    Sing(String),
    /// `r0(x, y)` / `r1(x, y)`: `y` is the `d`-child of `x`.
    Child(u8, Term, Term),
    Le(Term, Term),
    LexLe(Term, Term),
    Eq(Term, Term),
    /// `s <=[α] t`: both are `f^α`-images and their preimages are `≤_α`-related.
    LeAt(Ordinal, Term, Term),
    /// `img[α](s)`: `s` is an `f^α`-image.
    Img(Ordinal, Term),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Exists(String, Box<Node>),
    Forall(String, Box<Node>),
}

/// Builders used by the templates and tests.
pub mod build {
    use super::{Node, Term};
    use crate::ordinal::Ordinal;

    pub fn v(name: &str) -> Term {
        Term::var(name)
    }
    pub fn not(a: Node) -> Node {
        Node::Not(Box::new(a))
    }
    pub fn and(a: Node, b: Node) -> Node {
        Node::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Node, b: Node) -> Node {
        Node::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Node, b: Node) -> Node {
        Node::Implies(Box::new(a), Box::new(b))
    }
    pub fn iff(a: Node, b: Node) -> Node {
        Node::Iff(Box::new(a), Box::new(b))
    }
    pub fn ex(x: &str, body: Node) -> Node {
        Node::Exists(x.to_string(), Box::new(body))
    }
    pub fn all(x: &str, body: Node) -> Node {
        Node::Forall(x.to_string(), Box::new(body))
    }
    pub fn member(x: &str, set: &str) -> Node {
        Node::In(v(x), set.to_string())
    }
    pub fn le(x: &str, y: &str) -> Node {
        Node::Le(v(x), v(y))
    }
    pub fn le_at(level: &Ordinal, x: &str, y: &str) -> Node {
        Node::LeAt(level.clone(), v(x), v(y))
    }
    pub fn img(level: &Ordinal, x: &str) -> Node {
        Node::Img(level.clone(), v(x))
    }
    pub fn child(d: u8, x: &str, y: &str) -> Node {
        Node::Child(d, v(x), v(y))
    }
}

impl Node {
    /// Free variables in first-occurrence order.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        fn note(name: &String, bound: &[String], out: &mut Vec<String>) {
            if !bound.contains(name) && !out.contains(name) {
                out.push(name.clone());
            }
        }
        fn term(t: &Term, bound: &[String], out: &mut Vec<String>) {
            if let Term::Var(x) = t {
                note(x, bound, out);
            }
        }
        match self {
            Node::True | Node::False => {}
            Node::In(t, x) => {
                term(t, bound, out);
                note(x, bound, out);
            }
            Node::Sing(x) => note(x, bound, out),
            Node::Child(_, a, b) | Node::Le(a, b) | Node::LexLe(a, b) | Node::Eq(a, b) | Node::LeAt(_, a, b) => {
                term(a, bound, out);
                term(b, bound, out);
            }
            Node::Img(_, a) => term(a, bound, out),
            Node::Not(a) => a.collect_free(bound, out),
            Node::And(a, b) | Node::Or(a, b) | Node::Implies(a, b) | Node::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Node::Exists(x, body) | Node::Forall(x, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_set_quantifier(&self) -> bool {
        match self {
            Node::Exists(x, b) | Node::Forall(x, b) => is_set_var(x) || b.has_set_quantifier(),
            Node::Not(a) => a.has_set_quantifier(),
            Node::And(a, b) | Node::Or(a, b) | Node::Implies(a, b) | Node::Iff(a, b) => {
                a.has_set_quantifier() || b.has_set_quantifier()
            }
            _ => false,
        }
    }

    /// Levels used by `<=[α]` and `img[α]` atoms.
    pub fn levels(&self) -> BTreeSet<Ordinal> {
        let mut out = BTreeSet::new();
        self.visit(&mut |n| {
            if let Node::LeAt(l, ..) | Node::Img(l, _) = n {
                out.insert(l.clone());
            }
        });
        out
    }

    pub fn visit(&self, f: &mut impl FnMut(&Node)) {
        f(self);
        match self {
            Node::Not(a) | Node::Exists(_, a) | Node::Forall(_, a) => a.visit(f),
            Node::And(a, b) | Node::Or(a, b) | Node::Implies(a, b) | Node::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }
}

/// A formula with its free-variable list, which fixes the letter layout of
/// the compiled automaton: variable `i` is bit `i` of a letter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Formula {
    pub node: Node,
    free: Vec<String>,
}

impl Formula {
    /// Free variables sorted by name.
    pub fn new(node: Node) -> Formula {
        let mut free = node.free_vars();
        free.sort();
        Formula { node, free }
    }

    /// Declares the free variables explicitly; every free variable of `node`
    /// must be listed.
    pub fn with_free(node: Node, free: Vec<String>) -> Result<Formula, MsoError> {
        if let Some(x) = node.free_vars().into_iter().find(|x| !free.contains(x)) {
            return Err(MsoError::Scope { pos: 0, msg: format!("variable {x} is not declared") });
        }
        let mut seen = BTreeSet::new();
        if let Some(x) = free.iter().find(|x| !seen.insert(*x)) {
            return Err(MsoError::Scope { pos: 0, msg: format!("variable {x} declared twice") });
        }
        Ok(Formula { node, free })
    }

    pub fn free(&self) -> &[String] {
        &self.free
    }

    pub fn is_sentence(&self) -> bool {
        self.free.is_empty()
    }

    pub fn negate(&self) -> Formula {
        Formula { node: Node::Not(Box::new(self.node.clone())), free: self.free.clone() }
    }
}
