//! Brute-force semantics on finite structures: truncations of `T` and of
//! tree powers. Used as the reference engine for the automata.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use crate::ordinal::Ordinal;
use crate::treepower::{enumerate, le as power_le, NodeSeq, TNode};

use super::embed::embed_f;
use super::{is_set_var, Formula, MsoError, Node, Term};

/// Deepest truncation for formulas without set quantifiers.
pub const MAX_DEPTH: usize = 5;
/// Deepest truncation for formulas with set quantifiers.
pub const MAX_SET_DEPTH: usize = 3;
const MAX_SET_UNIVERSE: usize = 20;

/// A finite structure whose elements are indexed `0..len`.
pub trait Structure {
    type Elem: Clone + Eq + Hash;
    fn elems(&self) -> &[Self::Elem];
    fn index(&self, e: &Self::Elem) -> Option<usize>;
    fn root(&self) -> Option<usize>;
    fn le(&self, a: usize, b: usize) -> Result<bool, MsoError>;
    fn lex_le(&self, a: usize, b: usize) -> Result<bool, MsoError>;
    fn child(&self, d: u8, a: usize, b: usize) -> Result<bool, MsoError>;
    fn le_at(&self, level: &Ordinal, a: usize, b: usize) -> Result<bool, MsoError>;
    fn img(&self, level: &Ordinal, a: usize) -> Result<bool, MsoError>;
}

/// Nodes of `T` with fewer than `depth` bits.
pub struct BoundedTree {
    nodes: Vec<TNode>,
    index: HashMap<TNode, usize>,
}

impl BoundedTree {
    pub fn new(depth: usize) -> BoundedTree {
        let nodes = if depth == 0 { Vec::new() } else { TNode::all_up_to(depth - 1) };
        BoundedTree::with_nodes(nodes)
    }

    /// An arbitrary finite set of nodes with the relations of `T`.
    pub fn with_nodes(nodes: Vec<TNode>) -> BoundedTree {
        let index = nodes.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        BoundedTree { nodes, index }
    }
}

impl Structure for BoundedTree {
    type Elem = TNode;

    fn elems(&self) -> &[TNode] {
        &self.nodes
    }

    fn index(&self, e: &TNode) -> Option<usize> {
        self.index.get(e).copied()
    }

    fn root(&self) -> Option<usize> {
        self.index(&TNode::root())
    }

    fn le(&self, a: usize, b: usize) -> Result<bool, MsoError> {
        Ok(self.nodes[a].le(&self.nodes[b]))
    }

    fn lex_le(&self, a: usize, b: usize) -> Result<bool, MsoError> {
        Ok(self.nodes[a].lex_le(&self.nodes[b]))
    }

    fn child(&self, d: u8, a: usize, b: usize) -> Result<bool, MsoError> {
        Ok(self.nodes[a].child(d) == self.nodes[b])
    }

    fn le_at(&self, level: &Ordinal, a: usize, b: usize) -> Result<bool, MsoError> {
        Ok(embed_f(level).related(&self.nodes[a], &self.nodes[b]))
    }

    fn img(&self, level: &Ordinal, a: usize) -> Result<bool, MsoError> {
        Ok(embed_f(level).is_image(&self.nodes[a]))
    }
}

/// Elements `x` of `T^α` with `|f^α(x)| < depth`, ordered by `≤_α`. Only
/// the order and membership atoms are available.
pub struct PowerTruncation {
    level: Ordinal,
    elems: Vec<NodeSeq>,
    index: HashMap<NodeSeq, usize>,
}

impl PowerTruncation {
    pub fn new(level: &Ordinal, depth: usize) -> Result<PowerTruncation, MsoError> {
        let f = embed_f(level);
        let all = enumerate(level, depth, 2, 1 << 20).map_err(|e| MsoError::Assignment(e.to_string()))?;
        let mut elems = Vec::new();
        for x in all {
            if f.apply(&x)?.len() < depth {
                elems.push(x);
            }
        }
        let index = elems.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
        Ok(PowerTruncation { level: level.clone(), elems, index })
    }
}

impl Structure for PowerTruncation {
    type Elem = NodeSeq;

    fn elems(&self) -> &[NodeSeq] {
        &self.elems
    }

    fn index(&self, e: &NodeSeq) -> Option<usize> {
        self.index.get(e).copied()
    }

    fn root(&self) -> Option<usize> {
        self.index(&NodeSeq::root(self.level.clone()))
    }

    fn le(&self, a: usize, b: usize) -> Result<bool, MsoError> {
        power_le(&self.elems[a], &self.elems[b]).map_err(|e| MsoError::Assignment(e.to_string()))
    }

    fn lex_le(&self, _: usize, _: usize) -> Result<bool, MsoError> {
        Err(MsoError::UnsupportedLevel(self.level.clone()))
    }

    fn child(&self, _: u8, _: usize, _: usize) -> Result<bool, MsoError> {
        Err(MsoError::UnsupportedLevel(self.level.clone()))
    }

    fn le_at(&self, _: &Ordinal, _: usize, _: usize) -> Result<bool, MsoError> {
        Err(MsoError::UnsupportedLevel(self.level.clone()))
    }

    fn img(&self, _: &Ordinal, _: usize) -> Result<bool, MsoError> {
        Err(MsoError::UnsupportedLevel(self.level.clone()))
    }
}

/// Value of a free variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value<E> {
    Elem(E),
    Set(Vec<E>),
}

#[derive(Clone, Copy)]
enum Val {
    Elem(usize),
    Set(u128),
}

impl Val {
    fn mask(self) -> u128 {
        match self {
            Val::Elem(i) => 1 << i,
            Val::Set(m) => m,
        }
    }
}

struct Evaluator<'a, S: Structure> {
    s: &'a S,
    env: Vec<(String, Val)>,
}

impl<S: Structure> Evaluator<'_, S> {
    fn lookup(&self, x: &str) -> Val {
        self.env.iter().rev().find(|(y, _)| y == x).expect("scope checked").1
    }

    fn elem(&self, t: &Term) -> Result<usize, MsoError> {
        match t {
            Term::Root => self.s.root().ok_or_else(|| MsoError::Assignment("root is outside the structure".into())),
            Term::Var(x) => match self.lookup(x) {
                Val::Elem(i) => Ok(i),
                Val::Set(_) => Err(MsoError::Assignment(format!("{x} is a set"))),
            },
        }
    }

    fn term_mask(&self, t: &Term) -> Result<u128, MsoError> {
        match t {
            Term::Root => Ok(1 << self.elem(t)?),
            Term::Var(x) => Ok(self.lookup(x).mask()),
        }
    }

    fn eval(&mut self, n: &Node) -> Result<bool, MsoError> {
        let s = self.s;
        Ok(match n {
            Node::True => true,
            Node::False => false,
            Node::In(t, x) => self.lookup(x).mask() >> self.elem(t)? & 1 == 1,
            Node::Sing(x) => self.lookup(x).mask().count_ones() == 1,
            Node::Child(d, a, b) => s.child(*d, self.elem(a)?, self.elem(b)?)?,
            Node::Le(a, b) => s.le(self.elem(a)?, self.elem(b)?)?,
            Node::LexLe(a, b) => s.lex_le(self.elem(a)?, self.elem(b)?)?,
            Node::Eq(a, b) => self.term_mask(a)? == self.term_mask(b)?,
            Node::LeAt(l, a, b) => s.le_at(l, self.elem(a)?, self.elem(b)?)?,
            Node::Img(l, a) => s.img(l, self.elem(a)?)?,
            Node::Not(a) => !self.eval(a)?,
            Node::And(a, b) => self.eval(a)? && self.eval(b)?,
            Node::Or(a, b) => self.eval(a)? || self.eval(b)?,
            Node::Implies(a, b) => !self.eval(a)? || self.eval(b)?,
            Node::Iff(a, b) => self.eval(a)? == self.eval(b)?,
            Node::Exists(x, body) => self.quantify(x, body, true)?,
            Node::Forall(x, body) => self.quantify(x, body, false)?,
        })
    }

    fn quantify(&mut self, x: &str, body: &Node, exists: bool) -> Result<bool, MsoError> {
        let n = self.s.elems().len();
        let values: Box<dyn Iterator<Item = Val>> = if is_set_var(x) {
            if n > MAX_SET_UNIVERSE {
                return Err(MsoError::BoundExceeded { depth: n, limit: MAX_SET_UNIVERSE });
            }
            Box::new((0..1u128 << n).map(Val::Set))
        } else {
            Box::new((0..n).map(Val::Elem))
        };
        for v in values {
            self.env.push((x.to_string(), v));
            let r = self.eval(body);
            self.env.pop();
            if r? == exists {
                return Ok(exists);
            }
        }
        Ok(!exists)
    }
}

/// Truth of `f` in a finite structure under an assignment of its free
/// variables.
pub fn eval_in<S: Structure>(f: &Formula, s: &S, assignment: &BTreeMap<String, Value<S::Elem>>) -> Result<bool, MsoError> {
    if s.elems().len() > 128 {
        return Err(MsoError::BoundExceeded { depth: s.elems().len(), limit: 128 });
    }
    let mut env = Vec::new();
    for x in f.free() {
        let v = assignment.get(x).ok_or_else(|| MsoError::Assignment(format!("{x} is unassigned")))?;
        let find = |e: &S::Elem| s.index(e).ok_or_else(|| MsoError::Assignment(format!("value of {x} is outside the structure")));
        let val = match (v, is_set_var(x)) {
            (Value::Elem(e), false) => Val::Elem(find(e)?),
            (Value::Set(es), true) => Val::Set(es.iter().try_fold(0u128, |m, e| find(e).map(|i| m | 1 << i))?),
            _ => return Err(MsoError::Assignment(format!("{x} has a value of the wrong sort"))),
        };
        env.push((x.clone(), val));
    }
    Evaluator { s, env }.eval(&f.node)
}

/// Truth of `f` on the nodes of `T` with fewer than `depth` bits.
pub fn eval_bounded(f: &Formula, depth: usize, assignment: &BTreeMap<String, Value<TNode>>) -> Result<bool, MsoError> {
    let limit = if f.node.has_set_quantifier() { MAX_SET_DEPTH } else { MAX_DEPTH };
    if depth > limit {
        return Err(MsoError::BoundExceeded { depth, limit });
    }
    eval_in(f, &BoundedTree::new(depth), assignment)
}

/// Negation normal form with implications and equivalences expanded.
fn nnf(n: &Node, positive: bool) -> Node {
    use super::build::*;
    match (n, positive) {
        (Node::Not(a), p) => nnf(a, !p),
        (Node::And(a, b), true) | (Node::Or(a, b), false) => and(nnf(a, positive), nnf(b, positive)),
        (Node::Or(a, b), true) | (Node::And(a, b), false) => or(nnf(a, positive), nnf(b, positive)),
        (Node::Implies(a, b), true) => or(nnf(a, false), nnf(b, true)),
        (Node::Implies(a, b), false) => and(nnf(a, true), nnf(b, false)),
        (Node::Iff(a, b), p) => {
            let (x, y) = ((**a).clone(), (**b).clone());
            nnf(&and(implies(x.clone(), y.clone()), implies(y, x)), p)
        }
        (Node::Exists(x, b), true) | (Node::Forall(x, b), false) => ex(x, nnf(b, positive)),
        (Node::Forall(x, b), true) | (Node::Exists(x, b), false) => all(x, nnf(b, positive)),
        (atom, true) => atom.clone(),
        (atom, false) => not(atom.clone()),
    }
}

/// Depth from which the truncations of `T` agree with `T` on the sentence
/// `f`, when `f` lies in the documented fragment; `None` otherwise.
///
/// Fragment: in negation normal form all quantifiers are existential, or
/// all are universal, and no `<=[α]` or `img` atom occurs. Existential
/// sentences true in a truncation are true in `T`; universal sentences true
/// in `T` are true in every truncation. Conversely a witness (or
/// counterexample) configuration of `k` nodes compresses to depth `k`, or
/// `2k` when `r0`/`r1` occur, by shortening every edge of its meet closure
/// to one step (two when child atoms must stay false). Each `Sing` atom
/// counts as two nodes and each set equality as one, since their truth can
/// hinge on nodes outside the named ones.
pub fn stable_depth(f: &Formula) -> Option<usize> {
    if !f.is_sentence() {
        return None;
    }
    let n = nnf(&f.node, true);
    let (mut ex, mut all, mut k, mut child, mut other) = (false, false, 0usize, false, false);
    n.visit(&mut |m| match m {
        Node::Exists(x, _) | Node::Forall(x, _) => {
            if matches!(m, Node::Exists(..)) {
                ex = true;
            } else {
                all = true;
            }
            if !is_set_var(x) {
                k += 1;
            }
        }
        Node::Sing(_) => k += 2,
        Node::Eq(Term::Var(x), _) if is_set_var(x) => k += 1,
        Node::Child(..) => child = true,
        Node::LeAt(..) | Node::Img(..) => other = true,
        _ => {}
    });
    if (ex && all) || other {
        return None;
    }
    let d = if child { 2 * k + 1 } else { k + 1 };
    let limit = if n.has_set_quantifier() { MAX_SET_DEPTH } else { MAX_DEPTH };
    (d <= limit).then_some(d.max(1))
}
