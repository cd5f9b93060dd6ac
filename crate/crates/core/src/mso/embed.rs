//! The embeddings `f^α : T^α → T`.
//!
//! Pairing: `pair(a, b) = d(b)·d(a)` where `d(w) = 1w₀ 1w₁ … 1w_{k-1} 0`
//! doubles each bit behind a continuation flag and closes with an end
//! marker. The dominant component comes first, which keeps the image of
//! `≤_2` a regular relation on nodes.
//!
//! - level 1: identity;
//! - level `β+1`, `β ≥ 1`: `f(x) = pair(f^β(x↾β), x(β))`;
//! - limit level: `f(x) = pair(f^γ(x↾γ), tag(γ))` with `γ` the least position
//!   from which `x` is `Λ`; `tag` writes each Cantor normal form term
//!   `ω^e·c` as `1^e 0 1^c 0`. The all-`Λ` element maps to `pair(Λ, Λ)`.

use crate::ordinal::{Class, Ordinal};
use crate::treepower::{restrict, NodeSeq, TNode};

use super::MsoError;

fn double(w: &TNode, out: &mut Vec<u8>) {
    for &b in &w.0 {
        out.push(1);
        out.push(b);
    }
    out.push(0);
}

fn read_double(bits: &[u8], mut i: usize) -> Option<(TNode, usize)> {
    let mut w = Vec::new();
    loop {
        match bits.get(i)? {
            0 => return Some((TNode(w), i + 1)),
            _ => {
                w.push(*bits.get(i + 1)?);
                i += 2;
            }
        }
    }
}

/// `pair(a, b) = d(b)·d(a)`.
pub fn pair(a: &TNode, b: &TNode) -> TNode {
    let mut out = Vec::with_capacity(2 * (a.len() + b.len()) + 2);
    double(b, &mut out);
    double(a, &mut out);
    TNode(out)
}

/// Inverse of [`pair`] on its image.
pub fn unpair(s: &TNode) -> Option<(TNode, TNode)> {
    let (b, i) = read_double(&s.0, 0)?;
    let (a, j) = read_double(&s.0, i)?;
    (j == s.len()).then_some((a, b))
}

/// Tag node of an ordinal.
pub fn ordinal_node(o: &Ordinal) -> TNode {
    let mut out = Vec::new();
    for &(e, c) in o.terms() {
        out.extend(std::iter::repeat(1).take(e as usize));
        out.push(0);
        out.extend(std::iter::repeat(1).take(c as usize));
        out.push(0);
    }
    TNode(out)
}

fn node_ordinal(s: &TNode) -> Option<Ordinal> {
    fn unary(bits: &[u8], i: &mut usize) -> Option<usize> {
        let n = bits[*i..].iter().position(|&b| b == 0)?;
        *i += n + 1;
        Some(n)
    }
    let mut i = 0;
    let mut terms = Vec::new();
    while i < s.len() {
        let e = unary(&s.0, &mut i)?;
        let c = unary(&s.0, &mut i)?;
        terms.push((u32::try_from(e).ok()?, c as u64));
    }
    Ordinal::try_from(terms).ok()
}

/// `f^α` for one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub level: Ordinal,
}

pub fn embed_f(level: &Ordinal) -> Embedding {
    Embedding { level: level.clone() }
}

pub fn embed_apply(e: &Embedding, x: &NodeSeq) -> Result<TNode, MsoError> {
    if *x.level() != e.level {
        return Err(MsoError::Assignment(format!("element of T^{} given to f^{}", x.level(), e.level)));
    }
    Ok(apply(x))
}

fn apply(x: &NodeSeq) -> TNode {
    let level = x.level();
    match level.classify() {
        Class::Successor(p) if p.is_zero() => x.get(&p),
        Class::Successor(p) => pair(&apply(&restrict(x, &p).expect("p below level")), &x.get(&p)),
        Class::Limit => {
            let top = x.lambda_tail_start();
            if top.is_zero() {
                return pair(&TNode::root(), &TNode::root());
            }
            pair(&apply(&restrict(x, &top).expect("tail start below limit")), &ordinal_node(&top))
        }
        Class::Zero => unreachable!("tree powers start at level 1"),
    }
}

/// The preimage of `s`, if `s` is in the image.
pub fn embed_invert(e: &Embedding, s: &TNode) -> Option<NodeSeq> {
    invert(&e.level, s)
}

fn invert(level: &Ordinal, s: &TNode) -> Option<NodeSeq> {
    match level.classify() {
        Class::Successor(p) if p.is_zero() => Some(NodeSeq::finite(std::slice::from_ref(s))),
        Class::Successor(p) => {
            let (lo, top) = unpair(s)?;
            let mut x = invert(&p, &lo)?.relevel(level.clone()).ok()?;
            x.set(p, top).ok()?;
            Some(x)
        }
        Class::Limit => {
            let (lo, tag) = unpair(s)?;
            let top = node_ordinal(&tag)?;
            if top.is_zero() {
                return lo.is_root().then(|| NodeSeq::root(level.clone()));
            }
            if top >= *level || !top.is_successor() {
                return None;
            }
            let y = invert(&top, &lo)?;
            if y.get(&top.pred().expect("successor")).is_root() {
                return None;
            }
            y.relevel(level.clone()).ok()
        }
        Class::Zero => None,
    }
}

impl Embedding {
    pub fn apply(&self, x: &NodeSeq) -> Result<TNode, MsoError> {
        embed_apply(self, x)
    }

    pub fn is_image(&self, s: &TNode) -> bool {
        invert(&self.level, s).is_some()
    }

    /// The image of `≤_α`: holds iff `s = f(x)`, `t = f(y)` and `x ≤_α y`.
    /// Evaluated on the codes through the recursion that defines `f`.
    pub fn related(&self, s: &TNode, t: &TNode) -> bool {
        self.is_image(s) && self.is_image(t) && related(&self.level, s, t)
    }
}

fn related(level: &Ordinal, s: &TNode, t: &TNode) -> bool {
    match level.classify() {
        Class::Successor(p) if p.is_zero() => s.le(t),
        Class::Successor(p) => {
            let ((a, b), (a2, b2)) = (unpair(s).expect("image"), unpair(t).expect("image"));
            (b == b2 && related(&p, &a, &a2)) || b.lt(&b2)
        }
        Class::Limit => {
            let ((a, g), (a2, g2)) = (unpair(s).expect("image"), unpair(t).expect("image"));
            let (g, g2) = (node_ordinal(&g).expect("tag"), node_ordinal(&g2).expect("tag"));
            if g != g2 {
                return g < g2;
            }
            g.is_zero() || related(&g, &a, &a2)
        }
        Class::Zero => false,
    }
}

/// The level of an element of `⋃_β T^β`.
pub fn lg_of(x: &NodeSeq) -> Ordinal {
    x.level().clone()
}
