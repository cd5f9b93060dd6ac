//! Formula templates: the translation `F ↦ tF` from tree powers into `𝔑₂`,
//! the path and branch formulas, branch sets `S_F(A)`, and the strategy
//! formulas for Gale–Stewart games on `T`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::ordinal::Ordinal;
use crate::treepower::NodeSeq;

use super::build::*;
use super::eval::{eval_in, PowerTruncation, Structure, Value};
use super::parse::parse_mso;
use super::{is_set_var, Formula, MsoError, Node, Term};

fn names(n: &Node, out: &mut BTreeSet<String>) {
    let term = |t: &Term, out: &mut BTreeSet<String>| {
        if let Term::Var(x) = t {
            out.insert(x.clone());
        }
    };
    n.visit(&mut |m| match m {
        Node::In(t, x) => {
            term(t, out);
            out.insert(x.clone());
        }
        Node::Sing(x) | Node::Exists(x, _) | Node::Forall(x, _) => {
            out.insert(x.clone());
        }
        Node::Child(_, a, b) | Node::Le(a, b) | Node::LexLe(a, b) | Node::Eq(a, b) | Node::LeAt(_, a, b) => {
            term(a, out);
            term(b, out);
        }
        Node::Img(_, a) => term(a, out),
        _ => {}
    });
}

struct Relativizer {
    level: Ordinal,
    fresh: String,
}

impl Relativizer {
    /// `∀z (z ∈ X → img(z))`.
    fn inside(&self, set: &str) -> Node {
        let z = &self.fresh;
        all(z, implies(member(z, set), img(&self.level, z)))
    }

    fn guard(&self, x: &str) -> Node {
        if is_set_var(x) {
            self.inside(x)
        } else {
            img(&self.level, x)
        }
    }

    fn term(&self, t: &Term) -> Result<Term, MsoError> {
        match t {
            Term::Root if self.level != Ordinal::nat(1) => {
                Err(MsoError::Unsupported("root of a tree power above level 1 is not a term of the target".into()))
            }
            t => Ok(t.clone()),
        }
    }

    fn node(&self, n: &Node) -> Result<Node, MsoError> {
        let b = |x: &Node| self.node(x).map(Box::new);
        Ok(match n {
            Node::True | Node::False | Node::Sing(_) => n.clone(),
            Node::In(t, x) => Node::In(self.term(t)?, x.clone()),
            Node::Eq(s, t) => Node::Eq(self.term(s)?, self.term(t)?),
            Node::Le(s, t) => Node::LeAt(self.level.clone(), self.term(s)?, self.term(t)?),
            Node::Child(..) | Node::LexLe(..) | Node::LeAt(..) | Node::Img(..) => {
                return Err(MsoError::Unsupported(format!("atom {n} is not in the signature of tree powers")))
            }
            Node::Not(a) => Node::Not(b(a)?),
            Node::And(x, y) => Node::And(b(x)?, b(y)?),
            Node::Or(x, y) => Node::Or(b(x)?, b(y)?),
            Node::Implies(x, y) => Node::Implies(b(x)?, b(y)?),
            Node::Iff(x, y) => Node::Iff(b(x)?, b(y)?),
            Node::Exists(x, body) => ex(x, and(self.guard(x), self.node(body)?)),
            Node::Forall(x, body) => all(x, implies(self.guard(x), self.node(body)?)),
        })
    }
}

/// `tF` for a formula `F` over `(T^α, ≤_α)`: quantifiers are restricted to
/// the image of `f^α`, `≤` becomes `<=[α]`, and every free variable is
/// required to lie in the image. The free variables are kept in order.
pub fn translate_tf(f: &Formula, level: &Ordinal) -> Result<Formula, MsoError> {
    if level.is_zero() {
        return Err(MsoError::UnsupportedLevel(level.clone()));
    }
    let mut used = BTreeSet::new();
    names(&f.node, &mut used);
    used.extend(f.free().iter().cloned());
    let fresh = (0..).map(|i| format!("z{i}")).find(|z| !used.contains(z)).expect("unbounded supply");
    let r = Relativizer { level: level.clone(), fresh };
    let mut node = r.node(&f.node)?;
    for x in f.free().iter().rev() {
        node = and(r.guard(x), node);
    }
    Formula::with_free(node, f.free().to_vec())
}

fn over_power(text: &str) -> Formula {
    parse_mso(text).expect("template parses")
}

/// `Path(B)` over a tree power: `B` is a chain.
pub fn path_power() -> Formula {
    over_power("free B. all x. all y. (x in B and y in B -> x <= y or y <= x)")
}

/// `Down(B)` over a tree power: `B` is downward closed.
pub fn down_power() -> Formula {
    over_power("free B. all x. all y. (x in B and y <= x -> y in B)")
}

/// `Br(B) = Path(B) ∧ Down(B)` over a tree power.
pub fn branch_power() -> Formula {
    over_power(
        "free B. (all x. all y. (x in B and y in B -> x <= y or y <= x)) and \
         (all x. all y. (x in B and y <= x -> y in B))",
    )
}

/// `t Path` at level `α`, with free variable `B`.
pub fn formula_path(level: &Ordinal) -> Result<Formula, MsoError> {
    translate_tf(&path_power(), level)
}

/// `t Down` at level `α`.
pub fn formula_down(level: &Ordinal) -> Result<Formula, MsoError> {
    translate_tf(&down_power(), level)
}

/// `t Br` at level `α`.
pub fn formula_branch(level: &Ordinal) -> Result<Formula, MsoError> {
    translate_tf(&branch_power(), level)
}

/// `F(B, A)`: the branch `B` meets `A`.
pub fn meets() -> Formula {
    over_power("free A B. ex x. (x in B and x in A)")
}

/// `S_F(A)` on a truncation of `T^α`: the sets `B` with `Br(B)` and
/// `F(B, A)`. In a finite pool a nonempty downward-closed chain is the
/// down-set of its top element, so the candidates are those down-sets that
/// are chains, and the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchSet {
    pub level: Ordinal,
    pub depth: usize,
    pub pool: Vec<NodeSeq>,
    /// Sorted index lists into `pool`.
    pub members: BTreeSet<Vec<usize>>,
}

pub fn branchset_of(f: &Formula, a: &[NodeSeq], level: &Ordinal, depth: usize) -> Result<BranchSet, MsoError> {
    if let Some(x) = f.free().iter().find(|x| *x != "A" && *x != "B") {
        return Err(MsoError::Assignment(format!("branch formulas take free A and B only, found {x}")));
    }
    let s = PowerTruncation::new(level, depth)?;
    let n = s.elems().len();
    let mut candidates = vec![Vec::new()];
    for m in 0..n {
        let mut down = Vec::new();
        for y in 0..n {
            if s.le(y, m)? {
                down.push(y);
            }
        }
        let mut chain = true;
        'pairs: for (i, &x) in down.iter().enumerate() {
            for &y in &down[i + 1..] {
                if !s.le(x, y)? && !s.le(y, x)? {
                    chain = false;
                    break 'pairs;
                }
            }
        }
        if chain {
            candidates.push(down);
        }
    }
    let mut members = BTreeSet::new();
    for c in candidates {
        let mut asg = BTreeMap::new();
        asg.insert("A".to_string(), Value::Set(a.to_vec()));
        asg.insert("B".to_string(), Value::Set(c.iter().map(|&i| s.elems()[i].clone()).collect()));
        if eval_in(f, &s, &asg)? {
            members.insert(c);
        }
    }
    Ok(BranchSet { level: level.clone(), depth, pool: s.elems().to_vec(), members })
}

/// `S_F(A) ⊆ S_F(A')` for two branch sets over the same truncation.
pub fn subset_transfer(s: &BranchSet, t: &BranchSet) -> Result<bool, MsoError> {
    if s.level != t.level || s.depth != t.depth {
        return Err(MsoError::Assignment("branch sets over different truncations".into()));
    }
    Ok(s.members.is_subset(&t.members))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Player {
    I,
    II,
}

/// Payoff shapes: `Gdelta` is "infinitely often in `D`", `Fsigma` is
/// "eventually never in `D`", both for player I.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StrategyShape {
    Fsigma,
    Gdelta,
}

/// `W(A, D)`: the strategy coded by `A` wins for `player` in the game on `T`
/// whose payoff for player I is given by the node set `D` through `shape`.
///
/// Player I moves at even depths, player II at odd depths; at a node `x`
/// where the strategy owner moves, `x ∈ A` means "play 1". Plays are maximal
/// downward-closed chains, which on a truncation are the root-to-leaf paths.
pub fn strategy_formula(player: Player, shape: StrategyShape) -> Formula {
    let even = "(ex E. (root in E and (all y. all z. ((r0(y, z) or r1(y, z)) -> (z in E <-> not y in E))) and x in E))";
    let turn = match player {
        Player::I => even.to_string(),
        Player::II => format!("not {even}"),
    };
    let play = "(all y. all z. (y in P and z <= y -> z in P)) and \
                (all y. all z. (y in P and z in P -> y <= z or z <= y)) and \
                (all y. ((all z. (z in P -> y <= z or z <= y)) -> y in P))";
    let consistent = format!("(all x. (x in P and {turn} -> all y. (y in P and (r0(x, y) or r1(x, y)) -> (x in A <-> r1(x, y)))))");
    let win_i = match shape {
        StrategyShape::Gdelta => "(all x. (x in P -> ex y. (y in P and x <= y and y in D)))",
        StrategyShape::Fsigma => "(ex x. (x in P and all y. (y in P and x <= y -> not y in D)))",
    };
    let win = match player {
        Player::I => win_i.to_string(),
        Player::II => format!("not {win_i}"),
    };
    parse_mso(&format!("free A D. all P. ({play} and {consistent} -> {win})")).expect("template parses")
}
