//! Compilation of formulas to alternating parity tree automata.
//!
//! A formula with free variables `v_0 … v_{k-1}` compiles to an automaton
//! over `2^k` letters; bit `i` of the letter at a node says whether the node
//! is in `v_i`. Atom automata assume their node arguments are singletons;
//! node quantifiers and the free node variables of the top formula add the
//! singleton constraint.

use std::collections::BTreeMap;

use crate::automata::{Pbf, RegularTree, TreeAutomaton, DEFAULT_CAP};
use crate::ordinal::Ordinal;
use crate::treepower::TNode;

use super::{is_set_var, Formula, MsoError, Node, Term};

fn at(d: u8, q: usize) -> Pbf {
    Pbf::Atom(d, q)
}

fn both(l: usize, r: usize) -> Pbf {
    Pbf::And(vec![at(0, l), at(1, r)])
}

fn either(l: Option<usize>, r: Option<usize>) -> Pbf {
    Pbf::or(l.map(|q| at(0, q)).into_iter().chain(r.map(|q| at(1, q))).collect())
}

fn table(tracks: u32, prio: Vec<u32>, delta: impl Fn(usize, usize) -> Pbf) -> TreeAutomaton {
    let letters = 1 << tracks;
    TreeAutomaton {
        letters,
        initial: 0,
        delta: (0..prio.len()).map(|q| (0..letters).map(|a| delta(q, a)).collect()).collect(),
        priorities: prio,
    }
}

fn bit(a: usize, i: usize) -> bool {
    a >> i & 1 == 1
}

/// `x ⊆ X`, which for a singleton `x` is `x ∈ X`.
fn member() -> TreeAutomaton {
    table(2, vec![0], |_, a| if bit(a, 0) && !bit(a, 1) { Pbf::False } else { both(0, 0) })
}

fn equal() -> TreeAutomaton {
    table(2, vec![0], |_, a| if bit(a, 0) != bit(a, 1) { Pbf::False } else { both(0, 0) })
}

/// Exactly one marked node. State 0: one mark below, state 1: none.
fn singleton() -> TreeAutomaton {
    table(1, vec![1, 0], |q, a| match (q, bit(a, 0)) {
        (0, true) => both(1, 1),
        (0, false) => Pbf::Or(vec![both(0, 1), both(1, 0)]),
        (_, true) => Pbf::False,
        (_, false) => both(1, 1),
    })
}

/// `y = x·d`. State 1 marks the one node where `y` must be.
fn child(d: u8) -> TreeAutomaton {
    table(2, vec![0, 0], move |q, a| {
        let (x, y) = (bit(a, 0), bit(a, 1));
        match q {
            0 if y => Pbf::False,
            0 if x => Pbf::And(vec![at(d, 1), at(1 - d, 0)]),
            0 => both(0, 0),
            _ if !y || x => Pbf::False,
            _ => both(0, 0),
        }
    })
}

/// `x ≤ y`: the reflexive-transitive closure of the two child steps. Once
/// `x` has been passed (state 1) every node is a descendant of it, and `y`
/// may not occur before that.
fn prefix() -> TreeAutomaton {
    table(2, vec![0, 0], |q, a| match q {
        0 if bit(a, 0) => both(1, 1),
        0 if bit(a, 1) => Pbf::False,
        0 => both(0, 0),
        _ => both(1, 1),
    })
}

/// `x ≤lex y`: `x ≤ y`, or `x` lies under the 0-child and `y` under the
/// 1-child of their meet. States: 0 both below, 1 find `x`, 2 find `y`.
fn lex() -> TreeAutomaton {
    table(2, vec![1, 1, 1], |q, a| {
        let (x, y) = (bit(a, 0), bit(a, 1));
        match q {
            0 if x && y => Pbf::True,
            0 if x => either(Some(2), Some(2)),
            0 if y => Pbf::False,
            0 => Pbf::Or(vec![at(0, 0), at(1, 0), both(1, 2)]),
            1 if x => Pbf::True,
            1 => either(Some(1), Some(1)),
            _ if y => Pbf::True,
            _ => either(Some(2), Some(2)),
        }
    })
}

// Path states of `pair` images `(1(0|1))* 0 (1(0|1))* 0`.
const A0: usize = 0;
const A1: usize = 1;
const B0: usize = 2;
const B1: usize = 3;
const FIN: usize = 4;

fn path_step(q: usize, b: u8) -> Option<usize> {
    match (q, b) {
        (A0, 1) => Some(A1),
        (A0, _) => Some(B0),
        (A1, _) => Some(A0),
        (B0, 1) => Some(B1),
        (B0, _) => Some(FIN),
        (B1, _) => Some(B0),
        _ => None,
    }
}

/// Search states `offset + q` that look for the node on `track` below,
/// with `q` the path state reached so far.
fn find_rows(offset: usize, track: usize, q: usize, a: usize) -> Pbf {
    if bit(a, track) {
        return if q == FIN { Pbf::True } else { Pbf::False };
    }
    either(path_step(q, 0).map(|t| offset + t), path_step(q, 1).map(|t| offset + t))
}

/// `img[2](s)`.
fn image2() -> TreeAutomaton {
    table(1, vec![1; 5], |q, a| find_rows(0, 0, q, a))
}

/// `s <=[2] t` for `s = d(v)d(u)`, `t = d(v')d(u')`: either `v = v'` and
/// `u ≤ u'`, or `v < v'`. States `0..5` follow the common path, `5..10`
/// look for `s`, `10..15` look for `t`, 15 expects `s` here.
fn order2() -> TreeAutomaton {
    table(2, vec![1; 16], |q, a| {
        let (s, t) = (bit(a, 0), bit(a, 1));
        match q {
            0..=4 if s => {
                if q == FIN && t {
                    Pbf::True
                } else {
                    Pbf::False
                }
            }
            0..=4 if t => Pbf::False,
            0..=4 => {
                let mut terms = vec![either(path_step(q, 0), None), either(None, path_step(q, 1))];
                if q == A0 {
                    // v ends here for s, continues for t
                    terms.push(both(5 + B0, 10 + A1));
                }
                if q == B0 {
                    // s = p0 closes u; t extends u
                    terms.push(both(15, 10 + B1));
                }
                Pbf::or(terms)
            }
            5..=9 => find_rows(5, 0, q - 5, a),
            10..=14 => find_rows(10, 1, q - 10, a),
            _ => {
                if s {
                    Pbf::True
                } else {
                    Pbf::False
                }
            }
        }
    })
}

#[derive(Clone, Copy)]
enum Track {
    Env(usize),
    Root,
}

/// Rewrites root tracks to read "this is the root" instead of a letter bit.
fn with_root(a: &TreeAutomaton, roots: usize) -> TreeAutomaton {
    if roots == 0 {
        return a.clone();
    }
    let n = a.states();
    let delta = (0..2 * n)
        .map(|s| {
            let (q, top) = (s % n, s < n);
            (0..a.letters)
                .map(|l| {
                    let l = (l & !roots) | if top { roots } else { 0 };
                    a.delta[q][l].map_states(&|t| t + n)
                })
                .collect()
        })
        .collect();
    let priorities = a.priorities.iter().chain(&a.priorities).copied().collect();
    TreeAutomaton { letters: a.letters, initial: a.initial, delta, priorities }
}

/// Places an atom automaton whose track `i` is `tracks[i]` into an
/// environment of `k` variables.
fn place(a: &TreeAutomaton, tracks: &[Track], k: usize) -> TreeAutomaton {
    let roots = tracks.iter().enumerate().filter(|(_, t)| matches!(t, Track::Root)).fold(0, |m, (i, _)| m | 1 << i);
    let a = with_root(a, roots);
    let tracks = tracks.to_vec();
    a.map_letters(1 << k, move |l| {
        tracks.iter().enumerate().fold(0, |acc, (i, t)| match t {
            Track::Env(p) if bit(l, *p) => acc | 1 << i,
            _ => acc,
        })
    })
}

/// Keeps the states reachable from the initial one.
fn trim(a: &TreeAutomaton) -> TreeAutomaton {
    let mut index = BTreeMap::new();
    let mut order = vec![a.initial];
    index.insert(a.initial, 0);
    let mut i = 0;
    while i < order.len() {
        let mut atoms = Vec::new();
        a.delta[order[i]].iter().for_each(|p| p.atoms(&mut atoms));
        for (_, q) in atoms {
            if !index.contains_key(&q) {
                index.insert(q, order.len());
                order.push(q);
            }
        }
        i += 1;
    }
    TreeAutomaton {
        letters: a.letters,
        initial: 0,
        delta: order.iter().map(|&q| a.delta[q].iter().map(|p| p.map_states(&|t| index[&t])).collect()).collect(),
        priorities: order.iter().map(|&q| a.priorities[q]).collect(),
    }
}

fn level_of(l: &Ordinal) -> Result<u64, MsoError> {
    match l.as_nat() {
        Some(n @ 1..=2) => Ok(n),
        _ => Err(MsoError::UnsupportedLevel(l.clone())),
    }
}

struct Compiler {
    env: Vec<String>,
    cap: usize,
}

impl Compiler {
    fn track(&self, t: &Term) -> Track {
        match t {
            Term::Root => Track::Root,
            Term::Var(x) => Track::Env(self.pos(x)),
        }
    }

    fn pos(&self, x: &str) -> usize {
        self.env.iter().rposition(|y| y == x).expect("scope checked")
    }

    fn atom(&self, a: &TreeAutomaton, terms: &[&Term]) -> TreeAutomaton {
        let tracks: Vec<Track> = terms.iter().map(|t| self.track(t)).collect();
        place(a, &tracks, self.env.len())
    }

    fn node(&mut self, n: &Node) -> Result<TreeAutomaton, MsoError> {
        let letters = 1 << self.env.len();
        Ok(match n {
            Node::True => TreeAutomaton::universal(letters),
            Node::False => TreeAutomaton::empty(letters),
            Node::In(t, x) => self.atom(&member(), &[t, &Term::Var(x.clone())]),
            Node::Sing(x) => self.atom(&singleton(), &[&Term::Var(x.clone())]),
            Node::Child(d, a, b) => self.atom(&child(*d), &[a, b]),
            Node::Le(a, b) => self.atom(&prefix(), &[a, b]),
            Node::LexLe(a, b) => self.atom(&lex(), &[a, b]),
            Node::Eq(a, b) => self.atom(&equal(), &[a, b]),
            Node::LeAt(l, a, b) => match level_of(l)? {
                1 => self.atom(&prefix(), &[a, b]),
                _ => self.atom(&order2(), &[a, b]),
            },
            Node::Img(l, a) => match level_of(l)? {
                1 => TreeAutomaton::universal(letters),
                _ => self.atom(&image2(), &[a]),
            },
            Node::Not(a) => self.node(a)?.dualize(),
            Node::And(a, b) => self.node(a)?.and(&self.node(b)?)?,
            Node::Or(a, b) => self.node(a)?.or(&self.node(b)?)?,
            Node::Implies(a, b) => self.node(a)?.dualize().or(&self.node(b)?)?,
            Node::Iff(a, b) => {
                let (x, y) = (self.node(a)?, self.node(b)?);
                x.dualize().or(&y)?.and(&y.dualize().or(&x)?)?
            }
            Node::Exists(x, body) => self.exists(x, body)?,
            Node::Forall(x, body) => self.exists(x, &Node::Not(body.clone()))?.dualize(),
        })
    }

    fn exists(&mut self, x: &str, body: &Node) -> Result<TreeAutomaton, MsoError> {
        self.env.push(x.to_string());
        let inner = self.node(body).and_then(|b| {
            if is_set_var(x) {
                Ok(b)
            } else {
                Ok(b.and(&self.atom(&singleton(), &[&Term::Var(x.to_string())]))?)
            }
        });
        self.env.pop();
        let nd = trim(&inner?).nondeterminize(self.cap)?.reduce()?;
        Ok(trim(&nd.project(self.env.len() as u32)?.reduce()?))
    }
}

/// Automaton over `2^{free vars}` accepting exactly the labellings that
/// represent assignments satisfying `f`, with free node variables read as
/// singletons.
pub fn compile(f: &Formula) -> Result<TreeAutomaton, MsoError> {
    compile_with(f, DEFAULT_CAP)
}

pub fn compile_with(f: &Formula, cap: usize) -> Result<TreeAutomaton, MsoError> {
    let mut c = Compiler { env: f.free().to_vec(), cap };
    let mut a = c.node(&f.node)?;
    for x in f.free().iter().filter(|x| !is_set_var(x)) {
        a = a.and(&c.atom(&singleton(), &[&Term::Var(x.clone())]))?;
    }
    Ok(trim(&a))
}

/// Truth of a sentence in `𝔑₂`: membership of the one tree over the
/// one-letter alphabet.
pub fn decide_s2s(f: &Formula) -> Result<bool, MsoError> {
    decide_s2s_with(f, DEFAULT_CAP)
}

pub fn decide_s2s_with(f: &Formula, cap: usize) -> Result<bool, MsoError> {
    if !f.is_sentence() {
        return Err(MsoError::NotASentence(f.free().to_vec()));
    }
    Ok(compile_with(f, cap)?.accepts(&RegularTree::constant(0))?)
}

/// Finite marking as a regular tree: node `s` gets the union of the letter
/// bits of the marks at `s`; unmarked regions are 0.
pub fn marked_tree(marks: &[(TNode, u8)]) -> RegularTree {
    let mut ids: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let mut nodes: Vec<Vec<u8>> = vec![Vec::new()];
    ids.insert(Vec::new(), 0);
    for (s, _) in marks {
        for k in 1..=s.len() {
            let p = s.0[..k].to_vec();
            if !ids.contains_key(&p) {
                ids.insert(p.clone(), nodes.len());
                nodes.push(p);
            }
        }
    }
    let sink = nodes.len();
    let mut labels: Vec<u8> = vec![0; sink + 1];
    for (s, l) in marks {
        labels[ids[&s.0]] |= l;
    }
    let mut children: Vec<[usize; 2]> = nodes
        .iter()
        .map(|p| {
            let mut ch = [sink; 2];
            for (d, c) in ch.iter_mut().enumerate() {
                let mut q = p.clone();
                q.push(d as u8);
                if let Some(&id) = ids.get(&q) {
                    *c = id;
                }
            }
            ch
        })
        .collect();
    children.push([sink, sink]);
    RegularTree { root: 0, labels, children }
}
