//! Tree powers `T^α` of the Cantor tree: elements, their order, restrictions,
//! projections and finitely represented branches.
//!
//! An element of `T^α` is a map from positions `< α` to nodes of `T` with
//! finite support. Branches of `T^{β+1}` are stored as a base branch of `T`
//! with one fiber branch of `T^β` per base node; limit-level branches only in
//! the marker form used by limit codes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ordinal::{Class, Ordinal};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(Ordinal, Ordinal),
    #[error("bad restriction level {target} for an element of level {level}")]
    BadLevel { level: Ordinal, target: Ordinal },
    #[error("level {0} is not a successor")]
    NotSuccessorLevel(Ordinal),
    #[error("branch is not a node")]
    NotANode,
    #[error("enumeration bound exceeded ({0} elements)")]
    BoundExceeded(usize),
    #[error("position {pos} is not below level {level}")]
    PositionOutOfRange { pos: Ordinal, level: Ordinal },
    #[error("invalid word: {0}")]
    BadWord(String),
}

/// Node of the Cantor tree: a finite bit string, `Λ` is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TNode(pub Vec<u8>);

impl TNode {
    pub fn root() -> Self {
        TNode(Vec::new())
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        TNode(bits.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, b: u8) -> TNode {
        let mut v = self.0.clone();
        v.push(b);
        TNode(v)
    }

    /// Prefix order `≤_T`.
    pub fn le(&self, other: &TNode) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn lt(&self, other: &TNode) -> bool {
        self.len() < other.len() && self.le(other)
    }

    /// Lexicographic order: `s ≤_lex t` iff `s ≤ t`, or at the first
    /// disagreement `s` has 0 and `t` has 1.
    pub fn lex_le(&self, other: &TNode) -> bool {
        if self.le(other) {
            return true;
        }
        match self.0.iter().zip(&other.0).find(|(a, b)| a != b) {
            Some((a, b)) => a < b,
            None => false,
        }
    }

    /// All nodes with at most `max_len` bits, shortest first.
    pub fn all_up_to(max_len: usize) -> Vec<TNode> {
        let mut out = vec![TNode::root()];
        let mut layer = vec![TNode::root()];
        for _ in 0..max_len {
            layer = layer.iter().flat_map(|t| [t.child(0), t.child(1)]).collect();
            out.extend(layer.iter().cloned());
        }
        out
    }
}

impl fmt::Display for TNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "Λ");
        }
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for TNode {
    type Err = TreeError;
    fn from_str(s: &str) -> Result<Self, TreeError> {
        if s == "Λ" || s.is_empty() {
            return Ok(TNode::root());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(TreeError::BadWord(s.to_string())),
            })
            .collect::<Result<Vec<u8>, _>>()
            .map(TNode)
    }
}

impl Serialize for TNode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let bits: String = self.0.iter().map(|b| if *b == 0 { '0' } else { '1' }).collect();
        s.serialize_str(&bits)
    }
}

impl<'de> Deserialize<'de> for TNode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of `T^level`. Positions mapped to `Λ` are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSeq {
    level: Ordinal,
    support: BTreeMap<Ordinal, TNode>,
}

#[derive(Serialize, Deserialize)]
struct NodeSeqRepr {
    level: Ordinal,
    support: Vec<(Ordinal, TNode)>,
}

impl Serialize for NodeSeq {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        NodeSeqRepr {
            level: self.level.clone(),
            support: self.support.iter().map(|(p, t)| (p.clone(), t.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NodeSeq {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = NodeSeqRepr::deserialize(d)?;
        NodeSeq::new(r.level, r.support).map_err(serde::de::Error::custom)
    }
}

impl NodeSeq {
    pub fn root(level: Ordinal) -> Self {
        NodeSeq { level, support: BTreeMap::new() }
    }

    pub fn new(level: Ordinal, entries: impl IntoIterator<Item = (Ordinal, TNode)>) -> Result<Self, TreeError> {
        if level.is_zero() {
            return Err(TreeError::BadLevel { level: level.clone(), target: level });
        }
        let mut support = BTreeMap::new();
        for (pos, t) in entries {
            if pos >= level {
                return Err(TreeError::PositionOutOfRange { pos, level });
            }
            if !t.is_root() {
                support.insert(pos, t);
            }
        }
        Ok(NodeSeq { level, support })
    }

    /// Element of `T^k` for finite `k` from its coordinates `0..k`.
    pub fn finite(coords: &[TNode]) -> Self {
        let level = Ordinal::nat(coords.len() as u64);
        NodeSeq::new(level, coords.iter().enumerate().map(|(i, t)| (Ordinal::nat(i as u64), t.clone())))
            .expect("positions below level")
    }

    pub fn level(&self) -> &Ordinal {
        &self.level
    }

    pub fn get(&self, pos: &Ordinal) -> TNode {
        self.support.get(pos).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = (&Ordinal, &TNode)> {
        self.support.iter()
    }

    /// Least `β` with `x↾[β, level) ≡ Λ`.
    pub fn lambda_tail_start(&self) -> Ordinal {
        self.support.keys().next_back().map(Ordinal::succ).unwrap_or_else(Ordinal::zero)
    }

    pub fn set(&mut self, pos: Ordinal, t: TNode) -> Result<(), TreeError> {
        if pos >= self.level {
            return Err(TreeError::PositionOutOfRange { pos, level: self.level.clone() });
        }
        if t.is_root() {
            self.support.remove(&pos);
        } else {
            self.support.insert(pos, t);
        }
        Ok(())
    }

    /// Same coordinates viewed at another level; every support position must
    /// be below it.
    pub fn relevel(&self, level: Ordinal) -> Result<NodeSeq, TreeError> {
        NodeSeq::new(level, self.support.iter().map(|(p, t)| (p.clone(), t.clone())))
    }
}

impl fmt::Display for NodeSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T^{}{{", self.level)?;
        for (i, (p, t)) in self.support.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}:{t}")?;
        }
        write!(f, "}}")
    }
}

/// Membership in `T^level`. Elements are finite-support by construction, so
/// the only failure is a position outside the level.
pub fn elem_check(x: &NodeSeq) -> bool {
    !x.level.is_zero() && x.support.keys().all(|p| *p < x.level)
}

/// Probe a coordinate rule at a limit level: the rule is materialized on the
/// positions below `fund_seq(level, 2·probe)` and accepted only if it is `Λ`
/// from `fund_seq(level, probe)` on.
pub fn elem_check_rule(level: &Ordinal, rule: impl Fn(&Ordinal) -> TNode, probe: u64) -> bool {
    if level.is_zero() {
        return false;
    }
    if !level.is_limit() {
        return true;
    }
    let cut = level.fund_seq(probe).expect("limit");
    level
        .positions_below(2 * probe)
        .iter()
        .filter(|p| **p >= cut)
        .all(|p| rule(p).is_root())
}

/// `x ≤ y` in `T^α`. At every level this compares the highest position where
/// the two differ: `x` is below iff its node there is a strict prefix of `y`'s.
pub fn le(x: &NodeSeq, y: &NodeSeq) -> Result<bool, TreeError> {
    if x.level != y.level {
        return Err(TreeError::LevelMismatch(x.level.clone(), y.level.clone()));
    }
    Ok(le_unchecked(x, y))
}

fn le_unchecked(x: &NodeSeq, y: &NodeSeq) -> bool {
    let mut positions: Vec<&Ordinal> = x.support.keys().chain(y.support.keys()).collect();
    positions.sort_unstable_by(|a, b| b.cmp(a));
    positions.dedup();
    for p in positions {
        let (a, b) = (x.get(p), y.get(p));
        if a != b {
            return a.lt(&b);
        }
    }
    true
}

pub fn lt(x: &NodeSeq, y: &NodeSeq) -> Result<bool, TreeError> {
    Ok(x != y && le(x, y)?)
}

/// `x↾β` for `1 ≤ β ≤ level`.
pub fn restrict(x: &NodeSeq, beta: &Ordinal) -> Result<NodeSeq, TreeError> {
    if beta.is_zero() || *beta > x.level {
        return Err(TreeError::BadLevel { level: x.level.clone(), target: beta.clone() });
    }
    Ok(NodeSeq {
        level: beta.clone(),
        support: x.support.iter().filter(|(p, _)| *p < beta).map(|(p, t)| (p.clone(), t.clone())).collect(),
    })
}

fn split_level(level: &Ordinal) -> Result<Ordinal, TreeError> {
    match level.classify() {
        Class::Successor(b) if !b.is_zero() => Ok(b),
        Class::Successor(_) => Err(TreeError::BadLevel { level: level.clone(), target: Ordinal::zero() }),
        _ => Err(TreeError::NotSuccessorLevel(level.clone())),
    }
}

/// `b(x)`: the top coordinate of an element of a successor level.
pub fn base_of(x: &NodeSeq) -> Result<TNode, TreeError> {
    let b = split_level(&x.level)?;
    Ok(x.get(&b))
}

/// `p(x)`: the element one level down.
pub fn proj_of(x: &NodeSeq) -> Result<NodeSeq, TreeError> {
    let b = split_level(&x.level)?;
    restrict(x, &b)
}

/// All elements of `T^level` whose coordinates have at most `max_len` bits,
/// over the positions listed by `Ordinal::positions_below(probe)`.
pub fn enumerate(level: &Ordinal, max_len: usize, probe: u64, cap: usize) -> Result<Vec<NodeSeq>, TreeError> {
    let positions = level.positions_below(probe);
    let nodes = TNode::all_up_to(max_len);
    let total = nodes.len().checked_pow(positions.len() as u32).unwrap_or(usize::MAX);
    if total > cap {
        return Err(TreeError::BoundExceeded(total));
    }
    let mut out = vec![NodeSeq::root(level.clone())];
    for pos in positions {
        out = out
            .into_iter()
            .flat_map(|x| {
                let pos = pos.clone();
                nodes.iter().map(move |t| {
                    let mut y = x.clone();
                    y.set(pos.clone(), t.clone()).expect("position below level");
                    y
                })
            })
            .collect();
    }
    Ok(out)
}

/// Ultimately periodic word `prefix·period^ω` over small letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UPWord {
    prefix: Vec<u8>,
    period: Vec<u8>,
}

impl UPWord {
    /// Canonical form: primitive period, then the shortest prefix.
    pub fn new(prefix: Vec<u8>, period: Vec<u8>) -> Result<Self, TreeError> {
        if period.is_empty() {
            return Err(TreeError::BadWord("empty period".into()));
        }
        let mut period = period;
        let n = period.len();
        if let Some(d) = (1..n).find(|d| n % d == 0 && (0..n).all(|i| period[i] == period[i % d])) {
            period.truncate(d);
        }
        let mut prefix = prefix;
        while let Some(&last) = prefix.last() {
            if last != *period.last().expect("nonempty") {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Ok(UPWord { prefix, period })
    }

    pub fn constant(letter: u8) -> Self {
        UPWord { prefix: Vec::new(), period: vec![letter] }
    }

    pub fn zeros() -> Self {
        Self::constant(0)
    }

    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    pub fn at(&self, i: usize) -> u8 {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn take(&self, n: usize) -> Vec<u8> {
        (0..n).map(|i| self.at(i)).collect()
    }

    pub fn node(&self, n: usize) -> TNode {
        TNode(self.take(n))
    }

    pub fn max_letter(&self) -> u8 {
        self.prefix.iter().chain(&self.period).copied().max().unwrap_or(0)
    }

    /// Least position where the words differ.
    pub fn first_difference(&self, other: &UPWord) -> Option<usize> {
        if self == other {
            return None;
        }
        let bound = self.prefix.len().max(other.prefix.len()) + self.period.len() * other.period.len();
        (0..=bound).find(|&i| self.at(i) != other.at(i))
    }

    /// Letters zipped position by position into one word over pairs.
    pub fn zip_with(&self, other: &UPWord, f: impl Fn(u8, u8) -> u8) -> UPWord {
        let pre = self.prefix.len().max(other.prefix.len());
        let per = lcm(self.period.len(), other.period.len());
        let prefix = (0..pre).map(|i| f(self.at(i), other.at(i))).collect();
        let period = (pre..pre + per).map(|i| f(self.at(i), other.at(i))).collect();
        UPWord::new(prefix, period).expect("nonempty period")
    }

    pub fn map(&self, f: impl Fn(u8) -> u8) -> UPWord {
        UPWord::new(self.prefix.iter().map(|&a| f(a)).collect(), self.period.iter().map(|&a| f(a)).collect())
            .expect("nonempty period")
    }

    /// All words with prefix length `≤ max_prefix` and period length in
    /// `1..=max_period` over `letters`, canonical and deduplicated.
    pub fn pool(letters: u8, max_prefix: usize, max_period: usize) -> Vec<UPWord> {
        let mut out = std::collections::BTreeSet::new();
        for pl in 0..=max_prefix {
            for ql in 1..=max_period {
                for pre in words(letters, pl) {
                    for per in words(letters, ql) {
                        out.insert(UPWord::new(pre.clone(), per).expect("nonempty"));
                    }
                }
            }
        }
        out.into_iter().collect()
    }
}

fn words(letters: u8, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..letters).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Display for UPWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[u8]| -> String {
            if v.iter().all(|&a| a < 10) {
                v.iter().map(|a| char::from(b'0' + a)).collect()
            } else {
                v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(".")
            }
        };
        write!(f, "{}({})", show(&self.prefix), show(&self.period))
    }
}

/// Parses `prefix(period)`, for example `01(10)` or `(0)`.
impl FromStr for UPWord {
    type Err = TreeError;
    fn from_str(s: &str) -> Result<Self, TreeError> {
        let bad = || TreeError::BadWord(s.to_string());
        let s = s.trim();
        let open = s.find('(').ok_or_else(bad)?;
        if !s.ends_with(')') {
            return Err(bad());
        }
        let digits = |t: &str| -> Result<Vec<u8>, TreeError> {
            t.chars().map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad)).collect()
        };
        UPWord::new(digits(&s[..open])?, digits(&s[open + 1..s.len() - 1])?)
    }
}

impl Serialize for UPWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for UPWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// ω-sequence given by an explicit prefix and a constant tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EventualSeq<T> {
    pub explicit: Vec<T>,
    pub tail: T,
}

impl<T> EventualSeq<T> {
    pub fn constant(tail: T) -> Self {
        EventualSeq { explicit: Vec::new(), tail }
    }

    pub fn new(explicit: Vec<T>, tail: T) -> Self {
        EventualSeq { explicit, tail }
    }

    pub fn get(&self, n: usize) -> &T {
        self.explicit.get(n).unwrap_or(&self.tail)
    }

    /// Indices that cover every distinct term: the explicit part and the
    /// first tail index.
    pub fn span(&self) -> usize {
        self.explicit.len() + 1
    }

    pub fn iter_span(&self) -> impl Iterator<Item = &T> {
        self.explicit.iter().chain(std::iter::once(&self.tail))
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> EventualSeq<U> {
        EventualSeq { explicit: self.explicit.iter().map(&mut f).collect(), tail: f(&self.tail) }
    }

    pub fn try_map<U, E>(&self, mut f: impl FnMut(usize, &T) -> Result<U, E>) -> Result<EventualSeq<U>, E> {
        let mut explicit = Vec::with_capacity(self.explicit.len());
        for (i, t) in self.explicit.iter().enumerate() {
            explicit.push(f(i, t)?);
        }
        let tail = f(self.explicit.len(), &self.tail)?;
        Ok(EventualSeq { explicit, tail })
    }

    /// Pointwise combination; the result has the longer explicit prefix.
    pub fn zip_with<U, V>(&self, other: &EventualSeq<U>, mut f: impl FnMut(&T, &U) -> V) -> EventualSeq<V> {
        let n = self.explicit.len().max(other.explicit.len());
        EventualSeq {
            explicit: (0..n).map(|i| f(self.get(i), other.get(i))).collect(),
            tail: f(&self.tail, &other.tail),
        }
    }

    /// The sequence with its first `k` terms removed.
    pub fn drop_front(&self, k: usize) -> EventualSeq<T>
    where
        T: Clone,
    {
        EventualSeq {
            explicit: self.explicit.iter().skip(k).cloned().collect(),
            tail: self.tail.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BranchBody {
    /// A branch of `T` itself.
    Leaf { word: UPWord },
    /// Base branch in the top coordinate, one fiber branch per base node.
    Node { base: UPWord, fibers: Box<EventualSeq<BranchRep>> },
    /// Limit level: the inner branch lives in `T^{1+β_n}` and the next
    /// coordinate ranges over `Λ` and the one-bit node `marker`.
    LimitNode { n: u64, marker: u8, inner: Box<BranchRep> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BranchRep {
    pub level: Ordinal,
    pub body: BranchBody,
}

impl BranchRep {
    pub fn leaf(word: UPWord) -> Self {
        BranchRep { level: Ordinal::nat(1), body: BranchBody::Leaf { word } }
    }

    pub fn node(base: UPWord, fibers: EventualSeq<BranchRep>) -> Self {
        let level = fibers.tail.level.succ();
        BranchRep { level, body: BranchBody::Node { base, fibers: Box::new(fibers) } }
    }

    pub fn limit(level: Ordinal, n: u64, marker: u8, inner: BranchRep) -> Self {
        BranchRep { level, body: BranchBody::LimitNode { n, marker, inner: Box::new(inner) } }
    }

    /// A canonical branch of `T^level`: leftmost everywhere, marker 0 at limits.
    pub fn leftmost(level: &Ordinal) -> BranchRep {
        match level.classify() {
            Class::Successor(b) if b.is_zero() => BranchRep::leaf(UPWord::zeros()),
            Class::Successor(b) => BranchRep::node(UPWord::zeros(), EventualSeq::constant(BranchRep::leftmost(&b))),
            _ => {
                let inner = level.fund_seq(0).expect("limit").one_plus();
                BranchRep::limit(level.clone(), 0, 0, BranchRep::leftmost(&inner))
            }
        }
    }
}

/// Position of the marker coordinate of a limit branch with inner level `l`.
pub fn marker_position(inner_level: &Ordinal) -> Ordinal {
    inner_level.clone()
}

/// Checks the recursive shape; the error lists the path to the first fault.
pub fn branch_check(b: &BranchRep) -> Result<(), Vec<String>> {
    fn go(b: &BranchRep, trace: &mut Vec<String>) -> bool {
        match &b.body {
            BranchBody::Leaf { word } => {
                if b.level != Ordinal::nat(1) {
                    trace.push(format!("leaf at level {}", b.level));
                    return false;
                }
                if word.max_letter() > 1 {
                    trace.push(format!("leaf word {word} is not binary"));
                    return false;
                }
                true
            }
            BranchBody::Node { base, fibers } => {
                let Class::Successor(pred) = b.level.classify() else {
                    trace.push(format!("node at non-successor level {}", b.level));
                    return false;
                };
                if pred.is_zero() {
                    trace.push("node at level 1".into());
                    return false;
                }
                if base.max_letter() > 1 {
                    trace.push(format!("base {base} is not binary"));
                    return false;
                }
                for (i, f) in fibers.iter_span().enumerate() {
                    if f.level != pred {
                        trace.push(format!("fiber {i} at level {} under level {}", f.level, b.level));
                        return false;
                    }
                    if !go(f, trace) {
                        trace.push(format!("in fiber {i}"));
                        return false;
                    }
                }
                true
            }
            BranchBody::LimitNode { n, marker, inner } => {
                if !b.level.is_limit() {
                    trace.push(format!("limit node at level {}", b.level));
                    return false;
                }
                if *marker > 1 {
                    trace.push(format!("marker {marker} out of range"));
                    return false;
                }
                let expect = b.level.fund_seq(*n).expect("limit").one_plus();
                if inner.level != expect {
                    trace.push(format!("inner level {} expected {expect}", inner.level));
                    return false;
                }
                if !go(inner, trace) {
                    trace.push("in limit inner".into());
                    return false;
                }
                true
            }
        }
    }
    let mut trace = Vec::new();
    if go(b, &mut trace) {
        Ok(())
    } else {
        trace.reverse();
        Err(trace)
    }
}

/// `π^n`: the fiber branch attached at the base node of height `n`.
pub fn fiber_at(b: &BranchRep, n: usize) -> Result<&BranchRep, TreeError> {
    match &b.body {
        BranchBody::Node { fibers, .. } => Ok(fibers.get(n)),
        _ => Err(TreeError::NotANode),
    }
}

/// `ρ⇾n`: each coordinate path cut to its first `n` nodes.
pub fn path_rsh(family: &BTreeMap<Ordinal, Vec<TNode>>, n: usize) -> BTreeMap<Ordinal, Vec<TNode>> {
    family.iter().map(|(p, path)| (p.clone(), path.iter().take(n).cloned().collect())).collect()
}

/// Elements of the chain `b` whose coordinates all have fewer than `k` bits,
/// in increasing order.
pub fn chain_prefix(b: &BranchRep, k: usize, cap: usize) -> Result<Vec<NodeSeq>, TreeError> {
    let out = chain_rec(b, k, cap)?;
    Ok(out)
}

fn chain_rec(b: &BranchRep, k: usize, cap: usize) -> Result<Vec<NodeSeq>, TreeError> {
    match &b.body {
        BranchBody::Leaf { word } => Ok((0..k).map(|n| NodeSeq::finite(&[word.node(n)])).collect()),
        BranchBody::Node { base, fibers } => {
            let top = b.level.pred().expect("successor");
            let mut out = Vec::new();
            for n in 0..k {
                let fiber = chain_rec(fibers.get(n), k, cap)?;
                for x in fiber {
                    let mut y = x.relevel(b.level.clone())?;
                    y.set(top.clone(), base.node(n))?;
                    out.push(y);
                    if out.len() > cap {
                        return Err(TreeError::BoundExceeded(out.len()));
                    }
                }
            }
            Ok(out)
        }
        BranchBody::LimitNode { marker, inner, .. } => {
            let pos = marker_position(&inner.level);
            let base = chain_rec(inner, k, cap)?;
            let mut out = Vec::new();
            for t in [TNode::root(), TNode(vec![*marker])] {
                if t.len() >= k {
                    continue;
                }
                for x in &base {
                    let mut y = x.relevel(b.level.clone())?;
                    y.set(pos.clone(), t.clone())?;
                    out.push(y);
                }
            }
            if out.len() > cap {
                return Err(TreeError::BoundExceeded(out.len()));
            }
            Ok(out)
        }
    }
}

/// Whether the strict order on `pool` has a cycle; a pool drawn from a
/// well-founded order has none.
pub fn has_descending_cycle(pool: &[NodeSeq]) -> bool {
    let n = pool.len();
    // Kahn's algorithm on x < y edges
    let mut indeg = vec![0usize; n];
    let mut succ = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i != j && pool[i] != pool[j] && le_unchecked(&pool[i], &pool[j]) {
                succ[i].push(j);
                indeg[j] += 1;
            }
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut seen = 0;
    while let Some(i) = queue.pop() {
        seen += 1;
        for &j in &succ[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                queue.push(j);
            }
        }
    }
    seen < n
}
