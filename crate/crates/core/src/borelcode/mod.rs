//! Desk-scale Borel descriptions of ω-regular subsets of `2^ω`, their codes
//! as branch sets of Cantor tree powers, decoding and code operations.
//!
//! Levels: a description of Borel level `α` is coded in `T^{1+α}`. Limit
//! sequences are indexed by the fundamental sequence of the level, so the
//! element at index `m` lives at level `β_m`; `None` marks an index outside
//! the support.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automata::{AutomataError, WordAutomaton};
use crate::ordinal::{Class, Ordinal};
use crate::treepower::{BranchBody, BranchRep, EventualSeq, UPWord};

pub mod corpus;
pub mod gen;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Sigma,
    Pi,
}

impl Shape {
    pub fn flip(self) -> Shape {
        match self {
            Shape::Sigma => Shape::Pi,
            Shape::Pi => Shape::Sigma,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BorelDesc {
    Closed { aut: WordAutomaton },
    Open { aut: WordAutomaton },
    Empty { level: Ordinal },
    SigmaSucc { level: Ordinal, seq: Box<EventualSeq<BorelDesc>> },
    PiSucc { level: Ordinal, seq: Box<EventualSeq<BorelDesc>> },
    SigmaLim { level: Ordinal, seq: Box<EventualSeq<Option<BorelDesc>>> },
    PiLim { level: Ordinal, seq: Box<EventualSeq<Option<BorelDesc>>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseShape {
    AllZero,
    FullTree,
    Custom(UPWord),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MarkerSpec {
    Zero,
    One,
    Mixed,
}

/// A symbolic set of branches of `T^level`. Nothing beyond the syntax is
/// guaranteed; `decode` decides whether it is a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BranchSetTerm {
    Empty { level: Ordinal },
    /// Branches of `T` itself, a set of words.
    Leaf { aut: WordAutomaton },
    /// Base branch in the top coordinate; fiber `n` sits at the base node of
    /// height `n`.
    Succ { level: Ordinal, base: BaseShape, fibers: Box<EventualSeq<BranchSetTerm>> },
    Limit { level: Ordinal, marker: MarkerSpec, parts: Box<EventualSeq<Option<BranchSetTerm>>> },
}

pub type Code = BranchSetTerm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("sequence not monotone at index {0}")]
    NotMonotone(usize),
    #[error("first term of a union is empty")]
    FirstTermEmpty,
    #[error("level mismatch")]
    LevelMismatch,
    #[error("limit elements do not follow the fundamental sequence")]
    BadLimitTags,
    #[error("element {0} has the wrong topological kind")]
    KindMismatch(usize),
    #[error("closed description of a set that is not closed")]
    NotClosed,
    #[error("open description of a set that is not open")]
    NotOpen,
    #[error("automaton over {0} letters, expected 2")]
    BadAlphabet(usize),
    #[error(transparent)]
    Automata(#[from] AutomataError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Rejection {
    #[error("base is neither the zero branch nor the full tree")]
    BaseNotZeroNotFull,
    #[error("sequence not monotone at index {0}")]
    SequenceNotMonotone(usize),
    #[error("first term of a union is empty")]
    FirstTermEmpty,
    #[error("limit markers are mixed")]
    MarkerMixed,
    #[error("support is not cofinal")]
    SupportNotCofinal,
    #[error("element {0}: {1}")]
    InnerRejection(usize, Box<Rejection>),
    #[error("leaf set is neither closed nor open")]
    NotClosedOrOpen,
    #[error("element {0} has the wrong topological kind")]
    KindMismatch(usize),
    #[error("level mismatch")]
    LevelMismatch,
    #[error("automaton over {0} letters, expected 2")]
    BadAlphabet(usize),
    #[error(transparent)]
    Resource(#[from] AutomataError),
}

impl Rejection {
    /// Name of the outermost reason, with inner rejections unwrapped.
    pub fn root(&self) -> &Rejection {
        match self {
            Rejection::InnerRejection(_, r) => r.root(),
            r => r,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Rejection::BaseNotZeroNotFull => "BaseNotZeroNotFull",
            Rejection::SequenceNotMonotone(_) => "SequenceNotMonotone",
            Rejection::FirstTermEmpty => "FirstTermEmpty",
            Rejection::MarkerMixed => "MarkerMixed",
            Rejection::SupportNotCofinal => "SupportNotCofinal",
            Rejection::InnerRejection(..) => "InnerRejection",
            Rejection::NotClosedOrOpen => "NotClosedOrOpen",
            Rejection::KindMismatch(_) => "KindMismatch",
            Rejection::LevelMismatch => "LevelMismatch",
            Rejection::BadAlphabet(_) => "BadAlphabet",
            Rejection::Resource(_) => "Resource",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeOpError {
    #[error("level mismatch")]
    LevelMismatch,
    #[error("incompatible shapes")]
    IncompatibleShape,
    #[error(transparent)]
    Automata(#[from] AutomataError),
}

/// Tree-power level of the code of a level-`α` description.
pub fn code_level(desc_level: &Ordinal) -> Ordinal {
    desc_level.one_plus()
}

/// Inverse of [`code_level`]; `None` for level 0.
pub fn desc_level(code_level: &Ordinal) -> Option<Ordinal> {
    match code_level.as_nat() {
        Some(0) => None,
        Some(k) => Some(Ordinal::nat(k - 1)),
        None => Some(code_level.clone()),
    }
}

fn fund(level: &Ordinal, m: usize) -> Ordinal {
    level.fund_seq(m as u64).expect("limit level")
}

/// First fundamental index of `limit` at or above `level`.
fn first_index_above(limit: &Ordinal, level: &Ordinal, offset: impl Fn(Ordinal) -> Ordinal) -> usize {
    (0..).find(|&m| offset(fund(limit, m)) >= *level).expect("fundamental sequences are cofinal")
}

fn limit_element<T: Clone>(seq: &EventualSeq<Option<T>>, m: usize, lift: impl Fn(&T) -> T) -> Option<T> {
    if m < seq.explicit.len() {
        seq.explicit[m].clone()
    } else if m == seq.explicit.len() {
        seq.tail.clone()
    } else {
        seq.tail.as_ref().map(lift)
    }
}

fn binary() -> WordAutomaton {
    WordAutomaton::universal(2)
}

fn nothing() -> WordAutomaton {
    WordAutomaton::empty(2)
}

impl BorelDesc {
    pub fn level(&self) -> Ordinal {
        match self {
            BorelDesc::Closed { .. } | BorelDesc::Open { .. } => Ordinal::zero(),
            BorelDesc::Empty { level }
            | BorelDesc::SigmaSucc { level, .. }
            | BorelDesc::PiSucc { level, .. }
            | BorelDesc::SigmaLim { level, .. }
            | BorelDesc::PiLim { level, .. } => level.clone(),
        }
    }

    /// Level-0 sets count as Π when closed, the empty set as Π.
    pub fn shape(&self) -> Shape {
        match self {
            BorelDesc::Closed { .. } | BorelDesc::Empty { .. } => Shape::Pi,
            BorelDesc::Open { aut } => {
                if aut.is_closed() {
                    Shape::Pi
                } else {
                    Shape::Sigma
                }
            }
            BorelDesc::SigmaSucc { .. } | BorelDesc::SigmaLim { .. } => Shape::Sigma,
            BorelDesc::PiSucc { .. } | BorelDesc::PiLim { .. } => Shape::Pi,
        }
    }

    /// Element `m` of a limit description; tail copies are lifted to `β_m`.
    pub fn limit_element(&self, m: usize) -> Option<BorelDesc> {
        match self {
            BorelDesc::SigmaLim { level, seq } | BorelDesc::PiLim { level, seq } => {
                limit_element(seq, m, |t| lift(t, &fund(level, m)))
            }
            _ => None,
        }
    }
}

/// The same set described at the higher level `target`, wrapping in
/// constant sequences of alternating shape.
pub fn lift(d: &BorelDesc, target: &Ordinal) -> BorelDesc {
    let level = d.level();
    if level == *target {
        return d.clone();
    }
    assert!(level < *target, "cannot lift level {level} down to {target}");
    if let BorelDesc::Empty { .. } = d {
        return BorelDesc::Empty { level: target.clone() };
    }
    match target.classify() {
        Class::Successor(p) => {
            let inner = lift(d, &p);
            let shape = inner.shape();
            let seq = Box::new(EventualSeq::constant(inner));
            match shape {
                Shape::Pi => BorelDesc::SigmaSucc { level: target.clone(), seq },
                Shape::Sigma => BorelDesc::PiSucc { level: target.clone(), seq },
            }
        }
        _ => {
            let m = first_index_above(target, &level, |b| b);
            let inner = lift(d, &fund(target, m));
            let shape = inner.shape();
            let seq = Box::new(EventualSeq::new(vec![None; m], Some(inner)));
            match shape {
                Shape::Pi => BorelDesc::SigmaLim { level: target.clone(), seq },
                Shape::Sigma => BorelDesc::PiLim { level: target.clone(), seq },
            }
        }
    }
}

/// Deterministic automaton for the set `d` denotes.
pub fn desc_sem(d: &BorelDesc) -> Result<WordAutomaton, AutomataError> {
    let fold = |items: Vec<&BorelDesc>, union: bool| -> Result<WordAutomaton, AutomataError> {
        let mut acc = if union { nothing() } else { binary() };
        for e in items {
            let s = desc_sem(e)?;
            acc = if union { acc.or(&s)? } else { acc.and(&s)? };
        }
        Ok(acc)
    };
    match d {
        BorelDesc::Closed { aut } | BorelDesc::Open { aut } => Ok(aut.clone()),
        BorelDesc::Empty { .. } => Ok(nothing()),
        BorelDesc::SigmaSucc { seq, .. } => fold(seq.iter_span().collect(), true),
        BorelDesc::PiSucc { seq, .. } => fold(seq.iter_span().collect(), false),
        BorelDesc::SigmaLim { seq, .. } => fold(seq.iter_span().flatten().collect(), true),
        BorelDesc::PiLim { seq, .. } => fold(seq.iter_span().flatten().collect(), false),
    }
}

enum SeqFault {
    FirstEmpty,
    NotMonotone(usize),
}

/// Σ sequences must increase from a nonempty first term, Π sequences
/// decrease. Items carry their sequence index.
fn check_sequence(shape: Shape, items: &[(usize, WordAutomaton)]) -> Result<Option<SeqFault>, AutomataError> {
    if shape == Shape::Sigma && items.first().is_some_and(|(_, s)| s.is_empty()) {
        return Ok(Some(SeqFault::FirstEmpty));
    }
    for w in items.windows(2) {
        let (prev, (n, next)) = (&w[0].1, &w[1]);
        let ok = match shape {
            Shape::Sigma => prev.contains_in(next)?,
            Shape::Pi => next.contains_in(prev)?,
        };
        if !ok {
            return Ok(Some(SeqFault::NotMonotone(*n)));
        }
    }
    Ok(None)
}

/// Elements of level-1 unions must be closed, of level-1 intersections open.
fn kind_ok(outer: Shape, sem: &WordAutomaton) -> bool {
    match outer {
        Shape::Sigma => sem.is_closed(),
        Shape::Pi => sem.is_open(),
    }
}

fn combine(shape: Shape, items: &[(usize, WordAutomaton)]) -> Result<WordAutomaton, AutomataError> {
    let mut acc = match shape {
        Shape::Sigma => nothing(),
        Shape::Pi => binary(),
    };
    for (_, s) in items {
        acc = match shape {
            Shape::Sigma => acc.or(s)?,
            Shape::Pi => acc.and(s)?,
        };
    }
    Ok(acc)
}

pub fn desc_validate(d: &BorelDesc) -> Result<(), Violation> {
    validate_rec(d).map(|_| ())
}

fn validate_rec(d: &BorelDesc) -> Result<WordAutomaton, Violation> {
    let (shape, level, elements): (Shape, &Ordinal, Vec<(usize, &BorelDesc, Ordinal)>) = match d {
        BorelDesc::Closed { aut } | BorelDesc::Open { aut } => {
            if aut.letters() != 2 {
                return Err(Violation::BadAlphabet(aut.letters()));
            }
            if matches!(d, BorelDesc::Closed { .. }) && !aut.is_closed() {
                return Err(Violation::NotClosed);
            }
            if matches!(d, BorelDesc::Open { .. }) && !aut.is_open() {
                return Err(Violation::NotOpen);
            }
            return Ok(aut.clone());
        }
        BorelDesc::Empty { .. } => return Ok(nothing()),
        BorelDesc::SigmaSucc { level, seq } | BorelDesc::PiSucc { level, seq } => {
            let Class::Successor(p) = level.classify() else {
                return Err(Violation::LevelMismatch);
            };
            let shape = if matches!(d, BorelDesc::SigmaSucc { .. }) { Shape::Sigma } else { Shape::Pi };
            (shape, level, seq.iter_span().enumerate().map(|(i, e)| (i, e, p.clone())).collect())
        }
        BorelDesc::SigmaLim { level, seq } | BorelDesc::PiLim { level, seq } => {
            if !level.is_limit() {
                return Err(Violation::LevelMismatch);
            }
            if seq.tail.is_none() {
                return Err(Violation::BadLimitTags);
            }
            let shape = if matches!(d, BorelDesc::SigmaLim { .. }) { Shape::Sigma } else { Shape::Pi };
            let elements = seq
                .iter_span()
                .enumerate()
                .filter_map(|(m, e)| e.as_ref().map(|e| (m, e, fund(level, m))))
                .collect();
            (shape, level, elements)
        }
    };
    let mut sems = Vec::with_capacity(elements.len());
    for (i, e, expect) in elements {
        if e.level() != expect {
            return Err(if level.is_limit() { Violation::BadLimitTags } else { Violation::LevelMismatch });
        }
        let s = validate_rec(e)?;
        if expect.is_zero() && !kind_ok(shape, &s) {
            return Err(Violation::KindMismatch(i));
        }
        sems.push((i, s));
    }
    match check_sequence(shape, &sems)? {
        Some(SeqFault::FirstEmpty) => return Err(Violation::FirstTermEmpty),
        Some(SeqFault::NotMonotone(n)) => return Err(Violation::NotMonotone(n)),
        None => {}
    }
    Ok(combine(shape, &sems)?)
}

impl BranchSetTerm {
    pub fn level(&self) -> Ordinal {
        match self {
            BranchSetTerm::Leaf { .. } => Ordinal::nat(1),
            BranchSetTerm::Empty { level } | BranchSetTerm::Succ { level, .. } | BranchSetTerm::Limit { level, .. } => {
                level.clone()
            }
        }
    }

    /// Shape used when wrapping: leaves by topology, custom bases and mixed
    /// markers as Σ.
    pub fn shape(&self) -> Shape {
        match self {
            BranchSetTerm::Empty { .. } => Shape::Pi,
            BranchSetTerm::Leaf { aut } => {
                if aut.is_closed() {
                    Shape::Pi
                } else {
                    Shape::Sigma
                }
            }
            BranchSetTerm::Succ { base: BaseShape::FullTree, .. } => Shape::Pi,
            BranchSetTerm::Succ { .. } => Shape::Sigma,
            BranchSetTerm::Limit { marker: MarkerSpec::One, .. } => Shape::Pi,
            BranchSetTerm::Limit { .. } => Shape::Sigma,
        }
    }

    pub fn is_empty_term(&self) -> bool {
        matches!(self, BranchSetTerm::Empty { .. })
    }

    /// Part `m` of a limit term; tail copies are lifted to level `1+β_m`.
    pub fn limit_element(&self, m: usize) -> Option<BranchSetTerm> {
        match self {
            BranchSetTerm::Limit { level, parts, .. } => {
                limit_element(parts, m, |t| lift_term(t, &fund(level, m).one_plus()))
            }
            _ => None,
        }
    }
}

/// Term counterpart of [`lift`].
pub fn lift_term(t: &BranchSetTerm, target: &Ordinal) -> BranchSetTerm {
    let level = t.level();
    if level == *target {
        return t.clone();
    }
    assert!(level < *target, "cannot lift level {level} down to {target}");
    if t.is_empty_term() {
        return BranchSetTerm::Empty { level: target.clone() };
    }
    match target.classify() {
        Class::Successor(p) => {
            let inner = lift_term(t, &p);
            let base = match inner.shape() {
                Shape::Pi => BaseShape::AllZero,
                Shape::Sigma => BaseShape::FullTree,
            };
            BranchSetTerm::Succ { level: target.clone(), base, fibers: Box::new(EventualSeq::constant(inner)) }
        }
        _ => {
            let m = first_index_above(target, &level, |b| b.one_plus());
            let inner = lift_term(t, &fund(target, m).one_plus());
            let marker = match inner.shape() {
                Shape::Pi => MarkerSpec::Zero,
                Shape::Sigma => MarkerSpec::One,
            };
            BranchSetTerm::Limit {
                level: target.clone(),
                marker,
                parts: Box::new(EventualSeq::new(vec![None; m], Some(inner))),
            }
        }
    }
}

/// The code `c(H)` of a valid description.
pub fn encode(d: &BorelDesc) -> Result<Code, Violation> {
    desc_validate(d)?;
    Ok(encode_rec(d)?)
}

fn encode_rec(d: &BorelDesc) -> Result<Code, AutomataError> {
    if desc_sem(d)?.is_empty() {
        return Ok(BranchSetTerm::Empty { level: code_level(&d.level()) });
    }
    Ok(match d {
        BorelDesc::Closed { aut } | BorelDesc::Open { aut } => BranchSetTerm::Leaf { aut: aut.clone() },
        BorelDesc::Empty { level } => BranchSetTerm::Empty { level: code_level(level) },
        BorelDesc::SigmaSucc { level, seq } | BorelDesc::PiSucc { level, seq } => {
            let base = if matches!(d, BorelDesc::SigmaSucc { .. }) { BaseShape::AllZero } else { BaseShape::FullTree };
            BranchSetTerm::Succ { level: code_level(level), base, fibers: Box::new(seq.try_map(|_, e| encode_rec(e))?) }
        }
        BorelDesc::SigmaLim { level, seq } | BorelDesc::PiLim { level, seq } => {
            let marker = if matches!(d, BorelDesc::SigmaLim { .. }) { MarkerSpec::Zero } else { MarkerSpec::One };
            BranchSetTerm::Limit {
                level: code_level(level),
                marker,
                parts: Box::new(seq.try_map(|_, e| e.as_ref().map(encode_rec).transpose())?),
            }
        }
    })
}

fn is_zeros(w: &UPWord) -> bool {
    *w == UPWord::zeros()
}

/// Decides whether `t` is a code and, if so, returns the coded description.
pub fn decode(t: &BranchSetTerm) -> Result<BorelDesc, Rejection> {
    decode_rec(t).map(|(d, _)| d)
}

fn decode_rec(t: &BranchSetTerm) -> Result<(BorelDesc, WordAutomaton), Rejection> {
    match t {
        BranchSetTerm::Empty { level } => {
            let level = desc_level(level).ok_or(Rejection::LevelMismatch)?;
            Ok((BorelDesc::Empty { level }, nothing()))
        }
        BranchSetTerm::Leaf { aut } => {
            if aut.letters() != 2 {
                return Err(Rejection::BadAlphabet(aut.letters()));
            }
            if aut.is_closed() {
                Ok((BorelDesc::Closed { aut: aut.clone() }, aut.clone()))
            } else if aut.is_open() {
                Ok((BorelDesc::Open { aut: aut.clone() }, aut.clone()))
            } else {
                Err(Rejection::NotClosedOrOpen)
            }
        }
        BranchSetTerm::Succ { level, base, fibers } => {
            let p = match level.classify() {
                Class::Successor(p) if !p.is_zero() => p,
                _ => return Err(Rejection::LevelMismatch),
            };
            let shape = match base {
                BaseShape::AllZero => Shape::Sigma,
                BaseShape::FullTree => Shape::Pi,
                BaseShape::Custom(w) if is_zeros(w) => Shape::Sigma,
                BaseShape::Custom(_) => return Err(Rejection::BaseNotZeroNotFull),
            };
            let mut descs = Vec::new();
            let mut sems = Vec::new();
            for (i, f) in fibers.iter_span().enumerate() {
                if f.level() != p {
                    return Err(Rejection::LevelMismatch);
                }
                let (d, s) = decode_rec(f).map_err(|r| Rejection::InnerRejection(i, Box::new(r)))?;
                if p == Ordinal::nat(1) && !kind_ok(shape, &s) {
                    return Err(Rejection::KindMismatch(i));
                }
                descs.push(d);
                sems.push((i, s));
            }
            seq_verdict(shape, &sems)?;
            let tail = descs.pop().expect("span is nonempty");
            let seq = Box::new(EventualSeq::new(descs, tail));
            let level = desc_level(level).expect("successor");
            let d = match shape {
                Shape::Sigma => BorelDesc::SigmaSucc { level, seq },
                Shape::Pi => BorelDesc::PiSucc { level, seq },
            };
            Ok((d, combine(shape, &sems)?))
        }
        BranchSetTerm::Limit { level, marker, parts } => {
            if !level.is_limit() {
                return Err(Rejection::LevelMismatch);
            }
            if parts.tail.is_none() {
                return Err(Rejection::SupportNotCofinal);
            }
            let shape = match marker {
                MarkerSpec::Zero => Shape::Sigma,
                MarkerSpec::One => Shape::Pi,
                MarkerSpec::Mixed => return Err(Rejection::MarkerMixed),
            };
            let mut descs = Vec::new();
            let mut sems = Vec::new();
            for (m, part) in parts.iter_span().enumerate() {
                let Some(part) = part else {
                    descs.push(None);
                    continue;
                };
                let beta = fund(level, m);
                if part.level() != beta.one_plus() {
                    return Err(Rejection::LevelMismatch);
                }
                let (d, s) = decode_rec(part).map_err(|r| Rejection::InnerRejection(m, Box::new(r)))?;
                if beta.is_zero() && !kind_ok(shape, &s) {
                    return Err(Rejection::KindMismatch(m));
                }
                descs.push(Some(d));
                sems.push((m, s));
            }
            seq_verdict(shape, &sems)?;
            let tail = descs.pop().expect("span is nonempty");
            let seq = Box::new(EventualSeq::new(descs, tail));
            let d = match shape {
                Shape::Sigma => BorelDesc::SigmaLim { level: level.clone(), seq },
                Shape::Pi => BorelDesc::PiLim { level: level.clone(), seq },
            };
            Ok((d, combine(shape, &sems)?))
        }
    }
}

fn seq_verdict(shape: Shape, sems: &[(usize, WordAutomaton)]) -> Result<(), Rejection> {
    match check_sequence(shape, sems)? {
        Some(SeqFault::FirstEmpty) => Err(Rejection::FirstTermEmpty),
        Some(SeqFault::NotMonotone(n)) => Err(Rejection::SequenceNotMonotone(n)),
        None => Ok(()),
    }
}

/// Equivalence of terms: both fail to be codes, or both code the same set.
pub fn code_equiv(a: &BranchSetTerm, b: &BranchSetTerm) -> bool {
    if a.level() != b.level() {
        return false;
    }
    match (decode(a), decode(b)) {
        (Err(_), Err(_)) => true,
        (Ok(x), Ok(y)) => match (desc_sem(&x), desc_sem(&y)) {
            (Ok(s), Ok(t)) => s.equivalent(&t).unwrap_or(false),
            _ => false,
        },
        _ => false,
    }
}

/// Membership of a branch in the branch set a term denotes.
pub fn branch_in_code(b: &BranchRep, c: &Code) -> Result<bool, CodeOpError> {
    if b.level != c.level() {
        return Err(CodeOpError::LevelMismatch);
    }
    match (c, &b.body) {
        (BranchSetTerm::Empty { .. }, _) => Ok(false),
        (BranchSetTerm::Leaf { aut }, BranchBody::Leaf { word }) => Ok(aut.accepts(word)?),
        (BranchSetTerm::Succ { base, fibers, .. }, BranchBody::Node { base: bb, fibers: bf }) => {
            let base_ok = match base {
                BaseShape::AllZero => is_zeros(bb),
                BaseShape::FullTree => true,
                BaseShape::Custom(w) => w == bb,
            };
            if !base_ok {
                return Ok(false);
            }
            for n in 0..fibers.span().max(bf.span()) {
                if !branch_in_code(bf.get(n), fibers.get(n))? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (BranchSetTerm::Limit { marker, .. }, BranchBody::LimitNode { n, marker: bm, inner }) => {
            let Some(part) = c.limit_element(*n as usize) else {
                return Ok(false);
            };
            let marker_ok = match marker {
                MarkerSpec::Zero => *bm == 0,
                MarkerSpec::One => *bm == 1,
                MarkerSpec::Mixed => *bm <= 1,
            };
            Ok(marker_ok && branch_in_code(inner, &part)?)
        }
        _ => Ok(false),
    }
}

/// Some branch in the set a term denotes, assembled fiber by fiber.
pub fn code_witness(c: &Code) -> Option<BranchRep> {
    match c {
        BranchSetTerm::Empty { .. } => None,
        BranchSetTerm::Leaf { aut } => aut.witness().map(BranchRep::leaf),
        BranchSetTerm::Succ { base, fibers, .. } => {
            let base = match base {
                BaseShape::AllZero | BaseShape::FullTree => UPWord::zeros(),
                BaseShape::Custom(w) => w.clone(),
            };
            let fibers = fibers.try_map(|_, f| code_witness(f).ok_or(()))
                .ok()?;
            Some(BranchRep::node(base, fibers))
        }
        BranchSetTerm::Limit { level, marker, parts } => {
            let bit = u8::from(*marker == MarkerSpec::One);
            (0..parts.span()).find_map(|m| {
                let inner = code_witness(parts.get(m).as_ref()?)?;
                Some(BranchRep::limit(level.clone(), m as u64, bit, inner))
            })
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Op {
    Meet,
    Join,
}

pub fn code_intersect(a: &Code, b: &Code) -> Result<Code, CodeOpError> {
    code_op(a, b, Op::Meet)
}

pub fn code_union(a: &Code, b: &Code) -> Result<Code, CodeOpError> {
    code_op(a, b, Op::Join)
}

fn base_kind(base: &BaseShape) -> Result<Shape, CodeOpError> {
    match base {
        BaseShape::AllZero => Ok(Shape::Sigma),
        BaseShape::FullTree => Ok(Shape::Pi),
        BaseShape::Custom(w) if is_zeros(w) => Ok(Shape::Sigma),
        BaseShape::Custom(_) => Err(CodeOpError::IncompatibleShape),
    }
}

fn marker_kind(marker: MarkerSpec) -> Result<Shape, CodeOpError> {
    match marker {
        MarkerSpec::Zero => Ok(Shape::Sigma),
        MarkerSpec::One => Ok(Shape::Pi),
        MarkerSpec::Mixed => Err(CodeOpError::IncompatibleShape),
    }
}

fn code_op(a: &Code, b: &Code, op: Op) -> Result<Code, CodeOpError> {
    let level = a.level();
    if level != b.level() {
        return Err(CodeOpError::LevelMismatch);
    }
    let empty = || BranchSetTerm::Empty { level: level.clone() };
    match (a, b) {
        (BranchSetTerm::Empty { .. }, other) | (other, BranchSetTerm::Empty { .. }) => {
            Ok(if op == Op::Meet { empty() } else { other.clone() })
        }
        (BranchSetTerm::Leaf { aut: x }, BranchSetTerm::Leaf { aut: y }) => {
            let same_kind = (x.is_closed() && y.is_closed()) || (x.is_open() && y.is_open());
            if !same_kind {
                return Err(CodeOpError::IncompatibleShape);
            }
            let r = if op == Op::Meet { x.and(y)? } else { x.or(y)? };
            Ok(if r.is_empty() { empty() } else { BranchSetTerm::Leaf { aut: r } })
        }
        (BranchSetTerm::Succ { base: ba, fibers: fa, .. }, BranchSetTerm::Succ { base: bb, fibers: fb, .. }) => {
            let shape = base_kind(ba)?;
            if shape != base_kind(bb)? {
                return Err(CodeOpError::IncompatibleShape);
            }
            let e = fa.explicit.len().max(fb.explicit.len());
            let mut items = Vec::with_capacity(e + 1);
            for i in 0..=e {
                items.push(code_op(fa.get(i), fb.get(i), op)?);
            }
            if op == Op::Meet {
                match shape {
                    Shape::Sigma => {
                        // leading empty intersections are dropped
                        let Some(k) = items.iter().position(|t| !t.is_empty_term()) else {
                            return Ok(empty());
                        };
                        items.drain(..k);
                    }
                    Shape::Pi => {
                        if items.iter().any(BranchSetTerm::is_empty_term) {
                            return Ok(empty());
                        }
                    }
                }
            }
            let tail = items.pop().expect("nonempty");
            let base = if shape == Shape::Sigma { BaseShape::AllZero } else { BaseShape::FullTree };
            Ok(BranchSetTerm::Succ { level, base, fibers: Box::new(EventualSeq::new(items, tail)) })
        }
        (BranchSetTerm::Limit { marker: ma, parts: pa, .. }, BranchSetTerm::Limit { marker: mb, parts: pb, .. }) => {
            let shape = marker_kind(*ma)?;
            if shape != marker_kind(*mb)? {
                return Err(CodeOpError::IncompatibleShape);
            }
            let e = pa.explicit.len().max(pb.explicit.len());
            let (mut last_a, mut last_b): (Option<Code>, Option<Code>) = (None, None);
            let mut items: Vec<Option<Code>> = Vec::with_capacity(e + 1);
            for m in 0..=e {
                let target = fund(&level, m).one_plus();
                // missing positions repeat the previous element, lifted
                let current = |x: Option<Code>, last: &mut Option<Code>| match x {
                    Some(x) => {
                        *last = Some(x.clone());
                        Some(x)
                    }
                    None => last.as_ref().map(|l| lift_term(l, &target)),
                };
                let xa = current(a.limit_element(m), &mut last_a);
                let xb = current(b.limit_element(m), &mut last_b);
                let item = match (xa, xb) {
                    (Some(x), Some(y)) => Some(code_op(&x, &y, op)?),
                    (Some(x), None) | (None, Some(x)) if shape == Shape::Sigma && op == Op::Join => Some(x),
                    _ => None,
                };
                let item = match item {
                    Some(t) if t.is_empty_term() && op == Op::Meet => {
                        if shape == Shape::Pi {
                            return Ok(empty());
                        }
                        None
                    }
                    other => other,
                };
                items.push(item);
            }
            let tail = items.pop().expect("nonempty");
            if tail.is_none() {
                return Ok(empty());
            }
            Ok(BranchSetTerm::Limit { level, marker: *ma, parts: Box::new(EventualSeq::new(items, tail)) })
        }
        _ => Err(CodeOpError::IncompatibleShape),
    }
}

#[cfg(test)]
mod tests;

/// A description of the complement. Shapes are swapped at every level, so
/// the result is strictly shaped whenever `d` is. The complement of `Empty`
/// is the full set as a constant Σ sequence.
pub fn desc_complement(d: &BorelDesc) -> BorelDesc {
    fn full(level: &Ordinal) -> BorelDesc {
        match level.classify() {
            Class::Zero => BorelDesc::Closed { aut: binary() },
            Class::Successor(p) => BorelDesc::SigmaSucc { level: level.clone(), seq: Box::new(EventualSeq::constant(full(&p))) },
            Class::Limit => BorelDesc::SigmaLim {
                level: level.clone(),
                seq: Box::new(EventualSeq::constant(Some(full(&fund(level, 0))))),
            },
        }
    }
    match d {
        BorelDesc::Closed { aut } => BorelDesc::Open { aut: aut.complement() },
        BorelDesc::Open { aut } => BorelDesc::Closed { aut: aut.complement() },
        BorelDesc::Empty { level } => full(level),
        BorelDesc::SigmaSucc { level, seq } => BorelDesc::PiSucc { level: level.clone(), seq: Box::new(seq.map(desc_complement)) },
        BorelDesc::PiSucc { level, seq } => BorelDesc::SigmaSucc { level: level.clone(), seq: Box::new(seq.map(desc_complement)) },
        BorelDesc::SigmaLim { level, seq } => {
            BorelDesc::PiLim { level: level.clone(), seq: Box::new(seq.map(|e| e.as_ref().map(desc_complement))) }
        }
        BorelDesc::PiLim { level, seq } => {
            BorelDesc::SigmaLim { level: level.clone(), seq: Box::new(seq.map(|e| e.as_ref().map(desc_complement))) }
        }
    }
}
