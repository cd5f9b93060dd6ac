//! Exact metrics on Cantor space and on countable products of it, the node
//! embeddings `e_α`, and a finite-depth probe of image closedness.
//!
//! Distances are generic over [`Scalar`], implemented for exact rationals
//! only.

use std::collections::BTreeMap;
use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Num;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ordinal::{Class, Ordinal};
use crate::treepower::{restrict, NodeSeq, TNode, UPWord};

/// Exact ordered field elements usable as metric values.
pub trait Scalar: Clone + Debug + Display + PartialOrd + Num {
    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// `2^{-k}`.
    fn half_pow(k: u32) -> Self {
        let mut d = Self::one();
        for _ in 0..k {
            d = d * Self::two();
        }
        Self::one() / d
    }
}

impl Scalar for BigRational {}
impl Scalar for Ratio<i128> {}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("probe bound exceeded ({0} prefixes)")]
    BoundExceeded(usize),
    #[error("position {0} is not an index of the product")]
    BadPosition(Ordinal),
}

/// `2^{-(m+1)}` for the least disagreement `m`, `0` on equal words.
pub fn cantor_dist<S: Scalar>(u: &UPWord, v: &UPWord) -> S {
    match u.first_difference(v) {
        None => S::zero(),
        Some(m) => S::half_pow(m as u32 + 1),
    }
}

/// A point of `∏_{1+α}[T]`; absent coordinates are the all-zero word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductPoint {
    pub coords: BTreeMap<Ordinal, UPWord>,
}

impl ProductPoint {
    pub fn get(&self, p: &Ordinal) -> UPWord {
        self.coords.get(p).cloned().unwrap_or_else(UPWord::zeros)
    }
}

/// Canonical enumeration of the positions below `index`: stage `s` lists
/// `index.positions_below(s)` in increasing order and appends the new ones.
pub struct SlotEnumeration {
    index: Ordinal,
    order: Vec<Ordinal>,
    stage: u64,
}

impl SlotEnumeration {
    pub fn new(index: Ordinal) -> Self {
        SlotEnumeration { index, order: Vec::new(), stage: 0 }
    }

    fn advance(&mut self) {
        self.stage += 1;
        for p in self.index.positions_below(self.stage) {
            if !self.order.contains(&p) {
                self.order.push(p);
            }
        }
    }

    /// Slot number of `p`.
    pub fn slot(&mut self, p: &Ordinal) -> Result<usize, TopologyError> {
        if *p >= self.index {
            return Err(TopologyError::BadPosition(p.clone()));
        }
        loop {
            if let Some(i) = self.order.iter().position(|q| q == p) {
                return Ok(i);
            }
            let before = self.order.len();
            self.advance();
            if self.order.len() == before && self.index.is_finite() {
                return Err(TopologyError::BadPosition(p.clone()));
            }
        }
    }

    /// The first `n` positions.
    pub fn prefix(&mut self, n: usize) -> Vec<Ordinal> {
        let total = if self.index.is_finite() { self.index.as_nat().unwrap_or(0) as usize } else { usize::MAX };
        while self.order.len() < n.min(total) {
            self.advance();
        }
        self.order.iter().take(n).cloned().collect()
    }
}

/// `Σ 2^{-(n+1)} ρ_n(f(n), g(n))` over the canonical slot enumeration of the
/// positions below `index`. Only finitely many coordinates differ, so the
/// sum is finite and exact.
pub fn product_dist<S: Scalar>(f: &ProductPoint, g: &ProductPoint, index: &Ordinal) -> Result<S, TopologyError> {
    product_dist_with(f, g, index, cantor_dist::<S>)
}

/// Product distance over an arbitrary coordinate metric bounded by 1.
pub fn product_dist_with<S: Scalar>(
    f: &ProductPoint,
    g: &ProductPoint,
    index: &Ordinal,
    metric: impl Fn(&UPWord, &UPWord) -> S,
) -> Result<S, TopologyError> {
    let mut slots = SlotEnumeration::new(index.clone());
    let mut total = S::zero();
    let positions: std::collections::BTreeSet<&Ordinal> = f.coords.keys().chain(g.coords.keys()).collect();
    for p in positions {
        let (a, b) = (f.get(p), g.get(p));
        if a != b {
            let n = slots.slot(p)?;
            total = total + S::half_pow(n as u32 + 1) * metric(&a, &b);
        }
    }
    Ok(total)
}

/// `e_α`: `e_1` is the identity, `e_{β+1}(t) = (t(β), e_β(t↾β))`, and at a
/// limit the union of the embeddings of the restrictions.
pub fn node_embed(t: &NodeSeq) -> BTreeMap<Ordinal, TNode> {
    let level = t.level();
    match level.classify() {
        Class::Zero => BTreeMap::new(),
        Class::Successor(b) if b.is_zero() => {
            let mut m = BTreeMap::new();
            let v = t.get(&Ordinal::zero());
            if !v.is_root() {
                m.insert(Ordinal::zero(), v);
            }
            m
        }
        Class::Successor(b) => {
            let mut m = node_embed(&restrict(t, &b).expect("below level"));
            let v = t.get(&b);
            if !v.is_root() {
                m.insert(b, v);
            }
            m
        }
        Class::Limit => {
            let start = t.lambda_tail_start();
            let beta = if start.is_zero() { Ordinal::nat(1) } else { start };
            node_embed(&restrict(t, &beta).expect("below level"))
        }
    }
}

/// Shape of the image in one coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlotShape {
    Free,
    Fixed(UPWord),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProbeVariant {
    /// All branches of `T^level`.
    Unrestricted,
    /// Branches whose top coordinate is the leftmost branch of `T`.
    LeftmostTop,
}

/// A prefix outside the image together with the basic open set around it
/// that misses the image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub prefix: Vec<(Ordinal, TNode)>,
    pub open_set: Vec<(Ordinal, TNode)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub level: Ordinal,
    pub depth: usize,
    pub variant: ProbeVariant,
    pub prefixes: usize,
    pub non_image: usize,
    pub witnessed: usize,
    pub witnesses: Vec<Witness>,
    pub counterexamples: Vec<Vec<(Ordinal, TNode)>>,
}

impl ProbeReport {
    pub fn all_witnessed(&self) -> bool {
        self.counterexamples.is_empty() && self.witnessed == self.non_image
    }
}

/// Image shape of `F_α` per coordinate. Inductively every coordinate of the
/// unrestricted image is free; the leftmost variant fixes the top one.
pub fn image_shape(level: &Ordinal, variant: ProbeVariant, probe: u64) -> Vec<(Ordinal, SlotShape)> {
    let positions = SlotEnumeration::new(level.clone()).prefix_positions(probe);
    let top = level.pred();
    positions
        .into_iter()
        .map(|p| {
            let shape = match (variant, &top) {
                (ProbeVariant::LeftmostTop, Some(t)) if *t == p && !level.is_limit() => SlotShape::Fixed(UPWord::zeros()),
                _ => SlotShape::Free,
            };
            (p, shape)
        })
        .collect()
}

impl SlotEnumeration {
    fn prefix_positions(&mut self, probe: u64) -> Vec<Ordinal> {
        if self.index.is_finite() {
            let n = self.index.as_nat().unwrap_or(0) as usize;
            return self.prefix(n);
        }
        self.index.positions_below(probe)
    }
}

fn extends(prefix: &TNode, shape: &SlotShape) -> bool {
    match shape {
        SlotShape::Free => true,
        SlotShape::Fixed(w) => w.node(prefix.len()) == *prefix,
    }
}

/// Enumerates every family of depth-`depth` coordinate prefixes and, for each
/// one not extendable to an image point, exhibits a basic open set disjoint
/// from the image.
pub fn image_closed_probe(
    level: &Ordinal,
    depth: usize,
    variant: ProbeVariant,
    probe: u64,
    cap: usize,
) -> Result<ProbeReport, TopologyError> {
    let shape = image_shape(level, variant, probe);
    let per_slot = 1usize << depth;
    let total = per_slot.checked_pow(shape.len() as u32).unwrap_or(usize::MAX);
    if total > cap {
        return Err(TopologyError::BoundExceeded(total));
    }
    let mut report = ProbeReport {
        level: level.clone(),
        depth,
        variant,
        prefixes: total,
        non_image: 0,
        witnessed: 0,
        witnesses: Vec::new(),
        counterexamples: Vec::new(),
    };
    for code in 0..total {
        let mut rest = code;
        let prefix: Vec<(Ordinal, TNode)> = shape
            .iter()
            .map(|(p, _)| {
                let bits = rest % per_slot;
                rest /= per_slot;
                (p.clone(), TNode((0..depth).map(|i| (bits >> i & 1) as u8).collect()))
            })
            .collect();
        let in_image = prefix.iter().zip(&shape).all(|((_, t), (_, s))| extends(t, s));
        if in_image {
            continue;
        }
        report.non_image += 1;
        // the open set keeps only the offending coordinates
        let open_set: Vec<(Ordinal, TNode)> = prefix
            .iter()
            .zip(&shape)
            .filter(|((_, t), (_, s))| !extends(t, s))
            .map(|((p, t), _)| (p.clone(), t.clone()))
            .collect();
        if open_set_misses_image(&open_set, &shape) {
            report.witnessed += 1;
            report.witnesses.push(Witness { prefix, open_set });
        } else {
            report.counterexamples.push(prefix);
        }
    }
    Ok(report)
}

/// A cylinder misses the image iff some constrained coordinate is fixed in
/// the image and the cylinder's node is not on that fixed branch.
fn open_set_misses_image(open_set: &[(Ordinal, TNode)], shape: &[(Ordinal, SlotShape)]) -> bool {
    open_set.iter().any(|(p, t)| {
        shape
            .iter()
            .find(|(q, _)| q == p)
            .is_some_and(|(_, s)| matches!(s, SlotShape::Fixed(w) if w.node(t.len()) != *t))
    })
}

/// Exact distance helper for the default scalar.
pub fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
