//! Finite partial orders, the `∼` relation and the well-level degree.
//!
//! Posets are stored as bitmasks over at most 32 elements: `down[i]` is the
//! set of elements below or equal to `i`. Two readings of `∼` are provided,
//! see [`SimVariant`].

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

mod oracle;
pub use oracle::wl_oracle;

pub type Mask = u32;

pub const MAX_ELEMENTS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    names: Vec<String>,
    down: Vec<Mask>,
    up: Vec<Mask>,
}

/// `AsymmetricLiteral` compares only the elements below `p` and `q` outside
/// the interval; `SymmetricAmended` also compares the elements above.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SimVariant {
    AsymmetricLiteral,
    SymmetricAmended,
}

impl SimVariant {
    pub const ALL: [SimVariant; 2] = [SimVariant::AsymmetricLiteral, SimVariant::SymmetricAmended];
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("cover relation has a cycle: {}", .0.join(" < "))]
    CycleDetected(Vec<String>),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("too many elements ({0}, at most {MAX_ELEMENTS})")]
    TooLarge(usize),
    #[error("relation is not a partial order")]
    NotAnOrder,
}

/// On-disk poset description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

fn bits(m: Mask) -> impl Iterator<Item = usize> {
    (0..MAX_ELEMENTS).filter(move |i| m >> i & 1 == 1)
}

fn full(n: usize) -> Mask {
    if n == MAX_ELEMENTS {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

impl FinitePoset {
    /// Reflexive-transitive closure of the cover pairs `(lower, upper)`.
    pub fn build<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self, PosetError> {
        let n = elements.len();
        if n > MAX_ELEMENTS {
            return Err(PosetError::TooLarge(n));
        }
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(name.clone()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| PosetError::UnknownElement(s.as_ref().to_string()))
        };
        let mut succ = vec![Vec::new(); n];
        for (a, b) in covers {
            succ[lookup(a)?].push(lookup(b)?);
        }
        if let Some(cycle) = find_cycle(&succ) {
            return Err(PosetError::CycleDetected(cycle.into_iter().map(|i| names[i].clone()).collect()));
        }
        let mut down: Vec<Mask> = (0..n).map(|i| 1 << i).collect();
        for (a, outs) in succ.iter().enumerate() {
            for &b in outs {
                down[b] |= 1 << a;
            }
        }
        // closure by repeated propagation; n is small
        loop {
            let mut changed = false;
            for i in 0..n {
                let mut acc = down[i];
                for j in bits(down[i]) {
                    acc |= down[j];
                }
                if acc != down[i] {
                    down[i] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Ok(Self::from_down(names, down))
    }

    pub fn from_file(file: &PosetFile) -> Result<Self, PosetError> {
        let covers: Vec<(&str, &str)> =
            file.covers.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let elements: Vec<&str> = file.elements.iter().map(String::as_str).collect();
        Self::build(&elements, &covers)
    }

    /// From down-set masks; validates that they form a partial order.
    pub fn from_down_masks(names: Vec<String>, down: Vec<Mask>) -> Result<Self, PosetError> {
        let n = down.len();
        if n > MAX_ELEMENTS {
            return Err(PosetError::TooLarge(n));
        }
        for i in 0..n {
            if down[i] >> i & 1 == 0 || down[i] & !full(n) != 0 {
                return Err(PosetError::NotAnOrder);
            }
            for j in bits(down[i]) {
                if j != i && down[j] >> i & 1 == 1 {
                    return Err(PosetError::NotAnOrder);
                }
                if down[j] & !down[i] != 0 {
                    return Err(PosetError::NotAnOrder);
                }
            }
        }
        Ok(Self::from_down(names, down))
    }

    fn from_down(names: Vec<String>, down: Vec<Mask>) -> Self {
        let n = down.len();
        let mut up = vec![0; n];
        for (i, &d) in down.iter().enumerate() {
            for j in bits(d) {
                up[j] |= 1 << i;
            }
        }
        FinitePoset { names, down, up }
    }

    pub fn len(&self) -> usize {
        self.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.down.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize, PosetError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| PosetError::UnknownElement(name.to_string()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b] >> a & 1 == 1
    }

    pub fn down_mask(&self, a: usize) -> Mask {
        self.down[a]
    }

    pub fn up_mask(&self, a: usize) -> Mask {
        self.up[a]
    }

    pub fn all(&self) -> Mask {
        full(self.len())
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// `[p,q] = {r : p ≤ r ≤ q}` as a mask.
    pub fn interval_mask(&self, p: usize, q: usize) -> Mask {
        self.up[p] & self.down[q]
    }

    pub fn interval(&self, p: &str, q: &str) -> Result<Vec<String>, PosetError> {
        let (p, q) = (self.index_of(p)?, self.index_of(q)?);
        Ok(bits(self.interval_mask(p, q)).map(|i| self.names[i].clone()).collect())
    }

    pub fn is_chain(&self, m: Mask) -> bool {
        bits(m).all(|a| {
            let cmp = self.down[a] | self.up[a];
            m & !cmp == 0
        })
    }

    pub fn is_downset(&self, m: Mask) -> bool {
        bits(m).all(|a| self.down[a] & !m == 0)
    }

    /// The relation `p ∼ q` inside the downward closed part `within`.
    pub fn sim_in(&self, within: Mask, p: usize, q: usize, v: SimVariant) -> bool {
        if !self.comparable(p, q) {
            return false;
        }
        let iv = (self.interval_mask(p, q) | self.interval_mask(q, p)) & within;
        if !self.is_chain(iv) {
            return false;
        }
        let outside = within & !iv;
        if (self.down[p] ^ self.down[q]) & outside != 0 {
            return false;
        }
        match v {
            SimVariant::AsymmetricLiteral => true,
            SimVariant::SymmetricAmended => (self.up[p] ^ self.up[q]) & outside == 0,
        }
    }

    pub fn sim(&self, p: &str, q: &str, v: SimVariant) -> Result<bool, PosetError> {
        let (p, q) = (self.index_of(p)?, self.index_of(q)?);
        Ok(self.sim_in(self.all(), p, q, v))
    }

    /// Sub-poset on the elements of `m`, keeping names.
    pub fn restrict(&self, m: Mask) -> FinitePoset {
        let keep: Vec<usize> = bits(m).filter(|&i| i < self.len()).collect();
        let mut pos = vec![usize::MAX; self.len()];
        for (k, &i) in keep.iter().enumerate() {
            pos[i] = k;
        }
        let down = keep
            .iter()
            .map(|&i| bits(self.down[i] & m).fold(0, |acc, j| acc | 1 << pos[j]))
            .collect();
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        Self::from_down(names, down)
    }

    /// All downward closed subsets, as masks.
    pub fn downsets(&self) -> Vec<Mask> {
        let mut out = vec![0];
        // grow by adding minimal elements of the complement, deduplicated
        let mut seen: HashSet<Mask> = HashSet::from([0]);
        let mut frontier = vec![0];
        while let Some(d) = frontier.pop() {
            for i in 0..self.len() {
                if d >> i & 1 == 0 && self.down[i] & !(d | 1 << i) == 0 {
                    let e = d | 1 << i;
                    if seen.insert(e) {
                        out.push(e);
                        frontier.push(e);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn to_file(&self) -> PosetFile {
        let mut covers = Vec::new();
        for b in 0..self.len() {
            for a in bits(self.down[b] & !(1 << b)) {
                let between = self.up[a] & self.down[b] & !(1 << a) & !(1 << b);
                if between == 0 {
                    covers.push((self.names[a].clone(), self.names[b].clone()));
                }
            }
        }
        PosetFile { elements: self.names.clone(), covers }
    }
}

fn find_cycle(succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        White,
        Grey,
        Black,
    }
    fn visit(v: usize, succ: &[Vec<usize>], mark: &mut [Mark], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        mark[v] = Mark::Grey;
        stack.push(v);
        for &w in &succ[v] {
            match mark[w] {
                Mark::Grey => {
                    let start = stack.iter().position(|&x| x == w).expect("on stack");
                    let mut cyc = stack[start..].to_vec();
                    cyc.push(w);
                    return Some(cyc);
                }
                Mark::White => {
                    if let Some(c) = visit(w, succ, mark, stack) {
                        return Some(c);
                    }
                }
                Mark::Black => {}
            }
        }
        stack.pop();
        mark[v] = Mark::Black;
        None
    }
    let mut mark = vec![Mark::White; succ.len()];
    for v in 0..succ.len() {
        if mark[v] == Mark::White {
            let mut stack = Vec::new();
            if let Some(c) = visit(v, succ, &mut mark, &mut stack) {
                return Some(c);
            }
        }
    }
    None
}

/// Well-level degree calculator with memoization over downsets.
pub struct WlEngine<'a> {
    poset: &'a FinitePoset,
    variant: SimVariant,
    memo: HashMap<Mask, i32>,
}

impl<'a> WlEngine<'a> {
    pub fn new(poset: &'a FinitePoset, variant: SimVariant) -> Self {
        WlEngine { poset, variant, memo: HashMap::new() }
    }

    /// Degree of the downward closed sub-order `d`.
    pub fn degree_of(&mut self, d: Mask) -> i32 {
        if d == 0 {
            return -1;
        }
        if let Some(&v) = self.memo.get(&d) {
            return v;
        }
        let p = self.poset;
        let mut worst = -1;
        for x in bits(d) {
            let mut best = i32::MAX;
            for q in bits(p.down[x] & d) {
                if p.sim_in(d, x, q, self.variant) {
                    let below = p.down[q] & !(1 << q);
                    best = best.min(self.degree_of(below));
                }
            }
            worst = worst.max(best);
        }
        let v = worst + 1;
        self.memo.insert(d, v);
        v
    }
}

/// `wl(P)`; `-1` for the empty order.
pub fn wl_degree(p: &FinitePoset, v: SimVariant) -> i32 {
    WlEngine::new(p, v).degree_of(p.all())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WlReport {
    pub literal: i32,
    pub amended: i32,
    pub sim_pairs_literal: Vec<(String, String)>,
    pub sim_pairs_amended: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paper_claim: Option<i32>,
    /// Set when a claimed value exists and the literal engine disagrees.
    pub discrepancy: bool,
}

pub fn wl_report(p: &FinitePoset, claim: Option<i32>) -> WlReport {
    let pairs = |v| {
        let mut out = Vec::new();
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                if p.sim_in(p.all(), a, b, v) {
                    out.push((p.names[a].clone(), p.names[b].clone()));
                }
            }
        }
        out
    };
    let literal = wl_degree(p, SimVariant::AsymmetricLiteral);
    WlReport {
        literal,
        amended: wl_degree(p, SimVariant::SymmetricAmended),
        sim_pairs_literal: pairs(SimVariant::AsymmetricLiteral),
        sim_pairs_amended: pairs(SimVariant::SymmetricAmended),
        paper_claim: claim,
        discrepancy: claim.is_some_and(|c| c != literal),
    }
}

/// Named posets with their stated degrees.
pub struct CatalogEntry {
    pub name: &'static str,
    pub poset: FinitePoset,
    pub claim: i32,
}

fn named(n: usize, prefix: &str) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn chain(n: usize) -> FinitePoset {
    let names = named(n, "c");
    let covers: Vec<(String, String)> =
        (1..n).map(|i| (names[i - 1].clone(), names[i].clone())).collect();
    FinitePoset::build(&names, &covers).expect("chain")
}

pub fn antichain(n: usize) -> FinitePoset {
    let names = named(n, "a");
    FinitePoset::build::<String>(&names, &[]).expect("antichain")
}

pub fn v_shape() -> FinitePoset {
    FinitePoset::build(&["p0", "p1", "p2"], &[("p0", "p1"), ("p0", "p2")]).expect("v")
}

pub fn lambda_shape() -> FinitePoset {
    FinitePoset::build(&["p0", "p1", "p2"], &[("p0", "p2"), ("p1", "p2")]).expect("lambda")
}

/// Complete binary tree with `depth` levels, root at the bottom.
pub fn binary_tree(depth: usize, prefix: &str) -> (Vec<String>, Vec<(String, String)>) {
    let n = (1usize << depth) - 1;
    let names = named(n, prefix);
    let mut covers = Vec::new();
    for i in 1..n {
        covers.push((names[(i - 1) / 2].clone(), names[i].clone()));
    }
    (names, covers)
}

/// Lexicographic sum `T_0 + … + T_{k-1}` of binary trees of the given depth.
pub fn tree_lex_sum(k: usize, depth: usize) -> FinitePoset {
    let mut names = Vec::new();
    let mut covers = Vec::new();
    let mut prev_leaves: Vec<String> = Vec::new();
    for t in 0..k {
        let (ns, cs) = binary_tree(depth, &format!("t{t}_"));
        let root = ns[0].clone();
        for leaf in &prev_leaves {
            covers.push((leaf.clone(), root.clone()));
        }
        let first_leaf = (1usize << (depth - 1)) - 1;
        prev_leaves = ns[first_leaf..].to_vec();
        names.extend(ns);
        covers.extend(cs);
    }
    FinitePoset::build(&names, &covers).expect("lex sum")
}

/// A tree with a new top element above everything.
pub fn tree_with_top(depth: usize) -> FinitePoset {
    let (mut names, mut covers) = binary_tree(depth, "t");
    let first_leaf = (1usize << (depth - 1)) - 1;
    for leaf in names[first_leaf..].to_vec() {
        covers.push((leaf, "top".to_string()));
    }
    names.push("top".to_string());
    FinitePoset::build(&names, &covers).expect("tree with top")
}

pub fn catalog() -> Vec<CatalogEntry> {
    let tree = {
        let (ns, cs) = binary_tree(3, "t");
        FinitePoset::build(&ns, &cs).expect("tree")
    };
    vec![
        CatalogEntry { name: "empty", poset: antichain(0), claim: -1 },
        CatalogEntry { name: "chain-4", poset: chain(4), claim: 0 },
        CatalogEntry { name: "antichain-2", poset: antichain(2), claim: 0 },
        CatalogEntry { name: "v-shape", poset: v_shape(), claim: 1 },
        CatalogEntry { name: "binary-tree-3", poset: tree, claim: 1 },
        CatalogEntry { name: "lambda-shape", poset: lambda_shape(), claim: 1 },
        CatalogEntry { name: "tree-with-top", poset: tree_with_top(3), claim: 2 },
        CatalogEntry { name: "lex-sum-2-trees", poset: tree_lex_sum(2, 3), claim: 2 },
        CatalogEntry { name: "lex-sum-3-trees", poset: tree_lex_sum(3, 2), claim: 3 },
    ]
}

/// Relabelling-invariant key of a poset: the minimal adjacency code over all
/// orderings compatible with a refined element colouring.
pub fn canonical_code(p: &FinitePoset) -> Vec<u64> {
    let n = p.len();
    // colour refinement
    let mut colour: Vec<u64> = (0..n)
        .map(|i| ((p.down[i].count_ones() as u64) << 8) | p.up[i].count_ones() as u64)
        .collect();
    for _ in 0..n {
        let mut sig: Vec<(u64, Vec<u64>, Vec<u64>)> = (0..n)
            .map(|i| {
                let mut below: Vec<u64> = bits(p.down[i] & !(1 << i)).map(|j| colour[j]).collect();
                let mut above: Vec<u64> = bits(p.up[i] & !(1 << i)).map(|j| colour[j]).collect();
                below.sort_unstable();
                above.sort_unstable();
                (colour[i], below, above)
            })
            .collect();
        let mut distinct = sig.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<u64> = sig
            .iter_mut()
            .map(|s| distinct.binary_search(s).expect("present") as u64)
            .collect();
        let before = {
            let mut c = colour.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        let after = distinct.len();
        colour = next;
        if after == before {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| colour[i]);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match classes.last_mut() {
            Some(c) if colour[c[0]] == colour[i] => c.push(i),
            _ => classes.push(vec![i]),
        }
    }
    let mut best: Option<Vec<u64>> = None;
    let mut perm = Vec::with_capacity(n);
    permute_classes(p, &classes, 0, &mut perm, &mut best);
    let mut key = best.unwrap_or_default();
    key.insert(0, n as u64);
    key
}

fn permute_classes(
    p: &FinitePoset,
    classes: &[Vec<usize>],
    k: usize,
    perm: &mut Vec<usize>,
    best: &mut Option<Vec<u64>>,
) {
    if k == classes.len() {
        let n = perm.len();
        let mut code = vec![0u64; (n * n).div_ceil(64).max(1)];
        for (a, &i) in perm.iter().enumerate() {
            for (b, &j) in perm.iter().enumerate() {
                if p.leq(i, j) {
                    let bit = a * n + b;
                    code[bit / 64] |= 1 << (bit % 64);
                }
            }
        }
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    let mut class = classes[k].clone();
    heap_permutations(&mut class, &mut |c| {
        let before = perm.len();
        perm.extend_from_slice(c);
        permute_classes(p, classes, k + 1, perm, best);
        perm.truncate(before);
    });
}

fn heap_permutations(items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    fn rec(k: usize, items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            f(items);
            return;
        }
        rec(k - 1, items, f);
        for i in 0..k - 1 {
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
            rec(k - 1, items, f);
        }
    }
    let k = items.len();
    rec(k, items, f);
}

/// All partial orders on `n` elements up to isomorphism. Each order on `n+1`
/// elements arises from one on `n` by adding a maximal element above a downset.
pub fn posets_up_to_iso(max_n: usize) -> Vec<Vec<FinitePoset>> {
    let mut levels: Vec<Vec<FinitePoset>> = vec![vec![antichain(0)]];
    for n in 0..max_n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for p in &levels[n] {
            for d in p.downsets() {
                let mut down = p.down.clone();
                down.push(d | 1 << n);
                let q = FinitePoset::from_down(named(n + 1, "e"), down);
                if seen.insert(canonical_code(&q)) {
                    next.push(q);
                }
            }
        }
        levels.push(next);
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;

    use SimVariant::*;

    #[test]
    fn build_closes_transitively() {
        let p = FinitePoset::build(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
    }

    #[test]
    fn build_detects_cycle() {
        let err = FinitePoset::build(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        match err {
            PosetError::CycleDetected(c) => {
                assert_eq!(c.first(), c.last());
                assert!(c.len() >= 3);
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn build_v_shape() {
        let p = v_shape();
        assert!(p.leq(0, 1) && p.leq(0, 2) && !p.comparable(1, 2));
    }

    #[test]
    fn intervals() {
        let p = FinitePoset::build(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(p.interval("a", "c").unwrap(), vec!["a", "b", "c"]);
        assert!(p.interval("c", "a").unwrap().is_empty());
        assert_eq!(p.interval("b", "b").unwrap(), vec!["b"]);
        let v = v_shape();
        assert!(v.interval("p1", "p2").unwrap().is_empty());
        assert!(matches!(v.interval("p1", "zz"), Err(PosetError::UnknownElement(_))));
    }

    #[test]
    fn sim_examples() {
        let v = v_shape();
        assert!(v.sim("p0", "p1", AsymmetricLiteral).unwrap());
        assert!(!v.sim("p0", "p1", SymmetricAmended).unwrap());
        let l = lambda_shape();
        for var in SimVariant::ALL {
            assert!(!l.sim("p0", "p2", var).unwrap());
        }
    }

    #[test]
    fn wl_examples() {
        assert_eq!(wl_degree(&antichain(0), AsymmetricLiteral), -1);
        assert_eq!(wl_degree(&chain(5), AsymmetricLiteral), 0);
        for var in SimVariant::ALL {
            assert_eq!(wl_degree(&lambda_shape(), var), 1);
        }
        assert_eq!(wl_degree(&v_shape(), AsymmetricLiteral), 0);
        assert_eq!(wl_degree(&v_shape(), SymmetricAmended), 1);
    }

    #[test]
    fn report_flags_v_shape() {
        let r = wl_report(&v_shape(), Some(1));
        assert_eq!((r.literal, r.amended, r.discrepancy), (0, 1, true));
        let r = wl_report(&antichain(2), Some(0));
        assert_eq!((r.literal, r.amended, r.discrepancy), (0, 0, false));
    }

    #[test]
    fn oracle_agrees_up_to_five() {
        for level in posets_up_to_iso(5) {
            for p in level {
                for v in SimVariant::ALL {
                    assert_eq!(wl_degree(&p, v), wl_oracle(&p, v), "{:?}", p.to_file());
                }
            }
        }
        for e in catalog() {
            for v in SimVariant::ALL {
                assert_eq!(wl_degree(&e.poset, v), wl_oracle(&e.poset, v), "{}", e.name);
            }
        }
    }

    #[test]
    fn downsets_of_v() {
        // ∅, {p0}, {p0,p1}, {p0,p2}, all
        assert_eq!(v_shape().downsets().len(), 5);
    }

    #[test]
    fn restrict_keeps_order() {
        let p = chain(4);
        let q = p.restrict(0b1010);
        assert_eq!(q.len(), 2);
        assert!(q.leq(0, 1));
    }

    #[test]
    fn small_poset_counts() {
        // unlabeled posets: 1, 1, 2, 5, 16, 63
        let levels = posets_up_to_iso(5);
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn file_round_trip() {
        let p = tree_with_top(2);
        let q = FinitePoset::from_file(&p.to_file()).unwrap();
        assert_eq!(p, q);
    }
}
