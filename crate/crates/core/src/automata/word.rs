//! Deterministic and nondeterministic parity automata on ω-words.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::graph::{is_nontrivial, path_labels, sccs};
use super::AutomataError;
use crate::treepower::UPWord;

/// Deterministic parity word automaton with priorities on states.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawWordAutomaton")]
pub struct WordAutomaton {
    letters: usize,
    initial: usize,
    transitions: Vec<Vec<usize>>,
    priorities: Vec<u32>,
}

#[derive(Deserialize)]
struct RawWordAutomaton {
    letters: usize,
    initial: usize,
    transitions: Vec<Vec<usize>>,
    priorities: Vec<u32>,
}

impl TryFrom<RawWordAutomaton> for WordAutomaton {
    type Error = AutomataError;

    fn try_from(r: RawWordAutomaton) -> Result<Self, AutomataError> {
        WordAutomaton::new(r.letters, r.initial, r.transitions, r.priorities)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductMode {
    And,
    Or,
}

impl WordAutomaton {
    pub fn new(
        letters: usize,
        initial: usize,
        transitions: Vec<Vec<usize>>,
        priorities: Vec<u32>,
    ) -> Result<Self, AutomataError> {
        let a = WordAutomaton { letters, initial, transitions, priorities };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<(), AutomataError> {
        let n = self.transitions.len();
        if n == 0 || self.initial >= n {
            return Err(AutomataError::Malformed("no initial state".into()));
        }
        if self.priorities.len() != n {
            return Err(AutomataError::Malformed("priority count differs from state count".into()));
        }
        if self.letters == 0 {
            return Err(AutomataError::Malformed("empty alphabet".into()));
        }
        for (q, row) in self.transitions.iter().enumerate() {
            if row.len() != self.letters {
                return Err(AutomataError::Malformed(format!("state {q} is not total")));
            }
            if let Some(t) = row.iter().find(|&&t| t >= n) {
                return Err(AutomataError::Malformed(format!("state {q} has target {t}")));
            }
        }
        Ok(())
    }

    pub fn from_fn(
        letters: usize,
        states: usize,
        initial: usize,
        step: impl Fn(usize, usize) -> usize,
        prio: impl Fn(usize) -> u32,
    ) -> Self {
        let transitions = (0..states).map(|q| (0..letters).map(|a| step(q, a)).collect()).collect();
        let priorities = (0..states).map(prio).collect();
        WordAutomaton::new(letters, initial, transitions, priorities).expect("well-formed by construction")
    }

    pub fn universal(letters: usize) -> Self {
        Self::from_fn(letters, 1, 0, |_, _| 0, |_| 0)
    }

    pub fn empty(letters: usize) -> Self {
        Self::from_fn(letters, 1, 0, |_, _| 0, |_| 1)
    }

    /// Safety automaton: runs are rejected once they hit a state not in
    /// `live`; the dead states are collapsed into one sink.
    pub fn safety(letters: usize, states: usize, initial: usize, step: impl Fn(usize, usize) -> usize, live: impl Fn(usize) -> bool) -> Self {
        let sink = states;
        Self::from_fn(
            letters,
            states + 1,
            if live(initial) { initial } else { sink },
            |q, a| {
                if q == sink {
                    return sink;
                }
                let t = step(q, a);
                if live(t) {
                    t
                } else {
                    sink
                }
            },
            |q| if q == sink { 1 } else { 0 },
        )
    }

    /// Words whose first `prefixes[0].len()` letters form one of `prefixes`;
    /// all prefixes must have the same length.
    pub fn cylinder(letters: usize, prefixes: &[Vec<u8>]) -> Self {
        let k = prefixes.first().map_or(0, Vec::len);
        // states: trie nodes of the prefixes plus accept and reject sinks
        let mut trie: Vec<HashMap<usize, usize>> = vec![HashMap::new()];
        let mut depth = vec![0usize];
        for p in prefixes {
            let mut cur = 0;
            for &a in p {
                cur = match trie[cur].get(&(a as usize)) {
                    Some(&t) => t,
                    None => {
                        trie.push(HashMap::new());
                        depth.push(depth[cur] + 1);
                        let t = trie.len() - 1;
                        trie[cur].insert(a as usize, t);
                        t
                    }
                };
            }
        }
        let n = trie.len();
        let (acc, rej) = (n, n + 1);
        Self::from_fn(
            letters,
            n + 2,
            if k == 0 && !prefixes.is_empty() { acc } else if prefixes.is_empty() { rej } else { 0 },
            |q, a| {
                if q >= n {
                    return q;
                }
                match trie[q].get(&a) {
                    Some(&t) if depth[t] == k => acc,
                    Some(&t) => t,
                    None => rej,
                }
            },
            |q| if q == rej { 1 } else { 0 },
        )
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn states(&self) -> usize {
        self.transitions.len()
    }

    pub fn step(&self, q: usize, a: usize) -> usize {
        self.transitions[q][a]
    }

    pub fn priority(&self, q: usize) -> u32 {
        self.priorities[q]
    }

    pub fn priorities(&self) -> &[u32] {
        &self.priorities
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.transitions
    }

    pub fn run(&self, word: &[u8]) -> usize {
        word.iter().fold(self.initial, |q, &a| self.step(q, a as usize))
    }

    fn check_word(&self, w: &UPWord) -> Result<(), AutomataError> {
        if w.max_letter() as usize >= self.letters {
            return Err(AutomataError::AlphabetMismatch(w.max_letter() as usize + 1, self.letters));
        }
        Ok(())
    }

    /// Least priority seen infinitely often on `w`, from state `from`.
    pub fn limit_priority_from(&self, from: usize, w: &UPWord) -> u32 {
        let q = w.prefix().iter().fold(from, |q, &a| self.step(q, a as usize));
        // state at each period boundary until one repeats
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut boundaries = vec![q];
        let mut cur = q;
        loop {
            if let Some(&start) = seen.get(&cur) {
                let mut min = u32::MAX;
                let mut s = boundaries[start];
                for _ in start..boundaries.len() - 1 {
                    for &a in w.period() {
                        s = self.step(s, a as usize);
                        min = min.min(self.priority(s));
                    }
                }
                return min;
            }
            seen.insert(cur, boundaries.len() - 1);
            for &a in w.period() {
                cur = self.step(cur, a as usize);
            }
            boundaries.push(cur);
        }
    }

    pub fn accepts(&self, w: &UPWord) -> Result<bool, AutomataError> {
        self.check_word(w)?;
        Ok(self.limit_priority_from(self.initial, w) % 2 == 0)
    }

    pub fn complement(&self) -> Self {
        let mut c = self.clone();
        for p in &mut c.priorities {
            *p += 1;
        }
        c.normalize()
    }

    fn check_alphabet(&self, other: &Self) -> Result<(), AutomataError> {
        if self.letters != other.letters {
            return Err(AutomataError::AlphabetMismatch(self.letters, other.letters));
        }
        Ok(())
    }

    pub fn and(&self, other: &Self) -> Result<Self, AutomataError> {
        self.product(other, ProductMode::And, super::DEFAULT_CAP)
    }

    pub fn or(&self, other: &Self) -> Result<Self, AutomataError> {
        self.product(other, ProductMode::Or, super::DEFAULT_CAP)
    }

    /// Synchronous product. Conjunction turns both parity conditions into
    /// Streett pairs and tracks them with an index appearance record;
    /// disjunction goes through complements.
    pub fn product(&self, other: &Self, mode: ProductMode, cap: usize) -> Result<Self, AutomataError> {
        self.check_alphabet(other)?;
        match mode {
            ProductMode::And => {
                let a = self.normalize();
                let b = other.normalize();
                Ok(intersect_iar(&a, &b, cap)?.normalize().minimize())
            }
            ProductMode::Or => Ok(self
                .complement()
                .product(&other.complement(), ProductMode::And, cap)?
                .complement()
                .minimize()),
        }
    }

    /// States reachable from the initial one, in discovery order.
    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            i += 1;
            for &t in &self.transitions[q] {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }

    /// Drops unreachable states and compresses priorities to the fewest
    /// values that keep the parity of every cycle.
    pub fn normalize(&self) -> Self {
        let trimmed = self.trim();
        let n = trimmed.states();
        let adj: Vec<Vec<usize>> = trimmed.transitions.iter().map(|r| dedup(r.clone())).collect();
        let mut new_prio = vec![0u32; n];
        let mut work: Vec<(Vec<usize>, u32)> = vec![((0..n).collect(), 0)];
        while let Some((set, base)) = work.pop() {
            let mut keep = vec![false; n];
            for &q in &set {
                keep[q] = true;
            }
            for comp in sccs(&adj, &keep) {
                if !is_nontrivial(&comp, &adj) {
                    // on no cycle inside this part: any value from `base` up keeps every cycle's parity
                    new_prio[comp[0]] = base;
                    continue;
                }
                let m = comp.iter().map(|&q| trimmed.priorities[q]).min().expect("nonempty");
                let b = if base % 2 == m % 2 { base } else { base + 1 };
                let rest: Vec<usize> = comp.iter().copied().filter(|&q| trimmed.priorities[q] != m).collect();
                for &q in &comp {
                    if trimmed.priorities[q] == m {
                        new_prio[q] = b;
                    }
                }
                if !rest.is_empty() {
                    work.push((rest, b));
                }
            }
        }
        WordAutomaton { priorities: new_prio, ..trimmed }
    }

    fn trim(&self) -> Self {
        let order = self.reachable();
        let mut index = vec![usize::MAX; self.states()];
        for (i, &q) in order.iter().enumerate() {
            index[q] = i;
        }
        WordAutomaton {
            letters: self.letters,
            initial: 0,
            transitions: order.iter().map(|&q| self.transitions[q].iter().map(|&t| index[t]).collect()).collect(),
            priorities: order.iter().map(|&q| self.priorities[q]).collect(),
        }
    }

    /// Moore partition refinement starting from the priority partition.
    pub fn minimize(&self) -> Self {
        let a = self.trim();
        let n = a.states();
        let mut class: Vec<usize> = {
            let mut ps: Vec<u32> = a.priorities.clone();
            ps.sort_unstable();
            ps.dedup();
            a.priorities.iter().map(|p| ps.binary_search(p).expect("present")).collect()
        };
        let mut count = class.iter().max().map_or(0, |m| m + 1);
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = vec![0; n];
            for q in 0..n {
                let mut sig = Vec::with_capacity(a.letters + 1);
                sig.push(class[q]);
                sig.extend(a.transitions[q].iter().map(|&t| class[t]));
                let len = ids.len();
                next[q] = *ids.entry(sig).or_insert(len);
            }
            let new_count = ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // renumber classes in order of first appearance so state 0 stays initial
        let mut rename = vec![usize::MAX; count];
        let mut reps = Vec::new();
        for q in 0..n {
            if rename[class[q]] == usize::MAX {
                rename[class[q]] = reps.len();
                reps.push(q);
            }
        }
        WordAutomaton {
            letters: a.letters,
            initial: rename[class[a.initial]],
            transitions: reps.iter().map(|&q| a.transitions[q].iter().map(|&t| rename[class[t]]).collect()).collect(),
            priorities: reps.iter().map(|&q| a.priorities[q]).collect(),
        }
    }

    fn edges(&self) -> Vec<Vec<usize>> {
        self.transitions.iter().map(|r| dedup(r.clone())).collect()
    }

    /// A reachable state on a cycle whose least priority is even, with the
    /// priority level it was found at.
    fn accepting_core(&self) -> Option<(usize, u32)> {
        let reach = self.reachable();
        let mut reachable = vec![false; self.states()];
        for &q in &reach {
            reachable[q] = true;
        }
        let adj = self.edges();
        let mut evens: Vec<u32> = self.priorities.iter().copied().filter(|p| p % 2 == 0).collect();
        evens.sort_unstable();
        evens.dedup();
        for p in evens {
            let keep: Vec<bool> = (0..self.states()).map(|q| reachable[q] && self.priorities[q] >= p).collect();
            for comp in sccs(&adj, &keep) {
                if !is_nontrivial(&comp, &adj) {
                    continue;
                }
                if let Some(&q) = comp.iter().find(|&&q| self.priorities[q] == p) {
                    return Some((q, p));
                }
            }
        }
        None
    }

    /// States from which some word is accepted.
    pub fn nonempty_states(&self) -> Vec<bool> {
        let n = self.states();
        let adj = self.edges();
        let mut good = vec![false; n];
        let mut evens: Vec<u32> = self.priorities.iter().copied().filter(|p| p % 2 == 0).collect();
        evens.sort_unstable();
        evens.dedup();
        for p in evens {
            let keep: Vec<bool> = (0..n).map(|q| self.priorities[q] >= p).collect();
            for comp in sccs(&adj, &keep) {
                if is_nontrivial(&comp, &adj) && comp.iter().any(|&q| self.priorities[q] == p) {
                    for &q in &comp {
                        good[q] = true;
                    }
                }
            }
        }
        // backward reachability to the good cycles
        let mut pred = vec![Vec::new(); n];
        for (q, succ) in adj.iter().enumerate() {
            for &t in succ {
                pred[t].push(q);
            }
        }
        let mut stack: Vec<usize> = (0..n).filter(|&q| good[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &pred[q] {
                if !good[p] {
                    good[p] = true;
                    stack.push(p);
                }
            }
        }
        good
    }

    /// Topological closure: words all of whose prefixes extend to a member.
    pub fn closure(&self) -> Self {
        let live = self.nonempty_states();
        WordAutomaton::safety(self.letters, self.states(), self.initial, |q, a| self.step(q, a), |q| live[q]).minimize()
    }

    pub fn is_closed(&self) -> bool {
        self.closure().contains_in(self).expect("same alphabet")
    }

    pub fn is_open(&self) -> bool {
        self.complement().is_closed()
    }

    pub fn is_empty(&self) -> bool {
        self.accepting_core().is_none()
    }

    /// An accepted ultimately periodic word, if any.
    pub fn witness(&self) -> Option<UPWord> {
        let (q, p) = self.accepting_core()?;
        let edges = |v: usize| -> Vec<(usize, usize)> {
            self.transitions[v].iter().enumerate().map(|(a, &t)| (a, t)).collect()
        };
        let prefix = if q == self.initial {
            Vec::new()
        } else {
            path_labels(&edges, self.states(), self.initial, q, &|_| true).expect("reachable")
        };
        let cycle = path_labels(&edges, self.states(), q, q, &|v| self.priorities[v] >= p).expect("on a cycle");
        let to_u8 = |v: Vec<usize>| v.into_iter().map(|a| a as u8).collect();
        Some(UPWord::new(to_u8(prefix), to_u8(cycle)).expect("nonempty cycle"))
    }

    /// `L(self) ⊆ L(other)`.
    pub fn contains_in(&self, other: &Self) -> Result<bool, AutomataError> {
        Ok(self.and(&other.complement())?.is_empty())
    }

    pub fn equivalent(&self, other: &Self) -> Result<bool, AutomataError> {
        Ok(self.contains_in(other)? && other.contains_in(self)?)
    }

    /// Reads letters of a larger alphabet through `f`.
    pub fn map_letters(&self, letters: usize, f: impl Fn(usize) -> usize) -> Self {
        let map: Vec<usize> = (0..letters).map(f).collect();
        WordAutomaton {
            letters,
            initial: self.initial,
            transitions: self.transitions.iter().map(|r| map.iter().map(|&a| r[a]).collect()).collect(),
            priorities: self.priorities.clone(),
        }
    }

    /// Nondeterministic automaton over half the letters that guesses bit
    /// `bit` of each letter.
    pub fn project_bit(&self, bit: u32) -> Nwa {
        let low = (1usize << bit) - 1;
        let letters = self.letters / 2;
        let expand = |a: usize, b: usize| ((a & !low) << 1) | (b << bit) | (a & low);
        Nwa {
            letters,
            initial: vec![self.initial],
            transitions: self
                .transitions
                .iter()
                .map(|r| (0..letters).map(|a| dedup(vec![r[expand(a, 0)], r[expand(a, 1)]])).collect())
                .collect(),
            priorities: self.priorities.clone(),
        }
    }

    pub fn to_nwa(&self) -> Nwa {
        Nwa {
            letters: self.letters,
            initial: vec![self.initial],
            transitions: self.transitions.iter().map(|r| r.iter().map(|&t| vec![t]).collect()).collect(),
            priorities: self.priorities.clone(),
        }
    }
}

fn dedup(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Streett pairs `(E, F)` for a min-even parity condition: for every odd
/// `k`, seeing `k` infinitely often forces seeing something below `k`.
fn streett_pairs(prio: &[u32]) -> Vec<(Vec<bool>, Vec<bool>)> {
    let mut odds: Vec<u32> = prio.iter().copied().filter(|p| p % 2 == 1).collect();
    odds.sort_unstable();
    odds.dedup();
    odds.into_iter()
        .map(|k| (prio.iter().map(|&p| p == k).collect(), prio.iter().map(|&p| p < k).collect()))
        .collect()
}

fn intersect_iar(a: &WordAutomaton, b: &WordAutomaton, cap: usize) -> Result<WordAutomaton, AutomataError> {
    let pa = streett_pairs(&a.priorities);
    let pb = streett_pairs(&b.priorities);
    let m = pa.len() + pb.len();
    if m > 15 {
        return Err(AutomataError::ResourceExceeded { reached: m, cap: 15 });
    }
    // pair i hit by product state (qa, qb)
    let in_e = |i: usize, qa: usize, qb: usize| if i < pa.len() { pa[i].0[qa] } else { pb[i - pa.len()].0[qb] };
    let in_f = |i: usize, qa: usize, qb: usize| if i < pa.len() { pa[i].1[qa] } else { pb[i - pa.len()].1[qb] };
    let max = 2 * m as u32;
    // entering (qa, qb) with permutation `perm` (front first)
    let enter = |qa: usize, qb: usize, perm: &[u8]| -> (Vec<u8>, u32) {
        let mut e = 0;
        let mut f = 0;
        for (pos, &i) in perm.iter().enumerate() {
            if in_e(i as usize, qa, qb) {
                e = pos + 1;
            }
            if in_f(i as usize, qa, qb) {
                f = pos + 1;
            }
        }
        let (hit, rest): (Vec<u8>, Vec<u8>) = perm.iter().partition(|&&i| in_f(i as usize, qa, qb));
        let mut next = hit;
        next.extend(rest);
        let pmax = if f >= e { 2 * f as u32 } else { 2 * e as u32 - 1 };
        (next, max - pmax)
    };
    type Key = (usize, usize, Vec<u8>, u32);
    let mut ids: HashMap<Key, usize> = HashMap::new();
    let mut keys: Vec<Key> = Vec::new();
    let mut queue = VecDeque::new();
    let ident: Vec<u8> = (0..m as u8).collect();
    let (p0, pr0) = enter(a.initial, b.initial, &ident);
    let k0 = (a.initial, b.initial, p0, pr0);
    ids.insert(k0.clone(), 0);
    keys.push(k0);
    queue.push_back(0);
    let mut transitions: Vec<Vec<usize>> = Vec::new();
    while let Some(s) = queue.pop_front() {
        let (qa, qb, perm, _) = keys[s].clone();
        let mut row = Vec::with_capacity(a.letters);
        for x in 0..a.letters {
            let (ta, tb) = (a.step(qa, x), b.step(qb, x));
            let (np, pr) = enter(ta, tb, &perm);
            let key = (ta, tb, np, pr);
            let id = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    let id = keys.len();
                    if id >= cap {
                        return Err(AutomataError::ResourceExceeded { reached: id, cap });
                    }
                    ids.insert(key.clone(), id);
                    keys.push(key);
                    queue.push_back(id);
                    id
                }
            };
            row.push(id);
        }
        if transitions.len() <= s {
            transitions.resize(s + 1, Vec::new());
        }
        transitions[s] = row;
    }
    let priorities = keys.iter().map(|k| k.3).collect();
    Ok(WordAutomaton { letters: a.letters, initial: 0, transitions, priorities })
}

/// Nondeterministic parity word automaton; a missing successor set kills
/// the run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nwa {
    pub letters: usize,
    pub initial: Vec<usize>,
    pub transitions: Vec<Vec<Vec<usize>>>,
    pub priorities: Vec<u32>,
}

impl Nwa {
    pub fn states(&self) -> usize {
        self.transitions.len()
    }

    /// Direct check on the lasso graph of `w`: some run reaches a cycle
    /// whose least priority is even.
    pub fn accepts(&self, w: &UPWord) -> Result<bool, AutomataError> {
        if w.max_letter() as usize >= self.letters {
            return Err(AutomataError::AlphabetMismatch(w.max_letter() as usize + 1, self.letters));
        }
        let len = w.prefix().len() + w.period().len();
        let next_pos = |i: usize| if i + 1 < len { i + 1 } else { w.prefix().len() };
        let n = self.states();
        let vid = |q: usize, i: usize| q * len + i;
        // vertex (q, i): in state q about to read position i
        let mut adj = vec![Vec::new(); n * len];
        for q in 0..n {
            for i in 0..len {
                let a = w.at(i) as usize;
                for &t in &self.transitions[q][a] {
                    adj[vid(q, i)].push(vid(t, next_pos(i)));
                }
            }
        }
        let mut reach = vec![false; n * len];
        let mut stack: Vec<usize> = self.initial.iter().map(|&q| vid(q, 0)).collect();
        for &v in &stack {
            reach[v] = true;
        }
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !reach[u] {
                    reach[u] = true;
                    stack.push(u);
                }
            }
        }
        let prio = |v: usize| self.priorities[v / len];
        let mut evens: Vec<u32> = self.priorities.iter().copied().filter(|p| p % 2 == 0).collect();
        evens.sort_unstable();
        evens.dedup();
        for p in evens {
            let keep: Vec<bool> = (0..n * len).map(|v| reach[v] && prio(v) >= p).collect();
            for comp in sccs(&adj, &keep) {
                if is_nontrivial(&comp, &adj) && comp.iter().any(|&v| prio(v) == p) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> UPWord {
        s.parse().unwrap()
    }

    #[test]
    fn deserialization_validates() {
        let a = inf_ones();
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<WordAutomaton>(&text).unwrap(), a);
        let bad = r#"{"letters":2,"initial":0,"transitions":[[0,3]],"priorities":[0]}"#;
        assert!(serde_json::from_str::<WordAutomaton>(bad).is_err());
    }

    /// Infinitely many 1s: state = last letter, priority 0 on 1.
    pub(crate) fn inf_ones() -> WordAutomaton {
        WordAutomaton::from_fn(2, 2, 0, |_, a| a, |q| if q == 1 { 0 } else { 1 })
    }

    /// Eventually only 0s.
    fn eventually_zero() -> WordAutomaton {
        inf_ones().complement()
    }

    #[test]
    fn accepts_examples() {
        assert!(WordAutomaton::universal(2).accepts(&w("0(1)")).unwrap());
        assert!(inf_ones().accepts(&w("(01)")).unwrap());
        assert!(!inf_ones().accepts(&w("1(0)")).unwrap());
        assert!(inf_ones().accepts(&w("(2)")).is_err());
    }

    #[test]
    fn complement_is_involutive_on_samples() {
        let a = inf_ones();
        let cc = a.complement().complement();
        for word in UPWord::pool(2, 2, 3) {
            assert_eq!(a.accepts(&word).unwrap(), cc.accepts(&word).unwrap());
        }
    }

    #[test]
    fn product_and_emptiness() {
        let a = inf_ones();
        assert!(a.and(&a.complement()).unwrap().is_empty());
        assert!(a.or(&a.complement()).unwrap().complement().is_empty());
        let only_zero = WordAutomaton::safety(2, 1, 0, |q, a| if a == 0 { q } else { 1 }, |q| q == 0);
        assert!(only_zero.contains_in(&eventually_zero()).unwrap());
        assert!(!eventually_zero().contains_in(&only_zero).unwrap());
    }

    #[test]
    fn witness_is_accepted() {
        let a = inf_ones().and(&WordAutomaton::cylinder(2, &[vec![0, 0]])).unwrap();
        let wit = a.witness().unwrap();
        assert!(a.accepts(&wit).unwrap());
        assert_eq!(wit.at(0), 0);
        assert!(WordAutomaton::empty(2).witness().is_none());
    }

    #[test]
    fn normalize_keeps_language() {
        let a = WordAutomaton::from_fn(2, 3, 0, |q, a| (q + a) % 3, |q| [4, 7, 10][q]);
        let b = a.normalize();
        for word in UPWord::pool(2, 2, 3) {
            assert_eq!(a.accepts(&word).unwrap(), b.accepts(&word).unwrap());
        }
        assert!(b.priorities().iter().all(|&p| p <= 2));
    }

    #[test]
    fn minimize_merges_equivalent_states() {
        let a = WordAutomaton::from_fn(2, 4, 0, |q, a| (q + 2 * a) % 4, |_| 0);
        assert_eq!(a.minimize().states(), 1);
    }

    #[test]
    fn cylinder_examples() {
        let c = WordAutomaton::cylinder(2, &[vec![1]]);
        assert!(c.accepts(&w("1(0)")).unwrap());
        assert!(!c.accepts(&w("0(1)")).unwrap());
        assert!(WordAutomaton::cylinder(2, &[]).is_empty());
    }

    #[test]
    fn projection_guesses_bit() {
        // letters are pairs (x, y) as bit 0 and bit 1; accept iff y = x forever
        let eq = WordAutomaton::safety(4, 1, 0, |q, a| if a == 0 || a == 3 { q } else { 1 }, |q| q == 0);
        let p = eq.project_bit(1);
        assert!(p.accepts(&w("(01)")).unwrap());
        let p0 = eq.project_bit(0);
        assert!(p0.accepts(&w("1(0)")).unwrap());
    }
}

#[cfg(test)]
mod topology_tests {
    use super::*;

    #[test]
    fn closed_and_open_sets() {
        let zeros = WordAutomaton::safety(2, 1, 0, |q, a| if a == 0 { q } else { 1 }, |q| q == 0);
        assert!(zeros.is_closed());
        assert!(!zeros.is_open());
        assert!(zeros.complement().is_open());
        let inf_ones = WordAutomaton::from_fn(2, 2, 0, |_, a| a, |q| if q == 1 { 0 } else { 1 });
        assert!(!inf_ones.is_closed());
        assert!(!inf_ones.is_open());
        let cyl = WordAutomaton::cylinder(2, &[vec![1, 0]]);
        assert!(cyl.is_closed() && cyl.is_open());
    }
}
