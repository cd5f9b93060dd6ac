//! Determinization of nondeterministic parity word automata.
//!
//! The parity automaton is first read as a Büchi automaton with one copy
//! per even priority, then determinized with compact Safra trees whose
//! nodes are kept in age order. Letters are given as successor relations,
//! so callers can drive the construction with alphabets they never
//! enumerate.

use std::collections::{HashMap, VecDeque};

use super::word::{Nwa, WordAutomaton};
use super::AutomataError;

/// Nodes in age order; a node's parent always comes before it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SafraTree {
    labels: Vec<Vec<u32>>,
    parents: Vec<u16>,
}

const NO_PARENT: u16 = u16::MAX;

impl SafraTree {
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }
}

pub struct Safra {
    prio: Vec<u32>,
    evens: Vec<u32>,
}

impl Safra {
    pub fn new(prio: Vec<u32>) -> Self {
        let mut evens: Vec<u32> = prio.iter().copied().filter(|p| p % 2 == 0).collect();
        evens.sort_unstable();
        evens.dedup();
        Safra { prio, evens }
    }

    fn copies(&self) -> usize {
        self.evens.len() + 1
    }

    fn nbw_states(&self) -> usize {
        self.prio.len() * self.copies()
    }

    /// Büchi copies entered when the parity automaton moves to `q`: the
    /// free copy and every committed copy it is allowed in.
    fn enter(&self, q: usize, out: &mut Vec<u32>) {
        let c = self.copies();
        out.push((q * c) as u32);
        for (j, &p) in self.evens.iter().enumerate() {
            if self.prio[q] >= p {
                out.push((q * c + j + 1) as u32);
            }
        }
    }

    fn nbw_succ(&self, s: u32, rel: &dyn Fn(usize) -> Vec<usize>, out: &mut Vec<u32>) {
        let c = self.copies();
        let (q, j) = (s as usize / c, s as usize % c);
        for t in rel(q) {
            if j == 0 {
                self.enter(t, out);
            } else if self.prio[t] >= self.evens[j - 1] {
                out.push((t * c + j) as u32);
            }
        }
    }

    fn accepting(&self, s: u32) -> bool {
        let c = self.copies();
        let (q, j) = (s as usize / c, s as usize % c);
        j > 0 && self.prio[q] == self.evens[j - 1]
    }

    /// Priority emitted when nothing happens; larger than any event.
    pub fn neutral(&self) -> u32 {
        2 * self.nbw_states() as u32 + 1
    }

    pub fn initial(&self, init: &[usize]) -> SafraTree {
        let mut label = Vec::new();
        for &q in init {
            self.enter(q, &mut label);
        }
        label.sort_unstable();
        label.dedup();
        if label.is_empty() {
            SafraTree { labels: vec![], parents: vec![] }
        } else {
            SafraTree { labels: vec![label], parents: vec![NO_PARENT] }
        }
    }

    /// Parity-automaton states present in the root label.
    pub fn root_states(&self, t: &SafraTree) -> Vec<usize> {
        let c = self.copies();
        let mut v: Vec<usize> = t.labels.first().map_or(vec![], |l| l.iter().map(|&s| s as usize / c).collect());
        v.dedup();
        v
    }

    pub fn step(&self, t: &SafraTree, rel: &dyn Fn(usize) -> Vec<usize>) -> (SafraTree, u32) {
        let old = t.labels.len();
        let mut labels = t.labels.clone();
        let mut parents = t.parents.clone();
        // spawn accepting children
        for v in 0..old {
            let acc: Vec<u32> = labels[v].iter().copied().filter(|&s| self.accepting(s)).collect();
            if !acc.is_empty() {
                labels.push(acc);
                parents.push(v as u16);
            }
        }
        // transition
        for label in &mut labels {
            let mut next = Vec::new();
            for &s in label.iter() {
                self.nbw_succ(s, rel, &mut next);
            }
            next.sort_unstable();
            next.dedup();
            *label = next;
        }
        // horizontal merge: keep each state only in the oldest sibling line
        let n = labels.len();
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            if parents[v] != NO_PARENT {
                children[parents[v] as usize].push(v);
            }
        }
        let mut order: Vec<usize> = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).filter(|&v| parents[v] == NO_PARENT).rev().collect();
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(children[v].iter().rev());
        }
        for &v in &order {
            let mut keep = labels[v].clone();
            if parents[v] != NO_PARENT {
                let parent = &labels[parents[v] as usize];
                keep.retain(|s| parent.binary_search(s).is_ok());
                for &u in &children[parents[v] as usize] {
                    if u >= v {
                        break;
                    }
                    let older = &labels[u];
                    keep.retain(|s| older.binary_search(s).is_err());
                }
            }
            labels[v] = keep;
        }
        // removal of empty nodes
        let mut alive = vec![true; n];
        let mut e = usize::MAX;
        for &v in &order {
            let parent_dead = parents[v] != NO_PARENT && !alive[parents[v] as usize];
            if parent_dead || labels[v].is_empty() {
                alive[v] = false;
                if v < old {
                    e = e.min(v + 1);
                }
            }
        }
        // vertical merge
        let mut g = usize::MAX;
        let mut removed_below = vec![false; n];
        for &v in &order {
            if !alive[v] {
                continue;
            }
            if parents[v] != NO_PARENT && removed_below[parents[v] as usize] {
                alive[v] = false;
                removed_below[v] = true;
                continue;
            }
            let live_children: Vec<usize> = children[v].iter().copied().filter(|&c| alive[c]).collect();
            if live_children.is_empty() {
                continue;
            }
            let mut union: Vec<u32> = live_children.iter().flat_map(|&c| labels[c].iter().copied()).collect();
            union.sort_unstable();
            union.dedup();
            if union == labels[v] {
                removed_below[v] = true;
                g = g.min(v + 1);
            }
        }
        // compact
        let mut index = vec![NO_PARENT; n];
        let mut out = SafraTree { labels: Vec::new(), parents: Vec::new() };
        for v in 0..n {
            if alive[v] {
                index[v] = out.labels.len() as u16;
                out.labels.push(std::mem::take(&mut labels[v]));
                out.parents.push(if parents[v] == NO_PARENT { NO_PARENT } else { index[parents[v] as usize] });
            }
        }
        let pe = if e == usize::MAX { u32::MAX } else { 2 * e as u32 - 1 };
        let pg = if g == usize::MAX { u32::MAX } else { 2 * g as u32 };
        let p = pe.min(pg);
        (out, if p == u32::MAX { self.neutral() } else { p })
    }
}

/// Deterministic automaton with the language of `nwa`.
pub fn determinize(nwa: &Nwa, cap: usize) -> Result<WordAutomaton, AutomataError> {
    let safra = Safra::new(nwa.priorities.clone());
    let mut ids: HashMap<(SafraTree, u32), usize> = HashMap::new();
    let mut keys: Vec<(SafraTree, u32)> = Vec::new();
    let start = (safra.initial(&nwa.initial), safra.neutral());
    ids.insert(start.clone(), 0);
    keys.push(start);
    let mut queue = VecDeque::from([0usize]);
    let mut transitions: Vec<Vec<usize>> = Vec::new();
    while let Some(s) = queue.pop_front() {
        let tree = keys[s].0.clone();
        let mut row = Vec::with_capacity(nwa.letters);
        for a in 0..nwa.letters {
            let rel = |q: usize| nwa.transitions[q][a].clone();
            let key = safra.step(&tree, &rel);
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
    let priorities = keys.iter().map(|k| k.1).collect();
    Ok(WordAutomaton::new(nwa.letters, 0, transitions, priorities)?.normalize().minimize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treepower::UPWord;

    fn agree(n: &Nwa) {
        let d = determinize(n, 5000).unwrap();
        for w in UPWord::pool(n.letters as u8, 3, 3) {
            assert_eq!(n.accepts(&w).unwrap(), d.accepts(&w).unwrap(), "{w}");
        }
    }

    #[test]
    fn eventually_zero_buchi() {
        // guess the point after which only 0 occurs
        let n = Nwa {
            letters: 2,
            initial: vec![0],
            transitions: vec![vec![vec![0, 1], vec![0]], vec![vec![1], vec![]]],
            priorities: vec![1, 0],
        };
        agree(&n);
    }

    #[test]
    fn parity_with_three_colours() {
        let n = Nwa {
            letters: 2,
            initial: vec![0],
            transitions: vec![
                vec![vec![0, 1], vec![2]],
                vec![vec![1], vec![2, 0]],
                vec![vec![0], vec![1, 2]],
            ],
            priorities: vec![1, 2, 3],
        };
        agree(&n);
    }

    #[test]
    fn projection_roundtrip() {
        // pairs (x, y): y is 1 exactly where x changes
        let a = WordAutomaton::safety(
            4,
            3,
            0,
            |q, l| {
                let (x, y) = ((l & 1) as usize, (l >> 1) & 1);
                let prev = if q == 0 { x } else { q - 1 };
                if (prev != x) == (y == 1) {
                    x + 1
                } else {
                    3
                }
            },
            |q| q < 3,
        );
        agree(&a.project_bit(1));
        agree(&a.project_bit(0));
    }

    #[test]
    fn empty_initial() {
        let n = Nwa { letters: 1, initial: vec![], transitions: vec![vec![vec![0]]], priorities: vec![0] };
        assert!(determinize(&n, 10).unwrap().is_empty());
    }
}
