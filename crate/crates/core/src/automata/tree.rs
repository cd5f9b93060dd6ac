//! Alternating parity automata on infinite binary trees.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::game::{parity_solve, Owner, ParityGame};
use super::safra::{Safra, SafraTree};
use super::AutomataError;

/// Positive boolean formula over `(direction, state)` atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pbf {
    True,
    False,
    Atom(u8, usize),
    And(Vec<Pbf>),
    Or(Vec<Pbf>),
}

type AtomSet = BTreeSet<(u8, usize)>;

impl Pbf {
    pub fn and(parts: Vec<Pbf>) -> Pbf {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Pbf::True => {}
                Pbf::False => return Pbf::False,
                Pbf::And(inner) => out.extend(inner),
                p => out.push(p),
            }
        }
        match out.len() {
            0 => Pbf::True,
            1 => out.pop().expect("one"),
            _ => Pbf::And(out),
        }
    }

    pub fn or(parts: Vec<Pbf>) -> Pbf {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Pbf::False => {}
                Pbf::True => return Pbf::True,
                Pbf::Or(inner) => out.extend(inner),
                p => out.push(p),
            }
        }
        match out.len() {
            0 => Pbf::False,
            1 => out.pop().expect("one"),
            _ => Pbf::Or(out),
        }
    }

    pub fn dual(&self) -> Pbf {
        match self {
            Pbf::True => Pbf::False,
            Pbf::False => Pbf::True,
            Pbf::Atom(d, q) => Pbf::Atom(*d, *q),
            Pbf::And(v) => Pbf::Or(v.iter().map(Pbf::dual).collect()),
            Pbf::Or(v) => Pbf::And(v.iter().map(Pbf::dual).collect()),
        }
    }

    pub fn map_states(&self, f: &impl Fn(usize) -> usize) -> Pbf {
        match self {
            Pbf::Atom(d, q) => Pbf::Atom(*d, f(*q)),
            Pbf::And(v) => Pbf::And(v.iter().map(|p| p.map_states(f)).collect()),
            Pbf::Or(v) => Pbf::Or(v.iter().map(|p| p.map_states(f)).collect()),
            p => p.clone(),
        }
    }

    pub fn atoms(&self, out: &mut Vec<(u8, usize)>) {
        match self {
            Pbf::Atom(d, q) => out.push((*d, *q)),
            Pbf::And(v) | Pbf::Or(v) => v.iter().for_each(|p| p.atoms(out)),
            _ => {}
        }
    }

    pub fn eval(&self, holds: &impl Fn(u8, usize) -> bool) -> bool {
        match self {
            Pbf::True => true,
            Pbf::False => false,
            Pbf::Atom(d, q) => holds(*d, *q),
            Pbf::And(v) => v.iter().all(|p| p.eval(holds)),
            Pbf::Or(v) => v.iter().any(|p| p.eval(holds)),
        }
    }

    /// Minimal sets of atoms that make the formula true.
    pub fn minimal_models(&self) -> Vec<AtomSet> {
        let raw = match self {
            Pbf::True => vec![AtomSet::new()],
            Pbf::False => vec![],
            Pbf::Atom(d, q) => vec![AtomSet::from([(*d, *q)])],
            Pbf::Or(v) => v.iter().flat_map(|p| p.minimal_models()).collect(),
            Pbf::And(v) => {
                let mut acc = vec![AtomSet::new()];
                for p in v {
                    let models = p.minimal_models();
                    let mut next = Vec::new();
                    for a in &acc {
                        for m in &models {
                            next.push(a.union(m).copied().collect());
                        }
                    }
                    acc = minimize_family(next);
                }
                acc
            }
        };
        minimize_family(raw)
    }

    /// Transition pairs when the formula is a disjunction of terms with at
    /// most one atom per direction; `None` stands for the accept-all state.
    pub fn as_pairs(&self) -> Option<Vec<(Option<usize>, Option<usize>)>> {
        let terms: Vec<&Pbf> = match self {
            Pbf::Or(v) => v.iter().collect(),
            p => vec![p],
        };
        let mut out = Vec::new();
        for t in terms {
            let atoms: Vec<&Pbf> = match t {
                Pbf::False => continue,
                Pbf::True => vec![],
                Pbf::Atom(..) => vec![t],
                Pbf::And(v) => v.iter().collect(),
                Pbf::Or(_) => return None,
            };
            let mut pair = (None, None);
            for a in atoms {
                match a {
                    Pbf::Atom(0, q) if pair.0.is_none() => pair.0 = Some(*q),
                    Pbf::Atom(1, q) if pair.1.is_none() => pair.1 = Some(*q),
                    Pbf::True => {}
                    _ => return None,
                }
            }
            out.push(pair);
        }
        Some(out)
    }
}

fn minimize_family(mut sets: Vec<AtomSet>) -> Vec<AtomSet> {
    sets.sort_by_key(|s| s.len());
    sets.dedup();
    let mut out: Vec<AtomSet> = Vec::new();
    for s in sets {
        if !out.iter().any(|m| m.is_subset(&s)) {
            out.push(s);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeAutomaton {
    pub letters: usize,
    pub initial: usize,
    /// `delta[q][a]`
    pub delta: Vec<Vec<Pbf>>,
    pub priorities: Vec<u32>,
}

/// Binary tree with finitely many distinct subtrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularTree {
    pub root: usize,
    pub labels: Vec<u8>,
    pub children: Vec<[usize; 2]>,
}

impl RegularTree {
    pub fn constant(letter: u8) -> Self {
        RegularTree { root: 0, labels: vec![letter], children: vec![[0, 0]] }
    }

    pub fn node_at(&self, path: &[u8]) -> usize {
        path.iter().fold(self.root, |v, &d| self.children[v][d as usize])
    }

    pub fn label_at(&self, path: &[u8]) -> u8 {
        self.labels[self.node_at(path)]
    }

    pub fn map_labels(&self, f: impl Fn(u8) -> u8) -> Self {
        RegularTree { labels: self.labels.iter().map(|&l| f(l)).collect(), ..self.clone() }
    }

    /// Pointwise pairing of labels, one graph node per reachable pair.
    pub fn zip(&self, other: &RegularTree, f: impl Fn(u8, u8) -> u8) -> Self {
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut keys = vec![(self.root, other.root)];
        ids.insert(keys[0], 0);
        let mut children = Vec::new();
        let mut i = 0;
        while i < keys.len() {
            let (a, b) = keys[i];
            let mut ch = [0; 2];
            for d in 0..2 {
                let k = (self.children[a][d], other.children[b][d]);
                let len = keys.len();
                ch[d] = *ids.entry(k).or_insert_with(|| len);
                if ch[d] == len {
                    keys.push(k);
                }
            }
            children.push(ch);
            i += 1;
        }
        RegularTree {
            root: 0,
            labels: keys.iter().map(|&(a, b)| f(self.labels[a], other.labels[b])).collect(),
            children,
        }
    }
}

impl TreeAutomaton {
    pub fn validate(&self) -> Result<(), AutomataError> {
        let n = self.delta.len();
        if n == 0 || self.initial >= n || self.priorities.len() != n {
            return Err(AutomataError::Malformed("state tables inconsistent".into()));
        }
        for (q, row) in self.delta.iter().enumerate() {
            if row.len() != self.letters {
                return Err(AutomataError::Malformed(format!("state {q} lacks letters")));
            }
            let mut atoms = Vec::new();
            row.iter().for_each(|p| p.atoms(&mut atoms));
            if atoms.iter().any(|&(d, t)| d > 1 || t >= n) {
                return Err(AutomataError::Malformed(format!("state {q} has a bad atom")));
            }
        }
        Ok(())
    }

    pub fn states(&self) -> usize {
        self.delta.len()
    }

    pub fn universal(letters: usize) -> Self {
        TreeAutomaton { letters, initial: 0, delta: vec![vec![Pbf::True; letters]], priorities: vec![0] }
    }

    pub fn empty(letters: usize) -> Self {
        TreeAutomaton { letters, initial: 0, delta: vec![vec![Pbf::False; letters]], priorities: vec![0] }
    }

    pub fn dualize(&self) -> Self {
        TreeAutomaton {
            letters: self.letters,
            initial: self.initial,
            delta: self.delta.iter().map(|r| r.iter().map(Pbf::dual).collect()).collect(),
            priorities: self.priorities.iter().map(|p| p + 1).collect(),
        }
    }

    /// Disjoint union with a fresh initial state combining both initial
    /// transitions with `combine`.
    fn join(&self, other: &Self, combine: fn(Vec<Pbf>) -> Pbf) -> Result<Self, AutomataError> {
        if self.letters != other.letters {
            return Err(AutomataError::AlphabetMismatch(self.letters, other.letters));
        }
        let off = self.states();
        let mut delta = self.delta.clone();
        delta.extend(other.delta.iter().map(|r| r.iter().map(|p| p.map_states(&|q| q + off)).collect()));
        let init_row = (0..self.letters)
            .map(|a| combine(vec![delta[self.initial][a].clone(), delta[other.initial + off][a].clone()]))
            .collect();
        delta.push(init_row);
        let mut priorities = self.priorities.clone();
        priorities.extend(&other.priorities);
        priorities.push(0);
        Ok(TreeAutomaton { letters: self.letters, initial: delta.len() - 1, delta, priorities })
    }

    pub fn and(&self, other: &Self) -> Result<Self, AutomataError> {
        self.join(other, Pbf::and)
    }

    pub fn or(&self, other: &Self) -> Result<Self, AutomataError> {
        self.join(other, Pbf::or)
    }

    /// Reads letters of a larger alphabet through `f`.
    pub fn map_letters(&self, letters: usize, f: impl Fn(usize) -> usize) -> Self {
        TreeAutomaton {
            letters,
            initial: self.initial,
            delta: self.delta.iter().map(|r| (0..letters).map(|a| r[f(a)].clone()).collect()).collect(),
            priorities: self.priorities.clone(),
        }
    }

    pub fn is_nondeterministic(&self) -> bool {
        self.delta.iter().all(|r| r.iter().all(|p| p.as_pairs().is_some()))
    }

    /// Rewrites transitions into explicit pair form, adding an accept-all
    /// state when some term leaves a direction unconstrained.
    fn pair_form(&self) -> Result<Self, AutomataError> {
        let pairs: Vec<Vec<Vec<(Option<usize>, Option<usize>)>>> = self
            .delta
            .iter()
            .map(|r| r.iter().map(|p| p.as_pairs().ok_or(AutomataError::NotNondeterministic)).collect())
            .collect::<Result<_, _>>()?;
        let needs_top = pairs.iter().flatten().flatten().any(|(l, r)| l.is_none() || r.is_none());
        let top = self.states();
        let pick = |s: Option<usize>| s.unwrap_or(top);
        let mut delta: Vec<Vec<Pbf>> = pairs
            .iter()
            .map(|r| {
                r.iter()
                    .map(|ps| {
                        Pbf::or(ps.iter().map(|&(l, rr)| Pbf::And(vec![Pbf::Atom(0, pick(l)), Pbf::Atom(1, pick(rr))])).collect())
                    })
                    .collect()
            })
            .collect();
        let mut priorities = self.priorities.clone();
        if needs_top {
            delta.push(vec![Pbf::And(vec![Pbf::Atom(0, top), Pbf::Atom(1, top)]); self.letters]);
            priorities.push(0);
        }
        Ok(TreeAutomaton { letters: self.letters, initial: self.initial, delta, priorities })
    }

    /// Existential projection of letter bit `bit`; the automaton must be
    /// nondeterministic.
    pub fn project(&self, bit: u32) -> Result<Self, AutomataError> {
        if !self.is_nondeterministic() {
            return Err(AutomataError::NotNondeterministic);
        }
        let low = (1usize << bit) - 1;
        let letters = self.letters / 2;
        let expand = |a: usize, b: usize| ((a & !low) << 1) | (b << bit) | (a & low);
        Ok(TreeAutomaton {
            letters,
            initial: self.initial,
            delta: self
                .delta
                .iter()
                .map(|r| (0..letters).map(|a| Pbf::or(vec![r[expand(a, 0)].clone(), r[expand(a, 1)].clone()])).collect())
                .collect(),
            priorities: self.priorities.clone(),
        })
    }

    /// Equivalent nondeterministic automaton. Existing nondeterministic
    /// automata come back unchanged.
    pub fn nondeterminize(&self, cap: usize) -> Result<Self, AutomataError> {
        if self.is_nondeterministic() {
            return Ok(self.clone());
        }
        muller_schupp(self, cap)
    }

    /// Membership of a regular tree, decided by the acceptance game.
    pub fn accepts(&self, t: &RegularTree) -> Result<bool, AutomataError> {
        if let Some(&l) = t.labels.iter().find(|&&l| l as usize >= self.letters) {
            return Err(AutomataError::AlphabetMismatch(l as usize + 1, self.letters));
        }
        let mut game = ParityGame::default();
        let neutral = self.priorities.iter().max().copied().unwrap_or(0) + 2;
        let yes = game.add_vertex(Owner::Odd, 0);
        game.add_edge(yes, yes);
        let no = game.add_vertex(Owner::Even, 1);
        game.add_edge(no, no);
        let mut pos: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let start = game.add_vertex(Owner::Even, self.priorities[self.initial]);
        pos.insert((self.initial, t.root), start);
        queue.push_back((self.initial, t.root, start));
        while let Some((q, v, id)) = queue.pop_front() {
            let f = &self.delta[q][t.labels[v] as usize];
            let target = build_formula(&mut game, f, neutral, yes, no, &mut |game, d, q2| {
                let child = t.children[v][d as usize];
                *pos.entry((q2, child)).or_insert_with(|| {
                    let w = game.add_vertex(Owner::Even, self.priorities[q2]);
                    queue.push_back((q2, child, w));
                    w
                })
            });
            game.add_edge(id, target);
        }
        Ok(parity_solve(&game)?.winner[start] == Owner::Even)
    }

    /// Emptiness of a nondeterministic automaton.
    pub fn is_empty(&self) -> Result<bool, AutomataError> {
        Ok(self.nd_witness()?.is_none())
    }

    /// Emptiness after nondeterminizing if needed.
    pub fn language_empty(&self, cap: usize) -> Result<bool, AutomataError> {
        Ok(self.witness(cap)?.is_none())
    }

    /// Some accepted regular tree, if the language is nonempty.
    pub fn witness(&self, cap: usize) -> Result<Option<RegularTree>, AutomataError> {
        self.nondeterminize(cap)?.nd_witness()
    }

    /// Same language, nondeterministic, with empty-language states removed
    /// and bisimilar states merged.
    pub fn reduce(&self) -> Result<Self, AutomataError> {
        let nd = self.pair_form()?;
        let n = nd.states();
        let (game, _, _) = emptiness_game(&nd);
        let sol = parity_solve(&game)?;
        let live: Vec<bool> = (0..n).map(|q| sol.winner[q] == Owner::Even).collect();
        if !live[nd.initial] {
            return Ok(Self::empty(self.letters));
        }
        let rows: Vec<Vec<Vec<(usize, usize)>>> = (0..n)
            .map(|q| {
                (0..nd.letters)
                    .map(|a| {
                        let mut ps: Vec<(usize, usize)> = nd.delta[q][a]
                            .as_pairs()
                            .expect("pair form")
                            .into_iter()
                            .map(|(l, r)| (l.expect("paired"), r.expect("paired")))
                            .filter(|&(l, r)| live[l] && live[r])
                            .collect();
                        ps.sort_unstable();
                        ps.dedup();
                        ps
                    })
                    .collect()
            })
            .collect();
        let mut class: Vec<usize> = nd.priorities.iter().map(|&p| p as usize).collect();
        let mut count = 0;
        loop {
            let mut ids: HashMap<(usize, Vec<Vec<(usize, usize)>>), usize> = HashMap::new();
            let next: Vec<usize> = (0..n)
                .map(|q| {
                    let sig: Vec<Vec<(usize, usize)>> = rows[q]
                        .iter()
                        .map(|ps| {
                            let mut v: Vec<(usize, usize)> = ps.iter().map(|&(l, r)| (class[l], class[r])).collect();
                            v.sort_unstable();
                            v.dedup();
                            v
                        })
                        .collect();
                    let len = ids.len();
                    *ids.entry((class[q], sig)).or_insert(len)
                })
                .collect();
            let stable = ids.len() == count;
            count = ids.len();
            class = next;
            if stable {
                break;
            }
        }
        let mut rep = vec![usize::MAX; count];
        for q in 0..n {
            if rep[class[q]] == usize::MAX {
                rep[class[q]] = q;
            }
        }
        let delta = rep
            .iter()
            .map(|&q| {
                rows[q]
                    .iter()
                    .map(|ps| {
                        let mut v: Vec<(usize, usize)> = ps.iter().map(|&(l, r)| (class[l], class[r])).collect();
                        v.sort_unstable();
                        v.dedup();
                        Pbf::or(v.into_iter().map(|(l, r)| Pbf::And(vec![Pbf::Atom(0, l), Pbf::Atom(1, r)])).collect())
                    })
                    .collect()
            })
            .collect();
        let priorities = rep.iter().map(|&q| nd.priorities[q]).collect();
        Ok(TreeAutomaton { letters: self.letters, initial: class[nd.initial], delta, priorities })
    }

    fn nd_witness(&self) -> Result<Option<RegularTree>, AutomataError> {
        let nd = self.pair_form()?;
        let n = nd.states();
        let (game, choice, pair_vertex) = emptiness_game(&nd);
        let sol = parity_solve(&game)?;
        if sol.winner[nd.initial] != Owner::Even {
            return Ok(None);
        }
        // read a tree off Even's strategy on the reachable states
        let mut node_of = vec![usize::MAX; n];
        let mut order = vec![nd.initial];
        node_of[nd.initial] = 0;
        let mut labels = Vec::new();
        let mut children = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            let v = sol.strategy[q];
            let &(_, a, pr) = choice.iter().find(|&&(cq, _, p)| cq == q && pair_vertex[&p] == v).expect("strategy move");
            labels.push(a as u8);
            let mut ch = [0; 2];
            for (d, s) in [pr.0, pr.1].into_iter().enumerate() {
                if node_of[s] == usize::MAX {
                    node_of[s] = order.len();
                    order.push(s);
                }
                ch[d] = node_of[s];
            }
            children.push(ch);
            i += 1;
        }
        Ok(Some(RegularTree { root: 0, labels, children }))
    }
}

type Choice = (usize, usize, (usize, usize));

/// Even picks (letter, pair) at state vertices, Odd picks a direction.
/// State `q` is vertex `q`; Even wins there iff `q` has a nonempty language.
fn emptiness_game(nd: &TreeAutomaton) -> (ParityGame, Vec<Choice>, HashMap<(usize, usize), usize>) {
    let n = nd.states();
    let mut game = ParityGame::default();
    let neutral = nd.priorities.iter().max().copied().unwrap_or(0) + 2;
    for q in 0..n {
        game.add_vertex(Owner::Even, nd.priorities[q]);
    }
    let no = game.add_vertex(Owner::Even, 1);
    game.add_edge(no, no);
    let mut choice = Vec::new();
    let mut pair_vertex: HashMap<(usize, usize), usize> = HashMap::new();
    for q in 0..n {
        for a in 0..nd.letters {
            let pairs = nd.delta[q][a].as_pairs().expect("pair form");
            for (l, r) in pairs {
                let pr = (l.expect("paired"), r.expect("paired"));
                let v = *pair_vertex.entry(pr).or_insert_with(|| {
                    let v = game.add_vertex(Owner::Odd, neutral);
                    game.add_edge(v, pr.0);
                    game.add_edge(v, pr.1);
                    v
                });
                game.add_edge(q, v);
                choice.push((q, a, pr));
            }
        }
        if game.succ[q].is_empty() {
            game.add_edge(q, no);
        }
    }
    (game, choice, pair_vertex)
}

/// Adds game vertices for formula `f`; atoms are resolved by `atom`.
fn build_formula(
    game: &mut ParityGame,
    f: &Pbf,
    neutral: u32,
    yes: usize,
    no: usize,
    atom: &mut dyn FnMut(&mut ParityGame, u8, usize) -> usize,
) -> usize {
    match f {
        Pbf::True => yes,
        Pbf::False => no,
        Pbf::Atom(d, q) => atom(game, *d, *q),
        Pbf::And(v) | Pbf::Or(v) => {
            let owner = if matches!(f, Pbf::Or(_)) { Owner::Even } else { Owner::Odd };
            let id = game.add_vertex(owner, neutral);
            if v.is_empty() {
                game.add_edge(id, if owner == Owner::Even { no } else { yes });
            }
            for p in v {
                let t = build_formula(game, p, neutral, yes, no, atom);
                game.add_edge(id, t);
            }
            id
        }
    }
}

/// Local strategy: for each active state, one minimal model of its
/// transition formula.
type LocalStrategy = Vec<(usize, AtomSet)>;

fn local_strategies(a: &TreeAutomaton, active: &[usize], letter: usize, cap: usize) -> Result<Vec<LocalStrategy>, AutomataError> {
    let mut acc: Vec<LocalStrategy> = vec![Vec::new()];
    for &q in active {
        let models = a.delta[q][letter].minimal_models();
        let mut next = Vec::with_capacity(acc.len() * models.len());
        for s in &acc {
            for m in &models {
                let mut s2 = s.clone();
                s2.push((q, m.clone()));
                next.push(s2);
            }
        }
        if next.len() > cap {
            return Err(AutomataError::ResourceExceeded { reached: next.len(), cap });
        }
        acc = next;
    }
    Ok(acc)
}

/// Muller–Schupp construction: guess a local strategy at each node and
/// check every path of the induced run with a deterministic automaton for
/// the bad paths.
fn muller_schupp(a: &TreeAutomaton, cap: usize) -> Result<TreeAutomaton, AutomataError> {
    a.validate()?;
    let bad_prio: Vec<u32> = a.priorities.iter().map(|p| p + 1).collect();
    let safra = Safra::new(bad_prio);
    type Key = (SafraTree, u32);
    let mut ids: HashMap<Key, usize> = HashMap::new();
    let mut keys: Vec<Key> = Vec::new();
    let start = (safra.initial(&[a.initial]), safra.neutral());
    ids.insert(start.clone(), 0);
    keys.push(start);
    let mut queue = VecDeque::from([0usize]);
    let mut delta: Vec<Vec<Pbf>> = Vec::new();
    let mut intern = |key: Key, keys: &mut Vec<Key>, queue: &mut VecDeque<usize>| -> Result<usize, AutomataError> {
        if let Some(&id) = ids.get(&key) {
            return Ok(id);
        }
        let id = keys.len();
        if id >= cap {
            return Err(AutomataError::ResourceExceeded { reached: id, cap });
        }
        ids.insert(key.clone(), id);
        keys.push(key);
        queue.push_back(id);
        Ok(id)
    };
    while let Some(s) = queue.pop_front() {
        let tree = keys[s].0.clone();
        let active = safra.root_states(&tree);
        let mut row = Vec::with_capacity(a.letters);
        for letter in 0..a.letters {
            let mut terms = Vec::new();
            for f in local_strategies(a, &active, letter, cap)? {
                let mut pair = [0; 2];
                for d in 0..2u8 {
                    let rel = |q: usize| -> Vec<usize> {
                        f.iter()
                            .find(|(p, _)| *p == q)
                            .map(|(_, m)| m.iter().filter(|(dd, _)| *dd == d).map(|&(_, t)| t).collect())
                            .unwrap_or_default()
                    };
                    let key = safra.step(&tree, &rel);
                    pair[d as usize] = intern(key, &mut keys, &mut queue)?;
                }
                terms.push(Pbf::And(vec![Pbf::Atom(0, pair[0]), Pbf::Atom(1, pair[1])]));
            }
            terms.sort();
            terms.dedup();
            row.push(Pbf::or(terms));
        }
        if delta.len() <= s {
            delta.resize(s + 1, Vec::new());
        }
        delta[s] = row;
    }
    let priorities = keys.iter().map(|k| k.1 + 1).collect();
    Ok(TreeAutomaton { letters: a.letters, initial: 0, delta, priorities })
}
