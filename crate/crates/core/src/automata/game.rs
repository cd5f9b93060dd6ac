//! Parity games on finite graphs, solved with Zielonka's recursion.

use serde::{Deserialize, Serialize};

use super::graph::{is_nontrivial, sccs};
use super::AutomataError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Owner {
    Even,
    Odd,
}

impl Owner {
    pub fn opponent(self) -> Owner {
        match self {
            Owner::Even => Owner::Odd,
            Owner::Odd => Owner::Even,
        }
    }

    pub fn of_priority(p: u32) -> Owner {
        if p % 2 == 0 {
            Owner::Even
        } else {
            Owner::Odd
        }
    }
}

/// Vertices carry an owner and a priority; every vertex needs a successor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityGame {
    pub owner: Vec<Owner>,
    pub prio: Vec<u32>,
    pub succ: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub winner: Vec<Owner>,
    /// Positional move for the owner of each vertex; winning whenever the
    /// owner wins there.
    pub strategy: Vec<usize>,
}

impl ParityGame {
    pub fn add_vertex(&mut self, owner: Owner, prio: u32) -> usize {
        self.owner.push(owner);
        self.prio.push(prio);
        self.succ.push(Vec::new());
        self.owner.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, to: usize) {
        if !self.succ[from].contains(&to) {
            self.succ[from].push(to);
        }
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    pub fn validate(&self) -> Result<(), AutomataError> {
        let n = self.len();
        if self.prio.len() != n || self.succ.len() != n {
            return Err(AutomataError::Malformed("vertex tables differ in length".into()));
        }
        for (v, s) in self.succ.iter().enumerate() {
            if s.is_empty() {
                return Err(AutomataError::Malformed(format!("vertex {v} has no successor")));
            }
            if s.iter().any(|&w| w >= n) {
                return Err(AutomataError::Malformed(format!("vertex {v} has a dangling edge")));
            }
        }
        Ok(())
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.len()];
        for (v, s) in self.succ.iter().enumerate() {
            for &w in s {
                pred[w].push(v);
            }
        }
        pred
    }

    /// Whether `player`, fixing `strategy` on its own vertices, wins every
    /// play from `from`.
    pub fn strategy_wins(&self, player: Owner, strategy: &[usize], from: usize) -> bool {
        let n = self.len();
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|v| if self.owner[v] == player { vec![strategy[v]] } else { self.succ[v].clone() })
            .collect();
        let mut reach = vec![false; n];
        let mut stack = vec![from];
        reach[from] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !reach[w] {
                    reach[w] = true;
                    stack.push(w);
                }
            }
        }
        // the opponent wins iff some reachable cycle has least priority of its parity
        let bad = player.opponent();
        let mut ps: Vec<u32> = self.prio.iter().copied().filter(|&p| Owner::of_priority(p) == bad).collect();
        ps.sort_unstable();
        ps.dedup();
        for p in ps {
            let keep: Vec<bool> = (0..n).map(|v| reach[v] && self.prio[v] >= p).collect();
            for comp in sccs(&adj, &keep) {
                if is_nontrivial(&comp, &adj) && comp.iter().any(|&v| self.prio[v] == p) {
                    return false;
                }
            }
        }
        true
    }
}

pub fn parity_solve(game: &ParityGame) -> Result<Solution, AutomataError> {
    game.validate()?;
    let n = game.len();
    let pred = game.predecessors();
    let mut winner = vec![Owner::Even; n];
    let mut strategy: Vec<usize> = game.succ.iter().map(|s| s[0]).collect();
    let all = vec![true; n];
    zielonka(game, &pred, &all, &mut winner, &mut strategy);
    Ok(Solution { winner, strategy })
}

/// Attractor of `target` for `player` inside `set`; attracted vertices of
/// `player` get their attracting move written into `strategy`.
fn attractor(
    game: &ParityGame,
    pred: &[Vec<usize>],
    set: &[bool],
    target: &[usize],
    player: Owner,
    strategy: &mut [usize],
) -> Vec<bool> {
    let n = game.len();
    let mut attr = vec![false; n];
    let mut count: Vec<usize> = (0..n)
        .map(|v| if set[v] { game.succ[v].iter().filter(|&&w| set[w]).count() } else { 0 })
        .collect();
    let mut queue: Vec<usize> = Vec::new();
    for &t in target {
        if !attr[t] {
            attr[t] = true;
            queue.push(t);
        }
    }
    while let Some(w) = queue.pop() {
        for &v in &pred[w] {
            if !set[v] || attr[v] {
                continue;
            }
            if game.owner[v] == player {
                attr[v] = true;
                strategy[v] = w;
                queue.push(v);
            } else {
                count[v] -= 1;
                if count[v] == 0 {
                    attr[v] = true;
                    queue.push(v);
                }
            }
        }
    }
    attr
}

fn zielonka(game: &ParityGame, pred: &[Vec<usize>], set: &[bool], winner: &mut [Owner], strategy: &mut [usize]) {
    let n = game.len();
    let Some(p) = (0..n).filter(|&v| set[v]).map(|v| game.prio[v]).min() else {
        return;
    };
    let i = Owner::of_priority(p);
    let top: Vec<usize> = (0..n).filter(|&v| set[v] && game.prio[v] == p).collect();
    let a = attractor(game, pred, set, &top, i, strategy);
    let rest: Vec<bool> = (0..n).map(|v| set[v] && !a[v]).collect();
    zielonka(game, pred, &rest, winner, strategy);
    let lost: Vec<usize> = (0..n).filter(|&v| rest[v] && winner[v] != i).collect();
    if lost.is_empty() {
        for v in 0..n {
            if set[v] {
                winner[v] = i;
            }
        }
        // top vertices of i may move anywhere inside the set
        for &v in &top {
            if game.owner[v] == i {
                strategy[v] = *game.succ[v].iter().find(|&&w| set[w]).expect("total subgame");
            }
        }
        return;
    }
    let b = attractor(game, pred, set, &lost, i.opponent(), strategy);
    for v in 0..n {
        if b[v] {
            winner[v] = i.opponent();
        }
    }
    let rest: Vec<bool> = (0..n).map(|v| set[v] && !b[v]).collect();
    zielonka(game, pred, &rest, winner, strategy);
}
