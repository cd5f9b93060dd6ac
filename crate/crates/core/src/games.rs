//! Gale–Stewart games on `2^ω` with ω-regular payoffs: solving, finite-memory
//! strategies, randomized verification, a backward-induction oracle for
//! clopen payoffs, and play sessions.
//!
//! Player I plays positions `0, 2, 4, …`, player II the odd ones; I wins iff
//! the play lies in the payoff set.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automata::{parity_solve, AutomataError, Owner, ParityGame, WordAutomaton};
use crate::borelcode::{desc_sem, BorelDesc};

pub use crate::mso::Player;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("not this player's turn")]
    WrongTurn,
    #[error("unknown session {0}")]
    UnknownSession(u64),
    #[error("session is closed")]
    SessionClosed,
    #[error("horizon {horizon} below the bound {min}")]
    BadHorizon { horizon: usize, min: usize },
    #[error("bad payoff: {0}")]
    BadPayoff(String),
    #[error("bad move {0}: moves are bits")]
    BadMove(u8),
    #[error(transparent)]
    Automata(#[from] AutomataError),
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::I => Player::II,
            Player::II => Player::I,
        }
    }

    /// The player who moves at `position`.
    pub fn at(position: usize) -> Player {
        if position % 2 == 0 {
            Player::I
        } else {
            Player::II
        }
    }

    fn index(self) -> usize {
        match self {
            Player::I => 0,
            Player::II => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaleStewartGame {
    /// Deterministic and total, over `{0, 1}`.
    pub payoff: WordAutomaton,
}

impl GaleStewartGame {
    pub fn new(payoff: WordAutomaton) -> Result<GaleStewartGame, GameError> {
        payoff.validate()?;
        if payoff.letters() != 2 {
            return Err(GameError::BadPayoff(format!("{} letters, expected 2", payoff.letters())));
        }
        Ok(GaleStewartGame { payoff })
    }
}

pub fn payoff_from_desc(d: &BorelDesc) -> Result<GaleStewartGame, GameError> {
    GaleStewartGame::new(desc_sem(d)?)
}

/// Winner and a Mealy machine whose memory is the payoff state. `choice[q]`
/// holds, for each mover, the bit played at memory `q`; it is winning for
/// `winner` on every reachable memory state and best-effort elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub winner: Player,
    pub choice: Vec<[u8; 2]>,
    /// Winner of the game started at memory `q` with the given mover.
    pub region: Vec<[Player; 2]>,
}

fn player_of(o: Owner) -> Player {
    match o {
        Owner::Even => Player::I,
        Owner::Odd => Player::II,
    }
}

/// Parity game on payoff states × mover, I owning Even.
pub fn gs_solve(g: &GaleStewartGame) -> Result<Solution, GameError> {
    let a = &g.payoff;
    let n = a.states();
    let vertex = |q: usize, p: Player| 2 * q + p.index();
    let mut game = ParityGame::default();
    for q in 0..n {
        game.add_vertex(Owner::Even, a.priority(q));
        game.add_vertex(Owner::Odd, a.priority(q));
    }
    for q in 0..n {
        for p in [Player::I, Player::II] {
            for b in 0..2 {
                game.add_edge(vertex(q, p), vertex(a.step(q, b), p.opponent()));
            }
        }
    }
    let sol = parity_solve(&game)?;
    let bit_of = |q: usize, p: Player| -> u8 {
        let target = sol.strategy[vertex(q, p)];
        u8::from(target != vertex(a.step(q, 0), p.opponent()))
    };
    Ok(Solution {
        winner: player_of(sol.winner[vertex(a.initial(), Player::I)]),
        choice: (0..n).map(|q| [bit_of(q, Player::I), bit_of(q, Player::II)]).collect(),
        region: (0..n).map(|q| [player_of(sol.winner[vertex(q, Player::I)]), player_of(sol.winner[vertex(q, Player::II)])]).collect(),
    })
}

/// The Mealy output after `history`, for the player to move.
fn engine_bit(sol: &Solution, g: &GaleStewartGame, history: &[u8]) -> u8 {
    let q = g.payoff.run(history);
    sol.choice[q][Player::at(history.len()).index()]
}

/// The winner's move after `history`.
pub fn strategy_move(sol: &Solution, g: &GaleStewartGame, history: &[u8]) -> Result<u8, GameError> {
    if Player::at(history.len()) != sol.winner {
        return Err(GameError::WrongTurn);
    }
    if let Some(&b) = history.iter().find(|&&b| b > 1) {
        return Err(GameError::BadMove(b));
    }
    Ok(engine_bit(sol, g, history))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Bits up to the second visit of the repeated configuration.
    pub transcript: Vec<u8>,
    /// Position where the cycle starts.
    pub cycle_start: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub trials: usize,
    pub horizon: usize,
    pub lassos: usize,
    pub violations: Vec<Counterexample>,
}

/// Plays the solution's strategy against random adversaries. Each adversary
/// plays free random bits for a random prefix, then a random positional
/// table on (payoff state, mover); from then on the play is forced and a
/// lasso on (payoff state, position parity) closes within `2·|states|`
/// steps. Each lasso must be won by `sol.winner`.
pub fn verify_strategy(
    sol: &Solution,
    g: &GaleStewartGame,
    trials: usize,
    horizon: usize,
    seed: u64,
) -> Result<VerifyReport, GameError> {
    let a = &g.payoff;
    let min = 2 * a.states();
    if horizon < min {
        return Err(GameError::BadHorizon { horizon, min });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerifyReport { trials, horizon, lassos: 0, violations: Vec::new() };
    let adversary = sol.winner.opponent();
    for _ in 0..trials {
        let free = rng.gen_range(0..=horizon - min);
        let table: Vec<u8> = (0..a.states()).map(|_| rng.gen_range(0..2)).collect();
        let mut history = Vec::new();
        let mut q = a.initial();
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        loop {
            let pos = history.len();
            let mover = Player::at(pos);
            if pos >= free {
                if let Some(&start) = seen.get(&(q, pos % 2)) {
                    report.lassos += 1;
                    let least = (start..pos).map(|i| a.priority(a.run(&history[..=i]))).min().expect("nonempty cycle");
                    let winner = if least % 2 == 0 { Player::I } else { Player::II };
                    if winner != sol.winner {
                        report.violations.push(Counterexample { transcript: history.clone(), cycle_start: start });
                    }
                    break;
                }
                seen.insert((q, pos % 2), pos);
            }
            if pos == horizon {
                break;
            }
            let b = if mover == adversary {
                if pos < free {
                    rng.gen_range(0..2)
                } else {
                    table[q]
                }
            } else {
                sol.choice[q][mover.index()]
            };
            history.push(b);
            q = a.step(q, b as usize);
        }
    }
    Ok(report)
}

/// Winner of the game whose payoff is fixed by the first `k` bits:
/// `table[n]` says whether I wins when the first `k` bits, read as a binary
/// number with the first bit most significant, equal `n`.
pub fn oracle_clopen_solve(table: &[bool], k: usize) -> Result<Player, GameError> {
    if k > 4 || table.len() != 1 << k {
        return Err(GameError::BadPayoff(format!("table of size {} for k = {k}", table.len())));
    }
    fn value(table: &[bool], k: usize, prefix: usize, depth: usize) -> bool {
        if depth == k {
            return table[prefix];
        }
        let (a, b) = (value(table, k, prefix << 1, depth + 1), value(table, k, prefix << 1 | 1, depth + 1));
        if depth % 2 == 0 {
            a || b
        } else {
            a && b
        }
    }
    Ok(if value(table, k, 0, 0) { Player::I } else { Player::II })
}

/// Payoff automaton for a table: the prefix tree of depth `k` with a winning
/// and a losing sink.
pub fn table_payoff(table: &[bool], k: usize) -> Result<GaleStewartGame, GameError> {
    if table.len() != 1 << k {
        return Err(GameError::BadPayoff(format!("table of size {} for k = {k}", table.len())));
    }
    // node (depth d, prefix p) has index 2^d - 1 + p
    let inner = (1usize << k) - 1;
    let (win, lose) = (inner, inner + 1);
    let depth = |q: usize| (usize::BITS - (q + 1).leading_zeros() - 1) as usize;
    let aut = WordAutomaton::from_fn(
        2,
        inner + 2,
        if k == 0 { if table[0] { win } else { lose } } else { 0 },
        |q, b| {
            if q >= inner {
                return q;
            }
            let d = depth(q);
            let p = q + 1 - (1 << d);
            let child = p << 1 | b;
            if d + 1 == k {
                if table[child] {
                    win
                } else {
                    lose
                }
            } else {
                (1 << (d + 1)) - 1 + child
            }
        },
        |q| u32::from(q != win),
    );
    GaleStewartGame::new(aut)
}

/// The complement payoff behind one dummy move: the roles of the two
/// players are exchanged, so the same side of the original game wins.
pub fn swapped_complement(g: &GaleStewartGame) -> GaleStewartGame {
    let c = g.payoff.complement();
    let n = c.states();
    let aut = WordAutomaton::from_fn(
        2,
        n + 1,
        n,
        |q, b| if q == n { c.initial() } else { c.step(q, b) },
        |q| if q == n { 1 } else { c.priority(q) },
    );
    GaleStewartGame { payoff: aut }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Status {
    Open,
    DecidedLasso { winner: Player },
    HorizonReached,
}

/// A game in play against the engine.
#[derive(Clone, Debug)]
pub struct PlaySession {
    pub id: u64,
    pub game_ref: String,
    pub game: Arc<GaleStewartGame>,
    pub solution: Arc<Solution>,
    pub human: Player,
    pub horizon: usize,
    pub history: Vec<u8>,
    pub memory: usize,
    pub status: Status,
    /// First position of each (payoff state, parity) configuration.
    seen: BTreeMap<(usize, usize), usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionView {
    pub id: u64,
    pub game_ref: String,
    pub human_side: Player,
    pub engine_side: Player,
    pub winner: Player,
    pub mover: Player,
    pub history: Vec<u8>,
    pub memory_state: usize,
    pub status: Status,
    /// Priorities of the payoff states after the last few moves, oldest first.
    pub priority_trace: Vec<u32>,
}

const TRACE: usize = 8;

impl PlaySession {
    fn new(id: u64, game_ref: &str, game: Arc<GaleStewartGame>, solution: Arc<Solution>, human: Player, horizon: usize) -> Self {
        let memory = game.payoff.initial();
        let mut s = PlaySession {
            id,
            game_ref: game_ref.to_string(),
            game,
            solution,
            human,
            horizon,
            history: Vec::new(),
            memory,
            status: Status::Open,
            seen: BTreeMap::new(),
        };
        s.seen.insert((memory, 0), 0);
        s.engine_reply();
        s
    }

    pub fn mover(&self) -> Player {
        Player::at(self.history.len())
    }

    fn push(&mut self, bit: u8) {
        let a = &self.game.payoff;
        self.history.push(bit);
        self.memory = a.step(self.memory, bit as usize);
        let pos = self.history.len();
        let key = (self.memory, pos % 2);
        if let Some(&start) = self.seen.get(&key) {
            let least = (start..pos).map(|i| a.priority(a.run(&self.history[..=i]))).min().expect("nonempty cycle");
            let winner = if least % 2 == 0 { Player::I } else { Player::II };
            self.status = Status::DecidedLasso { winner };
        } else {
            self.seen.insert(key, pos);
            if pos >= self.horizon {
                self.status = Status::HorizonReached;
            }
        }
    }

    fn engine_reply(&mut self) {
        if self.status == Status::Open && self.mover() != self.human {
            let b = engine_bit(&self.solution, &self.game, &self.history);
            self.push(b);
        }
    }

    pub fn play(&mut self, bit: u8) -> Result<(), GameError> {
        if self.status != Status::Open {
            return Err(GameError::SessionClosed);
        }
        if bit > 1 {
            return Err(GameError::BadMove(bit));
        }
        if self.mover() != self.human {
            return Err(GameError::WrongTurn);
        }
        self.push(bit);
        self.engine_reply();
        Ok(())
    }

    pub fn view(&self) -> SessionView {
        let a = &self.game.payoff;
        let from = self.history.len().saturating_sub(TRACE);
        SessionView {
            id: self.id,
            game_ref: self.game_ref.clone(),
            human_side: self.human,
            engine_side: self.human.opponent(),
            winner: self.solution.winner,
            mover: self.mover(),
            history: self.history.clone(),
            memory_state: self.memory,
            status: self.status.clone(),
            priority_trace: (from..self.history.len()).map(|i| a.priority(a.run(&self.history[..=i]))).collect(),
        }
    }
}

/// Sessions keyed by id; each session is locked on its own.
#[derive(Default)]
pub struct SessionStore {
    sessions: Mutex<HashMap<u64, Arc<Mutex<PlaySession>>>>,
    next: Mutex<u64>,
}

impl SessionStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn session_new(
        &self,
        game_ref: &str,
        game: Arc<GaleStewartGame>,
        solution: Arc<Solution>,
        human: Player,
        horizon: usize,
    ) -> SessionView {
        let id = {
            let mut next = self.next.lock().expect("id counter");
            *next += 1;
            *next
        };
        let s = PlaySession::new(id, game_ref, game, solution, human, horizon);
        let view = s.view();
        self.sessions.lock().expect("session map").insert(id, Arc::new(Mutex::new(s)));
        view
    }

    fn get(&self, id: u64) -> Result<Arc<Mutex<PlaySession>>, GameError> {
        self.sessions.lock().expect("session map").get(&id).cloned().ok_or(GameError::UnknownSession(id))
    }

    pub fn session_move(&self, id: u64, bit: u8) -> Result<SessionView, GameError> {
        let s = self.get(id)?;
        let mut s = s.lock().expect("session");
        s.play(bit)?;
        Ok(s.view())
    }

    pub fn session_state(&self, id: u64) -> Result<SessionView, GameError> {
        Ok(self.get(id)?.lock().expect("session").view())
    }

    /// The human's moves so far, for replay.
    pub fn transcript(&self, id: u64) -> Result<Transcript, GameError> {
        let s = self.get(id)?;
        let s = s.lock().expect("session");
        let human = s.history.iter().enumerate().filter(|(i, _)| Player::at(*i) == s.human).map(|(_, &b)| b).collect();
        Ok(Transcript { game_ref: s.game_ref.clone(), human_side: s.human, human_moves: human, horizon: s.horizon })
    }
}

/// Enough to rebuild a session: the engine's moves are recomputed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Transcript {
    pub game_ref: String,
    pub human_side: Player,
    pub human_moves: Vec<u8>,
    pub horizon: usize,
}

/// Replays a transcript from a fresh session; the views after each human
/// move are returned.
pub fn replay(
    store: &SessionStore,
    t: &Transcript,
    game: Arc<GaleStewartGame>,
    solution: Arc<Solution>,
) -> Result<Vec<SessionView>, GameError> {
    let first = store.session_new(&t.game_ref, game, solution, t.human_side, t.horizon);
    let mut views = vec![first.clone()];
    for &b in &t.human_moves {
        views.push(store.session_move(first.id, b)?);
    }
    Ok(views)
}

/// A named payoff with the winner it is known to have.
#[derive(Clone, Debug)]
pub struct CatalogGame {
    pub name: &'static str,
    pub summary: &'static str,
    pub game: GaleStewartGame,
    pub winner: Player,
}

fn catalog_game(name: &'static str, summary: &'static str, payoff: WordAutomaton, winner: Player) -> CatalogGame {
    CatalogGame { name, summary, game: GaleStewartGame::new(payoff).expect("binary payoff"), winner }
}

pub fn catalog() -> Vec<CatalogGame> {
    vec![
        catalog_game("cylinder", "the first bit is 1", WordAutomaton::cylinder(2, &[vec![1]]), Player::I),
        catalog_game("second-bit", "the second bit is 1", WordAutomaton::cylinder(2, &[vec![0, 1], vec![1, 1]]), Player::II),
        catalog_game(
            "eventually-zero",
            "eventually all bits are 0",
            WordAutomaton::from_fn(2, 2, 0, |_, b| b, |q| if q == 1 { 1 } else { 2 }),
            Player::II,
        ),
        // 0: even position; 1/2: odd position after a 0/1 at the even one
        catalog_game(
            "even-ones",
            "infinitely many 1s at even positions",
            WordAutomaton::from_fn(2, 3, 0, |q, b| if q == 0 { 1 + b } else { 0 }, |q| u32::from(q != 2)),
            Player::I,
        ),
    ]
}
