//! The subcommands as functions from inputs to printed text.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use borelwb::borelcode::{code_equiv, code_intersect, code_union, decode, desc_validate, encode, BranchSetTerm};
use borelwb::games::{gs_solve, verify_strategy, GameError, Player, SessionStore, SessionView, Transcript};
use borelwb::mso::{decide_cantor, decide_cantor_codes, decide_s2s_with, eval_bounded, parse_cantor, parse_mso};
use borelwb::wlo::wl_report;

use crate::config::Config;
use crate::error::{resource_of, CliError};
use crate::files::{self, to_json};

/// Printed text and exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    pub fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn pairs(ps: &[(String, String)]) -> String {
    if ps.is_empty() {
        return "none".into();
    }
    ps.iter().map(|(a, b)| format!("{a}~{b}")).collect::<Vec<_>>().join(" ")
}

pub fn wl(path: &Path, as_json: bool) -> Result<Output, CliError> {
    let (p, claim) = files::poset(path)?;
    let r = wl_report(&p, claim);
    if as_json {
        return Ok(Output::ok(to_json(&r)));
    }
    let mut out = String::new();
    writeln!(out, "elements: {}", p.len()).unwrap();
    writeln!(out, "literal: {}", r.literal).unwrap();
    writeln!(out, "amended: {}", r.amended).unwrap();
    if let Some(c) = r.paper_claim {
        writeln!(out, "claim: {c}").unwrap();
    }
    writeln!(out, "discrepancy: {}", r.discrepancy).unwrap();
    writeln!(out, "sim pairs (literal): {}", pairs(&r.sim_pairs_literal)).unwrap();
    writeln!(out, "sim pairs (amended): {}", pairs(&r.sim_pairs_amended)).unwrap();
    Ok(Output::ok(out))
}

pub fn encode_file(path: &Path) -> Result<Output, CliError> {
    let d = files::json(path)?;
    desc_validate(&d)?;
    Ok(Output::ok(to_json(&encode(&d)?)))
}

/// Rejections print with exit 0: the input was read and answered.
pub fn decode_file(path: &Path) -> Result<Output, CliError> {
    let t: BranchSetTerm = files::json(path)?;
    match decode(&t) {
        Ok(d) => Ok(Output::ok(format!("accepted: level {}\n{}", d.level(), to_json(&d)))),
        Err(r) => match resource_of(&r) {
            Some(e) => Err(e),
            None => Ok(Output::ok(format!("rejected: {}\ndetail: {r}\n", r.root().name()))),
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeOp {
    Intersect,
    Union,
    Equiv,
}

pub fn codeop(op: CodeOp, a: &Path, b: &Path) -> Result<Output, CliError> {
    let (x, y): (BranchSetTerm, BranchSetTerm) = (files::json(a)?, files::json(b)?);
    Ok(Output::ok(match op {
        CodeOp::Intersect => to_json(&code_intersect(&x, &y)?),
        CodeOp::Union => to_json(&code_union(&x, &y)?),
        CodeOp::Equiv => format!("equivalent: {}\n", code_equiv(&x, &y)),
    }))
}

/// An S2S sentence, by automata, or on the depth-`depth` truncation when
/// `bounded`.
pub fn decide_s2s_file(path: &Path, bounded: bool, config: &Config) -> Result<Output, CliError> {
    let f = parse_mso(&files::read(path)?)?;
    let v = if bounded {
        eval_bounded(&f, config.depth, &Default::default())?
    } else {
        decide_s2s_with(&f, config.cap)?
    };
    Ok(Output::ok(format!("{v}\n")))
}

/// A Cantor-order sentence with Borel parameters, by automata and through
/// the codes of its parameters.
pub fn decide_cantor_file(path: &Path, binds: &[String]) -> Result<Output, CliError> {
    let f = parse_cantor(&files::read(path)?)?;
    let b = files::bindings(binds)?;
    let v = decide_cantor(&f, &b)?;
    let codes = match decide_cantor_codes(&f, &b)? {
        Some(c) => c.to_string(),
        None => "undetermined".into(),
    };
    let mut text = format!("{v}\ncode route: {codes}\n");
    if codes != "undetermined" && codes != v.to_string() {
        text.push_str("mismatch between the two routes\n");
        return Ok(Output { text, code: 3 });
    }
    Ok(Output::ok(text))
}

pub fn game_solve(reference: &str, config: &Config) -> Result<Output, CliError> {
    let g = files::resolve_game(reference, config)?;
    let sol = gs_solve(&g)?;
    let mut out = format!("winner: {:?}\nstates: {}\n", sol.winner, g.payoff.states());
    for (q, [i, ii]) in sol.choice.iter().enumerate() {
        let [wi, wii] = sol.region[q];
        writeln!(out, "state {q}: I plays {i} (wins {wi:?}), II plays {ii} (wins {wii:?})").unwrap();
    }
    Ok(Output::ok(out))
}

pub fn game_verify(reference: &str, config: &Config) -> Result<Output, CliError> {
    let g = files::resolve_game(reference, config)?;
    let sol = gs_solve(&g)?;
    let r = verify_strategy(&sol, &g, config.trials, config.horizon, config.seed)?;
    let mut text = format!(
        "winner: {:?}\ntrials: {}\nhorizon: {}\nlassos: {}\nviolations: {}\n",
        sol.winner,
        r.trials,
        r.horizon,
        r.lassos,
        r.violations.len()
    );
    for c in r.violations.iter().take(5) {
        let bits: String = c.transcript.iter().map(|b| b.to_string()).collect();
        writeln!(text, "counterexample: {bits} (cycle from {})", c.cycle_start).unwrap();
    }
    let code = if r.violations.is_empty() { 0 } else { 3 };
    Ok(Output { text, code })
}

#[derive(Clone, Debug)]
pub enum PlayInput {
    Moves { side: Player, moves: Vec<u8> },
    Replay(Transcript),
}

/// Plays the human moves against the engine and prints one session view per
/// line; moves after the session closes are reported and dropped. `save`
/// receives the transcript of the moves actually played.
pub fn game_play(reference: &str, input: PlayInput, save: Option<&Path>, config: &Config) -> Result<Output, CliError> {
    let t = match input {
        PlayInput::Moves { side, moves } => {
            Transcript { game_ref: reference.to_string(), human_side: side, human_moves: moves, horizon: config.horizon }
        }
        PlayInput::Replay(t) => t,
    };
    if t.horizon == 0 {
        return Err(CliError::Parse("horizon must be positive".into()));
    }
    let g = Arc::new(files::resolve_game(&t.game_ref, config)?);
    let sol = Arc::new(gs_solve(&g)?);
    let store = SessionStore::new();
    let first = store.session_new(&t.game_ref, g, sol, t.human_side, t.horizon);
    let mut text = String::new();
    let mut line = |v: &SessionView| {
        text.push_str(&serde_json::to_string(v).expect("serializable"));
        text.push('\n');
    };
    line(&first);
    for (i, &b) in t.human_moves.iter().enumerate() {
        match store.session_move(first.id, b) {
            Ok(v) => line(&v),
            Err(GameError::SessionClosed) => {
                text.push_str(&format!("session closed; {} moves not played\n", t.human_moves.len() - i));
                break;
            }
            Err(e) => return Err(e.into()),
        }
    }
    if let Some(path) = save {
        let played = store.transcript(first.id)?;
        std::fs::write(path, to_json(&played)).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    }
    Ok(Output::ok(text))
}

pub fn parse_bits(s: &str) -> Result<Vec<u8>, CliError> {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            c => Err(CliError::Parse(format!("move {c:?} is not a bit"))),
        })
        .collect()
}

pub fn parse_side(s: &str) -> Result<Player, CliError> {
    match s {
        "I" | "i" | "1" => Ok(Player::I),
        "II" | "ii" | "2" => Ok(Player::II),
        _ => Err(CliError::Parse(format!("side {s} is neither I nor II"))),
    }
}
