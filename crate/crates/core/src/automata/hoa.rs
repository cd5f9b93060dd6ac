//! HOA text format for deterministic parity word automata.
//!
//! Only complete deterministic automata with state-based `parity min even`
//! acceptance are handled. Letters are valuations of the atomic
//! propositions, bit `i` of a letter being proposition `i`.

use std::fmt::Write as _;

use super::word::WordAutomaton;
use super::AutomataError;

pub fn to_hoa(a: &WordAutomaton, name: &str) -> Result<String, AutomataError> {
    let letters = a.letters();
    if !letters.is_power_of_two() {
        return Err(AutomataError::Malformed(format!("{letters} letters are not a power of two")));
    }
    let aps = letters.trailing_zeros() as usize;
    let colours = a.priorities().iter().max().map_or(1, |m| m + 1);
    let mut s = String::new();
    let _ = writeln!(s, "HOA: v1");
    let _ = writeln!(s, "name: \"{}\"", name.replace('"', "'"));
    let _ = writeln!(s, "States: {}", a.states());
    let _ = writeln!(s, "Start: {}", a.initial());
    let _ = write!(s, "AP: {aps}");
    for i in 0..aps {
        let _ = write!(s, " \"p{i}\"");
    }
    s.push('\n');
    let _ = writeln!(s, "acc-name: parity min even {colours}");
    let _ = writeln!(s, "Acceptance: {colours} {}", parity_condition(0, colours));
    let _ = writeln!(s, "properties: trans-labels explicit-labels state-acc deterministic complete");
    let _ = writeln!(s, "--BODY--");
    for q in 0..a.states() {
        let _ = writeln!(s, "State: {q} {{{}}}", a.priority(q));
        for l in 0..letters {
            let _ = writeln!(s, "[{}] {}", letter_label(l, aps), a.step(q, l));
        }
    }
    let _ = writeln!(s, "--END--");
    Ok(s)
}

fn parity_condition(i: u32, colours: u32) -> String {
    if i + 1 == colours {
        return if i % 2 == 0 { format!("Inf({i})") } else { format!("Fin({i})") };
    }
    let rest = parity_condition(i + 1, colours);
    if i % 2 == 0 {
        format!("Inf({i}) | ({rest})")
    } else {
        format!("Fin({i}) & ({rest})")
    }
}

fn letter_label(l: usize, aps: usize) -> String {
    if aps == 0 {
        return "t".into();
    }
    (0..aps)
        .map(|i| if l >> i & 1 == 1 { format!("{i}") } else { format!("!{i}") })
        .collect::<Vec<_>>()
        .join("&")
}

fn err(line: usize, msg: impl Into<String>) -> AutomataError {
    AutomataError::Hoa { line, msg: msg.into() }
}

/// Boolean label expression over proposition indices.
enum Label {
    Const(bool),
    Ap(usize),
    Not(Box<Label>),
    And(Box<Label>, Box<Label>),
    Or(Box<Label>, Box<Label>),
}

impl Label {
    fn eval(&self, letter: usize) -> bool {
        match self {
            Label::Const(b) => *b,
            Label::Ap(i) => letter >> i & 1 == 1,
            Label::Not(x) => !x.eval(letter),
            Label::And(x, y) => x.eval(letter) && y.eval(letter),
            Label::Or(x, y) => x.eval(letter) || y.eval(letter),
        }
    }
}

struct LabelParser<'a> {
    toks: Vec<&'a str>,
    pos: usize,
}

impl<'a> LabelParser<'a> {
    fn new(src: &'a str) -> Self {
        let mut toks = Vec::new();
        let mut start = None;
        for (i, c) in src.char_indices() {
            if c.is_ascii_alphanumeric() {
                start.get_or_insert(i);
                continue;
            }
            if let Some(s) = start.take() {
                toks.push(&src[s..i]);
            }
            if !c.is_whitespace() {
                toks.push(&src[i..i + c.len_utf8()]);
            }
        }
        if let Some(s) = start {
            toks.push(&src[s..]);
        }
        LabelParser { toks, pos: 0 }
    }

    fn peek(&self) -> Option<&'a str> {
        self.toks.get(self.pos).copied()
    }

    fn or(&mut self) -> Option<Label> {
        let mut x = self.and()?;
        while self.peek() == Some("|") {
            self.pos += 1;
            x = Label::Or(Box::new(x), Box::new(self.and()?));
        }
        Some(x)
    }

    fn and(&mut self) -> Option<Label> {
        let mut x = self.atom()?;
        while self.peek() == Some("&") {
            self.pos += 1;
            x = Label::And(Box::new(x), Box::new(self.atom()?));
        }
        Some(x)
    }

    fn atom(&mut self) -> Option<Label> {
        let t = self.peek()?;
        self.pos += 1;
        match t {
            "t" => Some(Label::Const(true)),
            "f" => Some(Label::Const(false)),
            "!" => Some(Label::Not(Box::new(self.atom()?))),
            "(" => {
                let x = self.or()?;
                (self.peek() == Some(")")).then(|| self.pos += 1)?;
                Some(x)
            }
            n => n.parse().ok().map(Label::Ap),
        }
    }
}

pub fn from_hoa(src: &str) -> Result<WordAutomaton, AutomataError> {
    let mut states = None;
    let mut start = None;
    let mut aps = None;
    let mut parity_ok = false;
    let mut lines = src.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    for (ln, line) in lines.by_ref() {
        if line == "--BODY--" {
            break;
        }
        let (key, rest) = line.split_once(':').ok_or_else(|| err(ln, "expected header item"))?;
        let rest = rest.trim();
        match key {
            "HOA" if rest != "v1" => return Err(err(ln, "unsupported version")),
            "States" => states = Some(rest.parse::<usize>().map_err(|_| err(ln, "bad state count"))?),
            "Start" => {
                if start.is_some() {
                    return Err(err(ln, "several initial states"));
                }
                start = Some(rest.parse::<usize>().map_err(|_| err(ln, "bad start state"))?);
            }
            "AP" => {
                let n = rest.split_whitespace().next().ok_or_else(|| err(ln, "missing AP count"))?;
                aps = Some(n.parse::<usize>().map_err(|_| err(ln, "bad AP count"))?);
            }
            "acc-name" => {
                parity_ok = rest.starts_with("parity min even");
                if !parity_ok {
                    return Err(err(ln, "only parity min even acceptance is supported"));
                }
            }
            _ => {}
        }
    }
    let n = states.ok_or_else(|| err(0, "missing States"))?;
    let init = start.ok_or_else(|| err(0, "missing Start"))?;
    let aps = aps.ok_or_else(|| err(0, "missing AP"))?;
    if !parity_ok {
        return Err(err(0, "missing acc-name"));
    }
    if aps > 16 {
        return Err(err(0, "too many propositions"));
    }
    let letters = 1usize << aps;
    let mut trans: Vec<Vec<Option<usize>>> = vec![vec![None; letters]; n];
    let mut prio: Vec<Option<u32>> = vec![None; n];
    let mut cur: Option<usize> = None;
    let mut ended = false;
    for (ln, line) in lines {
        if line == "--END--" {
            ended = true;
            break;
        }
        if let Some(rest) = line.strip_prefix("State:") {
            let rest = rest.trim();
            let (id, acc) = match rest.find('{') {
                Some(i) => (&rest[..i], Some(&rest[i..])),
                None => (rest, None),
            };
            let id: usize = id.split_whitespace().next().and_then(|t| t.parse().ok()).ok_or_else(|| err(ln, "bad state id"))?;
            if id >= n {
                return Err(err(ln, "state id out of range"));
            }
            let acc = acc.ok_or_else(|| err(ln, "state without acceptance set"))?;
            let inner = acc.trim_start_matches('{').trim_end_matches('}').trim();
            let sets: Vec<u32> = inner.split_whitespace().map(|t| t.parse().map_err(|_| err(ln, "bad acceptance set"))).collect::<Result<_, _>>()?;
            if sets.len() != 1 {
                return Err(err(ln, "each state needs exactly one colour"));
            }
            prio[id] = Some(sets[0]);
            cur = Some(id);
            continue;
        }
        let q = cur.ok_or_else(|| err(ln, "edge before any state"))?;
        let close = line.find(']').filter(|_| line.starts_with('[')).ok_or_else(|| err(ln, "edges need explicit labels"))?;
        let label = LabelParser::new(&line[1..close]);
        let mut label = label;
        let expr = label.or().filter(|_| label.peek().is_none()).ok_or_else(|| err(ln, "bad label"))?;
        let target: usize = line[close + 1..].split_whitespace().next().and_then(|t| t.parse().ok()).ok_or_else(|| err(ln, "bad edge target"))?;
        if target >= n {
            return Err(err(ln, "edge target out of range"));
        }
        for (l, slot) in trans[q].iter_mut().enumerate() {
            if expr.eval(l) {
                if slot.is_some_and(|t| t != target) {
                    return Err(err(ln, "automaton is not deterministic"));
                }
                *slot = Some(target);
            }
        }
    }
    if !ended {
        return Err(err(0, "missing --END--"));
    }
    let transitions = trans
        .into_iter()
        .enumerate()
        .map(|(q, r)| r.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| err(0, format!("state {q} is not complete"))))
        .collect::<Result<Vec<_>, _>>()?;
    let priorities = prio
        .into_iter()
        .enumerate()
        .map(|(q, p)| p.ok_or_else(|| err(0, format!("state {q} is missing"))))
        .collect::<Result<Vec<_>, _>>()?;
    WordAutomaton::new(letters, init, transitions, priorities)
}
