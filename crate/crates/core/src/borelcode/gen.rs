//! Random valid descriptions and adversarial terms for tests and the
//! acceptance suite.
//!
//! Generated descriptions are strictly shaped: the elements of a Σ level are
//! Π one level down and vice versa, limit supports only use indices of one
//! parity, and open leaves are never also closed. Two generated descriptions
//! of the same shape and level therefore have codes that the code
//! operations accept.

use rand::seq::SliceRandom;
use rand::Rng;

use super::*;

/// Whether a strictly shaped description of this shape and level denotes a
/// closed set (otherwise an open one).
pub fn is_closed_kind(shape: Shape, level: &Ordinal) -> bool {
    match level.classify() {
        Class::Zero => shape == Shape::Pi,
        Class::Successor(p) => is_closed_kind(shape.flip(), &p),
        Class::Limit => shape == Shape::Sigma,
    }
}

/// Nonempty closed set given by a random safety automaton.
pub fn random_closed<R: Rng + ?Sized>(rng: &mut R) -> WordAutomaton {
    loop {
        let n = rng.gen_range(1..=4);
        let table: Vec<[usize; 2]> = (0..n).map(|_| [rng.gen_range(0..n), rng.gen_range(0..n)]).collect();
        let live: Vec<bool> = (0..n).map(|q| q == 0 || rng.gen_bool(0.7)).collect();
        let a = WordAutomaton::safety(2, n, 0, |q, l| table[q][l], |q| live[q]).minimize();
        if !a.is_empty() {
            return a;
        }
    }
}

/// Nonempty open set that is not closed.
pub fn random_open<R: Rng + ?Sized>(rng: &mut R) -> WordAutomaton {
    loop {
        let a = random_closed(rng).complement();
        if !a.is_empty() && !a.is_closed() {
            return a;
        }
    }
}

fn random_prefix<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..2)).collect()
}

/// Increasing clopen sets; the first one contains `point`.
fn growing_cylinders<R: Rng + ?Sized>(rng: &mut R, point: &UPWord, count: usize) -> Vec<WordAutomaton> {
    let len = rng.gen_range(1..=3);
    let mut prefixes = vec![point.take(len)];
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(WordAutomaton::cylinder(2, &prefixes));
        prefixes.push(random_prefix(rng, len));
    }
    out
}

/// Decreasing clopen sets, possibly empty.
fn shrinking_cylinders<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<WordAutomaton> {
    let len = rng.gen_range(1..=3);
    let mut prefixes: Vec<Vec<u8>> = (0..count).map(|_| random_prefix(rng, len)).collect();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(if prefixes.is_empty() { WordAutomaton::empty(2) } else { WordAutomaton::cylinder(2, &prefixes) });
        prefixes.pop();
    }
    out
}

/// `d ∩ c` for a clopen `c`, as a description of the same shape, or `None`
/// when the intersection is empty.
pub fn restrict(d: &BorelDesc, c: &WordAutomaton) -> Option<BorelDesc> {
    let nonempty = |s: WordAutomaton| (!s.is_empty()).then_some(s);
    match d {
        BorelDesc::Closed { aut } => Some(BorelDesc::Closed { aut: nonempty(aut.and(c).ok()?)? }),
        BorelDesc::Open { aut } => Some(BorelDesc::Open { aut: nonempty(aut.and(c).ok()?)? }),
        BorelDesc::Empty { .. } => None,
        BorelDesc::SigmaSucc { level, seq } => {
            let items: Vec<Option<BorelDesc>> = seq.iter_span().map(|e| restrict(e, c)).collect();
            // the sequence increases, so only a prefix can vanish
            let mut kept: Vec<BorelDesc> = items.into_iter().skip_while(Option::is_none).map(|e| e.expect("increasing")).collect();
            let tail = kept.pop()?;
            Some(BorelDesc::SigmaSucc { level: level.clone(), seq: Box::new(EventualSeq::new(kept, tail)) })
        }
        BorelDesc::PiSucc { level, seq } => {
            let tail = restrict(&seq.tail, c)?;
            let explicit = seq.explicit.iter().map(|e| restrict(e, c).expect("decreasing")).collect();
            Some(BorelDesc::PiSucc { level: level.clone(), seq: Box::new(EventualSeq::new(explicit, tail)) })
        }
        BorelDesc::SigmaLim { level, seq } => {
            let tail = restrict(seq.tail.as_ref()?, c)?;
            let explicit = seq.explicit.iter().map(|e| e.as_ref().and_then(|e| restrict(e, c))).collect();
            Some(BorelDesc::SigmaLim { level: level.clone(), seq: Box::new(EventualSeq::new(explicit, Some(tail))) })
        }
        BorelDesc::PiLim { level, seq } => {
            let tail = restrict(seq.tail.as_ref()?, c)?;
            let explicit = seq.explicit.iter().map(|e| e.as_ref().map(|e| restrict(e, c).expect("decreasing"))).collect();
            Some(BorelDesc::PiLim { level: level.clone(), seq: Box::new(EventualSeq::new(explicit, Some(tail))) })
        }
    }
}

/// `d ∪ c` for a clopen `c`, as a description of the same shape.
pub fn join(d: &BorelDesc, c: &WordAutomaton) -> BorelDesc {
    let or = |a: &WordAutomaton| a.or(c).expect("small automata");
    let level = d.level();
    match d {
        BorelDesc::Closed { aut } => BorelDesc::Closed { aut: or(aut) },
        BorelDesc::Open { aut } => BorelDesc::Open { aut: or(aut) },
        BorelDesc::Empty { .. } => lift(&BorelDesc::Closed { aut: c.clone() }, &level),
        BorelDesc::SigmaSucc { seq, .. } => BorelDesc::SigmaSucc { level, seq: Box::new(seq.map(|e| join(e, c))) },
        BorelDesc::PiSucc { seq, .. } => BorelDesc::PiSucc { level, seq: Box::new(seq.map(|e| join(e, c))) },
        BorelDesc::SigmaLim { seq, .. } => {
            BorelDesc::SigmaLim { level, seq: Box::new(seq.map(|e| e.as_ref().map(|e| join(e, c)))) }
        }
        BorelDesc::PiLim { seq, .. } => BorelDesc::PiLim { level, seq: Box::new(seq.map(|e| e.as_ref().map(|e| join(e, c)))) },
    }
}

/// A random valid, nonempty, strictly shaped description.
pub fn random_desc<R: Rng + ?Sized>(rng: &mut R, shape: Shape, level: &Ordinal) -> BorelDesc {
    match level.classify() {
        Class::Zero => match shape {
            Shape::Pi => BorelDesc::Closed { aut: random_closed(rng) },
            Shape::Sigma => BorelDesc::Open { aut: random_open(rng) },
        },
        Class::Successor(p) => {
            let x = random_desc(rng, shape.flip(), &p);
            let k = rng.gen_range(0..=2);
            let (explicit, tail) = monotone_family(rng, shape, &x, k);
            let seq = Box::new(EventualSeq::new(explicit, tail));
            match shape {
                Shape::Sigma => BorelDesc::SigmaSucc { level: level.clone(), seq },
                Shape::Pi => BorelDesc::PiSucc { level: level.clone(), seq },
            }
        }
        Class::Limit => {
            let inner = shape.flip();
            // one parity of indices, so that fill-forward lifts keep shapes
            let candidates: Vec<usize> = (0..8)
                .filter(|&m| {
                    let b = fund(level, m);
                    is_closed_kind(inner, &b) == is_closed_kind(shape, level) && !(b.is_zero() && inner == Shape::Sigma)
                })
                .take(4)
                .collect();
            let count = rng.gen_range(1..=candidates.len().min(3));
            let mut chosen: Vec<usize> = candidates.choose_multiple(rng, count).copied().collect();
            chosen.sort_unstable();
            let base = fund(level, chosen[0]);
            let y = random_desc(rng, inner, &base);
            let lifted = |i: usize, d: &BorelDesc| lift(d, &fund(level, chosen[i]));
            let (items, tail) = monotone_family(rng, shape, &y, count - 1);
            let mut slots: Vec<Option<BorelDesc>> = vec![None; *chosen.last().expect("nonempty")];
            for (i, d) in items.iter().enumerate() {
                slots[chosen[i]] = Some(lifted(i, d));
            }
            let tail = Some(lifted(count - 1, &tail));
            let seq = Box::new(EventualSeq::new(slots, tail));
            match shape {
                Shape::Sigma => BorelDesc::SigmaLim { level: level.clone(), seq },
                Shape::Pi => BorelDesc::PiLim { level: level.clone(), seq },
            }
        }
    }
}

/// `k` monotone variants of `x` followed by a tail: restrictions to growing
/// cylinders for Σ, unions with shrinking cylinders for Π.
fn monotone_family<R: Rng + ?Sized>(
    rng: &mut R,
    shape: Shape,
    x: &BorelDesc,
    k: usize,
) -> (Vec<BorelDesc>, BorelDesc) {
    let plain_tail = rng.gen_bool(0.5);
    match shape {
        Shape::Sigma => {
            let point = desc_sem(x).expect("small automata").witness().expect("nonempty");
            let cyl = growing_cylinders(rng, &point, k + 1);
            let items = cyl[..k].iter().map(|c| restrict(x, c).expect("contains the point")).collect();
            let tail = if plain_tail { x.clone() } else { restrict(x, &cyl[k]).expect("contains the point") };
            (items, tail)
        }
        Shape::Pi => {
            let cyl = shrinking_cylinders(rng, k + 1);
            let items = cyl[..k].iter().map(|c| join(x, c)).collect();
            let tail = if plain_tail { x.clone() } else { join(x, &cyl[k]) };
            (items, tail)
        }
    }
}

/// The description levels exercised by the test suites.
pub fn suite_levels() -> Vec<Ordinal> {
    vec![Ordinal::nat(1), Ordinal::nat(2), Ordinal::nat(3), Ordinal::omega(), Ordinal::omega().succ()]
}

/// A random syntactically well-formed term of code level `level`, valid or not.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, level: &Ordinal) -> BranchSetTerm {
    if rng.gen_bool(0.05) {
        return BranchSetTerm::Empty { level: level.clone() };
    }
    match level.classify() {
        Class::Successor(p) if p.is_zero() => {
            let aut = match rng.gen_range(0..3) {
                0 => random_closed(rng),
                1 => random_open(rng),
                _ => {
                    let n = rng.gen_range(1..=3);
                    let t: Vec<[usize; 2]> = (0..n).map(|_| [rng.gen_range(0..n), rng.gen_range(0..n)]).collect();
                    let pr: Vec<u32> = (0..n).map(|_| rng.gen_range(0..3)).collect();
                    WordAutomaton::from_fn(2, n, 0, |q, l| t[q][l], |q| pr[q])
                }
            };
            BranchSetTerm::Leaf { aut }
        }
        Class::Successor(p) => {
            let base = match rng.gen_range(0..5) {
                0 | 1 => BaseShape::AllZero,
                2 | 3 => BaseShape::FullTree,
                _ => BaseShape::Custom(UPWord::new(random_prefix(rng, 2), random_prefix(rng, 2).into_iter().chain([1]).collect()).expect("nonempty")),
            };
            let k = rng.gen_range(0..=2);
            let inner = |rng: &mut R| random_term(rng, &p);
            let explicit = (0..k).map(|_| inner(rng)).collect();
            let tail = inner(rng);
            BranchSetTerm::Succ { level: level.clone(), base, fibers: Box::new(EventualSeq::new(explicit, tail)) }
        }
        _ => {
            let marker = *[MarkerSpec::Zero, MarkerSpec::One, MarkerSpec::Mixed].choose(rng).expect("nonempty");
            let k = rng.gen_range(0..=2);
            let part = |rng: &mut R, m: usize| {
                rng.gen_bool(0.6).then(|| random_term(rng, &fund(level, m).one_plus()))
            };
            let explicit = (0..k).map(|m| part(rng, m)).collect();
            let tail = if rng.gen_bool(0.1) { None } else { Some(random_term(rng, &fund(level, k).one_plus())) };
            BranchSetTerm::Limit { level: level.clone(), marker, parts: Box::new(EventualSeq::new(explicit, tail)) }
        }
    }
}
