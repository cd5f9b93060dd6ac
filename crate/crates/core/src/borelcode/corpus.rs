//! Named example descriptions and the malformed-term corpus with the
//! rejection each term must receive.

use super::*;

/// `{0^ω}`, closed and not open.
pub fn zeros_only() -> WordAutomaton {
    WordAutomaton::safety(2, 1, 0, |_, a| a, |q| q == 0)
}

/// Words containing a 1, open and not closed.
pub fn has_one() -> WordAutomaton {
    zeros_only().complement()
}

/// Words with infinitely many 1s, neither closed nor open.
pub fn inf_ones() -> WordAutomaton {
    WordAutomaton::from_fn(2, 2, 0, |_, a| a, |q| if q == 1 { 0 } else { 1 })
}

/// Words starting with `b`.
pub fn starts_with(b: u8) -> WordAutomaton {
    WordAutomaton::cylinder(2, &[vec![b]])
}

/// Words without two consecutive 1s, closed.
pub fn no_11() -> WordAutomaton {
    WordAutomaton::safety(2, 2, 0, |q, a| if a == 1 { q + 1 } else { 0 }, |q| q < 2)
}

fn closed(a: WordAutomaton) -> BorelDesc {
    BorelDesc::Closed { aut: a }
}

fn open(a: WordAutomaton) -> BorelDesc {
    BorelDesc::Open { aut: a }
}

fn seq<T>(explicit: Vec<T>, tail: T) -> Box<EventualSeq<T>> {
    Box::new(EventualSeq::new(explicit, tail))
}

/// Valid descriptions over the suite levels, by name.
pub fn examples() -> Vec<(&'static str, BorelDesc)> {
    let n = Ordinal::nat;
    let z_or_11 = zeros_only().or(&no_11()).expect("binary");
    let sigma1 = BorelDesc::SigmaSucc { level: n(1), seq: seq(vec![closed(zeros_only())], closed(z_or_11.clone())) };
    let pi1 = BorelDesc::PiSucc { level: n(1), seq: seq(vec![open(starts_with(0).or(&has_one()).expect("binary"))], open(has_one())) };
    let pi2 = BorelDesc::PiSucc { level: n(2), seq: seq(vec![], sigma1.clone()) };
    let sigma_omega = BorelDesc::SigmaLim { level: Ordinal::omega(), seq: seq(vec![None], Some(pi1.clone())) };
    let pi_omega1 = BorelDesc::PiSucc { level: Ordinal::omega().succ(), seq: seq(vec![], sigma_omega.clone()) };
    vec![
        ("closed-zeros", closed(zeros_only())),
        ("open-has-one", open(has_one())),
        ("empty-level-2", BorelDesc::Empty { level: n(2) }),
        ("sigma1-growing", sigma1),
        ("pi1-shrinking", pi1),
        ("pi2-constant", pi2),
        ("sigma-omega", sigma_omega),
        ("pi-omega-plus-1", pi_omega1),
    ]
}

#[derive(Clone, Debug)]
pub struct MalformedCase {
    pub name: String,
    pub term: BranchSetTerm,
    /// Name of the innermost rejection reason.
    pub reason: &'static str,
    /// Whether the rejection is reported through `InnerRejection`.
    pub nested: bool,
}

impl MalformedCase {
    /// Whether `r` is the rejection this case expects.
    pub fn matches(&self, r: &Rejection) -> bool {
        r.root().name() == self.reason && matches!(r, Rejection::InnerRejection(..)) == self.nested
    }
}

fn leaf(a: WordAutomaton) -> BranchSetTerm {
    BranchSetTerm::Leaf { aut: a }
}

fn succ(level: Ordinal, base: BaseShape, explicit: Vec<BranchSetTerm>, tail: BranchSetTerm) -> BranchSetTerm {
    BranchSetTerm::Succ { level, base, fibers: seq(explicit, tail) }
}

fn limit(level: Ordinal, marker: MarkerSpec, explicit: Vec<Option<BranchSetTerm>>, tail: Option<BranchSetTerm>) -> BranchSetTerm {
    BranchSetTerm::Limit { level, marker, parts: seq(explicit, tail) }
}

fn word(s: &str) -> UPWord {
    s.parse().expect("literal word")
}

/// Level-2 terms and their top-level rejection.
fn flat_level2() -> Vec<(&'static str, BranchSetTerm, &'static str)> {
    let two = Ordinal::nat(2);
    let s = |explicit, tail| succ(two.clone(), BaseShape::AllZero, explicit, tail);
    let p = |explicit, tail| succ(two.clone(), BaseShape::FullTree, explicit, tail);
    let custom = |w: &str| succ(two.clone(), BaseShape::Custom(word(w)), vec![], leaf(zeros_only()));
    let universal = WordAutomaton::universal(2);
    vec![
        ("base-ones", custom("(1)"), "BaseNotZeroNotFull"),
        ("base-zero-then-ones", custom("0(1)"), "BaseNotZeroNotFull"),
        ("base-one-then-zeros", custom("1(0)"), "BaseNotZeroNotFull"),
        ("base-alternating", custom("(01)"), "BaseNotZeroNotFull"),
        ("bad-sigma", s(vec![leaf(no_11())], leaf(zeros_only())), "SequenceNotMonotone"),
        ("sigma-disjoint", s(vec![leaf(starts_with(0))], leaf(starts_with(1))), "SequenceNotMonotone"),
        ("sigma-late-drop", s(vec![leaf(zeros_only()), leaf(universal.clone())], leaf(starts_with(0))), "SequenceNotMonotone"),
        ("pi-increasing", p(vec![leaf(starts_with(0))], leaf(universal.clone())), "SequenceNotMonotone"),
        ("pi-disjoint", p(vec![leaf(starts_with(1))], leaf(starts_with(0))), "SequenceNotMonotone"),
        ("sigma-first-empty", s(vec![leaf(WordAutomaton::empty(2))], leaf(zeros_only())), "FirstTermEmpty"),
        ("sigma-all-empty", s(vec![], leaf(WordAutomaton::empty(2))), "FirstTermEmpty"),
        ("sigma-open-fiber", s(vec![], leaf(has_one())), "KindMismatch"),
        ("pi-closed-fiber", p(vec![], leaf(zeros_only())), "KindMismatch"),
        ("pi-late-closed-fiber", p(vec![leaf(universal.clone())], leaf(no_11())), "KindMismatch"),
        ("fiber-wrong-level", s(vec![], BranchSetTerm::Empty { level: two.clone() }), "LevelMismatch"),
    ]
}

/// Terms rejected through a reason reported inside a fiber or part.
fn flat_nested() -> Vec<(&'static str, BranchSetTerm, &'static str)> {
    let two = Ordinal::nat(2);
    let s = |tail| succ(two.clone(), BaseShape::AllZero, vec![], tail);
    vec![
        ("fiber-neither-closed-nor-open", s(leaf(inf_ones())), "NotClosedOrOpen"),
        ("fiber-three-letters", s(leaf(WordAutomaton::universal(3))), "BadAlphabet"),
        ("fiber-succ-at-level-1", s(succ(Ordinal::nat(1), BaseShape::AllZero, vec![], leaf(zeros_only()))), "LevelMismatch"),
    ]
}

/// Top-level terms that are not successor terms at level 2.
fn flat_other() -> Vec<(&'static str, BranchSetTerm, &'static str)> {
    let w = Ordinal::omega;
    let ok2 = succ(Ordinal::nat(2), BaseShape::AllZero, vec![], leaf(zeros_only()));
    vec![
        ("leaf-neither-closed-nor-open", leaf(inf_ones()), "NotClosedOrOpen"),
        ("leaf-three-letters", leaf(WordAutomaton::universal(3)), "BadAlphabet"),
        ("succ-at-level-1", succ(Ordinal::nat(1), BaseShape::AllZero, vec![], leaf(zeros_only())), "LevelMismatch"),
        ("empty-at-level-0", BranchSetTerm::Empty { level: Ordinal::zero() }, "LevelMismatch"),
        ("succ-at-limit-level", succ(w(), BaseShape::AllZero, vec![], leaf(zeros_only())), "LevelMismatch"),
        ("limit-at-successor-level", limit(Ordinal::nat(3), MarkerSpec::Zero, vec![], Some(ok2.clone())), "LevelMismatch"),
        ("limit-marker-mixed", limit(w(), MarkerSpec::Mixed, vec![None], Some(ok2.clone())), "MarkerMixed"),
        ("limit-support-finite", limit(w(), MarkerSpec::Zero, vec![Some(leaf(zeros_only()))], None), "SupportNotCofinal"),
        ("limit-support-empty", limit(w(), MarkerSpec::One, vec![], None), "SupportNotCofinal"),
        ("limit-part-wrong-level", limit(w(), MarkerSpec::Zero, vec![], Some(ok2.clone())), "LevelMismatch"),
        ("limit-open-part-in-sigma", limit(w(), MarkerSpec::Zero, vec![], Some(leaf(has_one()))), "KindMismatch"),
        (
            "limit-decreasing",
            limit(w(), MarkerSpec::Zero, vec![Some(leaf(WordAutomaton::universal(2)))], Some(ok2.clone())),
            "SequenceNotMonotone",
        ),
        (
            "limit-first-empty",
            limit(w(), MarkerSpec::Zero, vec![Some(leaf(WordAutomaton::empty(2)))], Some(ok2)),
            "FirstTermEmpty",
        ),
    ]
}

/// The malformed corpus: flat cases plus every level-2 case wrapped at
/// levels 3, ω and ω+1.
pub fn malformed() -> Vec<MalformedCase> {
    let mut out = Vec::new();
    let mut push = |name: String, term, reason, nested| out.push(MalformedCase { name, term, reason, nested });
    let level2 = flat_level2();
    for (name, term, reason) in &level2 {
        push(name.to_string(), term.clone(), *reason, false);
    }
    for (name, term, reason) in flat_nested() {
        push(name.to_string(), term, reason, true);
    }
    for (name, term, reason) in flat_other() {
        push(name.to_string(), term, reason, false);
    }
    for (name, term, reason) in &level2 {
        let at3 = succ(Ordinal::nat(3), BaseShape::FullTree, vec![], term.clone());
        push(format!("{name}-in-3"), at3, *reason, true);
        let at_w = limit(Ordinal::omega(), MarkerSpec::Zero, vec![None], Some(term.clone()));
        push(format!("{name}-in-w"), at_w.clone(), *reason, true);
        let at_w1 = succ(Ordinal::omega().succ(), BaseShape::AllZero, vec![], at_w);
        push(format!("{name}-in-w1"), at_w1, *reason, true);
    }
    out
}
