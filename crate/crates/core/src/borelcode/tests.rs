use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::gen::*;
use super::*;

fn w(s: &str) -> UPWord {
    s.parse().unwrap()
}

fn cyl(prefixes: &[&[u8]]) -> WordAutomaton {
    WordAutomaton::cylinder(2, &prefixes.iter().map(|p| p.to_vec()).collect::<Vec<_>>())
}

/// {0^ω}
fn zeros_only() -> WordAutomaton {
    WordAutomaton::safety(2, 1, 0, |_, l| if l == 0 { 0 } else { 1 }, |q| q == 0)
}

/// Words with no two consecutive 1s.
fn no_11() -> WordAutomaton {
    WordAutomaton::safety(2, 2, 0, |q, l| if l == 0 { 0 } else if q == 0 { 1 } else { 2 }, |q| q < 2)
}

fn closed(a: WordAutomaton) -> BorelDesc {
    BorelDesc::Closed { aut: a }
}

fn open(a: WordAutomaton) -> BorelDesc {
    BorelDesc::Open { aut: a }
}

fn sigma(level: u64, explicit: Vec<BorelDesc>, tail: BorelDesc) -> BorelDesc {
    BorelDesc::SigmaSucc { level: Ordinal::nat(level), seq: Box::new(EventualSeq::new(explicit, tail)) }
}

fn pi(level: u64, explicit: Vec<BorelDesc>, tail: BorelDesc) -> BorelDesc {
    BorelDesc::PiSucc { level: Ordinal::nat(level), seq: Box::new(EventualSeq::new(explicit, tail)) }
}

fn sem_eq(a: &WordAutomaton, b: &WordAutomaton) -> bool {
    a.equivalent(b).unwrap()
}

fn decoded_sem(t: &BranchSetTerm) -> WordAutomaton {
    desc_sem(&decode(t).unwrap()).unwrap()
}

#[test]
fn sem_of_basic_descriptions() {
    let z = desc_sem(&closed(zeros_only())).unwrap();
    assert!(z.accepts(&w("(0)")).unwrap());
    assert!(!z.accepts(&w("1(0)")).unwrap());
    let full = sigma(1, vec![closed(zeros_only())], closed(WordAutomaton::universal(2)));
    assert!(sem_eq(&desc_sem(&full).unwrap(), &WordAutomaton::universal(2)));
}

#[test]
fn sem_of_decreasing_intersection() {
    let a = cyl(&[&[0]]).or(&no_11().complement()).unwrap();
    let b = cyl(&[&[0, 0], &[1, 0]]);
    let ab = a.and(&b).unwrap();
    let d = pi(1, vec![open(a.clone()), open(ab.clone())], open(ab.clone()));
    let s = desc_sem(&d).unwrap();
    for word in UPWord::pool(2, 3, 3).into_iter().take(50) {
        let expect = a.accepts(&word).unwrap() && b.accepts(&word).unwrap();
        assert_eq!(s.accepts(&word).unwrap(), expect, "{word}");
    }
}

#[test]
fn validation() {
    let c0 = zeros_only();
    let not_closed = sigma(1, vec![closed(c0.clone())], closed(c0.complement()));
    assert_eq!(desc_validate(&not_closed), Err(Violation::NotClosed));
    let c1 = c0.or(&no_11()).unwrap();
    let ok = sigma(1, vec![closed(c0.clone()), closed(c1.clone())], closed(c1.clone()));
    assert_eq!(desc_validate(&ok), Ok(()));
    let first_empty = sigma(1, vec![BorelDesc::Empty { level: Ordinal::zero() }], closed(c1.clone()));
    assert_eq!(desc_validate(&first_empty), Err(Violation::FirstTermEmpty));
    let growing = pi(1, vec![open(cyl(&[&[0]]))], open(WordAutomaton::universal(2)));
    assert_eq!(desc_validate(&growing), Err(Violation::NotMonotone(1)));
    let wrong_kind = sigma(1, vec![], open(cyl(&[&[0]]).or(&no_11().complement()).unwrap()));
    assert_eq!(desc_validate(&wrong_kind), Err(Violation::KindMismatch(0)));
    let wrong_level = sigma(2, vec![], closed(c0.clone()));
    assert_eq!(desc_validate(&wrong_level), Err(Violation::LevelMismatch));
    let no_tail = BorelDesc::SigmaLim { level: Ordinal::omega(), seq: Box::new(EventualSeq::new(vec![Some(closed(c0.clone()))], None)) };
    assert_eq!(desc_validate(&no_tail), Err(Violation::BadLimitTags));
    let bad_tag = BorelDesc::SigmaLim { level: Ordinal::omega(), seq: Box::new(EventualSeq::constant(Some(closed(c0)))) };
    assert_eq!(desc_validate(&bad_tag), Ok(()));
    let bad_tag = BorelDesc::SigmaLim {
        level: Ordinal::omega(),
        seq: Box::new(EventualSeq::new(vec![None], Some(BorelDesc::Empty { level: Ordinal::zero() }))),
    };
    assert_eq!(desc_validate(&bad_tag), Err(Violation::BadLimitTags));
}

#[test]
fn encode_examples() {
    let h = zeros_only();
    assert_eq!(encode(&closed(h.clone())).unwrap(), BranchSetTerm::Leaf { aut: h.clone() });
    let c1 = h.or(&no_11()).unwrap();
    let d = sigma(1, vec![closed(h.clone())], closed(c1.clone()));
    let BranchSetTerm::Succ { level, base, fibers } = encode(&d).unwrap() else { panic!() };
    assert_eq!(level, Ordinal::nat(2));
    assert_eq!(base, BaseShape::AllZero);
    assert_eq!(fibers.explicit, vec![BranchSetTerm::Leaf { aut: h.clone() }]);
    assert_eq!(fibers.tail, BranchSetTerm::Leaf { aut: c1 });
    let empty_pi = pi(1, vec![open(cyl(&[&[0]]))], open(cyl(&[&[0]]).and(&cyl(&[&[1]])).unwrap()));
    assert_eq!(encode(&empty_pi).unwrap(), BranchSetTerm::Empty { level: Ordinal::nat(2) });
    assert_eq!(encode(&BorelDesc::Empty { level: Ordinal::omega() }).unwrap(), BranchSetTerm::Empty { level: Ordinal::omega() });
}

#[test]
fn decode_rejections() {
    let h = zeros_only();
    let c1 = h.or(&no_11()).unwrap();
    let leaf = |a: &WordAutomaton| BranchSetTerm::Leaf { aut: a.clone() };
    let succ = |base: BaseShape, explicit: Vec<BranchSetTerm>, tail: BranchSetTerm| BranchSetTerm::Succ {
        level: Ordinal::nat(2),
        base,
        fibers: Box::new(EventualSeq::new(explicit, tail)),
    };
    let decreasing = succ(BaseShape::AllZero, vec![leaf(&c1)], leaf(&h));
    assert_eq!(decode(&decreasing), Err(Rejection::SequenceNotMonotone(1)));
    let custom = succ(BaseShape::Custom(w("(1)")), vec![], leaf(&h));
    assert_eq!(decode(&custom), Err(Rejection::BaseNotZeroNotFull));
    let zero_custom = succ(BaseShape::Custom(w("0(0)")), vec![], leaf(&h));
    assert!(matches!(decode(&zero_custom), Ok(BorelDesc::SigmaSucc { .. })));
    let mixed = BranchSetTerm::Limit {
        level: Ordinal::omega(),
        marker: MarkerSpec::Mixed,
        parts: Box::new(EventualSeq::constant(Some(leaf(&h)))),
    };
    assert_eq!(decode(&mixed), Err(Rejection::MarkerMixed));
    let inner = succ(BaseShape::AllZero, vec![], BranchSetTerm::Succ {
        level: Ordinal::nat(1),
        base: BaseShape::AllZero,
        fibers: Box::new(EventualSeq::constant(leaf(&h))),
    });
    assert_eq!(decode(&inner), Err(Rejection::InnerRejection(0, Box::new(Rejection::LevelMismatch))));
    let misplaced = succ(BaseShape::AllZero, vec![], BranchSetTerm::Empty { level: Ordinal::nat(2) });
    assert_eq!(decode(&misplaced), Err(Rejection::LevelMismatch));
    let nested = BranchSetTerm::Succ {
        level: Ordinal::nat(3),
        base: BaseShape::FullTree,
        fibers: Box::new(EventualSeq::constant(custom.clone())),
    };
    let r = decode(&nested).unwrap_err();
    assert_eq!(r, Rejection::InnerRejection(0, Box::new(Rejection::BaseNotZeroNotFull)));
    assert_eq!(r.root().name(), "BaseNotZeroNotFull");
}

#[test]
fn decode_inverts_encode() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for level in suite_levels() {
        for shape in [Shape::Sigma, Shape::Pi] {
            let d = random_desc(&mut rng, shape, &level);
            desc_validate(&d).unwrap();
            let s = desc_sem(&d).unwrap();
            assert!(if is_closed_kind(shape, &level) { s.is_closed() } else { s.is_open() }, "{level} {shape:?}");
            let back = decode(&encode(&d).unwrap()).unwrap();
            assert!(sem_eq(&desc_sem(&back).unwrap(), &desc_sem(&d).unwrap()));
        }
    }
}

#[test]
fn lifting_preserves_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let d = random_desc(&mut rng, Shape::Pi, &Ordinal::nat(1));
    for target in [Ordinal::nat(2), Ordinal::nat(5), Ordinal::omega(), Ordinal::omega().succ(), Ordinal::omega_pow(1, 2)] {
        let l = lift(&d, &target);
        assert_eq!(l.level(), target);
        desc_validate(&l).unwrap();
        assert!(sem_eq(&desc_sem(&l).unwrap(), &desc_sem(&d).unwrap()));
        let t = lift_term(&encode(&d).unwrap(), &code_level(&target));
        assert_eq!(t, encode(&l).unwrap());
    }
}

#[test]
fn operations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for level in suite_levels() {
        let a = random_desc(&mut rng, Shape::Sigma, &level);
        let b = random_desc(&mut rng, Shape::Sigma, &level);
        let (ca, cb) = (encode(&a).unwrap(), encode(&b).unwrap());
        let (sa, sb) = (desc_sem(&a).unwrap(), desc_sem(&b).unwrap());
        let meet = code_intersect(&ca, &cb).unwrap();
        assert!(sem_eq(&decoded_sem(&meet), &sa.and(&sb).unwrap()), "{level}");
        let join = code_union(&ca, &cb).unwrap();
        assert!(sem_eq(&decoded_sem(&join), &sa.or(&sb).unwrap()), "{level}");
    }
}

#[test]
fn intersection_with_full_space() {
    let h = zeros_only().or(&no_11()).unwrap();
    let c = encode(&sigma(1, vec![closed(zeros_only())], closed(h))).unwrap();
    let full = encode(&sigma(1, vec![], closed(WordAutomaton::universal(2)))).unwrap();
    assert!(code_equiv(&code_intersect(&c, &full).unwrap(), &c));
}

#[test]
fn sigma_intersection_trims_empty_prefix() {
    // early terms live in disjoint cylinders
    let a = sigma(1, vec![closed(cyl(&[&[0]]).and(&no_11()).unwrap())], closed(no_11()));
    let b = sigma(1, vec![closed(cyl(&[&[1]]).and(&zeros_only().or(&no_11()).unwrap()).unwrap())], closed(no_11()));
    let meet = code_intersect(&encode(&a).unwrap(), &encode(&b).unwrap()).unwrap();
    let BranchSetTerm::Succ { fibers, .. } = &meet else { panic!("{meet:?}") };
    assert!(fibers.explicit.is_empty());
    assert!(sem_eq(&decoded_sem(&meet), &no_11()));
}

#[test]
fn pi_intersection_is_pairwise() {
    let a = pi(1, vec![open(cyl(&[&[0], &[1, 1]]))], open(cyl(&[&[0]])));
    let b = pi(1, vec![open(cyl(&[&[0, 0], &[1]]))], open(cyl(&[&[0, 0]])));
    let meet = code_intersect(&encode(&a).unwrap(), &encode(&b).unwrap()).unwrap();
    let BranchSetTerm::Succ { fibers, .. } = &meet else { panic!() };
    let first = BranchSetTerm::Leaf { aut: cyl(&[&[0], &[1, 1]]).and(&cyl(&[&[0, 0], &[1]])).unwrap() };
    assert!(code_equiv(&fibers.explicit[0], &first));
    assert!(sem_eq(&decoded_sem(&meet), &cyl(&[&[0, 0]])));
}

#[test]
fn operation_errors() {
    let s = encode(&sigma(1, vec![], closed(no_11()))).unwrap();
    let p = encode(&pi(1, vec![], open(cyl(&[&[0]])))).unwrap();
    assert_eq!(code_intersect(&s, &p), Err(CodeOpError::IncompatibleShape));
    assert_eq!(code_union(&s, &BranchSetTerm::Leaf { aut: no_11() }), Err(CodeOpError::LevelMismatch));
}

#[test]
fn equivalence_of_terms() {
    let h = no_11();
    let d1 = sigma(1, vec![], closed(h.clone()));
    let d2 = sigma(1, vec![closed(zeros_only())], closed(h.clone()));
    assert!(code_equiv(&encode(&d1).unwrap(), &encode(&d2).unwrap()));
    let bad = BranchSetTerm::Succ {
        level: Ordinal::nat(2),
        base: BaseShape::Custom(w("(1)")),
        fibers: Box::new(EventualSeq::constant(BranchSetTerm::Leaf { aut: h.clone() })),
    };
    let bad2 = BranchSetTerm::Succ {
        level: Ordinal::nat(2),
        base: BaseShape::AllZero,
        fibers: Box::new(EventualSeq::new(vec![BranchSetTerm::Leaf { aut: h.clone() }], BranchSetTerm::Leaf { aut: zeros_only() })),
    };
    assert!(!code_equiv(&encode(&d1).unwrap(), &bad));
    assert!(code_equiv(&bad, &bad2));
}

#[test]
fn membership_and_witnesses() {
    let h = no_11();
    let leaf = BranchSetTerm::Leaf { aut: h.clone() };
    assert!(branch_in_code(&BranchRep::leaf(w("(01)")), &leaf).unwrap());
    assert!(!branch_in_code(&BranchRep::leaf(w("(011)")), &leaf).unwrap());
    let c = encode(&sigma(1, vec![closed(zeros_only())], closed(h))).unwrap();
    let good = BranchRep::node(UPWord::zeros(), EventualSeq::new(vec![BranchRep::leaf(w("(0)"))], BranchRep::leaf(w("(10)"))));
    assert!(branch_in_code(&good, &c).unwrap());
    let bad_fiber = BranchRep::node(UPWord::zeros(), EventualSeq::constant(BranchRep::leaf(w("(10)"))));
    assert!(!branch_in_code(&bad_fiber, &c).unwrap());
    let bad_base = BranchRep::node(w("1(0)"), EventualSeq::constant(BranchRep::leaf(w("(0)"))));
    assert!(!branch_in_code(&bad_base, &c).unwrap());
    assert_eq!(branch_in_code(&BranchRep::leaf(w("(0)")), &c), Err(CodeOpError::LevelMismatch));

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for level in suite_levels() {
        for shape in [Shape::Sigma, Shape::Pi] {
            let c = encode(&random_desc(&mut rng, shape, &level)).unwrap();
            let b = code_witness(&c).expect("nonempty code");
            assert!(crate::treepower::branch_check(&b).is_ok());
            assert!(branch_in_code(&b, &c).unwrap(), "{level} {shape:?}");
        }
    }
}

#[test]
fn complements_are_not_codes_of_the_pool() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let level = Ordinal::nat(2);
    let pool: Vec<Code> = (0..10).map(|_| encode(&random_desc(&mut rng, Shape::Sigma, &level)).unwrap()).collect();
    for c in &pool {
        let b0 = code_witness(c).unwrap();
        let BranchBody::Node { fibers, .. } = &b0.body else { panic!() };
        let b1 = BranchRep::node(UPWord::constant(1), (**fibers).clone());
        // the complement of c contains b1 but not b0
        assert!(branch_in_code(&b0, c).unwrap());
        assert!(!branch_in_code(&b1, c).unwrap());
        for t in &pool {
            assert!(!branch_in_code(&b1, t).unwrap());
        }
    }
}

#[test]
fn random_terms_terminate() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for level in suite_levels() {
        for _ in 0..10 {
            let t = random_term(&mut rng, &code_level(&level));
            let _ = decode(&t);
        }
    }
}

#[test]
fn serde_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let d = random_desc(&mut rng, Shape::Pi, &Ordinal::omega());
    let text = serde_json::to_string(&d).unwrap();
    assert_eq!(serde_json::from_str::<BorelDesc>(&text).unwrap(), d);
    let c = encode(&d).unwrap();
    let text = serde_json::to_string(&c).unwrap();
    assert_eq!(serde_json::from_str::<BranchSetTerm>(&text).unwrap(), c);
}
