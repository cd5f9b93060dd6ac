use borelwb::automata::safra::determinize;
use borelwb::automata::word::ProductMode;
use borelwb::automata::{Nwa, Pbf, RegularTree, TreeAutomaton, WordAutomaton};
use borelwb::treepower::UPWord;
use proptest::prelude::*;

fn dpw() -> impl Strategy<Value = WordAutomaton> {
    (1usize..=4).prop_flat_map(|n| {
        (
            proptest::collection::vec(proptest::collection::vec(0..n, 2), n),
            proptest::collection::vec(0u32..4, n),
        )
            .prop_map(move |(t, p)| WordAutomaton::new(2, 0, t, p).unwrap())
    })
}

fn nwa() -> impl Strategy<Value = Nwa> {
    (1usize..=3).prop_flat_map(|n| {
        (
            proptest::collection::vec(proptest::collection::vec(proptest::collection::btree_set(0..n, 0..=2), 2), n),
            proptest::collection::vec(0u32..4, n),
        )
            .prop_map(move |(t, p)| Nwa {
                letters: 2,
                initial: vec![0],
                transitions: t.into_iter().map(|r| r.into_iter().map(|s| s.into_iter().collect()).collect()).collect(),
                priorities: p,
            })
    })
}

fn words() -> Vec<UPWord> {
    UPWord::pool(2, 2, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn boolean_ops_match_simulation(a in dpw(), b in dpw()) {
        let and = a.product(&b, ProductMode::And, 10_000).unwrap();
        let or = a.product(&b, ProductMode::Or, 10_000).unwrap();
        let not = a.complement();
        for w in words() {
            let (x, y) = (a.accepts(&w).unwrap(), b.accepts(&w).unwrap());
            prop_assert_eq!(and.accepts(&w).unwrap(), x && y, "and on {}", w);
            prop_assert_eq!(or.accepts(&w).unwrap(), x || y, "or on {}", w);
            prop_assert_eq!(not.accepts(&w).unwrap(), !x);
        }
    }

    #[test]
    fn emptiness_witness_sound(a in dpw()) {
        match a.witness() {
            Some(w) => prop_assert!(a.accepts(&w).unwrap()),
            None => for w in words() { prop_assert!(!a.accepts(&w).unwrap()) },
        }
        let m = a.minimize();
        for w in words() {
            prop_assert_eq!(m.accepts(&w).unwrap(), a.accepts(&w).unwrap());
        }
    }

    #[test]
    fn determinization_matches_nondeterministic_runs(n in nwa()) {
        let d = determinize(&n, 20_000).unwrap();
        for w in words() {
            prop_assert_eq!(d.accepts(&w).unwrap(), n.accepts(&w).unwrap(), "{}", w);
        }
    }
}

fn small_trees() -> Vec<RegularTree> {
    let mut out = vec![RegularTree::constant(0), RegularTree::constant(1)];
    // all two-node graphs
    for l in 0..4u8 {
        for c in 0..16usize {
            out.push(RegularTree {
                root: 0,
                labels: vec![l & 1, l >> 1],
                children: vec![[c & 1, (c >> 1) & 1], [(c >> 2) & 1, (c >> 3) & 1]],
            });
        }
    }
    out
}

fn pbf(depth: u32, states: usize) -> BoxedStrategy<Pbf> {
    let leaf = prop_oneof![
        Just(Pbf::True),
        Just(Pbf::False),
        (0u8..2, 0..states).prop_map(|(d, q)| Pbf::Atom(d, q)),
    ];
    if depth == 0 {
        return leaf.boxed();
    }
    prop_oneof![
        leaf,
        proptest::collection::vec(pbf(depth - 1, states), 1..3).prop_map(Pbf::And),
        proptest::collection::vec(pbf(depth - 1, states), 1..3).prop_map(Pbf::Or),
    ]
    .boxed()
}

fn ata() -> impl Strategy<Value = TreeAutomaton> {
    (1usize..=2).prop_flat_map(|n| {
        (proptest::collection::vec(proptest::collection::vec(pbf(2, n), 2), n), proptest::collection::vec(0u32..3, n))
            .prop_map(move |(delta, priorities)| TreeAutomaton { letters: 2, initial: 0, delta, priorities })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn tree_dual_and_nondeterminization(a in ata()) {
        let d = a.dualize();
        let nd = a.nondeterminize(20_000).unwrap();
        prop_assert!(nd.is_nondeterministic());
        for t in small_trees() {
            let m = a.accepts(&t).unwrap();
            prop_assert_eq!(d.accepts(&t).unwrap(), !m);
            prop_assert_eq!(nd.accepts(&t).unwrap(), m);
        }
        match nd.witness(20_000).unwrap() {
            Some(w) => prop_assert!(a.accepts(&w).unwrap()),
            None => for t in small_trees() { prop_assert!(!a.accepts(&t).unwrap()) },
        }
    }
}
