//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach the output.

use std::collections::{BTreeMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use borelwb::automata::game::{parity_solve, Owner, ParityGame};
use borelwb::automata::word::ProductMode;
use borelwb::automata::WordAutomaton;
use borelwb::borelcode::corpus::malformed;
use borelwb::borelcode::gen::{random_desc, suite_levels};
use borelwb::borelcode::{code_intersect, code_union, decode, desc_sem, encode, BorelDesc, Code, CodeOpError, Shape};
use borelwb::games::{catalog as game_catalog, gs_solve, oracle_clopen_solve, table_payoff, verify_strategy, Player};
use borelwb::mso::regression::REGRESSION;
use borelwb::mso::{
    branch_power, decide_cantor, decide_cantor_codes, decide_s2s, down_power, embed_f, eval_bounded, eval_in, is_set_var,
    meets, parse_cantor, parse_mso, path_power, stable_depth, translate_tf, Binding, BoundedTree, Formula,
    PowerTruncation, Structure, Value,
};
use borelwb::ordinal::Ordinal;
use borelwb::topology::{cantor_dist, image_closed_probe, node_embed, product_dist, ProbeVariant, ProductPoint};
use borelwb::treepower::{enumerate, has_descending_cycle, le, restrict, NodeSeq, UPWord};
use borelwb::wlo::{
    antichain, catalog as wl_catalog, chain, lambda_shape, posets_up_to_iso, wl_degree, wl_oracle, wl_report,
    FinitePoset, SimVariant,
};
use borelwb::Rational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

// 1

const WL_POSET_SIZE: usize = 8;

fn wl_catalog_and_oracle() -> Outcome {
    for v in SimVariant::ALL {
        ensure(wl_degree(&antichain(0), v) == -1, || format!("wl(empty) under {v:?}"))?;
        for n in 1..=WL_POSET_SIZE {
            ensure(wl_degree(&chain(n), v) == 0, || format!("wl(chain {n}) under {v:?}"))?;
            ensure(wl_degree(&antichain(n), v) == 0, || format!("wl(antichain {n}) under {v:?}"))?;
        }
        ensure(wl_degree(&lambda_shape(), v) == 1, || format!("wl(lambda) under {v:?}"))?;
    }
    let mut discrepancies = Vec::new();
    for e in wl_catalog() {
        let r = wl_report(&e.poset, Some(e.claim));
        for v in SimVariant::ALL {
            ensure(wl_oracle(&e.poset, v) == wl_degree(&e.poset, v), || format!("oracle on {} under {v:?}", e.name))?;
        }
        ensure(r.discrepancy == (r.literal != e.claim), || format!("discrepancy flag on {}", e.name))?;
        if r.discrepancy {
            discrepancies.push(format!("{} literal {} amended {} stated {}", e.name, r.literal, r.amended, e.claim));
        }
    }
    let mut checked = 0;
    for level in posets_up_to_iso(WL_POSET_SIZE) {
        for p in level {
            for v in SimVariant::ALL {
                let (got, want) = (wl_degree(&p, v), wl_oracle(&p, v));
                ensure(got == want, || format!("{:?} under {v:?}: engine {got}, oracle {want}", p.to_file()))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} posets up to {WL_POSET_SIZE} elements agree with the oracle; reported: {}", discrepancies.join("; ")))
}

// 2

fn downsets_never_raise_wl(p: &FinitePoset) -> Result<usize, String> {
    let mut n = 0;
    for v in SimVariant::ALL {
        let whole = wl_degree(p, v);
        ensure(whole >= -1 && whole < p.len() as i32, || format!("wl {whole} out of range on {:?}", p.to_file()))?;
        for d in p.downsets() {
            let q = wl_degree(&p.restrict(d), v);
            ensure(q <= whole, || format!("downset {d:#b} of {:?} has wl {q} > {whole} under {v:?}", p.to_file()))?;
            n += 1;
        }
    }
    Ok(n)
}

fn truncation_poset(pool: &[NodeSeq]) -> FinitePoset {
    let names = (0..pool.len()).map(|i| format!("x{i}")).collect();
    let down = pool
        .iter()
        .map(|y| (0..pool.len()).filter(|&i| le(&pool[i], y).expect("same level")).fold(0u32, |m, i| m | 1 << i))
        .collect();
    FinitePoset::from_down_masks(names, down).expect("truncation is an order")
}

fn downward_closure_and_descent() -> Outcome {
    let mut pairs = 0;
    for level in posets_up_to_iso(WL_POSET_SIZE) {
        for p in level {
            pairs += downsets_never_raise_wl(&p)?;
        }
    }
    let mut elems = 0;
    for (lv, max_len) in [(2, 2), (3, 2)] {
        let pool = enumerate(&Ordinal::nat(lv), max_len, 8, 1 << 12).map_err(|e| e.to_string())?;
        ensure(!has_descending_cycle(&pool), || format!("descending cycle in T^{lv}"))?;
        elems += pool.len();
    }
    for lv in [2, 3] {
        let pool = enumerate(&Ordinal::nat(lv), 1, 8, 1 << 12).map_err(|e| e.to_string())?;
        pairs += downsets_never_raise_wl(&truncation_poset(&pool))?;
    }
    Ok(format!("{pairs} downset comparisons; no descending cycle among {elems} truncation elements"))
}

// 3

const ROUND_TRIPS_PER_CELL: usize = 20;

fn round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut n = 0;
    for level in suite_levels() {
        for shape in [Shape::Sigma, Shape::Pi] {
            for _ in 0..ROUND_TRIPS_PER_CELL {
                let d = random_desc(&mut rng, shape, &level);
                let c = encode(&d).map_err(|e| format!("encode at {level}: {e}"))?;
                let back = decode(&c).map_err(|e| format!("decode at {level}: {e}"))?;
                let same = desc_sem(&back).and_then(|b| b.equivalent(&desc_sem(&d)?)).map_err(|e| e.to_string())?;
                ensure(same, || format!("round trip changes the set at level {level}"))?;
                n += 1;
            }
        }
    }
    ensure(n >= 200, || format!("only {n} descriptions"))?;
    Ok(format!("{n} descriptions over levels 1, 2, 3, w, w+1"))
}

// 4

const REASONS: &[&str] = &[
    "BaseNotZeroNotFull",
    "SequenceNotMonotone",
    "FirstTermEmpty",
    "MarkerMixed",
    "SupportNotCofinal",
    "NotClosedOrOpen",
    "KindMismatch",
    "LevelMismatch",
    "BadAlphabet",
];

fn malformed_corpus() -> Outcome {
    let cases = malformed();
    ensure(cases.len() >= 30, || format!("only {} cases", cases.len()))?;
    let mut seen = HashSet::new();
    let mut nested = 0;
    for c in &cases {
        match decode(&c.term) {
            Ok(_) => return Err(format!("{} decodes", c.name)),
            Err(r) if c.matches(&r) => {
                seen.insert(c.reason);
                nested += usize::from(c.nested);
            }
            Err(r) => return Err(format!("{}: expected {}, got {r}", c.name, c.reason)),
        }
    }
    let missing: Vec<_> = REASONS.iter().filter(|r| !seen.contains(*r)).collect();
    ensure(missing.is_empty(), || format!("no case for {missing:?}"))?;
    Ok(format!("{} terms ({nested} nested), {} reasons", cases.len(), REASONS.len()))
}

// 5

const POOL: usize = 20;

type CodeOp = fn(&Code, &Code) -> Result<Code, CodeOpError>;

fn code_operations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut checked = 0;
    let mut refused = 0;
    for level in suite_levels() {
        let pool: Vec<BorelDesc> =
            (0..POOL).map(|i| random_desc(&mut rng, if i % 2 == 0 { Shape::Sigma } else { Shape::Pi }, &level)).collect();
        let sems: Vec<WordAutomaton> = pool.iter().map(desc_sem).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        let codes: Vec<_> = pool.iter().map(encode).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        for i in 0..POOL {
            for j in i..POOL {
                let same_shape = i % 2 == j % 2;
                for (op, name) in [(code_intersect as CodeOp, "intersect"), (code_union, "union")] {
                    match op(&codes[i], &codes[j]) {
                        Err(CodeOpError::IncompatibleShape) if !same_shape => refused += 1,
                        Err(e) => return Err(format!("{name} {i},{j} at {level}: {e}")),
                        Ok(c) => {
                            let got = desc_sem(&decode(&c).map_err(|e| format!("{name} result: {e}"))?).map_err(|e| e.to_string())?;
                            let want = if name == "intersect" { sems[i].and(&sems[j]) } else { sems[i].or(&sems[j]) }
                                .map_err(|e| e.to_string())?;
                            ensure(got.equivalent(&want).map_err(|e| e.to_string())?, || format!("{name} {i},{j} at {level}"))?;
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{checked} results equivalent to the set operation; {refused} mixed-shape pairs refused"))
}

// 6

const WORD_TRIPLES: usize = 500;
const POINT_TRIPLES: usize = 200;

fn metric_laws(d: &dyn Fn(usize, usize) -> Rational, eq: &dyn Fn(usize, usize) -> bool, bound: &Rational, t: [usize; 3]) -> Result<(), String> {
    let [x, y, z] = t;
    ensure(d(x, y) == d(y, x), || format!("asymmetric on {t:?}"))?;
    ensure(d(x, y).is_zero() == eq(x, y), || format!("identity of indiscernibles on {t:?}"))?;
    ensure(d(x, y) >= Rational::zero() && d(x, y) <= *bound, || format!("bound on {t:?}"))?;
    ensure(d(x, z) <= d(x, y) + d(y, z), || format!("triangle on {t:?}"))
}

fn random_point(rng: &mut ChaCha8Rng, words: &[UPWord], positions: &[Ordinal]) -> ProductPoint {
    let mut p = ProductPoint::default();
    for pos in positions {
        if rng.gen_bool(0.4) {
            p.coords.insert(pos.clone(), words[rng.gen_range(0..words.len())].clone());
        }
    }
    p
}

fn metric_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let words = UPWord::pool(2, 3, 3);
    let half = Rational::one() / Rational::from_integer(2.into());
    for _ in 0..WORD_TRIPLES {
        let t = [0; 3].map(|_| rng.gen_range(0..words.len()));
        metric_laws(&|a, b| cantor_dist(&words[a], &words[b]), &|a, b| words[a] == words[b], &half, t)?;
    }
    let index: Ordinal = "w*2".parse().map_err(|e| format!("{e:?}"))?;
    let positions: Vec<Ordinal> = ["0", "1", "3", "w", "w+2"].iter().map(|s| s.parse().expect("ordinal")).collect();
    let small = UPWord::pool(2, 1, 2);
    for _ in 0..POINT_TRIPLES {
        let pts: Vec<ProductPoint> = (0..3).map(|_| random_point(&mut rng, &small, &positions)).collect();
        let same = |a: usize, b: usize| positions.iter().all(|p| pts[a].get(p) == pts[b].get(p));
        let dist = |a: usize, b: usize| product_dist::<Rational>(&pts[a], &pts[b], &index).expect("positions below index");
        metric_laws(&dist, &same, &Rational::one(), [0, 1, 2])?;
    }
    let mut pools = 0;
    for lv in [2u64, 3] {
        let level = Ordinal::nat(lv);
        let pool = enumerate(&level, 2, 8, 1 << 12).map_err(|e| e.to_string())?;
        let mut images = HashSet::new();
        for t in &pool {
            let e = node_embed(t);
            ensure(images.insert(e.clone()), || format!("e_{lv} not injective at {t:?}"))?;
            for b in 1..lv {
                let beta = Ordinal::nat(b);
                let below: BTreeMap<_, _> = e.iter().filter(|(p, _)| **p < beta).map(|(p, n)| (p.clone(), n.clone())).collect();
                let r = restrict(t, &beta).map_err(|e| e.to_string())?;
                ensure(below == node_embed(&r), || format!("coherence at {t:?} below {b}"))?;
            }
        }
        pools += pool.len();
    }
    let level = Ordinal::nat(2);
    let vacuous = image_closed_probe(&level, 2, ProbeVariant::Unrestricted, 4, 1 << 16).map_err(|e| e.to_string())?;
    ensure(vacuous.non_image == 0, || "unrestricted image misses prefixes".into())?;
    let probe = image_closed_probe(&level, 2, ProbeVariant::LeftmostTop, 4, 1 << 16).map_err(|e| e.to_string())?;
    ensure(probe.non_image > 0 && probe.all_witnessed(), || {
        format!("{} of {} non-image prefixes witnessed", probe.witnessed, probe.non_image)
    })?;
    Ok(format!(
        "{WORD_TRIPLES} word and {POINT_TRIPLES} point triples; e_a on {pools} elements; {}/{} non-image prefixes witnessed",
        probe.witnessed, probe.non_image
    ))
}

// 7

fn s2s_suite() -> Outcome {
    ensure(REGRESSION.len() == 30, || format!("{} sentences", REGRESSION.len()))?;
    for &(text, truth) in REGRESSION {
        let f = parse_mso(text).map_err(|e| format!("{text}: {e}"))?;
        let d = stable_depth(&f).ok_or_else(|| format!("{text} is outside the bounded fragment"))?;
        let bounded = eval_bounded(&f, d, &BTreeMap::new()).map_err(|e| format!("{text}: {e}"))?;
        let got = decide_s2s(&f).map_err(|e| format!("{text}: {e}"))?;
        let neg = decide_s2s(&f.negate()).map_err(|e| format!("not {text}: {e}"))?;
        ensure(bounded == truth, || format!("{text}: bounded evaluator says {bounded}"))?;
        ensure(got == truth, || format!("{text}: decided {got}"))?;
        ensure(neg == !got, || format!("{text}: negation decided {neg}"))?;
    }
    Ok(format!("{} sentences and their negations", REGRESSION.len()))
}

// 8

const AUTOMATON_PAIRS: usize = 1000;

fn random_dpw(rng: &mut ChaCha8Rng) -> WordAutomaton {
    let n = rng.gen_range(1..=4);
    let t = (0..n).map(|_| vec![rng.gen_range(0..n), rng.gen_range(0..n)]).collect();
    let p = (0..n).map(|_| rng.gen_range(0..4)).collect();
    WordAutomaton::new(2, 0, t, p).expect("total automaton")
}

fn automata_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let words = UPWord::pool(2, 3, 3);
    for i in 0..AUTOMATON_PAIRS {
        let (a, b) = (random_dpw(&mut rng), random_dpw(&mut rng));
        let w = &words[rng.gen_range(0..words.len())];
        let sim = |m: &WordAutomaton| m.accepts(w).map_err(|e| e.to_string());
        let (x, y) = (sim(&a)?, sim(&b)?);
        let and = a.product(&b, ProductMode::And, 10_000).map_err(|e| e.to_string())?;
        let or = a.product(&b, ProductMode::Or, 10_000).map_err(|e| e.to_string())?;
        ensure(sim(&and)? == (x && y), || format!("pair {i}: and on {w}"))?;
        ensure(sim(&or)? == (x || y), || format!("pair {i}: or on {w}"))?;
        ensure(sim(&a.complement())? == !x, || format!("pair {i}: complement on {w}"))?;
    }
    Ok(format!("{AUTOMATON_PAIRS} pairs, and/or/complement"))
}

// 9

/// Vertices won by Even: some positional Even strategy beats every
/// positional Odd strategy.
fn parity_oracle(g: &ParityGame) -> Vec<bool> {
    let n = g.len();
    let mine = |o: Owner| (0..n).filter(|&v| g.owner[v] == o).collect::<Vec<_>>();
    let profiles = |vs: &[usize]| -> Vec<Vec<usize>> {
        vs.iter().fold(vec![vec![0; n]], |acc, &v| {
            acc.into_iter()
                .flat_map(|s| {
                    g.succ[v].iter().map(move |&w| {
                        let mut s = s.clone();
                        s[v] = w;
                        s
                    })
                })
                .collect()
        })
    };
    let (even, odd) = (profiles(&mine(Owner::Even)), profiles(&mine(Owner::Odd)));
    let mut won = vec![false; n];
    for s in &even {
        let mut all = vec![true; n];
        for t in &odd {
            let next = |v: usize| if g.owner[v] == Owner::Even { s[v] } else { t[v] };
            for (v, ok) in all.iter_mut().enumerate() {
                let mut x = v;
                for _ in 0..n {
                    x = next(x);
                }
                let (start, mut least) = (x, g.prio[x]);
                x = next(x);
                while x != start {
                    least = least.min(g.prio[x]);
                    x = next(x);
                }
                *ok &= least % 2 == 0;
            }
        }
        for v in 0..n {
            won[v] |= all[v];
        }
    }
    won
}

/// Games on `n` vertices; with `sorted`, priorities are non-decreasing in
/// the vertex index, one representative per relabelling.
fn check_parity_games(n: usize, sorted: bool) -> Result<usize, String> {
    let sets = (1u32 << n) - 1;
    let mut count = 0;
    for prio_code in 0..4usize.pow(n as u32) {
        let prio: Vec<u32> = (0..n).map(|i| (prio_code / 4usize.pow(i as u32) % 4) as u32).collect();
        if sorted && prio.windows(2).any(|w| w[0] > w[1]) {
            continue;
        }
        for owners in 0..1u32 << n {
            for succ_code in 0..(sets as usize).pow(n as u32) {
                let succ: Vec<Vec<usize>> = (0..n)
                    .map(|i| {
                        let m = succ_code / (sets as usize).pow(i as u32) % sets as usize + 1;
                        (0..n).filter(|&j| m >> j & 1 == 1).collect()
                    })
                    .collect();
                // the owner of a vertex with one successor changes nothing
                if sorted && (0..n).any(|i| owners >> i & 1 == 1 && succ[i].len() == 1) {
                    continue;
                }
                let owner = (0..n).map(|i| if owners >> i & 1 == 1 { Owner::Odd } else { Owner::Even }).collect();
                let g = ParityGame { owner, prio: prio.clone(), succ };
                let sol = parity_solve(&g).map_err(|e| e.to_string())?;
                let want = parity_oracle(&g);
                for v in 0..n {
                    let w = if want[v] { Owner::Even } else { Owner::Odd };
                    ensure(sol.winner[v] == w, || format!("{g:?}: vertex {v} won by {w:?}"))?;
                    ensure(g.strategy_wins(w, &sol.strategy, v), || format!("{g:?}: strategy loses at {v}"))?;
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

fn parity_solver() -> Outcome {
    let mut all = 0;
    for n in 1..=3 {
        all += check_parity_games(n, false)?;
    }
    let four = check_parity_games(4, true)?;
    Ok(format!("{all} games on 1-3 vertices, {four} on 4 vertices up to relabelling"))
}

// 10

const GS_TRIALS: usize = 1000;
const GS_HORIZON: usize = 64;

fn gale_stewart() -> Outcome {
    let mut checked = 0;
    for bits in 0u32..256 {
        let table: Vec<bool> = (0..8).map(|i| bits >> i & 1 == 1).collect();
        let g = table_payoff(&table, 3).map_err(|e| e.to_string())?;
        let sol = gs_solve(&g).map_err(|e| e.to_string())?;
        let want = oracle_clopen_solve(&table, 3).map_err(|e| e.to_string())?;
        ensure(sol.winner == want, || format!("table {bits:08b}: {:?} vs oracle {want:?}", sol.winner))?;
        let r = verify_strategy(&sol, &g, GS_TRIALS, GS_HORIZON, u64::from(bits)).map_err(|e| e.to_string())?;
        ensure(r.violations.is_empty(), || format!("table {bits:08b}: {} violations", r.violations.len()))?;
        checked += 1;
    }
    let mut named = Vec::new();
    for c in game_catalog() {
        let sol = gs_solve(&c.game).map_err(|e| e.to_string())?;
        ensure(sol.winner == c.winner, || format!("{}: winner {:?}", c.name, sol.winner))?;
        let r = verify_strategy(&sol, &c.game, GS_TRIALS, GS_HORIZON, 7).map_err(|e| e.to_string())?;
        ensure(r.violations.is_empty() && r.lassos == GS_TRIALS, || format!("{}: {} violations", c.name, r.violations.len()))?;
        named.push((c.name, sol.winner));
    }
    for (name, want) in [("eventually-zero", Player::II), ("even-ones", Player::I)] {
        ensure(named.contains(&(name, want)), || format!("{name} is not won by {want:?}"))?;
    }
    let named: Vec<String> = named.iter().map(|(n, w)| format!("{n} won by {w:?}")).collect();
    Ok(format!("{checked} three-bit payoffs; {}; {GS_TRIALS} trials at horizon {GS_HORIZON}, 0 violations", named.join(", ")))
}

// 11

const CANTOR_SENTENCES: &[&str] = &[
    "ex y. y in H",
    "all y. y in H",
    "ex y. (y in H and all z. (z in H -> y <= z))",
    "all y. (y in H -> ex z. (z in H and not z = y))",
    "ex y. ex z. (y in H and z in H and not y = z)",
    "x in H",
    "x in H <-> not ex y. (y in H and y <= x)",
    "ex y. (y in H and x <= y)",
];
const CANTOR_WANTED: usize = 50;
const CANTOR_TRIES: usize = 80;

fn cantor_routes() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let words = UPWord::pool(2, 2, 2);
    let levels = [Ordinal::zero(), Ordinal::nat(1), Ordinal::nat(2), Ordinal::omega()];
    let (mut agreed, mut undefined) = (0, 0);
    for i in 0..CANTOR_TRIES {
        if agreed == CANTOR_WANTED {
            break;
        }
        let shape = if rng.gen_bool(0.5) { Shape::Sigma } else { Shape::Pi };
        let level = &levels[rng.gen_range(0..levels.len())];
        let h = random_desc(&mut rng, shape, level);
        let x = if rng.gen_bool(0.5) {
            desc_sem(&h).map_err(|e| e.to_string())?.witness().unwrap_or_else(UPWord::zeros)
        } else {
            words[rng.gen_range(0..words.len())].clone()
        };
        let text = CANTOR_SENTENCES[i % CANTOR_SENTENCES.len()];
        let f = parse_cantor(text).map_err(|e| format!("{text}: {e}"))?;
        let b = BTreeMap::from([("H".to_string(), Binding::Set { desc: h }), ("x".to_string(), Binding::Point { word: x })]);
        let sem = decide_cantor(&f, &b).map_err(|e| format!("{text}: {e}"))?;
        match decide_cantor_codes(&f, &b).map_err(|e| format!("{text}: {e}"))? {
            Some(code) => {
                ensure(code == sem, || format!("{text}: semantic {sem}, code route {code}"))?;
                agreed += 1;
            }
            None => undefined += 1,
        }
    }
    ensure(agreed == CANTOR_WANTED, || format!("{agreed} agreeing sentences, {undefined} without a code answer"))?;
    Ok(format!("{agreed} sentences agree ({undefined} skipped without a code answer)"))
}

// 12

const TRANSLATION_DEPTH: usize = 3;
const ASSIGNMENTS: usize = 20;

fn translation() -> Outcome {
    let level = Ordinal::nat(1);
    let m = PowerTruncation::new(&level, TRANSLATION_DEPTH).map_err(|e| e.to_string())?;
    let n = BoundedTree::new(TRANSLATION_DEPTH);
    let e = embed_f(&level);
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let templates: Vec<(&str, Formula)> =
        vec![("Path", path_power()), ("Down", down_power()), ("Br", branch_power()), ("meets", meets())];
    for (name, f) in &templates {
        let t = translate_tf(f, &level).map_err(|e| format!("{name}: {e}"))?;
        for k in 0..ASSIGNMENTS {
            let (mut am, mut an) = (BTreeMap::new(), BTreeMap::new());
            for x in f.free() {
                ensure(is_set_var(x), || format!("{name}: point variable {x}"))?;
                let pick: Vec<NodeSeq> = m.elems().iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
                let img = pick.iter().map(|p| e.apply(p)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
                am.insert(x.clone(), Value::Set(pick));
                an.insert(x.clone(), Value::Set(img));
            }
            let want = eval_in(f, &m, &am).map_err(|e| format!("{name}: {e}"))?;
            let got = eval_in(&t, &n, &an).map_err(|e| format!("t{name}: {e}"))?;
            ensure(got == want, || format!("{name}, assignment {k}: power {want}, translation {got}"))?;
        }
    }
    Ok(format!("{} templates, {ASSIGNMENTS} assignments each, depth {TRANSLATION_DEPTH}", templates.len()))
}

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

const CRITERIA: &[Criterion] = &[
    Criterion { name: "wl catalog and oracle", limit: secs(30), run: wl_catalog_and_oracle },
    Criterion { name: "downward closure and descent", limit: secs(60), run: downward_closure_and_descent },
    Criterion { name: "coding round trip", limit: secs(300), run: round_trip },
    Criterion { name: "decoding rejections", limit: None, run: malformed_corpus },
    Criterion { name: "code intersection and union", limit: None, run: code_operations },
    Criterion { name: "metric suite", limit: None, run: metric_suite },
    Criterion { name: "S2S regression", limit: secs(300), run: s2s_suite },
    Criterion { name: "automata boolean operations", limit: None, run: automata_oracle },
    Criterion { name: "parity solver", limit: None, run: parity_solver },
    Criterion { name: "Gale-Stewart", limit: secs(180), run: gale_stewart },
    Criterion { name: "Cantor fragment routes", limit: None, run: cantor_routes },
    Criterion { name: "translation layer", limit: None, run: translation },
];

fn main() -> ExitCode {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, c) in CRITERIA.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| c.name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let mut outcome = (c.run)();
        let took = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, c.limit) {
            if took > limit {
                outcome = Err(format!("took {took:.1?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS {:>2} {}: {detail} [{took:.1?}]", i + 1, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {}: {why} [{took:.1?}]", i + 1, c.name);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
