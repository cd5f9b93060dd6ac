//! The example catalog: every named value is recomputed and compared.
//! Stated values that only the literal engine disagrees with are printed as
//! discrepancies and do not fail the run; engine, oracle or decoder
//! disagreements do.

use std::fmt::Write as _;

use borelwb::borelcode::corpus::{examples, malformed};
use borelwb::borelcode::{decode, desc_sem, encode};
use borelwb::games::{catalog as game_catalog, gs_solve, verify_strategy};
use borelwb::ordinal::Ordinal;
use borelwb::topology::{big, cantor_dist, image_closed_probe, product_dist, ProbeVariant, ProductPoint};
use borelwb::treepower::UPWord;
use borelwb::wlo::{catalog, wl_oracle, wl_report, SimVariant};
use borelwb::Rational;

use crate::config::Config;

#[derive(Default)]
pub struct Tally {
    pub agree: usize,
    pub discrepancies: usize,
    pub failures: usize,
    pub text: String,
}

impl Tally {
    fn line(&mut self, tag: &str, name: &str, detail: String) {
        writeln!(self.text, "{tag:<12} {name}: {detail}").unwrap();
    }

    fn check(&mut self, name: &str, ok: bool, detail: String) {
        if ok {
            self.agree += 1;
            self.line("agree", name, detail);
        } else {
            self.failures += 1;
            self.line("FAIL", name, detail);
        }
    }

    fn discrepancy(&mut self, name: &str, detail: String) {
        self.discrepancies += 1;
        self.line("discrepancy", name, detail);
    }
}

fn wl_section(t: &mut Tally) {
    for e in catalog() {
        let r = wl_report(&e.poset, Some(e.claim));
        let oracle = [SimVariant::AsymmetricLiteral, SimVariant::SymmetricAmended].map(|v| wl_oracle(&e.poset, v));
        let name = format!("wl/{}", e.name);
        if oracle != [r.literal, r.amended] {
            t.check(&name, false, format!("engine {}/{} vs oracle {}/{}", r.literal, r.amended, oracle[0], oracle[1]));
        } else if r.discrepancy {
            t.discrepancy(&name, format!("literal {}, amended {}, stated {}", r.literal, r.amended, e.claim));
        } else {
            t.check(&name, true, format!("literal {}, amended {}, stated {}", r.literal, r.amended, e.claim));
        }
    }
}

fn code_section(t: &mut Tally) {
    for (name, d) in examples() {
        let ok = encode(&d)
            .ok()
            .and_then(|c| decode(&c).ok())
            .and_then(|back| Some(desc_sem(&back).ok()?.equivalent(&desc_sem(&d).ok()?).ok()?))
            .unwrap_or(false);
        t.check(&format!("round-trip/{name}"), ok, format!("level {}", d.level()));
    }
    for c in malformed() {
        match decode(&c.term) {
            Ok(_) => t.check(&format!("reject/{}", c.name), false, "accepted".into()),
            Err(r) => t.check(&format!("reject/{}", c.name), c.matches(&r), r.root().name().to_string()),
        }
    }
}

fn word(s: &str) -> UPWord {
    s.parse().expect("literal word")
}

fn metric_section(t: &mut Tally) {
    for (u, v, num, den) in [("(0)", "(0)", 0, 1), ("(0)", "(1)", 1, 2), ("(0)", "01(0)", 1, 4), ("(01)", "(10)", 1, 2)] {
        let d = cantor_dist::<Rational>(&word(u), &word(v));
        t.check(&format!("metric/d({u},{v})"), d == big(num, den), d.to_string());
    }
    let zero = ProductPoint::default();
    let mut g = ProductPoint::default();
    g.coords.insert(Ordinal::zero(), word("(1)"));
    let d = product_dist::<Rational>(&zero, &g, &Ordinal::omega());
    t.check("metric/product-first-coordinate", d.as_ref().is_ok_and(|d| *d == big(1, 4)), format!("{d:?}"));
    for level in [Ordinal::nat(1), Ordinal::nat(2)] {
        let r = image_closed_probe(&level, 2, ProbeVariant::Unrestricted, 4, 1 << 16);
        let ok = r.as_ref().is_ok_and(|r| r.all_witnessed());
        t.check(&format!("metric/image-closed-{level}"), ok, "all non-image prefixes witnessed".into());
    }
}

fn game_section(t: &mut Tally, config: &Config) {
    for c in game_catalog() {
        let name = format!("game/{}", c.name);
        match gs_solve(&c.game) {
            Ok(sol) => {
                let report = verify_strategy(&sol, &c.game, 200, config.horizon.max(2 * c.game.payoff.states()), config.seed);
                let clean = report.is_ok_and(|r| r.violations.is_empty());
                t.check(&name, sol.winner == c.winner && clean, format!("winner {:?} ({})", sol.winner, c.summary));
            }
            Err(e) => t.check(&name, false, e.to_string()),
        }
    }
}

pub fn verify_paper(config: &Config) -> Tally {
    let mut t = Tally::default();
    wl_section(&mut t);
    code_section(&mut t);
    metric_section(&mut t);
    game_section(&mut t, config);
    writeln!(t.text, "summary: {} agree, {} discrepancies, {} failures", t.agree, t.discrepancies, t.failures).unwrap();
    t
}
