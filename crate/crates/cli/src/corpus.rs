//! Generates the checked-in corpus: posets, codes, malformed terms, games
//! and formulas.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use borelwb::automata::hoa::to_hoa;
use borelwb::borelcode::corpus::{examples, malformed};
use borelwb::borelcode::encode;
use borelwb::games::catalog as game_catalog;
use borelwb::mso::regression::REGRESSION;
use borelwb::wlo::catalog;
use serde::Serialize;

use crate::error::CliError;
use crate::files::{to_json, PosetInput};

#[derive(Serialize)]
struct Expected {
    reason: &'static str,
    nested: bool,
}

/// Cantor-order sentences; `H` is bound to a description file when run.
const CANTOR: &[(&str, &str)] = &[
    ("dense", "all x. all y. (x <= y and not x = y -> ex z. (x <= z and z <= y and not z = x and not z = y))"),
    ("has-least", "ex x. all y. x <= y"),
    ("point-in-h", "x in H"),
    ("h-has-least", "ex x. (x in H and all y. (y in H -> x <= y))"),
];

/// Path, contents.
pub fn files() -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for e in catalog() {
        let input = PosetInput { file: e.poset.to_file(), claim: Some(e.claim) };
        out.push((format!("posets/{}.poset", e.name), to_json(&input)));
    }
    for (name, d) in examples() {
        out.push((format!("codes/valid/{name}.desc"), to_json(&d)));
        out.push((format!("codes/valid/{name}.term"), to_json(&encode(&d)?)));
    }
    let mut expected = BTreeMap::new();
    for c in malformed() {
        out.push((format!("codes/malformed/{}.term", c.name), to_json(&c.term)));
        expected.insert(c.name.clone(), Expected { reason: c.reason, nested: c.nested });
    }
    out.push(("codes/malformed/expected.json".into(), to_json(&expected)));
    for c in game_catalog() {
        out.push((format!("games/{}.desc", c.name), to_json(&c.game)));
        out.push((format!("games/{}.hoa", c.name), to_hoa(&c.game.payoff, c.summary)?));
    }
    for (i, (text, truth)) in REGRESSION.iter().enumerate() {
        out.push((format!("mso/s2s-{i:02}-{truth}.s2s"), format!("{text}\n")));
    }
    for (name, text) in CANTOR {
        out.push((format!("mso/{name}.cantor"), format!("{text}\n")));
    }
    Ok(out)
}

pub fn write(root: &Path) -> Result<usize, CliError> {
    let files = files()?;
    for (rel, text) in &files {
        let path = root.join(rel);
        let io = |e: std::io::Error| CliError::Parse(format!("{}: {e}", path.display()));
        fs::create_dir_all(path.parent().expect("relative path has a parent")).map_err(io)?;
        fs::write(&path, text).map_err(io)?;
    }
    Ok(files.len())
}
