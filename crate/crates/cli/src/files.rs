//! File formats. Everything except HOA automata and formula text is JSON:
//! posets `{elements, covers, claim?}`, descriptions and branch-set terms as
//! tagged records, games as `{payoff}` or a description, transcripts as
//! `{gameRef, humanSide, humanMoves, horizon}`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use borelwb::automata::hoa::from_hoa;
use borelwb::games::{catalog, payoff_from_desc, GaleStewartGame};
use borelwb::borelcode::BorelDesc;
use borelwb::mso::Binding;
use borelwb::treepower::UPWord;
use borelwb::wlo::{FinitePoset, PosetFile};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::CliError;

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetInput {
    #[serde(flatten)]
    pub file: PosetFile,
    /// Degree stated for this poset, compared against the literal engine.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<i32>,
}

pub fn poset(path: &Path) -> Result<(FinitePoset, Option<i32>), CliError> {
    let input: PosetInput = json(path)?;
    let p = FinitePoset::from_file(&input.file).map_err(|e| CliError::Parse(e.to_string()))?;
    Ok((p, input.claim))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GameFile {
    Payoff(GaleStewartGame),
    Desc(BorelDesc),
}

/// A game from a `.hoa` automaton, a `{payoff}` record or a description,
/// with the payoff minimized.
pub fn game(path: &Path) -> Result<GaleStewartGame, CliError> {
    let payoff = if path.extension().is_some_and(|e| e == "hoa") {
        from_hoa(&read(path)?)?
    } else {
        match json::<GameFile>(path)? {
            GameFile::Payoff(g) => g.payoff,
            GameFile::Desc(d) => payoff_from_desc(&d)?.payoff,
        }
    };
    Ok(GaleStewartGame::new(payoff.minimize())?)
}

/// A catalog name, a path, or a path under `<corpus>/games`.
pub fn resolve_game(reference: &str, config: &Config) -> Result<GaleStewartGame, CliError> {
    if let Some(c) = catalog().into_iter().find(|c| c.name == reference) {
        return Ok(c.game);
    }
    let direct = PathBuf::from(reference);
    if direct.exists() {
        return game(&direct);
    }
    let under = config.corpus.join("games").join(reference);
    if under.exists() {
        return game(&under);
    }
    Err(CliError::Parse(format!("unknown game {reference}")))
}

/// `NAME=VALUE`: an uppercase name binds a description file, a lowercase one
/// an ultimately periodic word such as `01(10)`.
pub fn bindings(items: &[String]) -> Result<BTreeMap<String, Binding>, CliError> {
    let mut out = BTreeMap::new();
    for item in items {
        let (name, value) =
            item.split_once('=').ok_or_else(|| CliError::Parse(format!("binding {item} is not NAME=VALUE")))?;
        let b = if name.chars().next().is_some_and(char::is_uppercase) {
            Binding::Set { desc: json(Path::new(value))? }
        } else {
            let word: UPWord = value.parse().map_err(|e| CliError::Parse(format!("binding {name}: {e}")))?;
            Binding::Point { word }
        };
        if out.insert(name.to_string(), b).is_some() {
            return Err(CliError::Parse(format!("{name} is bound twice")));
        }
    }
    Ok(out)
}
