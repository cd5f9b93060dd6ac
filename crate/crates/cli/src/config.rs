//! Resource caps, corpus location and service port.
//!
//! Precedence: command-line flag, then the `BORELWB_*` environment variable,
//! then the default below.

use std::path::PathBuf;

use clap::Args;

use crate::error::CliError;

pub const DEFAULT_CAP: usize = borelwb::automata::DEFAULT_CAP;
pub const DEFAULT_DEPTH: usize = 3;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_PORT: u16 = 8080;
pub const DEFAULT_HORIZON: usize = 64;
pub const DEFAULT_TRIALS: usize = 1000;

#[derive(Clone, Debug, Args)]
pub struct Config {
    /// State cap for automaton constructions.
    #[arg(long, global = true, env = "BORELWB_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Truncation depth for bounded evaluation.
    #[arg(long, global = true, env = "BORELWB_DEPTH", default_value_t = DEFAULT_DEPTH)]
    pub depth: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, env = "BORELWB_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Service port.
    #[arg(long, global = true, env = "BORELWB_PORT", default_value_t = DEFAULT_PORT)]
    pub port: u16,
    /// Play length bound for sessions and strategy checks.
    #[arg(long, global = true, env = "BORELWB_HORIZON", default_value_t = DEFAULT_HORIZON)]
    pub horizon: usize,
    /// Random plays per strategy check.
    #[arg(long, global = true, env = "BORELWB_TRIALS", default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    /// Corpus root, used to resolve relative game references.
    #[arg(long, global = true, env = "BORELWB_CORPUS", default_value = "corpus")]
    pub corpus: PathBuf,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            cap: DEFAULT_CAP,
            depth: DEFAULT_DEPTH,
            seed: DEFAULT_SEED,
            port: DEFAULT_PORT,
            horizon: DEFAULT_HORIZON,
            trials: DEFAULT_TRIALS,
            corpus: PathBuf::from("corpus"),
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), CliError> {
        for (name, v) in [("cap", self.cap), ("depth", self.depth), ("horizon", self.horizon), ("trials", self.trials)] {
            if v == 0 {
                return Err(CliError::Parse(format!("--{name} must be positive")));
            }
        }
        Ok(())
    }
}
