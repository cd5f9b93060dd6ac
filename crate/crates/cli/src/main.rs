use std::path::PathBuf;
use std::process::ExitCode;

use borelwb_cli::commands::{self, CodeOp, Output, PlayInput};
use borelwb_cli::{corpus, files, service, verify, CliError, Config};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "borelwb", version, about = "Well-levelled orders, Borel codes and Gale-Stewart games")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Well-level degree of a poset file under both readings of ∼.
    Wl {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Code of a description file.
    Encode { file: PathBuf },
    /// Decode a branch-set term, or report why it is not a code.
    Decode { file: PathBuf },
    /// Operations on two codes.
    Codeop {
        #[arg(value_enum)]
        op: Op,
        a: PathBuf,
        b: PathBuf,
    },
    /// Decide an S2S sentence or a Cantor-order sentence with parameters.
    #[command(group(ArgGroup::new("kind").required(true).args(["s2s", "cantor"])))]
    Decide {
        #[arg(long, value_name = "FILE")]
        s2s: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        cantor: Option<PathBuf>,
        /// `H=desc.json` for set parameters, `x=01(1)` for points.
        #[arg(long = "bind", value_name = "NAME=VALUE")]
        binds: Vec<String>,
        /// Evaluate the S2S sentence on the depth-`--depth` truncation.
        #[arg(long)]
        bounded: bool,
    },
    /// Gale-Stewart games: a catalog name or a game file.
    Game {
        #[command(subcommand)]
        action: GameAction,
    },
    /// Recompute the example catalog.
    VerifyPaper,
    /// Run the session service.
    Serve {
        /// Append-only transcript log, replayed on start.
        #[arg(long, value_name = "FILE")]
        transcripts: Option<PathBuf>,
    },
    /// Regenerate the corpus under a directory.
    Corpus { dir: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Intersect,
    Union,
    Equiv,
}

#[derive(Subcommand)]
enum GameAction {
    Solve { game: String },
    Verify { game: String },
    /// Play human moves against the engine, or replay a transcript.
    #[command(group(ArgGroup::new("input").required(true).args(["moves", "replay"])))]
    Play {
        game: Option<String>,
        #[arg(long, default_value = "II")]
        side: String,
        /// Human bits, e.g. `0110`.
        #[arg(long)]
        moves: Option<String>,
        #[arg(long, value_name = "FILE")]
        replay: Option<PathBuf>,
        /// Write the transcript here.
        #[arg(long, value_name = "FILE")]
        save: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let config = cli.config;
    config.validate()?;
    match cli.command {
        Command::Wl { file, json } => commands::wl(&file, json),
        Command::Encode { file } => commands::encode_file(&file),
        Command::Decode { file } => commands::decode_file(&file),
        Command::Codeop { op, a, b } => {
            let op = match op {
                Op::Intersect => CodeOp::Intersect,
                Op::Union => CodeOp::Union,
                Op::Equiv => CodeOp::Equiv,
            };
            commands::codeop(op, &a, &b)
        }
        Command::Decide { s2s: Some(f), bounded, .. } => commands::decide_s2s_file(&f, bounded, &config),
        Command::Decide { cantor: Some(f), binds, .. } => commands::decide_cantor_file(&f, &binds),
        Command::Decide { .. } => unreachable!("clap requires one kind"),
        Command::Game { action } => match action {
            GameAction::Solve { game } => commands::game_solve(&game, &config),
            GameAction::Verify { game } => commands::game_verify(&game, &config),
            GameAction::Play { game, side, moves, replay, save } => {
                let input = match (moves, replay) {
                    (Some(m), _) => PlayInput::Moves { side: commands::parse_side(&side)?, moves: commands::parse_bits(&m)? },
                    (None, Some(path)) => PlayInput::Replay(files::json(&path)?),
                    (None, None) => unreachable!("clap requires an input"),
                };
                if matches!(input, PlayInput::Moves { .. }) && game.is_none() {
                    return Err(CliError::Parse("a game is required with --moves".into()));
                }
                commands::game_play(game.as_deref().unwrap_or_default(), input, save.as_deref(), &config)
            }
        },
        Command::VerifyPaper => {
            let t = verify::verify_paper(&config);
            Ok(Output { text: t.text, code: if t.failures == 0 { 0 } else { 3 } })
        }
        Command::Serve { transcripts } => service::serve(config, transcripts).map(|_| Output::ok(String::new())),
        Command::Corpus { dir } => corpus::write(&dir).map(|n| Output::ok(format!("wrote {n} files\n"))),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
