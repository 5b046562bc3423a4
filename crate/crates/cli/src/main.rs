use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use gamehodge::checks::verify_game;
use gamehodge::equilibria::{equilibrium_report, pareto_optimal, pure_nash};
use gamehodge::flow::round_sig;
use gamehodge::{
    closest_harmonic, closest_potential, decompose, epsilon_transfer_bound, game_distance,
    pareto_align_transform, subspace_dims, Game, GameError, GameGraph,
};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;
const EXIT_PRECONDITION: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "gamehodge",
    version,
    about = "Potential / harmonic / nonstrategic decomposition of finite games"
)]
struct Cli {
    /// Numeric tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for randomized routines.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Potential,
    Harmonic,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Split a game into potential, harmonic and nonstrategic parts.
    Decompose { input: PathBuf },
    /// Closest potential or harmonic game.
    Project {
        input: PathBuf,
        #[arg(long, value_enum)]
        onto: Target,
    },
    /// Pure, approximate, mixed and correlated equilibrium summary.
    Equilibria {
        input: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
    },
    /// Pareto optimal profiles, optionally after the aligning transform.
    Pareto {
        input: PathBuf,
        #[arg(long)]
        transform: bool,
    },
    /// Distance to the closest potential or harmonic game.
    Distance {
        input: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Subspace dimensions for `M` players with the given strategy counts.
    Dims {
        players: usize,
        /// Comma-separated strategy counts; a single value applies to all.
        counts: String,
    },
    /// Run the invariant suite on a game.
    Verify { input: PathBuf },
    /// Pairwise comparison flow as DOT (default) or JSON.
    ExportFlow { input: PathBuf },
}

#[derive(Debug)]
enum Failure {
    Game(GameError),
    Io(String),
    Usage(String),
    Verification(String),
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        Failure::Game(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) | Failure::Usage(_) => EXIT_PARSE,
            Failure::Verification(_) => EXIT_VERIFY_FAILED,
            Failure::Game(e) => match e {
                GameError::Parse(_) | GameError::Invalid(_) => EXIT_PARSE,
                GameError::Numeric { .. } => EXIT_NUMERIC,
                _ => EXIT_PRECONDITION,
            },
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Game(e) => write!(f, "{e}"),
            Failure::Io(m) | Failure::Usage(m) | Failure::Verification(m) => f.write_str(m),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read_game(path: &Path) -> Result<Game, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(Game::from_json_str(&text)?)
}

/// Rounds every float in `v` to 12 significant digits.
fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64 number"));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let value = round_value(serde_json::to_value(v).expect("serializable output"));
    let mut s = serde_json::to_string_pretty(&value).expect("JSON value serializes");
    s.push('\n');
    s
}

fn check_format(cli: &Cli, allowed: &[Format]) -> Result<(), Failure> {
    match cli.format {
        Some(f) if !allowed.contains(&f) => {
            Err(Failure::Usage(format!("--format {f:?} is not supported by this command")))
        }
        _ => Ok(()),
    }
}

fn profiles(ps: Vec<gamehodge::Profile>) -> Vec<Vec<usize>> {
    ps.into_iter().map(|p| p.0).collect()
}

fn cmd_decompose(cli: &Cli, input: &Path) -> Outcome {
    let g = read_game(input)?;
    let d = decompose(&g, cli.tol.min(gamehodge::solver::DEFAULT_SOLVER_TOL))?;
    Ok(to_json(&d.to_json()))
}

fn cmd_project(input: &Path, onto: Target) -> Outcome {
    let g = read_game(input)?;
    let p = match onto {
        Target::Potential => closest_potential(&g)?,
        Target::Harmonic => closest_harmonic(&g)?,
    };
    Ok(to_json(&p.to_json()))
}

fn cmd_equilibria(cli: &Cli, input: &Path, eps: f64) -> Outcome {
    let g = read_game(input)?;
    Ok(to_json(&equilibrium_report(&g, eps, cli.tol)?))
}

fn cmd_pareto(input: &Path, transform: bool) -> Outcome {
    let g = read_game(input)?;
    let mut out = json!({
        "pure_nash": profiles(pure_nash(&g)),
        "pareto_optimal": profiles(pareto_optimal(&g)),
    });
    if transform {
        let t = pareto_align_transform(&g);
        let nash = profiles(pure_nash(&t));
        let pareto = profiles(pareto_optimal(&t));
        out["transformed"] = json!({
            "game": t.to_json(),
            "pure_nash": nash,
            "pareto_optimal": pareto,
            "coincide": nash == pareto,
        });
    }
    Ok(to_json(&out))
}

fn cmd_distance(input: &Path, to: Target) -> Outcome {
    let g = read_game(input)?;
    let out = match to {
        Target::Potential => {
            let b = epsilon_transfer_bound(&g)?;
            json!({ "to": "potential", "distance": b.alpha, "eps_bound": b.eps_bound })
        }
        Target::Harmonic => {
            let d = game_distance(&g, &closest_harmonic(&g)?)?;
            json!({ "to": "harmonic", "distance": d })
        }
    };
    Ok(to_json(&out))
}

fn cmd_dims(players: usize, counts: &str) -> Outcome {
    let parsed: Result<Vec<usize>, _> = counts.split(',').map(|s| s.trim().parse()).collect();
    let mut h = parsed.map_err(|e| Failure::Usage(format!("invalid strategy counts {counts:?}: {e}")))?;
    if h.len() == 1 && players > 1 {
        h = vec![h[0]; players];
    }
    if h.len() != players {
        return Err(Failure::Usage(format!(
            "{players} players but {} strategy counts",
            h.len()
        )));
    }
    let d = subspace_dims(&h)?;
    Ok(format!("{d}\n"))
}

fn cmd_verify(cli: &Cli, input: &Path) -> Outcome {
    let g = read_game(input)?;
    let report = verify_game(&g, cli.tol)?;
    let text = to_json(&report);
    if report.passed {
        Ok(text)
    } else {
        let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        write_output(cli, &text)?;
        Err(Failure::Verification(format!("invariant violations: {}", names.join(", "))))
    }
}

fn cmd_export_flow(cli: &Cli, input: &Path) -> Outcome {
    let g = read_game(input)?;
    let graph = GameGraph::from_shape(g.shape().clone());
    let flow = graph.pairwise_comparison(&g)?;
    match cli.format.unwrap_or(Format::Dot) {
        Format::Dot => Ok(graph.to_dot(&flow, |p| g.profile_label(p), cli.tol)),
        Format::Json => {
            let edges: Vec<Value> = graph
                .edges()
                .map(|e| {
                    json!({
                        "from": g.shape().profile(e.from).0,
                        "to": g.shape().profile(e.to).0,
                        "player": e.player,
                        "flow": flow.values()[e.id],
                    })
                })
                .collect();
            Ok(to_json(&json!({ "edges": edges })))
        }
    }
}

fn write_output(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if cli.tol.is_nan() || cli.tol <= 0.0 {
        return Err(Failure::Usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    let text = match &cli.command {
        Command::ExportFlow { input } => {
            check_format(cli, &[Format::Json, Format::Dot])?;
            cmd_export_flow(cli, input)?
        }
        other => {
            check_format(cli, &[Format::Json])?;
            match other {
                Command::Decompose { input } => cmd_decompose(cli, input)?,
                Command::Project { input, onto } => cmd_project(input, *onto)?,
                Command::Equilibria { input, eps } => cmd_equilibria(cli, input, *eps)?,
                Command::Pareto { input, transform } => cmd_pareto(input, *transform)?,
                Command::Distance { input, to } => cmd_distance(input, *to)?,
                Command::Dims { players, counts } => cmd_dims(*players, counts)?,
                Command::Verify { input } => cmd_verify(cli, input)?,
                Command::ExportFlow { .. } => unreachable!("handled above"),
            }
        }
    };
    write_output(cli, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gamehodge: {e}");
            ExitCode::from(e.code())
        }
    }
}
