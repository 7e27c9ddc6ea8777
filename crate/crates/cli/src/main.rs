//! `penult`: command-line front end for the penult engine.
//!
//! Results go to standard output as JSON. Exit status is 0 on success, 1
//! when a check finds a violation or a search runs out of budget, and 2 on
//! invalid input.

mod cache;

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use penult_core::constructions::{db_fixtures, Family, TicFamily};
use penult_core::enumerate::{is_interval, Enumeration, Spectrum, DEFAULT_NODE_BUDGET};
use penult_core::render::{parse_boards, to_json, BoardJson};
use penult_core::solver::{full_table, GridGame, ImpartialGame, Nim, Outcome, Solver, Subtract123, Wythoff};
use penult_core::strategy::{validate_with, Axis, MirrorStrategy, Opening, Role, Verdict, DEFAULT_STATE_BUDGET};
use penult_core::{classify, render, Board, Classification, Error, Format, RuleSet};

#[derive(Parser)]
#[command(name = "penult", version, about = "Penult positions of impartial grid games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every penult up to symmetry.
    Enumerate(EnumerateArgs),
    /// Count penult classes by token number.
    Spectrum(SpectrumArgs),
    /// Classify boards as terminal, ult, penult or other.
    Classify(CheckArgs),
    /// Like classify, but fails unless every board is as expected (penult by
    /// default).
    Verify(CheckArgs),
    /// Build a member of a named family.
    Construct(ConstructArgs),
    /// Solve the opening position.
    Solve(SolveArgs),
    /// Validate a mirroring strategy against every adversary line.
    Strategy(StrategyArgs),
    /// Mate depth of an L-position.
    Matein(MateinArgs),
    /// Draw a board.
    Render(RenderArgs),
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_parser = parse_game)]
    game: RuleSet,
    #[arg(long)]
    n: usize,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long)]
    count_only: bool,
    #[arg(long, conflicts_with = "count_only")]
    spectrum: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long, requires = "checkpoint")]
    resume: bool,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Board file, ASCII or JSON; standard input when absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, value_parser = parse_classification)]
    expect: Option<Classification>,
    #[arg(long)]
    expect_tokens: Option<usize>,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_parser = ["a", "b", "c", "d", "compose", "diamond", "lsnake", "snake", "dbfix"])]
    family: String,
    /// Side length, or dots per side for `dbfix`.
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: Option<u8>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    variant: Option<u8>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_parser = parse_game)]
    game: RuleSet,
    #[arg(long)]
    n: usize,
    /// Also write the outcome of every reachable position as JSON lines.
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Args)]
struct StrategyArgs {
    #[arg(long, value_parser = parse_game)]
    game: RuleSet,
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = parse_axis)]
    axis: Axis,
    #[arg(long, value_parser = parse_role)]
    role: Role,
    #[arg(long)]
    opening_center: bool,
    /// State budget; needed above n = 5.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct MateinArgs {
    #[arg(long, value_parser = ["subtract123", "nim", "wythoff", "tak", "tic"])]
    game: String,
    /// Heap size, comma-separated heaps, a pair, or a board file.
    #[arg(long)]
    pos: String,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, value_parser = parse_format)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_game(s: &str) -> Result<RuleSet, Error> {
    s.parse()
}

fn parse_classification(s: &str) -> Result<Classification, Error> {
    s.parse()
}

fn parse_axis(s: &str) -> Result<Axis, Error> {
    s.parse()
}

fn parse_role(s: &str) -> Result<Role, Error> {
    s.parse()
}

fn parse_format(s: &str) -> Result<Format, Error> {
    s.parse()
}

/// Why a command did not succeed.
enum Failure {
    /// A check found a violation, or a search gave up.
    Violation(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::ConstructionFailed(_) | Error::Mismatch(_) => {
                Failure::Violation(e.to_string())
            }
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate(a) => enumerate(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Classify(a) => check(a, false),
        Command::Verify(a) => check(a, true),
        Command::Construct(a) => construct(a),
        Command::Solve(a) => solve(a),
        Command::Strategy(a) => strategy(a),
        Command::Matein(a) => matein(a),
        Command::Render(a) => render_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("penult: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("penult: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Writes `text` and a trailing newline to `out`, or to standard output.
fn emit(text: &str, out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n")),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn read_input(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display()))),
        None => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn board_values(boards: &[Board]) -> Vec<Value> {
    boards.iter().map(|b| serde_json::to_value(BoardJson::from(b)).expect("board serializes")).collect()
}

/// Canonical penults, from the cache when possible.
fn search(s: &SearchArgs, checkpoint: Option<(&Path, bool)>) -> Result<Vec<Board>, Failure> {
    s.game.check_side(s.n)?;
    let key = cache::Key::new("enumerate", s.game, s.n, "");
    if checkpoint.is_none() {
        if let Some(boards) = cache::load(&key) {
            return Ok(boards);
        }
    }
    let mut e = Enumeration::new(s.game, s.n).workers(s.workers).node_budget(s.node_budget);
    if let Some((path, resume)) = checkpoint {
        e = e.checkpoint(path, resume);
    }
    let start = Instant::now();
    let found = e.run()?;
    eprintln!("penult: {} classes, {} nodes, {:.2}s", found.boards.len(), found.nodes, start.elapsed().as_secs_f64());
    cache::store(&key, &found.boards);
    Ok(found.boards)
}

fn spectrum_value(s: &Spectrum) -> Value {
    let classes: serde_json::Map<String, Value> = s.classes.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let mut v = json!({
        "game": s.game,
        "n": s.n,
        "classes": classes,
        "total": s.total(),
        "interval_probe": is_interval(s),
    });
    if let Some((lo, hi)) = s.extremes() {
        v["min_tokens"] = json!(lo);
        v["max_tokens"] = json!(hi);
    }
    v
}

fn enumerate(a: EnumerateArgs) -> CmdResult {
    let cp = a.checkpoint.as_deref().map(|p| (p, a.resume));
    let boards = search(&a.search, cp)?;
    let value = if a.count_only {
        json!({ "classes": boards.len() })
    } else if a.spectrum {
        spectrum_value(&Spectrum::from_boards(a.search.game, a.search.n, &boards))
    } else {
        json!({
            "game": a.search.game,
            "n": a.search.n,
            "classes": boards.len(),
            "boards": board_values(&boards),
        })
    };
    Ok(emit(&value.to_string(), a.out.as_deref())?)
}

fn spectrum(a: SpectrumArgs) -> CmdResult {
    let boards = search(&a.search, None)?;
    let s = Spectrum::from_boards(a.search.game, a.search.n, &boards);
    Ok(emit(&spectrum_value(&s).to_string(), a.out.as_deref())?)
}

fn check(a: CheckArgs, verify: bool) -> CmdResult {
    let boards = parse_boards(&read_input(a.input.as_deref())?)?;
    if boards.is_empty() {
        return Err(Failure::Invalid("no board in input".into()));
    }
    let expect = a.expect.or(verify.then_some(Classification::Penult));
    let mut reports = Vec::new();
    let mut failed = Vec::new();
    for (i, b) in boards.iter().enumerate() {
        let class = classify(b);
        let tokens = b.token_count();
        let ok = expect.is_none_or(|e| e == class) && a.expect_tokens.is_none_or(|t| t == tokens);
        if !ok {
            failed.push(format!("board {i} is {} with {tokens} tokens", class.name()));
        }
        let mut r = json!({ "game": b.game(), "n": b.n(), "classification": class, "tokens": tokens });
        if expect.is_some() || a.expect_tokens.is_some() {
            r["ok"] = json!(ok);
        }
        reports.push(r);
    }
    let value = if reports.len() == 1 { reports.pop().expect("one report") } else { Value::Array(reports) };
    println!("{value}");
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(failed.join("; ")))
    }
}

fn construct(a: ConstructArgs) -> CmdResult {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Failure::Invalid(format!("--family {} needs --{flag}", a.family)))
    };
    let family = match a.family.as_str() {
        "a" => Family::Tic(TicFamily::A),
        "b" => Family::Tic(TicFamily::B),
        "c" => Family::Tic(TicFamily::C),
        "d" => Family::D(a.m.ok_or_else(|| Failure::Invalid("--family d needs --m".into()))?),
        "compose" => {
            let b_with_c = match a.variant.unwrap_or(1) {
                1 => false,
                2 => true,
                v => return Err(Failure::Invalid(format!("compose variant must be 1 or 2, got {v}"))),
            };
            Family::Compose { k: need(a.k, "k")?, b_with_c }
        }
        "diamond" => Family::VariableDiamond { k: need(a.k, "k")?, l: need(a.l, "l")? },
        "lsnake" => Family::LSnake(a.variant.unwrap_or(1)),
        "snake" => Family::Snake,
        "dbfix" => {
            let boards = db_fixtures(a.n)?;
            let text = Value::Array(board_values(&boards)).to_string();
            return Ok(emit(&text, a.out.as_deref())?);
        }
        _ => unreachable!("clap restricts the family names"),
    };
    let board = family.build(a.n)?;
    Ok(emit(&to_json(&board), a.out.as_deref())?)
}

fn solve(a: SolveArgs) -> CmdResult {
    let game = GridGame::new(a.game, a.n)?;
    let start = game.start();
    let mut solver = Solver::new(game);
    let outcome = solver.outcome(&start)?;
    let winner = if outcome == Outcome::W { Role::First } else { Role::Second };
    if let Some(path) = &a.table {
        let g = solver.game().clone();
        let mut text = String::new();
        for (marks, o) in full_table(a.game, a.n)? {
            let board = serde_json::to_value(BoardJson::from(&g.board(marks))).expect("board serializes");
            text.push_str(&json!({ "board": board, "outcome": o.to_string() }).to_string());
            text.push('\n');
        }
        fs::write(path, text)?;
    }
    let value = json!({
        "game": a.game,
        "n": a.n,
        "outcome": outcome.to_string(),
        "winner": winner,
        "states": solver.table().len(),
    });
    println!("{value}");
    Ok(())
}

fn strategy(a: StrategyArgs) -> CmdResult {
    if a.n > 5 && a.budget.is_none() {
        return Err(Failure::Invalid(format!("n = {} needs an explicit --budget", a.n)));
    }
    let opening = if a.opening_center { Opening::Center } else { Opening::None };
    let s = MirrorStrategy::new(a.axis, opening, a.role);
    match validate_with(a.game, a.n, &s, a.budget.unwrap_or(DEFAULT_STATE_BUDGET), None)? {
        Verdict::WinsAll => {
            let value = json!({
                "game": a.game,
                "n": a.n,
                "strategy": s.to_string(),
                "verdict": "wins_all",
            });
            println!("{value}");
            Ok(())
        }
        Verdict::Counterexample(line) => {
            println!("{}", serde_json::to_string(&line).expect("line serializes"));
            Err(Failure::Violation(format!("{s} loses a line")))
        }
    }
}

fn parse_numbers(text: &str) -> Result<Vec<u32>, Failure> {
    text.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| Failure::Invalid(format!("bad number '{t}': {e}"))))
        .collect()
}

fn matein(a: MateinArgs) -> CmdResult {
    let (pos, mate) = match a.game.as_str() {
        "subtract123" => {
            let [h] = parse_numbers(&a.pos)?[..] else {
                return Err(Failure::Invalid("subtract123 takes one heap".into()));
            };
            (json!(h), mate_of(Subtract123, h)?)
        }
        "nim" => {
            let heaps = parse_numbers(&a.pos)?;
            (json!(heaps), mate_of(Nim, heaps.clone())?)
        }
        "wythoff" => {
            let [x, y] = parse_numbers(&a.pos)?[..] else {
                return Err(Failure::Invalid("wythoff takes a pair".into()));
            };
            (json!([x, y]), mate_of(Wythoff, (x, y))?)
        }
        name => {
            let game: RuleSet = name.parse()?;
            let text = read_input(Some(Path::new(&a.pos)))?;
            let [board] = parse_boards(&text)?[..] else {
                return Err(Failure::Invalid("expected one board".into()));
            };
            if board.game() != game {
                return Err(Failure::Invalid(format!("board is {}, not {game}", board.game())));
            }
            let g = GridGame::new(game, board.n())?;
            let marks = g.marks(&board)?;
            (serde_json::to_value(BoardJson::from(&board)).expect("board serializes"), mate_of(g, marks)?)
        }
    };
    println!("{}", json!({ "game": a.game, "pos": pos, "mate_in": mate }));
    Ok(())
}

fn mate_of<G: ImpartialGame>(game: G, p: G::Position) -> Result<u32, Failure> {
    Solver::new(game).mate_in(&p).map_err(|e| match e {
        Error::NotLosing => Failure::Invalid("position is a W-position; mate depth is defined for L-positions".into()),
        e => e.into(),
    })
}

fn render_cmd(a: RenderArgs) -> CmdResult {
    let boards = parse_boards(&read_input(a.input.as_deref())?)?;
    let text: Vec<String> = boards.iter().map(|b| render(b, a.format)).collect();
    let text = text.join("\n");
    Ok(emit(text.trim_end_matches('\n'), a.out.as_deref())?)
}
