mod human;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use topogame::bairecat::{
    covering_selection, diagonal_selector, discrete_cover_family, dyadic_cover_table, has_property_p, selection,
    VectorFamily,
};
use topogame::finsolve::{solve_game, verify_strategy, FinTopology};
use topogame::games::{evaluate, play, Game, GameKind, Player, Strat, Transcript};
use topogame::pixleyroy::PixleyRoy;
use topogame::recipe::{DenseChoice, Recipe, Replay, SpaceSpec, UnionPiece, BUILTIN_STRATEGIES, SPACE_FORMS};
use topogame::space::{rationals, OpenSet, Rationals, Space};
use topogame::suites::{list_suites, run_suite, Status, SuiteConfig};
use topogame::transform::DualPair;

#[derive(Parser)]
#[command(name = "topogame", version, about = "Topological selection games: spaces, play, transformers, verification")]
struct Cli {
    /// Base seed for random players and seeded checks.
    #[arg(long, global = true, env = "TOPOGAME_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect spaces.
    Space {
        #[command(subcommand)]
        cmd: SpaceCmd,
    },
    /// Play a game between two strategies.
    Play(PlayArgs),
    /// Run a verification suite (no name: list the suites).
    Verify(VerifyArgs),
    /// Build a strategy descriptor by applying a transformer.
    Transform(TransformArgs),
    /// Solve a game on a finite space.
    Solve {
        #[arg(long)]
        space: String,
        #[arg(long)]
        game: String,
        /// Write the winner's strategy table here.
        #[arg(long)]
        emit_strategy: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Baire-category and property (P) tools.
    Baire {
        #[arg(long, value_enum)]
        check: BaireCheck,
        /// Vector family file: a matrix or {"vectors", "bound"}.
        #[arg(long)]
        family: Option<PathBuf>,
        /// Rows of the dyadic table for `diagonal`.
        #[arg(long, default_value_t = 16)]
        rows: usize,
    },
    /// List the built-in strategies.
    Strategies,
}

#[derive(Subcommand)]
enum SpaceCmd {
    /// The space forms understood by --space.
    List,
    Show {
        space: String,
        /// Base elements and points listed for infinite spaces.
        #[arg(long, default_value_t = 8)]
        limit: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check the base axioms (exact on finite spaces).
    Validate {
        space: String,
        #[arg(long, default_value_t = 64)]
        horizon: usize,
    },
}

#[derive(Parser)]
struct PlayArgs {
    #[arg(long, required_unless_present = "replay")]
    game: Option<String>,
    #[arg(long, required_unless_present = "replay")]
    space: Option<String>,
    /// Strategy for player I: a built-in name, `random[:seed]`, `solver`,
    /// `human`, or a descriptor/table JSON file.
    #[arg(long = "strategy-I", alias = "strategy-i", default_value = "random")]
    strategy_i: String,
    #[arg(long = "strategy-II", alias = "strategy-ii", default_value = "random")]
    strategy_ii: String,
    #[arg(long, default_value_t = 16)]
    innings: usize,
    #[arg(long, default_value_t = 16)]
    horizon: usize,
    /// Prompt on the terminal for this player's moves.
    #[arg(long, value_enum)]
    interactive: Option<Side>,
    /// Replay a saved play (suite artifact or replay file) or re-evaluate a
    /// transcript.
    #[arg(long)]
    replay: Option<PathBuf>,
    /// Write the transcript here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    #[value(name = "I", alias = "i")]
    I,
    #[value(name = "II", alias = "ii")]
    II,
}

#[derive(Parser)]
struct VerifyArgs {
    /// Suite name, or `all`.
    suite: Option<String>,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write each failing check's artifact into this directory.
    #[arg(long)]
    artifact_dir: Option<PathBuf>,
    /// Print the JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Include timings in the JSON report.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformOp {
    DualForward,
    DualForwardIi,
    DualBackwardIi,
    Claim,
    Restrict,
    Lift,
    Union,
    ProductPointing,
}

#[derive(Parser)]
struct TransformArgs {
    #[arg(long, value_enum)]
    op: TransformOp,
    #[arg(long, default_value = "po-od")]
    pair: String,
    /// Inner strategy (as for `play`).
    #[arg(long, default_value = "solver")]
    strategy: String,
    /// Dense set for `lift`: comma-separated points.
    #[arg(long)]
    dense: Option<String>,
    /// Piece for `union`: `points=strategy`, e.g. `0,1=solver`. Repeatable.
    #[arg(long = "piece")]
    pieces: Vec<String>,
    /// Dense set of the second factor for `product-pointing`.
    #[arg(long, value_enum, default_value = "witnesses")]
    dense_choice: DenseArg,
    /// Check the result on this space (exhaustively when finite).
    #[arg(long)]
    space: Option<String>,
    /// With --space on an infinite space: innings against a random opponent.
    #[arg(long, default_value_t = 16)]
    innings: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DenseArg {
    Witnesses,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaireCheck {
    /// Property (P), cross-checked against covering selections.
    P,
    /// The diagonal selection over the dyadic cover table of the rationals.
    Diagonal,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let seed = cli.seed;
    match cli.cmd {
        Cmd::Space { cmd } => space_cmd(cmd),
        Cmd::Play(a) => play_cmd(a, seed),
        Cmd::Verify(a) => verify_cmd(a, seed),
        Cmd::Transform(a) => transform_cmd(a, seed),
        Cmd::Solve { space, game, emit_strategy, json } => solve_cmd(&space, &game, emit_strategy, json),
        Cmd::Baire { check, family, rows } => baire_cmd(check, family, rows),
        Cmd::Strategies => {
            for (name, what) in BUILTIN_STRATEGIES {
                println!("{name:<18} {what}");
            }
            println!("{:<18} prompt on the terminal", "human");
            Ok(0)
        }
    }
}

fn parse_spec(s: &str) -> Result<(SpaceSpec, Space)> {
    let spec: SpaceSpec = s.parse()?;
    let space = spec.build().with_context(|| format!("building {s}"))?;
    Ok((spec, space))
}

fn parse_game(s: &str) -> Result<GameKind> {
    s.parse::<GameKind>().map_err(|e| anyhow!("{e}"))
}

fn space_cmd(cmd: SpaceCmd) -> Result<u8> {
    match cmd {
        SpaceCmd::List => {
            for (form, what) in SPACE_FORMS {
                println!("{form:<24} {what}");
            }
            Ok(0)
        }
        SpaceCmd::Show { space, limit, json } => {
            let (spec, s) = parse_spec(&space)?;
            let v = describe_space(&spec, &s, limit);
            if json {
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                println!("space {}", v["label"].as_str().unwrap_or(""));
                println!("points: {}", v["points"]);
                println!("base elements: {}", v["bases"]);
                for p in v["point_list"].as_array().into_iter().flatten() {
                    println!("  point {p}");
                }
                for b in v["base_list"].as_array().into_iter().flatten() {
                    println!("  base {b}");
                }
            }
            Ok(0)
        }
        SpaceCmd::Validate { space, horizon } => {
            let (_, s) = parse_spec(&space)?;
            s.validate(horizon)?;
            if s.is_finite() {
                let top = FinTopology::from_space(&s)?;
                println!("{}: valid, {} points, {} open sets", s.label(), top.n(), top.opens().len());
            } else {
                println!("{}: witnesses and covering check out below {horizon}", s.label());
            }
            Ok(0)
        }
    }
}

fn count(c: Option<usize>) -> Value {
    c.map_or(json!("countably infinite"), |n| json!(n))
}

fn describe_space(spec: &SpaceSpec, s: &Space, limit: usize) -> Value {
    let pr = match spec {
        SpaceSpec::Pr(inner) => inner.build().ok().and_then(|i| PixleyRoy::new(i).ok()),
        _ => None,
    };
    let q = Rationals::new();
    let point = |p: usize| -> Value {
        match (spec, &pr) {
            (SpaceSpec::Rationals, _) => json!({ "index": p, "value": q.value(p).to_string() }),
            (_, Some(pr)) => json!({ "index": p, "set": pr.set_of(p).elems() }),
            _ => json!(p),
        }
    };
    let np = s.point_count().unwrap_or(limit);
    let nb = s.base_count().unwrap_or(limit);
    let bases: Vec<Value> = (0..nb)
        .map(|b| match (spec, s.point_count()) {
            (SpaceSpec::Rationals, _) => match Rationals::interval(b) {
                Some((lo, hi)) => json!({ "index": b, "interval": [lo.to_string(), hi.to_string()] }),
                None => json!({ "index": b, "interval": "whole line" }),
            },
            (_, Some(n)) => json!({ "index": b, "points": (0..n).filter(|&p| s.member(p, b)).collect::<Vec<_>>() }),
            _ => json!({ "index": b, "witness": s.base_witness(b) }),
        })
        .collect();
    json!({
        "spec": spec.to_string(),
        "label": s.label(),
        "points": count(s.point_count()),
        "bases": count(s.base_count()),
        "point_list": (0..np).map(point).collect::<Vec<_>>(),
        "base_list": bases,
    })
}

/// `random` takes the global seed; `human` is the terminal player.
fn resolve_strategy(
    text: &str,
    space: &Space,
    spec: &SpaceSpec,
    kind: GameKind,
    player: Player,
    seed: u64,
    interactive: bool,
) -> Result<(Strat, Option<Recipe>)> {
    if interactive || text == "human" {
        return Ok((Arc::new(human::Human::stdio()), None));
    }
    let recipe = if text == "random" { Recipe::Random { seed } } else { Recipe::parse(text)? };
    let strat = recipe
        .resolve(space, Some(spec), kind, player)
        .with_context(|| format!("strategy {text:?} for player {player}"))?;
    Ok((strat, Some(recipe)))
}

fn print_play(t: &Transcript, verdict: &topogame::games::Verdict, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(&json!({ "transcript": t, "verdict": verdict }))?);
        return Ok(());
    }
    println!("{} on {} ({} innings)", t.kind, t.space, t.innings.len());
    for (n, i) in t.innings.iter().enumerate() {
        let note = i.note.as_deref().map(|s| format!("  [{s}]")).unwrap_or_default();
        println!("  {n:>3}  I: {}  II: {}{note}", serde_json::to_string(&i.first)?, serde_json::to_string(&i.second)?);
    }
    println!("verdict: {verdict}");
    Ok(())
}

fn play_cmd(a: PlayArgs, seed: u64) -> Result<u8> {
    if let Some(path) = &a.replay {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let v: Value = serde_json::from_str(&text)?;
        let replay = v.get("replay").cloned().or_else(|| v.get("strategy_i").is_some().then(|| v.clone()));
        if let Some(r) = replay {
            let r: Replay = serde_json::from_value(r)?;
            let (t, verdict) = r.run()?;
            print_play(&t, &verdict, a.json)?;
            if let Some(out) = &a.out {
                std::fs::write(out, t.to_json())?;
            }
            return Ok(0);
        }
        let t = Transcript::from_json(&text)?;
        let space_text = a.space.clone().unwrap_or_else(|| t.space.clone());
        let (_, space) = parse_spec(&space_text).context("pass --space to re-evaluate this transcript")?;
        let verdict = evaluate(&space, &t, a.horizon);
        print_play(&t, &verdict, a.json)?;
        return Ok(0);
    }
    let kind = parse_game(a.game.as_deref().unwrap())?;
    let (spec, space) = parse_spec(a.space.as_deref().unwrap())?;
    let human_i = matches!(a.interactive, Some(Side::I));
    let human_ii = matches!(a.interactive, Some(Side::II));
    let (first, _) = resolve_strategy(&a.strategy_i, &space, &spec, kind, Player::I, seed, human_i)?;
    let (second, _) = resolve_strategy(&a.strategy_ii, &space, &spec, kind, Player::II, seed, human_ii)?;
    let g = Game::new(kind, space.clone()).with_horizon(a.horizon);
    let t = play(&g, first.as_ref(), second.as_ref(), a.innings, Some(seed))?;
    let verdict = evaluate(&space, &t, a.horizon);
    print_play(&t, &verdict, a.json)?;
    if let Some(out) = &a.out {
        std::fs::write(out, t.to_json())?;
    }
    Ok(0)
}

fn verify_cmd(a: VerifyArgs, seed: u64) -> Result<u8> {
    let Some(name) = a.suite else {
        for (name, claim) in list_suites() {
            println!("{name:<22} {claim}");
        }
        return Ok(0);
    };
    let names: Vec<&str> = if name == "all" { list_suites().into_iter().map(|s| s.0).collect() } else { vec![&name] };
    let cfg = SuiteConfig { seed, jobs: a.jobs };
    let mut reports = Vec::new();
    for n in names {
        let mut r = run_suite(n, &cfg)?;
        if let Some(dir) = &a.artifact_dir {
            r.write_artifacts(dir)?;
        }
        reports.push(r);
    }
    let jsons: Vec<Value> = reports
        .iter()
        .map(|r| serde_json::from_str(&r.to_json(a.timings)))
        .collect::<std::result::Result<_, _>>()?;
    let doc = if jsons.len() == 1 { jsons[0].clone() } else { Value::Array(jsons) };
    if let Some(out) = &a.out {
        std::fs::write(out, serde_json::to_string_pretty(&doc)?)?;
    }
    if a.json {
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        for r in &reports {
            print!("{}", r.render());
        }
    }
    let worst = if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else if reports.iter().any(|r| r.status == Status::Indeterminate) {
        2
    } else {
        0
    };
    Ok(worst)
}

fn parse_points(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("{t:?} is not a point")))
        .collect()
}

/// The game and player the transformer's output plays.
fn output_role(op: TransformOp, pair: DualPair) -> (GameKind, Player) {
    match op {
        TransformOp::DualForward => (pair.selection_game(), Player::II),
        TransformOp::DualForwardIi => (pair.selection_game(), Player::I),
        TransformOp::DualBackwardIi => (pair.pointing_game(), Player::II),
        TransformOp::Claim => (pair.pointing_game(), Player::I),
        TransformOp::Restrict | TransformOp::Lift | TransformOp::Union => (GameKind::SPlus, Player::II),
        TransformOp::ProductPointing => (GameKind::OpenPicking, Player::I),
    }
}

fn transform_cmd(a: TransformArgs, seed: u64) -> Result<u8> {
    let pair: DualPair = a.pair.parse()?;
    let inner = |t: &str| -> Result<Box<Recipe>> {
        Ok(Box::new(if t == "random" { Recipe::Random { seed } } else { Recipe::parse(t)? }))
    };
    let recipe = match a.op {
        TransformOp::DualForward => Recipe::DualForward { pair, inner: inner(&a.strategy)? },
        TransformOp::DualForwardIi => Recipe::DualForwardIi { pair, inner: inner(&a.strategy)? },
        TransformOp::DualBackwardIi => Recipe::DualBackwardIi { pair, inner: inner(&a.strategy)? },
        TransformOp::Claim => Recipe::Claim { pair, inner: inner(&a.strategy)? },
        TransformOp::Restrict => Recipe::Restrict { inner: inner(&a.strategy)? },
        TransformOp::Lift => {
            let dense = parse_points(a.dense.as_deref().ok_or_else(|| anyhow!("lift needs --dense"))?)?;
            Recipe::Lift { dense, inner: inner(&a.strategy)? }
        }
        TransformOp::Union => {
            if a.pieces.is_empty() {
                bail!("union needs at least one --piece");
            }
            let pieces = a
                .pieces
                .iter()
                .map(|p| {
                    let (set, strat) = p.split_once('=').unwrap_or((p, "solver"));
                    Ok(UnionPiece { set: parse_points(set)?, inner: inner(strat)? })
                })
                .collect::<Result<_>>()?;
            Recipe::Union { pieces }
        }
        TransformOp::ProductPointing => Recipe::ProductPointing {
            x: inner(&a.strategy)?,
            dense: match a.dense_choice {
                DenseArg::Witnesses => DenseChoice::Witnesses,
                DenseArg::All => DenseChoice::All,
            },
        },
    };
    let text = recipe.to_json();
    if let Some(out) = &a.out {
        std::fs::write(out, &text)?;
    }
    println!("{text}");
    let Some(space_text) = a.space else { return Ok(0) };
    let (spec, space) = parse_spec(&space_text)?;
    let (kind, player) = output_role(a.op, pair);
    let strat = recipe.resolve(&space, Some(&spec), kind, player)?;
    if space.is_finite() {
        let rep = verify_strategy(&space, kind, strat.as_ref(), player, None)?;
        eprintln!(
            "{}: player {player} in {kind} {} ({} nodes{})",
            space.label(),
            if rep.ok { "wins" } else { "does not win" },
            rep.explored,
            if rep.exhaustive { ", exhaustive" } else { "" }
        );
        if let Some(why) = &rep.reason {
            eprintln!("  {why}");
        }
        return Ok(if rep.ok { 0 } else { 1 });
    }
    let opp = Recipe::Random { seed }.resolve(&space, Some(&spec), kind, player.other())?;
    let g = Game::new(kind, space.clone()).with_horizon(a.innings);
    let t = match player {
        Player::I => play(&g, strat.as_ref(), opp.as_ref(), a.innings, Some(seed))?,
        Player::II => play(&g, opp.as_ref(), strat.as_ref(), a.innings, Some(seed))?,
    };
    let v = evaluate(&space, &t, a.innings);
    eprintln!("{}: against random:{seed}, {v}", space.label());
    Ok(0)
}

fn solve_cmd(space: &str, game: &str, emit: Option<PathBuf>, json: bool) -> Result<u8> {
    let kind = parse_game(game)?;
    let (_, s) = parse_spec(space)?;
    let r = solve_game(&s, kind)?;
    if let Some(path) = &emit {
        std::fs::write(path, r.strategy.to_json())?;
    }
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "space": s.label(),
                "game": kind,
                "winner": r.winner,
                "bound": r.bound,
                "strategy": r.strategy,
            }))?
        );
    } else {
        let bound = match r.bound {
            Some(1) => " within 1 inning".to_string(),
            Some(b) => format!(" within {b} innings"),
            None => String::new(),
        };
        println!("{kind} on {}: player {} wins{bound}", s.label(), r.winner);
        if let Some(path) = &emit {
            println!("strategy written to {}", path.display());
        }
    }
    Ok(0)
}

fn baire_cmd(check: BaireCheck, family: Option<PathBuf>, rows: usize) -> Result<u8> {
    match check {
        BaireCheck::P => {
            let path = family.ok_or_else(|| anyhow!("--check p needs --family"))?;
            let fam = VectorFamily::from_json(&std::fs::read_to_string(&path)?)?;
            let bound = fam.bound.clone().unwrap_or_else(|| fam.sentinel_bound());
            let sentinel = fam.sentinel_bound();
            let g_bound: Vec<usize> = bound.iter().zip(&sentinel).map(|(a, b)| *a.max(b)).collect();
            let p = has_property_p(&fam, &g_bound);
            let (s, t) = discrete_cover_family(&fam)?;
            let cover = covering_selection(&s, &t)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "vectors": fam.len(),
                    "length": fam.width(),
                    "property_p": p,
                    "covering_selection": cover,
                    "consistent": p == cover.is_none(),
                }))?
            );
            Ok(if p == cover.is_none() { 0 } else { 1 })
        }
        BaireCheck::Diagonal => {
            let q = rationals();
            let table = dyadic_cover_table(rows);
            let pibase: Vec<OpenSet> = (0..rows).map(OpenSet::basic).collect();
            let f = diagonal_selector(&q, &pibase, &table, 10_000)?;
            let sel = selection(&table, &f)?;
            println!("f = {}", serde_json::to_string(&f)?);
            println!("selection = {}", serde_json::to_string(&sel)?);
            Ok(0)
        }
    }
}
