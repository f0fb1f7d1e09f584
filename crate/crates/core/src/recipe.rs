//! Named spaces and strategy descriptors, as used on the command line and in
//! saved pipelines.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::finsolve::{solve_game, FinGame, FinTopology, TableStrategy};
use crate::games::{
    base_open_strategy, first_member, first_point, pibase_strategy_dgame, random_adversary, random_basic_covers,
    evaluate, inning, play, random_dense_opens, random_dense_sets, random_rectangles, whole_cover, witness_pointing,
    FnStrategy, Game, GameKind, Move, MovePool, MoveRecord, Player, Strat, Transcript, Verdict,
};
use crate::space::{
    alexandroff_double, chain, dense_subspace_of, discrete, finite_space, open_subspace_of, parse_finite_space, product, rationals,
    sierpinski, CoverFamily, OpenSet, PointSet, ProductSpace, Space,
};
use crate::transform::{
    claim_strategy, dual_backward_ii, dual_forward, dual_forward_ii, int_complement, lift_dense_strategy,
    product_pointing_strategy, relativized_piece, restrict_splus_strategy, union_splus_strategy, DualPair, Piece,
};
use crate::{Error, Result};

/// A space named on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceSpec {
    Rationals,
    Sierpinski,
    Discrete(usize),
    Chain(usize),
    Double(Box<SpaceSpec>),
    Product(Box<SpaceSpec>, Box<SpaceSpec>),
    Pr(Box<SpaceSpec>),
    OpenSub(Box<SpaceSpec>, OpenSet),
    /// `preorder:n:i-j;…`, the finite space of the pairs `i ≤ j`.
    Preorder(usize, Vec<(usize, usize)>),
    /// A finite preorder file (`{"points": n, "order": [[i, j], …]}`).
    File(PathBuf),
}

/// Built-in space forms with a short description.
pub const SPACE_FORMS: &[(&str, &str)] = &[
    ("rationals", "the rationals with dyadic interval base"),
    ("sierpinski", "two points, opens ∅, {1}, {0,1}"),
    ("discrete:n", "n isolated points"),
    ("chain:n", "the chain 0 ≤ 1 ≤ … ≤ n-1 (opens are up-sets)"),
    ("double:<space>", "Alexandroff double"),
    ("product:<a>,<b>", "product with the rectangle base"),
    ("pr:<space>", "Pixley-Roy hyperspace"),
    ("opensub:<space>,[b,…]", "open subspace on a union of base elements"),
    ("preorder:n:i-j;…", "finite space of the preorder with pairs i ≤ j"),
    ("<file>.json", "finite preorder file"),
];

fn bad_spec(s: &str, why: &str) -> Error {
    Error::InvalidSpace(format!("cannot read space {s:?}: {why}"))
}

/// Splits at the first (or last) comma outside brackets.
fn split_top(s: &str, last: bool) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    let mut found = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                found = Some(i);
                if !last {
                    break;
                }
            }
            _ => {}
        }
    }
    found.map(|i| (&s[..i], &s[i + 1..]))
}

fn strip_parens(s: &str) -> &str {
    let t = s.trim();
    match t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        Some(inner) => inner.trim(),
        None => t,
    }
}

impl FromStr for SpaceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = strip_parens(s);
        if t.ends_with(".json") {
            return Ok(SpaceSpec::File(PathBuf::from(t)));
        }
        let (head, rest) = t.split_once(':').unwrap_or((t, ""));
        let count = |r: &str| -> Result<usize> { r.parse().map_err(|_| bad_spec(s, "expected a point count")) };
        let boxed = |r: &str| -> Result<Box<SpaceSpec>> { Ok(Box::new(r.parse()?)) };
        match head {
            "rationals" | "Q" => Ok(SpaceSpec::Rationals),
            "sierpinski" => Ok(SpaceSpec::Sierpinski),
            "discrete" => Ok(SpaceSpec::Discrete(count(rest)?)),
            "chain" => Ok(SpaceSpec::Chain(count(rest)?)),
            "double" => Ok(SpaceSpec::Double(boxed(rest)?)),
            "pr" => Ok(SpaceSpec::Pr(boxed(rest)?)),
            "product" => {
                let (a, b) = split_top(rest, false).ok_or_else(|| bad_spec(s, "expected product:<a>,<b>"))?;
                Ok(SpaceSpec::Product(boxed(a)?, boxed(b)?))
            }
            "preorder" => {
                let (n, pairs) = rest.split_once(':').unwrap_or((rest, ""));
                let pairs = pairs
                    .split(';')
                    .filter(|p| !p.trim().is_empty())
                    .map(|p| {
                        let (a, b) = p.split_once('-')?;
                        Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
                    })
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| bad_spec(s, "expected preorder:n:i-j;…"))?;
                Ok(SpaceSpec::Preorder(count(n)?, pairs))
            }
            "opensub" => {
                let (a, u) = split_top(rest, true).ok_or_else(|| bad_spec(s, "expected opensub:<space>,[b,…]"))?;
                let parts: Vec<usize> =
                    serde_json::from_str(u.trim()).map_err(|_| bad_spec(s, "open set must be a list like [0,2]"))?;
                Ok(SpaceSpec::OpenSub(boxed(a)?, OpenSet::new(parts)))
            }
            _ => Err(bad_spec(s, "unknown space")),
        }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |s: &SpaceSpec| match s {
            SpaceSpec::Product(..) | SpaceSpec::OpenSub(..) => format!("({s})"),
            _ => s.to_string(),
        };
        match self {
            SpaceSpec::Rationals => f.write_str("rationals"),
            SpaceSpec::Sierpinski => f.write_str("sierpinski"),
            SpaceSpec::Discrete(n) => write!(f, "discrete:{n}"),
            SpaceSpec::Chain(n) => write!(f, "chain:{n}"),
            SpaceSpec::Double(s) => write!(f, "double:{}", wrap(s)),
            SpaceSpec::Product(a, b) => write!(f, "product:{},{}", wrap(a), wrap(b)),
            SpaceSpec::Pr(s) => write!(f, "pr:{}", wrap(s)),
            SpaceSpec::OpenSub(s, u) => write!(f, "opensub:{},{}", wrap(s), serde_json::to_string(u.parts()).unwrap_or_default()),
            SpaceSpec::Preorder(n, pairs) => {
                let pairs: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                write!(f, "preorder:{n}:{}", pairs.join(";"))
            }
            SpaceSpec::File(p) => write!(f, "{}", p.display()),
        }
    }
}

impl SpaceSpec {
    pub fn build(&self) -> Result<Space> {
        match self {
            SpaceSpec::Rationals => Ok(rationals()),
            SpaceSpec::Sierpinski => Ok(sierpinski()),
            SpaceSpec::Discrete(n) => check_count(*n).map(discrete),
            SpaceSpec::Chain(n) => check_count(*n).map(chain),
            SpaceSpec::Double(s) => Ok(alexandroff_double(&s.build()?)),
            SpaceSpec::Product(a, b) => Ok(product(&a.build()?, &b.build()?)),
            SpaceSpec::Pr(s) => crate::pixleyroy::pixley_roy(&s.build()?),
            SpaceSpec::OpenSub(s, u) => Ok(open_subspace_of(&s.build()?, u)?.space()),
            SpaceSpec::Preorder(n, pairs) => finite_space(*n, pairs),
            SpaceSpec::File(p) => parse_finite_space(&std::fs::read_to_string(p)?),
        }
    }

    /// The preorder form of a finite space (base = minimal neighbourhoods).
    pub fn of_finite(space: &Space) -> Result<SpaceSpec> {
        let top = FinTopology::from_space(space)?;
        Ok(SpaceSpec::Preorder(top.n(), top.order()))
    }

    /// The product structure, when the space is a product.
    pub fn product(&self) -> Option<Result<ProductSpace>> {
        match self {
            SpaceSpec::Product(a, b) => Some((|| Ok(ProductSpace::new(a.build()?, b.build()?)))()),
            _ => None,
        }
    }
}

fn check_count(n: usize) -> Result<usize> {
    if (1..=64).contains(&n) {
        Ok(n)
    } else {
        Err(Error::InvalidSpace(format!("finite spaces need 1..=64 points, got {n}")))
    }
}

/// How the product strategy enumerates the dense set of the second factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DenseChoice {
    /// The base witnesses, one per base element.
    Witnesses,
    /// Every point in index order.
    All,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnionPiece {
    /// Points of the piece `A`; the strategy plays on `Int(cl A) ∩ A`.
    pub set: Vec<usize>,
    pub inner: Box<Recipe>,
}

/// A strategy descriptor: a built-in, a solver table, or a transformer
/// applied to other descriptors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum Recipe {
    Builtin { name: String },
    Random { seed: u64 },
    /// The exact solver's strategy on a finite space.
    Solver,
    Table { table: TableStrategy },
    DualForward { pair: DualPair, inner: Box<Recipe> },
    DualForwardIi { pair: DualPair, inner: Box<Recipe> },
    DualBackwardIi { pair: DualPair, inner: Box<Recipe> },
    Claim { pair: DualPair, inner: Box<Recipe> },
    /// On `opensub:X,u`, from II's strategy on X.
    Restrict { inner: Box<Recipe> },
    /// From II's strategy on the dense subspace on `dense`.
    Lift { dense: Vec<usize>, inner: Box<Recipe> },
    Union { pieces: Vec<UnionPiece> },
    /// On `product:X,Y`, from I's open-picking strategy on X.
    ProductPointing { x: Box<Recipe>, dense: DenseChoice },
    /// Plays the recorded moves in order, one per inning.
    Script { moves: Vec<MoveRecord> },
}

/// Built-in strategy names with the player and game they are written for.
pub const BUILTIN_STRATEGIES: &[(&str, &str)] = &[
    ("witness-pointing", "I in open-picking: the witness of base element n"),
    ("base-opens", "I in point-open: base element n"),
    ("whole-cover", "I in selection games: the one-member cover {X}"),
    ("first-member", "II in selection games: the first member"),
    ("first-point", "II in point games: the first point offered"),
    ("pibase-dgame", "II in the D-game: a point of base element n"),
    ("solver", "exact solver strategy (finite spaces)"),
    ("random[:seed]", "seeded legal random moves"),
];

impl Recipe {
    /// A built-in name, `random[:seed]`, `solver`, or a JSON file holding a
    /// descriptor or a solver table.
    pub fn parse(s: &str) -> Result<Recipe> {
        let t = s.trim();
        if Path::new(t).is_file() {
            return Recipe::from_json(&std::fs::read_to_string(t)?);
        }
        if t.starts_with('{') {
            return Recipe::from_json(t);
        }
        if t == "solver" {
            return Ok(Recipe::Solver);
        }
        if let Some(rest) = t.strip_prefix("random") {
            let seed = match rest.strip_prefix(':') {
                Some(n) => n.parse().map_err(|_| Error::Precondition(format!("bad seed in {t:?}")))?,
                None if rest.is_empty() => 0,
                None => return Err(Error::Precondition(format!("unknown strategy {t:?}"))),
            };
            return Ok(Recipe::Random { seed });
        }
        if BUILTIN_STRATEGIES.iter().any(|(n, _)| *n == t) {
            return Ok(Recipe::Builtin { name: t.to_string() });
        }
        Err(Error::Precondition(format!("unknown strategy {t:?}")))
    }

    pub fn from_json(s: &str) -> Result<Recipe> {
        let v: serde_json::Value = serde_json::from_str(s)?;
        if v.get("op").is_some() {
            Ok(serde_json::from_value(v)?)
        } else {
            Ok(Recipe::Table { table: serde_json::from_value(v)? })
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("recipes serialize")
    }

    /// Builds the strategy for `player` in `kind` on `space`. `spec` names the
    /// space when it is known (subspaces built by transformers have none).
    pub fn resolve(&self, space: &Space, spec: Option<&SpaceSpec>, kind: GameKind, player: Player) -> Result<Strat> {
        match self {
            Recipe::Builtin { name } => builtin(name, space),
            Recipe::Random { seed } => random_for(space, spec, kind, player, *seed),
            Recipe::Solver => {
                let r = solve_game(space, kind)?;
                if r.winner != player {
                    return Err(Error::Precondition(format!(
                        "player {player} has no winning strategy in {kind} on {}; player {} wins",
                        space.label(),
                        r.winner
                    )));
                }
                Ok(std::sync::Arc::new(r.strategy))
            }
            Recipe::Table { table } => {
                if table.kind != kind || table.player != player {
                    return Err(Error::Precondition(format!(
                        "table is for player {} in {}, not player {player} in {kind}",
                        table.player, table.kind
                    )));
                }
                Ok(std::sync::Arc::new(table.clone()))
            }
            Recipe::DualForward { pair, inner } => {
                expect(kind, player, pair.selection_game(), Player::II)?;
                Ok(dual_forward(*pair, inner.resolve(space, spec, pair.pointing_game(), Player::I)?))
            }
            Recipe::DualForwardIi { pair, inner } => {
                expect(kind, player, pair.selection_game(), Player::I)?;
                Ok(dual_forward_ii(*pair, inner.resolve(space, spec, pair.pointing_game(), Player::II)?))
            }
            Recipe::DualBackwardIi { pair, inner } => {
                expect(kind, player, pair.pointing_game(), Player::II)?;
                Ok(dual_backward_ii(*pair, inner.resolve(space, spec, pair.selection_game(), Player::I)?))
            }
            Recipe::Claim { pair, inner } => {
                expect(kind, player, pair.pointing_game(), Player::I)?;
                let sigma = inner.resolve(space, spec, pair.selection_game(), Player::II)?;
                Ok(claim_strategy(*pair, sigma, space.clone()))
            }
            Recipe::Restrict { inner } => {
                expect(kind, player, GameKind::SPlus, Player::II)?;
                let Some(SpaceSpec::OpenSub(x, u)) = spec else {
                    return Err(Error::Precondition("restrict needs a space opensub:<X>,[…]".into()));
                };
                let xs = x.build()?;
                let tau = inner.resolve(&xs, Some(x), GameKind::SPlus, Player::II)?;
                let sub = open_subspace_of(&xs, u)?;
                let ic = int_complement(&xs, u)?;
                Ok(restrict_splus_strategy(tau, sub, ic))
            }
            Recipe::Lift { dense, inner } => {
                expect(kind, player, GameKind::SPlus, Player::II)?;
                if dense.is_empty() {
                    return Err(Error::Precondition("lift needs a nonempty dense set".into()));
                }
                let sub = dense_subspace_of(space, &PointSet::listed("dense", dense.clone()))?;
                let tau = inner.resolve(&sub.space(), None, GameKind::SPlus, Player::II)?;
                Ok(lift_dense_strategy(tau, sub))
            }
            Recipe::Union { pieces } => {
                if player != Player::II || !matches!(kind, GameKind::SPlus | GameKind::SPlusFin) {
                    return Err(Error::Precondition(format!("union builds II in SPlus games, not player {player} in {kind}")));
                }
                let mut out = Vec::new();
                for p in pieces {
                    let mask = p.set.iter().try_fold(0u64, |a, &x| (x < 64).then_some(a | 1 << x));
                    let mask = mask.ok_or_else(|| Error::Precondition("piece points must be below 64".into()))?;
                    if let Some(sub) = relativized_piece(space, mask)? {
                        let strategy = p.inner.resolve(&sub.space(), None, kind, Player::II)?;
                        out.push(Piece { sub, strategy });
                    }
                }
                if out.is_empty() {
                    return Err(Error::Precondition("every piece is nowhere dense".into()));
                }
                Ok(union_splus_strategy(out))
            }
            Recipe::Script { moves } => {
                let moves: Vec<Move> = moves.iter().map(|m| m.to_move()).collect();
                Ok(FnStrategy::new("script", move |_g: &Game, h: &[Move]| {
                    moves
                        .get(inning(h))
                        .cloned()
                        .ok_or_else(|| Error::StrategyFailure(format!("script ends after {} innings", moves.len())))
                })
                .arc())
            }
            Recipe::ProductPointing { x, dense } => {
                expect(kind, player, GameKind::OpenPicking, Player::I)?;
                let prod = spec
                    .and_then(|s| s.product())
                    .ok_or_else(|| Error::Precondition("product-pointing needs a space product:<X>,<Y>".into()))??;
                let (xs, ys) = prod.factors();
                let sigma = x.resolve(xs, None, GameKind::OpenPicking, Player::I)?;
                let y = ys.clone();
                let d = match dense {
                    DenseChoice::Witnesses => PointSet::from_fn(
                        "base witnesses",
                        move |k| y.base_witness(y.base_count().map_or(k, |m| k % m)),
                        None,
                    ),
                    DenseChoice::All => {
                        PointSet::from_fn("all points", move |k| y.point_count().map_or(k, |n| k % n), None)
                    }
                };
                Ok(product_pointing_strategy(sigma, d, prod))
            }
        }
    }
}

/// A complete, self-contained description of a play: enough to rerun it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Replay {
    pub space: String,
    pub game: GameKind,
    pub strategy_i: Recipe,
    pub strategy_ii: Recipe,
    pub innings: usize,
    pub horizon: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Replay {
    pub fn run(&self) -> Result<(Transcript, Verdict)> {
        let spec: SpaceSpec = self.space.parse()?;
        let space = spec.build()?;
        let first = self.strategy_i.resolve(&space, Some(&spec), self.game, Player::I)?;
        let second = self.strategy_ii.resolve(&space, Some(&spec), self.game, Player::II)?;
        let g = Game::new(self.game, space.clone()).with_horizon(self.horizon);
        let t = play(&g, first.as_ref(), second.as_ref(), self.innings, self.seed)?;
        let v = evaluate(&space, &t, self.horizon);
        Ok((t, v))
    }

    /// Replays `strategy` as `player` against the opponent's moves recorded
    /// in `t`.
    pub fn against_transcript(space: &SpaceSpec, strategy: Recipe, player: Player, t: &Transcript, horizon: usize) -> Replay {
        let moves = t
            .innings
            .iter()
            .map(|i| if player == Player::I { i.second.clone() } else { i.first.clone() })
            .collect();
        let script = Recipe::Script { moves };
        let (strategy_i, strategy_ii) = match player {
            Player::I => (strategy, script),
            Player::II => (script, strategy),
        };
        Replay {
            space: space.to_string(),
            game: t.kind,
            strategy_i,
            strategy_ii,
            innings: t.innings.len(),
            horizon,
            seed: t.seed,
        }
    }
}

fn expect(kind: GameKind, player: Player, want_kind: GameKind, want_player: Player) -> Result<()> {
    if kind == want_kind && player == want_player {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "this transformer builds player {want_player} in {want_kind}, not player {player} in {kind}"
        )))
    }
}

fn all_bases(space: &Space) -> CoverFamily {
    match space.base_count() {
        Some(m) => CoverFamily::listed("base", (0..m).map(OpenSet::basic).collect()),
        None => CoverFamily::lazy("base", |i| Some(OpenSet::basic(i))),
    }
}

fn builtin(name: &str, space: &Space) -> Result<Strat> {
    Ok(match name {
        "witness-pointing" => witness_pointing(),
        "base-opens" => base_open_strategy(),
        "whole-cover" => whole_cover(),
        "first-member" => first_member(),
        "first-point" => first_point(),
        "pibase-dgame" => pibase_strategy_dgame(all_bases(space)),
        _ => return Err(Error::Precondition(format!("unknown strategy {name:?}"))),
    })
}

fn random_for(space: &Space, spec: Option<&SpaceSpec>, kind: GameKind, player: Player, seed: u64) -> Result<Strat> {
    if player == Player::II {
        if let (GameKind::OpenPicking, Some(SpaceSpec::Product(a, b))) = (kind, spec) {
            if **a == SpaceSpec::Rationals && **b == SpaceSpec::Rationals {
                return Ok(random_rectangles(seed, ProductSpace::new(a.build()?, b.build()?)));
            }
        }
        return Ok(random_adversary(kind, player, seed, MovePool::Replies));
    }
    if space.is_finite() {
        let fg = FinGame::from_space(space, kind)?;
        let moves: Vec<Move> = fg.i_moves()?.iter().map(|m| m.to_move(space)).collect();
        let pool = match moves.first() {
            Some(Move::Cover(_)) => MovePool::Families(
                moves.into_iter().filter_map(|m| if let Move::Cover(f) = m { Some(f) } else { None }).collect(),
            ),
            Some(Move::Dense(_)) => MovePool::DenseSets(
                moves.into_iter().filter_map(|m| if let Move::Dense(d) = m { Some(d) } else { None }).collect(),
            ),
            Some(Move::Open(_)) => MovePool::Opens(
                moves.into_iter().filter_map(|m| if let Move::Open(o) = m { Some(o) } else { None }).collect(),
            ),
            _ => MovePool::Points(
                moves.into_iter().filter_map(|m| if let Move::Point(p) = m { Some(p) } else { None }).collect(),
            ),
        };
        return Ok(random_adversary(kind, player, seed, pool));
    }
    let on_rationals = matches!(spec, Some(SpaceSpec::Rationals));
    Ok(match kind {
        GameKind::SelCover(..) | GameKind::SelCoverFin(..) if on_rationals => random_basic_covers(seed),
        GameKind::DGame if on_rationals => random_dense_sets(seed),
        GameKind::SPlus | GameKind::SPlusFin if on_rationals => random_dense_opens(seed),
        GameKind::PointOpen => random_adversary(kind, player, seed, MovePool::Opens((0..64).map(OpenSet::basic).collect())),
        GameKind::OpenPicking => {
            let points: Vec<usize> = (0..64).map(|b| space.base_witness(b)).collect();
            random_adversary(kind, player, seed, MovePool::Points(points))
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "no random player I for {kind} on {}",
                space.label()
            )))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_specs_round_trip() {
        for s in [
            "rationals",
            "sierpinski",
            "discrete:2",
            "chain:3",
            "double:discrete:2",
            "product:rationals,discrete:1",
            "pr:discrete:2",
            "opensub:chain:3,[1]",
            "product:(product:discrete:1,discrete:2),chain:2",
            "opensub:(product:discrete:2,discrete:2),[0,3]",
        ] {
            let spec: SpaceSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            spec.build().unwrap();
        }
        assert!("nothing".parse::<SpaceSpec>().is_err());
        assert!("discrete:x".parse::<SpaceSpec>().is_err());
        assert!("discrete:0".parse::<SpaceSpec>().unwrap().build().is_err());
    }

    #[test]
    fn builtin_sizes() {
        let s: SpaceSpec = "pr:discrete:2".parse().unwrap();
        assert_eq!(s.build().unwrap().point_count(), Some(4));
        let s: SpaceSpec = "discrete:2".parse().unwrap();
        assert_eq!(s.build().unwrap().base_count(), Some(2));
    }

    #[test]
    fn recipes_parse_and_resolve() {
        assert_eq!(Recipe::parse("random:7").unwrap(), Recipe::Random { seed: 7 });
        assert_eq!(Recipe::parse("solver").unwrap(), Recipe::Solver);
        assert!(Recipe::parse("nope").is_err());
        let r = Recipe::DualForward {
            pair: DualPair::PoOd,
            inner: Box::new(Recipe::Builtin { name: "witness-pointing".into() }),
        };
        let back = Recipe::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let od = GameKind::SelCover(crate::games::Class::Cover, crate::games::Class::DenseUnion);
        r.resolve(&rationals(), Some(&SpaceSpec::Rationals), od, Player::II).unwrap();
        assert!(r.resolve(&rationals(), None, od, Player::I).is_err());
    }

    #[test]
    fn solver_recipe_checks_the_winner() {
        let s = discrete(2);
        assert!(Recipe::Solver.resolve(&s, None, GameKind::SPlus, Player::II).is_ok());
        assert!(Recipe::Solver.resolve(&s, None, GameKind::SPlus, Player::I).is_err());
        let t = solve_game(&s, GameKind::SPlus).unwrap().strategy;
        let r = Recipe::from_json(&t.to_json()).unwrap();
        assert!(matches!(r, Recipe::Table { .. }));
        assert!(r.resolve(&s, None, GameKind::SPlus, Player::II).is_ok());
    }

    #[test]
    fn structural_recipes_need_their_spaces() {
        let restrict = Recipe::Restrict { inner: Box::new(Recipe::Solver) };
        let spec: SpaceSpec = "opensub:sierpinski,[0]".parse().unwrap();
        let sp = spec.build().unwrap();
        restrict.resolve(&sp, Some(&spec), GameKind::SPlus, Player::II).unwrap();
        assert!(restrict.resolve(&sp, None, GameKind::SPlus, Player::II).is_err());
        let prod = Recipe::ProductPointing {
            x: Box::new(Recipe::Builtin { name: "witness-pointing".into() }),
            dense: DenseChoice::Witnesses,
        };
        let spec: SpaceSpec = "product:rationals,rationals".parse().unwrap();
        prod.resolve(&spec.build().unwrap(), Some(&spec), GameKind::OpenPicking, Player::I).unwrap();
        let union = Recipe::Union {
            pieces: vec![
                UnionPiece { set: vec![0], inner: Box::new(Recipe::Solver) },
                UnionPiece { set: vec![1], inner: Box::new(Recipe::Solver) },
            ],
        };
        union.resolve(&discrete(2), None, GameKind::SPlus, Player::II).unwrap();
    }
}
