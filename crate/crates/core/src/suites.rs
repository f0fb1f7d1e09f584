//! Verification suites: named groups of checks with JSON reports.
//!
//! Every check is deterministic for a given base seed. Failing checks carry
//! an artifact: a [`Replay`] when the failure is a play, or the instance that
//! failed otherwise.

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bairecat::{
    covering_selection, diagonal_selector, discrete_cover_family, dyadic_cover_table, has_property_p, in_n_alpha,
    pad_family, selection, SeqPrefix, VectorFamily,
};
use crate::finsolve::{
    acc_of, enumerate_memoryless_strategies, memoryless_tables, open_of, preorder_spaces, solve_game, t0_spaces,
    verify_strategy, FinTopology, TableStrategy, VerifyReport,
};
use crate::games::{
    evaluate, first_member, pibase_strategy_dgame, play, play_full, random_basic_covers, random_dense_sets, random_rectangles,
    witness_pointing, Class, Game, GameKind, Move, Player, Strat, Strategy,
};
use crate::pixleyroy::{
    doublecover_to_hyperspace_family, embed_omega_cover, hyperspace_family_to_doublecover,
    is_double_cover_at_horizon, long_interval_pairs, open_subspace_commutes, second_countable_double_selector,
    DoubleCover, DoublePair, PixleyRoy,
};
use crate::recipe::{DenseChoice, Recipe, Replay, SpaceSpec, UnionPiece};
use crate::space::{
    dense_subspace_of, dense_union_at_horizon, is_omega_cover_at_horizon, open_subspace_of, rationals, CoverFamily,
    Meet, OpenSet, PointSet, ProductSpace, Rationals, Space,
};
use crate::transform::{
    claim_point, claim_strategy, dual_forward, int_complement, lift_dense_strategy, product_pointing_strategy,
    relativized_piece, restrict_splus_strategy, union_splus_strategy, DualPair, Piece,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub claim: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub artifact: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub artifact_path: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub seeds: Vec<u64>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub suite: String,
    pub claim: String,
    pub seed: u64,
    pub status: Status,
    pub checks: Vec<CheckRecord>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl RunReport {
    /// The report as JSON. With `timings` the per-check and total elapsed
    /// milliseconds are included; without, the output is reproducible.
    pub fn to_json(&self, timings: bool) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        if timings {
            v["elapsed_ms"] = json!(self.elapsed_ms as u64);
            for (c, r) in v["checks"].as_array_mut().unwrap().iter_mut().zip(&self.checks) {
                c["elapsed_ms"] = json!(r.elapsed_ms as u64);
            }
        }
        serde_json::to_string_pretty(&v).expect("reports serialize")
    }

    /// One line per check.
    pub fn render(&self) -> String {
        let mut out = format!("suite {}: {}\n", self.suite, self.claim);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Indeterminate => "INDETERMINATE",
            };
            out.push_str(&format!("  {tag} {} ({} ms): {}\n", c.id, c.elapsed_ms, c.detail));
            if let Some(p) = &c.artifact_path {
                out.push_str(&format!("       artifact: {p}\n"));
            }
        }
        out
    }

    /// 0 when every check passed, 1 on any failure, 2 when only
    /// indeterminate checks remain.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Indeterminate => 2,
        }
    }

    /// Writes the artifact of every failing or indeterminate check to `dir`
    /// and records its path.
    pub fn write_artifacts(&mut self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        for c in &mut self.checks {
            if let Some(a) = &c.artifact {
                let path = dir.join(format!("{}-{}.json", self.suite, c.id));
                std::fs::write(&path, serde_json::to_string_pretty(a)?)?;
                c.artifact_path = Some(path.display().to_string());
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Checks run at once (0: one per core).
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, jobs: 0 }
    }
}

struct Outcome {
    status: Status,
    detail: String,
    artifact: Option<Value>,
    seeds: Vec<u64>,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Outcome {
        Outcome { status: Status::Pass, detail: detail.into(), artifact: None, seeds: vec![] }
    }

    fn fail(detail: impl Into<String>, artifact: Value) -> Outcome {
        Outcome { status: Status::Fail, detail: detail.into(), artifact: Some(artifact), seeds: vec![] }
    }

    fn check(ok: bool, detail: impl Into<String>, artifact: impl FnOnce() -> Value) -> Outcome {
        if ok {
            Outcome::pass(detail)
        } else {
            Outcome::fail(detail, artifact())
        }
    }

    fn seeds(mut self, seeds: Vec<u64>) -> Outcome {
        self.seeds = seeds;
        self
    }
}

type CheckFn = fn(&SuiteConfig) -> Result<Outcome>;

struct CheckDef {
    id: &'static str,
    claim: &'static str,
    run: CheckFn,
}

pub struct SuiteDef {
    pub name: &'static str,
    pub claim: &'static str,
    checks: &'static [CheckDef],
}

impl SuiteDef {
    pub fn check_ids(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.id).collect()
    }
}

static SUITES: &[SuiteDef] = &[
    SuiteDef {
        name: "pr-dense-union",
        claim: "a family of basic opens of PR(X) has dense union iff its pairs form an ω-double cover of X",
        checks: &[
            CheckDef {
                id: "hyperspace-to-pairs",
                claim: "basic-open families of size ≤ 3 on T0 spaces with ≤ 3 points",
                run: pr_hyperspace_to_pairs,
            },
            CheckDef {
                id: "pairs-to-hyperspace",
                claim: "pair families of size ≤ 3 on T0 spaces with ≤ 3 points",
                run: pr_pairs_to_hyperspace,
            },
        ],
    },
    SuiteDef {
        name: "double-selector",
        claim: "a second-countable space selects an ω-double cover from a sequence of ω-double covers",
        checks: &[
            CheckDef {
                id: "selector-rationals",
                claim: "64 long-interval double covers of the rationals, checked at m = 6 with bound 10⁴",
                run: selector_rationals,
            },
            CheckDef {
                id: "selector-deterministic",
                claim: "the selection is identical across runs",
                run: selector_deterministic,
            },
        ],
    },
    SuiteDef {
        name: "diagonal-selector",
        claim: "the diagonal selection lies outside every N_α and its union meets each π-base element",
        checks: &[
            CheckDef {
                id: "selection-meets-pibase",
                claim: "16 rows of the dyadic table against the first 16 base elements of the rationals",
                run: diagonal_meets_pibase,
            },
            CheckDef {
                id: "witness-permanence",
                claim: "no extension of a nowhere-dense witness lies in N_α (1000 per α)",
                run: witness_permanence,
            },
        ],
    },
    SuiteDef {
        name: "property-p",
        claim: "a family has (P) iff no selection from its discrete cover family covers",
        checks: &[
            CheckDef {
                id: "property-p-equivalence",
                claim: "all families with |S| ≤ 3, N ≤ 3, values < 3",
                run: property_p_equivalence,
            },
            CheckDef {
                id: "padding-preserves",
                claim: "padding keeps (P) on 100 seeded instances",
                run: padding_preserves,
            },
        ],
    },
    SuiteDef {
        name: "omega-embedding",
        claim: "U is an ω-cover iff {(∅, U) : U ∈ U} is an ω-double cover",
        checks: &[CheckDef {
            id: "embedding-finite",
            claim: "every family of open sets of every space with ≤ 3 points",
            run: omega_embedding_finite,
        }],
    },
    SuiteDef {
        name: "pr-open-subspace",
        claim: "PR(U) is the open subspace [∅, U] of PR(X)",
        checks: &[CheckDef {
            id: "open-subspace-finite",
            claim: "every nonempty open U of every space with ≤ 3 points",
            run: pr_open_subspace_finite,
        }],
    },
    SuiteDef {
        name: "open-picking-duality",
        claim: "I wins the open-picking game iff II wins the cover/dense-union selection game",
        checks: &[
            CheckDef {
                id: "forward-rationals",
                claim: "the translated witness strategy wins by inning 16 at m = 16 against 50 random basic-cover players",
                run: forward_rationals,
            },
            CheckDef {
                id: "forward-finite",
                claim: "every winning memoryless open-picking strategy on ≤ 3 points translates to a winning selector",
                run: forward_finite,
            },
            CheckDef {
                id: "forward-dense-finite",
                claim: "the point-open analogue on ≤ 3 points",
                run: forward_dense_finite,
            },
            CheckDef {
                id: "claim-finite",
                claim: "every memoryless selector on ≤ 3 points has a point all of whose neighbourhoods are responses",
                run: claim_finite,
            },
            CheckDef {
                id: "claim-strategy",
                claim: "the claim strategy built from the solver's selector wins both pointing games on ≤ 3 points",
                run: claim_strategy_finite,
            },
        ],
    },
    SuiteDef {
        name: "product-pointing",
        claim: "the product pointing strategy makes II's rectangles dense in X × Y",
        checks: &[
            CheckDef {
                id: "rectangles-rationals",
                claim: "all 8×8 base rectangles of rationals × rationals are met within 120 innings, 20 seeds",
                run: product_rectangles,
            },
            CheckDef {
                id: "rectangles-rationals-16",
                claim: "all 16×16 base rectangles are met within 481 innings, 20 seeds",
                run: product_rectangles_16,
            },
        ],
    },
    SuiteDef {
        name: "splus-union",
        claim: "winning S+ strategies on the pieces combine to one on their union",
        checks: &[CheckDef {
            id: "union-decompositions",
            claim: "every cover of a space with ≤ 3 points by two sets, S+ and its finite-selection form",
            run: union_decompositions,
        }],
    },
    SuiteDef {
        name: "splus-restrict",
        claim: "a winning S+ strategy restricts to open subspaces",
        checks: &[CheckDef {
            id: "restrict-opens",
            claim: "every nonempty open subspace of a space with ≤ 3 points",
            run: restrict_opens,
        }],
    },
    SuiteDef {
        name: "splus-lift",
        claim: "a winning S+ strategy on a dense subspace lifts to the space",
        checks: &[CheckDef {
            id: "lift-dense",
            claim: "every dense subset of a space with ≤ 3 points",
            run: lift_dense,
        }],
    },
    SuiteDef {
        name: "pibase-dgame",
        claim: "a countable π-base gives II a winning strategy in the dense-set game",
        checks: &[CheckDef {
            id: "pibase-rationals",
            claim: "wins by inning 16 at m = 16 against 20 random dense-set players",
            run: pibase_rationals,
        }],
    },
    SuiteDef {
        name: "finite-triviality",
        claim: "on finite spaces the winners are fixed by the definitions",
        checks: &[
            CheckDef {
                id: "winners-finite",
                claim: "solver winners on every space with ≤ 4 points match the expected winner of each game",
                run: winners_finite,
            },
            CheckDef {
                id: "solver-strategies",
                claim: "solver strategies verify winning on every space with ≤ 3 points",
                run: solver_strategies_finite,
            },
        ],
    },
];

pub fn suites() -> &'static [SuiteDef] {
    SUITES
}

/// `(name, claim)` of every suite.
pub fn list_suites() -> Vec<(&'static str, &'static str)> {
    SUITES.iter().map(|s| (s.name, s.claim)).collect()
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<RunReport> {
    run_checks(name, None, cfg)
}

/// Runs the checks of a suite named in `only` (all when `None`).
pub fn run_checks(name: &str, only: Option<&[&str]>, cfg: &SuiteConfig) -> Result<RunReport> {
    let def = SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::Precondition(format!("unknown suite {name:?}")))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let start = Instant::now();
    let selected: Vec<&CheckDef> =
        def.checks.iter().filter(|c| only.is_none_or(|ids| ids.contains(&c.id))).collect();
    if let Some(ids) = only {
        if let Some(missing) = ids.iter().find(|id| !def.checks.iter().any(|c| c.id == **id)) {
            return Err(Error::Precondition(format!("suite {name} has no check {missing:?}")));
        }
    }
    let checks: Vec<CheckRecord> = pool.install(|| selected.par_iter().map(|c| run_check(c, cfg)).collect());
    let status = overall(&checks);
    Ok(RunReport {
        suite: def.name.to_string(),
        claim: def.claim.to_string(),
        seed: cfg.seed,
        status,
        checks,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn overall(checks: &[CheckRecord]) -> Status {
    if checks.iter().any(|c| c.status == Status::Fail) {
        Status::Fail
    } else if checks.iter().any(|c| c.status == Status::Indeterminate) {
        Status::Indeterminate
    } else {
        Status::Pass
    }
}

fn run_check(c: &CheckDef, cfg: &SuiteConfig) -> CheckRecord {
    let start = Instant::now();
    let out = match (c.run)(cfg) {
        Ok(o) => o,
        Err(e @ (Error::Indeterminate { .. } | Error::SearchExhausted { .. })) => Outcome {
            status: Status::Indeterminate,
            detail: e.to_string(),
            artifact: Some(json!({ "error": e.to_string() })),
            seeds: vec![],
        },
        Err(e) => Outcome::fail(e.to_string(), json!({ "error": e.to_string() })),
    };
    CheckRecord {
        id: c.id.to_string(),
        claim: c.claim.to_string(),
        status: out.status,
        detail: out.detail,
        artifact: out.artifact,
        artifact_path: None,
        seeds: out.seeds,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

fn spec_of(s: &Space) -> Result<SpaceSpec> {
    SpaceSpec::of_finite(s)
}

fn replay_value(r: &Replay) -> Value {
    json!({ "replay": r })
}

/// A failed exhaustive verification as a replay of the counterexample.
fn verify_failure(
    what: String,
    space: &SpaceSpec,
    strategy: Recipe,
    player: Player,
    rep: &VerifyReport,
) -> Outcome {
    let detail = format!("{what}: {}", rep.reason.as_deref().unwrap_or("strategy loses"));
    let artifact = match &rep.counterexample {
        Some(t) => {
            let r = Replay::against_transcript(space, strategy, player, t, 64);
            json!({ "replay": r, "counterexample": t })
        }
        None => json!({ "space": space.to_string(), "strategy": strategy, "reason": rep.reason }),
    };
    Outcome::fail(detail, artifact)
}

fn seeds(cfg: &SuiteConfig, n: u64) -> Vec<u64> {
    (0..n).map(|i| cfg.seed.wrapping_add(i)).collect()
}

// --- Pixley-Roy ---

fn basic_families(nb: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max {
        let mut next = Vec::new();
        for f in &frontier {
            let start = f.last().map_or(0, |&l: &usize| l + 1);
            for b in start..nb {
                let mut g: Vec<usize> = f.clone();
                g.push(b);
                next.push(g);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn pr_scan(forward: bool) -> Result<Outcome> {
    let spaces: Vec<Space> = (1..=3).flat_map(t0_spaces).collect();
    let results: Vec<Result<(usize, Option<Value>)>> = spaces
        .par_iter()
        .map(|s| {
            let pr = PixleyRoy::new(s.clone())?;
            let hs = pr.space();
            let nb = hs.base_count().unwrap();
            let mut count = 0;
            for f in basic_families(nb, 3) {
                let (fam, dc) = if forward {
                    let fam = CoverFamily::listed("family", f.iter().map(|&b| OpenSet::basic(b)).collect());
                    let dc = hyperspace_family_to_doublecover(&pr, &fam)?;
                    (fam, dc)
                } else {
                    let pairs: Vec<DoublePair> = f
                        .iter()
                        .map(|&b| {
                            let (f, u) = pr.pair(b);
                            DoublePair::new(f, u)
                        })
                        .collect();
                    let dc = DoubleCover::listed(s, "pairs", pairs);
                    (doublecover_to_hyperspace_family(&pr, &dc)?, dc)
                };
                let dense = dense_union_at_horizon(&hs, &fam, nb, nb)?;
                let double = is_double_cover_at_horizon(s, &dc, 64, 64)?;
                count += 1;
                if dense != double {
                    let pairs = dc.to_json()?;
                    return Ok((
                        count,
                        Some(json!({
                            "space": spec_of(s)?.to_string(),
                            "hyperspace_bases": f,
                            "pairs": serde_json::from_str::<Value>(&pairs)?,
                            "dense_union": dense,
                            "double_cover": double,
                        })),
                    ));
                }
            }
            Ok((count, None))
        })
        .collect();
    let mut total = 0;
    for r in results {
        let (n, bad) = r?;
        total += n;
        if let Some(a) = bad {
            return Ok(Outcome::fail("dense union and double cover disagree", a));
        }
    }
    Ok(Outcome::pass(format!("{total} families on {} spaces, 0 mismatches", spaces.len())))
}

fn pr_hyperspace_to_pairs(_: &SuiteConfig) -> Result<Outcome> {
    pr_scan(true)
}

fn pr_pairs_to_hyperspace(_: &SuiteConfig) -> Result<Outcome> {
    pr_scan(false)
}

fn double_selection() -> Result<DoubleCover> {
    let q = rationals();
    let sel = second_countable_double_selector(&q, &|_| long_interval_pairs(), 64, 10_000)?;
    Ok(DoubleCover::listed(&q, "selection", sel.into_iter().map(|s| s.pair).collect()))
}

fn selector_rationals(_: &SuiteConfig) -> Result<Outcome> {
    let q = rationals();
    let inputs_ok = is_double_cover_at_horizon(&q, &long_interval_pairs(), 6, 10_000)?;
    if !inputs_ok {
        return Ok(Outcome::fail("input is not a double cover at m = 6", json!({ "input": "long-interval pairs" })));
    }
    let out = double_selection()?;
    let ok = is_double_cover_at_horizon(&q, &out, 6, 10_000)?;
    Ok(Outcome::check(ok, format!("selection of 64 pairs is a double cover at m = 6: {ok}"), || {
        json!({ "selection": serde_json::from_str::<Value>(&out.to_json().unwrap()).unwrap() })
    }))
}

fn selector_deterministic(_: &SuiteConfig) -> Result<Outcome> {
    let a = double_selection()?.to_json()?;
    let b = double_selection()?.to_json()?;
    Ok(Outcome::check(a == b, "two runs select the same pairs", || json!({ "first": a, "second": b })))
}

// --- Baire category ---

/// Exact interval of base element `b` (the whole line for 0).
fn interval_of(b: usize) -> Option<(num_rational::BigRational, num_rational::BigRational)> {
    Rationals::interval(b)
}

fn intervals_meet(a: usize, b: usize) -> bool {
    match (interval_of(a), interval_of(b)) {
        (Some((lo1, hi1)), Some((lo2, hi2))) => lo1.max(lo2) < hi1.min(hi2),
        _ => true,
    }
}

fn diagonal_meets_pibase(_: &SuiteConfig) -> Result<Outcome> {
    let q = rationals();
    let table = dyadic_cover_table(16);
    let pibase: Vec<OpenSet> = (0..16).map(OpenSet::basic).collect();
    let f = diagonal_selector(&q, &pibase, &table, 10_000)?;
    let sel = selection(&table, &f)?;
    let missed: Vec<usize> = (0..16)
        .filter(|&b| !sel.iter().any(|u| u.parts().iter().any(|&p| intervals_meet(b, p))))
        .collect();
    Ok(Outcome::check(
        missed.is_empty(),
        format!("f = {:?}; base elements missed: {missed:?}", f.values()),
        || json!({ "f": f, "selection": sel, "missed": missed }),
    ))
}

fn witness_permanence(cfg: &SuiteConfig) -> Result<Outcome> {
    let q = rationals();
    let table = dyadic_cover_table(16);
    let pibase: Vec<OpenSet> = (0..16).map(OpenSet::basic).collect();
    let f = diagonal_selector(&q, &pibase, &table, 10_000)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for (alpha, b) in pibase.iter().enumerate() {
        let prefix = &f.values()[..=alpha];
        for _ in 0..1000 {
            let mut ext = prefix.to_vec();
            while ext.len() < 16 {
                ext.push(rng.gen_range(0..64));
            }
            let ext = SeqPrefix::new(ext);
            if in_n_alpha(&q, b, &table, &ext, 10_000)? {
                return Ok(Outcome::fail(
                    format!("extension of the witness for α = {alpha} lies in N_α"),
                    json!({ "alpha": alpha, "witness": prefix, "extension": ext }),
                )
                .seeds(vec![cfg.seed]));
            }
        }
    }
    Ok(Outcome::pass("16 000 extensions, none in N_α").seeds(vec![cfg.seed]))
}

fn all_vectors(n: usize, values: usize) -> Vec<Vec<usize>> {
    (0..values.pow(n as u32))
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let d = c % values;
                    c /= values;
                    d
                })
                .collect()
        })
        .collect()
}

fn property_p_equivalence(_: &SuiteConfig) -> Result<Outcome> {
    let mut cases = Vec::new();
    for n in 1..=3 {
        let vs = all_vectors(n, 3);
        for idx in basic_families(vs.len(), 3).into_iter().filter(|f| !f.is_empty()) {
            cases.push(idx.iter().map(|&i| vs[i].clone()).collect::<Vec<_>>());
        }
    }
    let bad = cases.par_iter().find_map_first(|vectors| {
        let fam = VectorFamily::new(vectors.clone()).ok()?;
        let p = has_property_p(&fam, &fam.sentinel_bound());
        let (s, t) = discrete_cover_family(&fam).ok()?;
        let cover = covering_selection(&s, &t).ok()?;
        (p == cover.is_some()).then(|| json!({ "family": fam, "property_p": p, "covering_selection": cover }))
    });
    Ok(match bad {
        Some(a) => Outcome::fail("(P) and covering selections disagree", a),
        None => Outcome::pass(format!("{} families, 0 mismatches", cases.len())),
    })
}

/// A family with (P), cuts, and a bound exceeding each cut below it.
fn pad_instance(rng: &mut ChaCha8Rng) -> (Vec<(Vec<usize>, usize)>, Vec<usize>) {
    loop {
        let n = rng.gen_range(1..=4);
        let size = rng.gen_range(1..=3);
        let hs: Vec<Vec<usize>> = (0..size).map(|_| (0..n).map(|_| rng.gen_range(0..3)).collect()).collect();
        let fam = VectorFamily::new(hs.clone()).unwrap();
        if !has_property_p(&fam, &fam.sentinel_bound()) {
            continue;
        }
        let list: Vec<(Vec<usize>, usize)> = hs.into_iter().map(|h| (h, rng.gen_range(0..=n))).collect();
        let b: Vec<usize> = (0..n)
            .map(|i| {
                let need = list
                    .iter()
                    .map(|(h, cut)| if i < *cut { cut + 1 } else { h[i] + 1 })
                    .max()
                    .unwrap();
                need + rng.gen_range(0..2)
            })
            .collect();
        return (list, b);
    }
}

fn padding_preserves(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for i in 0..100 {
        let (list, b) = pad_instance(&mut rng);
        let padded = pad_family(&list, &b)?;
        if !has_property_p(&padded, &padded.sentinel_bound()) {
            return Ok(Outcome::fail(
                format!("instance {i} loses (P)"),
                json!({ "h": list, "bound": b, "padded": padded }),
            )
            .seeds(vec![cfg.seed]));
        }
    }
    Ok(Outcome::pass("100 instances keep (P)").seeds(vec![cfg.seed]))
}

fn omega_embedding_finite(_: &SuiteConfig) -> Result<Outcome> {
    let spaces: Vec<Space> = (1..=3).flat_map(preorder_spaces).collect();
    let mut total = 0;
    for s in &spaces {
        let top = FinTopology::from_space(s)?;
        let opens: Vec<u64> = top.opens().to_vec();
        let n = s.point_count().unwrap();
        for sel in 0u64..1 << opens.len() {
            let members: Vec<OpenSet> =
                (0..opens.len()).filter(|i| sel >> i & 1 == 1).map(|i| open_of(s, opens[i])).collect();
            let oc = CoverFamily::listed("family", members);
            let omega = is_omega_cover_at_horizon(s, &oc, 1 << n, 256)?;
            let double = is_double_cover_at_horizon(s, &embed_omega_cover(s, &oc), 64, 256)?;
            total += 1;
            if omega != double {
                let masks: Vec<u64> = (0..opens.len()).filter(|i| sel >> i & 1 == 1).map(|i| opens[i]).collect();
                return Ok(Outcome::fail(
                    "ω-cover and embedded double cover disagree",
                    json!({ "space": spec_of(s)?.to_string(), "family_masks": masks, "omega": omega, "double": double }),
                ));
            }
        }
    }
    Ok(Outcome::pass(format!("{total} families on {} spaces, 0 mismatches", spaces.len())))
}

fn pr_open_subspace_finite(_: &SuiteConfig) -> Result<Outcome> {
    let spaces: Vec<Space> = (1..=3).flat_map(preorder_spaces).collect();
    let mut total = 0;
    for s in &spaces {
        let top = FinTopology::from_space(s)?;
        for &u in top.nonempty_opens() {
            total += 1;
            if !open_subspace_commutes(s, &open_of(s, u))? {
                return Ok(Outcome::fail(
                    "PR(U) differs from [∅, U]",
                    json!({ "space": spec_of(s)?.to_string(), "open_mask": u }),
                ));
            }
        }
    }
    Ok(Outcome::pass(format!("{total} open subspaces, all commute")))
}

// --- games ---

const OD: GameKind = GameKind::SelCover(Class::Cover, Class::DenseUnion);

fn forward_rationals(cfg: &SuiteConfig) -> Result<Outcome> {
    let q = rationals();
    let g = Game::new(OD, q.clone()).with_horizon(16);
    let ii = dual_forward(DualPair::PoOd, witness_pointing());
    let seeds = seeds(cfg, 50);
    let mut worst = 0;
    for &seed in &seeds {
        let t = play(&g, random_basic_covers(seed).as_ref(), ii.as_ref(), 16, Some(seed))?;
        let v = evaluate(&q, &t, 16);
        match v.won_by(Player::II) {
            Some(n) if n <= 16 => worst = worst.max(n),
            _ => {
                let r = Replay {
                    space: "rationals".into(),
                    game: OD,
                    strategy_i: Recipe::Random { seed },
                    strategy_ii: Recipe::DualForward {
                        pair: DualPair::PoOd,
                        inner: Box::new(Recipe::Builtin { name: "witness-pointing".into() }),
                    },
                    innings: 16,
                    horizon: 16,
                    seed: Some(seed),
                };
                return Ok(Outcome::fail(format!("seed {seed}: {v}"), replay_value(&r)).seeds(seeds));
            }
        }
    }
    Ok(Outcome::pass(format!("50 runs, all WinII(≤{worst}) at m=16")).seeds(seeds))
}

/// Memoryless I strategies of the pointing game on `s` that win it. Past
/// the enumeration cap only the solver's strategy is used; the flag says so.
fn winning_pointing_tables(s: &Space, kind: GameKind) -> Result<(Vec<TableStrategy>, bool)> {
    match memoryless_tables(s, kind, 1 << 16) {
        Ok(all) => {
            let mut out = Vec::new();
            for t in all {
                if verify_strategy(s, kind, &t, Player::I, None)?.ok {
                    out.push(t);
                }
            }
            Ok((out, false))
        }
        Err(Error::CapExceeded { .. }) => Ok((vec![solve_game(s, kind)?.strategy], true)),
        Err(e) => Err(e),
    }
}

fn forward_over(pair: DualPair) -> Result<Outcome> {
    let spaces: Vec<Space> = (1..=3).flat_map(preorder_spaces).collect();
    let results: Vec<Result<(usize, bool, Option<Outcome>)>> = spaces
        .par_iter()
        .map(|s| {
            let (taus, capped) = winning_pointing_tables(s, pair.pointing_game())?;
            let mut checked = 0;
            for tau in taus {
                let out = dual_forward(pair, Arc::new(tau.clone()));
                let rep = verify_strategy(s, pair.selection_game(), out.as_ref(), Player::II, None)?;
                checked += 1;
                if !(rep.ok && rep.exhaustive) {
                    let recipe = Recipe::DualForward { pair, inner: Box::new(Recipe::Table { table: tau }) };
                    let f = verify_failure(s.label(), &spec_of(s)?, recipe, Player::II, &rep);
                    return Ok((checked, capped, Some(f)));
                }
            }
            Ok((checked, capped, None))
        })
        .collect();
    let (mut total, mut capped) = (0, 0);
    for r in results {
        let (n, c, bad) = r?;
        total += n;
        capped += c as usize;
        if let Some(o) = bad {
            return Ok(o);
        }
    }
    let note = if capped > 0 {
        format!(" ({capped} spaces past the enumeration cap used the solver's strategy)")
    } else {
        String::new()
    };
    Ok(Outcome::pass(format!("{total} winning strategies translated, 0 counterexamples{note}")))
}

fn forward_finite(_: &SuiteConfig) -> Result<Outcome> {
    forward_over(DualPair::PoOd)
}

fn forward_dense_finite(_: &SuiteConfig) -> Result<Outcome> {
    forward_over(DualPair::OpDd)
}

/// Whether sigma's reply to `mv` gains exactly `u`.
fn produces(s: &Space, sigma: &dyn Strategy, kind: GameKind, mv: &Move, u: u64) -> Result<bool> {
    let g = Game::new(kind, s.clone());
    let h = vec![mv.clone()];
    let r = sigma.next(&g, &h)?;
    Ok(acc_of(s, &[mv.clone(), r]) == u)
}

fn claim_finite(_: &SuiteConfig) -> Result<Outcome> {
    let spaces: Vec<Space> = (1..=3).flat_map(preorder_spaces).collect();
    let results: Vec<Result<(usize, Option<Outcome>)>> = spaces
        .par_iter()
        .map(|s| {
            let top = FinTopology::from_space(s)?;
            let pair = DualPair::PoOd;
            let kind = pair.selection_game();
            let mut sigmas = match enumerate_memoryless_strategies(s, kind, Player::II, 1 << 16) {
                Ok(all) => all,
                Err(Error::CapExceeded { .. }) => vec![],
                Err(e) => return Err(e),
            };
            sigmas.push(Arc::new(solve_game(s, kind)?.strategy));
            sigmas.push(first_member());
            let mut checked = 0;
            for (i, sigma) in sigmas.iter().enumerate() {
                let fail = |why: String| -> Result<Option<Outcome>> {
                    Ok(Some(Outcome::fail(
                        format!("{}: selector {i}: {why}", s.label()),
                        json!({ "space": spec_of(s)?.to_string(), "selector_index": i, "selector": sigma.label(), "cap": 1 << 16 }),
                    )))
                };
                let w = match claim_point(pair, sigma.as_ref(), s, &[]) {
                    Ok(w) => w,
                    Err(e) => return Ok((checked, fail(e.to_string())?)),
                };
                let Move::Point(x) = w.mv else { return Ok((checked, fail("claim is not a point".into())?)) };
                checked += 1;
                for &u in top.nonempty_opens().iter().filter(|&&u| u >> x & 1 == 1) {
                    let ok = match w.producer(u) {
                        Some(m) => produces(s, sigma.as_ref(), kind, &m.to_move(s), u)?,
                        None => false,
                    };
                    if !ok {
                        return Ok((checked, fail(format!("neighbourhood {u:#b} of {x} is not a response"))?));
                    }
                }
            }
            Ok((checked, None))
        })
        .collect();
    let mut total = 0;
    for r in results {
        let (n, bad) = r?;
        total += n;
        if let Some(o) = bad {
            return Ok(o);
        }
    }
    Ok(Outcome::pass(format!("{total} selectors, every claim point verified")))
}

fn claim_strategy_finite(_: &SuiteConfig) -> Result<Outcome> {
    let spaces: Vec<Space> = (1..=3).flat_map(preorder_spaces).collect();
    for s in &spaces {
        for pair in [DualPair::PoOd, DualPair::OpDd] {
            let sigma: Strat = Arc::new(solve_game(s, pair.selection_game())?.strategy);
            let tau = claim_strategy(pair, sigma, s.clone());
            let rep = verify_strategy(s, pair.pointing_game(), tau.as_ref(), Player::I, None)?;
            if !rep.ok {
                let recipe = Recipe::Claim { pair, inner: Box::new(Recipe::Solver) };
                return Ok(verify_failure(format!("{} {pair}", s.label()), &spec_of(s)?, recipe, Player::I, &rep));
            }
        }
    }
    Ok(Outcome::pass(format!("{} spaces, both pairs", spaces.len())))
}

fn product_rectangles(cfg: &SuiteConfig) -> Result<Outcome> {
    rectangles_within(cfg, 8, 120)
}

fn product_rectangles_16(cfg: &SuiteConfig) -> Result<Outcome> {
    rectangles_within(cfg, 16, 481)
}

fn rectangles_within(cfg: &SuiteConfig, side: usize, innings: usize) -> Result<Outcome> {
    let q = rationals();
    let prod = ProductSpace::new(q.clone(), q.clone());
    let ps = prod.space();
    let g = Game::new(GameKind::OpenPicking, ps.clone()).with_horizon(64);
    let y = q.clone();
    let dense = PointSet::from_fn("base witnesses", move |k| y.base_witness(k), None);
    let seeds = seeds(cfg, 20);
    let mut latest = 0;
    for &seed in &seeds {
        let i = product_pointing_strategy(witness_pointing(), dense.clone(), prod.clone());
        let (h, _) = play_full(&g, i.as_ref(), random_rectangles(seed, prod.clone()).as_ref(), innings, Some(seed))?;
        let opens: Vec<&OpenSet> = h
            .iter()
            .skip(1)
            .step_by(2)
            .map(|m| match m {
                Move::Open(o) => Ok(o),
                _ => Err(Error::StrategyFailure("II must answer with opens".into())),
            })
            .collect::<Result<_>>()?;
        for a in 0..side {
            for b in 0..side {
                let r = OpenSet::basic(prod.rect(a, b));
                match opens.iter().position(|o| matches!(ps.open_meet(&r, o), Meet::Witness(_))) {
                    Some(n) => latest = latest.max(n + 1),
                    None => {
                        let rp = Replay {
                            space: "product:rationals,rationals".into(),
                            game: GameKind::OpenPicking,
                            strategy_i: Recipe::ProductPointing {
                                x: Box::new(Recipe::Builtin { name: "witness-pointing".into() }),
                                dense: DenseChoice::Witnesses,
                            },
                            strategy_ii: Recipe::Random { seed },
                            innings,
                            horizon: 64,
                            seed: Some(seed),
                        };
                        return Ok(Outcome::fail(format!("seed {seed}: rectangle ({a},{b}) missed"), replay_value(&rp))
                            .seeds(seeds));
                    }
                }
            }
        }
    }
    Ok(Outcome::pass(format!("20 runs, all {} rectangles met by inning {latest}", side * side)).seeds(seeds))
}

fn bits_of(mask: u64) -> Vec<usize> {
    crate::finsolve::bits(mask).collect()
}

fn union_decompositions(_: &SuiteConfig) -> Result<Outcome> {
    let spaces: Vec<Space> = (1..=3).flat_map(preorder_spaces).collect();
    let mut total = 0;
    for s in &spaces {
        let full = (1u64 << s.point_count().unwrap()) - 1;
        for kind in [GameKind::SPlus, GameKind::SPlusFin] {
            for a in 1..=full {
                for b in a..=full {
                    if a | b != full {
                        continue;
                    }
                    let mut pieces = Vec::new();
                    let mut recipe = Vec::new();
                    for m in [a, b] {
                        if let Some(sub) = relativized_piece(s, m)? {
                            let strategy: Strat = Arc::new(solve_game(&sub.space(), kind)?.strategy);
                            pieces.push(Piece { sub, strategy });
                            recipe.push(UnionPiece { set: bits_of(m), inner: Box::new(Recipe::Solver) });
                        }
                    }
                    let u = union_splus_strategy(pieces);
                    let rep = verify_strategy(s, kind, u.as_ref(), Player::II, None)?;
                    total += 1;
                    if !(rep.ok && rep.exhaustive) {
                        let what = format!("{} {kind} A={a:#b} B={b:#b}", s.label());
                        return Ok(verify_failure(what, &spec_of(s)?, Recipe::Union { pieces: recipe }, Player::II, &rep));
                    }
                }
            }
        }
    }
    Ok(Outcome::pass(format!("{total} decompositions verified")))
}

fn restrict_opens(_: &SuiteConfig) -> Result<Outcome> {
    let spaces: Vec<Space> = (1..=3).flat_map(preorder_spaces).collect();
    let mut total = 0;
    for s in &spaces {
        let top = FinTopology::from_space(s)?;
        let tau: Strat = Arc::new(solve_game(s, GameKind::SPlus)?.strategy);
        for &um in top.nonempty_opens() {
            let u = open_of(s, um);
            let sub = open_subspace_of(s, &u)?;
            let r = restrict_splus_strategy(tau.clone(), sub.clone(), int_complement(s, &u)?);
            let rep = verify_strategy(&sub.space(), GameKind::SPlus, r.as_ref(), Player::II, None)?;
            total += 1;
            if !(rep.ok && rep.exhaustive) {
                let spec = SpaceSpec::OpenSub(Box::new(spec_of(s)?), u.clone());
                let recipe = Recipe::Restrict { inner: Box::new(Recipe::Solver) };
                return Ok(verify_failure(format!("{} U={um:#b}", s.label()), &spec, recipe, Player::II, &rep));
            }
        }
    }
    Ok(Outcome::pass(format!("{total} open subspaces verified")))
}

fn lift_dense(_: &SuiteConfig) -> Result<Outcome> {
    let spaces: Vec<Space> = (1..=3).flat_map(preorder_spaces).collect();
    let mut total = 0;
    for s in &spaces {
        let top = FinTopology::from_space(s)?;
        for d in 1..=top.full() {
            if !top.is_dense(d) {
                continue;
            }
            let sub = dense_subspace_of(s, &PointSet::listed("D", bits_of(d)))?;
            let tau: Strat = Arc::new(solve_game(&sub.space(), GameKind::SPlus)?.strategy);
            let l = lift_dense_strategy(tau, sub);
            let rep = verify_strategy(s, GameKind::SPlus, l.as_ref(), Player::II, None)?;
            total += 1;
            if !(rep.ok && rep.exhaustive) {
                let recipe = Recipe::Lift { dense: bits_of(d), inner: Box::new(Recipe::Solver) };
                return Ok(verify_failure(format!("{} D={d:#b}", s.label()), &spec_of(s)?, recipe, Player::II, &rep));
            }
        }
    }
    Ok(Outcome::pass(format!("{total} dense subspaces verified")))
}

fn pibase_rationals(cfg: &SuiteConfig) -> Result<Outcome> {
    let q = rationals();
    let g = Game::new(GameKind::DGame, q.clone()).with_horizon(16);
    let pibase = CoverFamily::lazy("base", |i| Some(OpenSet::basic(i)));
    let ii = pibase_strategy_dgame(pibase);
    let seeds = seeds(cfg, 20);
    let mut worst = 0;
    for &seed in &seeds {
        let t = play(&g, random_dense_sets(seed).as_ref(), ii.as_ref(), 16, Some(seed))?;
        let v = evaluate(&q, &t, 16);
        match v.won_by(Player::II) {
            Some(n) if n <= 16 => worst = worst.max(n),
            _ => {
                let r = Replay {
                    space: "rationals".into(),
                    game: GameKind::DGame,
                    strategy_i: Recipe::Random { seed },
                    strategy_ii: Recipe::Builtin { name: "pibase-dgame".into() },
                    innings: 16,
                    horizon: 16,
                    seed: Some(seed),
                };
                return Ok(Outcome::fail(format!("seed {seed}: {v}"), replay_value(&r)).seeds(seeds));
            }
        }
    }
    Ok(Outcome::pass(format!("20 runs, all WinII(≤{worst}) at m=16")).seeds(seeds))
}

/// The winner each game must have on a finite space. Selection games with
/// dense-union moves and a cover target are the exception: I wins exactly
/// when some dense open set is proper.
fn expected_winner(s: &Space, kind: GameKind) -> Result<Player> {
    let top = FinTopology::from_space(s)?;
    Ok(match kind {
        GameKind::PointOpen | GameKind::OpenPicking => Player::I,
        GameKind::SelCover(Class::DenseUnion, Class::Cover) | GameKind::SelCoverFin(Class::DenseUnion, Class::Cover) => {
            let proper_dense = top.opens().iter().any(|&u| u != top.full() && top.is_dense(u));
            if proper_dense {
                Player::I
            } else {
                Player::II
            }
        }
        _ => Player::II,
    })
}

fn winners_finite(_: &SuiteConfig) -> Result<Outcome> {
    let spaces: Vec<Space> = (1..=4).flat_map(preorder_spaces).collect();
    let bad = spaces.par_iter().map(|s| -> Result<Option<Value>> {
        for kind in GameKind::all() {
            let got = solve_game(s, kind)?.winner;
            let want = expected_winner(s, kind)?;
            if got != want {
                return Ok(Some(json!({
                    "space": spec_of(s)?.to_string(),
                    "game": kind,
                    "solver": got.to_string(),
                    "expected": want.to_string(),
                })));
            }
        }
        Ok(None)
    });
    let bad: Vec<Option<Value>> = bad.collect::<Result<_>>()?;
    Ok(match bad.into_iter().flatten().next() {
        Some(a) => Outcome::fail("solver winner differs from the expected winner", a),
        None => Outcome::pass(format!("{} spaces × {} games agree", spaces.len(), GameKind::all().len())),
    })
}

fn solver_strategies_finite(_: &SuiteConfig) -> Result<Outcome> {
    let spaces: Vec<Space> = (1..=3).flat_map(preorder_spaces).collect();
    let out: Vec<Result<Option<Outcome>>> = spaces
        .par_iter()
        .map(|s| {
            for kind in GameKind::all() {
                let r = solve_game(s, kind)?;
                let rep = verify_strategy(s, kind, &r.strategy, r.winner, None)?;
                if !rep.ok {
                    let what = format!("{} {kind}", s.label());
                    return Ok(Some(verify_failure(what, &spec_of(s)?, Recipe::Solver, r.winner, &rep)));
                }
            }
            Ok(None)
        })
        .collect();
    for o in out {
        if let Some(f) = o? {
            return Ok(f);
        }
    }
    Ok(Outcome::pass(format!("{} spaces × {} games", spaces.len(), GameKind::all().len())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_have_unique_names_and_ids() {
        let mut names: Vec<&str> = SUITES.iter().map(|s| s.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), SUITES.len());
        for s in SUITES {
            let mut ids = s.check_ids();
            ids.sort();
            ids.dedup();
            assert_eq!(ids.len(), s.checks.len());
        }
        assert!(run_suite("nothing", &SuiteConfig::default()).is_err());
    }

    #[test]
    fn basic_family_counts() {
        // 1 + 4 + 6 + 4 subsets of size ≤ 3 of a 4-set
        assert_eq!(basic_families(4, 3).len(), 15);
    }

    #[test]
    fn expected_winners_on_sierpinski() {
        let s = crate::space::sierpinski();
        assert_eq!(expected_winner(&s, GameKind::SelCover(Class::DenseUnion, Class::Cover)).unwrap(), Player::I);
        assert_eq!(expected_winner(&s, GameKind::SPlus).unwrap(), Player::II);
        let d = crate::space::discrete(2);
        assert_eq!(expected_winner(&d, GameKind::SelCover(Class::DenseUnion, Class::Cover)).unwrap(), Player::II);
    }
}
