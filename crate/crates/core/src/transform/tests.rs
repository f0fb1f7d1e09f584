use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Signed;

use super::*;
use crate::finsolve::{
    enumerate_memoryless_strategies, memoryless_tables, open_of, preorder_spaces, solve_game, verify_strategy,
    FinTopology,
};
use crate::games::{
    constant_family, first_member, play, play_full, random_adversary, random_rectangles, witness_pointing, Class,
    FnStrategy, Game, GameKind, Move, MovePool, Player, Strat,
};
use crate::pairing::diag;
use crate::space::{
    dense_subspace_of, discrete, open_subspace_of, rationals, sierpinski, CoverFamily, Meet, OpenSet, PointSet,
    ProductSpace, Rationals,
};

const OD: GameKind = GameKind::SelCover(Class::Cover, Class::DenseUnion);

fn dbg_move(m: &Move) -> String {
    format!("{m:?}")
}

fn all_opens(s: &crate::space::Space) -> Vec<OpenSet> {
    let top = FinTopology::from_space(s).unwrap();
    top.nonempty_opens().iter().map(|&o| open_of(s, o)).collect()
}

fn all_covers(s: &crate::space::Space) -> Vec<CoverFamily> {
    let fg = crate::finsolve::FinGame::from_space(s, OD).unwrap();
    fg.i_moves()
        .unwrap()
        .iter()
        .map(|m| match m.to_move(s) {
            Move::Cover(f) => f,
            _ => unreachable!(),
        })
        .collect()
}

fn pick_whole() -> Strat {
    FnStrategy::new("pick-whole", |g: &Game, h: &[Move]| {
        let Some(Move::Cover(f)) = h.last() else { unreachable!() };
        let full = (1u64 << g.space.point_count().unwrap()) - 1;
        let i = f.position(64, |u| g.space.open_mask(u) == full).unwrap();
        Ok(Move::Pick(i))
    })
    .with_key(|_, _| Some(0))
    .arc()
}

#[test]
fn pair_names_round_trip() {
    for p in [DualPair::PoOd, DualPair::OpDd] {
        assert_eq!(p.name().parse::<DualPair>().unwrap(), p);
    }
    assert_eq!(DualPair::PoOd.selection_game(), OD);
    assert_eq!(DualPair::OpDd.pointing_game(), GameKind::PointOpen);
    assert!("xx".parse::<DualPair>().is_err());
}

#[test]
fn claim_on_sierpinski_with_whole_picks() {
    let w = claim_point(DualPair::PoOd, pick_whole().as_ref(), &sierpinski(), &[]).unwrap();
    assert_eq!(w.responses.iter().map(|r| r.0).collect::<Vec<_>>(), vec![0b11]);
    assert_eq!(w.missed, 0b10);
    assert!(matches!(w.mv, Move::Point(0)));
}

#[test]
fn claim_point_neighbourhoods_are_responses() {
    for n in 1..=3 {
        for s in preorder_spaces(n) {
            let top = FinTopology::from_space(&s).unwrap();
            let w = claim_point(DualPair::PoOd, first_member().as_ref(), &s, &[]).unwrap();
            let Move::Point(x) = w.mv else { panic!() };
            for &u in top.nonempty_opens().iter().filter(|&&u| u >> x & 1 == 1) {
                assert!(w.producer(u).is_some(), "{} x={x} u={u:#b}", s.label());
            }
        }
    }
}

#[test]
fn claim_on_one_point() {
    let s = discrete(1);
    assert!(matches!(dual_backward_finite(DualPair::PoOd, first_member().as_ref(), &s, &[]).unwrap(), Move::Point(0)));
}

#[test]
fn claim_violation_for_a_broken_sigma() {
    let broken = FnStrategy::new("out-of-range", |_g: &Game, _h: &[Move]| Ok(Move::Pick(99))).arc();
    let err = claim_point(DualPair::PoOd, broken.as_ref(), &discrete(2), &[]).unwrap_err();
    assert!(matches!(err, crate::Error::ClaimViolation(_)), "{err}");
}

#[test]
fn forward_on_two_point_discrete_with_alternating_points() {
    let s = discrete(2);
    let out = dual_forward(DualPair::PoOd, witness_pointing());
    let r = verify_strategy(&s, OD, out.as_ref(), Player::II, None).unwrap();
    assert!(r.ok && r.exhaustive, "{}", r.reason.as_deref().unwrap_or(""));
}

#[test]
fn forward_on_one_point() {
    let s = discrete(1);
    let out = dual_forward(DualPair::PoOd, witness_pointing());
    let g = Game::new(OD, s.clone());
    let t = play(&g, constant_family(CoverFamily::listed("X", vec![open_of(&s, 1)])).as_ref(), out.as_ref(), 1, None)
        .unwrap();
    assert_eq!(crate::games::evaluate(&s, &t, 1).won_by(Player::II), Some(1));
}

#[test]
fn forward_preserves_winning_memoryless_strategies() {
    let mut checked = 0;
    for n in 1..=3 {
        for s in preorder_spaces(n) {
            let Ok(taus) = memoryless_tables(&s, GameKind::OpenPicking, 1 << 12) else { continue };
            for tau in taus {
                let tau: Strat = Arc::new(tau);
                let r = verify_strategy(&s, GameKind::OpenPicking, tau.as_ref(), Player::I, None).unwrap();
                if !r.ok {
                    continue;
                }
                let out = dual_forward(DualPair::PoOd, tau);
                let r = verify_strategy(&s, OD, out.as_ref(), Player::II, None).unwrap();
                assert!(r.ok && r.exhaustive, "{}: {}", s.label(), r.reason.as_deref().unwrap_or(""));
                checked += 1;
            }
        }
    }
    assert!(checked > 50, "{checked}");
}

#[test]
fn forward_dense_pairing_preserves_winning_strategies() {
    for n in 1..=2 {
        for s in preorder_spaces(n) {
            for tau in memoryless_tables(&s, GameKind::PointOpen, 1 << 12).unwrap() {
                let tau: Strat = Arc::new(tau);
                if !verify_strategy(&s, GameKind::PointOpen, tau.as_ref(), Player::I, None).unwrap().ok {
                    continue;
                }
                let out = dual_forward(DualPair::OpDd, tau);
                let r = verify_strategy(&s, GameKind::DGame, out.as_ref(), Player::II, None).unwrap();
                assert!(r.ok && r.exhaustive, "{}: {}", s.label(), r.reason.as_deref().unwrap_or(""));
            }
        }
    }
}

#[test]
fn claim_strategies_win_the_pointing_games() {
    for n in 1..=3 {
        for s in preorder_spaces(n) {
            for pair in [DualPair::PoOd, DualPair::OpDd] {
                let sigma: Strat = Arc::new(solve_game(&s, pair.selection_game()).unwrap().strategy);
                let tau = claim_strategy(pair, sigma, s.clone());
                let r = verify_strategy(&s, pair.pointing_game(), tau.as_ref(), Player::I, None).unwrap();
                assert!(r.ok, "{} {pair}: {}", s.label(), r.reason.as_deref().unwrap_or(""));
            }
        }
    }
}

#[test]
fn forward_ii_builds_covers() {
    let s = discrete(2);
    let singleton = FnStrategy::new("singleton", |g: &Game, h: &[Move]| {
        let Some(Move::Point(x)) = h.last() else { unreachable!() };
        Ok(Move::Open(open_of(&g.space, 1 << x)))
    })
    .arc();
    let sigma = dual_forward_ii(DualPair::PoOd, singleton);
    let g = Game::new(OD, s.clone());
    let Move::Cover(f) = sigma.next(&g, &[]).unwrap() else { panic!() };
    let masks: Vec<u64> = f.prefix(4).iter().map(|u| s.open_mask(u)).collect();
    assert_eq!(masks, vec![0b01, 0b10]);

    let one = discrete(1);
    let Move::Cover(f) = sigma.next(&Game::new(OD, one.clone()), &[]).unwrap() else { panic!() };
    assert_eq!(f.len(), Some(1));
}

#[test]
fn forward_ii_then_backward_on_chains() {
    let s = crate::space::chain(3);
    let g = Game::new(OD, s.clone());
    let full = 0b111;
    let taus = enumerate_memoryless_strategies(&s, GameKind::OpenPicking, Player::II, 1 << 16).unwrap();
    assert!(!taus.is_empty());
    for tau in taus {
        let sigma = dual_forward_ii(DualPair::PoOd, tau.clone());
        let back = dual_backward_ii(DualPair::PoOd, sigma.clone());
        let pg = Game::new(GameKind::OpenPicking, s.clone());
        let mut h = Vec::new();
        let mut ph = Vec::new();
        for n in 0..3 {
            let Move::Cover(f) = sigma.next(&g, &h).unwrap() else { panic!() };
            let union = f.prefix(8).iter().fold(0, |a, u| a | s.open_mask(u));
            assert_eq!(union, full);
            // I points at n; tau's answer is the member generated by n
            ph.push(Move::Point(n));
            let a = back.next(&pg, &ph).unwrap();
            assert!(crate::games::legal(&pg, &ph[..ph.len() - 1], &Move::Point(n)));
            let Move::Open(u) = &a else { panic!() };
            assert!(s.contains(u, n));
            ph.push(a);
            h.push(Move::Cover(f));
            h.push(Move::Pick(n));
        }
    }
}

#[test]
fn backward_ii_with_constant_whole_family() {
    let s = discrete(3);
    let whole = open_of(&s, 0b111);
    let back = dual_backward_ii(DualPair::PoOd, constant_family(CoverFamily::listed("X", vec![whole.clone()])));
    let g = Game::new(GameKind::OpenPicking, s.clone());
    let i = FnStrategy::new("points", |_g: &Game, h: &[Move]| Ok(Move::Point(h.len() / 2 % 3))).arc();
    let (h, _) = play_full(&g, i.as_ref(), back.as_ref(), 4, None).unwrap();
    for m in h.iter().skip(1).step_by(2) {
        assert!(matches!(m, Move::Open(u) if *u == whole));
    }
}

#[test]
fn backward_ii_dense_pairing_is_legal() {
    for s in preorder_spaces(2) {
        let sigmas = memoryless_tables(&s, GameKind::DGame, 1 << 10).unwrap();
        for sigma in sigmas {
            let back = dual_backward_ii(DualPair::OpDd, Arc::new(sigma));
            let adv = random_adversary(GameKind::PointOpen, Player::I, 3, MovePool::Opens(all_opens(&s)));
            let g = Game::new(GameKind::PointOpen, s.clone());
            play_full(&g, adv.as_ref(), back.as_ref(), 4, None).unwrap();
        }
    }
}

fn in_interval(q: &Rationals, p: usize, b: usize) -> bool {
    let Some((c, r)) = Rationals::interval_params(b) else { return true };
    let radius = BigRational::new(1.into(), num_bigint::BigInt::from(1) << r);
    (q.value(p) - c.value()).abs() < radius
}

#[test]
fn backward_ii_on_rationals_answers_first_interval() {
    let q = Rationals::new();
    let s = rationals();
    let cover = CoverFamily::lazy("dyadic intervals", |i| Some(OpenSet::basic(i + 1)));
    let back = dual_backward_ii(DualPair::PoOd, constant_family(cover));
    let g = Game::new(GameKind::OpenPicking, s.clone());
    for p in 0..40 {
        let Move::Open(u) = back.next(&g, &[Move::Point(p)]).unwrap() else { panic!() };
        let b = u.parts()[0];
        assert!(in_interval(&q, p, b), "point {p} base {b}");
        assert!((1..b).all(|e| !in_interval(&q, p, e)), "point {p} base {b}");
    }
}

#[test]
fn forward_on_rationals_meets_dyadic_intervals() {
    let s = rationals();
    let g = Game::new(OD, s.clone()).with_horizon(16);
    let out = dual_forward(DualPair::PoOd, witness_pointing());
    let adv = crate::games::random_basic_covers(3);
    let t = play(&g, adv.as_ref(), out.as_ref(), 16, Some(3)).unwrap();
    assert!(crate::games::evaluate(&s, &t, 16).won_by(Player::II).is_some());
}

#[test]
fn diag_rows() {
    assert_eq!(diag_innings(0, 5), vec![0, 1, 3, 6, 10]);
    assert_eq!(diag_innings(1, 3), vec![2, 4, 7]);
    assert_eq!(diag(7, 7), 112);
}

fn product_run(seed: u64, dense: PointSet) -> Vec<Move> {
    let q = rationals();
    let prod = ProductSpace::new(q.clone(), q.clone());
    let ps = prod.space();
    let g = Game::new(GameKind::OpenPicking, ps).with_horizon(64);
    let i = product_pointing_strategy(witness_pointing(), dense, prod.clone());
    play_full(&g, i.as_ref(), random_rectangles(seed, prod).as_ref(), 120, Some(seed)).unwrap().0
}

#[test]
fn product_second_coordinate_follows_rows() {
    let q = rationals();
    let prod = ProductSpace::new(q.clone(), q.clone());
    let dense = PointSet::from_fn("witnesses", move |k| q.base_witness(k), None);
    let h = product_run(11, dense.clone());
    for (n, m) in h.iter().step_by(2).enumerate() {
        let Move::Point(p) = m else { panic!() };
        let (k, _) = crate::pairing::undiag(n);
        assert_eq!(prod.split_point(*p).1, dense.enumerate(k));
    }
}

#[test]
fn product_meets_all_small_rectangles() {
    let q = rationals();
    let prod = ProductSpace::new(q.clone(), q.clone());
    let ps = prod.space();
    let dense = PointSet::from_fn("witnesses", move |k| q.base_witness(k), None);
    let h = product_run(11, dense);
    let opens: Vec<&OpenSet> = h.iter().skip(1).step_by(2).map(|m| match m {
        Move::Open(o) => o,
        _ => unreachable!(),
    }).collect();
    for a in 0..8 {
        for b in 0..8 {
            let r = OpenSet::basic(prod.rect(a, b));
            assert!(
                opens.iter().any(|o| matches!(ps.open_meet(&r, o), Meet::Witness(_))),
                "rectangle ({a},{b})"
            );
        }
    }
}

#[test]
fn product_with_one_point_factor() {
    let q = rationals();
    let one = discrete(1);
    let prod = ProductSpace::new(q.clone(), one.clone());
    let g = Game::new(GameKind::OpenPicking, prod.space()).with_horizon(8);
    let i = product_pointing_strategy(witness_pointing(), PointSet::listed("pt", vec![0]), prod.clone());
    let adv = random_adversary(GameKind::OpenPicking, Player::II, 1, MovePool::Replies);
    let (h, _) = play_full(&g, i.as_ref(), adv.as_ref(), 6, None).unwrap();
    for m in h.iter().step_by(2) {
        let Move::Point(p) = m else { panic!() };
        assert_eq!(prod.split_point(*p).1, 0);
    }
}

fn splus_winner(s: &crate::space::Space) -> Strat {
    Arc::new(solve_game(s, GameKind::SPlus).unwrap().strategy)
}

#[test]
fn union_on_two_point_discrete_alternates() {
    let s = discrete(2);
    let pieces: Vec<Piece> = [0b01u64, 0b10]
        .iter()
        .map(|&a| {
            let sub = relativized_piece(&s, a).unwrap().unwrap();
            let strategy = splus_winner(&sub.space());
            Piece { sub, strategy }
        })
        .collect();
    let g = Game::new(GameKind::SPlus, s.clone());
    let whole = open_of(&s, 0b11);
    let picks = union_selection(&g, pieces.clone(), &vec![whole.clone(); 4]).unwrap();
    assert_eq!(picks, vec![vec![0], vec![1], vec![0], vec![1]]);
    let u = union_splus_strategy(pieces);
    let r = verify_strategy(&s, GameKind::SPlus, u.as_ref(), Player::II, None).unwrap();
    assert!(r.ok && r.exhaustive, "{}", r.reason.as_deref().unwrap_or(""));
    let adv = constant_open(whole);
    let t = play(&g, adv.as_ref(), u.as_ref(), 2, None).unwrap();
    assert_eq!(crate::games::evaluate(&s, &t, 2).won_by(Player::II), Some(2));
    assert_eq!(t.innings[1].note.as_deref(), Some("piece 1"));
}

fn constant_open(o: OpenSet) -> Strat {
    FnStrategy::new("constant-open", move |_g: &Game, _h: &[Move]| Ok(Move::Open(o.clone()))).arc()
}

#[test]
fn union_of_one_piece_is_the_piece() {
    let s = sierpinski();
    let sub = relativized_piece(&s, 0b11).unwrap().unwrap();
    let tau = splus_winner(&s);
    let u = union_splus_strategy(vec![Piece { sub, strategy: tau.clone() }]);
    let g = Game::new(GameKind::SPlus, s.clone());
    for o in [0b10u64, 0b11] {
        let h = vec![Move::Open(open_of(&s, o))];
        assert_eq!(dbg_move(&u.next(&g, &h).unwrap()), dbg_move(&tau.next(&g, &h).unwrap()));
    }
}

#[test]
fn nowhere_dense_piece_is_dropped() {
    // in the Sierpinski space {0} is nowhere dense
    let s = sierpinski();
    assert!(relativized_piece(&s, 0b01).unwrap().is_none());
    assert!(relativized_piece(&s, 0b10).unwrap().is_some());
}

#[test]
fn union_fin_merges_selections() {
    let s = discrete(3);
    let kind = GameKind::SPlusFin;
    let pieces: Vec<Piece> = [0b001u64, 0b010, 0b100]
        .iter()
        .map(|&a| {
            let sub = relativized_piece(&s, a).unwrap().unwrap();
            let strategy = Arc::new(solve_game(&sub.space(), kind).unwrap().strategy) as Strat;
            Piece { sub, strategy }
        })
        .collect();
    let u = union_splus_strategy(pieces);
    let r = verify_strategy(&s, kind, u.as_ref(), Player::II, None).unwrap();
    assert!(r.ok && r.exhaustive, "{}", r.reason.as_deref().unwrap_or(""));
    let g = Game::new(kind, s.clone());
    let t = play(&g, constant_open(open_of(&s, 0b111)).as_ref(), u.as_ref(), 3, None).unwrap();
    assert_eq!(crate::games::evaluate(&s, &t, 3).won_by(Player::II), Some(3));
}

#[test]
fn restrict_to_whole_space_matches_tau() {
    for s in preorder_spaces(2) {
        let tau = splus_winner(&s);
        let whole = open_of(&s, 0b11);
        let sub = open_subspace_of(&s, &whole).unwrap();
        let ic = int_complement(&s, &whole).unwrap();
        assert!(ic.is_empty());
        let r = restrict_splus_strategy(tau.clone(), sub, ic);
        let g = Game::new(GameKind::SPlus, s.clone());
        let adv = random_adversary(GameKind::SPlus, Player::I, 9, MovePool::Opens(all_opens(&s)));
        let (h, _) = play_full(&g, adv.as_ref(), r.as_ref(), 5, None).unwrap();
        let (h2, _) = play_full(&g, adv.as_ref(), tau.as_ref(), 5, None).unwrap();
        assert_eq!(format!("{h:?}"), format!("{h2:?}"));
    }
}

#[test]
fn restrict_sierpinski_to_its_open_point() {
    let s = sierpinski();
    let u = open_of(&s, 0b10);
    let sub = open_subspace_of(&s, &u).unwrap();
    let ic = int_complement(&s, &u).unwrap();
    let r = restrict_splus_strategy(splus_winner(&s), sub.clone(), ic);
    let ss = sub.space();
    let g = Game::new(GameKind::SPlus, ss.clone());
    assert!(matches!(r.next(&g, &[Move::Open(open_of(&ss, 1))]).unwrap(), Move::Point(0)));
    let rep = verify_strategy(&ss, GameKind::SPlus, r.as_ref(), Player::II, None).unwrap();
    assert!(rep.ok && rep.exhaustive);
}

#[test]
fn lift_from_whole_space_is_identity() {
    let s = discrete(2);
    let tau = splus_winner(&s);
    let sub = dense_subspace_of(&s, &PointSet::listed("all", vec![0, 1])).unwrap();
    let l = lift_dense_strategy(tau.clone(), sub);
    let g = Game::new(GameKind::SPlus, s.clone());
    for o in [0b11u64] {
        let h = vec![Move::Open(open_of(&s, o))];
        assert_eq!(dbg_move(&l.next(&g, &h).unwrap()), dbg_move(&tau.next(&g, &h).unwrap()));
    }
}

#[test]
fn lift_on_rationals_stays_dyadic() {
    let s = rationals();
    let dyadic = PointSet::filtered("dyadic", None, |p| p % 2 == 0);
    let sub = dense_subspace_of(&s, &dyadic).unwrap();
    // at inning n, a point of O inside base element n
    let inner = FnStrategy::new("base-by-inning", |g: &Game, h: &[Move]| {
        let Some(Move::Open(o)) = h.last() else { unreachable!() };
        let n = h.len() / 2;
        o.parts()
            .iter()
            .find_map(|&part| match g.space.meet(&[n, part]) {
                Meet::Witness(w) => Some(Move::Point(w)),
                _ => None,
            })
            .ok_or_else(|| crate::Error::StrategyFailure("open misses a base element".into()))
    })
    .arc();
    let l = lift_dense_strategy(inner, sub);
    let g = Game::new(GameKind::SPlus, s.clone()).with_horizon(16);
    let adv = crate::games::random_dense_opens(5);
    let (h, t) = play_full(&g, adv.as_ref(), l.as_ref(), 16, Some(5)).unwrap();
    for m in h.iter().skip(1).step_by(2) {
        let Move::Point(p) = m else { panic!() };
        assert_eq!(p % 2, 0);
    }
    assert!(crate::games::evaluate(&s, &t, 16).won_by(Player::II).is_some());
}

#[test]
fn transformers_are_deterministic() {
    let s = discrete(2);
    let out = dual_forward(DualPair::PoOd, witness_pointing());
    let g = Game::new(OD, s.clone());
    let adv = random_adversary(OD, Player::I, 4, MovePool::Families(all_covers(&s)));
    let a = play_full(&g, adv.as_ref(), out.as_ref(), 6, None).unwrap().0;
    let b = play_full(&g, adv.as_ref(), out.as_ref(), 6, None).unwrap().0;
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
}
