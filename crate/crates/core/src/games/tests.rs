use super::*;
use crate::space::{
    alexandroff_double, discrete, rationals, sierpinski, AlexandroffDouble, Rationals,
};

fn scripted(label: &str, moves: Vec<Move>) -> Strat {
    strategy(label.to_string(), move |_g, h| {
        Ok(moves[inning(h) % moves.len()].clone())
    })
}

#[test]
fn point_open_reply_must_lie_in_the_open_set() {
    let g = Game::new(GameKind::PointOpen, discrete(2));
    let h = vec![Move::Open(OpenSet::basic(0))];
    assert!(!legal(&g, &h, &Move::Point(1)));
    assert!(legal(&g, &h, &Move::Point(0)));
}

#[test]
fn pick_inside_the_family_is_legal() {
    let s = discrete(2);
    let g = Game::new(GameKind::SelCover(Class::Cover, Class::DenseUnion), s.clone());
    let fam = CoverFamily::listed("singletons", vec![OpenSet::basic(0), OpenSet::basic(1)]);
    let h = vec![Move::Cover(fam)];
    assert!(legal(&g, &h, &Move::Pick(1)));
    assert!(!legal(&g, &h, &Move::Pick(2)));
    let not_cover = CoverFamily::listed("{0}", vec![OpenSet::basic(0)]);
    assert!(!legal(&g, &[], &Move::Cover(not_cover)));
}

#[test]
fn splus_accepts_dense_open_point_of_sierpinski() {
    // closure of {1} is everything, so {1} is a dense open set
    let g = Game::new(GameKind::SPlus, sierpinski());
    assert!(legal(&g, &[], &Move::Open(OpenSet::basic(1))));
    let g2 = Game::new(GameKind::SPlus, discrete(2));
    assert!(!legal(&g2, &[], &Move::Open(OpenSet::basic(1))));
}

#[test]
fn replay_is_deterministic() {
    let g = Game::new(GameKind::SelCover(Class::Cover, Class::Cover), discrete(3));
    let a = play(&g, &*whole_cover(), &*first_member(), 5, None).unwrap();
    let b = play(&g, &*whole_cover(), &*first_member(), 5, None).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_json(), b.to_json());
    let back = Transcript::from_json(&a.to_json()).unwrap();
    assert_eq!(back, a);
}

#[test]
fn point_open_on_rationals_runs_all_innings() {
    let g = Game::new(GameKind::PointOpen, rationals());
    let t = play(&g, &*base_open_strategy(), &*first_point(), 12, None).unwrap();
    assert_eq!(t.innings.len(), 12);
    assert!(evaluate(&g.space, &t, 12).won_by(Player::I).unwrap() <= 12);
}

#[test]
fn whole_space_pick_wins_at_once() {
    let s = rationals();
    let g = Game::new(GameKind::SelCover(Class::Cover, Class::DenseUnion), s.clone());
    let t = play(&g, &*whole_cover(), &*first_member(), 3, None).unwrap();
    for m in [1, 8, 64] {
        assert_eq!(evaluate(&s, &t, m).outcome, Outcome::Won { by: Player::II, inning: 1 });
    }
}

#[test]
fn fixed_open_answer_is_not_dense() {
    let s = discrete(2);
    let g = Game::new(GameKind::OpenPicking, s.clone());
    let fixed = strategy("fixed", |_g, h| match h.last() {
        Some(Move::Point(0)) => Ok(Move::Open(OpenSet::basic(0))),
        _ => Ok(Move::Open(s_whole())),
    });
    fn s_whole() -> OpenSet {
        OpenSet::new(vec![0, 1])
    }
    let always_zero = scripted("zero", vec![Move::Point(0)]);
    let t = play(&g, &*always_zero, &*fixed, 6, None).unwrap();
    assert_eq!(evaluate(&s, &t, 2).outcome, Outcome::NotYetByInning(6));
}

#[test]
fn dgame_two_points() {
    let s = discrete(2);
    let g = Game::new(GameKind::DGame, s.clone());
    let all = PointSet::listed("X", vec![0, 1]);
    let i = scripted("X", vec![Move::Dense(all)]);
    let ii = scripted("0 then 1", vec![Move::Pick(0), Move::Pick(1)]);
    let t = play(&g, &*i, &*ii, 2, None).unwrap();
    assert_eq!(evaluate(&s, &t, 2).outcome, Outcome::Won { by: Player::II, inning: 2 });
}

#[test]
fn adversaries_are_reproducible_and_legal() {
    let s = discrete(3);
    let kind = GameKind::SelCover(Class::Cover, Class::Cover);
    let g = Game::new(kind, s.clone());
    let fams = vec![
        CoverFamily::listed("a", vec![OpenSet::basic(0), OpenSet::basic(1), OpenSet::basic(2)]),
        CoverFamily::listed("b", vec![OpenSet::new(vec![0, 1]), OpenSet::basic(2)]),
        CoverFamily::listed("not a cover", vec![OpenSet::basic(0)]),
    ];
    let run = |seed| {
        let adv = random_adversary(kind, Player::I, seed, MovePool::Families(fams.clone()));
        play(&g, &*adv, &*random_picks(seed), 32, Some(seed)).unwrap()
    };
    assert_eq!(run(1), run(1));
    assert_ne!(run(1).innings, run(2).innings);
    for inn in run(3).innings {
        if let MoveRecord::Cover { label, .. } = inn.first {
            assert_ne!(label, "not a cover");
        }
    }
}

#[test]
fn pibase_on_rationals_picks_first_point_in_interval() {
    let s = rationals();
    let g = Game::new(GameKind::DGame, s.clone());
    let all = PointSet::from_fn("Q", |n| n, None);
    let basic = CoverFamily::lazy("base", |n| Some(OpenSet::basic(n)));
    let i = scripted("Q", vec![Move::Dense(all)]);
    let (h, _) = play_full(&g, &*i, &*pibase_strategy_dgame(basic), 8, None).unwrap();
    for (n, g) in gains(&h).into_iter().enumerate() {
        let Gain::Points(p) = g else { panic!() };
        let first = (0..).find(|&q| s.member(q, n)).unwrap();
        assert_eq!(p, vec![first]);
    }
}

#[test]
fn pibase_on_two_points() {
    let s = discrete(2);
    let g = Game::new(GameKind::DGame, s.clone());
    let pi = CoverFamily::lazy("singletons", |n| Some(OpenSet::basic(n % 2)));
    let i = scripted("X", vec![Move::Dense(PointSet::listed("X", vec![0, 1]))]);
    let t = play(&g, &*i, &*pibase_strategy_dgame(pi), 2, None).unwrap();
    assert_eq!(evaluate(&s, &t, 2).won_by(Player::II), Some(2));
}

#[test]
fn pibase_beats_random_dense_sets() {
    let s = rationals();
    let g = Game::new(GameKind::DGame, s.clone()).with_horizon(16);
    let basic = CoverFamily::lazy("base", |n| Some(OpenSet::basic(n)));
    let t = play(&g, &*random_dense_sets(7), &*pibase_strategy_dgame(basic), 16, Some(7)).unwrap();
    let n = evaluate(&s, &t, 16).won_by(Player::II).unwrap();
    assert!(n <= 16);
}

#[test]
fn pibase_hand_table_on_sierpinski() {
    // bases: 0 = {0,1}, 1 = {1}; π-base alternates {1}, {0,1}
    let s = sierpinski();
    let g = Game::new(GameKind::DGame, s.clone());
    let pi = CoverFamily::lazy("alt", |n| Some(OpenSet::basic(1 - n % 2)));
    let i = scripted(
        "scripted",
        vec![
            Move::Dense(PointSet::listed("01", vec![0, 1])),
            Move::Dense(PointSet::listed("1", vec![1])),
            Move::Dense(PointSet::listed("10", vec![1, 0])),
            Move::Dense(PointSet::listed("01", vec![0, 1])),
        ],
    );
    let t = play(&g, &*i, &*pibase_strategy_dgame(pi), 4, None).unwrap();
    let picks: Vec<(usize, usize)> = t
        .innings
        .iter()
        .map(|inn| match &inn.second {
            MoveRecord::Pick { index, point: Some(p), .. } => (*index, *p),
            other => panic!("{other:?}"),
        })
        .collect();
    assert_eq!(picks, vec![(1, 1), (0, 1), (0, 1), (0, 0)]);
    assert_eq!(evaluate(&s, &t, 2).won_by(Player::II), Some(1));
}

#[test]
fn enumeration_cover_first_phase_on_double() {
    let dd = AlexandroffDouble::new(rationals());
    let s = dd.space();
    let g = Game::new(GameKind::SelCover(Class::Cover, Class::Cover), s.clone());
    let targets = PointSet::from_fn("Q×{0}", |n| AlexandroffDouble::point(n, 0), None);
    let whole_line = OpenSet::new(vec![dd.split_base(0, &crate::FiniteSet::empty()).unwrap()]);
    // I covers the double by the isolated points and a split neighbourhood
    // of the whole line with a moving finite hole
    let i = strategy("split covers", move |_g, h| {
        let n = inning(h);
        let hole = crate::FiniteSet::new(vec![n % 5, n % 5 + 2]);
        let split = dd.split_base(0, &hole).unwrap();
        let lazy = CoverFamily::lazy(format!("hole {hole:?}"), move |k| {
            Some(if k == 0 { OpenSet::basic(split) } else { OpenSet::basic(2 * (k - 1)) })
        });
        Ok(Move::Cover(lazy))
    });
    let _ = whole_line;
    let (h, _) = play_full(&g, &*i, &*enumeration_cover_strategy(targets), 32, None).unwrap();
    let picked: Vec<OpenSet> = gains(&h)
        .into_iter()
        .flat_map(|g| match g {
            Gain::Opens(o) => o,
            Gain::Points(_) => vec![],
        })
        .collect();
    for n in 0..32 {
        assert!(s.contains(&picked[n], AlexandroffDouble::point(n, 0)));
    }
    let _ = Rationals::new();
    let _ = alexandroff_double(&discrete(1));
}

#[test]
fn enumeration_cover_on_two_points() {
    let s = discrete(2);
    let g = Game::new(GameKind::SelCover(Class::Cover, Class::Cover), s.clone());
    let fam = CoverFamily::listed("singletons", vec![OpenSet::basic(0), OpenSet::basic(1)]);
    let t = play(
        &g,
        &*constant_family(fam),
        &*enumeration_cover_strategy(PointSet::listed("X", vec![0, 1])),
        2,
        None,
    )
    .unwrap();
    assert_eq!(evaluate(&s, &t, 2).won_by(Player::II), Some(2));
}

#[test]
fn kind_names_round_trip() {
    for k in GameKind::all() {
        assert_eq!(k.to_string().parse::<GameKind>().unwrap(), k);
    }
    assert_eq!(
        "selcover:o,od".parse::<GameKind>().unwrap(),
        GameKind::SelCover(Class::Cover, Class::DenseUnion)
    );
}
