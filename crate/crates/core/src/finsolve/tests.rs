use super::*;
use crate::games::first_member;
use crate::games::{Class, GameKind, Player};
use crate::space::{chain, discrete, sierpinski};

#[test]
fn sierpinski_closure_and_interior() {
    let t = FinTopology::from_space(&sierpinski()).unwrap();
    assert_eq!(t.opens(), &[0b00, 0b10, 0b11]);
    assert_eq!(t.closure(0b10), 0b11);
    assert_eq!(t.interior(0b01), 0);
    assert_eq!(t.closure(t.full()), t.full());
    assert_eq!(t.interior(0), 0);
}

#[test]
fn discrete_relativizer() {
    let t = FinTopology::from_space(&discrete(2)).unwrap();
    assert_eq!(t.int_closure(0b01) & 0b01, 0b01);
}

#[test]
fn lattice_validation() {
    assert!(FinTopology::from_opens(2, vec![0, 1, 2]).is_err());
    assert!(FinTopology::from_opens(2, vec![0, 1, 2, 3]).is_ok());
    assert_eq!(FinTopology::from_space(&chain(3)).unwrap().opens().len(), 4);
}

#[test]
fn discrete_two_cover_count() {
    let t = FinTopology::from_space(&discrete(2)).unwrap();
    let covers = enumerate_covers(&t, Class::Cover, 1 << 10).unwrap();
    assert_eq!(covers.len(), 5);
    // discrete: dense means everything
    assert_eq!(enumerate_covers(&t, Class::DenseUnion, 1 << 10).unwrap(), covers);
}

#[test]
fn sierpinski_covers_contain_whole() {
    let t = FinTopology::from_space(&sierpinski()).unwrap();
    let covers = enumerate_covers(&t, Class::Cover, 16).unwrap();
    assert_eq!(covers, vec![vec![0b11], vec![0b10, 0b11]]);
}

#[test]
fn cover_cap_reports_candidates() {
    let t = FinTopology::from_space(&discrete(3)).unwrap();
    match enumerate_covers(&t, Class::Cover, 100) {
        Err(crate::Error::CapExceeded { count, cap }) => assert_eq!((count, cap), (127, 100)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn memoryless_counts() {
    // discrete-2 OpenPicking: I has 2 moves; live states are ∅, {0}, {1}
    let all = memoryless_tables(&discrete(2), GameKind::OpenPicking, 1000).unwrap();
    assert_eq!(all.len(), 8);
    let ii = enumerate_memoryless_strategies(&discrete(2), GameKind::PointOpen, Player::II, 1000).unwrap();
    // I offers {0}, {1} (one reply each) or X (two replies), at 3 live states
    assert_eq!(ii.len(), 8);
    match memoryless_tables(&discrete(3), GameKind::OpenPicking, 10) {
        Err(crate::Error::CapExceeded { count, .. }) => assert_eq!(count, 3u128.pow(7)),
        other => panic!("{:?}", other.map(|v| v.len())),
    }
}

#[test]
fn finite_winners() {
    use GameKind::*;
    for s in small_spaces(4, false) {
        for kind in [SelCover(Class::Cover, Class::Cover), SelCover(Class::Cover, Class::DenseUnion), SPlus, DGame] {
            assert_eq!(solve_game(&s, kind).unwrap().winner, Player::II, "{kind} on {}", s.label());
        }
        let r = solve_game(&s, OpenPicking).unwrap();
        assert_eq!(r.winner, Player::I, "{}", s.label());
        assert!(r.bound.unwrap() as usize <= s.point_count().unwrap());
    }
}

#[test]
fn dense_selection_never_covers_sierpinski() {
    let r = solve_game(&sierpinski(), GameKind::SelCover(Class::DenseUnion, Class::Cover)).unwrap();
    assert_eq!(r.winner, Player::I);
    assert_eq!(r.strategy.moves[&0], FinMove::Family { members: vec![0b10] });
}

#[test]
fn one_point_space() {
    for kind in GameKind::all() {
        let r = solve_game(&discrete(1), kind).unwrap();
        if kind.target_owner() == Player::II {
            assert_eq!((r.winner, r.bound), (Player::II, Some(1)), "{kind}");
        } else {
            assert_eq!(r.winner, Player::I, "{kind}");
        }
    }
}

#[test]
fn attractor_matches_minimax() {
    for s in small_spaces(3, false) {
        for kind in GameKind::all() {
            let a = solve_game(&s, kind).unwrap().winner;
            let b = minimax_winner(&s, kind).unwrap();
            assert_eq!(a, b, "{kind} on {}", s.label());
        }
    }
}

#[test]
fn certified_strategies_verify() {
    for s in small_spaces(3, false) {
        for kind in GameKind::all() {
            let r = solve_game(&s, kind).unwrap();
            let v = verify_strategy(&s, kind, &r.strategy, r.winner, None).unwrap();
            assert!(v.ok && v.exhaustive, "{kind} on {}: {:?}", s.label(), v.reason);
        }
    }
}

#[test]
fn first_member_fails_with_counterexample() {
    let kind = GameKind::SelCover(Class::Cover, Class::Cover);
    let v = verify_strategy(&discrete(2), kind, first_member().as_ref(), Player::II, None).unwrap();
    assert!(!v.ok);
    let t = v.counterexample.unwrap();
    assert!(!t.innings.is_empty());
    assert!(v.reason.unwrap().contains("cycles"));
}

#[test]
fn strategy_table_round_trips() {
    let r = solve_game(&chain(3), GameKind::OpenPicking).unwrap();
    let json = r.strategy.to_json();
    let back: TableStrategy = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r.strategy);
}

#[test]
fn preorder_counts() {
    let counts: Vec<usize> = (1..=4).map(|n| preorder_spaces(n).len()).collect();
    assert_eq!(counts, vec![1, 4, 29, 355]);
    let t0: Vec<usize> = (1..=4).map(|n| t0_spaces(n).len()).collect();
    assert_eq!(t0, vec![1, 3, 19, 219]);
}
