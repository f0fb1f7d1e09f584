use super::*;
use crate::finsolve::{open_of, small_spaces, t0_spaces, FinTopology};
use crate::space::{
    dense_union_at_horizon, discrete, is_omega_cover_at_horizon, rationals,
    sierpinski, CoverFamily, FiniteSet, OpenSet, Space,
};

fn fs(v: &[usize]) -> FiniteSet {
    FiniteSet::new(v.to_vec())
}

fn whole(s: &Space) -> OpenSet {
    s.whole().unwrap()
}

fn members(pr: &Space, b: usize) -> Vec<usize> {
    (0..pr.point_count().unwrap()).filter(|&p| pr.member(p, b)).collect()
}

#[test]
fn empty_set_in_every_basic_around_it() {
    for s in small_spaces(3, false) {
        let pr = PixleyRoy::new(s.clone()).unwrap();
        for &u in FinTopology::from_space(&s).unwrap().opens() {
            let b = pr.base_index(&FiniteSet::empty(), &open_of(&s, u)).unwrap();
            assert!(pr.space().member(0, b));
        }
    }
}

#[test]
fn discrete_two_hyperspace() {
    let x = discrete(2);
    let pr = PixleyRoy::new(x.clone()).unwrap();
    let s = pr.space();
    assert_eq!(s.point_count(), Some(4));
    let b = pr.base_index(&fs(&[0]), &whole(&x)).unwrap();
    let got: Vec<FiniteSet> = members(&s, b).into_iter().map(FiniteSet::unrank).collect();
    assert_eq!(got, vec![fs(&[0]), fs(&[0, 1])]);
    let top = pr.base_index(&fs(&[0, 1]), &whole(&x)).unwrap();
    assert_eq!(members(&s, top), vec![pr.point_of(&fs(&[0, 1])).unwrap()]);
    s.validate(64).unwrap();
}

#[test]
fn rational_hyperspace_meets() {
    let pr = PixleyRoy::new(rationals()).unwrap();
    let s = pr.space();
    // [{0}, (-1,1)] and [{1/3}, ℚ] meet at {0, 1/3}
    let a = pr.base_index(&fs(&[0]), &OpenSet::basic(1)).unwrap();
    let b = pr.base_index(&fs(&[1]), &OpenSet::basic(0)).unwrap();
    assert_eq!(s.meet(&[a, b]), crate::space::Meet::Witness(fs(&[0, 1]).rank()));
    // (0,1) does not contain 0
    let c = pr.base_index(&fs(&[1]), &OpenSet::basic(5)).unwrap();
    assert_eq!(s.meet(&[a, c]), crate::space::Meet::Empty);
    assert_eq!(pr.pair(a), (fs(&[0]), OpenSet::basic(1)));
    assert!(s.whole().is_some());
}

#[test]
fn repaired_pairs_contain_their_finite_set() {
    let pr = PixleyRoy::new(rationals()).unwrap();
    for b in 0..500 {
        let (f, u) = pr.pair(b);
        assert!(rationals().contains_all(&u, &f), "{b}");
        assert!(pr.space().member(pr.space().base_witness(b), b));
    }
}

#[test]
fn double_cover_examples() {
    let x = discrete(2);
    let trivial = DoubleCover::listed(&x, "{(∅,X)}", vec![DoublePair::new(fs(&[]), whole(&x))]);
    assert!(is_double_cover_at_horizon(&x, &trivial, 64, 10).unwrap());
    let bad = DoubleCover::listed(&x, "{({0},X)}", vec![DoublePair::new(fs(&[0]), whole(&x))]);
    assert!(!is_double_cover_at_horizon(&x, &bad, 64, 10).unwrap());
    let broken = DoubleCover::listed(&x, "bad", vec![DoublePair::new(fs(&[1]), OpenSet::basic(0))]);
    assert!(broken.get(0).is_err());
}

#[test]
fn long_interval_pairs_form_a_double_cover() {
    let dc = long_interval_pairs();
    assert!(is_double_cover_at_horizon(&rationals(), &dc, 6, 10_000).unwrap());
}

#[test]
fn embedding_omega_covers() {
    let x = discrete(2);
    let oc = CoverFamily::listed("whole", vec![whole(&x)]);
    let dc = embed_omega_cover(&x, &oc);
    assert_eq!(dc.prefix(5).unwrap(), vec![DoublePair::new(fs(&[]), whole(&x))]);
    for s in small_spaces(3, false) {
        let t = FinTopology::from_space(&s).unwrap();
        // all opens form an ω-cover of a finite space
        let oc = CoverFamily::listed("opens", t.opens().iter().map(|&u| open_of(&s, u)).collect());
        let dc = embed_omega_cover(&s, &oc);
        assert!(is_double_cover_at_horizon(&s, &dc, 256, 256).unwrap());
        for (i, p) in dc.prefix(256).unwrap().iter().enumerate() {
            assert_eq!(p.u, oc.get(i).unwrap());
        }
    }
}

#[test]
fn hyperspace_translation_examples() {
    let x = discrete(2);
    let pr = PixleyRoy::new(x.clone()).unwrap();
    let hs = pr.space();
    let mut all = Vec::new();
    for u in [0b00u64, 0b01, 0b10, 0b11] {
        for f in 0..=u {
            if f & !u == 0 {
                all.push(DoublePair::new(FiniteSet::from_mask(f), x.open_from_mask(u).unwrap()));
            }
        }
    }
    let fam = doublecover_to_hyperspace_family(&pr, &DoubleCover::listed(&x, "all", all)).unwrap();
    assert!(dense_union_at_horizon(&hs, &fam, 64, 64).unwrap());

    let one = DoubleCover::listed(&x, "{(∅,X)}", vec![DoublePair::new(fs(&[]), whole(&x))]);
    let fam = doublecover_to_hyperspace_family(&pr, &one).unwrap();
    assert_eq!(hs.open_mask(&fam.get(0).unwrap()), 0b1111);

    let bad = DoubleCover::listed(&x, "{({0},X)}", vec![DoublePair::new(fs(&[0]), whole(&x))]);
    let fam = doublecover_to_hyperspace_family(&pr, &bad).unwrap();
    assert!(!dense_union_at_horizon(&hs, &fam, 64, 64).unwrap());
    let missed = pr.base_index(&fs(&[]), &x.open_from_mask(0b10).unwrap()).unwrap();
    assert!(!crate::space::meets_open(&hs, &fam.get(0).unwrap(), &OpenSet::basic(missed)).unwrap());

    let back = hyperspace_family_to_doublecover(&pr, &fam).unwrap();
    assert_eq!(back.prefix(5).unwrap(), bad.prefix(5).unwrap());
    let not_basic = CoverFamily::listed("two", vec![OpenSet::new(vec![0, 1])]);
    assert!(hyperspace_family_to_doublecover(&pr, &not_basic).is_err());
}

#[test]
fn dense_union_matches_double_cover_on_two_points() {
    for s in small_spaces(2, false) {
        let pr = PixleyRoy::new(s.clone()).unwrap();
        let hs = pr.space();
        let nb = hs.base_count().unwrap();
        let mut fams: Vec<Vec<usize>> = vec![vec![]];
        for a in 0..nb {
            fams.push(vec![a]);
            for b in a + 1..nb {
                fams.push(vec![a, b]);
                for c in b + 1..nb {
                    fams.push(vec![a, b, c]);
                }
            }
        }
        for f in fams {
            let fam = CoverFamily::listed("f", f.iter().map(|&b| OpenSet::basic(b)).collect());
            let dense = dense_union_at_horizon(&hs, &fam, nb, nb).unwrap();
            let dc = hyperspace_family_to_doublecover(&pr, &fam).unwrap();
            let double = is_double_cover_at_horizon(&s, &dc, 64, 64).unwrap();
            assert_eq!(dense, double, "{f:?} on {}", s.label());
        }
    }
}

#[test]
fn hyperspace_of_open_subspace() {
    for s in small_spaces(3, true) {
        let t = FinTopology::from_space(&s).unwrap();
        for &u in t.nonempty_opens() {
            assert!(open_subspace_commutes(&s, &open_of(&s, u)).unwrap(), "{} {u:#b}", s.label());
        }
    }
}

#[test]
fn omega_selector_examples() {
    let x = sierpinski();
    let sel = omega_selector_countable(&x, &|_| CoverFamily::listed("whole", vec![whole(&x)]), 6, 10).unwrap();
    assert!(sel.iter().all(|u| *u == whole(&x)));

    // finite unions of intervals of length 1/2
    let q = rationals();
    let halves = || {
        CoverFamily::lazy("half-length unions", |j| {
            Some(OpenSet::new(
                crate::pairing::set_decode(j).iter().map(|&k| 1 + crate::pairing::diag(k, 2)).collect(),
            ))
        })
    };
    let sel = omega_selector_countable(&q, &|_| halves(), 8, 10_000).unwrap();
    for (n, u) in sel.iter().enumerate() {
        assert!(q.contains_all(u, &FiniteSet::unrank(n)));
    }
    let fam = CoverFamily::listed("selection", sel);
    assert!(is_omega_cover_at_horizon(&q, &fam, 8, 10_000).unwrap());
}

#[test]
fn double_selector_on_one_point() {
    let x = discrete(1);
    let pairs = vec![
        DoublePair::new(fs(&[0]), whole(&x)),
        DoublePair::new(fs(&[]), whole(&x)),
    ];
    let sel = second_countable_double_selector(&x, &|_| DoubleCover::listed(&x, "p", pairs.clone()), 10, 10).unwrap();
    let out = DoubleCover::listed(&x, "out", sel.iter().map(|s| s.pair.clone()).collect());
    assert!(is_double_cover_at_horizon(&x, &out, 64, 64).unwrap());
    for s in &sel {
        assert!(x.contains_all(&s.block, &s.pair.f));
        assert_eq!(s.n, crate::pairing::diag(s.k, s.j));
    }
}

#[test]
fn double_selector_on_rationals() {
    let q = rationals();
    let shared = long_interval_pairs();
    let sel = second_countable_double_selector(&q, &|_| shared.clone(), 64, 10_000).unwrap();
    let out = DoubleCover::listed(&q, "selection", sel.iter().map(|s| s.pair.clone()).collect());
    assert!(is_double_cover_at_horizon(&q, &out, 6, 10_000).unwrap());
    let again = second_countable_double_selector(&q, &|_| long_interval_pairs(), 64, 10_000).unwrap();
    assert_eq!(out.to_json().unwrap(), DoubleCover::listed(&q, "again", again.into_iter().map(|s| s.pair).collect()).to_json().unwrap());
}

#[test]
fn double_cover_json() {
    let x = discrete(2);
    let dc = DoubleCover::listed(&x, "one", vec![DoublePair::new(fs(&[0]), whole(&x))]);
    let json = dc.to_json().unwrap();
    assert_eq!(json, r#"[{"F":[0],"U":[0,1]}]"#);
    assert!(DoubleCover::from_json(&x, "back", r#"[{"F":[1],"U":[0]}]"#).is_err());
    let _ = t0_spaces(1);
}
