mod common;

use common::*;
use functor_calc::*;
use gpd_core::*;

fn bz2() -> FinGroupoid {
    delooping(&FinGroup::cyclic(2))
}
fn bs3() -> FinGroupoid {
    delooping(&FinGroup::symmetric(3))
}

#[test]
fn functor_counts() {
    assert_eq!(enumerate_functors(&bz2(), &bs3(), MapMode::All).unwrap().len(), 4);
    assert_eq!(enumerate_functors(&bz2(), &bs3(), MapMode::Faithful).unwrap().len(), 3);
    for h in [bz2(), bs3(), pair_groupoid(3), unit_groupoid(2), empty_groupoid()] {
        assert_eq!(enumerate_functors(&h, &terminal_groupoid(), MapMode::All).unwrap().len(), 1);
    }
    assert!(enumerate_functors(&bz2(), &empty_groupoid(), MapMode::All).unwrap().is_empty());
}

#[test]
fn mapping_groupoid_bz2_bs3() {
    let m = mapping_groupoid(&bz2(), &bs3(), MapMode::All).unwrap();
    assert_eq!((m.groupoid.n_objects(), m.groupoid.n_arrows()), (4, 24));
    assert_eq!(components(&m.groupoid).len(), 2);
    let m2 = mapping_groupoid(&bz2(), &bs3(), MapMode::Faithful).unwrap();
    assert_eq!(components(&m2.groupoid).len(), 1);
    let s3 = FinGroup::symmetric(3);
    let z2 = FinGroup::cyclic(2);
    assert_eq!(conjugacy_classes_of_homs(&z2, &s3, false), 2);
    assert_eq!(conjugacy_classes_of_homs(&z2, &s3, true), 1);
}

#[test]
fn mapping_into_terminal_is_terminal() {
    for h in [bz2(), pair_groupoid(2), coproduct(&bs3(), &unit_groupoid(2))] {
        let m = mapping_groupoid(&h, &terminal_groupoid(), MapMode::All).unwrap();
        assert!(iso_check(&m.groupoid, &terminal_groupoid()).is_iso());
    }
}

#[test]
fn conjugation_model_examples() {
    let (z2, z3, s3) = (FinGroup::cyclic(2), FinGroup::cyclic(3), FinGroup::symmetric(3));
    let m = mapping_groupoid(&bz2(), &bs3(), MapMode::All).unwrap();
    assert!(iso_check(&conj_action_model(&z2, &s3, MapMode::All), &m.groupoid).is_iso());

    let triv = conj_action_model(&FinGroup::trivial(), &s3, MapMode::All);
    assert!(iso_check(&triv, &bs3()).is_iso());

    let c = conj_action_model(&z3, &s3, MapMode::All);
    assert_eq!((c.n_objects(), c.n_arrows()), (3, 18));
}

#[test]
fn equivalence_examples() {
    // BZ/2 into the gauge groupoid of a free Z/2-set of size 4 over two points
    let z2 = FinGroup::cyclic(2);
    let free = GSet::from_group(&z2, 4, |g, x| 2 * (x / 2) + z2.mul(g, x % 2));
    let gauge = gauge_groupoid_of_group(&z2, &free, 2, &[0, 0, 1, 1]).unwrap();
    let loops = gauge.aut(0);
    let f = Functor { obj: vec![0], arr: vec![loops[0], loops[1]] };
    assert!(f.is_functor(&bz2(), &gauge));
    let v = categorical_equivalence(&f, &bz2(), &gauge);
    assert!(v.is_equivalence());
    assert!(brute_equivalence(&f, &bz2(), &gauge));

    let s3 = FinGroup::symmetric(3);
    let incl = Functor { obj: vec![0], arr: vec![s3.unit(), names(&s3, "(12)")] };
    let v = categorical_equivalence(&incl, &bz2(), &bs3());
    assert!(!v.fully_faithful && v.essentially_surjective && !v.is_equivalence());

    let g = coproduct(&pair_groupoid(2), &bs3());
    let v = categorical_equivalence(&Functor::identity(&g), &g, &g);
    assert_eq!(v.witness.unwrap().inverse, Functor::identity(&g));
}

#[test]
fn pair_groupoid_is_equivalent_to_a_point() {
    let p = pair_groupoid(3);
    let f = Functor::constant(&p, &terminal_groupoid(), 0);
    let w = categorical_equivalence(&f, &p, &terminal_groupoid()).witness.unwrap();
    assert!(w.inverse.is_functor(&terminal_groupoid(), &p));
}

#[test]
fn trivial_bundle_gauge_is_equivalent_to_the_group() {
    for g in [FinGroup::cyclic(2), FinGroup::cyclic(3), FinGroup::symmetric(3)] {
        for t in 1..4 {
            let n = g.order();
            let p = GSet::from_group(&g, n * t, |a, x| (x / n) * n + g.mul(a, x % n));
            let proj: Vec<usize> = (0..n * t).map(|x| x / n).collect();
            let gauge = gauge_groupoid_of_group(&g, &p, t, &proj).unwrap();
            // a ↦ [a⁻¹·p0, p0]; the unadorned a ↦ [a·p0, p0] reverses composition
            let bg = delooping(&g);
            let arr = (0..n)
                .map(|a| gauge.aut(0).into_iter().find(|&e| e == gauge_arrow(&gauge, &g, &p, g.inv(a))).unwrap())
                .collect();
            let f = Functor { obj: vec![0], arr };
            assert!(f.is_functor(&bg, &gauge));
            assert!(categorical_equivalence(&f, &bg, &gauge).is_equivalence());
        }
    }
}

/// The gauge arrow `[a·0, 0]`, located by recomputing the numbering by
/// least representative.
fn gauge_arrow(gauge: &FinGroupoid, g: &FinGroup, p: &GSet, a: usize) -> usize {
    let n = g.order();
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for x in 0..p.carrier() {
        for y in 0..p.carrier() {
            let known = reps.iter().any(|&(r, s)| (0..n).any(|c| p.act(c, r) == x && p.act(c, s) == y));
            if !known {
                reps.push((x, y));
            }
        }
    }
    let target = (p.act(a, 0), 0);
    let id = reps
        .iter()
        .position(|&(r, s)| (0..n).any(|c| (p.act(c, r), p.act(c, s)) == target))
        .unwrap();
    assert_eq!(gauge.src(id), 0);
    id
}

#[test]
fn exponential_law() {
    let r = exponential_compare(&bz2(), &bz2(), &bz2(), MapMode::All).unwrap();
    assert!(r.holds);
    assert_eq!(r.sizes[0], r.sizes[1]);

    let r = exponential_compare(&terminal_groupoid(), &bz2(), &bs3(), MapMode::All).unwrap();
    assert!(r.holds);
    assert_eq!(r.sizes[0], (4, 24));

    let r = exponential_compare(&bz2(), &bz2(), &bs3(), MapMode::Faithful).unwrap();
    assert!(r.holds);
    assert_eq!(r.sizes.iter().map(|s| s.0).collect::<Vec<_>>(), vec![0, 3, 10]);
    assert_eq!(r.strict, vec![true, true]);
}

#[test]
fn exponential_law_all_mode_on_mixed_inputs() {
    for (k, h, g) in [
        (pair_groupoid(2), bz2(), bs3()),
        (bz2(), unit_groupoid(2), bz2()),
        (coproduct(&bz2(), &terminal_groupoid()), bz2(), delooping(&FinGroup::cyclic(3))),
    ] {
        assert!(exponential_compare(&k, &h, &g, MapMode::All).unwrap().holds);
    }
}

#[test]
fn budget_exhaustion_is_indeterminate() {
    let h = delooping(&FinGroup::product(&FinGroup::cyclic(2), &FinGroup::cyclic(2)));
    let g = delooping(&FinGroup::symmetric(4));
    let e = enumerate_functors_with(&h, &g, MapMode::All, Budget(10), Exec::Sequential).unwrap_err();
    assert!(matches!(e, EnumError::Indeterminate { .. }));
}
