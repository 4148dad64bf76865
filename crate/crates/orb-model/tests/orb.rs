use gpd_core::{
    action_groupoid, coproduct, coset_space, delooping, empty_groupoid, iso_check, FinGroup, FinGroupoid, Functor,
    MapMode,
};
use laxcolim::realize;
use orb_model::*;

fn z(n: usize) -> FinGroup {
    FinGroup::cyclic(n)
}

fn s3() -> FinGroup {
    FinGroup::symmetric(3)
}

/// Elements of `g` with `x^n = 1`, i.e. homomorphisms `Z/n -> g`.
fn roots(g: &FinGroup, n: usize) -> Vec<usize> {
    (0..g.order())
        .filter(|&x| (0..n).fold(g.unit(), |acc, _| g.mul(acc, x)) == g.unit())
        .collect()
}

/// Conjugacy orbits of a conjugation-stable subset.
fn orbits(g: &FinGroup, set: &[usize]) -> usize {
    let mut seen = vec![false; g.order()];
    let mut count = 0;
    for &x in set {
        if !seen[x] {
            count += 1;
            for c in 0..g.order() {
                seen[g.mul(g.mul(c, x), g.inv(c))] = true;
            }
        }
    }
    count
}

fn pi0(g: &FinGroupoid) -> usize {
    gpd_core::components(g).len()
}

#[test]
fn orbit_category_of_z2_and_s3() {
    let orb = build_orb(&[z(2), s3()], MapMode::All).unwrap();
    let hom = &orb.hom(0, 1).groupoid;
    let r = roots(&s3(), 2);
    assert_eq!(hom.n_objects(), r.len());
    assert_eq!(hom.n_objects(), 4);
    assert_eq!(pi0(hom), orbits(&s3(), &r));
    assert_eq!(pi0(hom), 2);
    assert!(orb.check_laws());
    for g in 0..2 {
        let id = orb.identity(g);
        for h in 0..2 {
            for phi in orb.hom(h, g).groupoid.objects() {
                assert_eq!(orb.compose(h, g, g, id, phi), phi);
            }
        }
    }
}

#[test]
fn faithful_automorphisms_of_s3() {
    let orb = build_orb(&[s3()], MapMode::Faithful).unwrap();
    let hom = &orb.hom(0, 0).groupoid;
    // Aut(S3) = Inn(S3) has order 6, and every automorphism is inner
    assert_eq!(hom.n_objects(), 6);
    assert_eq!(hom.n_arrows(), 36);
    assert_eq!(pi0(hom), 1);
    assert!(orb.check_laws());
}

#[test]
fn free_space_on_one_cell_is_the_hom_groupoid() {
    let orb = build_orb(&[z(2), z(3)], MapMode::All).unwrap();
    for g in 0..2 {
        let f = free_orbspace(&orb, &delta(2, g));
        assert_eq!(validate_orbspace(&orb, &f.space), Ok(()));
        for h in 0..2 {
            assert!(iso_check(f.space.value(h), &orb.hom(h, g).groupoid).is_iso());
        }
    }
}

#[test]
fn split_coequalizers() {
    let orb = build_orb(&[z(2), z(3)], MapMode::All).unwrap();
    assert!(coequalizer_check(&orb, &free_orbspace(&orb, &delta(2, 0)).space).holds());
    let r = r_functor(&orb, &delooping(&s3())).unwrap();
    assert!(coequalizer_check(&orb, &r.space).holds());
    // a corrupted action breaks the fork
    let bad = bad_action(&orb, &r.space);
    assert!(!coequalizer_check(&orb, &bad).holds());
}

/// Send every arrow of the level-0 action along `Orb(0,0)` to the image
/// under the identity.
fn bad_action(orb: &OrbCategory, x: &OrbSpace) -> OrbSpace {
    let a = x.action(0, 0).clone();
    let v = x.value(0);
    let m = &orb.hom(0, 0).groupoid;
    let mut obj = a.obj.clone();
    let mut arr = a.arr.clone();
    let twist = m.objects().find(|&p| p != orb.identity(0)).expect("a second endomorphism");
    for p in v.objects() {
        obj[twist * v.n_objects() + p] = p;
    }
    for e in v.arrows() {
        arr[m.id(twist) * v.n_arrows() + e] = e;
    }
    x.clone().with_action_unchecked(0, 0, Functor { obj, arr })
}

#[test]
fn corrupted_actions_fail_validation() {
    let orb = build_orb(&[z(2), z(3)], MapMode::All).unwrap();
    let r = r_functor(&orb, &delooping(&s3())).unwrap();
    assert!(validate_orbspace(&orb, &bad_action(&orb, &r.space)).is_err());
}

#[test]
fn r_of_deloopings_and_stabilizers() {
    let orb = build_orb(&[z(2), z(3)], MapMode::All).unwrap();
    let r = r_functor(&orb, &delooping(&s3())).unwrap();
    for h in 0..2 {
        assert!(iso_check(r.space.value(h), &build_orb(&[orb.family()[h].clone(), s3()], MapMode::All).unwrap().hom(0, 1).groupoid).is_iso());
    }

    // S3 acting on S3/<(01)>: B Z/2 maps to the trivial map or onto a stabilizer
    let (cosets, _) = coset_space(&s3(), &[0, 2]);
    let w = action_groupoid(&s3(), &cosets);
    let orb2 = build_orb(&[z(2)], MapMode::All).unwrap();
    let r = r_functor(&orb2, &w).unwrap();
    assert_eq!(pi0(r.space.value(0)), 2);

    let r = r_functor(&orb, &empty_groupoid()).unwrap();
    assert!((0..2).all(|h| r.space.value(h).n_objects() == 0));
}

#[test]
fn l_of_free_spaces() {
    let orb = build_orb(&[z(2), z(3)], MapMode::All).unwrap();
    for g in 0..2 {
        let x = free_orbspace(&orb, &delta(2, g));
        let lx = realize(&l_functor(&orb, &x.space).presentation, gpd_core::Budget(1_000_000)).unwrap();
        assert!(iso_check(&lx.groupoid, &delooping(&orb.family()[g])).is_iso());
    }
    let x = free_orbspace(&orb, &[1, 1]);
    let lx = realize(&l_functor(&orb, &x.space).presentation, gpd_core::Budget(1_000_000)).unwrap();
    let expected = coproduct(&delooping(&z(2)), &delooping(&z(3)));
    assert!(iso_check(&lx.groupoid, &expected).is_iso());
}

#[test]
fn adjunction_on_the_corpus() {
    let orb = build_orb(&[z(2), z(3)], MapMode::All).unwrap();
    let x = free_orbspace(&orb, &delta(2, 0));
    let report = adjunction_check(&orb, &x.space, &delooping(&s3())).unwrap();
    assert!(report.is_isomorphism());
    assert_eq!(report.hom_objects, roots(&s3(), 2).len());
    assert_eq!(report.orb_objects, 4);
    for cells in [[1, 0], [0, 1], [1, 1], [2, 1]] {
        let x = free_orbspace(&orb, &cells);
        for w in [delooping(&z(2)), delooping(&s3())] {
            let r = adjunction_check(&orb, &x.space, &w).unwrap();
            assert!(r.is_isomorphism(), "{cells:?}: {r:?}");
            // a free space is a coproduct of its cells
            let expect: usize =
                (0..2).map(|g| roots(&s3_or(&w), orb.family()[g].order()).len().pow(cells[g] as u32)).product();
            assert_eq!(r.hom_objects, expect);
        }
        assert!(unit_check(&orb, &x.space).unwrap().holds());
    }
    for w in [delooping(&z(2)), delooping(&s3())] {
        assert!(counit_check(&orb, &w).unwrap().holds());
    }
}

/// The group of a delooping.
fn s3_or(w: &FinGroupoid) -> FinGroup {
    if w.n_arrows() == 2 {
        z(2)
    } else {
        s3()
    }
}

#[test]
fn adjunction_on_non_free_spaces() {
    let orb = build_orb(&[z(2), z(3)], MapMode::All).unwrap();
    let x = r_functor(&orb, &delooping(&z(2))).unwrap();
    let report = adjunction_check(&orb, &x.space, &delooping(&z(2))).unwrap();
    assert!(report.is_isomorphism());
    assert!(unit_check(&orb, &x.space).unwrap().holds());
}

#[test]
fn counit_for_s3_over_a_family_containing_it() {
    let orb = build_orb(&[z(2), z(3), s3()], MapMode::All).unwrap();
    let report = counit_check(&orb, &delooping(&s3())).unwrap();
    assert!(report.holds());
    assert_eq!(report.components, 1);
}

#[test]
fn unit_over_small_families() {
    let groups = [z(2), z(3), z(4), s3()];
    for (i, j) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
        let orb = build_orb(&[groups[i].clone(), groups[j].clone()], MapMode::All).unwrap();
        for cells in [[1, 0], [0, 1], [1, 1]] {
            let x = free_orbspace(&orb, &cells);
            assert!(unit_check(&orb, &x.space).unwrap().holds(), "{i} {j} {cells:?}");
        }
    }
}

#[test]
fn weak_equivalences() {
    let orb = build_orb(&[z(2), z(3)], MapMode::All).unwrap();
    let r = r_functor(&orb, &delooping(&s3())).unwrap();
    assert_eq!(orbspace_weq(&orb, &r.space, &r.space, &OrbMap::identity(&r.space)), Ok(true));

    // B Z/2 -> S3 ⋉ S3/<(01)> is an equivalence, so R of it is one
    let (cosets, _) = coset_space(&s3(), &[0, 2]);
    let w = action_groupoid(&s3(), &cosets);
    let n = cosets.carrier();
    let inclusion = Functor { obj: vec![0], arr: vec![0, 2 * n] };
    assert!(inclusion.is_functor(&delooping(&z(2)), &w));
    let (src, tgt) = (r_functor(&orb, &delooping(&z(2))).unwrap(), r_functor(&orb, &w).unwrap());
    let f = r_map(&orb, &src, &tgt, &inclusion).unwrap();
    assert_eq!(orbspace_weq(&orb, &src.space, &tgt.space, &f), Ok(true));

    // collapsing B Z/2 to a point loses the automorphisms
    let point = gpd_core::terminal_groupoid();
    let collapse = Functor { obj: vec![0], arr: vec![0, 0] };
    let tp = r_functor(&orb, &point).unwrap();
    let f = r_map(&orb, &src, &tp, &collapse).unwrap();
    assert_eq!(orbspace_weq(&orb, &src.space, &tp.space, &f), Ok(false));
}
