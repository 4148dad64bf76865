use equivariant::*;
use gpd_core::{FinGroup, MapMode};
use std::collections::BTreeSet;

fn s3() -> FinGroup {
    FinGroup::symmetric(3)
}

fn all(g: &FinGroup) -> Vec<usize> {
    (0..g.order()).collect()
}

/// The subgroup generated by `gens`, by closure.
fn generated(g: &FinGroup, gens: &[usize]) -> Vec<usize> {
    let mut set = BTreeSet::from([g.unit()]);
    loop {
        let next: BTreeSet<usize> =
            set.iter().flat_map(|&a| gens.iter().map(move |&b| g.mul(a, b))).chain(set.iter().copied()).collect();
        if next == set {
            return set.into_iter().collect();
        }
        set = next;
    }
}

/// `|(G/K)^H|` with cosets as explicit sets.
fn fixed_cosets(g: &FinGroup, h: &[usize], k: &[usize]) -> usize {
    let cosets: BTreeSet<BTreeSet<usize>> = (0..g.order()).map(|x| k.iter().map(|&y| g.mul(x, y)).collect()).collect();
    cosets
        .iter()
        .filter(|c| h.iter().all(|&a| c.iter().map(|&x| g.mul(a, x)).collect::<BTreeSet<_>>() == **c))
        .count()
}

#[test]
fn hom_sets_in_s3() {
    let g = s3();
    // element 2 swaps the first two letters
    let t = generated(&g, &[2]);
    assert_eq!(t.len(), 2);
    let orbit = orbit_category(&g, &[t.clone(), all(&g)]).unwrap();
    assert_eq!(orbit.hom(0, 1).len(), fixed_cosets(&g, &t, &all(&g)));
    assert_eq!(orbit.hom(0, 1).len(), 1);
    assert_eq!(orbit.hom(1, 0).len(), fixed_cosets(&g, &all(&g), &t));
    assert_eq!(orbit.hom(1, 0).len(), 0);
    for h in 0..2 {
        assert!(orbit.hom(h, h).contains(&orbit.identity(h)));
        for &f in orbit.hom(h, 0) {
            assert_eq!(orbit.compose(0, 0, orbit.identity(0), f), f);
        }
    }
}

#[test]
fn hom_sets_in_z4() {
    let g = FinGroup::cyclic(4);
    let orbit = orbit_category(&g, &[vec![0, 2], all(&g)]).unwrap();
    assert_eq!(orbit.hom(0, 0).len(), 2);
    assert_eq!(orbit.hom(0, 0).len(), fixed_cosets(&g, &[0, 2], &[0, 2]));
    assert_eq!(orbit.fixed_points(0, 0), orbit.hom(0, 0));
}

#[test]
fn families_must_be_subgroups() {
    let g = s3();
    assert_eq!(orbit_category(&g, &[vec![0, 1, 2]]).unwrap_err(), EquivariantError::NotASubgroup { index: 0 });
    assert!(f_contractible_check(&g, &[all(&g), vec![3]], MapMode::All).is_err());
}

#[test]
fn contractibility() {
    let g = s3();
    assert_eq!(f_contractible_check(&g, &[all(&g)], MapMode::Faithful), Ok(true));
    // the trivial endomorphism is not a conjugation
    assert_eq!(f_contractible_check(&g, &[all(&g)], MapMode::All), Ok(false));
    let z4 = FinGroup::cyclic(4);
    for mode in [MapMode::All, MapMode::Faithful] {
        assert_eq!(f_contractible_check(&z4, &[all(&z4)], mode), Ok(false));
    }
    // the fiber over the trivial map is the whole group
    let one = FinGroup::cyclic(1);
    assert_eq!(f_contractible_check(&one, &[vec![0]], MapMode::All), Ok(true));
    assert_eq!(f_contractible_check(&FinGroup::cyclic(2), &[vec![0]], MapMode::All), Ok(false));
}

#[test]
fn comparison_for_s3() {
    let g = s3();
    let report = tvc_compare(&g, &[all(&g)], MapMode::Faithful).unwrap();
    assert!(report.holds(), "{report:?}");
    let pair = &report.pairs[0];
    assert_eq!(pair.orbit_homs, 1);
    assert_eq!(pair.aux_objects, 6);
    assert_eq!(pair.orb_objects, 6);
    assert_eq!(pair.orb_components, 1);
    let aux = aux_category(&g, &[all(&g)]).unwrap();
    // a free transitive action: the pair groupoid on six objects
    assert_eq!(aux.hom(0, 0).groupoid.n_arrows(), 36);
}

#[test]
fn comparison_needs_contractibility() {
    let z4 = FinGroup::cyclic(4);
    assert!(matches!(tvc_compare(&z4, &[all(&z4)], MapMode::All), Err(EquivariantError::PreconditionFailed(_))));
    // without the precondition the second functor is not an equivalence
    let report = comparison(&z4, &[all(&z4)], MapMode::All, gpd_core::Exec::Sequential).unwrap();
    assert!(report.to_orbit_equivalence());
    assert!(!report.to_orb_equivalence());
}

#[test]
fn empty_family_is_vacuous() {
    let report = tvc_compare(&s3(), &[], MapMode::Faithful).unwrap();
    assert!(report.pairs.is_empty());
    assert!(report.holds());
}
