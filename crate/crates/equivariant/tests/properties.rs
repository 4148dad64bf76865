use equivariant::*;
use gpd_core::{Exec, FinGroup, MapMode};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn group(i: usize) -> FinGroup {
    match i {
        0 => FinGroup::cyclic(4),
        1 => FinGroup::cyclic(6),
        2 => FinGroup::symmetric(3),
        3 => FinGroup::dihedral(4),
        4 => FinGroup::dihedral(5),
        _ => FinGroup::symmetric(4),
    }
}

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

fn family(g: &FinGroup, seeds: &[(usize, usize)]) -> Vec<Vec<usize>> {
    seeds.iter().map(|&(a, b)| generated(g, &[a % g.order(), b % g.order()])).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn hom_sets_agree_with_fixed_points(i in 0usize..6, seeds in prop::collection::vec((0usize..24, 0usize..24), 1..4)) {
        let g = group(i);
        let fam = family(&g, &seeds);
        let orbit = orbit_category(&g, &fam).unwrap();
        for h in 0..orbit.len() {
            for k in 0..orbit.len() {
                prop_assert_eq!(orbit.hom(h, k).to_vec(), orbit.fixed_points(h, k));
                // composition stays inside the hom-sets
                for l in 0..orbit.len() {
                    for &f in orbit.hom(h, k) {
                        for &e in orbit.hom(k, l) {
                            prop_assert!(orbit.hom(h, l).contains(&orbit.compose(k, l, e, f)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn aux_hom_groupoids_are_free_quotients(i in 0usize..5, seeds in prop::collection::vec((0usize..12, 0usize..12), 1..3)) {
        let g = group(i);
        let fam = family(&g, &seeds);
        let orbit = orbit_category(&g, &fam).unwrap();
        let aux = aux_category(&g, &fam).unwrap();
        for h in 0..fam.len() {
            for k in 0..fam.len() {
                let a = &aux.hom(h, k).groupoid;
                prop_assert_eq!(a.validate(), Ok(()));
                prop_assert!(a.objects().all(|x| a.aut(x).len() == 1));
                prop_assert_eq!(gpd_core::components(a).len(), orbit.hom(h, k).len());
            }
        }
    }

    #[test]
    fn contractible_families_compare(i in 0usize..5, seeds in prop::collection::vec((0usize..12, 0usize..12), 1..3), faithful: bool) {
        let g = group(i);
        let fam = family(&g, &seeds);
        let mode = if faithful { MapMode::Faithful } else { MapMode::All };
        let report = comparison(&g, &fam, mode, Exec::Sequential).unwrap();
        prop_assert!(report.functorial);
        prop_assert!(report.to_orbit_equivalence());
        if f_contractible_check(&g, &fam, mode).unwrap() {
            prop_assert!(report.holds());
        }
    }
}
