use functor_calc::NatTransformation;
use gpd_core::{delooping, homomorphisms, terminal_groupoid, Budget, Exec, FinGroup, FinGroupoid, Functor};
use laxcolim::*;
use std::collections::HashMap;

fn b(g: &FinGroup) -> FinGroupoid {
    delooping(g)
}

fn pushout(a: &FinGroup, c: &FinGroup) -> LaxDiagram {
    let (ba, bc, pt) = (b(a), b(c), terminal_groupoid());
    LaxDiagram::span(&ba, &pt, &bc, Functor::constant(&pt, &ba, 0), Functor::constant(&pt, &bc, 0))
}

fn hom_count(a: &FinGroup, k: &FinGroup) -> usize {
    homomorphisms(a, k, false, &mut Budget::unlimited().meter()).unwrap().len()
}

fn targets() -> Vec<FinGroup> {
    vec![FinGroup::cyclic(2), FinGroup::cyclic(3), FinGroup::symmetric(3)]
}

#[test]
fn pushout_presentation_shape() {
    let d = pushout(&FinGroup::cyclic(2), &FinGroup::cyclic(3));
    assert_eq!(validate_diagram(&d), Ok(()));
    let p = hocolim_presentation(&d);
    assert_eq!(p.n_vertices, 3);
    assert_eq!(p.generators.len(), 2 + 1 + 3 + 2);
    assert_eq!(p.count(Family::Composition), 4 + 1 + 9);
    assert_eq!(p.count(Family::Naturality), 2);
    assert_eq!(p.count(Family::TwoCell), 0);
    assert!(p.relations.iter().all(|r| p.is_composable(&r.word)));
}

#[test]
fn pushout_hom_counts_match_free_product() {
    let (z2, z3) = (FinGroup::cyclic(2), FinGroup::cyclic(3));
    let p = hocolim_presentation(&pushout(&z2, &z3));
    let expected: Vec<usize> = targets().iter().map(|k| hom_count(&z2, k) * hom_count(&z3, k)).collect();
    assert_eq!(expected, vec![2, 3, 12]);
    for (k, &e) in targets().iter().zip(&expected) {
        let w = b(k);
        let hg = hom_solver(&p, &w).unwrap();
        // vertices go to the single object, so spanning-forest generators
        // carry the |K|^2 free choices on top of the free product
        assert_eq!(hg.based_count(&p, &w), e);
        assert_eq!(hg.n_objects(), e * k.order() * k.order());
        assert!(hg.assignments.iter().all(|a| satisfies(&p, &w, a)));
        assert_eq!(hg.n_components(&p, &w), components_oracle(&z2, &z3, k));
    }
}

/// Conjugacy classes of pairs of homomorphisms, which index components.
fn components_oracle(a: &FinGroup, c: &FinGroup, k: &FinGroup) -> usize {
    let mut meter = Budget::unlimited().meter();
    let ha = homomorphisms(a, k, false, &mut meter).unwrap();
    let hc = homomorphisms(c, k, false, &mut meter).unwrap();
    let mut seen = std::collections::HashSet::new();
    let mut classes = 0;
    for f in &ha {
        for g in &hc {
            if seen.contains(&(f.clone(), g.clone())) {
                continue;
            }
            classes += 1;
            for x in 0..k.order() {
                let xi = k.inv(x);
                let conj = |m: &Vec<usize>| m.iter().map(|&y| k.mul(k.mul(x, y), xi)).collect::<Vec<_>>();
                seen.insert((conj(f), conj(g)));
            }
        }
    }
    classes
}

#[test]
fn pushout_universal_property() {
    let (z2, z3) = (FinGroup::cyclic(2), FinGroup::cyclic(3));
    let d = pushout(&z2, &z3);
    for k in targets() {
        let w = b(&k);
        let r = universal_property_report(&d, &w, Budget::unlimited(), Exec::default()).unwrap();
        assert!(r.is_isomorphism(), "{r:?}");
        assert_eq!(r.based_objects, hom_count(&z2, &k) * hom_count(&z3, &k));
        assert_eq!(r.hom_objects, r.cone_objects);
    }
}

#[test]
fn constant_diagram_is_its_own_colimit() {
    for g in targets() {
        let d = LaxDiagram::constant(&b(&g));
        for k in targets() {
            assert!(universal_property_check(&d, &b(&k)));
        }
        let p = hocolim_presentation(&d);
        assert_eq!(p.generators.len(), g.order());
    }
}

#[test]
fn cech_diagram_universal_property() {
    let h = terminal_groupoid();
    let g = b(&FinGroup::cyclic(2));
    let hd = hom_diagram_default(&h, &g, 2).unwrap();
    assert_eq!(validate_diagram(&hd.diagram), Ok(()));
    assert!(universal_property_check(&hd.diagram, &g));
}

/// The chain `0 -> 1 -> 2 -> 3` with all composites.
fn chain4() -> IndexCategory2 {
    let mut ends = Vec::new();
    for i in 0..4 {
        for j in i..4 {
            ends.push((i, j));
        }
    }
    let pos = ends.clone();
    let find = move |e: (usize, usize)| pos.iter().position(|&x| x == e).unwrap();
    let ident = (0..4).map(|i| find((i, i))).collect();
    let e2 = ends.clone();
    IndexCategory2::new(4, ends, ident, Cells::Discrete, move |p, q| find((e2[q].0, e2[p].1))).unwrap()
}

#[test]
fn perturbed_comparison_breaks_pentagon() {
    let c = chain4();
    let v = b(&FinGroup::cyclic(2));
    let values = vec![v.clone(); 4];
    let functors = vec![Functor::identity(&v); c.n_arrows()];
    let mut d = LaxDiagram::strict(c.clone(), values, functors, HashMap::new());
    assert_eq!(validate_diagram(&d), Ok(()));
    // twist F(p, q) for p: 2 -> 3, q: 1 -> 2
    let p = c.arrows().find(|&x| c.src(x) == 2 && c.tgt(x) == 3).unwrap();
    let q = c.arrows().find(|&x| c.src(x) == 1 && c.tgt(x) == 2).unwrap();
    let flip = v.arrows().find(|&a| !v.is_identity(a)).unwrap();
    d.comparisons.insert((p, q), NatTransformation { components: vec![flip] });
    assert!(!d.is_strict());
    assert!(matches!(validate_diagram(&d), Err(DiagramError::PentagonViolation(..))));
}

#[test]
fn covers_of_a_point_and_of_two_points() {
    let c = cov2_builder(1, 2);
    assert_eq!(c.covers, vec![vec![0], vec![0, 0]]);
    // 1 + 1 + 2 + 4 maps between them
    assert_eq!(c.category.n_arrows(), 8);
    assert_eq!(c.terminal, Some(0));
    assert!(c.is_filtered());
    let c2 = cov2_builder(2, 2);
    assert_eq!(c2.covers, vec![vec![0, 1], vec![1, 0]]);
    assert!(c2.is_filtered());
    assert!(cov2_builder(2, 1).terminal.is_none());
}

#[test]
fn pbasm_instances() {
    let cases = [
        (b(&FinGroup::cyclic(2)), b(&FinGroup::symmetric(3)), 2),
        (gpd_core::unit_groupoid(2), b(&FinGroup::cyclic(2)), 1),
        (terminal_groupoid(), terminal_groupoid(), 1),
    ];
    for (h, g, classes) in cases {
        let r = pbasm_check(&h, &g, 2).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.classes, classes);
    }
}

#[test]
fn pbasm_needs_the_identity_cover() {
    let h = gpd_core::unit_groupoid(3);
    let g = terminal_groupoid();
    assert!(matches!(pbasm_check(&h, &g, 2), Err(PbasmError::NoIdentityCover { .. })));
}

#[test]
fn tietze_keeps_hom_sets() {
    let d = pushout(&FinGroup::cyclic(2), &FinGroup::cyclic(3));
    let p = hocolim_presentation(&d);
    let r = tietze(&p, 1000);
    assert!(r.relations.len() < p.relations.len());
    let forest = spanning_forest(&p);
    assert_eq!(forest.len(), p.n_vertices - 1);
}

#[test]
fn finite_colimits_are_realized() {
    let s3 = b(&FinGroup::symmetric(3));
    let d = LaxDiagram::constant(&s3);
    let p = hocolim_presentation(&d);
    let r = realize(&p, Budget::unlimited()).unwrap();
    assert_eq!((r.groupoid.n_objects(), r.groupoid.n_arrows()), (1, 6));
    assert!(gpd_core::iso_check(&r.groupoid, &s3).is_iso());
    // the tautological functor back to B S3
    let images: Vec<usize> = s3.arrows().collect();
    let f = r.extend(&p, &s3, &[0], &images).unwrap();
    assert!(f.is_isomorphism(&r.groupoid, &s3));
    // a non-homomorphic assignment does not extend
    let rot = s3.arrows().find(|&a| !s3.is_identity(a) && s3.comp_all(&[a, a, a]) == s3.id(0)).unwrap();
    let bad: Vec<usize> = s3.arrows().map(|a| if a == rot { rot } else { s3.id(0) }).collect();
    assert!(r.extend(&p, &s3, &[0], &bad).is_none());

    // the Čech colimit over covers of a point is B Z/2 again
    let g = b(&FinGroup::cyclic(2));
    let hd = hom_diagram_default(&terminal_groupoid(), &g, 2).unwrap();
    let p = hocolim_presentation(&hd.diagram);
    let r = realize(&p, Budget::unlimited()).unwrap();
    assert_eq!(r.n_components(), 1);
    assert_eq!(r.vertex_group(0).order(), 2);
}

#[test]
fn infinite_colimits_exhaust_the_budget() {
    let p = hocolim_presentation(&pushout(&FinGroup::cyclic(2), &FinGroup::cyclic(3)));
    assert!(realize(&p, Budget(20_000)).is_err());
}

#[test]
fn presentations_without_generators() {
    let empty = GroupoidPresentation::from_parts(0, Vec::new(), Vec::new()).unwrap();
    assert_eq!(hom_solver(&empty, &gpd_core::pair_groupoid(3)).unwrap().n_objects(), 1);
    let points = GroupoidPresentation::from_parts(2, Vec::new(), Vec::new()).unwrap();
    assert_eq!(hom_solver(&points, &gpd_core::pair_groupoid(3)).unwrap().n_objects(), 9);
}
