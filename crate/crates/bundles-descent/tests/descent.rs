mod common;

use bundles_descent::*;
use common::*;
use gpd_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_groupoid(rng: &mut impl Rng) -> FinGroupoid {
    let leaves = [bg(2), bg(3), bs3(), pair_groupoid(2), pair_groupoid(3), unit_groupoid(2), terminal_groupoid()];
    let mut g = leaves[rng.gen_range(0..leaves.len())].clone();
    while rng.gen_bool(0.5) {
        let next = &leaves[rng.gen_range(0..leaves.len())];
        let cand = if rng.gen_bool(0.5) { coproduct(&g, next) } else { product(&g, next) };
        if cand.n_arrows() > 36 {
            break;
        }
        g = cand;
    }
    g
}

#[test]
fn constant_diagrams() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let a = random_groupoid(&mut rng);
        assert!(a.n_arrows() <= 36);
        let h = holim_gamma(&GammaDiagram::constant(&a)).unwrap();
        assert!(h.objects.iter().all(|(x, alpha)| *alpha == vec![a.id(x[0])]));
        assert!(iso_check(&h.groupoid, &a).is_iso());
    }
}

#[test]
fn cech_levels_of_a_double_cover() {
    let d = cech_diagram(&bg(2), &[0, 0, 1, 1, 2, 2], 3).unwrap();
    let sizes: Vec<usize> = d.levels.iter().map(|l| l.exponent()).collect();
    assert_eq!(sizes, vec![6, 12, 24]);
    assert_eq!(d.levels[2].n_arrows(), 1 << 24);
}

/// Gluing data for `Hom(-, B Z/2)` on the double cover, counted directly:
/// functions on ordered pairs in a fibre with `α(v,w) + α(u,v) = α(u,w)`.
fn brute_gluings() -> usize {
    let pairs: Vec<(usize, usize)> = (0..6).flat_map(|u| (0..6).map(move |v| (u, v))).filter(|&(u, v)| u / 2 == v / 2).collect();
    let at = |m: u32, u: usize, v: usize| (m >> pairs.iter().position(|&p| p == (u, v)).unwrap()) & 1;
    (0u32..1 << pairs.len())
        .filter(|&m| {
            (0..6).all(|u| {
                (0..6).all(|v| {
                    (0..6).all(|w| u / 2 != v / 2 || v / 2 != w / 2 || (at(m, v, w) + at(m, u, v)) % 2 == at(m, u, w))
                })
            })
        })
        .count()
}

#[test]
fn double_cover_descent() {
    let d = cech_diagram(&bg(2), &[0, 0, 1, 1, 2, 2], 3).unwrap();
    let h = holim_gamma(&d).unwrap();
    assert_eq!(h.groupoid.n_objects(), brute_gluings());
    assert_eq!(h.groupoid.n_objects(), 8);
    assert_eq!(h.groupoid.n_arrows(), 8 * 64);
    assert_eq!(gpd_core::structure::components(&h.groupoid).len(), 1);
    let cube = product(&bg(2), &product(&bg(2), &bg(2)));
    let report = descent_check(&bg(2), &[0, 0, 1, 1, 2, 2], 3).unwrap();
    assert!(report.holds());
    assert!(iso_check(&report.global, &cube).is_iso());
    let (aut, _) = gpd_core::structure::vertex_group(&h.groupoid, 0);
    assert_eq!(aut.order(), 8);
    assert!(aut.is_abelian() && (0..8).all(|e| aut.element_order(e) <= 2));
}

#[test]
fn descent_for_other_values_and_covers() {
    for (value, cover, base) in [
        (bs3(), vec![0, 0], 1),
        (pair_groupoid(2), vec![1, 0, 1], 2),
        (bg(3), vec![0, 1, 1, 2], 3),
        (coproduct(&bg(2), &terminal_groupoid()), vec![0, 0, 0], 1),
    ] {
        assert!(descent_check(&value, &cover, base).unwrap().holds());
    }
    // a map that misses a point is not a cover and descent fails
    assert!(!descent_check(&bg(2), &[0, 0, 1], 3).unwrap().holds());
}

#[test]
fn lax_twist_gives_an_isomorphic_holim() {
    let s3 = FinGroup::symmetric(3);
    let a = bs3();
    let strict = cech_diagram(&a, &[0, 0], 1).unwrap();
    // replace d^0 : X(1) -> X(2) by its conjugate under s and absorb the
    // difference into the composite cells
    let s = s3.element_by_name("(12)").unwrap();
    let conj = Functor { obj: vec![0], arr: (0..6).map(|g| s3.mul(s3.mul(s, g), s3.inv(s))).collect() };
    let mut second = strict.second.clone();
    second[0].functor = conj.after(&second[0].functor);
    let l2 = &strict.levels[2];
    let theta = vec![s; l2.exponent()];
    let mut cells = strict.cells.clone();
    for i in 0..2 {
        for c in cells[0][i].iter_mut() {
            *c = l2.comp(c, &l2.inv(&theta));
        }
    }
    let lax = GammaDiagram::new(strict.levels.clone(), strict.first.clone(), second.clone(), strict.vertex.clone(), cells)
        .unwrap();
    let h1 = holim_gamma(&strict).unwrap();
    let h2 = holim_gamma(&lax).unwrap();
    assert!(iso_check(&h1.groupoid, &h2.groupoid).is_iso());

    // without the compensating cells the data is rejected
    let broken = GammaDiagram::new(strict.levels.clone(), strict.first.clone(), second, strict.vertex.clone(), strict.cells.clone());
    assert!(matches!(broken, Err(DiagramError::BadCell { j: 0, .. })));
}

#[test]
fn strictness_is_checked() {
    let a = bg(2);
    let l = PowerGroupoid::new(&a, 2);
    let id = LevelMap::identity(&l);
    let swap = LevelMap::reindexing(&a, vec![1, 0]);
    let r = GammaDiagram::strict([l.clone(), l.clone(), l], [id.clone(), swap], [id.clone(), id.clone(), id]);
    assert!(matches!(r, Err(DiagramError::NotStrict { .. })));
}

#[test]
fn tabulated_powers_match_products() {
    for a in [bg(2), pair_groupoid(2), coproduct(&bg(2), &terminal_groupoid())] {
        let t = PowerGroupoid::new(&a, 2).tabulate(1_000).unwrap();
        assert_eq!(t, product(&a, &a));
        let t3 = PowerGroupoid::new(&a, 3).tabulate(10_000).unwrap();
        assert_eq!(t3, product(&a, &product(&a, &a)));
    }
    assert_eq!(PowerGroupoid::new(&bg(2), 0).tabulate(1).unwrap().n_arrows(), 1);
}

#[test]
fn holim_budget() {
    let d = cech_diagram(&bg(2), &[0, 0, 1, 1, 2, 2], 3).unwrap();
    assert!(matches!(holim_gamma_with(&d, Budget(100), Exec::Sequential), Err(HolimError::SizeLimit { .. })));
    let seq = holim_gamma_with(&d, Budget(1 << 20), Exec::Sequential).unwrap();
    let par = holim_gamma_with(&d, Budget(1 << 20), Exec::Parallel).unwrap();
    assert_eq!(seq.groupoid, par.groupoid);
}
