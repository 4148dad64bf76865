//! The acceptance run: ten library-level criteria, each reporting a verdict
//! and the numbers it rests on. Randomized inputs come from fixed seeds, so
//! the report is a pure function of the code.

use crate::report::Report;
use crate::workspace::coset_gauge;
use bundles_descent::{
    bundle_iso, cocycle_iso, cocycle_to_hs, descent_check, holim_gamma, hs_to_cocycle, Cocycle, GammaDiagram,
};
use functor_calc::{conj_action_model, enumerate_functors, mapping_groupoid};
use gpd_core::budget::ENUM_NODES;
use gpd_core::{
    action_groupoid, components, coproduct, coset_space, delooping, homomorphisms, iso_check, pair_groupoid, product,
    restriction, terminal_groupoid, translation_groupoid, unit_groupoid, validate_groupoid, Budget, Exec, FinGroup,
    FinGroupoid, Functor, GSet, MapMode, RawGroupoid,
};
use laxcolim::{pbasm_check, universal_property_report, LaxDiagram};
use orb_model::{adjunction_check, build_orb, counit_check, free_orbspace, unit_check};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub pass: bool,
    pub facts: Vec<(String, String)>,
}

impl Outcome {
    fn new(id: usize, title: &'static str) -> Self {
        Outcome { id, title, pass: true, facts: Vec::new() }
    }

    fn fact(&mut self, key: impl Into<String>, value: impl ToString) {
        self.facts.push((key.into(), value.to_string()));
    }

    fn require(&mut self, key: impl Into<String>, ok: bool) {
        self.pass &= ok;
        self.fact(key, ok);
    }
}

pub type Criterion = fn() -> Outcome;

/// Criteria in order; the determinism criterion lives outside the run
/// because it compares whole runs.
pub const CRITERIA: [Criterion; 10] = [
    groupoid_axioms,
    coset_action_is_gauge,
    mapping_groupoid_model,
    nerve_homology,
    cocycle_round_trip,
    descent,
    pushout_universal_property,
    bundles_as_colimit,
    orb_adjunction,
    orbit_comparison,
];

pub fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().map(|c| c()).collect()
}

pub fn report(outcomes: &[Outcome]) -> Report {
    let items = outcomes
        .iter()
        .map(|o| {
            let mut item = Report::new();
            item.kv("criterion", o.id).kv("title", o.title);
            for (k, v) in &o.facts {
                item.kv(k, v.as_str());
            }
            item.check("pass", o.pass);
            item
        })
        .collect();
    let mut r = Report::new();
    r.items("criteria", items)
        .kv("passed", outcomes.iter().filter(|o| o.pass).count())
        .kv("total", outcomes.len());
    r
}

/// Groups of order at most 8.
pub fn small_groups() -> Vec<(&'static str, FinGroup)> {
    let c = FinGroup::cyclic;
    vec![
        ("1", FinGroup::trivial()),
        ("Z2", c(2)),
        ("Z3", c(3)),
        ("Z4", c(4)),
        ("Z2xZ2", FinGroup::product(&c(2), &c(2))),
        ("Z5", c(5)),
        ("Z6", c(6)),
        ("S3", FinGroup::symmetric(3)),
        ("Z7", c(7)),
        ("Z8", c(8)),
        ("Z2xZ4", FinGroup::product(&c(2), &c(4))),
        ("Z2^3", FinGroup::product(&FinGroup::product(&c(2), &c(2)), &c(2))),
        ("D4", FinGroup::dihedral(4)),
    ]
}

/// Every subgroup, generated by at most two elements (enough below order 9).
fn subgroups(g: &FinGroup) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for a in 0..g.order() {
        for b in a..g.order() {
            let mut s = g.closure(&[a, b]);
            s.sort_unstable();
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out.sort();
    out
}

fn leaf(rng: &mut ChaCha8Rng) -> (String, FinGroupoid) {
    let groups = small_groups();
    let (name, g) = groups.choose(rng).expect("non-empty");
    let subs = subgroups(g);
    let k = &subs[rng.gen_range(0..subs.len())];
    match rng.gen_range(0..4) {
        0 => (format!("B{name}"), delooping(g)),
        1 => (format!("{name}/{}", k.len()), action_groupoid(g, &coset_space(g, k).0)),
        2 => (format!("gauge({name},{})", k.len()), coset_gauge(g, k)),
        _ => {
            let n = rng.gen_range(1..5);
            (format!("pair({n})"), pair_groupoid(n))
        }
    }
}

/// Fifty seeded constructions cycling through products, restrictions,
/// action, gauge and translation groupoids over groups of order at most 8.
pub fn random_constructions() -> Vec<(String, FinGroupoid)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let groups = small_groups();
    (0..50)
        .map(|i| match i % 5 {
            0 => loop {
                let (a, ga) = leaf(&mut rng);
                let (b, gb) = leaf(&mut rng);
                if ga.n_arrows() * gb.n_arrows() <= 144 {
                    break (format!("{a} x {b}"), product(&ga, &gb));
                }
            },
            1 => {
                let (a, ga) = leaf(&mut rng);
                let mut cover: Vec<usize> = ga.objects().collect();
                let extra = rng.gen_range(0..3);
                cover.extend((0..extra).map(|_| rng.gen_range(0..ga.n_objects())));
                cover.shuffle(&mut rng);
                let r = restriction(&ga, &cover).expect("covers every object");
                (format!("{a}|{}", cover.len()), r.groupoid)
            }
            2 => {
                let (name, g) = groups.choose(&mut rng).expect("non-empty");
                let subs = subgroups(g);
                let k = &subs[rng.gen_range(0..subs.len())];
                (format!("{name}/{}", k.len()), action_groupoid(g, &coset_space(g, k).0))
            }
            3 => {
                let (name, g) = groups.choose(&mut rng).expect("non-empty");
                let subs = subgroups(g);
                let k = &subs[rng.gen_range(0..subs.len())];
                (format!("gauge({name},{})", k.len()), coset_gauge(g, k))
            }
            _ => loop {
                let (a, ga) = leaf(&mut rng);
                if ga.n_composable_pairs() <= 400 {
                    break (format!("E({a})"), translation_groupoid(&ga));
                }
            },
        })
        .collect()
}

/// Label tables of a groupoid, every composable pair listed.
pub fn raw_tables(g: &FinGroupoid) -> RawGroupoid {
    let o = |x: usize| format!("x{x}");
    let a = |f: usize| format!("a{f}");
    let mut comp = Vec::new();
    for f in g.arrows() {
        for &h in g.in_arrows(g.src(f)) {
            comp.push((a(f), a(h), a(g.comp(f, h))));
        }
    }
    RawGroupoid {
        objects: g.objects().map(o).collect(),
        arrows: g.arrows().map(|f| (a(f), o(g.src(f)), o(g.tgt(f)))).collect(),
        comp,
        id: g.objects().map(|x| (o(x), a(g.id(x)))).collect(),
        inv: g.arrows().map(|f| (a(f), a(g.inv(f)))).collect(),
    }
}

pub fn groupoid_axioms() -> Outcome {
    let mut out = Outcome::new(1, "groupoid axioms on 50 seeded constructions");
    let built = random_constructions();
    let mut valid = 0;
    let mut same = 0;
    for (_, g) in &built {
        if let Ok(l) = validate_groupoid(&raw_tables(g)) {
            valid += 1;
            let h = &l.groupoid;
            let identical = h.n_objects() == g.n_objects()
                && h.n_arrows() == g.n_arrows()
                && g.arrows().all(|f| {
                    h.src(f) == g.src(f)
                        && h.tgt(f) == g.tgt(f)
                        && g.in_arrows(g.src(f)).iter().all(|&k| h.comp(f, k) == g.comp(f, k))
                });
            same += usize::from(identical);
        }
    }
    out.fact("constructions", built.len());
    out.fact("arrows", built.iter().map(|(_, g)| g.n_arrows()).sum::<usize>());
    out.fact("valid", valid);
    out.require("tables_round_trip", same == built.len());
    out.require("all_valid", valid == built.len() && built.len() == 50);
    out
}

pub fn s3_transposition() -> (FinGroup, Vec<usize>) {
    let s3 = FinGroup::symmetric(3);
    let t = s3.element_by_name("(12)").expect("S3 names its transpositions");
    let mut k = s3.closure(&[t]);
    k.sort_unstable();
    (s3, k)
}

pub fn coset_action_is_gauge() -> Outcome {
    let mut out = Outcome::new(2, "coset action groupoid is the gauge groupoid");
    let (s3, k) = s3_transposition();
    let action = action_groupoid(&s3, &coset_space(&s3, &k).0);
    let gauge = coset_gauge(&s3, &k);
    out.fact("action", format!("{} objects, {} arrows", action.n_objects(), action.n_arrows()));
    out.fact("gauge", format!("{} objects, {} arrows", gauge.n_objects(), gauge.n_arrows()));
    let verdict = iso_check(&action, &gauge);
    let certified = verdict.certificate().is_some_and(|iso| {
        iso.forward.is_isomorphism(&action, &gauge)
            && iso.backward.after(&iso.forward) == Functor::identity(&action)
            && iso.forward.after(&iso.backward) == Functor::identity(&gauge)
    });
    out.require("sizes", (action.n_objects(), action.n_arrows(), gauge.n_arrows()) == (3, 18, 18));
    out.require("certified_isomorphism", certified);
    out
}

pub fn model_groups() -> Vec<(&'static str, FinGroup)> {
    vec![
        ("Z2", FinGroup::cyclic(2)),
        ("Z3", FinGroup::cyclic(3)),
        ("Z4", FinGroup::cyclic(4)),
        ("S3", FinGroup::symmetric(3)),
    ]
}

pub fn mapping_groupoid_model() -> Outcome {
    let mut out = Outcome::new(3, "conjugation model of the mapping groupoid");
    let groups = model_groups();
    let mut all = true;
    for mode in [MapMode::All, MapMode::Faithful] {
        for (hn, h) in &groups {
            for (gn, g) in &groups {
                let m = mapping_groupoid(&delooping(h), &delooping(g), mode).expect("default budget suffices");
                let model = conj_action_model(h, g, mode);
                let iso = iso_check(&model, &m.groupoid).is_iso();
                all &= iso;
                out.fact(
                    format!("{hn}->{gn} {mode}"),
                    format!(
                        "objects {}, arrows {}, pi0 {}, iso {iso}",
                        m.groupoid.n_objects(),
                        m.groupoid.n_arrows(),
                        components(&m.groupoid).len()
                    ),
                );
            }
        }
    }
    out.require("all_isomorphic", all);
    out
}

fn names(t: &nerve_homotopy::HomologyTable) -> Vec<String> {
    t.groups
        .iter()
        .map(|h| {
            let tor: Vec<String> = h.torsion.iter().map(ToString::to_string).collect();
            crate::commands::homology_name(h.rank, &tor)
        })
        .collect()
}

pub fn nerve_homology() -> Outcome {
    let mut out = Outcome::new(4, "homology of fat nerves");
    let bz2 = nerve_homotopy::homology(&delooping(&FinGroup::cyclic(2)), 5).expect("within the generator budget");
    let pair = nerve_homotopy::homology(&pair_groupoid(4), 4).expect("within the generator budget");
    let (b, p) = (names(&bz2), names(&pair));
    out.fact("BZ2", b.join(", "));
    out.fact("pair(4)", p.join(", "));
    out.require("BZ2_matches", b == ["Z", "Z/2", "0", "Z/2", "0"]);
    out.require("pair_acyclic", p == ["Z", "0", "0", "0"]);
    out
}

/// Base groupoids with at most four objects.
pub fn bundle_bases() -> Vec<(&'static str, FinGroupoid)> {
    let z2 = FinGroup::cyclic(2);
    let (s3, k) = s3_transposition();
    let bg = |n| delooping(&FinGroup::cyclic(n));
    vec![
        ("point", terminal_groupoid()),
        ("unit(2)", unit_groupoid(2)),
        ("unit(4)", unit_groupoid(4)),
        ("pair(2)", pair_groupoid(2)),
        ("pair(3)", pair_groupoid(3)),
        ("BZ2", bg(2)),
        ("BZ3", bg(3)),
        ("BZ2+pt", coproduct(&bg(2), &terminal_groupoid())),
        ("Z2/1", action_groupoid(&z2, &GSet::from_group(&z2, 2, |a, x| z2.mul(a, x)))),
        ("S3/Z2", action_groupoid(&s3, &coset_space(&s3, &k).0)),
    ]
}

pub fn bundle_targets() -> Vec<(&'static str, FinGroupoid)> {
    let bg = |n| delooping(&FinGroup::cyclic(n));
    vec![
        ("BZ2", bg(2)),
        ("BZ3", bg(3)),
        ("BS3", delooping(&FinGroup::symmetric(3))),
        ("pair(2)", pair_groupoid(2)),
        ("BZ2+BZ3", coproduct(&bg(2), &bg(3))),
    ]
}

/// The cocycles of the round trip: every functor on the identity cover
/// plus seeded functors on random covers, keeping bundles with at most
/// twelve points.
pub fn round_trip_corpus() -> Vec<Cocycle> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut out = Vec::new();
    for (_, h) in bundle_bases() {
        for (_, g) in bundle_targets() {
            for mode in [MapMode::All, MapMode::Faithful] {
                for f in enumerate_functors(&h, &g, mode).expect("small enumeration") {
                    out.push(Cocycle::from_functor(&h, &g, &f, mode).expect("functors are cocycles"));
                }
                for _ in 0..3 {
                    let mut cover = Vec::new();
                    for x in h.objects() {
                        cover.extend(std::iter::repeat(x).take(rng.gen_range(1..=2)));
                    }
                    cover.shuffle(&mut rng);
                    let r = restriction(&h, &cover).expect("covers every object");
                    let fs = enumerate_functors(&r.groupoid, &g, mode).expect("small enumeration");
                    if let Some(f) = fs.choose(&mut rng) {
                        out.push(Cocycle::new(&h, &g, &cover, f.clone(), mode).expect("functors are cocycles"));
                    }
                }
            }
        }
    }
    out.retain(|c| cocycle_to_hs(c).len() <= 12);
    out
}

pub fn cocycle_round_trip() -> Outcome {
    let mut out = Outcome::new(5, "cocycle and bundle round trips");
    let corpus = round_trip_corpus();
    let (mut ok, mut faithful, mut predicate) = (0, 0, true);
    for c in &corpus {
        let b = cocycle_to_hs(c);
        let is_faithful = c.functor().is_faithful(&c.restricted().groupoid);
        predicate &= b.is_faithful() == is_faithful && (c.mode() == MapMode::All || is_faithful);
        faithful += usize::from(b.is_faithful());
        let c2 = hs_to_cocycle(&b);
        let b2 = cocycle_to_hs(&c2);
        let there = cocycle_iso(c, &c2).is_some();
        let back = bundle_iso(&b2, &b).is_some_and(|iso| iso.verify(&b2, &b));
        ok += usize::from(there && back);
    }
    out.fact("cocycles", corpus.len());
    out.fact("faithful_bundles", faithful);
    out.fact("max_points", corpus.iter().map(|c| cocycle_to_hs(c).len()).max().unwrap_or(0));
    out.require("faithful_predicate", predicate);
    out.require("round_trips", ok == corpus.len() && !corpus.is_empty());
    out
}

/// Seeded groupoids with at most 36 arrows.
pub fn constant_values() -> Vec<FinGroupoid> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let bg = |n| delooping(&FinGroup::cyclic(n));
    let leaves = [
        bg(2),
        bg(3),
        delooping(&FinGroup::symmetric(3)),
        pair_groupoid(2),
        pair_groupoid(3),
        unit_groupoid(2),
        terminal_groupoid(),
    ];
    (0..10)
        .map(|_| {
            let mut g = leaves.choose(&mut rng).expect("non-empty").clone();
            while rng.gen_bool(0.5) {
                let next = leaves.choose(&mut rng).expect("non-empty");
                let cand = if rng.gen_bool(0.5) { coproduct(&g, next) } else { product(&g, next) };
                if cand.n_arrows() > 36 {
                    break;
                }
                g = cand;
            }
            g
        })
        .collect()
}

pub fn descent() -> Outcome {
    let mut out = Outcome::new(6, "descent for the double cover and constant diagrams");
    let bz2 = delooping(&FinGroup::cyclic(2));
    let cube = product(&bz2, &product(&bz2, &bz2));
    match descent_check(&bz2, &[0, 0, 1, 1, 2, 2], 3) {
        Ok(rep) => {
            out.fact("holim", format!("{} objects, {} arrows", rep.holim.groupoid.n_objects(), rep.holim.groupoid.n_arrows()));
            out.fact("holim_pi0", components(&rep.holim.groupoid).len());
            out.require("global_is_cube", iso_check(&rep.global, &cube).is_iso());
            out.require("equivalence", rep.holds());
        }
        Err(e) => out.require(format!("descent_error {e}"), false),
    }
    let values = constant_values();
    let iso = values
        .iter()
        .filter(|a| holim_gamma(&GammaDiagram::constant(a)).is_ok_and(|h| iso_check(&h.groupoid, a).is_iso()))
        .count();
    out.fact("constant_values", values.len());
    out.require("constant_holims_isomorphic", iso == values.len());
    out
}

pub fn pushout(a: &FinGroup, c: &FinGroup) -> LaxDiagram {
    let (ba, bc, pt) = (delooping(a), delooping(c), terminal_groupoid());
    LaxDiagram::span(&ba, &pt, &bc, Functor::constant(&pt, &ba, 0), Functor::constant(&pt, &bc, 0))
}

pub fn pushout_universal_property() -> Outcome {
    let mut out = Outcome::new(7, "universal property of the pushout of deloopings");
    let (z2, z3) = (FinGroup::cyclic(2), FinGroup::cyclic(3));
    let d = pushout(&z2, &z3);
    for (name, k) in [("BZ2", z2.clone()), ("BZ3", z3.clone()), ("BS3", FinGroup::symmetric(3))] {
        let count = |a: &FinGroup| {
            homomorphisms(a, &k, false, &mut Budget::unlimited().meter()).expect("unlimited").len()
        };
        match universal_property_report(&d, &delooping(&k), Budget::or_env(ENUM_NODES), Exec::default()) {
            Ok(r) => {
                out.fact(
                    name,
                    format!("hom objects {}, cone objects {}, based {}", r.hom_objects, r.cone_objects, r.based_objects),
                );
                out.require(format!("{name} based_free_product"), r.based_objects == count(&z2) * count(&z3));
                out.require(format!("{name} isomorphism"), r.is_isomorphism());
            }
            Err(e) => out.require(format!("{name} error {e}"), false),
        }
    }
    out
}

pub fn bundles_as_colimit() -> Outcome {
    let mut out = Outcome::new(8, "bundles as the colimit over covers");
    let cases = [
        ("BZ2,BS3", delooping(&FinGroup::cyclic(2)), delooping(&FinGroup::symmetric(3))),
        ("unit(2),BZ2", unit_groupoid(2), delooping(&FinGroup::cyclic(2))),
        ("terminal,terminal", terminal_groupoid(), terminal_groupoid()),
    ];
    for (name, h, g) in cases {
        match pbasm_check(&h, &g, 2) {
            Ok(r) => {
                out.fact(name, format!("covers {}, vertices {}, classes {}", r.covers, r.vertices, r.classes));
                out.require(format!("{name} holds"), r.holds());
            }
            Err(e) => out.require(format!("{name} error {e}"), false),
        }
    }
    out
}

pub fn orb_adjunction() -> Outcome {
    let mut out = Outcome::new(9, "adjunction between groupoids and Orb-spaces");
    let family = [FinGroup::cyclic(2), FinGroup::cyclic(3)];
    let orb = build_orb(&family, MapMode::All).expect("small family");
    let targets = [("BZ2", delooping(&family[0])), ("BS3", delooping(&FinGroup::symmetric(3)))];
    for cells in [[1, 0], [0, 1], [1, 1], [2, 1]] {
        let x = free_orbspace(&orb, &cells).space;
        for (name, w) in &targets {
            match adjunction_check(&orb, &x, w) {
                Ok(r) => {
                    out.fact(format!("{cells:?} {name}"), format!("objects {}, arrows {}", r.hom_objects, r.hom_arrows));
                    out.require(format!("{cells:?} {name} adjunction"), r.is_isomorphism());
                }
                Err(e) => out.require(format!("{cells:?} {name} error {e}"), false),
            }
        }
        out.require(format!("{cells:?} unit"), unit_check(&orb, &x).is_ok_and(|u| u.holds()));
    }
    for (name, w) in &targets {
        out.require(format!("{name} counit"), counit_check(&orb, w).is_ok_and(|c| c.holds()));
    }
    out
}

pub fn orbit_comparison() -> Outcome {
    let mut out = Outcome::new(10, "orbit category against Orb");
    let s3 = FinGroup::symmetric(3);
    let z4 = FinGroup::cyclic(4);
    let whole = |g: &FinGroup| vec![(0..g.order()).collect::<Vec<_>>()];
    let c_s3 = equivariant::f_contractible_check(&s3, &whole(&s3), MapMode::Faithful);
    let c_z4 = equivariant::f_contractible_check(&z4, &whole(&z4), MapMode::Faithful);
    out.require("S3 f_contractible", c_s3 == Ok(true));
    out.require("Z4 not f_contractible", c_z4 == Ok(false));
    match equivariant::tvc_compare(&s3, &whole(&s3), MapMode::Faithful) {
        Ok(t) => {
            let p = &t.pairs[0];
            out.fact("aux_objects", p.aux_objects);
            out.fact("orb_objects", p.orb_objects);
            out.require("to_orbit_equivalence", t.to_orbit_equivalence());
            out.require("to_orb_equivalence", t.to_orb_equivalence());
            out.require("functorial", t.functorial);
        }
        Err(e) => out.require(format!("comparison error {e}"), false),
    }
    out
}
