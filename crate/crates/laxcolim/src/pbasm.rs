//! Bundles on `H` as the lax colimit of `U ↦ Hom(H_U, G)` over covers.
//!
//! The comparison `Φ` sends a vertex `σ` to the class of its descended
//! bundle and a generator to the bundle map it induces, transported to the
//! class representatives. The inverse `Ψ` picks, for each class, the
//! cocycle of the representative on the identity cover and sends an
//! automorphism to the matching arrow there. `Φ` is an equivalence once
//!
//! * `Φ` kills every relation, so it is a functor;
//! * `ΦΨ` is the identity;
//! * `θ_σ = q_ν⁻¹ β_σ: σ -> ΨΦ(σ)` is natural on every generator, where
//!   `q` is the arrow to the identity cover and `β_σ: σ -> q*ν` an arrow
//!   of `Hom(H_U, G)`. Each naturality square is reduced, using named
//!   relations of the presentation, to an equation inside one value
//!   groupoid; the relations used are checked to be present.

use crate::diagram::{hom_diagram, validate_diagram, HomDiagram};
use crate::index::cov2_builder;
use crate::presentation::{hocolim_presentation, GeneratorKind, GroupoidPresentation, Letter};
use bundles_descent::{
    bundle_iso, cocycle_to_hs_points, hs_to_cocycle, moduli_groupoid_with, BundleIso, Cocycle,
    HSBundle, ModuliError, ModuliGroupoid,
};
use functor_calc::EnumError;
use gpd_core::budget::ENUM_NODES;
use gpd_core::{Arr, Budget, Exec, FinGroupoid, MapMode};
use std::collections::{HashMap, HashSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PbasmError {
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error(transparent)]
    Moduli(#[from] ModuliError),
    #[error("cover bound {bound} is below the {objects} objects of the base")]
    NoIdentityCover { bound: usize, objects: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbasmReport {
    pub covers: usize,
    pub vertices: usize,
    pub generators: usize,
    pub relations: usize,
    /// Isomorphism classes of bundles.
    pub classes: usize,
    /// Class of every vertex under `Φ`.
    pub vertex_classes: Vec<usize>,
    pub diagram_valid: bool,
    pub functorial: bool,
    pub section: bool,
    pub natural: bool,
}

impl PbasmReport {
    pub fn holds(&self) -> bool {
        self.diagram_valid && self.functorial && self.section && self.natural
    }
}

pub fn pbasm_check(h: &FinGroupoid, g: &FinGroupoid, bound: usize) -> Result<PbasmReport, PbasmError> {
    pbasm_check_with(h, g, bound, Budget::or_env(ENUM_NODES), Exec::default())
}

struct VertexData {
    class: Option<usize>,
    iso: Option<BundleIso>,
    bundle: HSBundle,
    points: HashMap<(usize, Arr), usize>,
}

pub fn pbasm_check_with(
    h: &FinGroupoid,
    g: &FinGroupoid,
    bound: usize,
    budget: Budget,
    exec: Exec,
) -> Result<PbasmReport, PbasmError> {
    let cov = cov2_builder(h.n_objects(), bound);
    let tc = cov.terminal.ok_or(PbasmError::NoIdentityCover { bound, objects: h.n_objects() })?;
    let hd = hom_diagram(h, g, cov, MapMode::All, budget, exec)?;
    let diagram_valid = validate_diagram(&hd.diagram).is_ok();
    let pres = hocolim_presentation(&hd.diagram);
    let moduli = moduli_groupoid_with(h, g, MapMode::All, budget, exec)?;
    let mut offset = Vec::new();
    let mut total = 0;
    for autos in &moduli.automorphisms {
        offset.push(total);
        total += autos.len();
    }

    let verts: Vec<usize> = (0..pres.n_vertices).collect();
    let data: Vec<VertexData> = exec.map(&verts, |&v| {
        let (t, s) = pres.locate(v);
        let sigma = hd.mappings[t].functors[s].clone();
        let c = Cocycle::new(h, g, &hd.cov.covers[t], sigma, MapMode::All).expect("values are cocycles");
        let (bundle, labels) = cocycle_to_hs_points(&c);
        let found = moduli.bundles.iter().enumerate().find_map(|(k, b)| bundle_iso(&bundle, b).map(|i| (k, i)));
        let points = labels.into_iter().enumerate().map(|(i, l)| (l, i)).collect();
        VertexData { class: found.as_ref().map(|f| f.0), iso: found.map(|f| f.1), bundle, points }
    });

    let gens: Vec<usize> = (0..pres.generators.len()).collect();
    let phi: Vec<Option<Arr>> = exec.map(&gens, |&x| phi_generator(h, g, &hd, &pres, &moduli, &offset, &data, x));

    let mg = &moduli.groupoid;
    let functorial = data.iter().all(|d| d.class.is_some())
        && phi.iter().all(Option::is_some)
        && pres.relations.iter().all(|r| {
            let mut acc: Option<Arr> = None;
            for l in r.word.iter().rev() {
                let a = phi[l.gen].expect("checked");
                let a = if l.inv { mg.inv(a) } else { a };
                acc = match acc {
                    None => Some(a),
                    Some(b) => match mg.try_comp(a, b) {
                        Some(c) => Some(c),
                        None => return false,
                    },
                };
            }
            acc.map_or(true, |a| mg.is_identity(a))
        });
    let vertex_classes: Vec<usize> = data.iter().map(|d| d.class.unwrap_or(usize::MAX)).collect();
    let report = |section, natural| PbasmReport {
        covers: hd.cov.covers.len(),
        vertices: pres.n_vertices,
        generators: pres.generators.len(),
        relations: pres.relations.len(),
        classes: moduli.n_classes(),
        vertex_classes: vertex_classes.clone(),
        diagram_valid,
        functorial,
        section,
        natural,
    };
    if !functorial {
        return Ok(report(false, false));
    }

    // Ψ on objects: the representative's cocycle on the identity cover
    let ft = &hd.mappings[tc];
    let nu: Vec<usize> = moduli
        .bundles
        .iter()
        .map(|b| {
            let f = hs_to_cocycle(b).functor().clone();
            ft.functor_index(&f).expect("cocycles on the identity cover are values")
        })
        .collect();
    // Ψ on arrows: Φ restricted to Aut(ν_k) must be a bijection onto Aut(k)
    let mut psi: Vec<Option<Arr>> = vec![None; total];
    let mut section = true;
    for (k, &n) in nu.iter().enumerate() {
        section &= vertex_classes[pres.vertex(tc, n)] == k;
        for a in ft.groupoid.hom(n, n) {
            let m = phi[pres.arrow_generator(tc, a)].expect("checked");
            section &= mg.src(m) == k && psi[m].replace(a).is_none();
        }
        section &= (offset[k]..offset[k] + moduli.automorphisms[k].len()).all(|m| psi[m].is_some());
    }
    if !section {
        return Ok(report(false, false));
    }
    let natural = naturality(&hd, &pres, &phi, &psi, &nu, &vertex_classes, tc);
    Ok(report(true, natural))
}

/// `Φ` on one generator: the induced bundle map, moved to the class
/// representative and located among its automorphisms.
#[allow(clippy::too_many_arguments)]
fn phi_generator(
    h: &FinGroupoid,
    g: &FinGroupoid,
    hd: &HomDiagram,
    pres: &GroupoidPresentation,
    moduli: &ModuliGroupoid,
    offset: &[usize],
    data: &[VertexData],
    x: usize,
) -> Option<Arr> {
    let gen = &pres.generators[x];
    let (a, b) = (&data[gen.src], &data[gen.tgt]);
    let (t, s) = pres.locate(gen.src);
    let sigma = &hd.mappings[t].functors[s];
    let mut map = vec![usize::MAX; a.bundle.len()];
    for (&(u, arr), &i) in &a.points {
        let label = match gen.kind {
            GeneratorKind::Arrow { object, arrow } => {
                let eta = &hd.mappings[object].transformations[arrow];
                (u, g.comp(arr, g.inv(eta.components[u])))
            }
            GeneratorKind::Refine { arrow: p, .. } => {
                let cov = &hd.cov;
                let (vc, uc) = (hd.diagram.index.src(p), hd.diagram.index.tgt(p));
                let over = cov.covers[uc][u];
                let v = cov.covers[vc].iter().position(|&y| y == over).expect("cover");
                let link = hd.restricted[uc].connecting(h, cov.maps[p][v], u);
                (v, g.comp(arr, sigma.arr[link]))
            }
            GeneratorKind::Free { .. } => return None,
        };
        map[i] = *b.points.get(&label)?;
    }
    let f = BundleIso { map };
    if !f.verify(&a.bundle, &b.bundle) {
        return None;
    }
    let (k, kb) = (a.class?, b.class?);
    if k != kb {
        return None;
    }
    let m = b.iso.as_ref()?.after(&f).after(&a.iso.as_ref()?.inverse());
    moduli.automorphisms[k].binary_search(&m).ok().map(|l| offset[k] + l)
}

/// All rotations of every relation, for membership tests.
fn relation_set(pres: &GroupoidPresentation) -> HashSet<Vec<Letter>> {
    let mut set = HashSet::new();
    for r in &pres.relations {
        let n = r.word.len();
        for k in 0..n.max(1) {
            set.insert(r.word.iter().cycle().skip(k).take(n).copied().collect());
        }
    }
    set
}

fn naturality(
    hd: &HomDiagram,
    pres: &GroupoidPresentation,
    phi: &[Option<Arr>],
    psi: &[Option<Arr>],
    nu: &[usize],
    classes: &[usize],
    tc: usize,
) -> bool {
    let d = &hd.diagram;
    let c = &d.index;
    let rels = relation_set(pres);
    let has = |w: Vec<Letter>| w.is_empty() || rels.contains(&w);
    let arrow = |t: usize, a: Arr| Letter::new(pres.arrow_generator(t, a));
    let refine = |p: usize, s: usize| pres.refine_generator(p, s).map(Letter::new);
    let to_t: Vec<usize> = c.objects().map(|u| hd.cov.to_terminal(u).expect("terminal cover")).collect();

    // β_σ: σ -> q*ν in the value at σ's cover
    let beta: Vec<Option<Arr>> = (0..pres.n_vertices)
        .map(|v| {
            let (t, s) = pres.locate(v);
            let target = d.functors[to_t[t]].obj[nu[classes[v]]];
            d.values[t].hom(s, target).next()
        })
        .collect();
    if beta.iter().any(Option::is_none) {
        return false;
    }
    let beta = |v: usize| beta[v].expect("checked");

    pres.generators.iter().enumerate().all(|(x, gen)| {
        let gamma = psi[phi[x].expect("functorial")].expect("section");
        let n = nu[classes[gen.src]];
        match gen.kind {
            GeneratorKind::Arrow { object: t, arrow: a } => {
                let (vt, q) = (&d.values[t], to_t[t]);
                let lhs = vt.comp_all(&[beta(gen.tgt), a, vt.inv(beta(gen.src))]);
                let qg = d.functors[q].arr[gamma];
                let used = c.is_identity(q)
                    || has(vec![
                        refine(q, n).expect("non-identity"),
                        arrow(tc, gamma),
                        refine(q, n).expect("non-identity").inverse(),
                        arrow(t, qg).inverse(),
                    ]);
                lhs == qg && used
            }
            GeneratorKind::Refine { arrow: p, object: s } => {
                let (vc, uc) = (c.src(p), c.tgt(p));
                let (qu, qv) = (to_t[uc], to_t[vc]);
                let (fu, fv) = (&d.values[uc], &d.values[vc]);
                let fp = &d.functors[p];
                let expected = fv.comp(d.functors[qv].arr[gamma], fp.arr[beta(gen.src)]);
                let delta = fu.comp(d.functors[qu].arr[gamma], beta(gen.src));
                let qun = d.functors[qu].obj[n];
                let mut used = c.comp(qu, p) == qv;
                if !c.is_identity(qu) {
                    used &= has(vec![
                        refine(qu, n).expect("non-identity"),
                        arrow(tc, gamma),
                        refine(qu, n).expect("non-identity").inverse(),
                        arrow(uc, d.functors[qu].arr[gamma]).inverse(),
                    ]);
                    let mut w3: Vec<Letter> = refine(p, qun).into_iter().collect();
                    w3.extend(refine(qu, n));
                    w3.extend(refine(qv, n).map(Letter::inverse));
                    used &= has(w3);
                }
                used &= has(vec![
                    refine(p, fu.tgt(delta)).expect("non-identity"),
                    arrow(uc, delta),
                    refine(p, s).expect("non-identity").inverse(),
                    arrow(vc, fp.arr[delta]).inverse(),
                ]);
                beta(gen.tgt) == expected && used
            }
            GeneratorKind::Free { .. } => false,
        }
    })
}
