//! Lax cocones over a diagram with a fixed vertex `W`, modifications
//! between them, and the comparison with `Hom(hocolim F, W)`.
//!
//! Cones are enumerated directly from the diagram: legs from functor
//! enumeration, then for each index arrow the natural transformations
//! between legs, pruned by the coherence laws. Nothing here reads the
//! presentation, so matching the solver's output is a genuine check.

use crate::conj::{for_each_tuple, materialize, tuple_count};
use crate::diagram::LaxDiagram;
use crate::presentation::{hocolim_presentation, GroupoidPresentation};
use crate::solver::{hom_solver_with, Assignment, HomGroupoid, SolveError};
use functor_calc::{enumerate_functors_with, EnumError, NatTransformation};
use gpd_core::budget::ENUM_NODES;
use gpd_core::structure::{components, spanning_tree};
use gpd_core::{Arr, Budget, Exec, FinGroupoid, Functor, MapMode, Obj};
use std::sync::atomic::{AtomicU64, Ordering};

/// A lax cocone: `legs[t]: F(t) -> W` and, for every index arrow
/// `p: U -> T`, `cells[p]: legs[T] ⇒ legs[U] ∘ F(p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    pub legs: Vec<Functor>,
    pub cells: Vec<NatTransformation>,
}

impl Cone {
    /// Vertex images in presentation order.
    pub fn vertices(&self) -> Vec<Obj> {
        self.legs.iter().flat_map(|f| f.obj.iter().copied()).collect()
    }

    /// Legs are functors, cells are natural, and the comparison and 2-cell
    /// laws hold.
    pub fn is_valid(&self, d: &LaxDiagram, w: &FinGroupoid) -> bool {
        let c = &d.index;
        c.objects().all(|t| self.legs[t].is_functor(&d.values[t], w))
            && c.arrows().all(|p| {
                let (u, t) = (c.src(p), c.tgt(p));
                let pulled = pulled_leg(&self.legs[u], &d.functors[p]);
                self.cells[p].is_natural(&self.legs[t], &pulled, &d.values[t], w)
                    && (!c.is_identity(p) || self.cells[p].components.iter().all(|&a| w.is_identity(a)))
            })
            && coherence(d, w, &self.legs, &self.cells, usize::MAX)
    }

    /// Target of the modification with components `m` (vertex order).
    pub fn act(&self, d: &LaxDiagram, w: &FinGroupoid, offsets: &[usize], m: &[Arr]) -> Cone {
        let c = &d.index;
        let legs = c
            .objects()
            .map(|t| {
                let v = &d.values[t];
                let o = offsets[t];
                Functor {
                    obj: (0..v.n_objects()).map(|x| w.tgt(m[o + x])).collect(),
                    arr: v
                        .arrows()
                        .map(|a| w.comp_all(&[m[o + v.tgt(a)], self.legs[t].arr[a], w.inv(m[o + v.src(a)])]))
                        .collect(),
                }
            })
            .collect();
        let cells = c
            .arrows()
            .map(|p| {
                let (u, t) = (c.src(p), c.tgt(p));
                let fp = &d.functors[p];
                NatTransformation {
                    components: self.cells[p]
                        .components
                        .iter()
                        .enumerate()
                        .map(|(s, &x)| {
                            w.comp_all(&[m[offsets[u] + fp.obj[s]], x, w.inv(m[offsets[t] + s])])
                        })
                        .collect(),
                }
            })
            .collect();
        Cone { legs, cells }
    }
}

/// `legs[U] ∘ F(p)`.
fn pulled_leg(leg: &Functor, fp: &Functor) -> Functor {
    leg.after(fp)
}

/// Comparison law `ψ_{pq}(σ) = leg_V(F(p,q)σ) ∘ ψ_q(p*σ) ∘ ψ_p(σ)` and 2-cell
/// law `ψ_q(σ) = leg_U(F(ζ)σ) ∘ ψ_p(σ)`, restricted to constraints whose
/// largest arrow is at most `upto`.
fn coherence(d: &LaxDiagram, w: &FinGroupoid, legs: &[Functor], cells: &[NatTransformation], upto: usize) -> bool {
    let c = &d.index;
    let active = |xs: &[usize]| upto == usize::MAX || xs.iter().copied().max() == Some(upto);
    for (p, q) in c.composable_pairs() {
        let pq = c.comp(p, q);
        let arrows = [p, q, pq];
        if !active(&arrows) {
            continue;
        }
        let v = c.src(q);
        for s in d.values[c.tgt(p)].objects() {
            let fs = d.functors[p].obj[s];
            let rhs = w.comp_all(&[
                legs[v].arr[d.comparison(p, q).components[s]],
                cells[q].components[fs],
                cells[p].components[s],
            ]);
            if rhs != cells[pq].components[s] {
                return false;
            }
        }
    }
    for (p, q) in c.two_cells() {
        let arrows = [p, q];
        if !active(&arrows) {
            continue;
        }
        let u = c.src(p);
        let z = d.cell(p, q);
        for s in d.values[c.tgt(p)].objects() {
            if w.comp(legs[u].arr[z.components[s]], cells[p].components[s]) != cells[q].components[s] {
                return false;
            }
        }
    }
    true
}

/// All natural transformations `f ⇒ g` between functors `src -> w`:
/// a component at each root fixes the rest along a spanning tree.
fn transformations(f: &Functor, g: &Functor, src: &FinGroupoid, w: &FinGroupoid) -> Vec<NatTransformation> {
    let comps = components(src);
    let trees: Vec<Vec<Option<Arr>>> = comps.iter().map(|c| spanning_tree(src, c[0])).collect();
    let options: Vec<Vec<Arr>> = comps.iter().map(|c| w.hom(f.obj[c[0]], g.obj[c[0]]).collect()).collect();
    let mut out = Vec::new();
    if options.iter().any(|o| o.is_empty()) {
        return out;
    }
    let mut pick = vec![0usize; comps.len()];
    loop {
        let mut eta = vec![usize::MAX; src.n_objects()];
        for (k, comp) in comps.iter().enumerate() {
            let root = options[k][pick[k]];
            for &y in comp {
                let t = trees[k][y].expect("tree");
                eta[y] = w.comp_all(&[g.arr[t], root, w.inv(f.arr[t])]);
            }
        }
        let eta = NatTransformation { components: eta };
        if eta.is_natural(f, g, src, w) {
            out.push(eta);
        }
        let Some(i) = (0..pick.len()).rev().find(|&i| pick[i] + 1 < options[i].len()) else {
            return out;
        };
        pick[i] += 1;
        pick[i + 1..].iter_mut().for_each(|c| *c = 0);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConeError {
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error("Budget: cone search stopped after {nodes} nodes")]
    Budget { nodes: u64 },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Cones as objects, modifications as arrows (enumerated on demand).
#[derive(Clone, Debug)]
pub struct ConeCategory {
    pub cones: Vec<Cone>,
    pub offsets: Vec<usize>,
}

impl ConeCategory {
    pub fn n_objects(&self) -> usize {
        self.cones.len()
    }

    pub fn n_arrows(&self, w: &FinGroupoid) -> u64 {
        self.cones.iter().map(|c| tuple_count(w, &c.vertices())).sum()
    }

    pub fn index_of(&self, c: &Cone) -> Option<usize> {
        self.cones.binary_search(c).ok()
    }

    pub fn to_groupoid(&self, d: &LaxDiagram, w: &FinGroupoid, limit: u64) -> Option<FinGroupoid> {
        if self.n_arrows(w) > limit {
            return None;
        }
        let verts: Vec<Vec<Obj>> = self.cones.iter().map(Cone::vertices).collect();
        let (g, _) = materialize(w, &verts, |i, m| {
            self.index_of(&self.cones[i].act(d, w, &self.offsets, m)).expect("modifications stay among cones")
        });
        Some(g)
    }
}

pub fn cone_category(d: &LaxDiagram, w: &FinGroupoid) -> Result<ConeCategory, ConeError> {
    cone_category_with(d, w, Budget::or_env(ENUM_NODES), Exec::default())
}

pub fn cone_category_with(
    d: &LaxDiagram,
    w: &FinGroupoid,
    budget: Budget,
    exec: Exec,
) -> Result<ConeCategory, ConeError> {
    let c = &d.index;
    let legs: Vec<Vec<Functor>> = c
        .objects()
        .map(|t| enumerate_functors_with(&d.values[t], w, MapMode::All, budget, exec))
        .collect::<Result<_, _>>()?;
    let mut offsets = Vec::new();
    let mut n = 0;
    for t in c.objects() {
        offsets.push(n);
        n += d.values[t].n_objects();
    }
    let counter = AtomicU64::new(0);
    let search = Search { d, w, legs: &legs, counter: &counter, limit: budget.0 };
    let first = if c.n_objects() == 0 { Vec::new() } else { (0..legs[0].len()).collect() };
    let branches: Vec<Result<Vec<Cone>, ConeError>> = if c.n_objects() == 0 {
        vec![Ok(vec![Cone { legs: Vec::new(), cells: Vec::new() }])]
    } else {
        exec.map(&first, |&i| {
            let mut chosen = vec![legs[0][i].clone()];
            let mut out = Vec::new();
            search.legs_from(1, &mut chosen, &mut out)?;
            Ok(out)
        })
    };
    let mut cones = Vec::new();
    for b in branches {
        cones.extend(b?);
    }
    cones.sort_unstable();
    Ok(ConeCategory { cones, offsets })
}

struct Search<'a> {
    d: &'a LaxDiagram,
    w: &'a FinGroupoid,
    legs: &'a [Vec<Functor>],
    counter: &'a AtomicU64,
    limit: u64,
}

impl Search<'_> {
    fn tick(&self) -> Result<(), ConeError> {
        if self.counter.fetch_add(1, Ordering::Relaxed) >= self.limit {
            return Err(ConeError::Budget { nodes: self.limit });
        }
        Ok(())
    }

    fn legs_from(&self, t: usize, chosen: &mut Vec<Functor>, out: &mut Vec<Cone>) -> Result<(), ConeError> {
        self.tick()?;
        if t == self.d.index.n_objects() {
            let mut cells = Vec::new();
            return self.cells_from(0, chosen, &mut cells, out);
        }
        for f in &self.legs[t] {
            chosen.push(f.clone());
            self.legs_from(t + 1, chosen, out)?;
            chosen.pop();
        }
        Ok(())
    }

    fn cells_from(
        &self,
        p: usize,
        legs: &[Functor],
        cells: &mut Vec<NatTransformation>,
        out: &mut Vec<Cone>,
    ) -> Result<(), ConeError> {
        self.tick()?;
        let (d, w) = (self.d, self.w);
        let c = &d.index;
        if p == c.n_arrows() {
            out.push(Cone { legs: legs.to_vec(), cells: cells.clone() });
            return Ok(());
        }
        let (u, t) = (c.src(p), c.tgt(p));
        let pulled = pulled_leg(&legs[u], &d.functors[p]);
        let options = if c.is_identity(p) {
            let id = NatTransformation::identity(&legs[t], w);
            if id.is_natural(&legs[t], &pulled, &d.values[t], w) {
                vec![id]
            } else {
                Vec::new()
            }
        } else {
            transformations(&legs[t], &pulled, &d.values[t], w)
        };
        for eta in options {
            cells.push(eta);
            if coherence(d, w, legs, cells, p) {
                self.cells_from(p + 1, legs, cells, out)?;
            }
            cells.pop();
        }
        Ok(())
    }
}

/// The cone of an assignment: legs read off the arrow generators, cells
/// off the refinement generators.
pub fn cone_of(d: &LaxDiagram, pres: &GroupoidPresentation, w: &FinGroupoid, a: &Assignment) -> Cone {
    let c = &d.index;
    let legs = c
        .objects()
        .map(|t| {
            let v = &d.values[t];
            Functor {
                obj: v.objects().map(|x| a.vertices[pres.vertex(t, x)]).collect(),
                arr: v.arrows().map(|e| a.generators[pres.arrow_generator(t, e)]).collect(),
            }
        })
        .collect::<Vec<_>>();
    let cells = c
        .arrows()
        .map(|p| NatTransformation {
            components: d.values[c.tgt(p)]
                .objects()
                .map(|s| match pres.refine_generator(p, s) {
                    Some(g) => a.generators[g],
                    None => w.id(legs[c.tgt(p)].obj[s]),
                })
                .collect(),
        })
        .collect();
    Cone { legs, cells }
}

/// Sizes on both sides and whether the canonical functor is bijective on
/// objects and on arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalReport {
    pub hom_objects: usize,
    pub cone_objects: usize,
    pub hom_arrows: u64,
    pub cone_arrows: u64,
    /// Solutions sending a spanning forest of generators to identities.
    pub based_objects: usize,
    pub objects_bijective: bool,
    pub arrows_bijective: bool,
}

impl UniversalReport {
    pub fn is_isomorphism(&self) -> bool {
        self.objects_bijective && self.arrows_bijective
    }
}

/// Compare `Hom(hocolim F, W)` with the cone category. On arrows both
/// sides are tuples of components indexed by the same vertices, composed
/// componentwise, and the canonical functor keeps the tuple; so it is an
/// isomorphism once it is bijective on objects and every arrow lands on
/// the modification with the matching target.
pub fn universal_property_report(
    d: &LaxDiagram,
    w: &FinGroupoid,
    budget: Budget,
    exec: Exec,
) -> Result<UniversalReport, ConeError> {
    let pres = hocolim_presentation(d);
    let hom = hom_solver_with(&pres, w, budget, exec)?;
    let cones = cone_category_with(d, w, budget, exec)?;
    let image: Vec<Option<usize>> = exec.map(&hom.assignments, |a| {
        let cone = cone_of(d, &pres, w, a);
        debug_assert!(cone.legs.iter().enumerate().all(|(t, f)| f.is_functor(&d.values[t], w)));
        cones.index_of(&cone)
    });
    let mut hit = vec![false; cones.n_objects()];
    let objects_bijective = hom.n_objects() == cones.n_objects()
        && image.iter().all(|j| match j {
            Some(j) => !std::mem::replace(&mut hit[*j], true),
            None => false,
        });
    let arrows_bijective = objects_bijective
        && exec
            .map_range(hom.n_objects(), |i| arrows_match(d, &pres, w, &hom, &cones, i, image[i].expect("bijective")))
            .into_iter()
            .all(|ok| ok);
    Ok(UniversalReport {
        hom_objects: hom.n_objects(),
        cone_objects: cones.n_objects(),
        hom_arrows: hom.n_arrows(w),
        cone_arrows: cones.n_arrows(w),
        based_objects: hom.based_count(&pres, w),
        objects_bijective,
        arrows_bijective,
    })
}

fn arrows_match(
    d: &LaxDiagram,
    pres: &GroupoidPresentation,
    w: &FinGroupoid,
    hom: &HomGroupoid,
    cones: &ConeCategory,
    i: usize,
    j: usize,
) -> bool {
    let verts = &hom.assignments[i].vertices;
    if *verts != cones.cones[j].vertices() {
        return false;
    }
    let mut ok = true;
    for_each_tuple(w, verts, |m| {
        if !ok {
            return;
        }
        let target = hom.act(pres, w, i, m);
        let via_hom = cone_of(d, pres, w, &target);
        let via_cone = cones.cones[j].act(d, w, &cones.offsets, m);
        ok = via_hom == via_cone && hom.index_of(&target).is_some() && cones.index_of(&via_cone).is_some();
    });
    ok
}

pub fn universal_property_check(d: &LaxDiagram, w: &FinGroupoid) -> bool {
    universal_property_report(d, w, Budget::or_env(ENUM_NODES), Exec::default())
        .is_ok_and(|r| r.is_isomorphism())
}
