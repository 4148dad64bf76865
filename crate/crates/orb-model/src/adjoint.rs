//! The left adjoint `L` of `R`, presented as a strict coequalizer, and the
//! comparisons `Hom(L X, W) ≅ Hom_Orb(X, R W)`, `X -> R L X`, `L R W -> W`.
//!
//! `L X` glues the groupoids `X(g) × B g` along the two maps out of
//! `Orb(h, g) × X(g) × B h`: the action on `X`, and evaluation
//! `Orb(h, g) × B h -> B g`. Objects are glued by merging vertices; arrows
//! by relations on the arrows with one non-identity coordinate, which
//! generate the product.

use crate::orb::OrbCategory;
use crate::space::{equivariant, r_functor_with, OrbMap, OrbSpace, OrbSpaceError, RSpace};
use functor_calc::{categorical_equivalence, EnumError, NatTransformation};
use gpd_core::budget::ENUM_NODES;
use gpd_core::{Arr, Budget, Exec, Exhausted, FinGroupoid, Functor, Obj};
use laxcolim::{hom_solver_with, realize, GroupoidPresentation, Letter, SolveError};
use petgraph::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbError {
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error(transparent)]
    Space(#[from] OrbSpaceError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("presented groupoid not realized: {0}")]
    Realize(#[from] Exhausted),
    #[error("search budget of {nodes} nodes exhausted")]
    Budget { nodes: u64 },
}

/// `L X` with the vertex of every `(g, x)` and the generators of the
/// arrows `(ξ, 1)` and `(1_x, e)` of `X(g) × B g`.
#[derive(Clone, Debug)]
pub struct LPresentation {
    pub presentation: GroupoidPresentation,
    /// `vertex[g][x]`.
    pub vertex: Vec<Vec<usize>>,
    arrow_gen: Vec<usize>,
    loop_gen: Vec<usize>,
    orders: Vec<usize>,
}

impl LPresentation {
    pub fn arrow_generator(&self, g: usize, xi: Arr) -> usize {
        self.arrow_gen[g] + xi
    }

    pub fn loop_generator(&self, g: usize, x: Obj, e: Arr) -> usize {
        self.loop_gen[g] + x * self.orders[g] + e
    }
}

pub fn l_functor(orb: &OrbCategory, x: &OrbSpace) -> LPresentation {
    let n = orb.len();
    let mut start = Vec::with_capacity(n);
    let mut total = 0;
    for g in 0..n {
        start.push(total);
        total += x.value(g).n_objects();
    }
    let mut uf = UnionFind::<usize>::new(total);
    for h in 0..n {
        for g in 0..n {
            for phi in orb.hom(h, g).groupoid.objects() {
                for p in x.value(g).objects() {
                    uf.union(start[h] + x.act(h, g, phi, p), start[g] + p);
                }
            }
        }
    }
    // vertices numbered by their first member
    let labels = uf.into_labeling();
    let mut number = vec![usize::MAX; total];
    let mut n_vertices = 0;
    for i in 0..total {
        if number[labels[i]] == usize::MAX {
            number[labels[i]] = n_vertices;
            n_vertices += 1;
        }
    }
    let vertex: Vec<Vec<usize>> =
        (0..n).map(|g| x.value(g).objects().map(|p| number[labels[start[g] + p]]).collect()).collect();

    let orders: Vec<usize> = orb.family().iter().map(|g| g.order()).collect();
    let mut gens = Vec::new();
    let mut arrow_gen = Vec::with_capacity(n);
    let mut loop_gen = Vec::with_capacity(n);
    for g in 0..n {
        let v = x.value(g);
        arrow_gen.push(gens.len());
        for a in v.arrows() {
            gens.push((vertex[g][v.src(a)], vertex[g][v.tgt(a)], gens.len()));
        }
        loop_gen.push(gens.len());
        for p in v.objects() {
            for _ in 0..orders[g] {
                gens.push((vertex[g][p], vertex[g][p], gens.len()));
            }
        }
    }
    let mut lp = LPresentation {
        presentation: GroupoidPresentation::from_parts(0, Vec::new(), Vec::new()).expect("empty"),
        vertex,
        arrow_gen,
        loop_gen,
        orders,
    };
    let arrow = |g: usize, a: Arr| Letter::new(lp.arrow_generator(g, a));
    let lp_loop = |g: usize, p: Obj, e: Arr| Letter::new(lp.loop_generator(g, p, e));
    let mut rels: Vec<Vec<Letter>> = Vec::new();
    for g in 0..n {
        let (v, bg) = (x.value(g), orb.delooping(g));
        for a in v.arrows() {
            for &b in v.in_arrows(v.src(a)) {
                rels.push(vec![arrow(g, a), arrow(g, b), arrow(g, v.comp(a, b)).inverse()]);
            }
            for e in bg.arrows() {
                rels.push(vec![arrow(g, a), lp_loop(g, v.src(a), e), arrow(g, a).inverse(), lp_loop(g, v.tgt(a), e).inverse()]);
            }
        }
        for p in v.objects() {
            for e in bg.arrows() {
                for f in bg.arrows() {
                    rels.push(vec![lp_loop(g, p, e), lp_loop(g, p, f), lp_loop(g, p, bg.comp(e, f)).inverse()]);
                }
            }
        }
    }
    for h in 0..n {
        for g in 0..n {
            let hom = orb.hom(h, g);
            let m = &hom.groupoid;
            let v = x.value(g);
            for phi in m.objects() {
                let f = &hom.functors[phi];
                for p in v.objects() {
                    let q = x.act(h, g, phi, p);
                    // (alpha, 1, 1): the action arrow equals the evaluation loop
                    for &al in m.out_arrows(phi) {
                        let comp = hom.transformations[al].components[0];
                        rels.push(vec![arrow(h, x.act_arr(h, g, al, v.id(p))), lp_loop(g, p, comp).inverse()]);
                    }
                    // (1, 1, k)
                    for k in orb.delooping(h).arrows() {
                        rels.push(vec![lp_loop(h, q, k), lp_loop(g, p, f.arr[k]).inverse()]);
                    }
                    // (1, xi, 1)
                    for &xi in v.out_arrows(p) {
                        rels.push(vec![arrow(h, x.act_arr(h, g, m.id(phi), xi)), arrow(g, xi).inverse()]);
                    }
                }
            }
        }
    }
    lp.presentation = GroupoidPresentation::from_parts(n_vertices, gens, rels).expect("relations are loops");
    lp
}

/// Enriched natural maps `X -> Y` as a groupoid: objects are the maps,
/// arrows are modifications, i.e. families `θ_{g,x}` with
/// `θ_{h, phi* x} = phi*(θ_{g,x})`.
#[derive(Clone, Debug)]
pub struct OrbHom {
    pub maps: Vec<OrbMap>,
}

impl OrbHom {
    pub fn n_objects(&self) -> usize {
        self.maps.len()
    }

    pub fn index_of(&self, m: &OrbMap) -> Option<usize> {
        self.maps.binary_search(m).ok()
    }

    /// Every modification out of map `i`, with its target.
    pub fn modifications(&self, orb: &OrbCategory, x: &OrbSpace, y: &OrbSpace, i: usize) -> Vec<(Vec<Vec<Arr>>, usize)> {
        let m = &self.maps[i];
        let n = orb.len();
        let mut out = Vec::new();
        let empty: Vec<Vec<Option<Arr>>> = (0..n).map(|g| vec![None; x.value(g).n_objects()]).collect();
        modification_search(orb, x, y, m, empty, &mut out);
        out.into_iter()
            .map(|theta| {
                let j = self.target(orb, x, y, i, &theta).expect("modifications have targets");
                (theta, j)
            })
            .collect()
    }

    /// Target of `θ` out of map `i`, if `θ` is a modification.
    pub fn target(&self, orb: &OrbCategory, x: &OrbSpace, y: &OrbSpace, i: usize, theta: &[Vec<Arr>]) -> Option<usize> {
        let m = &self.maps[i];
        let n = orb.len();
        for g in 0..n {
            let yv = y.value(g);
            if x.value(g).objects().any(|p| yv.src(theta[g][p]) != m.levels[g].obj[p]) {
                return None;
            }
        }
        for h in 0..n {
            for g in 0..n {
                let mg = &orb.hom(h, g).groupoid;
                for phi in mg.objects() {
                    for p in x.value(g).objects() {
                        if theta[h][x.act(h, g, phi, p)] != y.act_arr(h, g, mg.id(phi), theta[g][p]) {
                            return None;
                        }
                    }
                }
            }
        }
        let levels = (0..n)
            .map(|g| {
                let (xv, yv) = (x.value(g), y.value(g));
                let t = &theta[g];
                Functor {
                    obj: t.iter().map(|&a| yv.tgt(a)).collect(),
                    arr: xv
                        .arrows()
                        .map(|a| yv.comp_all(&[t[xv.tgt(a)], m.levels[g].arr[a], yv.inv(t[xv.src(a)])]))
                        .collect(),
                }
            })
            .collect();
        self.index_of(&OrbMap { levels })
    }
}

fn modification_search(
    orb: &OrbCategory,
    x: &OrbSpace,
    y: &OrbSpace,
    m: &OrbMap,
    theta: Vec<Vec<Option<Arr>>>,
    out: &mut Vec<Vec<Vec<Arr>>>,
) {
    let n = orb.len();
    let Some((g, p)) = (0..n).flat_map(|g| (0..theta[g].len()).map(move |p| (g, p))).find(|&(g, p)| theta[g][p].is_none())
    else {
        out.push(theta.into_iter().map(|r| r.into_iter().map(|a| a.expect("assigned")).collect()).collect());
        return;
    };
    for &t in y.value(g).out_arrows(m.levels[g].obj[p]) {
        let mut next = theta.clone();
        if assign_theta(orb, x, y, &mut next, g, p, t) {
            modification_search(orb, x, y, m, next, out);
        }
    }
}

fn assign_theta(
    orb: &OrbCategory,
    x: &OrbSpace,
    y: &OrbSpace,
    theta: &mut [Vec<Option<Arr>>],
    g: usize,
    p: Obj,
    t: Arr,
) -> bool {
    let mut stack = vec![(g, p, t)];
    while let Some((g, p, t)) = stack.pop() {
        match theta[g][p] {
            Some(old) if old == t => continue,
            Some(_) => return false,
            None => theta[g][p] = Some(t),
        }
        for h in 0..orb.len() {
            let mg = &orb.hom(h, g).groupoid;
            for phi in mg.objects() {
                stack.push((h, x.act(h, g, phi, p), y.act_arr(h, g, mg.id(phi), t)));
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Var {
    Obj(usize, Obj),
    Arr(usize, Arr),
}

#[derive(Clone)]
struct MapState {
    obj: Vec<Vec<Option<Obj>>>,
    arr: Vec<Vec<Option<Arr>>>,
}

/// Enumerate `Hom_Orb(X, Y)` by backtracking on level objects and arrows,
/// closing every choice under identities, inverses, composites and the
/// action.
pub fn hom_orb(orb: &OrbCategory, x: &OrbSpace, y: &OrbSpace, budget: Budget) -> Result<OrbHom, OrbError> {
    let n = orb.len();
    let state = MapState {
        obj: (0..n).map(|g| vec![None; x.value(g).n_objects()]).collect(),
        arr: (0..n).map(|g| vec![None; x.value(g).n_arrows()]).collect(),
    };
    let mut meter = budget.meter();
    let mut maps = Vec::new();
    map_search(orb, x, y, state, &mut meter, &mut maps).map_err(|e| OrbError::Budget { nodes: e.limit })?;
    maps.sort();
    maps.dedup();
    Ok(OrbHom { maps })
}

fn map_search(
    orb: &OrbCategory,
    x: &OrbSpace,
    y: &OrbSpace,
    state: MapState,
    meter: &mut gpd_core::Meter,
    out: &mut Vec<OrbMap>,
) -> Result<(), Exhausted> {
    meter.tick()?;
    let n = orb.len();
    let next_obj = (0..n).flat_map(|g| (0..state.obj[g].len()).map(move |p| (g, p))).find(|&(g, p)| state.obj[g][p].is_none());
    let (var, candidates): (Var, Vec<usize>) = if let Some((g, p)) = next_obj {
        (Var::Obj(g, p), y.value(g).objects().collect())
    } else if let Some((g, a)) =
        (0..n).flat_map(|g| (0..state.arr[g].len()).map(move |a| (g, a))).find(|&(g, a)| state.arr[g][a].is_none())
    {
        let xv = x.value(g);
        let (s, t) = (state.obj[g][xv.src(a)].expect("objects first"), state.obj[g][xv.tgt(a)].expect("objects first"));
        (Var::Arr(g, a), y.value(g).hom(s, t).collect())
    } else {
        let levels = (0..n)
            .map(|g| Functor {
                obj: state.obj[g].iter().map(|o| o.expect("assigned")).collect(),
                arr: state.arr[g].iter().map(|a| a.expect("assigned")).collect(),
            })
            .collect();
        let m = OrbMap { levels };
        debug_assert!((0..n).all(|g| m.levels[g].is_functor(x.value(g), y.value(g))));
        debug_assert!((0..n).all(|h| (0..n).all(|g| equivariant(orb, x, y, &m, h, g))));
        out.push(m);
        return Ok(());
    };
    for c in candidates {
        let mut next = state.clone();
        if close(orb, x, y, &mut next, var, c) {
            map_search(orb, x, y, next, meter, out)?;
        }
    }
    Ok(())
}

/// Assign and propagate; `false` on a conflict.
fn close(orb: &OrbCategory, x: &OrbSpace, y: &OrbSpace, s: &mut MapState, var: Var, val: usize) -> bool {
    let n = orb.len();
    let mut stack = vec![(var, val)];
    while let Some((var, val)) = stack.pop() {
        match var {
            Var::Obj(g, p) => {
                match s.obj[g][p] {
                    Some(old) if old == val => continue,
                    Some(_) => return false,
                    None => s.obj[g][p] = Some(val),
                }
                let (xv, yv) = (x.value(g), y.value(g));
                stack.push((Var::Arr(g, xv.id(p)), yv.id(val)));
                for h in 0..n {
                    let mg = &orb.hom(h, g).groupoid;
                    for phi in mg.objects() {
                        stack.push((Var::Obj(h, x.act(h, g, phi, p)), y.act(h, g, phi, val)));
                        for &al in mg.out_arrows(phi) {
                            stack.push((Var::Arr(h, x.act_arr(h, g, al, xv.id(p))), y.act_arr(h, g, al, yv.id(val))));
                        }
                    }
                }
            }
            Var::Arr(g, a) => {
                match s.arr[g][a] {
                    Some(old) if old == val => continue,
                    Some(_) => return false,
                    None => s.arr[g][a] = Some(val),
                }
                let (xv, yv) = (x.value(g), y.value(g));
                stack.push((Var::Obj(g, xv.src(a)), yv.src(val)));
                stack.push((Var::Obj(g, xv.tgt(a)), yv.tgt(val)));
                stack.push((Var::Arr(g, xv.inv(a)), yv.inv(val)));
                for &b in xv.in_arrows(xv.src(a)) {
                    if let Some(vb) = s.arr[g][b] {
                        if yv.src(val) != yv.tgt(vb) {
                            return false;
                        }
                        stack.push((Var::Arr(g, xv.comp(a, b)), yv.comp(val, vb)));
                    }
                }
                for &b in xv.out_arrows(xv.tgt(a)) {
                    if let Some(vb) = s.arr[g][b] {
                        if yv.src(vb) != yv.tgt(val) {
                            return false;
                        }
                        stack.push((Var::Arr(g, xv.comp(b, a)), yv.comp(vb, val)));
                    }
                }
                for h in 0..n {
                    let mg = &orb.hom(h, g).groupoid;
                    for phi in mg.objects() {
                        stack.push((Var::Arr(h, x.act_arr(h, g, mg.id(phi), a)), y.act_arr(h, g, mg.id(phi), val)));
                    }
                }
            }
        }
    }
    true
}

/// Both sides of `Hom(L X, W) ≅ Hom_Orb(X, R W)` and the comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub hom_objects: usize,
    pub orb_objects: usize,
    pub hom_arrows: u64,
    pub orb_arrows: u64,
    pub objects_bijective: bool,
    pub arrows_bijective: bool,
}

impl AdjunctionReport {
    pub fn is_isomorphism(&self) -> bool {
        self.objects_bijective && self.arrows_bijective
    }
}

pub fn adjunction_check(orb: &OrbCategory, x: &OrbSpace, w: &FinGroupoid) -> Result<AdjunctionReport, OrbError> {
    adjunction_check_with(orb, x, w, Budget::or_env(ENUM_NODES), Exec::default())
}

pub fn adjunction_check_with(
    orb: &OrbCategory,
    x: &OrbSpace,
    w: &FinGroupoid,
    budget: Budget,
    exec: Exec,
) -> Result<AdjunctionReport, OrbError> {
    let n = orb.len();
    let lp = l_functor(orb, x);
    let p = &lp.presentation;
    let hs = hom_solver_with(p, w, budget, exec)?;
    let r = r_functor_with(orb, w, budget, exec)?;
    let oh = hom_orb(orb, x, &r.space, budget)?;

    // a solution read as an Orb-map, level by level
    let as_map = |a: &laxcolim::Assignment| -> Option<usize> {
        let levels = (0..n)
            .map(|g| {
                let (xv, maps) = (x.value(g), &r.maps[g]);
                let obj = xv
                    .objects()
                    .map(|q| {
                        let f = Functor {
                            obj: vec![a.vertices[lp.vertex[g][q]]],
                            arr: orb.delooping(g).arrows().map(|e| a.generators[lp.loop_generator(g, q, e)]).collect(),
                        };
                        maps.functor_index(&f)
                    })
                    .collect::<Option<Vec<_>>>()?;
                let arr = xv
                    .arrows()
                    .map(|e| {
                        let eta = NatTransformation { components: vec![a.generators[lp.arrow_generator(g, e)]] };
                        maps.arrow_index(obj[xv.src(e)], &eta)
                    })
                    .collect::<Option<Vec<_>>>()?;
                Some(Functor { obj, arr })
            })
            .collect::<Option<Vec<_>>>()?;
        oh.index_of(&OrbMap { levels })
    };
    let image: Vec<Option<usize>> = exec.map(&hs.assignments, as_map);
    let mut hit = vec![false; oh.n_objects()];
    let mut objects_bijective = hs.n_objects() == oh.n_objects();
    for i in image.iter() {
        match i {
            Some(j) if !hit[*j] => hit[*j] = true,
            _ => objects_bijective = false,
        }
    }
    let hom_arrows = hs.n_arrows(w);
    let orb_arrows: u64 = (0..oh.n_objects()).map(|i| oh.modifications(orb, x, &r.space, i).len() as u64).sum();
    let mut arrows_bijective = objects_bijective && hom_arrows == orb_arrows;
    if arrows_bijective {
        // every tuple of components acts the same way on both sides
        let ok = exec.map_range(hs.n_objects(), |i| {
            let a = &hs.assignments[i];
            let src = image[i].expect("bijective");
            let mut ok = true;
            for_each_tuple(w, &a.vertices, |c| {
                let j = hs.index_of(&hs.act(p, w, i, c)).expect("closed under conjugation");
                let theta: Option<Vec<Vec<Arr>>> = (0..n)
                    .map(|g| {
                        let m = &oh.maps[src].levels[g];
                        x.value(g)
                            .objects()
                            .map(|q| {
                                let eta = NatTransformation { components: vec![c[lp.vertex[g][q]]] };
                                r.maps[g].arrow_index(m.obj[q], &eta)
                            })
                            .collect()
                    })
                    .collect();
                ok &= theta.and_then(|t| oh.target(orb, x, &r.space, src, &t)) == image[j];
            });
            ok
        });
        arrows_bijective = ok.into_iter().all(|b| b);
    }
    Ok(AdjunctionReport {
        hom_objects: hs.n_objects(),
        orb_objects: oh.n_objects(),
        hom_arrows,
        orb_arrows,
        objects_bijective,
        arrows_bijective,
    })
}

fn for_each_tuple(w: &FinGroupoid, verts: &[Obj], mut f: impl FnMut(&[Arr])) {
    let outs: Vec<&[Arr]> = verts.iter().map(|&y| w.out_arrows(y)).collect();
    if outs.iter().any(|o| o.is_empty()) {
        return;
    }
    let mut pick = vec![0usize; outs.len()];
    let mut comps: Vec<Arr> = outs.iter().map(|o| o[0]).collect();
    loop {
        f(&comps);
        let Some(i) = (0..pick.len()).rev().find(|&i| pick[i] + 1 < outs[i].len()) else {
            return;
        };
        pick[i] += 1;
        comps[i] = outs[i][pick[i]];
        pick[i + 1..].iter_mut().zip(&mut comps[i + 1..]).zip(&outs[i + 1..]).for_each(|((p, c), o)| {
            *p = 0;
            *c = o[0];
        });
    }
}

/// Levelwise comparison of the unit `X -> R L X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitReport {
    pub equivariant: bool,
    pub levels: Vec<bool>,
}

impl UnitReport {
    pub fn holds(&self) -> bool {
        self.equivariant && self.levels.iter().all(|&b| b)
    }
}

pub fn unit_check(orb: &OrbCategory, x: &OrbSpace) -> Result<UnitReport, OrbError> {
    unit_check_with(orb, x, Budget::or_env(ENUM_NODES), Exec::default())
}

pub fn unit_check_with(orb: &OrbCategory, x: &OrbSpace, budget: Budget, exec: Exec) -> Result<UnitReport, OrbError> {
    let n = orb.len();
    let lp = l_functor(orb, x);
    let lx = realize(&lp.presentation, budget)?;
    let rlx: RSpace = r_functor_with(orb, &lx.groupoid, budget, exec)?;
    let levels: Option<Vec<Functor>> = (0..n)
        .map(|g| {
            let (xv, maps) = (x.value(g), &rlx.maps[g]);
            let obj = xv
                .objects()
                .map(|q| {
                    let f = Functor {
                        obj: vec![lp.vertex[g][q]],
                        arr: orb.delooping(g).arrows().map(|e| lx.generators[lp.loop_generator(g, q, e)]).collect(),
                    };
                    maps.functor_index(&f)
                })
                .collect::<Option<Vec<_>>>()?;
            let arr = xv
                .arrows()
                .map(|e| {
                    let eta = NatTransformation { components: vec![lx.generators[lp.arrow_generator(g, e)]] };
                    maps.arrow_index(obj[xv.src(e)], &eta)
                })
                .collect::<Option<Vec<_>>>()?;
            Some(Functor { obj, arr })
        })
        .collect();
    let Some(levels) = levels else {
        return Ok(UnitReport { equivariant: false, levels: vec![false; n] });
    };
    let unit = OrbMap { levels };
    let equivariant = crate::space::validate_map(orb, x, &rlx.space, &unit).is_ok();
    let levels = (0..n)
        .map(|g| categorical_equivalence(&unit.levels[g], x.value(g), rlx.space.value(g)).is_equivalence())
        .collect();
    Ok(UnitReport { equivariant, levels })
}

/// The counit `L R W -> W` on the realized presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounitReport {
    pub vertices: usize,
    pub components: usize,
    pub functor: bool,
    pub equivalence: bool,
}

impl CounitReport {
    pub fn holds(&self) -> bool {
        self.functor && self.equivalence
    }
}

pub fn counit_check(orb: &OrbCategory, w: &FinGroupoid) -> Result<CounitReport, OrbError> {
    counit_check_with(orb, w, Budget::or_env(ENUM_NODES), Exec::default())
}

pub fn counit_check_with(orb: &OrbCategory, w: &FinGroupoid, budget: Budget, exec: Exec) -> Result<CounitReport, OrbError> {
    let n = orb.len();
    let r = r_functor_with(orb, w, budget, exec)?;
    let lp = l_functor(orb, &r.space);
    let p = &lp.presentation;
    let lx = realize(p, budget)?;
    let mut obj = vec![usize::MAX; p.n_vertices];
    let mut images = vec![usize::MAX; p.generators.len()];
    for g in 0..n {
        let maps = &r.maps[g];
        for (q, f) in maps.functors.iter().enumerate() {
            obj[lp.vertex[g][q]] = f.obj[0];
            for e in orb.delooping(g).arrows() {
                images[lp.loop_generator(g, q, e)] = f.arr[e];
            }
        }
        for (a, eta) in maps.transformations.iter().enumerate() {
            images[lp.arrow_generator(g, a)] = eta.components[0];
        }
    }
    let counit = lx.extend(p, w, &obj, &images);
    let equivalence =
        counit.as_ref().is_some_and(|f| categorical_equivalence(f, &lx.groupoid, w).is_equivalence());
    Ok(CounitReport { vertices: p.n_vertices, components: lx.n_components(), functor: counit.is_some(), equivalence })
}
