//! Orb-spaces valued in groupoids: a groupoid per group of the family and
//! an action functor `Orb(h, g) × X(g) -> X(h)` per pair, laid out like
//! [`gpd_core::product`].

use crate::orb::OrbCategory;
use functor_calc::{
    categorical_equivalence, mapping_groupoid_with, EnumError, MappingGroupoid, NatTransformation,
};
use gpd_core::budget::ENUM_NODES;
use gpd_core::{coproduct_all, Arr, Budget, Exec, FinGroupoid, Functor, Obj};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbSpaceError {
    #[error("expected {expected} levels, found {found}")]
    Levels { expected: usize, found: usize },
    #[error("action of Orb({h},{g}) has the wrong size")]
    Shape { h: usize, g: usize },
    #[error("action of Orb({h},{g}) is not a functor")]
    NotAFunctor { h: usize, g: usize },
    #[error("the identity of Orb({g},{g}) acts non-trivially")]
    Unit { g: usize },
    #[error("the action is not associative at ({k},{h},{g})")]
    Associativity { k: usize, h: usize, g: usize },
    #[error("level {g} of the map is not a functor between the values")]
    MapLevel { g: usize },
    #[error("the map does not commute with the action of Orb({h},{g})")]
    NotEquivariant { h: usize, g: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbSpace {
    values: Vec<FinGroupoid>,
    actions: Vec<Vec<Functor>>,
}

impl OrbSpace {
    /// Check the functor laws of every action, unit and associativity.
    pub fn new(orb: &OrbCategory, values: Vec<FinGroupoid>, actions: Vec<Vec<Functor>>) -> Result<Self, OrbSpaceError> {
        let x = OrbSpace { values, actions };
        validate_orbspace(orb, &x)?;
        Ok(x)
    }

    pub fn levels(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, g: usize) -> &FinGroupoid {
        &self.values[g]
    }

    pub fn values(&self) -> &[FinGroupoid] {
        &self.values
    }

    /// The action functor of `Orb(h, g)`.
    pub fn action(&self, h: usize, g: usize) -> &Functor {
        &self.actions[h][g]
    }

    /// `phi* x` for `phi` in `Orb(h, g)` and `x` in `X(g)`.
    pub fn act(&self, h: usize, g: usize, phi: Obj, x: Obj) -> Obj {
        self.actions[h][g].obj[phi * self.values[g].n_objects() + x]
    }

    pub fn act_arr(&self, h: usize, g: usize, alpha: Arr, xi: Arr) -> Arr {
        self.actions[h][g].arr[alpha * self.values[g].n_arrows() + xi]
    }

    /// Replace one action table without checks; for building invalid
    /// inputs on purpose.
    pub fn with_action_unchecked(mut self, h: usize, g: usize, action: Functor) -> Self {
        self.actions[h][g] = action;
        self
    }
}

/// Functoriality is checked on all composable pairs; unit and
/// associativity on objects and on arrows with one non-identity
/// coordinate, which generate every product groupoid.
pub fn validate_orbspace(orb: &OrbCategory, x: &OrbSpace) -> Result<(), OrbSpaceError> {
    let n = orb.len();
    if x.values.len() != n || x.actions.len() != n || x.actions.iter().any(|r| r.len() != n) {
        return Err(OrbSpaceError::Levels { expected: n, found: x.values.len() });
    }
    for h in 0..n {
        for g in 0..n {
            let (m, v, w) = (&orb.hom(h, g).groupoid, &x.values[g], &x.values[h]);
            let a = &x.actions[h][g];
            if a.obj.len() != m.n_objects() * v.n_objects() || a.arr.len() != m.n_arrows() * v.n_arrows() {
                return Err(OrbSpaceError::Shape { h, g });
            }
            if a.obj.iter().any(|&y| y >= w.n_objects()) || a.arr.iter().any(|&y| y >= w.n_arrows()) {
                return Err(OrbSpaceError::Shape { h, g });
            }
            let functor = m.arrows().all(|al| {
                v.arrows().all(|xi| {
                    let e = x.act_arr(h, g, al, xi);
                    w.src(e) == x.act(h, g, m.src(al), v.src(xi)) && w.tgt(e) == x.act(h, g, m.tgt(al), v.tgt(xi))
                })
            }) && m.objects().all(|p| v.objects().all(|y| x.act_arr(h, g, m.id(p), v.id(y)) == w.id(x.act(h, g, p, y))))
                && m.arrows().all(|a1| {
                    m.in_arrows(m.src(a1)).iter().all(|&a2| {
                        v.arrows().all(|x1| {
                            v.in_arrows(v.src(x1)).iter().all(|&x2| {
                                x.act_arr(h, g, m.comp(a1, a2), v.comp(x1, x2))
                                    == w.comp(x.act_arr(h, g, a1, x1), x.act_arr(h, g, a2, x2))
                            })
                        })
                    })
                });
            if !functor {
                return Err(OrbSpaceError::NotAFunctor { h, g });
            }
        }
    }
    for g in 0..n {
        let (m, v) = (&orb.hom(g, g).groupoid, &x.values[g]);
        let (i, j) = (orb.identity(g), m.id(orb.identity(g)));
        if v.objects().any(|y| x.act(g, g, i, y) != y) || v.arrows().any(|a| x.act_arr(g, g, j, a) != a) {
            return Err(OrbSpaceError::Unit { g });
        }
    }
    for k in 0..n {
        for h in 0..n {
            for g in 0..n {
                if !associative(orb, x, k, h, g) {
                    return Err(OrbSpaceError::Associativity { k, h, g });
                }
            }
        }
    }
    Ok(())
}

/// `psi*(phi* x) = (phi psi)* x` for `psi` in `Orb(k, h)`, `phi` in
/// `Orb(h, g)`.
fn associative(orb: &OrbCategory, x: &OrbSpace, k: usize, h: usize, g: usize) -> bool {
    let (inner, outer, v) = (&orb.hom(k, h).groupoid, &orb.hom(h, g).groupoid, &x.values[g]);
    let lhs = |b: Arr, a: Arr, xi: Arr| x.act_arr(k, h, b, x.act_arr(h, g, a, xi));
    let rhs = |b: Arr, a: Arr, xi: Arr| x.act_arr(k, g, orb.compose_arr(k, h, g, a, b), xi);
    inner.objects().all(|psi| {
        outer.objects().all(|phi| {
            let (ib, ia) = (inner.id(psi), outer.id(phi));
            v.objects().all(|y| {
                x.act(k, h, psi, x.act(h, g, phi, y)) == x.act(k, g, orb.compose(k, h, g, phi, psi), y)
                    && inner.out_arrows(psi).iter().all(|&b| lhs(b, ia, v.id(y)) == rhs(b, ia, v.id(y)))
                    && outer.out_arrows(phi).iter().all(|&a| lhs(ib, a, v.id(y)) == rhs(ib, a, v.id(y)))
                    && v.out_arrows(y).iter().all(|&xi| lhs(ib, ia, xi) == rhs(ib, ia, xi))
            })
        })
    })
}

/// Free Orb-space on a finite set of cells per group:
/// `F(T)(h) = ⊔_g Map(B h, B g) × T(g)`, blocks ordered by `g` then cell.
#[derive(Clone, Debug)]
pub struct FreeOrbSpace {
    pub cells: Vec<usize>,
    pub space: OrbSpace,
    /// Per level, `(g, object offset, arrow offset)` of every block.
    blocks: Vec<Vec<(usize, Obj, Arr)>>,
}

impl FreeOrbSpace {
    /// Object and arrow offsets of the block of cell `s` over group `g` in
    /// level `h`.
    pub fn block(&self, h: usize, g: usize, s: usize) -> (Obj, Arr) {
        let i = self.cells[..g].iter().sum::<usize>() + s;
        let (_, o, a) = self.blocks[h][i];
        (o, a)
    }

    /// The generating object `(1_g, s)` of level `g`.
    pub fn cell(&self, orb: &OrbCategory, g: usize, s: usize) -> Obj {
        self.block(g, g, s).0 + orb.identity(g)
    }
}

/// `δ_g`: one cell over group `g`.
pub fn delta(n: usize, g: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    t[g] = 1;
    t
}

pub fn free_orbspace(orb: &OrbCategory, cells: &[usize]) -> FreeOrbSpace {
    let n = orb.len();
    assert_eq!(cells.len(), n, "one cell count per group");
    let labels: Vec<usize> = (0..n).flat_map(|g| std::iter::repeat(g).take(cells[g])).collect();
    let mut blocks = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for h in 0..n {
        let parts: Vec<FinGroupoid> = labels.iter().map(|&g| orb.hom(h, g).groupoid.clone()).collect();
        let (mut o, mut a) = (0, 0);
        blocks.push(
            parts
                .iter()
                .zip(&labels)
                .map(|(p, &g)| {
                    let b = (g, o, a);
                    o += p.n_objects();
                    a += p.n_arrows();
                    b
                })
                .collect::<Vec<_>>(),
        );
        values.push(coproduct_all(&parts));
    }
    let mut actions = Vec::with_capacity(n);
    for h in 0..n {
        let mut row = Vec::with_capacity(n);
        for g in 0..n {
            // psi in Orb(h, g) sends (phi, s) in X(g) to (phi psi, s) in X(h)
            let m = &orb.hom(h, g).groupoid;
            let vg = &values[g];
            let mut obj = vec![0; m.n_objects() * vg.n_objects()];
            let mut arr = vec![0; m.n_arrows() * vg.n_arrows()];
            for (&(c, og, ag), &(_, oh, ah)) in blocks[g].iter().zip(&blocks[h]) {
                let inner = &orb.hom(g, c).groupoid;
                for psi in m.objects() {
                    for phi in inner.objects() {
                        obj[psi * vg.n_objects() + og + phi] = oh + orb.compose(h, g, c, phi, psi);
                    }
                }
                for b in m.arrows() {
                    for a in inner.arrows() {
                        arr[b * vg.n_arrows() + ag + a] = ah + orb.compose_arr(h, g, c, a, b);
                    }
                }
            }
            row.push(Functor { obj, arr });
        }
        actions.push(row);
    }
    let space = OrbSpace { values, actions };
    debug_assert_eq!(validate_orbspace(orb, &space), Ok(()));
    FreeOrbSpace { cells: cells.to_vec(), space, blocks }
}

/// `R(W)`: `h ↦ Map(B h, W)`, acted on by precomposition.
#[derive(Clone, Debug)]
pub struct RSpace {
    pub target: FinGroupoid,
    pub maps: Vec<MappingGroupoid>,
    pub space: OrbSpace,
}

pub fn r_functor(orb: &OrbCategory, w: &FinGroupoid) -> Result<RSpace, EnumError> {
    r_functor_with(orb, w, Budget::or_env(ENUM_NODES), Exec::default())
}

pub fn r_functor_with(orb: &OrbCategory, w: &FinGroupoid, budget: Budget, exec: Exec) -> Result<RSpace, EnumError> {
    let n = orb.len();
    let maps = (0..n)
        .map(|h| mapping_groupoid_with(orb.delooping(h), w, orb.mode(), budget, exec))
        .collect::<Result<Vec<_>, _>>()?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|h| (0..n).map(move |g| (h, g))).collect();
    let flat = exec.map(&pairs, |&(h, g)| {
        let (hom, src, dst) = (orb.hom(h, g), &maps[g], &maps[h]);
        let obj = hom
            .functors
            .iter()
            .flat_map(|phi| src.functors.iter().map(move |f| dst.functor_index(&f.after(phi)).expect("precomposite")))
            .collect();
        let arr = hom
            .groupoid
            .arrows()
            .flat_map(|a| {
                let phi2 = &hom.functors[hom.groupoid.tgt(a)];
                let phi = &hom.functors[hom.groupoid.src(a)];
                src.groupoid.arrows().map(move |e| {
                    let f = &src.functors[src.groupoid.src(e)];
                    let eta =
                        NatTransformation::horizontal(&src.transformations[e], f, &hom.transformations[a], phi2, w);
                    let s = dst.functor_index(&f.after(phi)).expect("precomposite");
                    dst.arrow_index(s, &eta).expect("whiskered transformation")
                })
            })
            .collect();
        Functor { obj, arr }
    });
    let mut it = flat.into_iter();
    let actions = (0..n).map(|_| it.by_ref().take(n).collect()).collect();
    let space = OrbSpace { values: maps.iter().map(|m| m.groupoid.clone()).collect(), actions };
    debug_assert_eq!(validate_orbspace(orb, &space), Ok(()));
    Ok(RSpace { target: w.clone(), maps, space })
}

/// A natural map of Orb-spaces: one functor per level.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbMap {
    pub levels: Vec<Functor>,
}

impl OrbMap {
    pub fn identity(x: &OrbSpace) -> Self {
        OrbMap { levels: x.values.iter().map(Functor::identity).collect() }
    }
}

/// Levels are functors and commute with the actions, on objects and on
/// generating arrows.
pub fn validate_map(orb: &OrbCategory, x: &OrbSpace, y: &OrbSpace, f: &OrbMap) -> Result<(), OrbSpaceError> {
    let n = orb.len();
    if f.levels.len() != n || x.levels() != n || y.levels() != n {
        return Err(OrbSpaceError::Levels { expected: n, found: f.levels.len() });
    }
    for g in 0..n {
        if !f.levels[g].is_functor(&x.values[g], &y.values[g]) {
            return Err(OrbSpaceError::MapLevel { g });
        }
    }
    for h in 0..n {
        for g in 0..n {
            if !equivariant(orb, x, y, f, h, g) {
                return Err(OrbSpaceError::NotEquivariant { h, g });
            }
        }
    }
    Ok(())
}

pub(crate) fn equivariant(orb: &OrbCategory, x: &OrbSpace, y: &OrbSpace, f: &OrbMap, h: usize, g: usize) -> bool {
    let m = &orb.hom(h, g).groupoid;
    let v = &x.values[g];
    let (fh, fg) = (&f.levels[h], &f.levels[g]);
    m.objects().all(|phi| {
        let ia = m.id(phi);
        v.objects().all(|p| {
            fh.obj[x.act(h, g, phi, p)] == y.act(h, g, phi, fg.obj[p])
                && m.out_arrows(phi).iter().all(|&a| {
                    fh.arr[x.act_arr(h, g, a, v.id(p))] == y.act_arr(h, g, a, fg.arr[v.id(p)])
                })
                && v.out_arrows(p).iter().all(|&xi| fh.arr[x.act_arr(h, g, ia, xi)] == y.act_arr(h, g, ia, fg.arr[xi]))
        })
    })
}

/// Every level of a valid map is a categorical equivalence.
pub fn orbspace_weq(orb: &OrbCategory, x: &OrbSpace, y: &OrbSpace, f: &OrbMap) -> Result<bool, OrbSpaceError> {
    validate_map(orb, x, y, f)?;
    Ok((0..orb.len()).all(|g| categorical_equivalence(&f.levels[g], &x.values[g], &y.values[g]).is_equivalence()))
}

/// `R(f)`: postcomposition with a functor `f: W -> W'`.
pub fn r_map(orb: &OrbCategory, src: &RSpace, tgt: &RSpace, f: &Functor) -> Option<OrbMap> {
    let levels = (0..orb.len())
        .map(|g| {
            let (a, b) = (&src.maps[g], &tgt.maps[g]);
            let obj = a.functors.iter().map(|m| b.functor_index(&f.after(m))).collect::<Option<Vec<_>>>()?;
            let arr = a
                .groupoid
                .arrows()
                .map(|e| {
                    let eta = NatTransformation {
                        components: a.transformations[e].components.iter().map(|&c| f.arr[c]).collect(),
                    };
                    b.arrow_index(obj[a.groupoid.src(e)], &eta)
                })
                .collect::<Option<Vec<_>>>()?;
            Some(Functor { obj, arr })
        })
        .collect::<Option<Vec<_>>>()?;
    Some(OrbMap { levels })
}
