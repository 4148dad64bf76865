//! The orbit category: one object per group of the family, hom-groupoids
//! `Map(B H, B G)` and composition of functors, horizontal on arrows.

use functor_calc::{mapping_groupoid_with, EnumError, MappingGroupoid, NatTransformation};
use gpd_core::budget::ENUM_NODES;
use gpd_core::{delooping, Arr, Budget, Exec, FinGroup, FinGroupoid, Functor, MapMode, Obj};

/// Composition `Orb(h, g) × Orb(k, h) -> Orb(k, g)` tabulated on objects
/// and arrows, outer index first.
#[derive(Clone, Debug)]
struct Table {
    obj: Vec<Vec<Obj>>,
    arr: Vec<Vec<Arr>>,
}

#[derive(Clone, Debug)]
pub struct OrbCategory {
    family: Vec<FinGroup>,
    mode: MapMode,
    bgs: Vec<FinGroupoid>,
    homs: Vec<Vec<MappingGroupoid>>,
    identity: Vec<Obj>,
    /// `tables[(k * n + h) * n + g]`.
    tables: Vec<Table>,
}

pub fn build_orb(family: &[FinGroup], mode: MapMode) -> Result<OrbCategory, EnumError> {
    build_orb_with(family, mode, Budget::or_env(ENUM_NODES), Exec::default())
}

pub fn build_orb_with(family: &[FinGroup], mode: MapMode, budget: Budget, exec: Exec) -> Result<OrbCategory, EnumError> {
    let n = family.len();
    let bgs: Vec<FinGroupoid> = family.iter().map(delooping).collect();
    let mut homs = Vec::with_capacity(n);
    for h in &bgs {
        let row = bgs
            .iter()
            .map(|g| mapping_groupoid_with(h, g, mode, budget, exec))
            .collect::<Result<Vec<_>, _>>()?;
        homs.push(row);
    }
    let identity = bgs
        .iter()
        .enumerate()
        .map(|(g, b)| homs[g][g].functor_index(&Functor::identity(b)).expect("identity is faithful"))
        .collect();
    let tables = exec.map_range(n * n * n, |i| {
        let (k, h, g) = (i / (n * n), i / n % n, i % n);
        let (outer, inner, target) = (&homs[h][g], &homs[k][h], &homs[k][g]);
        let obj = outer
            .functors
            .iter()
            .map(|phi| {
                inner
                    .functors
                    .iter()
                    .map(|psi| target.functor_index(&phi.after(psi)).expect("composites stay in the mode"))
                    .collect()
            })
            .collect();
        let arr = outer
            .groupoid
            .arrows()
            .map(|a| {
                let phi = &outer.functors[outer.groupoid.src(a)];
                inner
                    .groupoid
                    .arrows()
                    .map(|b| {
                        let psi = &inner.functors[inner.groupoid.src(b)];
                        let psi2 = &inner.functors[inner.groupoid.tgt(b)];
                        let eta = NatTransformation::horizontal(
                            &outer.transformations[a],
                            phi,
                            &inner.transformations[b],
                            psi2,
                            &bgs[g],
                        );
                        let src = target.functor_index(&phi.after(psi)).expect("composite");
                        target.arrow_index(src, &eta).expect("horizontal composite")
                    })
                    .collect()
            })
            .collect();
        Table { obj, arr }
    });
    Ok(OrbCategory { family: family.to_vec(), mode, bgs, homs, identity, tables })
}

impl OrbCategory {
    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn family(&self) -> &[FinGroup] {
        &self.family
    }

    pub fn mode(&self) -> MapMode {
        self.mode
    }

    /// `B G` for the group at index `g`.
    pub fn delooping(&self, g: usize) -> &FinGroupoid {
        &self.bgs[g]
    }

    /// `Orb(h, g) = Map(B h, B g)`.
    pub fn hom(&self, h: usize, g: usize) -> &MappingGroupoid {
        &self.homs[h][g]
    }

    /// The identity functor as an object of `Orb(g, g)`.
    pub fn identity(&self, g: usize) -> Obj {
        self.identity[g]
    }

    fn table(&self, k: usize, h: usize, g: usize) -> &Table {
        let n = self.len();
        &self.tables[(k * n + h) * n + g]
    }

    /// `phi ∘ psi` for `phi` in `Orb(h, g)` and `psi` in `Orb(k, h)`.
    pub fn compose(&self, k: usize, h: usize, g: usize, phi: Obj, psi: Obj) -> Obj {
        self.table(k, h, g).obj[phi][psi]
    }

    /// Horizontal composite of `alpha` in `Orb(h, g)` after `beta` in
    /// `Orb(k, h)`.
    pub fn compose_arr(&self, k: usize, h: usize, g: usize, alpha: Arr, beta: Arr) -> Arr {
        self.table(k, h, g).arr[alpha][beta]
    }

    /// Unit and associativity of composition on objects and on arrows.
    pub fn check_laws(&self) -> bool {
        let n = self.len();
        let unital = (0..n).all(|h| {
            (0..n).all(|g| {
                let m = &self.homs[h][g].groupoid;
                let (ig, ih) = (self.identity[g], self.identity[h]);
                let (jg, jh) = (self.homs[g][g].groupoid.id(ig), self.homs[h][h].groupoid.id(ih));
                m.objects().all(|x| self.compose(h, g, g, ig, x) == x && self.compose(h, h, g, x, ih) == x)
                    && m.arrows().all(|a| self.compose_arr(h, g, g, jg, a) == a && self.compose_arr(h, h, g, a, jh) == a)
            })
        });
        let triples = (0..n).flat_map(|l| (0..n).flat_map(move |k| (0..n).flat_map(move |h| (0..n).map(move |g| (l, k, h, g)))));
        let associative = triples.into_iter().all(|(l, k, h, g)| {
            let (a, b, c) = (&self.homs[h][g].groupoid, &self.homs[k][h].groupoid, &self.homs[l][k].groupoid);
            a.objects().all(|x| {
                b.objects().all(|y| {
                    c.objects().all(|z| {
                        self.compose(l, k, g, self.compose(k, h, g, x, y), z)
                            == self.compose(l, h, g, x, self.compose(l, k, h, y, z))
                    })
                })
            }) && a.arrows().all(|x| {
                b.arrows().all(|y| {
                    c.arrows().all(|z| {
                        self.compose_arr(l, k, g, self.compose_arr(k, h, g, x, y), z)
                            == self.compose_arr(l, h, g, x, self.compose_arr(l, k, h, y, z))
                    })
                })
            })
        });
        let functorial = (0..n).all(|k| {
            (0..n).all(|h| {
                (0..n).all(|g| {
                    let (a, b, c) = (&self.homs[h][g].groupoid, &self.homs[k][h].groupoid, &self.homs[k][g].groupoid);
                    let ends = a.arrows().all(|x| {
                        b.arrows().all(|y| {
                            let z = self.compose_arr(k, h, g, x, y);
                            c.src(z) == self.compose(k, h, g, a.src(x), b.src(y))
                                && c.tgt(z) == self.compose(k, h, g, a.tgt(x), b.tgt(y))
                        })
                    });
                    ends && a.arrows().all(|x1| {
                        a.in_arrows(a.src(x1)).iter().all(|&x2| {
                            b.arrows().all(|y1| {
                                b.in_arrows(b.src(y1)).iter().all(|&y2| {
                                    self.compose_arr(k, h, g, a.comp(x1, x2), b.comp(y1, y2))
                                        == c.comp(self.compose_arr(k, h, g, x1, y1), self.compose_arr(k, h, g, x2, y2))
                                })
                            })
                        })
                    })
                })
            })
        });
        unital && associative && functorial
    }
}
