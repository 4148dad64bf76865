//! Contractibility of conjugation fibers and the comparison
//! `Orb_G <- O -> Orb`.

use crate::aux::{aux_category, AuxCategory};
use crate::orbit::{check_family, conjugate_into, orbit_category, EquivariantError, OrbitCategory, Subgroup};
use functor_calc::{categorical_equivalence, NatTransformation};
use gpd_core::budget::ENUM_NODES;
use gpd_core::{homomorphisms, unit_groupoid, Budget, Exec, FinGroup, Functor, MapMode};
use orb_model::{build_orb_with, OrbCategory};

/// `Ad(x)|_H : h ↦ x⁻¹ h x` in the coordinates of the subgroups `H`, `K`.
fn ad(g: &FinGroup, h: &[usize], k: &[usize], x: usize) -> Vec<usize> {
    h.iter().map(|&a| k.binary_search(&g.mul(g.mul(g.inv(x), a), x)).expect("H^x ⊂ K")).collect()
}

fn abstract_group(g: &FinGroup, h: &[usize]) -> FinGroup {
    g.subgroup(h).expect("checked subgroup")
}

/// Every homomorphism `H -> K` allowed by the mode is `Ad(x)|_H` for
/// exactly one `x ∈ G`.
pub fn f_contractible_check(g: &FinGroup, family: &[Subgroup], mode: MapMode) -> Result<bool, EquivariantError> {
    let family = check_family(g, family)?;
    let mut meter = Budget::or_env(ENUM_NODES).meter();
    for h in &family {
        for k in &family {
            let homs = homomorphisms(&abstract_group(g, h), &abstract_group(g, k), mode == MapMode::Faithful, &mut meter)?;
            let mut fiber = vec![0usize; homs.len()];
            for x in (0..g.order()).filter(|&x| conjugate_into(g, h, x, k)) {
                match homs.binary_search(&ad(g, h, k, x)) {
                    Ok(i) => fiber[i] += 1,
                    Err(_) => return Ok(false),
                }
            }
            if fiber.iter().any(|&n| n != 1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Both comparison functors on one hom-groupoid `O(H, K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub h: usize,
    pub k: usize,
    pub aux_objects: usize,
    pub orbit_homs: usize,
    pub orb_objects: usize,
    pub orb_components: usize,
    pub to_orbit: bool,
    pub to_orb: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TvcReport {
    pub pairs: Vec<PairReport>,
    /// Both functors respect composition on objects and generating arrows.
    pub functorial: bool,
    pub orbit_pi0_surjective: bool,
    pub orb_pi0_surjective: bool,
}

impl TvcReport {
    pub fn to_orbit_equivalence(&self) -> bool {
        self.orbit_pi0_surjective && self.pairs.iter().all(|p| p.to_orbit)
    }

    pub fn to_orb_equivalence(&self) -> bool {
        self.orb_pi0_surjective && self.pairs.iter().all(|p| p.to_orb)
    }

    pub fn holds(&self) -> bool {
        self.functorial && self.to_orbit_equivalence() && self.to_orb_equivalence()
    }
}

/// Requires the family to be F-contractible; the abstract family of `Orb`
/// is the family itself, each subgroup a group in its own right.
pub fn tvc_compare(g: &FinGroup, family: &[Subgroup], mode: MapMode) -> Result<TvcReport, EquivariantError> {
    tvc_compare_with(g, family, mode, Exec::default())
}

pub fn tvc_compare_with(g: &FinGroup, family: &[Subgroup], mode: MapMode, exec: Exec) -> Result<TvcReport, EquivariantError> {
    if !f_contractible_check(g, family, mode)? {
        return Err(EquivariantError::PreconditionFailed(format!("family is not F-contractible in mode {mode}")));
    }
    comparison(g, family, mode, exec)
}

/// The comparison without the contractibility precondition.
pub fn comparison(g: &FinGroup, family: &[Subgroup], mode: MapMode, exec: Exec) -> Result<TvcReport, EquivariantError> {
    let orbit = orbit_category(g, family)?;
    let aux = aux_category(g, family)?;
    let groups: Vec<FinGroup> = orbit.family.iter().map(|h| abstract_group(g, h)).collect();
    let orb = build_orb_with(&groups, mode, Budget::or_env(ENUM_NODES), exec)?;
    let n = orbit.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|h| (0..n).map(move |k| (h, k))).collect();
    let maps: Vec<(Functor, Option<Functor>)> = exec.map(&pairs, |&(h, k)| (to_orbit(&orbit, &aux, h, k), to_orb(&orb, &aux, h, k)));
    let report = pairs
        .iter()
        .zip(&maps)
        .map(|(&(h, k), (fo, fb))| {
            let a = &aux.hom(h, k).groupoid;
            let target = &orb.hom(h, k).groupoid;
            PairReport {
                h,
                k,
                aux_objects: a.n_objects(),
                orbit_homs: orbit.hom(h, k).len(),
                orb_objects: target.n_objects(),
                orb_components: gpd_core::components(target).len(),
                to_orbit: categorical_equivalence(fo, a, &unit_groupoid(orbit.hom(h, k).len())).is_equivalence(),
                to_orb: fb.as_ref().is_some_and(|f| categorical_equivalence(f, a, target).is_equivalence()),
            }
        })
        .collect();
    let functorial = maps.iter().all(|(_, fb)| fb.is_some()) && respects_composition(&orbit, &aux, &orb, &maps);
    Ok(TvcReport {
        pairs: report,
        functorial,
        orbit_pi0_surjective: pi0_surjective_orbit(&orbit),
        orb_pi0_surjective: pi0_surjective_orb(&orb),
    })
}

/// `O(H, K) -> Orb_G(H, K)`, `x ↦ xK`, onto the discrete groupoid on the
/// hom-set.
fn to_orbit(orbit: &OrbitCategory, aux: &AuxCategory, h: usize, k: usize) -> Functor {
    let a = aux.hom(h, k);
    let homs = orbit.hom(h, k);
    let obj: Vec<usize> = a
        .elements
        .iter()
        .map(|&x| homs.binary_search(&orbit.coset(k, x)).expect("xK is a map"))
        .collect();
    let arr = a.groupoid.arrows().map(|e| obj[a.groupoid.src(e)]).collect();
    Functor { obj, arr }
}

/// `O(H, K) -> Map(B H, B K)`, `x ↦ Ad(x)`, `(x, k) ↦ k⁻¹`.
fn to_orb(orb: &OrbCategory, aux: &AuxCategory, h: usize, k: usize) -> Option<Functor> {
    let g = &aux.group;
    let (hs, ks) = (&aux.family[h], &aux.family[k]);
    let a = aux.hom(h, k);
    let hom = orb.hom(h, k);
    let obj = a
        .elements
        .iter()
        .map(|&x| hom.functor_index(&Functor { obj: vec![0], arr: ad(g, hs, ks, x) }))
        .collect::<Option<Vec<_>>>()?;
    let m = ks.len();
    let arr = a
        .groupoid
        .arrows()
        .map(|e| {
            let c = ks.binary_search(&g.inv(ks[e % m])).expect("K is a subgroup");
            hom.arrow_index(obj[e / m], &NatTransformation { components: vec![c] })
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Functor { obj, arr })
}

fn respects_composition(orbit: &OrbitCategory, aux: &AuxCategory, orb: &OrbCategory, maps: &[(Functor, Option<Functor>)]) -> bool {
    let n = orbit.len();
    let g = &aux.group;
    let at = |h: usize, k: usize| &maps[h * n + k];
    (0..n).all(|h| {
        (0..n).all(|k| {
            (0..n).all(|l| {
                let (ahk, akl) = (aux.hom(h, k), aux.hom(k, l));
                let (ohk, okl, ohl) = (&at(h, k).0, &at(k, l).0, &at(h, l).0);
                let (Some(bhk), Some(bkl), Some(bhl)) = (&at(h, k).1, &at(k, l).1, &at(h, l).1) else {
                    return false;
                };
                let homs = (orbit.hom(h, k), orbit.hom(k, l), orbit.hom(h, l));
                ahk.groupoid.objects().all(|i| {
                    akl.groupoid.objects().all(|j| {
                        let (x, y) = (ahk.elements[i], akl.elements[j]);
                        let c = aux.compose(h, l, x, y);
                        let on_orbit = homs.2[ohl.obj[c]]
                            == orbit.compose(k, l, homs.1[okl.obj[j]], homs.0[ohk.obj[i]]);
                        let on_orb = bhl.obj[c] == orb.compose(h, k, l, bkl.obj[j], bhk.obj[i]);
                        // generating arrows (x, a) ∘ (y, 1) and (x, 1) ∘ (y, b)
                        // generating composites: (x, a)(y, 1) = (xy, y⁻¹ a y)
                        // and (x, 1)(y, b) = (xy, b)
                        let (kk, ll) = (&aux.family[k], &aux.family[l]);
                        let on_arrows = ahk.groupoid.out_arrows(i).iter().all(|&al| {
                            let a_elt = kk[al % kk.len()];
                            let conj = g.mul(g.mul(g.inv(y), a_elt), y);
                            let comp = c * ll.len() + ll.binary_search(&conj).expect("K^y ⊂ L");
                            bhl.arr[comp] == orb.compose_arr(h, k, l, bkl.arr[akl.groupoid.id(j)], bhk.arr[al])
                        }) && akl.groupoid.out_arrows(j).iter().all(|&be| {
                            let comp = c * ll.len() + be % ll.len();
                            bhl.arr[comp] == orb.compose_arr(h, k, l, bkl.arr[be], bhk.arr[ahk.groupoid.id(i)])
                        });
                        on_orbit && on_orb && on_arrows
                    })
                })
            })
        })
    })
}

/// Every object is in the image; the functor is the identity on objects.
fn pi0_surjective_orbit(orbit: &OrbitCategory) -> bool {
    (0..orbit.len()).all(|h| orbit.hom(h, h).contains(&orbit.identity(h)))
}

fn pi0_surjective_orb(orb: &OrbCategory) -> bool {
    (0..orb.len()).all(|h| orb.hom(h, h).groupoid.objects().any(|p| p == orb.identity(h)))
}
