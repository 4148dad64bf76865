//! Cocycles on restricted groupoids and Hilsum–Skandalis bundles, with the
//! constructions passing between them.

use crate::bundle::{validate_bundle, BundleData, PrincipalBundle};
use functor_calc::{find_nat_iso, NatTransformation};
use gpd_core::{
    restriction, shear_inverse, unit_groupoid, ActionError, Arr, FinGroupoid, Functor,
    FunctorError, GSet, MapMode, NotACover, NotPrincipal, Obj, Restricted,
};
use gpd_core::structure::{components, spanning_tree};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CocycleError {
    #[error(transparent)]
    Cover(#[from] NotACover),
    #[error("cocycle functor invalid: {0}")]
    Functor(#[from] FunctorError),
    #[error("cocycle functor is not faithful")]
    NotFaithful,
}

/// A cover `U -> H_0` with a functor `H_U -> G`.
#[derive(Clone, Debug)]
pub struct Cocycle {
    h: FinGroupoid,
    g: FinGroupoid,
    restricted: Restricted,
    functor: Functor,
    mode: MapMode,
}

impl Cocycle {
    pub fn new(
        h: &FinGroupoid,
        g: &FinGroupoid,
        cover: &[Obj],
        functor: Functor,
        mode: MapMode,
    ) -> Result<Self, CocycleError> {
        let restricted = restriction(h, cover)?;
        functor.check(&restricted.groupoid, g)?;
        if !functor.allowed(&restricted.groupoid, mode) {
            return Err(CocycleError::NotFaithful);
        }
        Ok(Cocycle { h: h.clone(), g: g.clone(), restricted, functor, mode })
    }

    /// A functor `H -> G` seen as a cocycle on the identity cover.
    pub fn from_functor(
        h: &FinGroupoid,
        g: &FinGroupoid,
        f: &Functor,
        mode: MapMode,
    ) -> Result<Self, CocycleError> {
        let cover: Vec<Obj> = h.objects().collect();
        let r = restriction(h, &cover)?;
        let arr = r.triples.iter().map(|&(_, a, _)| f.arr[a]).collect();
        Cocycle::new(h, g, &cover, Functor { obj: f.obj.clone(), arr }, mode)
    }

    pub fn base(&self) -> &FinGroupoid {
        &self.h
    }

    pub fn target(&self) -> &FinGroupoid {
        &self.g
    }

    pub fn cover(&self) -> &[Obj] {
        &self.restricted.cover
    }

    pub fn restricted(&self) -> &Restricted {
        &self.restricted
    }

    pub fn functor(&self) -> &Functor {
        &self.functor
    }

    pub fn mode(&self) -> MapMode {
        self.mode
    }

    pub fn has_identity_cover(&self) -> bool {
        self.cover().iter().enumerate().all(|(u, &x)| u == x) && self.cover().len() == self.h.n_objects()
    }

    /// The functor `H -> G` of a cocycle on the identity cover.
    pub fn as_functor(&self) -> Option<Functor> {
        self.has_identity_cover().then(|| Functor {
            obj: self.functor.obj.clone(),
            arr: self
                .h
                .arrows()
                .map(|a| self.functor.arr[self.restricted.arrow(self.h.src(a), a, self.h.tgt(a))])
                .collect(),
        })
    }
}

/// A bundle over `base` points glued from trivial pieces: `cover` sends each
/// point of `U` to the base and `transitions` is a functor from the relative
/// pair groupoid `U ×_T U` (arrows `(u, v)` ordered by `(u, v)`) to the
/// structure groupoid. Gluing data that is not a functor is refused.
pub fn glue(
    structure: &FinGroupoid,
    base: usize,
    cover: &[Obj],
    transitions: Functor,
) -> Result<PrincipalBundle, CocycleError> {
    let c = Cocycle::new(&unit_groupoid(base), structure, cover, transitions, MapMode::All)?;
    Ok(cocycle_to_hs(&c).to_principal())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HsError {
    #[error("left action: {0}")]
    Left(ActionError),
    #[error("right action: {0}")]
    Right(ActionError),
    #[error("anchor lengths differ from the total set")]
    Shape,
    #[error("right action by arrow {1} moves the left anchor of point {0}")]
    RightMovesAnchor(usize, Arr),
    #[error("left action by arrow {1} moves the right anchor of point {0}")]
    LeftMovesAnchor(usize, Arr),
    #[error("actions do not commute at point {point}")]
    NotCommuting { point: usize },
    #[error("not principal over the right base: {0}")]
    NotPrincipal(NotPrincipal),
}

/// A bispace `G ⟲ P ⟳ H`: left `G`-action, right `H`-action, commuting, with
/// `P -> H_0` a principal `G`-bundle.
///
/// The right action is stored as the left action `h·p := p·h⁻¹` of `H`,
/// anchored at the right anchor.
#[derive(Clone, Debug)]
pub struct HSBundle {
    g: FinGroupoid,
    h: FinGroupoid,
    left: GSet,
    right: GSet,
    divide: HashMap<(usize, usize), Arr>,
}

impl HSBundle {
    /// `right(p, k)` is `p·k`, defined when the right anchor of `p` is the
    /// target of `k`; it lands over the source of `k`.
    pub fn new(
        g: &FinGroupoid,
        h: &FinGroupoid,
        left: GSet,
        right_anchor: Vec<Obj>,
        right: impl Fn(usize, Arr) -> usize,
    ) -> Result<Self, HsError> {
        if right_anchor.len() != left.carrier() {
            return Err(HsError::Shape);
        }
        left.validate(g).map_err(HsError::Left)?;
        let r = GSet::new(h, right_anchor, |k, p| right(p, h.inv(k)));
        r.validate(h).map_err(HsError::Right)?;
        let n = left.carrier();
        for p in 0..n {
            for &k in h.out_arrows(r.anchor(p)) {
                if left.anchor(r.act(k, p)) != left.anchor(p) {
                    return Err(HsError::RightMovesAnchor(p, k));
                }
                for &a in g.out_arrows(left.anchor(p)) {
                    if left.act(a, r.act(k, p)) != r.act(k, left.act(a, p)) {
                        return Err(HsError::NotCommuting { point: p });
                    }
                }
            }
            for &a in g.out_arrows(left.anchor(p)) {
                if r.anchor(left.act(a, p)) != r.anchor(p) {
                    return Err(HsError::LeftMovesAnchor(p, a));
                }
            }
        }
        let divide = shear_inverse(g, &left, h.n_objects(), r.anchors()).map_err(HsError::NotPrincipal)?;
        Ok(HSBundle { g: g.clone(), h: h.clone(), left, right: r, divide })
    }

    /// A principal bundle over a set as a bundle on the unit groupoid.
    pub fn from_principal(p: &PrincipalBundle) -> Self {
        HSBundle::new(
            p.structure(),
            &unit_groupoid(p.base()),
            p.total().clone(),
            p.proj().to_vec(),
            |q, _| q,
        )
        .expect("a principal bundle over a set is a bundle on its unit groupoid")
    }

    pub fn structure(&self) -> &FinGroupoid {
        &self.g
    }

    pub fn base(&self) -> &FinGroupoid {
        &self.h
    }

    pub fn len(&self) -> usize {
        self.left.carrier()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn left_anchor(&self, p: usize) -> Obj {
        self.left.anchor(p)
    }

    pub fn right_anchor(&self, p: usize) -> Obj {
        self.right.anchor(p)
    }

    pub fn act_left(&self, a: Arr, p: usize) -> usize {
        self.left.act(a, p)
    }

    /// `p·k`.
    pub fn act_right(&self, p: usize, k: Arr) -> usize {
        self.right.act(self.h.inv(k), p)
    }

    /// The structure arrow taking `p` to `q` in one fibre.
    pub fn divide(&self, q: usize, p: usize) -> Option<Arr> {
        self.divide.get(&(q, p)).copied()
    }

    pub fn fibre(&self, x: Obj) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.right.anchor(p) == x).collect()
    }

    /// Smallest point over each object of the base.
    pub fn canonical_section(&self) -> Vec<usize> {
        let mut s = vec![usize::MAX; self.h.n_objects()];
        for p in (0..self.len()).rev() {
            s[self.right.anchor(p)] = p;
        }
        s
    }

    /// Every automorphism group of the base acts faithfully on its fibre.
    pub fn is_faithful(&self) -> bool {
        self.h.objects().all(|x| {
            let fibre = self.fibre(x);
            self.h
                .aut(x)
                .into_iter()
                .filter(|&k| !self.h.is_identity(k))
                .all(|k| fibre.iter().any(|&p| self.act_right(p, k) != p))
        })
    }

    /// The underlying principal bundle over the objects of the base.
    pub fn to_principal(&self) -> PrincipalBundle {
        validate_bundle(BundleData {
            structure: self.g.clone(),
            total: self.left.clone(),
            base: self.h.n_objects(),
            proj: self.right.anchors().to_vec(),
        })
        .expect("validated on construction")
    }

    /// `P -> G_0` is also a principal `H`-bundle.
    pub fn is_biprincipal(&self) -> bool {
        shear_inverse(&self.h, &self.right, self.g.n_objects(), self.left.anchors()).is_ok()
    }

    /// Gauge groupoid of `P` as a `G`-bundle over `H_0`.
    pub fn left_gauge(&self) -> FinGroupoid {
        self.to_principal().gauge()
    }

    /// Gauge groupoid of `P` as an `H`-bundle over `G_0`, when biprincipal.
    pub fn right_gauge(&self) -> Option<FinGroupoid> {
        gpd_core::gauge_groupoid(&self.h, &self.right, self.g.n_objects(), self.left.anchors()).ok()
    }
}

/// Descend the trivial bundle `G_1 ×_{G_0} U` along the cover. Also returns,
/// for each point, the representative `(u, a)` with `u` least in its fibre.
pub(crate) fn descend(c: &Cocycle) -> (HSBundle, Vec<(usize, Arr)>) {
    let (h, g, r, f) = (&c.h, &c.g, &c.restricted, &c.functor);
    let mut least = vec![usize::MAX; h.n_objects()];
    for (u, &x) in r.cover.iter().enumerate().rev() {
        least[x] = u;
    }
    let mut reps = Vec::new();
    for (u, &x) in r.cover.iter().enumerate() {
        if least[x] == u {
            reps.extend(g.out_arrows(f.obj[u]).iter().map(|&a| (u, a)));
        }
    }
    let index: HashMap<(usize, Arr), usize> =
        reps.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let left = GSet::new(g, reps.iter().map(|&(_, a)| g.tgt(a)).collect(), |b, i| {
        let (u, a) = reps[i];
        index[&(u, g.comp(b, a))]
    });
    let right_anchor = reps.iter().map(|&(u, _)| r.cover[u]).collect();
    // (u, a)·k = (u', a ∘ F(u' --k--> u)) for k: y -> x and u' least over y
    let right = |i: usize, k: Arr| {
        let (u, a) = reps[i];
        let v = least[h.src(k)];
        index[&(v, g.comp(a, f.arr[r.arrow(v, k, u)]))]
    };
    let b = HSBundle::new(g, h, left, right_anchor, right)
        .expect("a cocycle descends to a bundle on its base");
    (b, reps)
}

/// The bundle on `H` classified by a cocycle. The cocycle square for the
/// induced `α` is verified on construction.
pub fn cocycle_to_hs(c: &Cocycle) -> HSBundle {
    descend(c).0
}

/// [`cocycle_to_hs`] together with the label `(u, a)` of every point:
/// `u` is the least cover point in its fibre and `a` an arrow out of `F(u)`.
pub fn cocycle_to_hs_points(c: &Cocycle) -> (HSBundle, Vec<(usize, Arr)>) {
    descend(c)
}

/// The cocycle of a bundle on the identity cover, trivialized by the
/// smallest point of every fibre. Faithful bundles give faithful cocycles.
pub fn hs_to_cocycle(b: &HSBundle) -> Cocycle {
    let (h, g) = (&b.h, &b.g);
    let s = b.canonical_section();
    let cover: Vec<Obj> = h.objects().collect();
    let r = restriction(h, &cover).expect("identity cover");
    let obj = s.iter().map(|&p| b.left_anchor(p)).collect();
    // k: y -> x gives s(x)·k = F(k)·s(y)
    let arr = r
        .triples
        .iter()
        .map(|&(y, k, x)| b.divide(b.act_right(s[x], k), s[y]).expect("same fibre"))
        .collect();
    let mode = if b.is_faithful() { MapMode::Faithful } else { MapMode::All };
    Cocycle::new(h, g, &cover, Functor { obj, arr }, mode).expect("the cocycle of a bundle is a functor")
}

/// A bundle isomorphism: a bijection of total sets over both bases that
/// commutes with both actions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BundleIso {
    pub map: Vec<usize>,
}

impl BundleIso {
    pub fn verify(&self, a: &HSBundle, b: &HSBundle) -> bool {
        let m = &self.map;
        m.len() == a.len()
            && b.len() == a.len()
            && {
                let mut seen = vec![false; b.len()];
                m.iter().all(|&q| q < b.len() && !std::mem::replace(&mut seen[q], true))
            }
            && (0..a.len()).all(|p| {
                a.left_anchor(p) == b.left_anchor(m[p])
                    && a.right_anchor(p) == b.right_anchor(m[p])
                    && a.g.out_arrows(a.left_anchor(p)).iter().all(|&x| m[a.act_left(x, p)] == b.act_left(x, m[p]))
                    && a.h.in_arrows(a.right_anchor(p)).iter().all(|&k| m[a.act_right(p, k)] == b.act_right(m[p], k))
            })
    }

    pub fn after(&self, first: &BundleIso) -> BundleIso {
        BundleIso { map: first.map.iter().map(|&p| self.map[p]).collect() }
    }

    pub fn inverse(&self) -> BundleIso {
        let mut map = vec![0; self.map.len()];
        for (p, &q) in self.map.iter().enumerate() {
            map[q] = p;
        }
        BundleIso { map }
    }
}

/// All isomorphisms `a -> b`, in lexicographic order of their tables. An
/// isomorphism is fixed by the image of one point per component of the base.
pub fn bundle_isos(a: &HSBundle, b: &HSBundle) -> Vec<BundleIso> {
    if !same_shape(a, b) {
        return Vec::new();
    }
    let s = a.canonical_section();
    let mut per_component: Vec<Vec<Vec<(usize, usize)>>> = Vec::new();
    for comp in components(&a.h) {
        let root = comp[0];
        let tree = spanning_tree(&a.h, root);
        let p0 = s[root];
        let mut options = Vec::new();
        for q0 in b.fibre(root) {
            if b.left_anchor(q0) != a.left_anchor(p0) {
                continue;
            }
            // G-equivariance over the root, then transport along the tree
            let mut part = Vec::new();
            for &x in a.g.out_arrows(a.left_anchor(p0)) {
                let (p, q) = (a.act_left(x, p0), b.act_left(x, q0));
                for &y in &comp {
                    let k = a.h.inv(tree[y].expect("tree"));
                    part.push((a.act_right(p, k), b.act_right(q, k)));
                }
            }
            part.sort_unstable();
            options.push(part);
        }
        per_component.push(options);
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; per_component.len()];
    if per_component.iter().any(|o| o.is_empty()) {
        return out;
    }
    loop {
        let mut map = vec![usize::MAX; a.len()];
        for (c, &i) in pick.iter().enumerate() {
            for &(p, q) in &per_component[c][i] {
                map[p] = q;
            }
        }
        let iso = BundleIso { map };
        if iso.verify(a, b) {
            out.push(iso);
        }
        let Some(i) = (0..pick.len()).rev().find(|&i| pick[i] + 1 < per_component[i].len()) else {
            break;
        };
        pick[i] += 1;
        pick[i + 1..].iter_mut().for_each(|c| *c = 0);
    }
    out.sort();
    out
}

/// Some isomorphism `a -> b`, searched component by component.
pub fn bundle_iso(a: &HSBundle, b: &HSBundle) -> Option<BundleIso> {
    if !same_shape(a, b) {
        return None;
    }
    let s = a.canonical_section();
    let mut map = vec![usize::MAX; a.len()];
    for comp in components(&a.h) {
        let root = comp[0];
        let tree = spanning_tree(&a.h, root);
        let p0 = s[root];
        let found = b.fibre(root).into_iter().filter(|&q0| b.left_anchor(q0) == a.left_anchor(p0)).find_map(|q0| {
            let mut part = Vec::new();
            for &x in a.g.out_arrows(a.left_anchor(p0)) {
                let (p, q) = (a.act_left(x, p0), b.act_left(x, q0));
                for &y in &comp {
                    let k = a.h.inv(tree[y].expect("tree"));
                    part.push((a.act_right(p, k), b.act_right(q, k)));
                }
            }
            component_consistent(a, b, &comp, &part).then_some(part)
        })?;
        for (p, q) in found {
            map[p] = q;
        }
    }
    let iso = BundleIso { map };
    iso.verify(a, b).then_some(iso)
}

fn same_shape(a: &HSBundle, b: &HSBundle) -> bool {
    a.g == b.g && a.h == b.h && a.len() == b.len()
}

fn component_consistent(a: &HSBundle, b: &HSBundle, comp: &[Obj], part: &[(usize, usize)]) -> bool {
    let m: HashMap<usize, usize> = part.iter().copied().collect();
    let fibres: usize = comp.iter().map(|&x| a.fibre(x).len()).sum();
    if m.len() != fibres || part.iter().any(|&(p, q)| m[&p] != q) {
        return false;
    }
    m.iter().all(|(&p, &q)| {
        a.right_anchor(p) == b.right_anchor(q)
            && a.left_anchor(p) == b.left_anchor(q)
            && a.g.out_arrows(a.left_anchor(p)).iter().all(|&x| m.get(&a.act_left(x, p)) == Some(&b.act_left(x, q)))
            && a.h.in_arrows(a.right_anchor(p)).iter().all(|&k| m.get(&a.act_right(p, k)) == Some(&b.act_right(q, k)))
    })
}

/// Two cocycles are isomorphic when their pullbacks to the common
/// refinement `U ×_{H_0} V` are naturally isomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleIso {
    /// Objects of the refinement: pairs `(u, v)` over the same object.
    pub refinement: Vec<(usize, usize)>,
    pub transformation: NatTransformation,
}

pub fn cocycle_iso(c1: &Cocycle, c2: &Cocycle) -> Option<CocycleIso> {
    if c1.h != c2.h || c1.g != c2.g {
        return None;
    }
    let (r1, r2) = (&c1.restricted, &c2.restricted);
    let refinement: Vec<(usize, usize)> = (0..r1.cover.len())
        .flat_map(|u| {
            (0..r2.cover.len())
                .filter(move |&v| r1.cover[u] == r2.cover[v])
                .map(move |v| (u, v))
        })
        .collect();
    let cover: Vec<Obj> = refinement.iter().map(|&(u, _)| r1.cover[u]).collect();
    let w = restriction(&c1.h, &cover).ok()?;
    let pull = |which: usize| {
        let (r, f) = if which == 0 { (r1, &c1.functor) } else { (r2, &c2.functor) };
        let pick = |i: usize| if which == 0 { refinement[i].0 } else { refinement[i].1 };
        Functor {
            obj: (0..refinement.len()).map(|i| f.obj[pick(i)]).collect(),
            arr: w.triples.iter().map(|&(i, k, j)| f.arr[r.arrow(pick(i), k, pick(j))]).collect(),
        }
    };
    let (f1, f2) = (pull(0), pull(1));
    let transformation = find_nat_iso(&f1, &f2, &w.groupoid, &c1.g)?;
    Some(CocycleIso { refinement, transformation })
}
