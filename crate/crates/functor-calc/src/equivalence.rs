//! Categorical equivalence of finite groupoids.

use crate::NatTransformation;
use gpd_core::{components, spanning_tree, Arr, FinGroupoid, Functor};

/// An explicit inverse with unit `id ⇒ G∘F` and counit `F∘G ⇒ id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub inverse: Functor,
    pub unit: NatTransformation,
    pub counit: NatTransformation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceVerdict {
    pub fully_faithful: bool,
    pub essentially_surjective: bool,
    pub witness: Option<Equivalence>,
}

impl EquivalenceVerdict {
    pub fn is_equivalence(&self) -> bool {
        self.witness.is_some()
    }
}

/// Decide whether `f: src -> tgt` is an equivalence. On success the
/// inverse sends each target object `y` to the smallest `x` with
/// `f(x) = y` (counit component the identity), or failing that to the
/// smallest `x` with an arrow `f(x) -> y`, using the smallest such arrow.
pub fn categorical_equivalence(f: &Functor, src: &FinGroupoid, tgt: &FinGroupoid) -> EquivalenceVerdict {
    let fully_faithful = src.objects().all(|x| {
        src.objects().all(|y| {
            let mut image: Vec<Arr> = src.hom(x, y).map(|a| f.arr[a]).collect();
            let n = image.len();
            image.sort_unstable();
            image.dedup();
            image.len() == n && n == tgt.hom(f.obj[x], f.obj[y]).count()
        })
    });
    let counit: Vec<Option<Arr>> = tgt
        .objects()
        .map(|y| match f.obj.contains(&y) {
            true => Some(tgt.id(y)),
            false => src.objects().find_map(|x| tgt.hom(f.obj[x], y).next()),
        })
        .collect();
    let essentially_surjective = counit.iter().all(Option::is_some);
    let witness = (fully_faithful && essentially_surjective).then(|| {
        let eps: Vec<Arr> = counit.into_iter().map(Option::unwrap).collect();
        let pre = |y| src.objects().find(|&x| f.obj[x] == tgt.src(eps[y])).unwrap();
        let g_obj: Vec<usize> = tgt.objects().map(pre).collect();
        // lift b: y -> y' to the unique a with f(a) = ε_{y'}⁻¹ b ε_y
        let lift = |x: usize, x2: usize, want: Arr| src.hom(x, x2).find(|&a| f.arr[a] == want).unwrap();
        let g_arr = tgt
            .arrows()
            .map(|b| {
                let (y, y2) = (tgt.src(b), tgt.tgt(b));
                lift(g_obj[y], g_obj[y2], tgt.comp_all(&[tgt.inv(eps[y2]), b, eps[y]]))
            })
            .collect();
        let inverse = Functor { obj: g_obj, arr: g_arr };
        let unit = src
            .objects()
            .map(|x| lift(x, inverse.obj[f.obj[x]], tgt.inv(eps[f.obj[x]])))
            .collect();
        let e = Equivalence {
            inverse,
            unit: NatTransformation { components: unit },
            counit: NatTransformation { components: eps },
        };
        debug_assert!(e.inverse.is_functor(tgt, src));
        debug_assert!(e.unit.is_natural(&Functor::identity(src), &e.inverse.after(f), src, src));
        debug_assert!(e.counit.is_natural(&f.after(&e.inverse), &Functor::identity(tgt), tgt, tgt));
        e
    });
    EquivalenceVerdict { fully_faithful, essentially_surjective, witness }
}

/// A natural isomorphism `f1 ⇒ f2`, if one exists. Per component of the
/// source the root component is chosen smallest-first and propagated
/// along a spanning tree.
pub fn find_nat_iso(f1: &Functor, f2: &Functor, src: &FinGroupoid, tgt: &FinGroupoid) -> Option<NatTransformation> {
    let mut eta = vec![usize::MAX; src.n_objects()];
    for comp in components(src) {
        let r = comp[0];
        let tree = spanning_tree(src, r);
        let ok = tgt.hom(f1.obj[r], f2.obj[r]).any(|c| {
            for &x in &comp {
                let t = tree[x].unwrap();
                eta[x] = tgt.comp_all(&[f2.arr[t], c, tgt.inv(f1.arr[t])]);
            }
            comp.iter().all(|&x| {
                src.out_arrows(x).iter().all(|&a| {
                    tgt.comp(eta[src.tgt(a)], f1.arr[a]) == tgt.comp(f2.arr[a], eta[x])
                })
            })
        });
        if !ok {
            return None;
        }
    }
    Some(NatTransformation { components: eta })
}
