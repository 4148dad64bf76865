//! The exponential law `Map(K×H, G) ≅ Map(K, Map(H, G))` and its faithful
//! variant, where it degrades to a chain of inclusions.

use crate::enumerate::EnumError;
use crate::mapping::{mapping_groupoid, MappingGroupoid};
use crate::NatTransformation;
use gpd_core::{product, FinGroupoid, Functor, MapMode};

/// `F(k, -)` as a functor `K -> Map(H, G)`; `None` if some slice is not an
/// object of `m`.
pub fn curry(f: &Functor, k: &FinGroupoid, h: &FinGroupoid, m: &MappingGroupoid) -> Option<Functor> {
    let (ho, ha) = (h.n_objects(), h.n_arrows());
    let obj = k
        .objects()
        .map(|x| {
            let slice = Functor {
                obj: (0..ho).map(|y| f.obj[x * ho + y]).collect(),
                arr: (0..ha).map(|b| f.arr[k.id(x) * ha + b]).collect(),
            };
            m.functor_index(&slice)
        })
        .collect::<Option<Vec<_>>>()?;
    let arr = k
        .arrows()
        .map(|a| {
            let eta = NatTransformation { components: h.objects().map(|y| f.arr[a * ha + h.id(y)]).collect() };
            m.arrow_index(obj[k.src(a)], &eta)
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Functor { obj, arr })
}

/// Inverse of [`curry`]: `(a, b) ↦ Φ(a)_{y'} ∘ Φ(k)(b)` for `a: k -> k'`, `b: y -> y'`.
pub fn uncurry(phi: &Functor, k: &FinGroupoid, h: &FinGroupoid, g: &FinGroupoid, m: &MappingGroupoid) -> Functor {
    let (ho, ha) = (h.n_objects(), h.n_arrows());
    let obj = (0..k.n_objects() * ho).map(|p| m.functors[phi.obj[p / ho]].obj[p % ho]).collect();
    let arr = (0..k.n_arrows() * ha)
        .map(|e| {
            let (a, b) = (e / ha, e % ha);
            let inner = &m.functors[phi.obj[k.src(a)]];
            let eta = &m.transformations[phi.arr[a]];
            g.comp(eta.components[h.tgt(b)], inner.arr[b])
        })
        .collect();
    Functor { obj, arr }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentialReport {
    pub mode: MapMode,
    /// `(objects, arrows)` of each groupoid in the comparison: in mode all
    /// `Map(K×H,G)` and `Map(K,Map(H,G))`; in faithful mode the chain
    /// `Map②(K×H,G)`, `Map②(K,Map②(H,G))`, `Map①(K×H,G)`.
    pub sizes: Vec<(usize, usize)>,
    /// The isomorphism (all) or both inclusions (faithful) were certified.
    pub holds: bool,
    /// Faithful mode: whether each inclusion is proper.
    pub strict: Vec<bool>,
}

fn size(m: &MappingGroupoid) -> (usize, usize) {
    (m.groupoid.n_objects(), m.groupoid.n_arrows())
}

/// Currying as a functor between materialized mapping groupoids.
fn curry_functor(
    l: &MappingGroupoid,
    r: &MappingGroupoid,
    k: &FinGroupoid,
    h: &FinGroupoid,
    m: &MappingGroupoid,
) -> Option<Functor> {
    let obj = l
        .functors
        .iter()
        .map(|f| r.functor_index(&curry(f, k, h, m)?))
        .collect::<Option<Vec<_>>>()?;
    let ho = h.n_objects();
    let arr = l
        .groupoid
        .arrows()
        .map(|e| {
            let (s, t) = (l.groupoid.src(e), l.groupoid.tgt(e));
            let cs = &r.functors[obj[s]];
            let theta = &l.transformations[e];
            let comps = k
                .objects()
                .map(|x| {
                    let slice = NatTransformation { components: theta.components[x * ho..(x + 1) * ho].to_vec() };
                    m.arrow_index(cs.obj[x], &slice)
                })
                .collect::<Option<Vec<_>>>()?;
            let a = r.arrow_index(obj[s], &NatTransformation { components: comps })?;
            (r.groupoid.tgt(a) == obj[t]).then_some(a)
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Functor { obj, arr })
}

/// Uncurrying `Map(K, M) -> Map(K×H, G)` on materialized groupoids.
fn uncurry_functor(
    r: &MappingGroupoid,
    l: &MappingGroupoid,
    k: &FinGroupoid,
    h: &FinGroupoid,
    g: &FinGroupoid,
    m: &MappingGroupoid,
) -> Option<Functor> {
    let obj = r
        .functors
        .iter()
        .map(|phi| l.functor_index(&uncurry(phi, k, h, g, m)))
        .collect::<Option<Vec<_>>>()?;
    let arr = r
        .groupoid
        .arrows()
        .map(|e| {
            let comps = r.transformations[e]
                .components
                .iter()
                .flat_map(|&c| m.transformations[c].components.iter().copied())
                .collect();
            l.arrow_index(obj[r.groupoid.src(e)], &NatTransformation { components: comps })
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Functor { obj, arr })
}

fn injective(v: &[usize]) -> bool {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

pub fn exponential_compare(
    k: &FinGroupoid,
    h: &FinGroupoid,
    g: &FinGroupoid,
    mode: MapMode,
) -> Result<ExponentialReport, EnumError> {
    let kh = product(k, h);
    match mode {
        MapMode::All => {
            let l = mapping_groupoid(&kh, g, MapMode::All)?;
            let m = mapping_groupoid(h, g, MapMode::All)?;
            let r = mapping_groupoid(k, &m.groupoid, MapMode::All)?;
            let holds = curry_functor(&l, &r, k, h, &m)
                .is_some_and(|c| c.is_functor(&l.groupoid, &r.groupoid) && c.is_isomorphism(&l.groupoid, &r.groupoid));
            Ok(ExponentialReport { mode, sizes: vec![size(&l), size(&r)], holds, strict: Vec::new() })
        }
        MapMode::Faithful => {
            let l2 = mapping_groupoid(&kh, g, MapMode::Faithful)?;
            let m2 = mapping_groupoid(h, g, MapMode::Faithful)?;
            let r2 = mapping_groupoid(k, &m2.groupoid, MapMode::Faithful)?;
            let l1 = mapping_groupoid(&kh, g, MapMode::All)?;
            let embeds = |f: Option<Functor>, a: &FinGroupoid, b: &FinGroupoid| {
                f.is_some_and(|f| f.is_functor(a, b) && injective(&f.obj) && injective(&f.arr))
            };
            let first = embeds(curry_functor(&l2, &r2, k, h, &m2), &l2.groupoid, &r2.groupoid);
            let second = embeds(uncurry_functor(&r2, &l1, k, h, g, &m2), &r2.groupoid, &l1.groupoid);
            let sizes = vec![size(&l2), size(&r2), size(&l1)];
            let strict = vec![sizes[0] != sizes[1], sizes[1] != sizes[2]];
            Ok(ExponentialReport { mode, sizes, holds: first && second, strict })
        }
    }
}
