//! Path components, fundamental groups and the weak-equivalence test.

use functor_calc::{categorical_equivalence, mapping_groupoid, MappingGroupoid};
use gpd_core::{components, delooping, vertex_group, FinGroup, FinGroupoid, Functor, MapMode, Obj};

/// Path components, each sorted, ordered by least object.
pub fn pi0(g: &FinGroupoid) -> Vec<Vec<Obj>> {
    components(g)
}

/// `π1(G, x) = Aut(x)`; higher homotopy groups vanish for groupoids.
pub fn pi1(g: &FinGroupoid, x: Obj) -> FinGroup {
    vertex_group(g, x).0
}

/// Postcomposition `Map(K, H) -> Map(K, G)` with `f: H -> G`.
fn postcompose(f: &Functor, from: &MappingGroupoid, to: &MappingGroupoid) -> Option<Functor> {
    let obj = from.functors.iter().map(|e| to.functor_index(&f.after(e))).collect::<Option<Vec<_>>>()?;
    let arr = from
        .groupoid
        .arrows()
        .map(|a| to.arrow_index(obj[from.groupoid.src(a)], &from.transformations[a].whisker_right(f)))
        .collect::<Option<Vec<_>>>()?;
    Some(Functor { obj, arr })
}

/// `f: h -> g` is a weak equivalence for `family` if postcomposition
/// `Map(B K, h) -> Map(B K, g)` is a categorical equivalence for every `K`.
pub fn weak_equivalence_check(f: &Functor, h: &FinGroupoid, g: &FinGroupoid, family: &[FinGroup]) -> bool {
    family.iter().all(|k| {
        let bk = delooping(k);
        let (Ok(from), Ok(to)) = (mapping_groupoid(&bk, h, MapMode::All), mapping_groupoid(&bk, g, MapMode::All))
        else {
            return false;
        };
        postcompose(f, &from, &to)
            .is_some_and(|p| categorical_equivalence(&p, &from.groupoid, &to.groupoid).is_equivalence())
    })
}
