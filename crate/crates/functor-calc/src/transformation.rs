use gpd_core::{Arr, FinGroupoid, Functor};

/// A natural transformation `F ⇒ F'`; `components[x]` is an arrow
/// `F(x) -> F'(x)` of the target groupoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatTransformation {
    pub components: Vec<Arr>,
}

impl NatTransformation {
    pub fn identity(f: &Functor, tgt: &FinGroupoid) -> Self {
        NatTransformation { components: f.obj.iter().map(|&y| tgt.id(y)).collect() }
    }

    /// Components have the right endpoints and every square commutes.
    pub fn is_natural(&self, f: &Functor, g: &Functor, src: &FinGroupoid, tgt: &FinGroupoid) -> bool {
        let c = &self.components;
        c.len() == src.n_objects()
            && src
                .objects()
                .all(|x| tgt.src(c[x]) == f.obj[x] && tgt.tgt(c[x]) == g.obj[x])
            && src.arrows().all(|a| {
                let (x, y) = (src.src(a), src.tgt(a));
                tgt.comp(c[y], f.arr[a]) == tgt.comp(g.arr[a], c[x])
            })
    }

    /// `self ∘ first` (vertical composition).
    pub fn after(&self, first: &NatTransformation, tgt: &FinGroupoid) -> Self {
        let components = self
            .components
            .iter()
            .zip(&first.components)
            .map(|(&a, &b)| tgt.comp(a, b))
            .collect();
        NatTransformation { components }
    }

    pub fn inverse(&self, tgt: &FinGroupoid) -> Self {
        NatTransformation { components: self.components.iter().map(|&a| tgt.inv(a)).collect() }
    }

    /// `η F`: precompose with a functor into the source.
    pub fn whisker_left(&self, f: &Functor) -> Self {
        NatTransformation { components: f.obj.iter().map(|&x| self.components[x]).collect() }
    }

    /// `K η`: postcompose with a functor out of the target.
    pub fn whisker_right(&self, k: &Functor) -> Self {
        NatTransformation { components: self.components.iter().map(|&a| k.arr[a]).collect() }
    }

    /// Horizontal composite of `d: E ⇒ E'` (inner) and `c: F ⇒ F'` (outer):
    /// the transformation `F∘E ⇒ F'∘E'` with components `c_{E'x} ∘ F(d_x)`.
    pub fn horizontal(c: &Self, f: &Functor, d: &Self, e2: &Functor, tgt: &FinGroupoid) -> Self {
        let components = d
            .components
            .iter()
            .zip(&e2.obj)
            .map(|(&dx, &y)| tgt.comp(c.components[y], f.arr[dx]))
            .collect();
        NatTransformation { components }
    }
}
