//! Principal bundles over finite sets.

use functor_calc::categorical_equivalence;
use gpd_core::{
    delooping, gauge_groupoid_with_classes, shear_inverse, vertex_group, ActionError, Arr,
    FinGroupoid, Functor, GSet, NotPrincipal, Obj,
};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BundleError {
    #[error("action is not a valid groupoid action: {0}")]
    Action(#[from] ActionError),
    #[error("projection has {got} entries for {expected} points")]
    Shape { expected: usize, got: usize },
    #[error("NotFree: the action is not free on the fibre over {0}")]
    NotFree(usize),
    #[error("ShearNotBijective: {0}")]
    ShearNotBijective(NotPrincipal),
}

/// Raw bundle data before validation.
#[derive(Clone, Debug)]
pub struct BundleData {
    pub structure: FinGroupoid,
    pub total: GSet,
    pub base: usize,
    pub proj: Vec<usize>,
}

/// A principal bundle `P -> T` for a finite structure groupoid: the action
/// is free and transitive on every fibre.
#[derive(Clone, Debug)]
pub struct PrincipalBundle {
    structure: FinGroupoid,
    total: GSet,
    base: usize,
    proj: Vec<usize>,
    divide: HashMap<(usize, usize), Arr>,
}

pub fn validate_bundle(data: BundleData) -> Result<PrincipalBundle, BundleError> {
    let BundleData { structure, total, base, proj } = data;
    if proj.len() != total.carrier() {
        return Err(BundleError::Shape { expected: total.carrier(), got: proj.len() });
    }
    total.validate(&structure)?;
    let divide = shear_inverse(&structure, &total, base, &proj).map_err(|e| match e {
        NotPrincipal::NotFree { base, .. } => BundleError::NotFree(base),
        other => BundleError::ShearNotBijective(other),
    })?;
    Ok(PrincipalBundle { structure, total, base, proj, divide })
}

/// The trivial bundle `G_1 ×_{G_0} T -> T` over a set sitting over `G_0`.
/// Points are the pairs `(t, a)` with `src(a) = anchor(t)`, in that order.
pub fn trivial_bundle(structure: &FinGroupoid, anchors: &[Obj]) -> PrincipalBundle {
    let pairs: Vec<(usize, Arr)> = anchors
        .iter()
        .enumerate()
        .flat_map(|(t, &x)| structure.out_arrows(x).iter().map(move |&a| (t, a)))
        .collect();
    let index: HashMap<(usize, Arr), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let total = GSet::new(
        structure,
        pairs.iter().map(|&(_, a)| structure.tgt(a)).collect(),
        |b, i| {
            let (t, a) = pairs[i];
            index[&(t, structure.comp(b, a))]
        },
    );
    let proj = pairs.iter().map(|&(t, _)| t).collect();
    validate_bundle(BundleData {
        structure: structure.clone(),
        total,
        base: anchors.len(),
        proj,
    })
    .expect("trivial bundles are principal")
}

impl PrincipalBundle {
    pub fn structure(&self) -> &FinGroupoid {
        &self.structure
    }

    pub fn total(&self) -> &GSet {
        &self.total
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn proj(&self) -> &[usize] {
        &self.proj
    }

    pub fn len(&self) -> usize {
        self.total.carrier()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The unique structure arrow taking `p` to `q`, if they share a fibre.
    pub fn divide(&self, q: usize, p: usize) -> Option<Arr> {
        self.divide.get(&(q, p)).copied()
    }

    /// Smallest point over each base point.
    pub fn canonical_section(&self) -> Vec<usize> {
        let mut s = vec![usize::MAX; self.base];
        for p in (0..self.len()).rev() {
            s[self.proj[p]] = p;
        }
        s
    }

    pub fn gauge(&self) -> FinGroupoid {
        gauge_groupoid_with_classes(&self.structure, &self.total, self.base, &self.proj)
            .expect("validated")
            .0
    }

    /// Pull the structure back along `cover: V -> G_0`: the bundle
    /// `V ×_{G_0} P` for the restricted groupoid `G_V`, over the same base.
    /// Points are the pairs `(v, p)` in lexicographic order.
    pub fn restrict_structure(&self, cover: &[Obj]) -> Result<PrincipalBundle, gpd_core::NotACover> {
        let r = gpd_core::restriction(&self.structure, cover)?;
        let pairs: Vec<(usize, usize)> = (0..cover.len())
            .flat_map(|v| {
                (0..self.len())
                    .filter(move |&p| self.total.anchor(p) == cover[v])
                    .map(move |p| (v, p))
            })
            .collect();
        let index: HashMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let total = GSet::new(&r.groupoid, pairs.iter().map(|&(v, _)| v).collect(), |b, i| {
            let (v, a, w) = r.triples[b];
            debug_assert_eq!(v, pairs[i].0);
            index[&(w, self.total.act(a, pairs[i].1))]
        });
        let proj = pairs.iter().map(|&(_, p)| self.proj[p]).collect();
        Ok(validate_bundle(BundleData { structure: r.groupoid, total, base: self.base, proj })
            .expect("pullback of a principal bundle is principal"))
    }
}

/// Certifies that the gauge groupoid of `p` is equivalent to the delooping
/// of the vertex group at the anchor of its first point, through
/// `k ↦ [k⁻¹·p0, p0]`. For a group this is the comparison with `B G`.
pub fn bgstr_check(p: &PrincipalBundle) -> bool {
    if p.is_empty() {
        return false;
    }
    let g = &p.structure;
    let p0 = 0;
    let (group, loops) = vertex_group(g, p.total.anchor(p0));
    let (gauge, class) =
        gauge_groupoid_with_classes(g, &p.total, p.base, &p.proj).expect("validated");
    let bg = delooping(&group);
    let f = Functor {
        obj: vec![p.proj[p0]],
        arr: loops
            .iter()
            .map(|&k| class[&(p.total.act(g.inv(k), p0), p0)])
            .collect(),
    };
    f.is_functor(&bg, &gauge) && categorical_equivalence(&f, &bg, &gauge).is_equivalence()
}
