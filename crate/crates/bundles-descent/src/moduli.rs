//! Groupoids of principal bundles on a finite groupoid, up to isomorphism.

use crate::hs::{bundle_iso, bundle_isos, descend, BundleIso, Cocycle, HSBundle};
use functor_calc::{
    categorical_equivalence, mapping_groupoid_with, EnumError, EquivalenceVerdict,
    MappingGroupoid, NatTransformation,
};
use gpd_core::budget::ENUM_NODES;
use gpd_core::structure::component_index;
use gpd_core::{Budget, Exec, FinGroupoid, Functor, MapMode};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuliError {
    #[error("SizeLimit: enumeration stopped after {partial} functors")]
    SizeLimit { partial: u64 },
}

impl From<EnumError> for ModuliError {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::Indeterminate { partial } => ModuliError::SizeLimit { partial },
        }
    }
}

/// One bundle per isomorphism class, each with its automorphism group, and
/// the comparison with the mapping groupoid.
#[derive(Clone, Debug)]
pub struct ModuliGroupoid {
    /// Skeleton: object `i` is `bundles[i]`; its arrows are
    /// `automorphisms[i]` in order, numbered consecutively.
    pub groupoid: FinGroupoid,
    pub bundles: Vec<HSBundle>,
    pub automorphisms: Vec<Vec<BundleIso>>,
    pub mapping: MappingGroupoid,
    /// `groupoid -> mapping.groupoid`, sending a bundle to the functor it
    /// was built from.
    pub comparison: Functor,
    pub verdict: EquivalenceVerdict,
}

impl ModuliGroupoid {
    pub fn n_classes(&self) -> usize {
        self.bundles.len()
    }

    pub fn is_equivalent_to_mapping(&self) -> bool {
        self.verdict.is_equivalence()
    }
}

pub fn moduli_groupoid(h: &FinGroupoid, g: &FinGroupoid, mode: MapMode) -> Result<ModuliGroupoid, ModuliError> {
    moduli_groupoid_with(h, g, mode, Budget::or_env(ENUM_NODES), Exec::default())
}

pub fn moduli_groupoid_with(
    h: &FinGroupoid,
    g: &FinGroupoid,
    mode: MapMode,
    budget: Budget,
    exec: Exec,
) -> Result<ModuliGroupoid, ModuliError> {
    let mapping = mapping_groupoid_with(h, g, mode, budget, exec)?;
    let built: Vec<(HSBundle, Vec<usize>)> = exec.map(&mapping.functors, |f| {
        let c = Cocycle::from_functor(h, g, f, mode).expect("enumerated functors are valid");
        let (b, reps) = descend(&c);
        // σ(x) = (x, id_{F x})
        let section = h
            .objects()
            .map(|x| reps.iter().position(|&(u, a)| u == x && a == g.id(f.obj[x])).expect("identity point"))
            .collect();
        (b, section)
    });

    // bucket by the components hit, then search for isomorphisms
    let comp = component_index(g);
    let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut classes: Vec<usize> = Vec::new();
    for (i, f) in mapping.functors.iter().enumerate() {
        let key: Vec<usize> = f.obj.iter().map(|&y| comp[y]).collect();
        let bucket = buckets.entry(key).or_default();
        if !bucket.iter().any(|&j| bundle_iso(&built[i].0, &built[j].0).is_some()) {
            bucket.push(i);
            classes.push(i);
        }
    }

    let automorphisms: Vec<Vec<BundleIso>> =
        exec.map(&classes, |&i| bundle_isos(&built[i].0, &built[i].0));
    let mut offset = Vec::with_capacity(classes.len());
    let mut total = 0;
    for autos in &automorphisms {
        offset.push(total);
        total += autos.len();
    }
    let owner: Vec<usize> = (0..classes.len()).flat_map(|c| vec![c; automorphisms[c].len()]).collect();
    let local = |a: usize| a - offset[owner[a]];
    let position = |c: usize, iso: &BundleIso| {
        offset[c] + automorphisms[c].binary_search(iso).expect("closed under composition")
    };
    let ident: Vec<usize> = (0..classes.len())
        .map(|c| {
            let id = BundleIso { map: (0..built[classes[c]].0.len()).collect() };
            position(c, &id)
        })
        .collect();
    let inv: Vec<usize> = (0..total).map(|a| position(owner[a], &automorphisms[owner[a]][local(a)].inverse())).collect();
    let groupoid = FinGroupoid::from_parts(classes.len(), owner.clone(), owner.clone(), ident, inv, |a, b| {
        let c = owner[a];
        position(c, &automorphisms[c][local(a)].after(&automorphisms[c][local(b)]))
    });

    // η ↦ τ(η)⁻¹ where η(σx) = τ_x·σx
    let arr = (0..total)
        .map(|a| {
            let c = owner[a];
            let (b, section) = &built[classes[c]];
            let eta = &automorphisms[c][local(a)];
            let components = section
                .iter()
                .map(|&s| g.inv(b.divide(eta.map[s], s).expect("same fibre")))
                .collect();
            mapping
                .arrow_index(classes[c], &NatTransformation { components })
                .expect("automorphisms are transformations")
        })
        .collect();
    let comparison = Functor { obj: classes.clone(), arr };
    let verdict = categorical_equivalence(&comparison, &groupoid, &mapping.groupoid);
    let bundles = classes.iter().map(|&i| built[i].0.clone()).collect();
    Ok(ModuliGroupoid { groupoid, bundles, automorphisms, mapping, comparison, verdict })
}
