//! Mapping groupoids `Map(H, G)` and the conjugation model for deloopings.

use crate::enumerate::{enumerate_functors_with, EnumError};
use crate::NatTransformation;
use gpd_core::budget::ENUM_NODES;
use gpd_core::{
    action_groupoid, homomorphisms, Arr, Budget, Exec, FinGroup, FinGroupoid, Functor, GSet,
    MapMode,
};
use std::collections::HashMap;

/// Functors `H -> G` as objects, natural transformations as arrows.
/// Arrows are grouped by source functor; within a group the component
/// tuples are in lexicographic order of arrow ids.
#[derive(Clone, Debug)]
pub struct MappingGroupoid {
    pub groupoid: FinGroupoid,
    pub functors: Vec<Functor>,
    pub transformations: Vec<NatTransformation>,
    pub mode: MapMode,
    index: HashMap<(usize, NatTransformation), Arr>,
}

impl MappingGroupoid {
    /// Object id of a functor.
    pub fn functor_index(&self, f: &Functor) -> Option<usize> {
        self.functors.binary_search(f).ok()
    }

    /// Arrow id of a transformation out of functor `src`.
    pub fn arrow_index(&self, src: usize, eta: &NatTransformation) -> Option<Arr> {
        self.index.get(&(src, eta.clone())).copied()
    }
}

pub fn mapping_groupoid(h: &FinGroupoid, g: &FinGroupoid, mode: MapMode) -> Result<MappingGroupoid, EnumError> {
    mapping_groupoid_with(h, g, mode, Budget::or_env(ENUM_NODES), Exec::default())
}

pub fn mapping_groupoid_with(
    h: &FinGroupoid,
    g: &FinGroupoid,
    mode: MapMode,
    budget: Budget,
    exec: Exec,
) -> Result<MappingGroupoid, EnumError> {
    let functors = enumerate_functors_with(h, g, mode, budget, exec)?;
    let arrow_count: u64 = functors
        .iter()
        .map(|f| f.obj.iter().map(|&y| g.out_arrows(y).len() as u64).product::<u64>())
        .fold(0u64, |a, b| a.saturating_add(b));
    if arrow_count.saturating_add(functors.len() as u64) > budget.0 {
        return Err(EnumError::Indeterminate { partial: functors.len() as u64 });
    }
    let lookup: HashMap<&Functor, usize> = functors.iter().enumerate().map(|(i, f)| (f, i)).collect();

    // every choice of components out of F(x) is a transformation to a unique F'
    let per_source: Vec<Vec<(NatTransformation, usize)>> = exec.map(&functors, |f| {
        let outs: Vec<&[Arr]> = f.obj.iter().map(|&y| g.out_arrows(y)).collect();
        let mut pick = vec![0usize; outs.len()];
        let mut res = Vec::new();
        if outs.iter().any(|o| o.is_empty()) {
            return res;
        }
        loop {
            let eta: Vec<Arr> = pick.iter().zip(&outs).map(|(&i, o)| o[i]).collect();
            let f2 = Functor {
                obj: eta.iter().map(|&a| g.tgt(a)).collect(),
                arr: h
                    .arrows()
                    .map(|a| g.comp_all(&[eta[h.tgt(a)], f.arr[a], g.inv(eta[h.src(a)])]))
                    .collect(),
            };
            let j = *lookup.get(&f2).expect("conjugate functors stay in the list");
            res.push((NatTransformation { components: eta }, j));
            let Some(i) = (0..pick.len()).rev().find(|&i| pick[i] + 1 < outs[i].len()) else {
                return res;
            };
            pick[i] += 1;
            pick[i + 1..].iter_mut().for_each(|c| *c = 0);
        }
    });

    let mut src = Vec::new();
    let mut tgt = Vec::new();
    let mut transformations = Vec::new();
    let mut index = HashMap::new();
    for (i, list) in per_source.into_iter().enumerate() {
        for (eta, j) in list {
            index.insert((i, eta.clone()), transformations.len());
            src.push(i);
            tgt.push(j);
            transformations.push(eta);
        }
    }
    let ident = functors
        .iter()
        .enumerate()
        .map(|(i, f)| index[&(i, NatTransformation::identity(f, g))])
        .collect();
    let inv = (0..transformations.len())
        .map(|e| index[&(tgt[e], transformations[e].inverse(g))])
        .collect();
    let groupoid = FinGroupoid::from_parts(functors.len(), src.clone(), tgt, ident, inv, |a, b| {
        index[&(src[b], transformations[a].after(&transformations[b], g))]
    });
    Ok(MappingGroupoid { groupoid, functors, transformations, mode, index })
}

/// `hom(H, G) ⋊ G` with `g·f = g f(-) g⁻¹`; homomorphisms sorted
/// lexicographically, restricted to injective ones in faithful mode.
pub fn conj_action_model(h: &FinGroup, g: &FinGroup, mode: MapMode) -> FinGroupoid {
    let homs = homomorphisms(h, g, mode == MapMode::Faithful, &mut Budget::unlimited().meter())
        .expect("unlimited budget");
    let index: HashMap<&Vec<usize>, usize> = homs.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let x = GSet::from_group(g, homs.len(), |c, i| {
        let conj: Vec<usize> = homs[i].iter().map(|&y| g.mul(g.mul(c, y), g.inv(c))).collect();
        index[&conj]
    });
    action_groupoid(g, &x)
}
