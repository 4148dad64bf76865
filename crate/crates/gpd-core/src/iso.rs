//! Isomorphism search for finite groupoids.
//!
//! Two connected groupoids are isomorphic exactly when they have the same
//! number of objects and isomorphic vertex groups, so the search pairs up
//! components by invariants and only backtracks inside vertex groups.

use crate::budget::{Budget, Meter};
use crate::functor::Functor;
use crate::group::find_isomorphism;
use crate::groupoid::FinGroupoid;
use crate::structure::{components, component_profile, spanning_tree, vertex_group};

/// An isomorphism together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidIso {
    pub forward: Functor,
    pub backward: Functor,
}

impl GroupoidIso {
    pub fn inverse(&self) -> GroupoidIso {
        GroupoidIso { forward: self.backward.clone(), backward: self.forward.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic(GroupoidIso),
    NotIsomorphic(String),
    Indeterminate { nodes: u64 },
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }

    pub fn certificate(&self) -> Option<&GroupoidIso> {
        match self {
            IsoVerdict::Isomorphic(c) => Some(c),
            _ => None,
        }
    }
}

/// Exhaustive isomorphism search with the default node budget.
pub fn iso_check(a: &FinGroupoid, b: &FinGroupoid) -> IsoVerdict {
    iso_check_with(a, b, Budget::or_env(crate::budget::ISO_NODES))
}

pub fn iso_check_with(a: &FinGroupoid, b: &FinGroupoid, budget: Budget) -> IsoVerdict {
    if a.n_objects() != b.n_objects() {
        return IsoVerdict::NotIsomorphic(format!(
            "object counts {} vs {}",
            a.n_objects(),
            b.n_objects()
        ));
    }
    if a.n_arrows() != b.n_arrows() {
        return IsoVerdict::NotIsomorphic(format!(
            "arrow counts {} vs {}",
            a.n_arrows(),
            b.n_arrows()
        ));
    }
    if component_profile(a) != component_profile(b) {
        return IsoVerdict::NotIsomorphic("component sizes or automorphism orders differ".into());
    }
    let mut meter = budget.meter();
    match search(a, b, &mut meter) {
        Ok(Some(f)) => {
            let g = f.inverse(b).expect("search yields a bijection");
            debug_assert!(f.is_functor(a, b) && g.is_functor(b, a));
            IsoVerdict::Isomorphic(GroupoidIso { forward: f, backward: g })
        }
        Ok(None) => IsoVerdict::NotIsomorphic("vertex groups are not isomorphic".into()),
        Err(_) => IsoVerdict::Indeterminate { nodes: meter.used() },
    }
}

fn search(
    a: &FinGroupoid,
    b: &FinGroupoid,
    meter: &mut Meter,
) -> Result<Option<Functor>, crate::budget::Exhausted> {
    let ca = components(a);
    let cb = components(b);
    let mut used = vec![false; cb.len()];
    let mut obj = vec![usize::MAX; a.n_objects()];
    let mut arr = vec![usize::MAX; a.n_arrows()];
    for comp_a in &ca {
        let ra = comp_a[0];
        let (ga, arrows_a) = vertex_group(a, ra);
        let mut matched = None;
        for (j, comp_b) in cb.iter().enumerate() {
            if used[j] || comp_b.len() != comp_a.len() {
                continue;
            }
            let (gb, arrows_b) = vertex_group(b, comp_b[0]);
            if gb.order() != ga.order() {
                continue;
            }
            if let Some(psi) = find_isomorphism(&ga, &gb, meter)? {
                matched = Some((j, psi, arrows_b));
                break;
            }
        }
        let Some((j, psi, arrows_b)) = matched else {
            return Ok(None);
        };
        used[j] = true;
        let comp_b = &cb[j];
        let rb = comp_b[0];
        let ta = spanning_tree(a, ra);
        let tb = spanning_tree(b, rb);
        for (k, &x) in comp_a.iter().enumerate() {
            obj[x] = comp_b[k];
        }
        for &x in comp_a {
            for &e in a.out_arrows(x) {
                let y = a.tgt(e);
                let (tx, ty) = (ta[x].expect("tree"), ta[y].expect("tree"));
                let loop_a = a.comp_all(&[a.inv(ty), e, tx]);
                let i = arrows_a.iter().position(|&l| l == loop_a).expect("loop");
                let loop_b = arrows_b[psi[i]];
                let (ux, uy) = (tb[obj[x]].expect("tree"), tb[obj[y]].expect("tree"));
                arr[e] = b.comp_all(&[uy, loop_b, b.inv(ux)]);
            }
        }
    }
    Ok(Some(Functor { obj, arr }))
}
