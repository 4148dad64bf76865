//! The orbit category `Orb_G` on a family of subgroups.

use gpd_core::FinGroup;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EquivariantError {
    #[error("family member {index} is not a subgroup")]
    NotASubgroup { index: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Budget(#[from] gpd_core::Exhausted),
    #[error(transparent)]
    Enumeration(#[from] functor_calc::EnumError),
}

/// A subgroup as the sorted list of its elements.
pub type Subgroup = Vec<usize>;

/// Sorted, deduplicated, and checked to be a subgroup.
pub fn check_family(g: &FinGroup, family: &[Subgroup]) -> Result<Vec<Subgroup>, EquivariantError> {
    family
        .iter()
        .enumerate()
        .map(|(index, h)| {
            let mut h = h.clone();
            h.sort_unstable();
            h.dedup();
            if !h.is_empty() && h.iter().all(|&x| x < g.order()) && g.is_subgroup(&h) {
                Ok(h)
            } else {
                Err(EquivariantError::NotASubgroup { index })
            }
        })
        .collect()
}

/// Left cosets `G/K`, numbered by least element: `(coset of each element,
/// least representative of each coset)`.
pub fn cosets(g: &FinGroup, k: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for a in 0..g.order() {
        if of[a] == usize::MAX {
            for &x in k {
                of[g.mul(a, x)] = reps.len();
            }
            reps.push(a);
        }
    }
    (of, reps)
}

/// `H^x = x⁻¹ H x`.
pub fn conjugate_into(g: &FinGroup, h: &[usize], x: usize, k: &[usize]) -> bool {
    h.iter().all(|&a| k.binary_search(&g.mul(g.mul(g.inv(x), a), x)).is_ok())
}

/// Objects `G/H` for `H` in the family; an arrow `G/H -> G/K` is
/// `eH ↦ xK`, stored as the coset of `x` in `G/K`.
#[derive(Clone, Debug)]
pub struct OrbitCategory {
    pub group: FinGroup,
    pub family: Vec<Subgroup>,
    coset_of: Vec<Vec<usize>>,
    reps: Vec<Vec<usize>>,
    homs: Vec<Vec<Vec<usize>>>,
}

impl OrbitCategory {
    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    /// Cosets `xK` with `H^x ⊂ K`, i.e. the equivariant maps `G/H -> G/K`.
    pub fn hom(&self, h: usize, k: usize) -> &[usize] {
        &self.homs[h][k]
    }

    pub fn identity(&self, h: usize) -> usize {
        self.coset_of[h][self.group.unit()]
    }

    /// Coset of `x` in `G/K`.
    pub fn coset(&self, k: usize, x: usize) -> usize {
        self.coset_of[k][x]
    }

    /// Least element of coset `c` of `G/K`.
    pub fn representative(&self, k: usize, c: usize) -> usize {
        self.reps[k][c]
    }

    /// `(eK ↦ yL) ∘ (eH ↦ xK)` is `eH ↦ xyL`.
    pub fn compose(&self, k: usize, l: usize, after: usize, x_coset: usize) -> usize {
        let x = self.reps[k][x_coset];
        let y = self.reps[l][after];
        self.coset_of[l][self.group.mul(x, y)]
    }

    /// `(G/K)^H`: cosets fixed by every element of `H`.
    pub fn fixed_points(&self, h: usize, k: usize) -> Vec<usize> {
        let g = &self.group;
        (0..self.reps[k].len())
            .filter(|&c| {
                let x = self.reps[k][c];
                self.family[h].iter().all(|&a| self.coset_of[k][g.mul(a, x)] == c)
            })
            .collect()
    }
}

pub fn orbit_category(g: &FinGroup, family: &[Subgroup]) -> Result<OrbitCategory, EquivariantError> {
    let family = check_family(g, family)?;
    let (coset_of, reps): (Vec<_>, Vec<_>) = family.iter().map(|k| cosets(g, k)).unzip();
    let homs = family
        .iter()
        .map(|h| {
            family
                .iter()
                .enumerate()
                .map(|(j, k)| {
                    let mut c: Vec<usize> = (0..g.order())
                        .filter(|&x| conjugate_into(g, h, x, k))
                        .map(|x| coset_of[j][x])
                        .collect();
                    c.sort_unstable();
                    c.dedup();
                    c
                })
                .collect()
        })
        .collect();
    Ok(OrbitCategory { group: g.clone(), family, coset_of, reps, homs })
}
