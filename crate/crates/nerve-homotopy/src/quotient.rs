//! The homotopy quotient `X ×_G EG` as a bisimplicial set, compared with
//! the nerve of the action groupoid.
//!
//! `S(p, q) = N_p(G ⋉ (X × G^(q+1)))` with `G` acting diagonally. A
//! `p`-chain is stored as `(g1..gp; y)` where `y` is its last object and
//! `x(i-1) = gi · xi`. Horizontal faces are nerve faces; vertical faces
//! drop a coordinate of `G^(q+1)`, which is equivariant.

use crate::chain::{collect_terms, sign, ChainComplex, Coeffs, HomologyTable};
use crate::nerve::SizeLimit;
use gpd_core::budget::NERVE_GENERATORS;
use gpd_core::{action_groupoid, Budget, Exec, FinGroup, GSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    pub action_groupoid: HomologyTable,
    pub borel: HomologyTable,
    /// per degree: do the two sides agree
    pub agree: Vec<bool>,
}

impl QuotientReport {
    pub fn all_agree(&self) -> bool {
        self.agree.iter().all(|&b| b)
    }
}

/// Mixed-radix indexing of `G^p × X × G^(q+1)`.
struct Bisimplex<'a> {
    g: &'a FinGroup,
    x: &'a GSet,
}

impl Bisimplex<'_> {
    fn size(&self, p: usize, q: usize) -> usize {
        self.g.order().pow((p + q + 1) as u32) * self.x.carrier()
    }

    fn decode(&self, p: usize, q: usize, mut i: usize) -> (Vec<usize>, usize, Vec<usize>) {
        let n = self.g.order();
        let mut ks = vec![0; q + 1];
        for k in ks.iter_mut().rev() {
            *k = i % n;
            i /= n;
        }
        let x = i % self.x.carrier();
        i /= self.x.carrier();
        let mut gs = vec![0; p];
        for g in gs.iter_mut().rev() {
            *g = i % n;
            i /= n;
        }
        (gs, x, ks)
    }

    fn encode(&self, gs: &[usize], x: usize, ks: &[usize]) -> usize {
        let n = self.g.order();
        let mut i = gs.iter().fold(0, |acc, &g| acc * n + g);
        i = i * self.x.carrier() + x;
        ks.iter().fold(i, |acc, &k| acc * n + k)
    }

    fn horizontal_face(&self, gs: &[usize], x: usize, ks: &[usize], i: usize) -> usize {
        let p = gs.len();
        if i == 0 {
            return self.encode(&gs[1..], x, ks);
        }
        if i == p {
            let g = gs[p - 1];
            let moved: Vec<usize> = ks.iter().map(|&k| self.g.mul(g, k)).collect();
            return self.encode(&gs[..p - 1], self.x.act(g, x), &moved);
        }
        let mut h = gs[..i - 1].to_vec();
        h.push(self.g.mul(gs[i - 1], gs[i]));
        h.extend_from_slice(&gs[i + 1..]);
        self.encode(&h, x, ks)
    }
}

/// Homology of `G ⋉ X` against the total complex of the bisimplicial
/// model, both through degree `d`, compared on `H_0 .. H_(d-1)`.
pub fn homotopy_quotient_check(g: &FinGroup, x: &GSet, d: usize) -> Result<QuotientReport, SizeLimit> {
    let budget = Budget::or_env(NERVE_GENERATORS);
    let exec = Exec::default();
    let left = crate::chain::homology_with(&action_groupoid(g, x), d, Coeffs::Integers, budget, exec)?;

    let b = Bisimplex { g, x };
    let total: u64 = (0..=d).map(|n| (0..=n).map(|p| b.size(p, n - p) as u64).sum::<u64>()).sum();
    if total > budget.0 {
        return Err(SizeLimit { limit: budget.0 });
    }
    // Tot_n = ⊕_{p+q=n} S(p, q), blocks ordered by p
    let offsets: Vec<Vec<usize>> = (0..=d)
        .map(|n| {
            (0..=n)
                .scan(0, |acc, p| {
                    let o = *acc;
                    *acc += b.size(p, n - p);
                    Some(o)
                })
                .collect()
        })
        .collect();
    let dims: Vec<usize> = (0..=d).map(|n| (0..=n).map(|p| b.size(p, n - p)).sum()).collect();
    let mut boundaries = vec![Vec::new()];
    for n in 1..=d {
        let mut cols = Vec::with_capacity(dims[n]);
        for p in 0..=n {
            let q = n - p;
            let cells: Vec<Vec<(usize, i64)>> = exec.map_range(b.size(p, q), |i| {
                let (gs, x0, ks) = b.decode(p, q, i);
                let mut terms = Vec::new();
                if p >= 1 {
                    for f in 0..=p {
                        terms.push((offsets[n - 1][p - 1] + b.horizontal_face(&gs, x0, &ks, f), sign(f)));
                    }
                }
                if q >= 1 {
                    let s = sign(p);
                    for j in 0..=q {
                        let mut k2 = ks.clone();
                        k2.remove(j);
                        terms.push((offsets[n - 1][p] + b.encode(&gs, x0, &k2), s * sign(j)));
                    }
                }
                collect_terms(terms.into_iter())
            });
            cols.extend(cells);
        }
        boundaries.push(cols);
    }
    let right = ChainComplex::new(dims, boundaries, Coeffs::Integers).homology(exec);
    let agree = left.groups.iter().zip(&right.groups).map(|(a, b)| a == b).collect();
    Ok(QuotientReport { action_groupoid: left, borel: right, agree })
}
