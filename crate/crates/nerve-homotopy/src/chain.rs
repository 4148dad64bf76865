//! Chain complexes of nerves and their homology.

use crate::nerve::{nerve_with, NerveLevels, SizeLimit};
use crate::snf::{invariant_factors, rank_mod_p};
use gpd_core::budget::NERVE_GENERATORS;
use gpd_core::{Budget, Exec, FinGroupoid};
use num_bigint::BigInt;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coeffs {
    Integers,
    Prime(u64),
}

/// `boundaries[n]` is `∂n: C_n -> C_(n-1)` stored by columns as sparse
/// `(row, coefficient)` lists; `boundaries[0]` is empty.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub boundaries: Vec<Vec<Vec<(usize, i64)>>>,
    pub coeffs: Coeffs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    pub coeffs: Coeffs,
    pub groups: Vec<HomologyGroup>,
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, h) in self.groups.iter().enumerate() {
            let t: Vec<String> = h.torsion.iter().map(ToString::to_string).collect();
            writeln!(f, "{n}: rank {}, torsion [{}]", h.rank, t.join(","))?;
        }
        Ok(())
    }
}

/// Alternating sums of face maps. Panics if `∂∂ ≠ 0`.
pub fn chain_complex(nerve: &NerveLevels, coeffs: Coeffs) -> ChainComplex {
    let d = nerve.degree();
    let mut boundaries = vec![Vec::new()];
    for n in 1..=d {
        let cols = (0..nerve.size(n))
            .map(|c| collect_terms((0..=n).map(|i| (nerve.face(n, i, c), sign(i)))))
            .collect();
        boundaries.push(cols);
    }
    ChainComplex::new((0..=d).map(|n| nerve.size(n)).collect(), boundaries, coeffs)
}

pub(crate) fn sign(i: usize) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sum sparse terms, dropping zeros; sorted by row.
pub(crate) fn collect_terms(terms: impl Iterator<Item = (usize, i64)>) -> Vec<(usize, i64)> {
    let mut v: Vec<(usize, i64)> = terms.collect();
    v.sort_unstable();
    let mut out: Vec<(usize, i64)> = Vec::new();
    for (r, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 += c,
            _ => out.push((r, c)),
        }
    }
    out.retain(|&(_, c)| c != 0);
    out
}

impl ChainComplex {
    /// Assemble and assert `∂(n-1) ∂n = 0`.
    pub fn new(dims: Vec<usize>, boundaries: Vec<Vec<Vec<(usize, i64)>>>, coeffs: Coeffs) -> Self {
        let cx = ChainComplex { dims, boundaries, coeffs };
        assert!(cx.is_complex(), "boundary of a boundary is nonzero");
        cx
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn is_complex(&self) -> bool {
        (2..=self.top()).all(|n| {
            self.boundaries[n].iter().all(|col| {
                collect_terms(
                    col.iter()
                        .flat_map(|&(r, c)| self.boundaries[n - 1][r].iter().map(move |&(s, e)| (s, c * e))),
                )
                .is_empty()
            })
        })
    }

    /// Dense matrix of `∂n` (rows `C_(n-1)`).
    pub fn matrix(&self, n: usize) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.dims[n]]; self.dims[n - 1]];
        for (c, col) in self.boundaries[n].iter().enumerate() {
            for &(r, v) in col {
                m[r][c] = v;
            }
        }
        m
    }

    /// `H_0 .. H_(top-1)`: the top level only feeds the last boundary.
    pub fn homology(&self, exec: Exec) -> HomologyTable {
        let top = self.top();
        // rank and invariant factors of ∂1 .. ∂top
        let reduced: Vec<(usize, Vec<BigInt>)> = exec.map_range(top, |k| {
            let n = k + 1;
            let m = self.matrix(n);
            match self.coeffs {
                Coeffs::Integers => {
                    let f = invariant_factors(&m, self.dims[n], exec);
                    (f.len(), f)
                }
                Coeffs::Prime(p) => (rank_mod_p(&m, self.dims[n], p, exec), Vec::new()),
            }
        });
        let rank = |n: usize| if n == 0 { 0 } else { reduced[n - 1].0 };
        let groups = (0..top)
            .map(|n| HomologyGroup {
                rank: self.dims[n] - rank(n) - rank(n + 1),
                torsion: reduced[n].1.iter().filter(|t| **t != BigInt::from(1)).cloned().collect(),
            })
            .collect();
        HomologyTable { coeffs: self.coeffs, groups }
    }
}

/// Homology `H_0 .. H_(d-1)` of the nerve built through level `d`.
pub fn homology(g: &FinGroupoid, d: usize) -> Result<HomologyTable, SizeLimit> {
    homology_with(g, d, Coeffs::Integers, Budget::or_env(NERVE_GENERATORS), Exec::default())
}

pub fn homology_with(
    g: &FinGroupoid,
    d: usize,
    coeffs: Coeffs,
    budget: Budget,
    exec: Exec,
) -> Result<HomologyTable, SizeLimit> {
    let n = nerve_with(g, d, budget, exec)?;
    Ok(chain_complex(&n, coeffs).homology(exec))
}
