//! Nerve levels: level `n` holds the chains `x0 <- x1 <- ... <- xn` as
//! arrow tuples `(α1, ..., αn)` with `αi: xi -> x(i-1)`, in lexicographic
//! order. Level 0 holds the objects.

use gpd_core::budget::NERVE_GENERATORS;
use gpd_core::{Arr, Budget, Exec, FinGroupoid};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("SizeLimit: nerve needs more than {limit} chains")]
pub struct SizeLimit {
    pub limit: u64,
}

#[derive(Clone, Debug)]
pub struct NerveLevels {
    levels: Vec<Vec<Vec<Arr>>>,
    /// `faces[n][i][c]`: index of `d_i` of chain `c` in level `n - 1`
    faces: Vec<Vec<Vec<usize>>>,
}

pub fn nerve(g: &FinGroupoid, d: usize) -> Result<NerveLevels, SizeLimit> {
    nerve_with(g, d, Budget::or_env(NERVE_GENERATORS), Exec::default())
}

pub fn nerve_with(g: &FinGroupoid, d: usize, budget: Budget, exec: Exec) -> Result<NerveLevels, SizeLimit> {
    let too_big = SizeLimit { limit: budget.0 };
    let mut total = g.n_objects() as u64;
    let mut levels: Vec<Vec<Vec<Arr>>> = vec![g.objects().map(|x| vec![x]).collect()];
    for n in 1..=d {
        let next: Vec<Vec<Arr>> = if n == 1 {
            g.arrows().map(|a| vec![a]).collect()
        } else {
            let count: u64 = levels[n - 1]
                .iter()
                .map(|c| g.in_arrows(g.src(*c.last().unwrap())).len() as u64)
                .sum();
            if total.saturating_add(count) > budget.0 {
                return Err(too_big);
            }
            levels[n - 1]
                .iter()
                .flat_map(|c| {
                    g.in_arrows(g.src(*c.last().unwrap())).iter().map(move |&a| {
                        let mut e = c.clone();
                        e.push(a);
                        e
                    })
                })
                .collect()
        };
        total = total.saturating_add(next.len() as u64);
        if total > budget.0 {
            return Err(too_big);
        }
        levels.push(next);
    }
    let mut faces = vec![Vec::new()];
    for n in 1..=d {
        let index: HashMap<&[Arr], usize> =
            levels[n - 1].iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
        let level = &levels[n];
        let per_face = (0..=n)
            .map(|i| exec.map(level, |c| index[face(g, c, n, i).as_slice()]))
            .collect();
        faces.push(per_face);
    }
    Ok(NerveLevels { levels, faces })
}

/// `d_i` of an `n`-chain, `n >= 1`.
fn face(g: &FinGroupoid, c: &[Arr], n: usize, i: usize) -> Vec<Arr> {
    if n == 1 {
        return vec![if i == 0 { g.src(c[0]) } else { g.tgt(c[0]) }];
    }
    match i {
        0 => c[1..].to_vec(),
        _ if i == n => c[..n - 1].to_vec(),
        _ => {
            let mut e = c[..i - 1].to_vec();
            e.push(g.comp(c[i - 1], c[i]));
            e.extend_from_slice(&c[i + 1..]);
            e
        }
    }
}

impl NerveLevels {
    /// Highest level present.
    pub fn degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn size(&self, n: usize) -> usize {
        self.levels[n].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// The `n`-chains; level 0 entries are one-element object lists.
    pub fn level(&self, n: usize) -> &[Vec<Arr>] {
        &self.levels[n]
    }

    /// Index of `d_i(c)` in level `n - 1`.
    pub fn face(&self, n: usize, i: usize, c: usize) -> usize {
        self.faces[n][i][c]
    }

    /// `d_i d_j = d_(j-1) d_i` for all `i < j` on every level.
    pub fn check_identities(&self) -> bool {
        (2..=self.degree()).all(|n| {
            (0..self.size(n)).all(|c| {
                (0..=n).all(|j| {
                    (0..j).all(|i| {
                        self.face(n - 1, i, self.face(n, j, c)) == self.face(n - 1, j - 1, self.face(n, i, c))
                    })
                })
            })
        })
    }
}
