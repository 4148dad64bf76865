//! Smith normal form over the integers and rank over prime fields.
//!
//! Elimination runs on `i128` with checked arithmetic and restarts on
//! arbitrary-precision integers if an entry would overflow. Row updates
//! below a pivot are independent and run through [`Exec`].

use gpd_core::Exec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::sync::atomic::{AtomicBool, Ordering};

trait Entry: Clone + Send + Sync + PartialEq {
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    /// truncated quotient
    fn quot(&self, b: &Self) -> Self;
    /// `self - q*b`, `None` on overflow
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Entry for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quot(&self, b: &Self) -> Self {
        self / b
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn quot(&self, b: &Self) -> Self {
        self / b
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Reduce to diagonal form; the nonzero diagonal, or `None` on overflow.
fn diagonalize<T: Entry>(mut m: Vec<Vec<T>>, cols: usize, exec: Exec) -> Option<Vec<T>> {
    let rows = m.len();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest(&m, t..rows, t..cols) else { break };
        m.swap(t, pi);
        m.iter_mut().for_each(|r| r.swap(t, pj));
        loop {
            let (head, tail) = m.split_at_mut(t + 1);
            let pivot_row = &head[t];
            let overflow = AtomicBool::new(false);
            exec.for_each_mut(tail, |row| {
                if !row[t].is_zero() {
                    let q = row[t].quot(&pivot_row[t]);
                    for j in t..cols {
                        if pivot_row[j].is_zero() {
                            continue;
                        }
                        match row[j].sub_mul(&q, &pivot_row[j]) {
                            Some(v) => row[j] = v,
                            None => overflow.store(true, Ordering::Relaxed),
                        }
                    }
                }
            });
            if overflow.into_inner() {
                return None;
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].quot(&m[t][t]);
                for r in m.iter_mut().skip(t) {
                    if !r[t].is_zero() {
                        r[j] = r[j].sub_mul(&q, &r[t])?;
                    }
                }
            }
            let column_clear = (t + 1..rows).all(|i| m[i][t].is_zero());
            let row_clear = (t + 1..cols).all(|j| m[t][j].is_zero());
            if column_clear && row_clear {
                break;
            }
            // a nonzero remainder is smaller than the pivot: move it up
            let (i, j) = match (smallest(&m, t..rows, t..t + 1), smallest(&m, t..t + 1, t..cols)) {
                (Some(a), Some(b)) if m[b.0][b.1].abs_lt(&m[a.0][a.1]) => b,
                (Some(a), _) => a,
                (None, b) => b.unwrap(),
            };
            m.swap(t, i);
            m.iter_mut().for_each(|r| r.swap(t, j));
        }
        diag.push(m[t][t].clone());
    }
    Some(diag)
}

fn smallest<T: Entry>(
    m: &[Vec<T>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if !m[i][j].is_zero() && best.is_none_or(|(a, b)| m[i][j].abs_lt(&m[a][b])) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Invariant factors `d1 | d2 | ...` of an integer matrix (nonzero ones
/// only, so their count is the rank).
pub fn invariant_factors(m: &[Vec<i64>], cols: usize, exec: Exec) -> Vec<BigInt> {
    let small: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let diag: Vec<BigInt> = match diagonalize(small, cols, exec) {
        Some(d) => d.iter().map(Entry::to_big).collect(),
        None => {
            let big = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            diagonalize(big, cols, exec).expect("no overflow for big integers")
        }
    };
    let mut d: Vec<BigInt> = diag.into_iter().map(|x| x.abs()).collect();
    // enforce the divisibility chain: (a, b) -> (gcd, lcm)
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Rank over `F_p`.
pub fn rank_mod_p(m: &[Vec<i64>], cols: usize, p: u64, exec: Exec) -> usize {
    let p128 = p as i128;
    let mut a: Vec<Vec<u64>> =
        m.iter().map(|r| r.iter().map(|&x| (x as i128).rem_euclid(p128) as u64).collect()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        a[rank].iter_mut().for_each(|x| *x = (*x as u128 * inv as u128 % p as u128) as u64);
        let (head, tail) = a.split_at_mut(rank + 1);
        let prow = &head[rank];
        exec.for_each_mut(tail, |row| {
            let f = row[c];
            if f != 0 {
                for j in c..cols {
                    let sub = (f as u128 * prow[j] as u128 % p as u128) as u64;
                    row[j] = (row[j] + p - sub) % p;
                }
            }
        });
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}
