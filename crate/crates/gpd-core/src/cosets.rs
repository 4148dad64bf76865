//! Coset enumeration for finitely presented groups (HLT strategy with
//! coincidence processing).
//!
//! Letters are encoded as `2*g` for generator `g` and `2*g + 1` for its
//! inverse. With a trivial subgroup the finished table is the right
//! Cayley graph of the presented group.

use crate::budget::{Budget, Exhausted, Meter};
use crate::group::FinGroup;
use std::collections::VecDeque;

const NONE: usize = usize::MAX;

pub type Word = Vec<usize>;

/// Inverse of a word.
pub fn invert(w: &[usize]) -> Word {
    w.iter().rev().map(|&x| x ^ 1).collect()
}

/// A complete coset table; coset 0 is the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    n_gens: usize,
    table: Vec<Vec<usize>>,
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    meter: Meter,
}

impl Enumerator {
    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), Exhausted> {
        self.meter.tick()?;
        let n = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(n);
        self.table[c][x] = n;
        self.table[n][x ^ 1] = c;
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut VecDeque<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill] = keep;
        queue.push_back(kill);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(e) = queue.pop_front() {
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                self.table[f][x ^ 1] = NONE;
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][x ^ 1] != NONE {
                    let t = self.table[f1][x ^ 1];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][x ^ 1] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<(), Exhausted> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b][w[j as usize] ^ 1] != NONE {
                b = self.table[b][w[j as usize] ^ 1];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.table[f][w[i]] = b;
                self.table[b][w[i] ^ 1] = f;
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

/// Enumerate the cosets of the subgroup generated by `subgroup` in
/// `<n_gens | relators>`. Every defined coset costs one budget unit.
pub fn enumerate_cosets(
    n_gens: usize,
    relators: &[Word],
    subgroup: &[Word],
    budget: Budget,
) -> Result<CosetTable, Exhausted> {
    let cols = 2 * n_gens;
    let mut en = Enumerator { cols, table: vec![vec![NONE; cols]], parent: vec![0], meter: budget.meter() };
    for h in subgroup {
        en.scan_and_fill(0, h)?;
    }
    let mut c = 0;
    while c < en.table.len() {
        for r in relators {
            if !en.live(c) {
                break;
            }
            en.scan_and_fill(c, r)?;
        }
        for x in 0..cols {
            if en.live(c) && en.table[c][x] == NONE {
                en.define(c, x)?;
            }
        }
        c += 1;
    }
    // compact the surviving cosets, keeping their order
    let mut new_id = vec![NONE; en.table.len()];
    let mut n = 0;
    for c in 0..en.table.len() {
        if en.live(c) {
            new_id[c] = n;
            n += 1;
        }
    }
    let mut table = Vec::with_capacity(n);
    for c in 0..en.table.len() {
        if en.live(c) {
            let row = en.table[c].clone();
            table.push(row.into_iter().map(|d| new_id[en.rep(d)]).collect());
        }
    }
    Ok(CosetTable { n_gens, table })
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    /// The coset reached from `c` by reading `w` left to right.
    pub fn trace(&self, c: usize, w: &[usize]) -> usize {
        w.iter().fold(c, |c, &x| self.table[c][x])
    }

    /// Shortest-then-least words reaching each coset from coset 0.
    pub fn representatives(&self) -> Vec<Word> {
        let mut words: Vec<Option<Word>> = vec![None; self.len()];
        words[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0]);
        while let Some(c) = queue.pop_front() {
            for x in 0..2 * self.n_gens {
                let d = self.table[c][x];
                if words[d].is_none() {
                    let mut w = words[c].clone().unwrap();
                    w.push(x);
                    words[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        words.into_iter().map(Option::unwrap).collect()
    }

    /// The presented group, for a table over the trivial subgroup. Element
    /// `i` is coset `i`; generator `g` is element `trace(0, [2g])`.
    pub fn to_group(&self) -> FinGroup {
        let reps = self.representatives();
        let mul = (0..self.len())
            .map(|i| reps.iter().map(|w| self.trace(i, w)).collect())
            .collect();
        let names = reps.iter().map(|w| word_name(w)).collect();
        FinGroup::from_table(names, mul).expect("coset table over the trivial subgroup")
    }
}

fn word_name(w: &[usize]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|&x| format!("g{}{}", x / 2, if x % 2 == 1 { "'" } else { "" }))
        .collect::<Vec<_>>()
        .join(".")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_presentations() {
        let b = Budget(100_000);
        // <a | a^5>
        assert_eq!(enumerate_cosets(1, &[vec![0; 5]], &[], b).unwrap().len(), 5);
        // <a, b | a^2, b^3, (ab)^2> = S3
        let rels = [vec![0, 0], vec![2, 2, 2], vec![0, 2, 0, 2]];
        let t = enumerate_cosets(2, &rels, &[], b).unwrap();
        assert_eq!(t.len(), 6);
        assert!(!t.to_group().is_abelian());
        assert_eq!(enumerate_cosets(2, &rels, &[vec![0]], b).unwrap().len(), 3);
        // <a, b | a^2, b^3, (ab)^5> = A5
        let rels = [vec![0, 0], vec![2, 2, 2], [0, 2].repeat(5)];
        assert_eq!(enumerate_cosets(2, &rels, &[], b).unwrap().len(), 60);
        // <a, b | a b a^-1 b^-1, a^4, b^2>
        let rels = [vec![0, 2, 1, 3], vec![0; 4], vec![2, 2]];
        let t = enumerate_cosets(2, &rels, &[], b).unwrap();
        assert_eq!(t.len(), 8);
        assert!(t.to_group().is_abelian());
        // trivial group from a redundant presentation
        let rels = [vec![0, 2], vec![0, 0, 2]];
        assert_eq!(enumerate_cosets(2, &rels, &[], b).unwrap().len(), 1);
    }

    #[test]
    fn infinite_group_exhausts_budget() {
        assert!(enumerate_cosets(1, &[], &[], Budget(1000)).is_err());
    }
}
