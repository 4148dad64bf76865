//! Finite groups given by multiplication tables.

use crate::budget::{Exhausted, Meter};
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("multiplication table is not {0}x{0}")]
    BadShape(usize),
    #[error("product {0}*{1} out of range")]
    OutOfRange(usize, usize),
    #[error("no two-sided unit")]
    NoUnit,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("multiplication not associative at ({0},{1},{2})")]
    NonAssociative(usize, usize, usize),
    #[error("elements {0:?} do not form a subgroup")]
    NotASubgroup(Vec<usize>),
}

/// A finite group on elements `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinGroup {
    n: usize,
    mul: Vec<usize>,
    unit: usize,
    inv: Vec<usize>,
    names: Vec<String>,
}

impl FinGroup {
    /// Validates a multiplication table. `mul[a][b]` is the product `a*b`.
    pub fn from_table(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = mul.len();
        if names.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(GroupError::BadShape(n));
        }
        for (a, row) in mul.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(GroupError::OutOfRange(a, b));
                }
            }
        }
        let flat: Vec<usize> = mul.concat();
        let at = |a: usize, b: usize| flat[a * n + b];
        let unit = (0..n)
            .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or(GroupError::NoUnit)?;
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| at(a, b) == unit && at(b, a) == unit)
                .ok_or(GroupError::NoInverse(a))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(GroupError::NonAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FinGroup { n, mul: flat, unit, inv, names })
    }

    fn from_fn(names: Vec<String>, op: impl Fn(usize, usize) -> usize) -> Self {
        let n = names.len();
        let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect();
        Self::from_table(names, mul).expect("constructor emits a group table")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Z/n with element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group needs positive order");
        let names = (0..n).map(|k| k.to_string()).collect();
        Self::from_fn(names, |a, b| (a + b) % n)
    }

    /// The symmetric group on `k` letters. Elements are permutations in
    /// lexicographic order; the product `a*b` applies `b` first.
    pub fn symmetric(k: usize) -> Self {
        let perms = permutations(k);
        let names = perms.iter().map(|p| perm_name(p)).collect();
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
        Self::from_fn(names, |a, b| {
            let prod: Vec<usize> = (0..k).map(|i| perms[a][perms[b][i]]).collect();
            index(&prod)
        })
    }

    /// The dihedral group of order `2n`; element `r^i s^j` is `i + n*j`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0);
        let names = (0..2 * n)
            .map(|e| format!("r{}s{}", e % n, e / n))
            .collect();
        Self::from_fn(names, |a, b| {
            let (i, j) = (a % n, a / n);
            let (k, l) = (b % n, b / n);
            // r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j+l)
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            rot + n * ((j + l) % 2)
        })
    }

    /// Direct product; element `(a,b)` is `a*|B| + b`.
    pub fn product(a: &FinGroup, b: &FinGroup) -> Self {
        let nb = b.order();
        let names = (0..a.order() * nb)
            .map(|e| format!("({},{})", a.name(e / nb), b.name(e % nb)))
            .collect();
        Self::from_fn(names, |x, y| {
            a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    /// Conjugation `Ad(g)(h) = g^-1 h g`.
    pub fn ad(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(g), h), g)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.unit {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[self.unit] = true;
        let mut queue = VecDeque::from([self.unit]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.n).filter(|&x| seen[x]).collect()
    }

    /// A canonical generating set: repeatedly add the smallest element not
    /// yet generated.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        while span.len() < self.n {
            let next = (0..self.n).find(|x| span.binary_search(x).is_err()).expect("proper");
            gens.push(next);
            span = self.closure(&gens);
        }
        gens
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let mut set = vec![false; self.n];
        for &e in elems {
            if e >= self.n {
                return false;
            }
            set[e] = true;
        }
        set[self.unit]
            && elems
                .iter()
                .all(|&a| set[self.inv(a)] && elems.iter().all(|&b| set[self.mul(a, b)]))
    }

    /// The subgroup on `elems` as a group in its own right; element `i` of
    /// the result is `elems[i]` after sorting.
    pub fn subgroup(&self, elems: &[usize]) -> Result<FinGroup, GroupError> {
        let mut elems = elems.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if !self.is_subgroup(&elems) {
            return Err(GroupError::NotASubgroup(elems));
        }
        let pos = |x: usize| elems.binary_search(&x).expect("closed");
        let mul = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos(self.mul(a, b))).collect())
            .collect();
        let names = elems.iter().map(|&a| self.names[a].clone()).collect();
        FinGroup::from_table(names, mul)
    }

    /// Whether `f` (images of `0..order`) is a homomorphism into `target`.
    pub fn is_hom_to(&self, target: &FinGroup, f: &[usize]) -> bool {
        f.len() == self.n
            && f.iter().all(|&x| x < target.order())
            && (0..self.n).all(|a| {
                (0..self.n).all(|b| f[self.mul(a, b)] == target.mul(f[a], f[b]))
            })
    }
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Cycle notation with letters numbered from 1, `()` for the identity.
fn perm_name(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut s = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        s.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            s.push_str(&(i + 1).to_string());
            i = p[i];
        }
        s.push(')');
    }
    if s.is_empty() {
        s.push_str("()");
    }
    s
}

/// Homomorphisms `h -> g` as image vectors, lexicographically sorted.
/// With `injective` only monomorphisms are kept.
///
/// Images of a canonical generating set are chosen one at a time; after
/// each choice the partial map is closed over the Cayley graph of the
/// subgroup generated so far and rejected on the first conflict.
pub fn homomorphisms(
    h: &FinGroup,
    g: &FinGroup,
    injective: bool,
    meter: &mut Meter,
) -> Result<Vec<Vec<usize>>, Exhausted> {
    let gens = h.generators();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; h.order()];
    map[h.unit()] = g.unit();
    extend(h, g, &gens, 0, &mut map, injective, meter, &mut out, usize::MAX)?;
    out.sort();
    Ok(out)
}

/// The first injective homomorphism found, if any; stops early.
pub fn find_isomorphism(
    h: &FinGroup,
    g: &FinGroup,
    meter: &mut Meter,
) -> Result<Option<Vec<usize>>, Exhausted> {
    if h.order() != g.order() {
        return Ok(None);
    }
    let gens = h.generators();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; h.order()];
    map[h.unit()] = g.unit();
    extend(h, g, &gens, 0, &mut map, true, meter, &mut out, 1)?;
    Ok(out.pop())
}

#[allow(clippy::too_many_arguments)]
fn extend(
    h: &FinGroup,
    g: &FinGroup,
    gens: &[usize],
    k: usize,
    map: &mut Vec<usize>,
    injective: bool,
    meter: &mut Meter,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) -> Result<(), Exhausted> {
    if out.len() >= limit {
        return Ok(());
    }
    if k == gens.len() {
        if !injective || is_injective(map, g.order()) {
            out.push(map.clone());
        }
        return Ok(());
    }
    let x = gens[k];
    let ord = h.element_order(x);
    for y in 0..g.order() {
        meter.tick()?;
        if ord % g.element_order(y) != 0 {
            continue;
        }
        if injective && g.element_order(y) != ord {
            continue;
        }
        let saved = map.clone();
        if close(h, g, &gens[..=k], x, y, map) {
            extend(h, g, gens, k + 1, map, injective, meter, out, limit)?;
        }
        *map = saved;
        if out.len() >= limit {
            break;
        }
    }
    Ok(())
}

/// Fix `map[x] = y` and propagate `map[a*s] = map[a]*map[s]` over the
/// generators `gens`. Returns false on a conflict.
fn close(h: &FinGroup, g: &FinGroup, gens: &[usize], x: usize, y: usize, map: &mut [usize]) -> bool {
    if map[x] != usize::MAX {
        return map[x] == y;
    }
    map[x] = y;
    let mut queue: VecDeque<usize> = (0..h.order()).filter(|&a| map[a] != usize::MAX).collect();
    while let Some(a) = queue.pop_front() {
        for &s in gens {
            let b = h.mul(a, s);
            let img = g.mul(map[a], map[s]);
            if map[b] == usize::MAX {
                map[b] = img;
                queue.push_back(b);
            } else if map[b] != img {
                return false;
            }
        }
    }
    true
}

fn is_injective(map: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
}
