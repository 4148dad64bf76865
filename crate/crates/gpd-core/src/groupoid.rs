//! Finite groupoids with dense integer ids.

use std::collections::HashMap;

pub type Obj = usize;
pub type Arr = usize;

/// The first violated groupoid axiom. Entities are named by their labels.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupoidError {
    #[error("EndpointMismatch at ({0},{1})")]
    EndpointMismatch(String, String),
    #[error("MissingIdentity at {0}")]
    MissingIdentity(String),
    #[error("BadInverse at {0}")]
    BadInverse(String),
    #[error("NonAssociative at ({0},{1},{2})")]
    NonAssociative(String, String, String),
    #[error("malformed tables: {0}")]
    Malformed(String),
}

/// A finite groupoid. Composition `comp(a, b)` is `a` after `b` and is
/// defined exactly when `src(a) == tgt(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroupoid {
    n_obj: usize,
    src: Vec<Obj>,
    tgt: Vec<Obj>,
    ident: Vec<Arr>,
    inv: Vec<Arr>,
    out: Vec<Vec<Arr>>,
    into: Vec<Vec<Arr>>,
    pos_in: Vec<usize>,
    comp: Vec<Vec<Arr>>,
}

impl FinGroupoid {
    /// Assemble a groupoid from structure maps. The composition closure is
    /// called once per composable pair. The result is audited in debug
    /// builds when small enough.
    pub fn from_parts(
        n_obj: usize,
        src: Vec<Obj>,
        tgt: Vec<Obj>,
        ident: Vec<Arr>,
        inv: Vec<Arr>,
        compose: impl Fn(Arr, Arr) -> Arr,
    ) -> Self {
        let g = Self::assemble(n_obj, src, tgt, ident, inv, |a, b| Some(compose(a, b)))
            .expect("composition defined on composable pairs");
        g.debug_audit();
        g
    }

    /// Like [`from_parts`](Self::from_parts) but derives identities and
    /// inverses from the composition.
    pub fn from_composition(
        n_obj: usize,
        src: Vec<Obj>,
        tgt: Vec<Obj>,
        compose: impl Fn(Arr, Arr) -> Arr,
    ) -> Self {
        let n_arr = src.len();
        let mut out = vec![Vec::new(); n_obj];
        for a in 0..n_arr {
            out[src[a]].push(a);
        }
        let ident: Vec<Arr> = (0..n_obj)
            .map(|x| {
                *out[x]
                    .iter()
                    .find(|&&a| tgt[a] == x && compose(a, a) == a)
                    .expect("identity exists")
            })
            .collect();
        let inv: Vec<Arr> = (0..n_arr)
            .map(|a| {
                *out[tgt[a]]
                    .iter()
                    .find(|&&b| tgt[b] == src[a] && compose(b, a) == ident[src[a]])
                    .expect("inverse exists")
            })
            .collect();
        Self::from_parts(n_obj, src, tgt, ident, inv, compose)
    }

    fn assemble(
        n_obj: usize,
        src: Vec<Obj>,
        tgt: Vec<Obj>,
        ident: Vec<Arr>,
        inv: Vec<Arr>,
        compose: impl Fn(Arr, Arr) -> Option<Arr>,
    ) -> Result<Self, (Arr, Arr)> {
        let n_arr = src.len();
        assert_eq!(tgt.len(), n_arr);
        assert_eq!(inv.len(), n_arr);
        assert_eq!(ident.len(), n_obj);
        let mut out = vec![Vec::new(); n_obj];
        let mut into = vec![Vec::new(); n_obj];
        let mut pos_in = vec![0; n_arr];
        for a in 0..n_arr {
            out[src[a]].push(a);
            pos_in[a] = into[tgt[a]].len();
            into[tgt[a]].push(a);
        }
        let mut comp = Vec::with_capacity(n_arr);
        for a in 0..n_arr {
            let mut row = Vec::with_capacity(into[src[a]].len());
            for &b in &into[src[a]] {
                row.push(compose(a, b).ok_or((a, b))?);
            }
            comp.push(row);
        }
        Ok(FinGroupoid { n_obj, src, tgt, ident, inv, out, into, pos_in, comp })
    }

    pub fn n_objects(&self) -> usize {
        self.n_obj
    }

    pub fn n_arrows(&self) -> usize {
        self.src.len()
    }

    pub fn objects(&self) -> std::ops::Range<Obj> {
        0..self.n_obj
    }

    pub fn arrows(&self) -> std::ops::Range<Arr> {
        0..self.src.len()
    }

    pub fn src(&self, a: Arr) -> Obj {
        self.src[a]
    }

    pub fn tgt(&self, a: Arr) -> Obj {
        self.tgt[a]
    }

    pub fn id(&self, x: Obj) -> Arr {
        self.ident[x]
    }

    pub fn inv(&self, a: Arr) -> Arr {
        self.inv[a]
    }

    pub fn is_identity(&self, a: Arr) -> bool {
        self.ident[self.src[a]] == a
    }

    /// `a` after `b`; panics unless `src(a) == tgt(b)`.
    pub fn comp(&self, a: Arr, b: Arr) -> Arr {
        assert_eq!(self.src[a], self.tgt[b], "composing non-composable arrows");
        self.comp[a][self.pos_in[b]]
    }

    pub fn try_comp(&self, a: Arr, b: Arr) -> Option<Arr> {
        (self.src[a] == self.tgt[b]).then(|| self.comp[a][self.pos_in[b]])
    }

    /// Compose a path given outermost first: `[a, b, c]` is `a∘b∘c`.
    pub fn comp_all(&self, path: &[Arr]) -> Arr {
        let (&last, rest) = path.split_last().expect("non-empty path");
        rest.iter().rev().fold(last, |acc, &a| self.comp(a, acc))
    }

    /// Arrows with source `x`, in id order.
    pub fn out_arrows(&self, x: Obj) -> &[Arr] {
        &self.out[x]
    }

    /// Arrows with target `x`, in id order.
    pub fn in_arrows(&self, x: Obj) -> &[Arr] {
        &self.into[x]
    }

    /// Arrows `x -> y` in id order.
    pub fn hom(&self, x: Obj, y: Obj) -> impl Iterator<Item = Arr> + '_ {
        self.out[x].iter().copied().filter(move |&a| self.tgt[a] == y)
    }

    pub fn aut(&self, x: Obj) -> Vec<Arr> {
        self.hom(x, x).collect()
    }

    /// Number of composable pairs.
    pub fn n_composable_pairs(&self) -> usize {
        self.comp.iter().map(Vec::len).sum()
    }

    /// Number of composable triples `(a, b, c)`.
    pub fn n_composable_triples(&self) -> usize {
        self.arrows()
            .map(|b| self.out[self.tgt[b]].len() * self.into[self.src[b]].len())
            .sum()
    }

    fn debug_audit(&self) {
        #[cfg(debug_assertions)]
        if self.n_composable_triples() <= 200_000 {
            if let Err(e) = self.validate() {
                panic!("constructed groupoid fails audit: {e}");
            }
        }
    }

    /// Full audit of the axioms, reporting the first violation with arrows
    /// named by their ids.
    pub fn validate(&self) -> Result<(), GroupoidError> {
        let name = |a: Arr| a.to_string();
        for a in self.arrows() {
            for &b in &self.into[self.src[a]] {
                let c = self.comp(a, b);
                if self.src[c] != self.src[b] || self.tgt[c] != self.tgt[a] {
                    return Err(GroupoidError::EndpointMismatch(name(a), name(b)));
                }
            }
        }
        for x in self.objects() {
            let e = self.ident[x];
            let ok = self.src[e] == x
                && self.tgt[e] == x
                && self.out[x].iter().all(|&a| self.comp(a, e) == a)
                && self.into[x].iter().all(|&a| self.comp(e, a) == a);
            if !ok {
                return Err(GroupoidError::MissingIdentity(x.to_string()));
            }
        }
        for a in self.arrows() {
            let b = self.inv[a];
            let ok = self.src[b] == self.tgt[a]
                && self.tgt[b] == self.src[a]
                && self.comp(b, a) == self.ident[self.src[a]]
                && self.comp(a, b) == self.ident[self.tgt[a]];
            if !ok {
                return Err(GroupoidError::BadInverse(name(a)));
            }
        }
        for b in self.arrows() {
            for &a in &self.out[self.tgt[b]] {
                let ab = self.comp(a, b);
                for &c in &self.into[self.src[b]] {
                    if self.comp(ab, c) != self.comp(a, self.comp(b, c)) {
                        return Err(GroupoidError::NonAssociative(name(a), name(b), name(c)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Groupoid tables with string labels, as read from a file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawGroupoid {
    pub objects: Vec<String>,
    /// `(id, src, tgt)`
    pub arrows: Vec<(String, String, String)>,
    /// `(a, b, c)` meaning `a∘b = c`
    pub comp: Vec<(String, String, String)>,
    pub id: Vec<(String, String)>,
    pub inv: Vec<(String, String)>,
}

/// Validated groupoid together with the labels it was read with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeled {
    pub groupoid: FinGroupoid,
    pub objects: Vec<String>,
    pub arrows: Vec<String>,
}

/// Check raw tables against the groupoid axioms. Checks run in the order
/// endpoints, identities, inverses, associativity; the first failure is
/// reported with the input labels.
pub fn validate_groupoid(raw: &RawGroupoid) -> Result<Labeled, GroupoidError> {
    let malformed = |s: String| GroupoidError::Malformed(s);
    let mut obj_ix = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if obj_ix.insert(o.as_str(), i).is_some() {
            return Err(malformed(format!("duplicate object {o}")));
        }
    }
    let mut arr_ix = HashMap::new();
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    for (i, (a, s, t)) in raw.arrows.iter().enumerate() {
        if arr_ix.insert(a.as_str(), i).is_some() {
            return Err(malformed(format!("duplicate arrow {a}")));
        }
        let look = |o: &String| {
            obj_ix
                .get(o.as_str())
                .copied()
                .ok_or_else(|| malformed(format!("arrow {a} names unknown object {o}")))
        };
        src.push(look(s)?);
        tgt.push(look(t)?);
    }
    let arr = |a: &String| {
        arr_ix
            .get(a.as_str())
            .copied()
            .ok_or_else(|| malformed(format!("unknown arrow {a}")))
    };
    let label = |a: Arr| raw.arrows[a].0.clone();
    let n_obj = raw.objects.len();

    let mut table = HashMap::new();
    for (a, b, c) in &raw.comp {
        let (ia, ib, ic) = (arr(a)?, arr(b)?, arr(c)?);
        if src[ia] != tgt[ib] || src[ic] != src[ib] || tgt[ic] != tgt[ia] {
            return Err(GroupoidError::EndpointMismatch(a.clone(), b.clone()));
        }
        if let Some(prev) = table.insert((ia, ib), ic) {
            if prev != ic {
                return Err(malformed(format!("conflicting composites for ({a},{b})")));
            }
        }
    }
    for a in 0..src.len() {
        for b in 0..src.len() {
            if src[a] == tgt[b] && !table.contains_key(&(a, b)) {
                return Err(GroupoidError::EndpointMismatch(label(a), label(b)));
            }
        }
    }

    let mut ident = vec![usize::MAX; n_obj];
    for (x, e) in &raw.id {
        let ix = *obj_ix
            .get(x.as_str())
            .ok_or_else(|| malformed(format!("unknown object {x}")))?;
        ident[ix] = arr(e)?;
    }
    let mut inv = vec![usize::MAX; src.len()];
    for (a, b) in &raw.inv {
        inv[arr(a)?] = arr(b)?;
    }
    for x in 0..n_obj {
        let e = ident[x];
        let ok = e != usize::MAX
            && src[e] == x
            && tgt[e] == x
            && (0..src.len()).all(|a| {
                (src[a] != x || table[&(a, e)] == a) && (tgt[a] != x || table[&(e, a)] == a)
            });
        if !ok {
            return Err(GroupoidError::MissingIdentity(raw.objects[x].clone()));
        }
    }
    for a in 0..src.len() {
        let b = inv[a];
        let ok = b != usize::MAX
            && src[b] == tgt[a]
            && tgt[b] == src[a]
            && table[&(b, a)] == ident[src[a]]
            && table[&(a, b)] == ident[tgt[a]];
        if !ok {
            return Err(GroupoidError::BadInverse(label(a)));
        }
    }
    let g = FinGroupoid::assemble(n_obj, src, tgt, ident, inv, |a, b| table.get(&(a, b)).copied())
        .map_err(|(a, b)| GroupoidError::EndpointMismatch(label(a), label(b)))?;
    for b in g.arrows() {
        for &a in g.out_arrows(g.tgt(b)) {
            for &c in g.in_arrows(g.src(b)) {
                if g.comp(g.comp(a, b), c) != g.comp(a, g.comp(b, c)) {
                    return Err(GroupoidError::NonAssociative(label(a), label(b), label(c)));
                }
            }
        }
    }
    Ok(Labeled {
        groupoid: g,
        objects: raw.objects.clone(),
        arrows: raw.arrows.iter().map(|t| t.0.clone()).collect(),
    })
}
