//! Finite index 2-categories whose hom-groupoids are either discrete or
//! chaotic, and the category of covers of a finite set.

use std::collections::HashMap;

/// Index of an arrow of an [`IndexCategory2`].
pub type Mor = usize;

/// Shape of every hom-groupoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cells {
    /// Only identity 2-cells.
    Discrete,
    /// Exactly one 2-cell between any two parallel arrows.
    Chaotic,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IndexError {
    #[error("arrow {0} has an endpoint out of range")]
    Endpoint(Mor),
    #[error("object {0} has no identity")]
    Identity(usize),
    #[error("composite of ({0},{1}) is missing or has the wrong endpoints")]
    Composite(Mor, Mor),
    #[error("unit law fails at arrow {0}")]
    Unit(Mor),
    #[error("composition is not associative at ({0},{1},{2})")]
    Associativity(Mor, Mor, Mor),
}

/// A finite category with invertible 2-cells. `comp(p, q)` is `p` after `q`.
#[derive(Clone, Debug)]
pub struct IndexCategory2 {
    n_objects: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    ident: Vec<Mor>,
    comp: HashMap<(Mor, Mor), Mor>,
    cells: Cells,
}

impl IndexCategory2 {
    /// Build and check the category axioms. `compose(p, q)` is only called
    /// on pairs with `src p == tgt q`.
    pub fn new(
        n_objects: usize,
        ends: Vec<(usize, usize)>,
        ident: Vec<Mor>,
        cells: Cells,
        compose: impl Fn(Mor, Mor) -> Mor,
    ) -> Result<Self, IndexError> {
        let (src, tgt): (Vec<_>, Vec<_>) = ends.into_iter().unzip();
        if let Some(p) = (0..src.len()).find(|&p| src[p] >= n_objects || tgt[p] >= n_objects) {
            return Err(IndexError::Endpoint(p));
        }
        if ident.len() != n_objects {
            return Err(IndexError::Identity(ident.len().min(n_objects)));
        }
        for (x, &e) in ident.iter().enumerate() {
            if e >= src.len() || src[e] != x || tgt[e] != x {
                return Err(IndexError::Identity(x));
            }
        }
        let mut comp = HashMap::new();
        for p in 0..src.len() {
            for q in 0..src.len() {
                if src[p] == tgt[q] {
                    let r = compose(p, q);
                    if r >= src.len() || src[r] != src[q] || tgt[r] != tgt[p] {
                        return Err(IndexError::Composite(p, q));
                    }
                    comp.insert((p, q), r);
                }
            }
        }
        let c = IndexCategory2 { n_objects, src, tgt, ident, comp, cells };
        for p in c.arrows() {
            if c.comp(c.id(c.tgt(p)), p) != p || c.comp(p, c.id(c.src(p))) != p {
                return Err(IndexError::Unit(p));
            }
        }
        for (p, q, r) in c.composable_triples() {
            if c.comp(c.comp(p, q), r) != c.comp(p, c.comp(q, r)) {
                return Err(IndexError::Associativity(p, q, r));
            }
        }
        Ok(c)
    }

    /// One object, one arrow.
    pub fn point() -> Self {
        Self::new(1, vec![(0, 0)], vec![0], Cells::Discrete, |_, _| 0).expect("point")
    }

    /// `0 -> 1 <- 2`: arrow 3 is `0 -> 1`, arrow 4 is `2 -> 1`. A
    /// contravariant diagram on it is a span `F0 <- F1 -> F2`.
    pub fn span() -> Self {
        let ends = vec![(0, 0), (1, 1), (2, 2), (0, 1), (2, 1)];
        Self::new(3, ends.clone(), vec![0, 1, 2], Cells::Discrete, |p, q| {
            if p < 3 {
                q
            } else {
                p
            }
        })
        .expect("span")
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_arrows(&self) -> usize {
        self.src.len()
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.n_objects
    }

    pub fn arrows(&self) -> std::ops::Range<Mor> {
        0..self.src.len()
    }

    pub fn src(&self, p: Mor) -> usize {
        self.src[p]
    }

    pub fn tgt(&self, p: Mor) -> usize {
        self.tgt[p]
    }

    pub fn id(&self, x: usize) -> Mor {
        self.ident[x]
    }

    pub fn is_identity(&self, p: Mor) -> bool {
        self.ident[self.src[p]] == p
    }

    pub fn cells(&self) -> Cells {
        self.cells
    }

    pub fn comp(&self, p: Mor, q: Mor) -> Mor {
        self.comp[&(p, q)]
    }

    pub fn hom(&self, x: usize, y: usize) -> impl Iterator<Item = Mor> + '_ {
        self.arrows().filter(move |&p| self.src[p] == x && self.tgt[p] == y)
    }

    /// Pairs `(p, q)` with `p ∘ q` defined, in lexicographic order.
    pub fn composable_pairs(&self) -> Vec<(Mor, Mor)> {
        let mut v: Vec<_> = self.comp.keys().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn composable_triples(&self) -> Vec<(Mor, Mor, Mor)> {
        let mut out = Vec::new();
        for (p, q) in self.composable_pairs() {
            for r in self.arrows().filter(|&r| self.tgt[r] == self.src[q]) {
                out.push((p, q, r));
            }
        }
        out
    }

    /// Non-identity 2-cells `p ⇒ q` as ordered pairs of distinct parallel
    /// arrows.
    pub fn two_cells(&self) -> Vec<(Mor, Mor)> {
        match self.cells {
            Cells::Discrete => Vec::new(),
            Cells::Chaotic => self
                .arrows()
                .flat_map(|p| {
                    self.arrows()
                        .filter(move |&q| q != p && self.src[q] == self.src[p] && self.tgt[q] == self.tgt[p])
                        .map(move |q| (p, q))
                })
                .collect(),
        }
    }

    /// Is there a 2-cell `p ⇒ q`?
    pub fn has_cell(&self, p: Mor, q: Mor) -> bool {
        p == q
            || (self.cells == Cells::Chaotic && self.src[p] == self.src[q] && self.tgt[p] == self.tgt[q])
    }
}

/// The 2-category of covers `U -> T` of `T = {0, .., t-1}` with `|U|` up to
/// a bound. Covers are surjective maps listed by size, then
/// lexicographically; arrows `V -> U` are maps over `T`, grouped by
/// `(source, target)`, and parallel arrows are joined by a unique 2-cell.
#[derive(Clone, Debug)]
pub struct Cov2 {
    pub category: IndexCategory2,
    /// `covers[i][u]` is the point of `T` under `u`.
    pub covers: Vec<Vec<usize>>,
    /// `maps[p][v]` is the image of `v` under the refinement `p`.
    pub maps: Vec<Vec<usize>>,
    /// The identity cover of `T`, when within the bound. Every cover has
    /// exactly one arrow to it.
    pub terminal: Option<usize>,
}

impl Cov2 {
    /// The unique arrow `U -> T` to the identity cover.
    pub fn to_terminal(&self, u: usize) -> Option<Mor> {
        let t = self.terminal?;
        self.category.hom(u, t).next()
    }

    /// Every two covers admit a cover refining both.
    pub fn is_filtered(&self) -> bool {
        let c = &self.category;
        c.objects().all(|u| {
            c.objects().all(|v| {
                c.objects().any(|w| c.hom(w, u).next().is_some() && c.hom(w, v).next().is_some())
            })
        })
    }
}

pub fn cov2_builder(t: usize, bound: usize) -> Cov2 {
    let mut covers = Vec::new();
    for n in 1..=bound {
        let mut f = vec![0usize; n];
        if t == 0 {
            break;
        }
        loop {
            let mut hit = vec![false; t];
            f.iter().for_each(|&x| hit[x] = true);
            if hit.iter().all(|&h| h) {
                covers.push(f.clone());
            }
            let Some(i) = (0..n).rev().find(|&i| f[i] + 1 < t) else { break };
            f[i] += 1;
            f[i + 1..].iter_mut().for_each(|x| *x = 0);
        }
    }
    let mut ends = Vec::new();
    let mut maps: Vec<Vec<usize>> = Vec::new();
    for (vi, v) in covers.iter().enumerate() {
        for (ui, u) in covers.iter().enumerate() {
            // maps m: V -> U with u[m[x]] == v[x]
            let options: Vec<Vec<usize>> =
                v.iter().map(|&y| (0..u.len()).filter(|&j| u[j] == y).collect()).collect();
            let mut pick = vec![0usize; v.len()];
            loop {
                maps.push(pick.iter().zip(&options).map(|(&i, o)| o[i]).collect());
                ends.push((vi, ui));
                let Some(i) = (0..pick.len()).rev().find(|&i| pick[i] + 1 < options[i].len()) else {
                    break;
                };
                pick[i] += 1;
                pick[i + 1..].iter_mut().for_each(|c| *c = 0);
            }
        }
    }
    let index: HashMap<(usize, usize, &[usize]), Mor> =
        maps.iter().enumerate().map(|(p, m)| ((ends[p].0, ends[p].1, m.as_slice()), p)).collect();
    let ident: Vec<Mor> = covers
        .iter()
        .enumerate()
        .map(|(i, c)| index[&(i, i, (0..c.len()).collect::<Vec<_>>().as_slice())])
        .collect();
    let category = IndexCategory2::new(covers.len(), ends.clone(), ident, Cells::Chaotic, |p, q| {
        let m: Vec<usize> = maps[q].iter().map(|&x| maps[p][x]).collect();
        index[&(ends[q].0, ends[p].1, m.as_slice())]
    })
    .expect("covers form a category");
    let terminal = covers.iter().position(|c| c.len() == t && c.iter().enumerate().all(|(i, &x)| i == x));
    Cov2 { category, covers, maps, terminal }
}
