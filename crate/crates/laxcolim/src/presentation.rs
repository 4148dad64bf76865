//! The lax colimit of a diagram of groupoids, presented by generators and
//! relations.
//!
//! Vertices are the objects of all values. Each arrow `α` of a value is a
//! generator, and so is `p_σ: σ -> p*σ` for every non-identity index arrow
//! `p` and object `σ` of its target value. Identity index arrows would give
//! generators forced to be identities by unitality, so they are left out.

use crate::diagram::LaxDiagram;
use crate::index::Mor;
use gpd_core::{Arr, Obj};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKind {
    /// An arrow of the value at `object`.
    Arrow { object: usize, arrow: Arr },
    /// `p_σ` for an index arrow `p` and an object `σ` of `F(tgt p)`.
    Refine { arrow: Mor, object: Obj },
    /// A generator of a presentation given directly, with a caller label.
    Free { label: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Generator {
    pub src: usize,
    pub tgt: usize,
    pub kind: GeneratorKind,
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Self {
        Letter { gen, inv: false }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }
}

/// Which family a relation comes from. The first four are the families
/// of a lax colimit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `αβ = γ` inside one value.
    Composition,
    /// `p_τ α = p*(α) p_σ`.
    Naturality,
    /// `(pq)_σ = F(p,q)(σ) q_{p*σ} p_σ`.
    Comparison,
    /// `q_σ = F(ζ)(σ) p_σ`.
    TwoCell,
    /// Supplied directly.
    Given,
}

/// A word `[x1, .., xk]` read as the composite `x1 ∘ .. ∘ xk`, required to
/// be an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub family: Family,
    pub word: Vec<Letter>,
}

#[derive(Clone, Debug)]
pub struct GroupoidPresentation {
    /// `offsets[t]` is the vertex of object 0 of the value at `t`.
    pub offsets: Vec<usize>,
    pub n_vertices: usize,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
    arrow_gen: Vec<usize>,
    refine_gen: Vec<Option<usize>>,
}

impl GroupoidPresentation {
    /// A presentation given by generators `(src, tgt)` with labels and
    /// relations. `None` when an endpoint is out of range or a relation is
    /// not a composable loop.
    pub fn from_parts(n_vertices: usize, generators: Vec<(usize, usize, usize)>, relations: Vec<Vec<Letter>>) -> Option<Self> {
        if generators.iter().any(|&(s, t, _)| s >= n_vertices || t >= n_vertices) {
            return None;
        }
        let generators: Vec<Generator> = generators
            .into_iter()
            .map(|(src, tgt, label)| Generator { src, tgt, kind: GeneratorKind::Free { label } })
            .collect();
        let mut pres = GroupoidPresentation {
            offsets: vec![0],
            n_vertices,
            generators,
            relations: Vec::new(),
            arrow_gen: Vec::new(),
            refine_gen: Vec::new(),
        };
        let n = pres.generators.len();
        if relations.iter().any(|w| w.iter().any(|l| l.gen >= n) || !pres.is_composable(w)) {
            return None;
        }
        pres.relations = relations.into_iter().map(|word| Relation { family: Family::Given, word }).collect();
        Some(pres)
    }

    pub fn vertex(&self, t: usize, x: Obj) -> usize {
        self.offsets[t] + x
    }

    /// `(object, local object)` of a vertex.
    pub fn locate(&self, v: usize) -> (usize, Obj) {
        let t = self.offsets.partition_point(|&o| o <= v) - 1;
        (t, v - self.offsets[t])
    }

    /// Generator of the arrow `a` of the value at `t`.
    pub fn arrow_generator(&self, t: usize, a: Arr) -> usize {
        self.arrow_gen[t] + a
    }

    /// Generator `p_σ`, or `None` when `p` is an identity.
    pub fn refine_generator(&self, p: Mor, sigma: Obj) -> Option<usize> {
        self.refine_gen[p].map(|g| g + sigma)
    }

    fn src_of(&self, l: Letter) -> usize {
        let g = &self.generators[l.gen];
        if l.inv {
            g.tgt
        } else {
            g.src
        }
    }

    fn tgt_of(&self, l: Letter) -> usize {
        let g = &self.generators[l.gen];
        if l.inv {
            g.src
        } else {
            g.tgt
        }
    }

    /// Consecutive letters compose and the word is a loop.
    pub fn is_composable(&self, word: &[Letter]) -> bool {
        word.windows(2).all(|w| self.src_of(w[0]) == self.tgt_of(w[1]))
            && word.first().zip(word.last()).map_or(true, |(a, z)| self.tgt_of(*a) == self.src_of(*z))
    }

    /// Relations as signed generator ids, counted from 1 so the sign is
    /// always visible.
    pub fn signed_relations(&self) -> Vec<Vec<i64>> {
        self.relations
            .iter()
            .map(|r| {
                r.word
                    .iter()
                    .map(|l| if l.inv { -(l.gen as i64 + 1) } else { l.gen as i64 + 1 })
                    .collect()
            })
            .collect()
    }

    pub fn count(&self, family: Family) -> usize {
        self.relations.iter().filter(|r| r.family == family).count()
    }

    /// Does the presentation contain this relation, up to rotation?
    pub fn contains_relation(&self, word: &[Letter]) -> bool {
        self.relations.iter().any(|r| {
            r.word.len() == word.len()
                && (0..word.len().max(1)).any(|k| r.word.iter().cycle().skip(k).take(word.len()).eq(word.iter()))
        })
    }
}

pub fn hocolim_presentation(d: &LaxDiagram) -> GroupoidPresentation {
    let c = &d.index;
    let mut offsets = Vec::with_capacity(c.n_objects());
    let mut n_vertices = 0;
    for t in c.objects() {
        offsets.push(n_vertices);
        n_vertices += d.values[t].n_objects();
    }
    let mut generators = Vec::new();
    let mut arrow_gen = Vec::new();
    for t in c.objects() {
        arrow_gen.push(generators.len());
        let v = &d.values[t];
        generators.extend(v.arrows().map(|a| Generator {
            src: offsets[t] + v.src(a),
            tgt: offsets[t] + v.tgt(a),
            kind: GeneratorKind::Arrow { object: t, arrow: a },
        }));
    }
    let mut refine_gen = vec![None; c.n_arrows()];
    for p in c.arrows().filter(|&p| !c.is_identity(p)) {
        refine_gen[p] = Some(generators.len());
        let (u, t) = (c.src(p), c.tgt(p));
        generators.extend(d.values[t].objects().map(|s| Generator {
            src: offsets[t] + s,
            tgt: offsets[u] + d.functors[p].obj[s],
            kind: GeneratorKind::Refine { arrow: p, object: s },
        }));
    }
    let mut pres = GroupoidPresentation { offsets, n_vertices, generators, relations: Vec::new(), arrow_gen, refine_gen };
    let mut relations = Vec::new();
    let arrow = |t: usize, a: Arr| Letter::new(pres.arrow_generator(t, a));
    let refine = |p: Mor, s: Obj| pres.refine_generator(p, s).map(Letter::new);

    for t in c.objects() {
        let v = &d.values[t];
        for a in v.arrows() {
            for &b in v.in_arrows(v.src(a)) {
                let word = vec![arrow(t, a), arrow(t, b), arrow(t, v.comp(a, b)).inverse()];
                relations.push(Relation { family: Family::Composition, word });
            }
        }
    }
    for p in c.arrows().filter(|&p| !c.is_identity(p)) {
        let (u, t) = (c.src(p), c.tgt(p));
        let (vt, fp) = (&d.values[t], &d.functors[p]);
        for a in vt.arrows() {
            let word = vec![
                refine(p, vt.tgt(a)).expect("non-identity"),
                arrow(t, a),
                refine(p, vt.src(a)).expect("non-identity").inverse(),
                arrow(u, fp.arr[a]).inverse(),
            ];
            relations.push(Relation { family: Family::Naturality, word });
        }
    }
    let strict = d.is_strict();
    for (p, q) in c.composable_pairs() {
        if c.is_identity(p) || c.is_identity(q) {
            continue;
        }
        let (v, t) = (c.src(q), c.tgt(p));
        let pq = c.comp(p, q);
        let vv = &d.values[v];
        for s in d.values[t].objects() {
            let theta = d.comparison(p, q).components[s];
            let mut word = Vec::new();
            if !(strict && vv.is_identity(theta)) {
                word.push(arrow(v, theta));
            }
            word.extend(refine(q, d.functors[p].obj[s]));
            word.extend(refine(p, s));
            word.extend(refine(pq, s).map(Letter::inverse));
            relations.push(Relation { family: Family::Comparison, word });
        }
    }
    for (p, q) in c.two_cells() {
        let (u, t) = (c.src(p), c.tgt(p));
        let z = d.cell(p, q);
        for s in d.values[t].objects() {
            let mut word = vec![arrow(u, z.components[s])];
            word.extend(refine(p, s));
            word.extend(refine(q, s).map(Letter::inverse));
            relations.push(Relation { family: Family::TwoCell, word });
        }
    }
    debug_assert!(relations.iter().all(|r| pres.is_composable(&r.word)));
    pres.relations = relations;
    pres
}
