//! The presented groupoid as a finite groupoid, when it is one.
//!
//! After Tietze reduction each component is a pair groupoid times its
//! vertex group. A spanning tree `T` of surviving generators fixes paths
//! `T_v` from the component's base vertex; a generator `e: s -> t` becomes
//! the loop `T_t⁻¹ e T_s`, tree generators become trivial, and coset
//! enumeration over the trivial subgroup finds the vertex group. The
//! enumeration runs under a budget, so infinite vertex groups surface as
//! an error instead of a non-terminating loop.

use crate::presentation::{GroupoidPresentation, Letter};
use crate::solver::tietze;
use gpd_core::budget::TIETZE_STEPS;
use gpd_core::cosets::enumerate_cosets;
use gpd_core::{Arr, Budget, Exhausted, FinGroup, FinGroupoid, Functor, Obj};
use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Component {
    vertices: Vec<usize>,
    group: FinGroup,
    /// Group generators: surviving non-tree presentation generators.
    gens: Vec<usize>,
    /// Shortest word in generator letters (`2i`, `2i+1` for inverses) for
    /// every element.
    words: Vec<Vec<usize>>,
    /// Element of each letter.
    letters: Vec<usize>,
    offset: Arr,
}

/// A finite groupoid isomorphic to the presented one, with the image of
/// every generator. Objects are the vertices; arrows of a component are
/// numbered by `(source, target, element)` in that order.
#[derive(Clone, Debug)]
pub struct Realized {
    pub groupoid: FinGroupoid,
    pub generators: Vec<Arr>,
    components: Vec<Component>,
    /// `(component, position)` of each vertex.
    place: Vec<(usize, usize)>,
    /// Tree path from the base vertex, as a word read as a composite.
    paths: Vec<Vec<Letter>>,
}

pub fn realize(p: &GroupoidPresentation, budget: Budget) -> Result<Realized, Exhausted> {
    let reduced = tietze(p, TIETZE_STEPS);
    let nv = p.n_vertices;
    let mut adj: Vec<Vec<(usize, Letter)>> = vec![Vec::new(); nv];
    for (x, g) in p.generators.iter().enumerate().filter(|(x, _)| reduced.alive[*x]) {
        adj[g.src].push((g.tgt, Letter::new(x)));
        adj[g.tgt].push((g.src, Letter::new(x).inverse()));
    }
    // breadth-first forest over surviving generators
    let mut place = vec![(usize::MAX, 0); nv];
    let mut paths: Vec<Vec<Letter>> = vec![Vec::new(); nv];
    let mut tree = vec![false; p.generators.len()];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for root in 0..nv {
        if place[root].0 != usize::MAX {
            continue;
        }
        let c = members.len();
        let mut list = vec![root];
        place[root] = (c, 0);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(u, l) in &adj[v] {
                if place[u].0 == usize::MAX {
                    place[u] = (c, list.len());
                    list.push(u);
                    tree[l.gen] = true;
                    // T_u = l ∘ T_v
                    let mut path = vec![l];
                    path.extend_from_slice(&paths[v]);
                    paths[u] = path;
                    queue.push_back(u);
                }
            }
        }
        members.push(list);
    }

    let mut local = vec![usize::MAX; p.generators.len()];
    let mut gens: Vec<Vec<usize>> = vec![Vec::new(); members.len()];
    for x in (0..p.generators.len()).filter(|&x| reduced.alive[x] && !tree[x]) {
        let c = place[p.generators[x].src].0;
        local[x] = gens[c].len();
        gens[c].push(x);
    }
    let mut relators: Vec<Vec<Vec<usize>>> = vec![Vec::new(); members.len()];
    for w in &reduced.relations {
        let c = place[p.generators[w[0].gen].src].0;
        let r: Vec<usize> =
            w.iter().filter(|l| !tree[l.gen]).map(|l| 2 * local[l.gen] + usize::from(l.inv)).collect();
        if !r.is_empty() {
            relators[c].push(r);
        }
    }

    let mut components = Vec::with_capacity(members.len());
    let mut offset = 0;
    for ((vertices, gens), rels) in members.into_iter().zip(gens).zip(relators) {
        let table = enumerate_cosets(gens.len(), &rels, &[], budget)?;
        let group = table.to_group();
        let words = table.representatives();
        let letters = (0..2 * gens.len()).map(|x| table.trace(0, &[x])).collect();
        let n = vertices.len();
        components.push(Component { vertices, group, gens, words, letters, offset });
        offset += n * n * components.last().expect("pushed").group.order();
    }

    let groupoid = build(nv, &components, &place, offset);
    let mut real = Realized { groupoid, generators: Vec::new(), components, place, paths };
    // loop elements of every generator: surviving ones directly, the rest
    // through their defining words, last eliminated first
    let mut element: Vec<Option<usize>> = vec![None; p.generators.len()];
    for x in 0..p.generators.len() {
        if reduced.alive[x] {
            let comp = &real.components[real.place[p.generators[x].src].0];
            element[x] = Some(if tree[x] { comp.group.unit() } else { comp.letters[2 * local[x]] });
        }
    }
    for (x, expr) in reduced.eliminated.iter().rev() {
        let comp = &real.components[real.place[p.generators[*x].src].0];
        let e = expr.iter().rev().fold(comp.group.unit(), |acc, l| {
            let y = element[l.gen].expect("defined before use");
            comp.group.mul(if l.inv { comp.group.inv(y) } else { y }, acc)
        });
        element[*x] = Some(e);
    }
    real.generators = p
        .generators
        .iter()
        .zip(&element)
        .map(|(g, e)| real.arrow(g.src, g.tgt, e.expect("every generator resolved")))
        .collect();
    Ok(real)
}

fn build(nv: usize, comps: &[Component], place: &[(usize, usize)], n_arrows: usize) -> FinGroupoid {
    let mut src = vec![0; n_arrows];
    let mut tgt = vec![0; n_arrows];
    let mut inv = vec![0; n_arrows];
    let mut decode = vec![(0usize, 0usize, 0usize, 0usize); n_arrows];
    for (ci, c) in comps.iter().enumerate() {
        let (n, k) = (c.vertices.len(), c.group.order());
        for s in 0..n {
            for t in 0..n {
                for e in 0..k {
                    let a = c.offset + (s * n + t) * k + e;
                    src[a] = c.vertices[s];
                    tgt[a] = c.vertices[t];
                    inv[a] = c.offset + (t * n + s) * k + c.group.inv(e);
                    decode[a] = (ci, s, t, e);
                }
            }
        }
    }
    let ident = (0..nv)
        .map(|v| {
            let (ci, i) = place[v];
            let c = &comps[ci];
            c.offset + (i * c.vertices.len() + i) * c.group.order() + c.group.unit()
        })
        .collect();
    FinGroupoid::from_parts(nv, src, tgt, ident, inv, |a, b| {
        let (ci, _, t, e) = decode[a];
        let (_, s, _, f) = decode[b];
        let c = &comps[ci];
        c.offset + (s * c.vertices.len() + t) * c.group.order() + c.group.mul(e, f)
    })
}

impl Realized {
    /// The arrow `T_t ∘ e ∘ T_s⁻¹`.
    fn arrow(&self, s: usize, t: usize, e: usize) -> Arr {
        let (ci, i) = self.place[s];
        let (_, j) = self.place[t];
        let c = &self.components[ci];
        c.offset + (i * c.vertices.len() + j) * c.group.order() + e
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    /// Vertex group of the component of `v`.
    pub fn vertex_group(&self, v: usize) -> &FinGroup {
        &self.components[self.place[v].0].group
    }

    /// The functor to `w` with the given vertex and generator images, if
    /// these respect every relation.
    pub fn extend(&self, p: &GroupoidPresentation, w: &FinGroupoid, obj: &[Obj], images: &[Arr]) -> Option<Functor> {
        let eval = |word: &[Letter]| -> Arr {
            word.iter()
                .rev()
                .fold(None, |acc: Option<Arr>, l| {
                    let a = if l.inv { w.inv(images[l.gen]) } else { images[l.gen] };
                    Some(acc.map_or(a, |b| w.comp(a, b)))
                })
                .expect("non-empty")
        };
        let path = |v: usize| -> Arr {
            if self.paths[v].is_empty() {
                w.id(obj[v])
            } else {
                eval(&self.paths[v])
            }
        };
        if p.generators.iter().enumerate().any(|(x, g)| {
            w.src(images[x]) != obj[g.src] || w.tgt(images[x]) != obj[g.tgt]
        }) {
            return None;
        }
        let mut arr = vec![0; self.groupoid.n_arrows()];
        for c in &self.components {
            let base = c.vertices[0];
            // loop images of the group generators
            let loops: Vec<Arr> = c
                .gens
                .iter()
                .map(|&x| {
                    let g = &p.generators[x];
                    w.comp_all(&[w.inv(path(g.tgt)), images[x], path(g.src)])
                })
                .collect();
            let elems: Vec<Arr> = c
                .words
                .iter()
                .map(|word| {
                    word.iter().fold(w.id(obj[base]), |acc, &l| {
                        let y = loops[l / 2];
                        w.comp(acc, if l % 2 == 1 { w.inv(y) } else { y })
                    })
                })
                .collect();
            let n = c.vertices.len();
            for (s, &vs) in c.vertices.iter().enumerate() {
                for (t, &vt) in c.vertices.iter().enumerate() {
                    for (e, &m) in elems.iter().enumerate() {
                        arr[c.offset + (s * n + t) * c.group.order() + e] =
                            w.comp_all(&[path(vt), m, w.inv(path(vs))]);
                    }
                }
            }
        }
        let f = Functor { obj: obj.to_vec(), arr };
        let matches = p.generators.iter().enumerate().all(|(x, _)| f.arr[self.generators[x]] == images[x]);
        (matches && f.is_functor(&self.groupoid, w)).then_some(f)
    }
}
