//! `Hom(hocolim F, W)` computed from a presentation: all assignments of
//! generators to arrows of `W` satisfying every relation, with natural
//! transformations as arrows.

use crate::conj::{for_each_tuple, materialize, tuple_count};
use crate::presentation::{GroupoidPresentation, Letter};
use gpd_core::budget::{ENUM_NODES, TIETZE_STEPS};
use gpd_core::{Arr, Budget, Exec, FinGroupoid, Obj};
use std::sync::atomic::{AtomicU64, Ordering};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("Budget: search stopped after {nodes} nodes")]
    Budget { nodes: u64 },
}

/// A functor from the presented groupoid: an image for every vertex and
/// every generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    pub vertices: Vec<Obj>,
    pub generators: Vec<Arr>,
}

/// The groupoid of solutions. Arrows out of an assignment are all tuples
/// of components, one arrow of `W` leaving each vertex image; they are
/// enumerated on demand.
#[derive(Clone, Debug)]
pub struct HomGroupoid {
    pub assignments: Vec<Assignment>,
}

impl HomGroupoid {
    pub fn n_objects(&self) -> usize {
        self.assignments.len()
    }

    pub fn n_arrows(&self, w: &FinGroupoid) -> u64 {
        self.assignments.iter().map(|a| tuple_count(w, &a.vertices)).sum()
    }

    pub fn index_of(&self, a: &Assignment) -> Option<usize> {
        self.assignments.binary_search(a).ok()
    }

    /// The target of the transformation with components `comps` out of
    /// assignment `i`.
    pub fn act(&self, p: &GroupoidPresentation, w: &FinGroupoid, i: usize, comps: &[Arr]) -> Assignment {
        let a = &self.assignments[i];
        Assignment {
            vertices: comps.iter().map(|&c| w.tgt(c)).collect(),
            generators: p
                .generators
                .iter()
                .zip(&a.generators)
                .map(|(g, &x)| w.comp_all(&[comps[g.tgt], x, w.inv(comps[g.src])]))
                .collect(),
        }
    }

    /// The groupoid itself, when it has at most `limit` arrows.
    pub fn to_groupoid(&self, p: &GroupoidPresentation, w: &FinGroupoid, limit: u64) -> Option<FinGroupoid> {
        if self.n_arrows(w) > limit {
            return None;
        }
        let verts: Vec<Vec<Obj>> = self.assignments.iter().map(|a| a.vertices.clone()).collect();
        let (g, _) = materialize(w, &verts, |i, c| {
            self.index_of(&self.act(p, w, i, c)).expect("solutions are closed under conjugation")
        });
        Some(g)
    }

    /// Solutions sending a spanning forest of the generator graph to
    /// identities. For a connected presented groupoid these count the
    /// homomorphisms from its vertex group.
    pub fn based_count(&self, p: &GroupoidPresentation, w: &FinGroupoid) -> usize {
        let tree = spanning_forest(p);
        self.assignments
            .iter()
            .filter(|a| tree.iter().all(|&g| w.is_identity(a.generators[g])))
            .count()
    }

    /// Conjugation orbits, i.e. connected components.
    pub fn n_components(&self, p: &GroupoidPresentation, w: &FinGroupoid) -> usize {
        let mut seen = vec![false; self.assignments.len()];
        let mut count = 0;
        for i in 0..self.assignments.len() {
            if seen[i] {
                continue;
            }
            count += 1;
            let mut stack = vec![i];
            seen[i] = true;
            while let Some(j) = stack.pop() {
                for_each_tuple(w, &self.assignments[j].vertices, |c| {
                    let k = self.index_of(&self.act(p, w, j, c)).expect("closed");
                    if !seen[k] {
                        seen[k] = true;
                        stack.push(k);
                    }
                });
            }
        }
        count
    }
}

/// Breadth-first spanning forest of the underlying graph, smallest ids
/// first.
pub fn spanning_forest(p: &GroupoidPresentation) -> Vec<usize> {
    let mut adj = vec![Vec::new(); p.n_vertices];
    for (i, g) in p.generators.iter().enumerate() {
        if g.src != g.tgt {
            adj[g.src].push((i, g.tgt));
            adj[g.tgt].push((i, g.src));
        }
    }
    let mut seen = vec![false; p.n_vertices];
    let mut tree = Vec::new();
    for r in 0..p.n_vertices {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut queue = std::collections::VecDeque::from([r]);
        while let Some(x) = queue.pop_front() {
            for &(g, y) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    tree.push(g);
                    queue.push_back(y);
                }
            }
        }
    }
    tree.sort_unstable();
    tree
}

pub fn hom_solver(p: &GroupoidPresentation, w: &FinGroupoid) -> Result<HomGroupoid, SolveError> {
    hom_solver_with(p, w, Budget::or_env(ENUM_NODES), Exec::default())
}

pub fn hom_solver_with(
    p: &GroupoidPresentation,
    w: &FinGroupoid,
    budget: Budget,
    exec: Exec,
) -> Result<HomGroupoid, SolveError> {
    let reduced = tietze(p, Budget::or_env(TIETZE_STEPS).0);
    let plan = Plan::new(p, &reduced);
    let counter = AtomicU64::new(0);
    let limit = budget.0;
    let state = State::new(p.n_vertices, p.generators.len());
    let branches: Vec<Result<Vec<State>, SolveError>> = if plan.order.is_empty() {
        vec![Ok(vec![state.clone()])]
    } else {
        exec.map(&plan.candidates(p, w, &state, 0), |&a| {
            let mut s = state.clone();
            let mut out = Vec::new();
            if plan.place(p, w, &mut s, 0, a) {
                plan.search(p, w, &mut s, 1, &counter, limit, &mut out)?;
            }
            Ok(out)
        })
    };
    let mut assignments = Vec::new();
    for b in branches {
        for s in b? {
            plan.complete(p, w, &reduced, s, &mut assignments);
        }
    }
    assignments.sort_unstable();
    assignments.dedup();
    Ok(HomGroupoid { assignments })
}

/// Result of simplification: surviving relations over surviving
/// generators, and eliminated generators with their defining words in
/// elimination order.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub alive: Vec<bool>,
    pub relations: Vec<Vec<Letter>>,
    pub eliminated: Vec<(usize, Vec<Letter>)>,
}

fn reduce(word: &mut Vec<Letter>) {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word.iter() {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    // cyclic reduction: the word is a loop
    let mut lo = 0;
    let mut hi = out.len();
    while hi - lo >= 2 && out[lo] == out[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    *word = out[lo..hi].to_vec();
}

fn invert(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|l| l.inverse()).collect()
}

/// Tietze elimination: while some relation contains a generator exactly
/// once, solve for it and substitute. Shortest relations first, largest
/// generator id first within a relation, at most `cap` eliminations.
pub fn tietze(p: &GroupoidPresentation, cap: u64) -> Reduced {
    let n = p.generators.len();
    let mut rels: Vec<Option<Vec<Letter>>> = p
        .relations
        .iter()
        .map(|r| {
            let mut w = r.word.clone();
            reduce(&mut w);
            (!w.is_empty()).then_some(w)
        })
        .collect();
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, r) in rels.iter().enumerate() {
        for l in r.iter().flatten() {
            occurs[l.gen].push(i);
        }
    }
    let mut alive = vec![true; n];
    let mut eliminated = Vec::new();
    let once = |w: &[Letter]| -> Option<usize> {
        let mut best = None;
        for l in w {
            if w.iter().filter(|m| m.gen == l.gen).count() == 1 && best.map_or(true, |b| l.gen > b) {
                best = Some(l.gen);
            }
        }
        best
    };
    let mut steps = 0u64;
    while steps < cap {
        let pick = rels
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().and_then(|w| once(w).map(|x| (w.len(), i, x))))
            .min_by_key(|&(len, i, _)| (len, i));
        let Some((_, ri, x)) = pick else { break };
        let w = rels[ri].take().expect("alive");
        let k = w.iter().position(|l| l.gen == x).expect("present");
        let rest: Vec<Letter> = w[k + 1..].iter().chain(&w[..k]).copied().collect();
        // x^e · rest = 1
        let expr = if w[k].inv { rest } else { invert(&rest) };
        let expr_inv = invert(&expr);
        let mut touched = occurs[x].clone();
        touched.sort_unstable();
        touched.dedup();
        for j in touched {
            let Some(r) = rels[j].as_mut() else { continue };
            let mut out = Vec::with_capacity(r.len() + expr.len());
            for &l in r.iter() {
                if l.gen == x {
                    out.extend_from_slice(if l.inv { &expr_inv } else { &expr });
                } else {
                    out.push(l);
                }
            }
            reduce(&mut out);
            for l in &out {
                occurs[l.gen].push(j);
            }
            rels[j] = (!out.is_empty()).then_some(out);
        }
        alive[x] = false;
        eliminated.push((x, expr));
        steps += 1;
    }
    Reduced { alive, relations: rels.into_iter().flatten().collect(), eliminated }
}

#[derive(Clone, Debug)]
struct State {
    verts: Vec<Option<Obj>>,
    gens: Vec<Arr>,
}

impl State {
    fn new(nv: usize, ng: usize) -> Self {
        State { verts: vec![None; nv], gens: vec![usize::MAX; ng] }
    }
}

/// Search order over surviving generators with, at each depth, the
/// relations completed there and possibly one that forces the value.
struct Plan {
    order: Vec<usize>,
    checks: Vec<Vec<usize>>,
    forced: Vec<Option<(bool, Vec<Letter>)>>,
    relations: Vec<Vec<Letter>>,
}

impl Plan {
    fn new(p: &GroupoidPresentation, r: &Reduced) -> Self {
        let order: Vec<usize> = (0..p.generators.len()).filter(|&g| r.alive[g]).collect();
        let mut pos = vec![usize::MAX; p.generators.len()];
        for (i, &g) in order.iter().enumerate() {
            pos[g] = i;
        }
        let mut checks = vec![Vec::new(); order.len()];
        let mut forced: Vec<Option<(bool, Vec<Letter>)>> = vec![None; order.len()];
        for (ri, w) in r.relations.iter().enumerate() {
            let last = w.iter().map(|l| pos[l.gen]).max().expect("non-empty");
            let g = order[last];
            let hits: Vec<usize> = (0..w.len()).filter(|&k| w[k].gen == g).collect();
            if forced[last].is_none() && hits.len() == 1 {
                let k = hits[0];
                let rest: Vec<Letter> = w[k + 1..].iter().chain(&w[..k]).copied().collect();
                forced[last] = Some((w[k].inv, rest));
            } else {
                checks[last].push(ri);
            }
        }
        Plan { order, checks, forced, relations: r.relations.clone() }
    }

    fn eval(w: &FinGroupoid, s: &State, word: &[Letter]) -> Option<Arr> {
        let mut acc: Option<Arr> = None;
        for l in word.iter().rev() {
            let x = s.gens[l.gen];
            let x = if l.inv { w.inv(x) } else { x };
            acc = Some(match acc {
                None => x,
                Some(a) => w.try_comp(x, a)?,
            });
        }
        acc
    }

    fn candidates(&self, p: &GroupoidPresentation, w: &FinGroupoid, s: &State, depth: usize) -> Vec<Arr> {
        let g = &p.generators[self.order[depth]];
        let (vs, vt) = (s.verts[g.src], s.verts[g.tgt]);
        if let Some((inv, rest)) = &self.forced[depth] {
            if !rest.is_empty() {
                let Some(v) = Self::eval(w, s, rest) else { return Vec::new() };
                // x^e · rest = 1
                return vec![if *inv { v } else { w.inv(v) }];
            }
            return match vs.or(vt) {
                Some(y) => vec![w.id(y)],
                None => w.objects().map(|y| w.id(y)).collect(),
            };
        }
        match (vs, vt) {
            (Some(a), Some(b)) => w.hom(a, b).collect(),
            (Some(a), None) => w.out_arrows(a).to_vec(),
            (None, Some(b)) => w.in_arrows(b).to_vec(),
            (None, None) if g.src == g.tgt => w.arrows().filter(|&a| w.src(a) == w.tgt(a)).collect(),
            (None, None) => w.arrows().collect(),
        }
    }

    /// Assign arrow `a` at `depth`; false if endpoints or completed
    /// relations fail. The state is left modified either way; callers
    /// clone or undo.
    fn place(&self, p: &GroupoidPresentation, w: &FinGroupoid, s: &mut State, depth: usize, a: Arr) -> bool {
        let gi = self.order[depth];
        let g = &p.generators[gi];
        for (v, y) in [(g.src, w.src(a)), (g.tgt, w.tgt(a))] {
            match s.verts[v] {
                Some(z) if z != y => return false,
                _ => s.verts[v] = Some(y),
            }
        }
        s.gens[gi] = a;
        self.checks[depth].iter().all(|&r| {
            Self::eval(w, s, &self.relations[r]).is_some_and(|x| w.is_identity(x))
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        p: &GroupoidPresentation,
        w: &FinGroupoid,
        s: &mut State,
        depth: usize,
        counter: &AtomicU64,
        limit: u64,
        out: &mut Vec<State>,
    ) -> Result<(), SolveError> {
        if counter.fetch_add(1, Ordering::Relaxed) >= limit {
            return Err(SolveError::Budget { nodes: limit });
        }
        if depth == self.order.len() {
            out.push(s.clone());
            return Ok(());
        }
        let g = &p.generators[self.order[depth]];
        let saved = (s.verts[g.src], s.verts[g.tgt]);
        for a in self.candidates(p, w, s, depth) {
            if self.place(p, w, s, depth, a) {
                self.search(p, w, s, depth + 1, counter, limit, out)?;
            }
            s.verts[g.src] = saved.0;
            s.verts[g.tgt] = saved.1;
        }
        s.gens[self.order[depth]] = usize::MAX;
        Ok(())
    }

    /// Fill free vertices in every way, rebuild eliminated generators and
    /// check every original relation.
    fn complete(
        &self,
        p: &GroupoidPresentation,
        w: &FinGroupoid,
        r: &Reduced,
        s: State,
        out: &mut Vec<Assignment>,
    ) {
        let free: Vec<usize> = (0..p.n_vertices).filter(|&v| s.verts[v].is_none()).collect();
        let mut pick = vec![0usize; free.len()];
        if !free.is_empty() && w.n_objects() == 0 {
            return;
        }
        loop {
            let mut t = s.clone();
            for (&v, &y) in free.iter().zip(&pick) {
                t.verts[v] = Some(y);
            }
            for (x, expr) in r.eliminated.iter().rev() {
                t.gens[*x] = if expr.is_empty() {
                    w.id(t.verts[p.generators[*x].src].expect("assigned"))
                } else {
                    Self::eval(w, &t, expr).expect("defining words compose")
                };
            }
            let a = Assignment {
                vertices: t.verts.iter().map(|v| v.expect("assigned")).collect(),
                generators: t.gens,
            };
            assert!(satisfies(p, w, &a), "reconstructed assignment violates a relation");
            out.push(a);
            let Some(i) = (0..pick.len()).rev().find(|&i| pick[i] + 1 < w.n_objects()) else {
                return;
            };
            pick[i] += 1;
            pick[i + 1..].iter_mut().for_each(|c| *c = 0);
        }
    }
}

/// Endpoints match and every relation evaluates to an identity.
pub fn satisfies(p: &GroupoidPresentation, w: &FinGroupoid, a: &Assignment) -> bool {
    p.generators.iter().zip(&a.generators).all(|(g, &x)| {
        x < w.n_arrows() && w.src(x) == a.vertices[g.src] && w.tgt(x) == a.vertices[g.tgt]
    }) && {
        let s = State { verts: Vec::new(), gens: a.generators.clone() };
        p.relations.iter().all(|r| match Plan::eval(w, &s, &r.word) {
            Some(x) => w.is_identity(x),
            None => r.word.is_empty(),
        })
    }
}
