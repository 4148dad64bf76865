//! Homotopy limits over the three-level truncation `Γ` of the simplex
//! category, and descent for Čech diagrams of finite covers.
//!
//! Every level is a power `A^n` of a finite groupoid with arrows addressed
//! as tuples, so levels of a Čech diagram are never tabulated.

use functor_calc::{categorical_equivalence, EquivalenceVerdict};
use gpd_core::{Arr, Budget, Exec, FinGroupoid, Functor, Obj};
use itertools::Itertools;
use std::collections::HashMap;

/// Default cap on enumerated holim candidates.
pub const HOLIM_CANDIDATES: u64 = 1_000_000;

/// `A^n` with objects and arrows as `n`-tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerGroupoid {
    base: FinGroupoid,
    exponent: usize,
}

fn tuples(lists: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    if lists.is_empty() {
        return vec![Vec::new()];
    }
    lists.into_iter().multi_cartesian_product().collect()
}

fn power_count(base: usize, exponent: usize) -> u64 {
    (0..exponent).fold(1u64, |acc, _| acc.saturating_mul(base as u64))
}

impl PowerGroupoid {
    pub fn new(base: &FinGroupoid, exponent: usize) -> Self {
        PowerGroupoid { base: base.clone(), exponent }
    }

    pub fn single(base: &FinGroupoid) -> Self {
        Self::new(base, 1)
    }

    pub fn base(&self) -> &FinGroupoid {
        &self.base
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    /// Object count, saturating.
    pub fn n_objects(&self) -> u64 {
        power_count(self.base.n_objects(), self.exponent)
    }

    pub fn n_arrows(&self) -> u64 {
        power_count(self.base.n_arrows(), self.exponent)
    }

    /// All objects in lexicographic order.
    pub fn objects(&self) -> Vec<Vec<Obj>> {
        tuples(vec![self.base.objects().collect(); self.exponent])
    }

    pub fn hom_count(&self, x: &[Obj], y: &[Obj]) -> u64 {
        x.iter()
            .zip(y)
            .fold(1u64, |acc, (&a, &b)| acc.saturating_mul(self.base.hom(a, b).count() as u64))
    }

    pub fn hom(&self, x: &[Obj], y: &[Obj]) -> Vec<Vec<Arr>> {
        tuples(x.iter().zip(y).map(|(&a, &b)| self.base.hom(a, b).collect()).collect())
    }

    pub fn out_arrows(&self, x: &[Obj]) -> Vec<Vec<Arr>> {
        tuples(x.iter().map(|&a| self.base.out_arrows(a).to_vec()).collect())
    }

    pub fn src(&self, a: &[Arr]) -> Vec<Obj> {
        a.iter().map(|&e| self.base.src(e)).collect()
    }

    pub fn tgt(&self, a: &[Arr]) -> Vec<Obj> {
        a.iter().map(|&e| self.base.tgt(e)).collect()
    }

    pub fn id(&self, x: &[Obj]) -> Vec<Arr> {
        x.iter().map(|&o| self.base.id(o)).collect()
    }

    pub fn inv(&self, a: &[Arr]) -> Vec<Arr> {
        a.iter().map(|&e| self.base.inv(e)).collect()
    }

    /// `a ∘ b`, coordinatewise.
    pub fn comp(&self, a: &[Arr], b: &[Arr]) -> Vec<Arr> {
        a.iter().zip(b).map(|(&e, &f)| self.base.comp(e, f)).collect()
    }

    pub fn comp_all(&self, path: &[&[Arr]]) -> Vec<Arr> {
        let (first, rest) = path.split_first().expect("non-empty path");
        rest.iter().fold(first.to_vec(), |acc, a| self.comp(&acc, a))
    }

    /// Mixed-radix index of an object, first coordinate most significant.
    pub fn encode_obj(&self, x: &[Obj]) -> usize {
        x.iter().fold(0, |acc, &o| acc * self.base.n_objects() + o)
    }

    pub fn encode_arr(&self, a: &[Arr]) -> usize {
        a.iter().fold(0, |acc, &e| acc * self.base.n_arrows() + e)
    }

    pub fn decode_arr(&self, mut i: usize) -> Vec<Arr> {
        let m = self.base.n_arrows();
        let mut out = vec![0; self.exponent];
        for slot in out.iter_mut().rev() {
            *slot = i % m;
            i /= m;
        }
        out
    }

    /// The power as a table, numbered by [`encode_obj`](Self::encode_obj)
    /// and [`encode_arr`](Self::encode_arr); `None` above `limit` arrows.
    pub fn tabulate(&self, limit: u64) -> Option<FinGroupoid> {
        if self.n_arrows() > limit {
            return None;
        }
        let n_arr = self.n_arrows() as usize;
        let arrows: Vec<Vec<Arr>> = (0..n_arr).map(|i| self.decode_arr(i)).collect();
        let src = arrows.iter().map(|a| self.encode_obj(&self.src(a))).collect();
        let tgt = arrows.iter().map(|a| self.encode_obj(&self.tgt(a))).collect();
        let ident = self.objects().iter().map(|x| self.encode_arr(&self.id(x))).collect();
        let inv = arrows.iter().map(|a| self.encode_arr(&self.inv(a))).collect();
        Some(FinGroupoid::from_parts(self.n_objects() as usize, src, tgt, ident, inv, |a, b| {
            self.encode_arr(&self.comp(&arrows[a], &arrows[b]))
        }))
    }
}

/// A functor `A^m -> B^n` that reads coordinate `reindex[k]` and applies a
/// functor `A -> B`: `out[k] = F(in[reindex[k]])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelMap {
    pub reindex: Vec<usize>,
    pub functor: Functor,
}

impl LevelMap {
    pub fn identity(level: &PowerGroupoid) -> Self {
        LevelMap { reindex: (0..level.exponent).collect(), functor: Functor::identity(&level.base) }
    }

    pub fn reindexing(base: &FinGroupoid, reindex: Vec<usize>) -> Self {
        LevelMap { reindex, functor: Functor::identity(base) }
    }

    pub fn apply_obj(&self, x: &[Obj]) -> Vec<Obj> {
        self.reindex.iter().map(|&r| self.functor.obj[x[r]]).collect()
    }

    pub fn apply_arr(&self, a: &[Arr]) -> Vec<Arr> {
        self.reindex.iter().map(|&r| self.functor.arr[a[r]]).collect()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &LevelMap) -> LevelMap {
        LevelMap {
            reindex: next.reindex.iter().map(|&k| self.reindex[k]).collect(),
            functor: next.functor.after(&self.functor),
        }
    }

    pub fn is_valid(&self, src: &PowerGroupoid, tgt: &PowerGroupoid) -> bool {
        self.reindex.len() == tgt.exponent
            && self.reindex.iter().all(|&r| r < src.exponent)
            && self.functor.is_functor(&src.base, &tgt.base)
    }
}

/// Vertex of `[2]` hit by `d^j ∘ d^i : [0] -> [2]`, indexed `[j][i]`.
pub const VERTEX: [[usize; 2]; 3] = [[2, 1], [2, 0], [1, 0]];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("coface map {0} is not a functor between its levels")]
    BadMap(&'static str),
    #[error("composite cell ({j},{i}) is not a natural isomorphism")]
    BadCell { j: usize, i: usize },
    #[error("strict composites d^{j}d^{i} and its partner disagree")]
    NotStrict { j: usize, i: usize },
    #[error("cover label {0} is outside the base")]
    BadCover(usize),
}

/// A lax functor `Γ -> Groupoids`: three levels, cofaces `d^0, d^1` and
/// `d^0, d^1, d^2`, a functor `e_v : X(0) -> X(2)` for each vertex, and
/// natural isomorphisms `cells[j][i] : d^j d^i ⇒ e_{VERTEX[j][i]}` given by
/// their components at the objects of `X(0)` in lexicographic order.
#[derive(Clone, Debug)]
pub struct GammaDiagram {
    pub levels: [PowerGroupoid; 3],
    pub first: [LevelMap; 2],
    pub second: [LevelMap; 3],
    pub vertex: [LevelMap; 3],
    pub cells: [[Vec<Vec<Arr>>; 2]; 3],
}

impl GammaDiagram {
    pub fn new(
        levels: [PowerGroupoid; 3],
        first: [LevelMap; 2],
        second: [LevelMap; 3],
        vertex: [LevelMap; 3],
        cells: [[Vec<Vec<Arr>>; 2]; 3],
    ) -> Result<Self, DiagramError> {
        let d = GammaDiagram { levels, first, second, vertex, cells };
        d.validate()?;
        Ok(d)
    }

    /// A strict diagram: the composites are the cofaces composed and every
    /// cell is an identity.
    pub fn strict(
        levels: [PowerGroupoid; 3],
        first: [LevelMap; 2],
        second: [LevelMap; 3],
    ) -> Result<Self, DiagramError> {
        let mut vertex: [Option<LevelMap>; 3] = [None, None, None];
        for j in 0..3 {
            for i in 0..2 {
                let comp = first[i].then(&second[j]);
                match &vertex[VERTEX[j][i]] {
                    Some(e) if *e != comp => return Err(DiagramError::NotStrict { j, i }),
                    Some(_) => {}
                    None => vertex[VERTEX[j][i]] = Some(comp),
                }
            }
        }
        let vertex = vertex.map(|v| v.expect("every vertex is hit"));
        let objects = levels[0].objects();
        let cells: [[Vec<Vec<Arr>>; 2]; 3] = std::array::from_fn(|j| {
            std::array::from_fn(|i| {
                let e = &vertex[VERTEX[j][i]];
                objects.iter().map(|x| levels[2].id(&e.apply_obj(x))).collect()
            })
        });
        GammaDiagram::new(levels, first, second, vertex, cells)
    }

    /// The constant diagram at `a`.
    pub fn constant(a: &FinGroupoid) -> Self {
        let l = PowerGroupoid::single(a);
        let id = LevelMap::identity(&l);
        GammaDiagram::strict(
            [l.clone(), l.clone(), l],
            [id.clone(), id.clone()],
            [id.clone(), id.clone(), id],
        )
        .expect("constant diagrams are strict")
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        let [l0, l1, l2] = &self.levels;
        if !self.first.iter().all(|m| m.is_valid(l0, l1)) {
            return Err(DiagramError::BadMap("X(0) -> X(1)"));
        }
        if !self.second.iter().all(|m| m.is_valid(l1, l2)) {
            return Err(DiagramError::BadMap("X(1) -> X(2)"));
        }
        if !self.vertex.iter().all(|m| m.is_valid(l0, l2)) {
            return Err(DiagramError::BadMap("X(0) -> X(2)"));
        }
        let objects = l0.objects();
        let pos: HashMap<&Vec<Obj>, usize> = objects.iter().enumerate().map(|(k, x)| (x, k)).collect();
        for j in 0..3 {
            for i in 0..2 {
                let (lhs, rhs) = (self.first[i].then(&self.second[j]), &self.vertex[VERTEX[j][i]]);
                let cell = &self.cells[j][i];
                let bad = DiagramError::BadCell { j, i };
                if cell.len() != objects.len() {
                    return Err(bad);
                }
                for (k, x) in objects.iter().enumerate() {
                    let c = &cell[k];
                    if c.len() != l2.exponent
                        || c.iter().any(|&a| a >= l2.base.n_arrows())
                        || l2.src(c) != lhs.apply_obj(x)
                        || l2.tgt(c) != rhs.apply_obj(x)
                    {
                        return Err(bad);
                    }
                    for g in l0.out_arrows(x) {
                        let y = pos[&l0.tgt(&g)];
                        let left = l2.comp(&cell[y], &lhs.apply_arr(&g));
                        let right = l2.comp(&rhs.apply_arr(&g), c);
                        if left != right {
                            return Err(bad);
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The Čech diagram of a cover `U -> T` (given by the label of each point
/// of `U`) for the presheaf `S ↦ Hom(S, A) = A^S` on finite sets. Level `n`
/// is indexed by the `(n+1)`-fold fibre product in lexicographic order.
pub fn cech_diagram(value: &FinGroupoid, cover: &[usize], base: usize) -> Result<GammaDiagram, DiagramError> {
    if let Some(&t) = cover.iter().find(|&&t| t >= base) {
        return Err(DiagramError::BadCover(t));
    }
    let n = cover.len();
    let pairs: Vec<(usize, usize)> =
        (0..n).cartesian_product(0..n).filter(|&(u, v)| cover[u] == cover[v]).collect();
    let triples: Vec<(usize, usize, usize)> = (0..n)
        .cartesian_product(0..n)
        .cartesian_product(0..n)
        .map(|((u, v), w)| (u, v, w))
        .filter(|&(u, v, w)| cover[u] == cover[v] && cover[v] == cover[w])
        .collect();
    let pair_pos: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let levels = [
        PowerGroupoid::new(value, n),
        PowerGroupoid::new(value, pairs.len()),
        PowerGroupoid::new(value, triples.len()),
    ];
    // X(d^i) restricts along the projection deleting coordinate i
    let first = [
        LevelMap::reindexing(value, pairs.iter().map(|&(_, v)| v).collect()),
        LevelMap::reindexing(value, pairs.iter().map(|&(u, _)| u).collect()),
    ];
    let delete = |j: usize| {
        let r = triples
            .iter()
            .map(|&(u, v, w)| match j {
                0 => pair_pos[&(v, w)],
                1 => pair_pos[&(u, w)],
                _ => pair_pos[&(u, v)],
            })
            .collect();
        LevelMap::reindexing(value, r)
    };
    GammaDiagram::strict(levels, first, [delete(0), delete(1), delete(2)])
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HolimError {
    #[error("SizeLimit: {needed} candidates exceed the budget of {limit}")]
    SizeLimit { needed: u64, limit: u64 },
}

/// The holim groupoid: objects `(x, α : d¹x -> d⁰x)` satisfying the cocycle
/// equation, arrows `g : x -> y` of `X(0)` with `β ∘ d¹g = d⁰g ∘ α`.
#[derive(Clone, Debug)]
pub struct HolimGroupoid {
    pub groupoid: FinGroupoid,
    pub objects: Vec<(Vec<Obj>, Vec<Arr>)>,
    /// Arrow `k` is `(source object, g)`; arrows are ordered this way.
    pub arrows: Vec<(usize, Vec<Arr>)>,
    obj_index: HashMap<(Vec<Obj>, Vec<Arr>), usize>,
    arr_index: HashMap<(usize, Vec<Arr>), usize>,
}

impl HolimGroupoid {
    pub fn object_index(&self, x: &[Obj], alpha: &[Arr]) -> Option<usize> {
        self.obj_index.get(&(x.to_vec(), alpha.to_vec())).copied()
    }

    pub fn arrow_index(&self, src: usize, g: &[Arr]) -> Option<usize> {
        self.arr_index.get(&(src, g.to_vec())).copied()
    }
}

pub fn holim_gamma(d: &GammaDiagram) -> Result<HolimGroupoid, HolimError> {
    holim_gamma_with(d, Budget::or_env(HOLIM_CANDIDATES), Exec::default())
}

pub fn holim_gamma_with(d: &GammaDiagram, budget: Budget, exec: Exec) -> Result<HolimGroupoid, HolimError> {
    let [l0, l1, l2] = &d.levels;
    let limit = budget.0;
    let over = |needed: u64| if needed > limit { Err(HolimError::SizeLimit { needed, limit }) } else { Ok(()) };
    over(l0.n_objects())?;
    let xs = l0.objects();
    let ends: Vec<(Vec<Obj>, Vec<Obj>)> =
        xs.iter().map(|x| (d.first[1].apply_obj(x), d.first[0].apply_obj(x))).collect();
    over(ends.iter().fold(0u64, |acc, (s, t)| acc.saturating_add(l1.hom_count(s, t))))?;

    let idx: Vec<usize> = (0..xs.len()).collect();
    let found: Vec<Vec<Vec<Arr>>> = exec.map(&idx, |&k| {
        let c = |j: usize, i: usize| d.cells[j][i][k].as_slice();
        let inv = |j: usize, i: usize| l2.inv(c(j, i));
        l1.hom(&ends[k].0, &ends[k].1)
            .into_iter()
            .filter(|alpha| {
                let ga: Vec<Vec<Arr>> = d.second.iter().map(|m| m.apply_arr(alpha)).collect();
                let lhs = l2.comp_all(&[c(0, 0), &ga[0], &inv(0, 1), c(2, 0), &ga[2], &inv(2, 1)]);
                let rhs = l2.comp_all(&[c(1, 0), &ga[1], &inv(1, 1)]);
                lhs == rhs
            })
            .collect()
    });
    let objects: Vec<(Vec<Obj>, Vec<Arr>)> = xs
        .iter()
        .zip(found)
        .flat_map(|(x, alphas)| alphas.into_iter().map(move |a| (x.clone(), a)))
        .collect();
    let obj_index: HashMap<(Vec<Obj>, Vec<Arr>), usize> =
        objects.iter().cloned().enumerate().map(|(k, o)| (o, k)).collect();

    let n_arrows = objects.iter().fold(0u64, |acc, (x, _)| {
        acc.saturating_add(x.iter().fold(1u64, |p, &o| p.saturating_mul(l0.base.out_arrows(o).len() as u64)))
    });
    over(n_arrows)?;
    let mut arrows = Vec::new();
    let mut tgt = Vec::new();
    for (k, (x, alpha)) in objects.iter().enumerate() {
        for g in l0.out_arrows(x) {
            let y = l0.tgt(&g);
            let beta = l1.comp_all(&[&d.first[0].apply_arr(&g), alpha, &l1.inv(&d.first[1].apply_arr(&g))]);
            tgt.push(*obj_index.get(&(y, beta)).expect("arrows preserve the cocycle equation"));
            arrows.push((k, g));
        }
    }
    let arr_index: HashMap<(usize, Vec<Arr>), usize> =
        arrows.iter().cloned().enumerate().map(|(k, a)| (a, k)).collect();
    let src: Vec<usize> = arrows.iter().map(|(s, _)| *s).collect();
    let ident = objects.iter().enumerate().map(|(k, (x, _))| arr_index[&(k, l0.id(x))]).collect();
    let inv = arrows
        .iter()
        .enumerate()
        .map(|(k, (_, g))| arr_index[&(tgt[k], l0.inv(g))])
        .collect();
    let groupoid = FinGroupoid::from_parts(objects.len(), src, tgt, ident, inv, |a, b| {
        let (s, gb) = &arrows[b];
        arr_index[&(*s, l0.comp(&arrows[a].1, gb))]
    });
    Ok(HolimGroupoid { groupoid, objects, arrows, obj_index, arr_index })
}

/// Comparison of the global value `A^T` with the holim of the Čech diagram.
#[derive(Clone, Debug)]
pub struct DescentReport {
    pub global: FinGroupoid,
    pub holim: HolimGroupoid,
    /// `A^T -> holim`: restrict along the cover, with identity gluing.
    pub comparison: Functor,
    pub verdict: EquivalenceVerdict,
}

impl DescentReport {
    pub fn holds(&self) -> bool {
        self.verdict.is_equivalence()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DescentError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Holim(#[from] HolimError),
}

pub fn descent_check(value: &FinGroupoid, cover: &[usize], base: usize) -> Result<DescentReport, DescentError> {
    let d = cech_diagram(value, cover, base)?;
    let holim = holim_gamma(&d)?;
    let global_level = PowerGroupoid::new(value, base);
    let limit = Budget::or_env(HOLIM_CANDIDATES).0;
    let global = global_level
        .tabulate(limit)
        .ok_or(HolimError::SizeLimit { needed: global_level.n_arrows(), limit })?;
    let restrict = LevelMap::reindexing(value, cover.to_vec());
    let l1 = &d.levels[1];
    let object_of = |t: &[Obj]| {
        let x = restrict.apply_obj(t);
        let alpha = l1.id(&d.first[1].apply_obj(&x));
        holim.object_index(&x, &alpha).expect("restrictions glue trivially")
    };
    let obj = global_level.objects().iter().map(|t| object_of(t)).collect();
    let arr = (0..global.n_arrows())
        .map(|a| {
            let g = global_level.decode_arr(a);
            let s = object_of(&global_level.src(&g));
            holim.arrow_index(s, &restrict.apply_arr(&g)).expect("restricted arrow")
        })
        .collect();
    let comparison = Functor { obj, arr };
    let verdict = categorical_equivalence(&comparison, &global, &holim.groupoid);
    Ok(DescentReport { global, holim, comparison, verdict })
}
