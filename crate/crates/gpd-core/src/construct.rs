//! Basic groupoid constructions. Every constructor emits ids in a fixed
//! lexicographic order so outputs are reproducible.

use crate::group::FinGroup;
use crate::groupoid::{Arr, FinGroupoid, Obj};
use crate::gset::GSet;
use std::collections::HashMap;

/// The groupoid with no objects.
pub fn empty_groupoid() -> FinGroupoid {
    unit_groupoid(0)
}

/// One object, one arrow.
pub fn terminal_groupoid() -> FinGroupoid {
    unit_groupoid(1)
}

/// The discrete groupoid on `n` objects.
pub fn unit_groupoid(n: usize) -> FinGroupoid {
    let ids: Vec<usize> = (0..n).collect();
    FinGroupoid::from_parts(n, ids.clone(), ids.clone(), ids.clone(), ids, |a, _| a)
}

/// `B G`: one object, arrow `g` for each element, composition is the product.
pub fn delooping(g: &FinGroup) -> FinGroupoid {
    let n = g.order();
    FinGroupoid::from_parts(
        1,
        vec![0; n],
        vec![0; n],
        vec![g.unit()],
        (0..n).map(|a| g.inv(a)).collect(),
        |a, b| g.mul(a, b),
    )
}

/// Index of the pair-groupoid arrow `s -> t` on `n` objects.
pub fn pair_arrow(n: usize, s: Obj, t: Obj) -> Arr {
    s * n + t
}

/// Objects `0..n`, exactly one arrow `s -> t` for each ordered pair.
pub fn pair_groupoid(n: usize) -> FinGroupoid {
    let src = (0..n * n).map(|a| a / n).collect();
    let tgt = (0..n * n).map(|a| a % n).collect();
    let ident = (0..n).map(|x| pair_arrow(n, x, x)).collect();
    let inv = (0..n * n).map(|a| pair_arrow(n, a % n, a / n)).collect();
    FinGroupoid::from_parts(n, src, tgt, ident, inv, |a, b| pair_arrow(n, b / n, a % n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("NotACover: object {0} has empty preimage")]
pub struct NotACover(pub Obj);

/// The restriction `G_U` of a groupoid along a map `U -> G_0`, with the
/// bookkeeping needed to address its arrows.
#[derive(Clone, Debug)]
pub struct Restricted {
    pub groupoid: FinGroupoid,
    /// `cover[u]` is the object of the base groupoid under `u`.
    pub cover: Vec<Obj>,
    /// Arrow `i` is `(u, a, v)`: `a: cover[u] -> cover[v]` seen as `u -> v`.
    pub triples: Vec<(usize, Arr, usize)>,
    index: HashMap<(usize, Arr, usize), Arr>,
}

impl Restricted {
    pub fn arrow(&self, u: usize, a: Arr, v: usize) -> Arr {
        self.index[&(u, a, v)]
    }

    /// The arrow over an identity between two points of one fibre.
    pub fn connecting(&self, base: &FinGroupoid, u: usize, v: usize) -> Arr {
        self.arrow(u, base.id(self.cover[u]), v)
    }
}

/// Restriction of `g` along `cover: U -> G_0`. Arrows are ordered by
/// `(u, v, a)`.
pub fn restriction(g: &FinGroupoid, cover: &[Obj]) -> Result<Restricted, NotACover> {
    let mut hit = vec![false; g.n_objects()];
    for &x in cover {
        hit[x] = true;
    }
    if let Some(x) = hit.iter().position(|&h| !h) {
        return Err(NotACover(x));
    }
    Ok(restriction_unchecked(g, cover))
}

/// Restriction along any map into the objects, surjective or not.
pub fn restriction_unchecked(g: &FinGroupoid, cover: &[Obj]) -> Restricted {
    let n = cover.len();
    let mut triples = Vec::new();
    for u in 0..n {
        for v in 0..n {
            for a in g.hom(cover[u], cover[v]) {
                triples.push((u, a, v));
            }
        }
    }
    let index: HashMap<_, _> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let src = triples.iter().map(|t| t.0).collect();
    let tgt = triples.iter().map(|t| t.2).collect();
    let ident = (0..n).map(|u| index[&(u, g.id(cover[u]), u)]).collect();
    let inv = triples.iter().map(|&(u, a, v)| index[&(v, g.inv(a), u)]).collect();
    let groupoid = FinGroupoid::from_parts(n, src, tgt, ident, inv, |x, y| {
        let (_, a, w) = triples[x];
        let (u, b, _) = triples[y];
        index[&(u, g.comp(a, b), w)]
    });
    Restricted { groupoid, cover: cover.to_vec(), triples, index }
}

/// Action groupoid of a group action: objects the points, arrow
/// `g*|X| + x` is `(g, x): x -> g·x`.
pub fn action_groupoid(group: &FinGroup, x: &GSet) -> FinGroupoid {
    let n = x.carrier();
    let m = group.order();
    let src = (0..m * n).map(|a| a % n).collect();
    let tgt = (0..m * n).map(|a| x.act(a / n, a % n)).collect();
    let ident = (0..n).map(|p| group.unit() * n + p).collect();
    let inv = (0..m * n)
        .map(|a| group.inv(a / n) * n + x.act(a / n, a % n))
        .collect();
    FinGroupoid::from_parts(n, src, tgt, ident, inv, |a, b| group.mul(a / n, b / n) * n + b % n)
}

/// Action groupoid `G ⋉ X` of a groupoid action. Arrows are the compatible
/// pairs `(a, p)`, ordered lexicographically and returned alongside.
pub fn groupoid_action_groupoid(g: &FinGroupoid, x: &GSet) -> (FinGroupoid, Vec<(Arr, usize)>) {
    let mut pairs = Vec::new();
    for a in g.arrows() {
        for p in 0..x.carrier() {
            if x.anchor(p) == g.src(a) {
                pairs.push((a, p));
            }
        }
    }
    let index: HashMap<_, _> = pairs.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let src = pairs.iter().map(|&(_, p)| p).collect();
    let tgt = pairs.iter().map(|&(a, p)| x.act(a, p)).collect();
    let ident = (0..x.carrier()).map(|p| index[&(g.id(x.anchor(p)), p)]).collect();
    let inv = pairs.iter().map(|&(a, p)| index[&(g.inv(a), x.act(a, p))]).collect();
    let groupoid = FinGroupoid::from_parts(x.carrier(), src, tgt, ident, inv, |s, t| {
        let (a, _) = pairs[s];
        let (b, p) = pairs[t];
        index[&(g.comp(a, b), p)]
    });
    (groupoid, pairs)
}

/// `E G = G ⋉ G_1` for the action by post-composition (anchor = target).
pub fn translation_groupoid(g: &FinGroupoid) -> FinGroupoid {
    let anchor = g.arrows().map(|a| g.tgt(a)).collect();
    let x = GSet::new(g, anchor, |a, b| g.comp(a, b));
    groupoid_action_groupoid(g, &x).0
}

/// Why a groupoid action over a base fails to be principal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NotPrincipal {
    #[error("NotPrincipal: the action is not free at point {point} (over base {base})")]
    NotFree { point: usize, base: usize },
    #[error("NotPrincipal: arrow {arrow} moves point {point} to another fibre")]
    NotFibrewise { arrow: Arr, point: usize },
    #[error("NotPrincipal: points {0} and {1} share a fibre but not an orbit")]
    NotTransitive(usize, usize),
    #[error("NotPrincipal: projection is not onto the base")]
    NotOnto,
}

/// Certifies that the shear map `G_1 ×_{G_0} P -> P ×_T P`,
/// `(a, p) ↦ (a·p, p)`, is a bijection and returns its inverse as a
/// division table: `divide[&(q, p)]` is the unique arrow taking `p` to `q`.
pub fn shear_inverse(
    g: &FinGroupoid,
    p: &GSet,
    base: usize,
    proj: &[usize],
) -> Result<HashMap<(usize, usize), Arr>, NotPrincipal> {
    let n = p.carrier();
    if (0..base).any(|t| !proj.contains(&t)) {
        return Err(NotPrincipal::NotOnto);
    }
    let mut divide = HashMap::new();
    for x in 0..n {
        for &a in g.out_arrows(p.anchor(x)) {
            let y = p.act(a, x);
            if proj[y] != proj[x] {
                return Err(NotPrincipal::NotFibrewise { arrow: a, point: x });
            }
            if divide.insert((y, x), a).is_some() {
                return Err(NotPrincipal::NotFree { point: x, base: proj[x] });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if proj[x] == proj[y] && !divide.contains_key(&(y, x)) {
                return Err(NotPrincipal::NotTransitive(x, y));
            }
        }
    }
    Ok(divide)
}

/// The gauge groupoid `(P ×_{G_0} P)/G` of a principal bundle `P -> T`.
/// Arrow `[p, q]` goes from `proj(q)` to `proj(p)`; arrows are numbered by
/// their lexicographically least representative.
pub fn gauge_groupoid(
    g: &FinGroupoid,
    p: &GSet,
    base: usize,
    proj: &[usize],
) -> Result<FinGroupoid, NotPrincipal> {
    gauge_groupoid_with_classes(g, p, base, proj).map(|(gp, _)| gp)
}

/// [`gauge_groupoid`] together with the class of every pair `(p, q)` with
/// equal anchors.
pub fn gauge_groupoid_with_classes(
    g: &FinGroupoid,
    p: &GSet,
    base: usize,
    proj: &[usize],
) -> Result<(FinGroupoid, HashMap<(usize, usize), Arr>), NotPrincipal> {
    let divide = shear_inverse(g, p, base, proj)?;
    let n = p.carrier();
    let mut class: HashMap<(usize, usize), Arr> = HashMap::new();
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if p.anchor(x) != p.anchor(y) || class.contains_key(&(x, y)) {
                continue;
            }
            let id = reps.len();
            reps.push((x, y));
            for &a in g.out_arrows(p.anchor(x)) {
                class.insert((p.act(a, x), p.act(a, y)), id);
            }
        }
    }
    let src = reps.iter().map(|&(_, y)| proj[y]).collect();
    let tgt = reps.iter().map(|&(x, _)| proj[x]).collect();
    let mut ident = vec![usize::MAX; base];
    for x in 0..n {
        if ident[proj[x]] == usize::MAX {
            ident[proj[x]] = class[&(x, x)];
        }
    }
    let inv = reps.iter().map(|&(x, y)| class[&(y, x)]).collect();
    let gp = FinGroupoid::from_parts(base, src, tgt, ident, inv, |s, t| {
        let (x, y) = reps[s];
        let (y2, z) = reps[t];
        let a = divide[&(y, y2)];
        class[&(x, p.act(a, z))]
    });
    Ok((gp, class))
}

/// Gauge groupoid for a group acting on a set over a base.
pub fn gauge_groupoid_of_group(
    group: &FinGroup,
    p: &GSet,
    base: usize,
    proj: &[usize],
) -> Result<FinGroupoid, NotPrincipal> {
    gauge_groupoid(&delooping(group), p, base, proj)
}

/// Product; object `(x, y)` is `x*|B_0| + y`, arrow `(a, b)` is `a*|B_1| + b`.
pub fn product(a: &FinGroupoid, b: &FinGroupoid) -> FinGroupoid {
    let (no, na) = (b.n_objects(), b.n_arrows());
    let m = a.n_arrows() * na;
    FinGroupoid::from_parts(
        a.n_objects() * no,
        (0..m).map(|e| a.src(e / na) * no + b.src(e % na)).collect(),
        (0..m).map(|e| a.tgt(e / na) * no + b.tgt(e % na)).collect(),
        (0..a.n_objects() * no).map(|x| a.id(x / no) * na + b.id(x % no)).collect(),
        (0..m).map(|e| a.inv(e / na) * na + b.inv(e % na)).collect(),
        |e, f| a.comp(e / na, f / na) * na + b.comp(e % na, f % na),
    )
}

/// Disjoint union; `a`'s ids come first.
pub fn coproduct(a: &FinGroupoid, b: &FinGroupoid) -> FinGroupoid {
    let (oo, ao) = (a.n_objects(), a.n_arrows());
    let m = ao + b.n_arrows();
    let lift = |e: Arr| if e < ao { (true, e) } else { (false, e - ao) };
    FinGroupoid::from_parts(
        oo + b.n_objects(),
        (0..m)
            .map(|e| match lift(e) {
                (true, e) => a.src(e),
                (false, e) => b.src(e) + oo,
            })
            .collect(),
        (0..m)
            .map(|e| match lift(e) {
                (true, e) => a.tgt(e),
                (false, e) => b.tgt(e) + oo,
            })
            .collect(),
        (0..oo + b.n_objects())
            .map(|x| if x < oo { a.id(x) } else { b.id(x - oo) + ao })
            .collect(),
        (0..m)
            .map(|e| match lift(e) {
                (true, e) => a.inv(e),
                (false, e) => b.inv(e) + ao,
            })
            .collect(),
        |e, f| match (lift(e), lift(f)) {
            ((true, e), (true, f)) => a.comp(e, f),
            ((false, e), (false, f)) => b.comp(e, f) + ao,
            _ => unreachable!("arrows from different summands never compose"),
        },
    )
}

/// Coproduct of many groupoids, left to right.
pub fn coproduct_all(parts: &[FinGroupoid]) -> FinGroupoid {
    parts.iter().fold(empty_groupoid(), |acc, g| coproduct(&acc, g))
}
