//! Contravariant lax functors from an index 2-category to finite groupoids.

use crate::index::{Cov2, IndexCategory2, Mor};
use functor_calc::{mapping_groupoid_with, EnumError, MappingGroupoid, NatTransformation};
use gpd_core::budget::ENUM_NODES;
use gpd_core::{restriction, Budget, Exec, FinGroupoid, Functor, GroupoidError, MapMode, Obj};
use std::collections::HashMap;

/// A lax diagram `F`. An arrow `p: U -> T` gives `F(p): F(T) -> F(U)`;
/// a composable pair `p ∘ q` gives the comparison `F(p,q): F(q)F(p) ⇒ F(pq)`;
/// a 2-cell `p ⇒ q` gives `F(p) ⇒ F(q)`.
#[derive(Clone, Debug)]
pub struct LaxDiagram {
    pub index: IndexCategory2,
    pub values: Vec<FinGroupoid>,
    pub functors: Vec<Functor>,
    pub comparisons: HashMap<(Mor, Mor), NatTransformation>,
    pub cells: HashMap<(Mor, Mor), NatTransformation>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("value at object {0} is not a groupoid: {1}")]
    Value(usize, GroupoidError),
    #[error("arrow {0} is not sent to a functor between the right values")]
    BadFunctor(Mor),
    #[error("identity arrow {0} is not sent to the identity functor")]
    NotUnital(Mor),
    #[error("comparison for ({0},{1}) is missing or not a natural isomorphism")]
    BadComparison(Mor, Mor),
    #[error("2-cell {0} => {1} is missing or not a natural transformation")]
    BadCell(Mor, Mor),
    #[error("PentagonViolation at ({0},{1},{2})")]
    PentagonViolation(Mor, Mor, Mor),
    #[error("2-cells {0} => {1} => {2} do not compose")]
    CellComposition(Mor, Mor, Mor),
    #[error("2-cells over ({0},{1}) and ({2},{3}) do not commute with the comparisons")]
    CellCoherence(Mor, Mor, Mor, Mor),
}

impl LaxDiagram {
    /// A strict diagram: every comparison is an identity.
    pub fn strict(
        index: IndexCategory2,
        values: Vec<FinGroupoid>,
        functors: Vec<Functor>,
        cells: HashMap<(Mor, Mor), NatTransformation>,
    ) -> Self {
        let comparisons = index
            .composable_pairs()
            .into_iter()
            .map(|(p, q)| {
                let f = &functors[index.comp(p, q)];
                ((p, q), NatTransformation::identity(f, &values[index.src(q)]))
            })
            .collect();
        LaxDiagram { index, values, functors, comparisons, cells }
    }

    /// The constant diagram at `a` over the one-object index.
    pub fn constant(a: &FinGroupoid) -> Self {
        Self::strict(IndexCategory2::point(), vec![a.clone()], vec![Functor::identity(a)], HashMap::new())
    }

    /// The span `left <- centre -> right` over [`IndexCategory2::span`].
    pub fn span(
        left: &FinGroupoid,
        centre: &FinGroupoid,
        right: &FinGroupoid,
        to_left: Functor,
        to_right: Functor,
    ) -> Self {
        let values = vec![left.clone(), centre.clone(), right.clone()];
        let functors = vec![
            Functor::identity(left),
            Functor::identity(centre),
            Functor::identity(right),
            to_left,
            to_right,
        ];
        Self::strict(IndexCategory2::span(), values, functors, HashMap::new())
    }

    pub fn value(&self, t: usize) -> &FinGroupoid {
        &self.values[t]
    }

    /// `F(p)` as a functor `F(tgt p) -> F(src p)`.
    pub fn pull(&self, p: Mor) -> &Functor {
        &self.functors[p]
    }

    pub fn comparison(&self, p: Mor, q: Mor) -> &NatTransformation {
        &self.comparisons[&(p, q)]
    }

    /// `F(ζ)` for the 2-cell `p ⇒ q`, the identity when `p == q`.
    pub fn cell(&self, p: Mor, q: Mor) -> NatTransformation {
        if p == q {
            let u = self.index.src(p);
            return NatTransformation::identity(&self.functors[p], &self.values[u]);
        }
        self.cells[&(p, q)].clone()
    }

    pub fn is_strict(&self) -> bool {
        self.comparisons.iter().all(|(&(_, q), eta)| {
            let v = &self.values[self.index.src(q)];
            eta.components.iter().all(|&a| v.is_identity(a))
        })
    }

    /// Total number of arrows over all values.
    pub fn value_arrows(&self) -> usize {
        self.values.iter().map(FinGroupoid::n_arrows).sum()
    }
}

/// Check every value, functor, comparison and 2-cell, then the pentagon and
/// the compatibility of 2-cells with vertical and horizontal composition.
pub fn validate_diagram(d: &LaxDiagram) -> Result<(), DiagramError> {
    let c = &d.index;
    if d.values.len() != c.n_objects() || d.functors.len() != c.n_arrows() {
        return Err(DiagramError::BadFunctor(d.functors.len().min(c.n_arrows())));
    }
    for (t, v) in d.values.iter().enumerate() {
        v.validate().map_err(|e| DiagramError::Value(t, e))?;
    }
    for p in c.arrows() {
        let (u, t) = (c.src(p), c.tgt(p));
        if !d.functors[p].is_functor(&d.values[t], &d.values[u]) {
            return Err(DiagramError::BadFunctor(p));
        }
        if c.is_identity(p) && d.functors[p] != Functor::identity(&d.values[t]) {
            return Err(DiagramError::NotUnital(p));
        }
    }
    for (p, q) in c.composable_pairs() {
        let (v, t) = (c.src(q), c.tgt(p));
        let Some(eta) = d.comparisons.get(&(p, q)) else {
            return Err(DiagramError::BadComparison(p, q));
        };
        let fqp = d.functors[q].after(&d.functors[p]);
        let fpq = &d.functors[c.comp(p, q)];
        let unital = !(c.is_identity(p) || c.is_identity(q))
            || eta.components.iter().all(|&a| d.values[v].is_identity(a));
        if !unital || !eta.is_natural(&fqp, fpq, &d.values[t], &d.values[v]) {
            return Err(DiagramError::BadComparison(p, q));
        }
    }
    for (p, q) in c.two_cells() {
        let (u, t) = (c.src(p), c.tgt(p));
        match d.cells.get(&(p, q)) {
            Some(z) if z.is_natural(&d.functors[p], &d.functors[q], &d.values[t], &d.values[u]) => {}
            _ => return Err(DiagramError::BadCell(p, q)),
        }
    }
    pentagon(d)?;
    cell_laws(d)
}

/// `F(f, gh) ∘ F(g,h)_{f*} = F(fg, h) ∘ F(h)(F(f,g))` at every object.
fn pentagon(d: &LaxDiagram) -> Result<(), DiagramError> {
    let c = &d.index;
    for (f, g, h) in c.composable_triples() {
        let w = &d.values[c.src(h)];
        let (gh, fg) = (c.comp(g, h), c.comp(f, g));
        for s in d.values[c.tgt(f)].objects() {
            let fs = d.functors[f].obj[s];
            let lhs = w.comp(d.comparison(f, gh).components[s], d.comparison(g, h).components[fs]);
            let rhs = w.comp(
                d.comparison(fg, h).components[s],
                d.functors[h].arr[d.comparison(f, g).components[s]],
            );
            if lhs != rhs {
                return Err(DiagramError::PentagonViolation(f, g, h));
            }
        }
    }
    Ok(())
}

fn cell_laws(d: &LaxDiagram) -> Result<(), DiagramError> {
    let c = &d.index;
    // vertical: F(q ⇒ r) ∘ F(p ⇒ q) = F(p ⇒ r)
    for p in c.arrows() {
        let parallel: Vec<Mor> = c.arrows().filter(|&q| c.has_cell(p, q)).collect();
        let u = &d.values[c.src(p)];
        for &q in &parallel {
            for &r in &parallel {
                if d.cell(q, r).after(&d.cell(p, q), u) != d.cell(p, r) {
                    return Err(DiagramError::CellComposition(p, q, r));
                }
            }
        }
    }
    // horizontal: F(ζ*η) ∘ F(p,q) = F(p',q') ∘ (F(η) * F(ζ))
    for (p, q) in c.composable_pairs() {
        let v = &d.values[c.src(q)];
        let ps: Vec<Mor> = c.arrows().filter(|&x| c.has_cell(p, x)).collect();
        let qs: Vec<Mor> = c.arrows().filter(|&x| c.has_cell(q, x)).collect();
        for &p2 in &ps {
            for &q2 in &qs {
                if p2 == p && q2 == q {
                    continue;
                }
                let (zeta, eta) = (d.cell(p, p2), d.cell(q, q2));
                let pq_cell = d.cell(c.comp(p, q), c.comp(p2, q2));
                for s in d.values[c.tgt(p)].objects() {
                    let lhs = v.comp(pq_cell.components[s], d.comparison(p, q).components[s]);
                    let whisker = v.comp(
                        eta.components[d.functors[p2].obj[s]],
                        d.functors[q].arr[zeta.components[s]],
                    );
                    let rhs = v.comp(d.comparison(p2, q2).components[s], whisker);
                    if lhs != rhs {
                        return Err(DiagramError::CellCoherence(p, q, p2, q2));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The diagram `U ↦ Hom(H_U, G)` over covers of `H_0`, with the 2-cell
/// `q1 ⇒ q2` acting by `v ↦ σ(q1 v, 1, q2 v)`.
#[derive(Clone, Debug)]
pub struct HomDiagram {
    pub diagram: LaxDiagram,
    pub cov: Cov2,
    pub mappings: Vec<MappingGroupoid>,
    /// Restriction of `H` along each cover.
    pub restricted: Vec<gpd_core::Restricted>,
}

pub fn hom_diagram(
    h: &FinGroupoid,
    g: &FinGroupoid,
    cov: Cov2,
    mode: MapMode,
    budget: Budget,
    exec: Exec,
) -> Result<HomDiagram, EnumError> {
    let c = &cov.category;
    let restricted: Vec<_> = cov
        .covers
        .iter()
        .map(|u| restriction(h, u).expect("covers are surjective"))
        .collect();
    let mappings = restricted
        .iter()
        .map(|r| mapping_groupoid_with(&r.groupoid, g, mode, budget, exec))
        .collect::<Result<Vec<_>, _>>()?;
    // H_p: H_V -> H_U on arrows
    let on_arrows = |p: Mor| -> Vec<usize> {
        let (v, u) = (c.src(p), c.tgt(p));
        let m = &cov.maps[p];
        restricted[v].triples.iter().map(|&(a, k, b)| restricted[u].arrow(m[a], k, m[b])).collect()
    };
    let functors: Vec<Functor> = c
        .arrows()
        .map(|p| {
            let (v, u) = (c.src(p), c.tgt(p));
            let hp = on_arrows(p);
            let m = &cov.maps[p];
            let pull = |f: &Functor| Functor {
                obj: m.iter().map(|&x| f.obj[x]).collect(),
                arr: hp.iter().map(|&a| f.arr[a]).collect(),
            };
            let (mu, mv) = (&mappings[u], &mappings[v]);
            let obj: Vec<Obj> = mu
                .functors
                .iter()
                .map(|f| mv.functor_index(&pull(f)).expect("restriction of a functor"))
                .collect();
            let arr = mu
                .transformations
                .iter()
                .enumerate()
                .map(|(e, eta)| {
                    let comps = NatTransformation { components: m.iter().map(|&x| eta.components[x]).collect() };
                    mv.arrow_index(obj[mu.groupoid.src(e)], &comps).expect("whiskered transformation")
                })
                .collect();
            Functor { obj, arr }
        })
        .collect();
    let mut cells = HashMap::new();
    for (q1, q2) in c.two_cells() {
        let (v, u) = (c.src(q1), c.tgt(q1));
        let (m1, m2) = (&cov.maps[q1], &cov.maps[q2]);
        let (mu, mv) = (&mappings[u], &mappings[v]);
        let comps = mu
            .functors
            .iter()
            .enumerate()
            .map(|(s, sigma)| {
                let components = (0..m1.len())
                    .map(|x| sigma.arr[restricted[u].connecting(h, m1[x], m2[x])])
                    .collect();
                mv.arrow_index(functors[q1].obj[s], &NatTransformation { components })
                    .expect("connecting arrows are natural")
            })
            .collect();
        cells.insert((q1, q2), NatTransformation { components: comps });
    }
    let values = mappings.iter().map(|m| m.groupoid.clone()).collect();
    let diagram = LaxDiagram::strict(c.clone(), values, functors, cells);
    Ok(HomDiagram { diagram, cov, mappings, restricted })
}

/// [`hom_diagram`] with default budget and execution.
pub fn hom_diagram_default(h: &FinGroupoid, g: &FinGroupoid, bound: usize) -> Result<HomDiagram, EnumError> {
    let cov = crate::index::cov2_builder(h.n_objects(), bound);
    hom_diagram(h, g, cov, MapMode::All, Budget::or_env(ENUM_NODES), Exec::default())
}
