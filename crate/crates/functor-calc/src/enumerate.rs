//! Enumeration of all functors between two finite groupoids.
//!
//! A functor on a connected groupoid is fixed by the image of a root
//! object, the images of spanning-tree arrows and a homomorphism of the
//! root's vertex group; that factorisation drives the search. Tiny inputs
//! go through a naive scan of all arrow maps instead.

use gpd_core::budget::{ENUM_NODES, NAIVE_ENUM_THRESHOLD};
use gpd_core::{
    components, homomorphisms, spanning_tree, vertex_group, Arr, Budget, Exec, FinGroupoid,
    Functor, MapMode, Obj,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("Indeterminate: budget exhausted after {partial} search nodes")]
    Indeterminate { partial: u64 },
}

/// All functors `h -> g` allowed in `mode`, sorted and without duplicates.
pub fn enumerate_functors(h: &FinGroupoid, g: &FinGroupoid, mode: MapMode) -> Result<Vec<Functor>, EnumError> {
    enumerate_functors_with(h, g, mode, Budget::or_env(ENUM_NODES), Exec::default())
}

pub fn enumerate_functors_with(
    h: &FinGroupoid,
    g: &FinGroupoid,
    mode: MapMode,
    budget: Budget,
    exec: Exec,
) -> Result<Vec<Functor>, EnumError> {
    let candidates = (g.n_arrows() as f64).powi(h.n_arrows() as i32);
    let mut out = if candidates <= NAIVE_ENUM_THRESHOLD as f64 {
        naive(h, g, mode)
    } else {
        structured(h, g, mode, budget, exec)?
    };
    out.sort_unstable();
    Ok(out)
}

/// Scan every map on arrows and keep the functors.
fn naive(h: &FinGroupoid, g: &FinGroupoid, mode: MapMode) -> Vec<Functor> {
    let (n, m) = (h.n_arrows(), g.n_arrows());
    if n > 0 && m == 0 {
        return Vec::new();
    }
    let mut arr = vec![0; n];
    let mut out = Vec::new();
    loop {
        let f = Functor { obj: h.objects().map(|x| g.src(arr[h.id(x)])).collect(), arr: arr.clone() };
        if f.is_functor(h, g) && f.allowed(h, mode) {
            out.push(f);
        }
        let Some(i) = (0..n).rev().find(|&i| arr[i] + 1 < m) else {
            return out;
        };
        arr[i] += 1;
        arr[i + 1..].iter_mut().for_each(|a| *a = 0);
    }
}

/// One connected component of the source, prepared for enumeration.
struct Plan {
    objects: Vec<Obj>,
    /// tree arrows `root -> x` for the non-root objects
    tree: Vec<Arr>,
    /// `(a, x, y, loop)`: arrow `a: x -> y` with `t_y⁻¹ a t_x` = vertex-group element `loop`,
    /// `x` and `y` given as positions in `objects`
    arrows: Vec<(Arr, usize, usize, usize)>,
    group: gpd_core::FinGroup,
}

fn plan(h: &FinGroupoid, comp: Vec<Obj>) -> Plan {
    let root = comp[0];
    let tree = spanning_tree(h, root);
    let (group, loops) = vertex_group(h, root);
    let pos = |x: Obj| comp.binary_search(&x).unwrap();
    let mut arrows = Vec::new();
    for &x in &comp {
        for &a in h.out_arrows(x) {
            let y = h.tgt(a);
            let l = h.comp_all(&[h.inv(tree[y].unwrap()), a, tree[x].unwrap()]);
            arrows.push((a, pos(x), pos(y), loops.iter().position(|&b| b == l).unwrap()));
        }
    }
    let tree = comp[1..].iter().map(|&x| tree[x].unwrap()).collect();
    Plan { objects: comp, tree, arrows, group }
}

/// Images of one component: object images by position, arrow images in plan order.
type Partial = (Vec<Obj>, Vec<Arr>);

fn component_functors(
    p: &Plan,
    g: &FinGroupoid,
    s: Obj,
    mode: MapMode,
    budget: Budget,
) -> (Result<Vec<Partial>, ()>, u64) {
    let mut meter = budget.meter();
    let (target, loops) = vertex_group(g, s);
    let Ok(homs) = homomorphisms(&p.group, &target, mode == MapMode::Faithful, &mut meter) else {
        return (Err(()), meter.used());
    };
    if homs.is_empty() {
        return (Ok(Vec::new()), meter.used());
    }
    let outs = g.out_arrows(s);
    let k = p.tree.len();
    let mut choice = vec![0usize; k];
    let mut out = Vec::new();
    loop {
        // tree images: index 0 is the root's identity
        let t: Vec<Arr> = std::iter::once(g.id(s)).chain(choice.iter().map(|&c| outs[c])).collect();
        let obj: Vec<Obj> = t.iter().map(|&a| g.tgt(a)).collect();
        for phi in &homs {
            if meter.tick().is_err() {
                return (Err(()), meter.used());
            }
            let arr = p
                .arrows
                .iter()
                .map(|&(_, x, y, l)| g.comp_all(&[t[y], loops[phi[l]], g.inv(t[x])]))
                .collect();
            out.push((obj.clone(), arr));
        }
        let Some(i) = (0..k).rev().find(|&i| choice[i] + 1 < outs.len()) else {
            return (Ok(out), meter.used());
        };
        choice[i] += 1;
        choice[i + 1..].iter_mut().for_each(|c| *c = 0);
    }
}

fn structured(
    h: &FinGroupoid,
    g: &FinGroupoid,
    mode: MapMode,
    budget: Budget,
    exec: Exec,
) -> Result<Vec<Functor>, EnumError> {
    let plans: Vec<Plan> = components(h).into_iter().map(|c| plan(h, c)).collect();
    let mut used = 0u64;
    let mut parts: Vec<Vec<Partial>> = Vec::new();
    for p in &plans {
        // each target object is an independent branch with its own meter
        let branches = exec.map_range(g.n_objects(), |s| component_functors(p, g, s, mode, budget));
        let mut all = Vec::new();
        let mut failed = false;
        for (r, u) in branches {
            used = used.saturating_add(u);
            match r {
                Ok(v) => all.extend(v),
                Err(()) => failed = true,
            }
        }
        if failed || used > budget.0 {
            return Err(EnumError::Indeterminate { partial: used });
        }
        parts.push(all);
    }
    let total = parts.iter().try_fold(1u64, |acc, v| acc.checked_mul(v.len() as u64));
    match total {
        Some(t) if t <= budget.0.saturating_sub(used) => {}
        _ => return Err(EnumError::Indeterminate { partial: used }),
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; parts.len()];
    if parts.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    loop {
        let mut f = Functor { obj: vec![0; h.n_objects()], arr: vec![0; h.n_arrows()] };
        for ((p, part), &i) in plans.iter().zip(&parts).zip(&pick) {
            let (obj, arr) = &part[i];
            for (&x, &y) in p.objects.iter().zip(obj) {
                f.obj[x] = y;
            }
            for (&(a, ..), &b) in p.arrows.iter().zip(arr) {
                f.arr[a] = b;
            }
        }
        out.push(f);
        let Some(j) = (0..pick.len()).rev().find(|&j| pick[j] + 1 < parts[j].len()) else {
            return Ok(out);
        };
        pick[j] += 1;
        pick[j + 1..].iter_mut().for_each(|c| *c = 0);
    }
}
