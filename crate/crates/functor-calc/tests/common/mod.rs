#![allow(dead_code)]

use gpd_core::*;
use rand::Rng;

/// Every functor by exhaustion over arrow maps, with faithfulness checked
/// directly on automorphism groups.
pub fn brute_functors(h: &FinGroupoid, g: &FinGroupoid, mode: MapMode) -> Vec<Functor> {
    let (n, m) = (h.n_arrows(), g.n_arrows());
    let mut out = Vec::new();
    if n > 0 && m == 0 {
        return out;
    }
    let mut arr = vec![0; n];
    loop {
        let obj: Vec<usize> = h.objects().map(|x| g.src(arr[h.id(x)])).collect();
        let ok = h.arrows().all(|a| g.src(arr[a]) == obj[h.src(a)] && g.tgt(arr[a]) == obj[h.tgt(a)])
            && h.objects().all(|x| arr[h.id(x)] == g.id(obj[x]))
            && h.arrows().all(|a| h.in_arrows(h.src(a)).iter().all(|&b| arr[h.comp(a, b)] == g.comp(arr[a], arr[b])));
        let faithful = || {
            h.objects().all(|x| {
                let mut im: Vec<usize> = h.aut(x).iter().map(|&a| arr[a]).collect();
                im.sort_unstable();
                im.dedup();
                im.len() == h.aut(x).len()
            })
        };
        if ok && (mode == MapMode::All || faithful()) {
            out.push(Functor { obj, arr: arr.clone() });
        }
        let mut i = n;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            arr[i] += 1;
            if arr[i] < m {
                break;
            }
            arr[i] = 0;
        }
    }
}

/// All tuples of target arrows that form a natural transformation out of `f`.
pub fn brute_transformations(f: &Functor, fs: &[Functor], h: &FinGroupoid, g: &FinGroupoid) -> usize {
    let n = h.n_objects();
    let mut count = 0;
    let mut c = vec![0usize; n];
    if n == 0 {
        return 1;
    }
    loop {
        let ok = (0..n).all(|x| g.src(c[x]) == f.obj[x])
            && fs.iter().any(|f2| {
                (0..n).all(|x| g.tgt(c[x]) == f2.obj[x])
                    && h.arrows().all(|a| g.comp(c[h.tgt(a)], f.arr[a]) == g.comp(f2.arr[a], c[h.src(a)]))
            });
        count += ok as usize;
        let mut i = n;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            c[i] += 1;
            if c[i] < g.n_arrows() {
                break;
            }
            c[i] = 0;
        }
    }
}

/// Is there a natural isomorphism `f1 ⇒ f2`? Exhaustive over component tuples.
pub fn brute_nat_iso(f1: &Functor, f2: &Functor, h: &FinGroupoid, g: &FinGroupoid) -> bool {
    let choices: Vec<Vec<usize>> = h.objects().map(|x| g.hom(f1.obj[x], f2.obj[x]).collect()).collect();
    if choices.iter().any(Vec::is_empty) {
        return false;
    }
    let mut pick = vec![0usize; choices.len()];
    loop {
        let c: Vec<usize> = pick.iter().zip(&choices).map(|(&i, v)| v[i]).collect();
        if h.arrows().all(|a| g.comp(c[h.tgt(a)], f1.arr[a]) == g.comp(f2.arr[a], c[h.src(a)])) {
            return true;
        }
        let Some(i) = (0..pick.len()).rev().find(|&i| pick[i] + 1 < choices[i].len()) else {
            return false;
        };
        pick[i] += 1;
        pick[i + 1..].iter_mut().for_each(|p| *p = 0);
    }
}

/// Equivalence by searching all candidate inverses.
pub fn brute_equivalence(f: &Functor, h: &FinGroupoid, g: &FinGroupoid) -> bool {
    let id_h = Functor::identity(h);
    let id_g = Functor::identity(g);
    brute_functors(g, h, MapMode::All).iter().any(|inv| {
        brute_nat_iso(&id_h, &inv.after(f), h, h) && brute_nat_iso(&f.after(inv), &id_g, g, g)
    })
}

/// Orbits of `hom(h, g)` under conjugation, counted directly.
pub fn conjugacy_classes_of_homs(h: &FinGroup, g: &FinGroup, injective: bool) -> usize {
    let mut homs: Vec<Vec<usize>> = Vec::new();
    let n = h.order();
    let mut f = vec![0usize; n];
    loop {
        let hom = (0..n).all(|a| (0..n).all(|b| f[h.mul(a, b)] == g.mul(f[a], f[b])));
        let inj = {
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            s.len() == n
        };
        if hom && (!injective || inj) {
            homs.push(f.clone());
        }
        let Some(i) = (0..n).rev().find(|&i| f[i] + 1 < g.order()) else { break };
        f[i] += 1;
        f[i + 1..].iter_mut().for_each(|x| *x = 0);
    }
    let mut seen = vec![false; homs.len()];
    let mut classes = 0;
    for i in 0..homs.len() {
        if seen[i] {
            continue;
        }
        classes += 1;
        for c in 0..g.order() {
            let conj: Vec<usize> = homs[i].iter().map(|&y| g.mul(g.mul(c, y), g.inv(c))).collect();
            let j = homs.iter().position(|k| *k == conj).unwrap();
            seen[j] = true;
        }
    }
    classes
}

/// A small random groupoid: a coproduct of one or two connected pieces.
pub fn small_groupoid(rng: &mut impl Rng) -> FinGroupoid {
    let piece = |rng: &mut dyn rand::RngCore| match rng.gen_range(0..6) {
        0 => delooping(&FinGroup::cyclic(2)),
        1 => delooping(&FinGroup::cyclic(3)),
        2 => pair_groupoid(rng.gen_range(1..3)),
        3 => unit_groupoid(1),
        4 => restriction(&delooping(&FinGroup::cyclic(2)), &[0, 0]).unwrap().groupoid,
        _ => delooping(&FinGroup::trivial()),
    };
    let a = piece(rng);
    if rng.gen_bool(0.4) {
        coproduct(&a, &piece(rng))
    } else {
        a
    }
}

pub fn names(g: &FinGroup, n: &str) -> usize {
    g.element_by_name(n).unwrap()
}
