//! Groupoids whose arrows out of an object are all tuples of target arrows
//! leaving its vertex images, acting by conjugation. Both sides of the
//! universal property have this shape.

use gpd_core::{Arr, FinGroupoid, Obj};
use std::collections::HashMap;

/// Number of component tuples leaving the given vertex images.
pub(crate) fn tuple_count(w: &FinGroupoid, verts: &[Obj]) -> u64 {
    verts.iter().map(|&y| w.out_arrows(y).len() as u64).fold(1u64, |a, b| a.saturating_mul(b))
}

/// Visit every tuple of arrows leaving `verts`, in lexicographic order of
/// positions in the out-lists.
pub(crate) fn for_each_tuple(w: &FinGroupoid, verts: &[Obj], mut f: impl FnMut(&[Arr])) {
    let outs: Vec<&[Arr]> = verts.iter().map(|&y| w.out_arrows(y)).collect();
    if outs.iter().any(|o| o.is_empty()) {
        return;
    }
    let mut pick = vec![0usize; outs.len()];
    let mut comps: Vec<Arr> = outs.iter().map(|o| o[0]).collect();
    loop {
        f(&comps);
        let Some(i) = (0..pick.len()).rev().find(|&i| pick[i] + 1 < outs[i].len()) else {
            return;
        };
        pick[i] += 1;
        comps[i] = outs[i][pick[i]];
        for j in i + 1..pick.len() {
            pick[j] = 0;
            comps[j] = outs[j][0];
        }
    }
}

/// Materialize: arrows grouped by source, tuples in lexicographic order;
/// `act(i, comps)` is the target object.
pub(crate) fn materialize(
    w: &FinGroupoid,
    verts: &[Vec<Obj>],
    act: impl Fn(usize, &[Arr]) -> usize,
) -> (FinGroupoid, Vec<(usize, Vec<Arr>)>) {
    let mut arrows: Vec<(usize, Vec<Arr>)> = Vec::new();
    let mut tgt = Vec::new();
    for (i, v) in verts.iter().enumerate() {
        for_each_tuple(w, v, |c| {
            tgt.push(act(i, c));
            arrows.push((i, c.to_vec()));
        });
    }
    let index: HashMap<(usize, Vec<Arr>), Arr> =
        arrows.iter().cloned().enumerate().map(|(e, k)| (k, e)).collect();
    let src: Vec<usize> = arrows.iter().map(|a| a.0).collect();
    let ident = verts
        .iter()
        .enumerate()
        .map(|(i, v)| index[&(i, v.iter().map(|&y| w.id(y)).collect::<Vec<_>>())])
        .collect();
    let inv = arrows
        .iter()
        .enumerate()
        .map(|(e, (_, c))| index[&(tgt[e], c.iter().map(|&a| w.inv(a)).collect::<Vec<_>>())])
        .collect();
    let g = FinGroupoid::from_parts(verts.len(), src, tgt, ident, inv, |a, b| {
        let (i, cb) = &arrows[b];
        let ca = &arrows[a].1;
        index[&(*i, ca.iter().zip(cb).map(|(&x, &y)| w.comp(x, y)).collect::<Vec<_>>())]
    });
    (g, arrows)
}
