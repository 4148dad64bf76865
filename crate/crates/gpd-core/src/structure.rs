//! Connected components, spanning trees and vertex groups.

use crate::group::FinGroup;
use crate::groupoid::{Arr, FinGroupoid, Obj};
use petgraph::unionfind::UnionFind;
use std::collections::VecDeque;

/// Connected components, each sorted, ordered by least object.
pub fn components(g: &FinGroupoid) -> Vec<Vec<Obj>> {
    let mut uf = UnionFind::<usize>::new(g.n_objects());
    for a in g.arrows() {
        uf.union(g.src(a), g.tgt(a));
    }
    group_by_root(g.n_objects(), |x| uf.find(x))
}

/// Partition `0..n` by a labelling, classes ordered by least element.
pub fn group_by_root(n: usize, root: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
    let mut slot = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        let r = root(x);
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push(Vec::new());
        }
        out[slot[r]].push(x);
    }
    out
}

/// For each object, the index of its component in [`components`] order.
pub fn component_index(g: &FinGroupoid) -> Vec<usize> {
    let mut ix = vec![0; g.n_objects()];
    for (i, c) in components(g).iter().enumerate() {
        for &x in c {
            ix[x] = i;
        }
    }
    ix
}

/// Breadth-first spanning tree of the component of `root`: `tree[x]` is an
/// arrow `root -> x`, chosen with smallest ids first.
pub fn spanning_tree(g: &FinGroupoid, root: Obj) -> Vec<Option<Arr>> {
    let mut tree = vec![None; g.n_objects()];
    tree[root] = Some(g.id(root));
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        let tx = tree[x].expect("visited");
        for &a in g.out_arrows(x) {
            let y = g.tgt(a);
            if tree[y].is_none() {
                tree[y] = Some(g.comp(a, tx));
                queue.push_back(y);
            }
        }
    }
    tree
}

/// `Aut(x)` as an abstract group; element `i` is arrow `arrows[i]`.
pub fn vertex_group(g: &FinGroupoid, x: Obj) -> (FinGroup, Vec<Arr>) {
    let arrows = g.aut(x);
    let pos = |a: Arr| arrows.iter().position(|&b| b == a).expect("closed");
    let mul = arrows
        .iter()
        .map(|&a| arrows.iter().map(|&b| pos(g.comp(a, b))).collect())
        .collect();
    let names = arrows.iter().map(|a| a.to_string()).collect();
    let group = FinGroup::from_table(names, mul).expect("automorphisms form a group");
    (group, arrows)
}

/// Per-component invariants: object count and automorphism order, sorted.
pub fn component_profile(g: &FinGroupoid) -> Vec<(usize, usize)> {
    let mut prof: Vec<(usize, usize)> = components(g)
        .iter()
        .map(|c| (c.len(), g.hom(c[0], c[0]).count()))
        .collect();
    prof.sort_unstable();
    prof
}
