#![allow(dead_code)]

use bundles_descent::HSBundle;
use gpd_core::*;
use rand::Rng;

pub fn bg(n: usize) -> FinGroupoid {
    delooping(&FinGroup::cyclic(n))
}

pub fn bs3() -> FinGroupoid {
    delooping(&FinGroup::symmetric(3))
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Direct check that `m` is a bundle isomorphism.
pub fn is_bundle_map(a: &HSBundle, b: &HSBundle, m: &[usize]) -> bool {
    let (g, h) = (a.structure(), a.base());
    let mut hit = vec![false; b.len()];
    for &q in m {
        if q >= b.len() || hit[q] {
            return false;
        }
        hit[q] = true;
    }
    (0..a.len()).all(|p| {
        a.left_anchor(p) == b.left_anchor(m[p])
            && a.right_anchor(p) == b.right_anchor(m[p])
            && g.arrows()
                .filter(|&x| g.src(x) == a.left_anchor(p))
                .all(|x| m[a.act_left(x, p)] == b.act_left(x, m[p]))
            && h.arrows()
                .filter(|&k| h.tgt(k) == a.right_anchor(p))
                .all(|k| m[a.act_right(p, k)] == b.act_right(m[p], k))
    })
}

/// Every bundle isomorphism, by trying all bijections.
pub fn brute_isos(a: &HSBundle, b: &HSBundle) -> Vec<Vec<usize>> {
    if a.len() != b.len() {
        return Vec::new();
    }
    let mut p: Vec<usize> = (0..a.len()).collect();
    let mut out = Vec::new();
    loop {
        if is_bundle_map(a, b, &p) {
            out.push(p.clone());
        }
        if !next_permutation(&mut p) {
            return out;
        }
    }
}

/// Small base groupoids with at most four objects.
pub fn bases() -> Vec<(&'static str, FinGroupoid)> {
    let s3 = FinGroup::symmetric(3);
    let t = s3.element_by_name("(12)").unwrap();
    let z2 = FinGroup::cyclic(2);
    vec![
        ("point", terminal_groupoid()),
        ("unit(2)", unit_groupoid(2)),
        ("unit(4)", unit_groupoid(4)),
        ("pair(2)", pair_groupoid(2)),
        ("BZ2", bg(2)),
        ("BZ3", bg(3)),
        ("BZ2+pt", coproduct(&bg(2), &terminal_groupoid())),
        ("Z2 swap", action_groupoid(&z2, &GSet::from_group(&z2, 2, |a, x| z2.mul(a, x)))),
        ("S3/<(12)>", action_groupoid(&s3, &coset_space(&s3, &s3.closure(&[t])).0)),
    ]
}

pub fn targets() -> Vec<(&'static str, FinGroupoid)> {
    vec![
        ("BZ2", bg(2)),
        ("BZ3", bg(3)),
        ("BS3", bs3()),
        ("pair(2)", pair_groupoid(2)),
        ("BZ2+BZ3", coproduct(&bg(2), &bg(3))),
    ]
}

/// A random cover of the objects: every object gets one or two points.
pub fn random_cover(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut cover = Vec::new();
    for x in 0..n {
        for _ in 0..rng.gen_range(1..=2) {
            cover.push(x);
        }
    }
    // interleave so the least point over an object is not always first
    let k = cover.len();
    for i in (1..k).rev() {
        cover.swap(i, rng.gen_range(0..=i));
    }
    cover
}
