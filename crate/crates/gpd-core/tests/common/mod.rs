#![allow(dead_code)]

use gpd_core::{FinGroup, FinGroupoid};

/// Quaternion group from its multiplication rule on ±{1,i,j,k}.
pub fn quaternion() -> FinGroup {
    // element 2*u + s: unit u in {1,i,j,k}, sign s
    let unit_mul = |a: usize, b: usize| -> (usize, bool) {
        const T: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        T[a][b]
    };
    let mul = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (u, neg) = unit_mul(x / 2, y / 2);
                    2 * u + ((neg as usize + x % 2 + y % 2) % 2)
                })
                .collect()
        })
        .collect();
    let names = (0..8)
        .map(|x| format!("{}{}", if x % 2 == 1 { "-" } else { "" }, ["1", "i", "j", "k"][x / 2]))
        .collect();
    FinGroup::from_table(names, mul).unwrap()
}

/// Every group of order at most 8 up to isomorphism.
pub fn small_groups() -> Vec<FinGroup> {
    let c = FinGroup::cyclic;
    vec![
        FinGroup::trivial(),
        c(2),
        c(3),
        c(4),
        FinGroup::product(&c(2), &c(2)),
        c(5),
        c(6),
        FinGroup::symmetric(3),
        c(7),
        c(8),
        FinGroup::product(&c(2), &c(4)),
        FinGroup::product(&FinGroup::product(&c(2), &c(2)), &c(2)),
        FinGroup::dihedral(4),
        quaternion(),
    ]
}

/// All maps `h -> g` that respect multiplication, by exhaustion.
pub fn brute_homs(h: &FinGroup, g: &FinGroup) -> Vec<Vec<usize>> {
    let (n, m) = (h.order(), g.order());
    let mut out = Vec::new();
    let mut f = vec![0usize; n];
    loop {
        if (0..n).all(|a| (0..n).all(|b| f[h.mul(a, b)] == g.mul(f[a], f[b]))) {
            out.push(f.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            f[i] += 1;
            if f[i] < m {
                break;
            }
            f[i] = 0;
        }
    }
}

/// Relabel a groupoid along permutations of its object and arrow ids.
pub fn relabel(g: &FinGroupoid, obj: &[usize], arr: &[usize]) -> FinGroupoid {
    let n = g.n_arrows();
    let mut back = vec![0; n];
    for a in 0..n {
        back[arr[a]] = a;
    }
    let mut ident = vec![0; g.n_objects()];
    for x in g.objects() {
        ident[obj[x]] = arr[g.id(x)];
    }
    FinGroupoid::from_parts(
        g.n_objects(),
        (0..n).map(|a| obj[g.src(back[a])]).collect(),
        (0..n).map(|a| obj[g.tgt(back[a])]).collect(),
        ident,
        (0..n).map(|a| arr[g.inv(back[a])]).collect(),
        |a, b| arr[g.comp(back[a], back[b])],
    )
}

/// Backtracking search for a bijective functor, arrow by arrow, with no
/// structural shortcuts beyond endpoint and composition checks.
pub fn brute_iso(a: &FinGroupoid, b: &FinGroupoid) -> bool {
    if a.n_objects() != b.n_objects() || a.n_arrows() != b.n_arrows() {
        return false;
    }
    let n = a.n_objects();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut img = vec![usize::MAX; a.n_arrows()];
        let mut used = vec![false; b.n_arrows()];
        if assign(a, b, &perm, 0, &mut img, &mut used) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn assign(
    a: &FinGroupoid,
    b: &FinGroupoid,
    obj: &[usize],
    k: usize,
    img: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if k == a.n_arrows() {
        return true;
    }
    let (s, t) = (obj[a.src(k)], obj[a.tgt(k)]);
    for y in b.hom(s, t).collect::<Vec<_>>() {
        if used[y] {
            continue;
        }
        img[k] = y;
        // every composable pair whose three arrows are now all assigned
        let ok = (0..=k).all(|x| {
            a.in_arrows(a.src(x)).iter().all(|&z| {
                let c = a.comp(x, z);
                z > k || c > k || (x != k && z != k && c != k) || b.comp(img[x], img[z]) == img[c]
            })
        });
        if ok {
            used[y] = true;
            if assign(a, b, obj, k + 1, img, used) {
                return true;
            }
            used[y] = false;
        }
        img[k] = usize::MAX;
    }
    false
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

use gpd_core::{
    action_groupoid, coproduct, coset_space, delooping, gauge_groupoid_of_group, pair_groupoid,
    product, restriction, translation_groupoid, unit_groupoid, GSet,
};
use rand::seq::SliceRandom;
use rand::Rng;

/// All subgroups, each as a sorted element list, found by brute force.
pub fn subgroups(g: &FinGroup) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for a in 0..g.order() {
        for b in 0..g.order() {
            let mut s = g.closure(&[a, b]);
            s.sort_unstable();
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out.sort();
    out
}

/// A random groupoid built from the library's constructors, kept small.
pub fn random_groupoid(rng: &mut impl Rng, depth: u32) -> FinGroupoid {
    let groups = small_groups();
    let g = groups.choose(rng).unwrap();
    let leaf = |rng: &mut dyn rand::RngCore| -> FinGroupoid {
        match rng.gen_range(0..5) {
            0 => delooping(g),
            1 => pair_groupoid(rng.gen_range(0..4)),
            2 => unit_groupoid(rng.gen_range(0..4)),
            3 => {
                let subs = subgroups(g);
                let k = &subs[rng.gen_range(0..subs.len())];
                action_groupoid(g, &coset_space(g, k).0)
            }
            _ => {
                let subs = subgroups(g);
                let k = &subs[rng.gen_range(0..subs.len())];
                let kg = g.subgroup(k).unwrap();
                let (cosets, proj) = coset_space(g, k);
                let p = GSet::from_group(&kg, g.order(), |i, x| g.mul(x, g.inv(k[i])));
                gauge_groupoid_of_group(&kg, &p, cosets.carrier(), &proj).unwrap()
            }
        }
    };
    if depth == 0 {
        return leaf(rng);
    }
    let a = random_groupoid(rng, depth - 1);
    match rng.gen_range(0..5) {
        0 => {
            let b = random_groupoid(rng, 0);
            if a.n_arrows() * b.n_arrows() <= 400 {
                product(&a, &b)
            } else {
                a
            }
        }
        1 => coproduct(&a, &random_groupoid(rng, 0)),
        2 if a.n_objects() > 0 => {
            let extra = rng.gen_range(0..3);
            let mut cover: Vec<usize> = a.objects().collect();
            cover.extend((0..extra).map(|_| rng.gen_range(0..a.n_objects())));
            cover.shuffle(rng);
            if cover.len() * cover.len() * a.n_arrows() <= 4000 {
                restriction(&a, &cover).unwrap().groupoid
            } else {
                a
            }
        }
        3 if a.n_composable_pairs() <= 400 => translation_groupoid(&a),
        _ => a,
    }
}
