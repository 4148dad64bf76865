//! Homology checked against an independent bar-complex oracle: boundary
//! matrices built from group tuples, ranks by Gaussian elimination over
//! prime fields, torsion read off through universal coefficients.

use gpd_core::*;
use nerve_homotopy::*;
use num_bigint::BigInt;

/// Bar differential `C_n(G) -> C_(n-1)(G)` on tuples `[g1|...|gn]`.
fn bar_matrix(g: &FinGroup, n: usize) -> Vec<Vec<i64>> {
    let k = g.order();
    let rows = k.pow(n as u32 - 1);
    let cols = k.pow(n as u32);
    let decode = |mut i: usize, len: usize| {
        let mut v = vec![0; len];
        for x in v.iter_mut().rev() {
            *x = i % k;
            i /= k;
        }
        v
    };
    let encode = |v: &[usize]| v.iter().fold(0, |a, &x| a * k + x);
    let mut m = vec![vec![0i64; cols]; rows];
    for c in 0..cols {
        let t = decode(c, n);
        for i in 0..=n {
            let face: Vec<usize> = if i == 0 {
                t[1..].to_vec()
            } else if i == n {
                t[..n - 1].to_vec()
            } else {
                let mut f = t[..i - 1].to_vec();
                f.push(g.mul(t[i - 1], t[i]));
                f.extend_from_slice(&t[i + 1..]);
                f
            };
            m[encode(&face)][c] += if i % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

fn rank_fp(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let inv = (1..p).find(|&x| a[r][c] * x % p == 1).unwrap();
        for j in 0..cols {
            a[r][j] = a[r][j] * inv % p;
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] - f * a[r][j]).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

/// Betti numbers over `F_p` from the oracle, degrees `0..top`.
fn betti(g: &FinGroup, top: usize, p: i64) -> Vec<usize> {
    let ranks: Vec<usize> = (1..=top + 1).map(|n| rank_fp(&bar_matrix(g, n), p)).collect();
    (0..=top)
        .map(|n| g.order().pow(n as u32) - if n == 0 { 0 } else { ranks[n - 1] } - ranks[n])
        .collect()
}

#[test]
fn bz2_to_degree_five() {
    let bz2 = delooping(&FinGroup::cyclic(2));
    let h = homology(&bz2, 5).unwrap();
    let z2 = vec![BigInt::from(2)];
    let expect = [(1, vec![]), (0, z2.clone()), (0, vec![]), (0, z2.clone()), (0, vec![])];
    assert_eq!(h.groups.len(), 5);
    for (grp, (rank, torsion)) in h.groups.iter().zip(expect) {
        assert_eq!((grp.rank, &grp.torsion), (rank, &torsion));
    }
    // oracle: Betti numbers over F_2 are all 1, over F_3 only degree 0
    assert_eq!(betti(&FinGroup::cyclic(2), 4, 2), vec![1; 5]);
    assert_eq!(betti(&FinGroup::cyclic(2), 4, 3), vec![1, 0, 0, 0, 0]);
    // universal coefficients: dim H_n(F_2) = rank H_n + t(H_n) + t(H_(n-1))
    let t: Vec<usize> = h.groups.iter().map(|g| g.torsion.len()).collect();
    for n in 0..5 {
        let prev = if n == 0 { 0 } else { t[n - 1] };
        assert_eq!(h.groups[n].rank + t[n] + prev, 1);
    }
}

#[test]
fn bz2_degree_six_uses_the_32_by_64_matrix() {
    let bz2 = delooping(&FinGroup::cyclic(2));
    let n = nerve(&bz2, 6).unwrap();
    let cx = chain_complex(&n, Coeffs::Integers);
    let m = cx.matrix(6);
    assert_eq!((m.len(), m[0].len()), (32, 64));
    assert_eq!(m, bar_matrix(&FinGroup::cyclic(2), 6));
    let h = cx.homology(Exec::default());
    assert_eq!(h.groups[5].torsion, vec![BigInt::from(2)]);
    assert_eq!(h.groups[5].rank, 0);
}

#[test]
fn nerve_boundaries_match_the_bar_complex() {
    for g in [FinGroup::cyclic(3), FinGroup::symmetric(3)] {
        let n = nerve(&delooping(&g), 3).unwrap();
        let cx = chain_complex(&n, Coeffs::Integers);
        for k in 1..=3 {
            assert_eq!(cx.matrix(k), bar_matrix(&g, k));
        }
    }
}

#[test]
fn prime_field_coefficients_match_oracle() {
    for (g, p) in [(FinGroup::cyclic(2), 2), (FinGroup::cyclic(3), 3), (FinGroup::symmetric(3), 2), (FinGroup::cyclic(4), 2)] {
        let top = if g.order() > 4 { 2 } else { 3 };
        let h = homology_with(&delooping(&g), top + 1, Coeffs::Prime(p as u64), Budget::unlimited(), Exec::default())
            .unwrap();
        let ranks: Vec<usize> = h.groups.iter().map(|x| x.rank).collect();
        assert_eq!(ranks, betti(&g, top, p), "{g:?}");
    }
}

#[test]
fn pair_of_four_points_is_acyclic() {
    let h = homology(&pair_groupoid(4), 4).unwrap();
    assert_eq!(h.groups[0], HomologyGroup { rank: 1, torsion: vec![] });
    assert!(h.groups[1..].iter().all(HomologyGroup::is_zero));
    assert_eq!(h.groups.len(), 4);
}

#[test]
fn empty_groupoid_has_zero_complex() {
    let h = homology(&empty_groupoid(), 3).unwrap();
    assert!(h.groups.iter().all(HomologyGroup::is_zero));
}

#[test]
fn first_homology_is_the_abelianization() {
    for g in [FinGroup::cyclic(2), FinGroup::cyclic(3), FinGroup::cyclic(4), FinGroup::symmetric(3)] {
        // commutator subgroup from the table
        let comms: Vec<usize> = (0..g.order())
            .flat_map(|a| (0..g.order()).map(move |b| (a, b)))
            .map(|(a, b)| g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))))
            .collect();
        let derived = g.closure(&comms);
        let ab_order = g.order() / derived.len();
        // every abelianization here is cyclic: some coset has full order
        let coset_order = |a: usize| {
            let mut x = a;
            let mut k = 1;
            while !derived.contains(&x) {
                x = g.mul(x, a);
                k += 1;
            }
            k
        };
        assert_eq!((0..g.order()).map(coset_order).max(), Some(ab_order));
        let h = homology(&delooping(&g), 2).unwrap();
        let expect: Vec<BigInt> = if ab_order > 1 { vec![BigInt::from(ab_order)] } else { vec![] };
        assert_eq!(h.groups[1].torsion, expect);
        assert_eq!(h.groups[1].rank, 0);
    }
}

#[test]
fn table_display() {
    let h = homology(&delooping(&FinGroup::cyclic(2)), 3).unwrap();
    assert_eq!(h.to_string(), "0: rank 1, torsion []\n1: rank 0, torsion [2]\n2: rank 0, torsion []\n");
}

#[test]
fn snf_handles_large_entries() {
    let m = vec![vec![i64::MAX / 2, 3], vec![6, i64::MAX / 3]];
    let f = invariant_factors(&m, 2, Exec::Sequential);
    let det = BigInt::from(i64::MAX / 2) * BigInt::from(i64::MAX / 3) - BigInt::from(18);
    assert_eq!(&f[0] * &f[1], num_traits::Signed::abs(&det));
    assert_eq!(invariant_factors(&[vec![2, 4], vec![6, 8]], 2, Exec::Sequential), vec![BigInt::from(2), BigInt::from(4)]);
}

#[test]
fn sequential_and_parallel_agree() {
    let g = product(&delooping(&FinGroup::cyclic(2)), &pair_groupoid(2));
    let a = homology_with(&g, 4, Coeffs::Integers, Budget::unlimited(), Exec::Sequential).unwrap();
    let b = homology_with(&g, 4, Coeffs::Integers, Budget::unlimited(), Exec::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn size_limit() {
    assert!(nerve_with(&delooping(&FinGroup::symmetric(3)), 8, Budget(1000), Exec::default()).is_err());
}
