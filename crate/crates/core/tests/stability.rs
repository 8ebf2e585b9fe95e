use std::collections::BTreeSet;

use proptest::prelude::*;
use taulab::gf::{count_vectors, nth_vector, Mat};
use taulab::instances::*;
use taulab::rep::Rep;
use taulab::scalarext::ExtensionContext;
use taulab::stability::*;
use taulab::tau::TauTilting;

/// Submodule lattice by brute force: cyclic submodules of every vector, closed under sums.
fn oracle_submodules(m: &Rep) -> Vec<Mat> {
    let f = m.field().clone();
    let n = m.dim();
    let mut found: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
    let mut list: Vec<Mat> = vec![Mat::zeros(&f, 0, n)];
    found.insert(vec![]);
    for idx in 0..count_vectors(&f, n).unwrap() {
        let v = nth_vector(&f, n, idx);
        let c = m.closure(&Mat::row_vec(&f, &v));
        if found.insert(c.row_list()) {
            list.push(c);
        }
    }
    let mut i = 0;
    while i < list.len() {
        for j in 0..i {
            let s = list[i].vstack(&list[j]).row_basis();
            if found.insert(s.row_list()) {
                list.push(s);
            }
        }
        i += 1;
    }
    list
}

/// Class of an invariant subspace from its projections to the vertex blocks.
fn oracle_class(m: &Rep, u: &Mat) -> Vec<usize> {
    let off = m.offsets();
    (0..off.len() - 1)
        .map(|i| {
            let cols: Vec<usize> = (off[i]..off[i + 1]).collect();
            u.select_cols(&cols).rank() / m.alg().simple_dim(i)
        })
        .collect()
}

#[test]
fn submodule_classes_match_brute_force() {
    for (name, alg) in desk_f2() {
        let t = TauTilting::of_algebra(&alg).unwrap();
        for x in t.catalog().inds() {
            let or = oracle_submodules(x);
            let mut a: Vec<Vec<usize>> = or.iter().map(|u| oracle_class(x, u)).collect();
            let mut b = submodule_classes(x).unwrap();
            a.sort();
            b.sort();
            assert_eq!(a, b, "{name}");
        }
    }
}

#[test]
fn a2_submodules_and_walls() {
    let alg = a2(&f2());
    let t = TauTilting::of_algebra(&alg).unwrap();
    let cat = t.catalog().cat();
    let p1 = cat.projective(0);
    let dv: Vec<Vec<usize>> = submodule_dim_vectors(p1).unwrap().into_iter().collect();
    assert_eq!(dv, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    assert_eq!(cat.simple(1).power(2).submodules(1 << 10).unwrap().len(), 5);

    assert!(is_semistable(p1, &theta(&[1, -1])).unwrap());
    assert!(!is_semistable(p1, &theta(&[-1, 1])).unwrap());
    assert!(is_stable(p1, &theta(&[1, -1])).unwrap());
    assert!(is_stable(cat.simple(0), &theta(&[0, 5])).unwrap());

    let w = Wall::of(p1).unwrap();
    assert_eq!(w.eq, vec![1, 1]);
    assert_eq!(w.ineqs, vec![vec![0, 1]]);
    assert!(Wall::of(&Rep::zero(&alg)).is_err());
}

#[test]
fn chambers_and_walls_on_the_desk() {
    for (name, alg) in desk_f2() {
        let t = TauTilting::of_algebra(&alg).unwrap();
        assert!(check_chambers(&t).unwrap(), "{name}");
        assert!(check_walls(&t, 2).unwrap(), "{name}");
        assert!(check_sub_quotient_symmetry(&t).unwrap(), "{name}");
    }
}

#[test]
fn stability_survives_scalar_extension() {
    for (name, alg) in desk_f2() {
        let ctx = ExtensionContext::new(&alg, 2).unwrap();
        let rep = verify_extension(&ctx, 3).unwrap();
        assert!(rep.ok(), "{name}: {:?}", rep.failures());
    }
}

#[test]
fn twisted_pullback_is_the_restriction_matrix() {
    let ctx = ExtensionContext::new(&lambda_tw(), 2).unwrap();
    assert_eq!(ctx.r, vec![vec![1, 1]]);
    assert_eq!(pullback(&ctx, &theta(&[3])), theta(&[3, 3]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wall_membership_is_semistability(a in -4i64..=4, b in -4i64..=4, pick in 0usize..6) {
        let alg = preproj_a2(&f2());
        let t = TauTilting::of_algebra(&alg).unwrap();
        let i = pick % t.len();
        let x = t.catalog().ind(i);
        let th = theta(&[a, b]);
        prop_assert_eq!(Wall::of(x).unwrap().contains(&th), is_semistable(x, &th).unwrap());
    }

    #[test]
    fn walls_are_convex_cones(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3, d in -3i64..=3, s in 1i64..5) {
        let alg = a2(&f2());
        let t = TauTilting::of_algebra(&alg).unwrap();
        for x in t.catalog().inds() {
            let w = Wall::of(x).unwrap();
            let (u, v) = (theta(&[a, b]), theta(&[c, d]));
            if w.contains(&u) && w.contains(&v) {
                prop_assert!(w.contains(&theta(&[s * a + c, s * b + d])));
            }
        }
    }
}
