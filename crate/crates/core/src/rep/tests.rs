use super::*;
use crate::instances::*;

fn cat_of(a: &AlgRef) -> ModCat {
    ModCat::new(a).unwrap()
}

#[test]
fn a2_basics() {
    let a = a2(&f2());
    let c = cat_of(&a);
    let (p1, p2, s1, s2) = (c.projective(0), c.projective(1), c.simple(0), c.simple(1));
    assert_eq!(p1.dim_vector(), vec![1, 1]);
    assert_eq!(p2.dim_vector(), vec![0, 1]);
    assert_eq!(hom_dim(s1, s2), 0);
    assert_eq!(hom_dim(p1, p1), 1);
    assert!(iso(s2, p2).unwrap());
    assert!(!iso(s1, s2).unwrap());
    // τ S1 = S2
    let t = c.tau(s1);
    assert!(iso(&t, s2).unwrap());
    assert_eq!(c.tau(p1).dim(), 0);
    assert!(iso(&c.tau_inv(s2), s1).unwrap());
    assert_eq!(c.g_vector(s1), vec![1, -1]);
    // injectives: I1 = S1, I2 = P1
    assert!(iso(c.injective(0), s1).unwrap());
    assert!(iso(c.injective(1), p1).unwrap());
    let e = c.ext1(s1, s2);
    assert_eq!(e.dim(), 1);
    let (mid, _, _) = e.middle_term(&[1]);
    assert!(iso(&mid, p1).unwrap());
    assert_eq!(c.ext1(p1, s2).dim(), 0);
    assert!(iso(&p1.radical().0, s2).unwrap());
    assert!(in_gen(s1, p1));
    assert!(!in_gen(s2, p1));
    assert!(iso(&torsionfree_quotient(p1, s2), s1).unwrap());
    assert_eq!(c.gl_dim(), Some(1));
}

#[test]
fn decompose_and_submodules() {
    let a = a2(&f2());
    let c = cat_of(&a);
    let s2 = c.simple(1);
    let ss = s2.power(2);
    let parts = decompose(&ss).unwrap();
    assert_eq!(parts.len(), 2);
    assert_eq!(ss.submodules(1000).unwrap().len(), 5);
    assert_eq!(c.projective(0).submodules(1000).unwrap().len(), 3);
    let sum = Rep::direct_sum(&[c.projective(0), c.simple(0)]).0;
    assert_eq!(decompose(&sum).unwrap().len(), 2);
}

#[test]
fn catalogues() {
    let k = f2();
    for (a, n) in [(a2(&k), 3), (dual_numbers(&k), 2), (lambda_tw(), 2), (preproj_a2(&k), 4), (a3_rad2(&k), 5)] {
        let cat = Catalog::build(&a, Default::default()).unwrap();
        assert_eq!(cat.len(), n);
        let cert = cat.certify(4, 1 << 12).unwrap();
        assert!(cert.ok(), "{:?}", cert);
    }
    let cat = Catalog::build(&preproj_a2(&f4()), Default::default()).unwrap();
    assert_eq!(cat.len(), 4);
}

#[test]
fn nakayama_and_dual_numbers() {
    let a = dual_numbers(&f2());
    let c = cat_of(&a);
    let s = c.simple(0);
    assert!(iso(&c.tau(s), s).unwrap());
    assert_eq!(c.proj_dim(s), None);
    assert!(iso(c.injective(0), c.projective(0)).unwrap());
}

#[test]
fn derived_algebras() {
    use crate::algebra::{endomorphism_algebra, find_isomorphism, preprojective_algebra, tensor_up};
    let k = f2();
    let a = a2(&k);
    let c = cat_of(&a);
    let reg = c.regular();
    let e = endomorphism_algebra(&reg, true).unwrap();
    assert_eq!(e.alg.dim(), 3);
    assert_eq!(e.alg.num_vertices(), 2);
    assert!(find_isomorphism(&e.alg, &a, 1 << 16).is_some());
    let es = endomorphism_algebra(c.simple(0), false).unwrap();
    assert_eq!(es.alg.dim(), 1);
    let lt = lambda_tw();
    let lc = cat_of(&lt);
    let el = endomorphism_algebra(lc.simple(0), false).unwrap();
    assert_eq!(el.alg.dim(), 2);
    assert_eq!(el.alg.num_vertices(), 1);
    assert_eq!(el.alg.radical().rows(), 0);

    let pi = preprojective_algebra(&c, &reg).unwrap();
    assert_eq!(pi.alg.dim(), 4);
    assert_eq!(pi.degree_dims, vec![3, 1]);
    assert!(find_isomorphism(&pi.alg, &preproj_a2(&k), 1 << 16).is_some());
    let up = tensor_up(&pi.alg, 2).unwrap();
    let a4 = a2(&f4());
    let c4 = cat_of(&a4);
    let pi4 = preprojective_algebra(&c4, &c4.regular()).unwrap();
    assert!(find_isomorphism(&up, &pi4.alg, 1 << 20).is_some());
    assert!(preprojective_algebra(&cat_of(&dual_numbers(&k)), c.projective(0)).is_err());
}

#[test]
fn species_instances() {
    use crate::algebra::{find_isomorphism, tensor_up};
    let b2 = Catalog::build(&b2_species(), Default::default()).unwrap();
    assert_eq!(b2.len(), 4);
    assert!(b2.certify(4, 1 << 12).unwrap().ok());
    let up = alg_ref(tensor_up(&lambda_tw(), 2).unwrap());
    assert_eq!(Catalog::build(&up, Default::default()).unwrap().len(), 4);
    assert!(find_isomorphism(&lambda_tw(), &lambda_tw_species(), 1 << 12).is_some());
    assert!(find_isomorphism(&lambda_tw(), &f4_over_f2(), 1 << 12).is_none());
}
