//! Randomized invariants across the library, sampled over the desk instances.

use std::sync::OnceLock;

use proptest::prelude::*;
use taulab::algebra::{tensor_up, AlgRef};
use taulab::gf::{embedding, Elem, Field, Mat};
use taulab::groups::{interval_heart_group, picture_group, telescope, IntHeart, PictureGroup, Psi};
use taulab::hall::{Hall, HallSeries};
use taulab::instances::*;
use taulab::rep::catalog::Key;
use taulab::rep::modcat::ModCat;
use taulab::rep::{decompose, hom, iso, Rep};
use taulab::scalarext::ExtensionContext;
use taulab::tau::TauTilting;
use taulab::tors::{torsion_closure, Lattice};

struct Inst {
    name: &'static str,
    alg: AlgRef,
    t: TauTilting,
    lat: Lattice,
}

fn insts() -> &'static [Inst] {
    static CELL: OnceLock<Vec<Inst>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut all = desk_f2();
        all.push(("A2/F4", a2(&f4())));
        all.push(("preproj-A2/F4", preproj_a2(&f4())));
        all.into_iter()
            .map(|(name, alg)| {
                let t = TauTilting::of_algebra(&alg).unwrap();
                let lat = Lattice::new(&t).unwrap();
                Inst { name, alg, t, lat }
            })
            .collect()
    })
}

fn contexts() -> &'static [ExtensionContext] {
    static CELL: OnceLock<Vec<ExtensionContext>> = OnceLock::new();
    CELL.get_or_init(|| desk_f2().iter().map(|(_, a)| ExtensionContext::new(a, 2).unwrap()).collect())
}

fn halls() -> &'static [Hall<'static>] {
    static CELL: OnceLock<Vec<Hall<'static>>> = OnceLock::new();
    CELL.get_or_init(|| {
        insts()
            .iter()
            .filter(|i| ["A2", "dual-numbers", "lambda-tw", "preproj-A2"].contains(&i.name))
            .map(|i| Hall::new(&i.t, Hall::default_level(&i.t) + 1).unwrap())
            .collect()
    })
}

fn groups() -> &'static [(PictureGroup, IntHeart)] {
    static CELL: OnceLock<Vec<(PictureGroup, IntHeart)>> = OnceLock::new();
    CELL.get_or_init(|| {
        insts().iter().map(|i| (picture_group(&i.t, &i.lat).unwrap(), interval_heart_group(&i.t, i.lat.classes()))).collect()
    })
}

const FIELDS: [(u32, u32); 7] = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1)];

fn field(i: usize) -> Field {
    let (p, n) = FIELDS[i % FIELDS.len()];
    Field::new(p, n).unwrap()
}

fn elem(f: &Field, x: u32) -> Elem {
    x % f.q()
}

fn mat(f: &Field, rows: usize, cols: usize, data: &[u32]) -> Mat {
    let v: Vec<Elem> = (0..rows * cols).map(|i| elem(f, data[i % data.len()])).collect();
    Mat::from_vec(f, rows, cols, v)
}

/// `L·U` with unit triangular factors, hence invertible.
fn invertible(f: &Field, n: usize, data: &[u32]) -> Mat {
    let mut l = Mat::identity(f, n);
    let mut u = Mat::identity(f, n);
    let mut it = data.iter().cycle();
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, elem(f, *it.next().unwrap()));
            u.set(j, i, elem(f, *it.next().unwrap()));
        }
    }
    l.mul(&u)
}

fn key_of_mults(n: usize, m: &[u32], cap: u32) -> Key {
    (0..n).map(|i| m[i % m.len()] % (cap + 1)).collect()
}

fn key_sum(a: &Key, b: &Key) -> Key {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn length_of(h: &Hall, k: &Key) -> usize {
    h.catalog().key_length(k)
}

fn series(h: &Hall, min_len: usize, coeffs: &[i64]) -> HallSeries {
    let mut s = HallSeries::default();
    for (k, c) in h.keys().filter(|k| length_of(h, k) >= min_len).zip(coeffs.iter().cycle()) {
        if *c != 0 {
            s.coeffs.insert(k.clone(), *c);
        }
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_inverse_and_frobenius(fi in 0usize..7, x in any::<u32>(), y in any::<u32>()) {
        let f = field(fi);
        let (x, y) = (elem(&f, x), elem(&f, y));
        if x != 0 {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
        }
        prop_assert_eq!(f.pow(x, f.q() as u64), x);
        prop_assert_eq!(f.frobenius(f.add(x, y)), f.add(f.frobenius(x), f.frobenius(y)));
    }

    #[test]
    fn embedding_is_an_injective_ring_map(fi in 0usize..7, m in 2u32..4, x in any::<u32>(), y in any::<u32>()) {
        let f = field(fi);
        prop_assume!((f.q() as u64).pow(m) <= 1 << 12);
        let e = embedding(&f, m).unwrap();
        let (x, y) = (elem(&f, x), elem(&f, y));
        prop_assert_eq!(e.embed(f.mul(x, y)), e.big.mul(e.embed(x), e.embed(y)));
        prop_assert_eq!(e.embed(f.add(x, y)), e.big.add(e.embed(x), e.embed(y)));
        prop_assert_eq!(e.embed(x) == e.embed(y), x == y);
        prop_assert!(e.is_in_small(e.embed(x)));
    }

    #[test]
    fn rref_and_kernel(fi in 0usize..7, rows in 0usize..6, cols in 1usize..6, data in prop::collection::vec(any::<u32>(), 1..36)) {
        let f = field(fi);
        let a = mat(&f, rows, cols, &data);
        let (r, piv) = a.rref();
        prop_assert_eq!(&r.rref().0, &r);
        prop_assert!(a.rank() <= rows.min(cols));
        prop_assert_eq!(piv.len(), a.rank());
        let k = a.kernel();
        prop_assert_eq!(a.rank() + k.rank(), cols);
        prop_assert!(a.mul(&k.transpose()).is_zero());
    }

    #[test]
    fn algebra_is_associative_and_unital(pick in any::<usize>(), i in any::<usize>(), j in any::<usize>(), k in any::<usize>()) {
        let alg = &insts()[pick % insts().len()].alg;
        let d = alg.dim();
        let (a, b, c) = (alg.basis_vec(i % d), alg.basis_vec(j % d), alg.basis_vec(k % d));
        prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &c), alg.mul(&a, &alg.mul(&b, &c)));
        prop_assert_eq!(&alg.mul(alg.unit(), &a), &a);
        prop_assert_eq!(&alg.mul(&a, alg.unit()), &a);
    }

    #[test]
    fn rep_decompose_is_a_partition(pick in any::<usize>(), mults in prop::collection::vec(0u32..3, 1..8), basis in prop::collection::vec(any::<u32>(), 1..64)) {
        let inst = &insts()[pick % insts().len()];
        let cat = inst.t.catalog();
        let mut key = key_of_mults(cat.len(), &mults, 2);
        while cat.key_length(&key) > 5 {
            let i = key.iter().position(|&x| x > 0).unwrap();
            key[i] -= 1;
        }
        let m = cat.module(&key);
        let m = m.conjugate(&invertible(m.field(), m.dim(), &basis));
        prop_assert!(m.check_module());
        let parts = decompose(&m).unwrap();
        let mut dv = vec![0; m.dim_vector().len()];
        for p in &parts {
            for (a, b) in dv.iter_mut().zip(p.dim_vector()) {
                *a += b;
            }
        }
        prop_assert_eq!(dv, m.dim_vector());
        if parts.is_empty() {
            prop_assert_eq!(m.dim(), 0);
        } else {
            let refs: Vec<&Rep> = parts.iter().collect();
            prop_assert!(iso(&Rep::direct_sum(&refs).0, &m).unwrap());
        }
        prop_assert_eq!(cat.key(&m).unwrap(), key);
    }

    #[test]
    fn ar_sequences_exist(pick in any::<usize>(), x in any::<usize>(), coeffs in prop::collection::vec(any::<u32>(), 1..6)) {
        let inst = &insts()[pick % insts().len()];
        let cat = inst.t.catalog();
        let xm = cat.ind(x % cat.len());
        let mc = cat.cat();
        prop_assume!(!mc.is_projective(xm));
        let tx = mc.tau(xm);
        prop_assert!(cat.index_of(&tx).is_ok(), "{}: tau of an indecomposable", inst.name);
        let ext = mc.ext1(xm, &tx);
        prop_assert!(ext.dim() > 0);
        let f = xm.field().clone();
        let mut c: Vec<Elem> = (0..ext.dim()).map(|i| elem(&f, coeffs[i % coeffs.len()])).collect();
        if c.iter().all(|&v| v == 0) {
            c[0] = 1;
        }
        let (e, ne, em) = ext.middle_term(&c);
        prop_assert_eq!(ne.rank(), tx.dim());
        prop_assert_eq!(em.rank(), xm.dim());
        prop_assert!(ne.mul(&em).is_zero());
        prop_assert_eq!(e.dim(), xm.dim() + tx.dim());
        prop_assert!(!iso(&e, &Rep::direct_sum(&[xm, &tx]).0).unwrap());
    }

    #[test]
    fn hom_and_ext_survive_extension(pick in any::<usize>(), i in any::<usize>(), j in any::<usize>()) {
        let ctx = &contexts()[pick % contexts().len()];
        let cat = ctx.base.catalog();
        let (m, n) = (cat.ind(i % cat.len()), cat.ind(j % cat.len()));
        let (mk, nk) = (ctx.extend_rep(m), ctx.extend_rep(n));
        let big = ctx.big.catalog().cat();
        prop_assert_eq!(hom(m, n).len(), hom(&mk, &nk).len());
        prop_assert_eq!(cat.cat().ext1_dim(m, n), big.ext1_dim(&mk, &nk));
        let back = ctx.restrict_rep(&mk);
        prop_assert!(iso(&back, &m.power(ctx.degree() as usize)).unwrap());
    }

    #[test]
    fn extension_is_additive_exact_and_key_injective(pick in any::<usize>(), a in prop::collection::vec(0u32..3, 1..8), b in prop::collection::vec(0u32..3, 1..8), hc in prop::collection::vec(any::<u32>(), 1..8)) {
        let ctx = &contexts()[pick % contexts().len()];
        let cat = ctx.base.catalog();
        let bc = ctx.big.catalog();
        let (ka, kb) = (key_of_mults(cat.len(), &a, 1), key_of_mults(cat.len(), &b, 1));
        let (ma, mb) = (cat.module(&ka), cat.module(&kb));
        let ext_a = bc.key(&ctx.extend_rep(&ma)).unwrap();
        let ext_b = bc.key(&ctx.extend_rep(&mb)).unwrap();
        let sum = Rep::direct_sum(&[&ma, &mb]).0;
        prop_assert_eq!(bc.key(&ctx.extend_rep(&sum)).unwrap(), key_sum(&ext_a, &ext_b));
        prop_assert_eq!(ext_a == ext_b, ka == kb);

        let basis = hom(&ma, &mb);
        prop_assume!(!basis.is_empty());
        let f = ma.field().clone();
        let mut h = Mat::zeros(&f, ma.dim(), mb.dim());
        for (z, c) in basis.iter().zip(hc.iter().cycle()) {
            h.axpy(elem(&f, *c), z);
        }
        let ((ea, ta), (eb, tb)) = (ctx.extend_rep_with_basis(&ma), ctx.extend_rep_with_basis(&mb));
        let hk = ta.mul(&ctx.emb.embed_mat(&h)).mul(&tb.inverse().unwrap());
        prop_assert!(ea.is_hom_to(&eb, &hk));
        prop_assert_eq!(hk.rank(), h.rank());
        prop_assert_eq!(hk.kernel().rank(), h.kernel().rank());
    }

    #[test]
    fn fac_is_a_torsion_class_and_recovers_its_pair(pick in any::<usize>(), s in any::<usize>()) {
        let inst = &insts()[pick % insts().len()];
        let t = &inst.t;
        let s = s % t.stt_len();
        let fac = t.stt_fac(s);
        prop_assert_eq!(torsion_closure(t, fac), fac);
        prop_assert!(inst.lat.index_of(fac).is_some());
        prop_assert_eq!(&t.ext_projective_pair(fac), t.stt_pair(s));
        prop_assert_eq!(t.stt_index_of_fac(fac), Some(s));
        prop_assert_eq!(t.stt_len(), inst.lat.len());
    }

    #[test]
    fn torsion_lattice_absorbs(pick in any::<usize>(), a in any::<usize>(), b in any::<usize>(), c in any::<usize>()) {
        let inst = &insts()[pick % insts().len()];
        let (t, lat) = (&inst.t, &inst.lat);
        let n = lat.len();
        let (a, b, c) = (a % n, b % n, c % n);
        let join = |x, y| lat.join(t, x, y).unwrap();
        let meet = |x, y| lat.meet(x, y).unwrap();
        prop_assert_eq!(join(a, meet(a, b)), a);
        prop_assert_eq!(meet(a, join(a, b)), a);
        prop_assert_eq!(join(a, join(b, c)), join(join(a, b), c));
        prop_assert_eq!(meet(a, meet(b, c)), meet(meet(a, b), c));
        prop_assert!(lat.leq(meet(a, b), a) && lat.leq(a, join(a, b)));
    }

    #[test]
    fn hall_series_associate_and_invert(pick in any::<usize>(), f in prop::collection::vec(-3i64..=3, 1..12), g in prop::collection::vec(-3i64..=3, 1..12), h in prop::collection::vec(-3i64..=3, 1..12)) {
        let hall = &halls()[pick % halls().len()];
        let (f, g, h) = (series(hall, 0, &f), series(hall, 0, &g), series(hall, 0, &h));
        prop_assert_eq!(hall.mul(&hall.mul(&f, &g), &h), hall.mul(&f, &hall.mul(&g, &h)));
        let mut e = series(hall, 1, &[1, -2, 0, 3]);
        e.coeffs.insert(hall.catalog().zero_key(), 1);
        let inv = hall.invert(&e).unwrap();
        prop_assert_eq!(hall.mul(&e, &inv), hall.unit());
        prop_assert_eq!(hall.mul(&inv, &e), hall.unit());
        let nonunit = series(hall, 1, &[1]);
        prop_assert!(hall.invert(&nonunit).is_err());
    }

    #[test]
    fn hall_length_filtration_is_an_ideal(pick in any::<usize>(), l in 1usize..4, f in prop::collection::vec(-3i64..=3, 1..12), g in prop::collection::vec(-3i64..=3, 1..12)) {
        let hall = &halls()[pick % halls().len()];
        let (f, g) = (series(hall, l, &f), series(hall, 0, &g));
        for p in [hall.mul(&f, &g), hall.mul(&g, &f)] {
            prop_assert!(p.support().all(|k| length_of(hall, k) >= l));
        }
    }

    #[test]
    fn telescoping_on_every_maximal_chain(pick in any::<usize>(), c in any::<usize>()) {
        let i = pick % insts().len();
        let lat = &insts()[i].lat;
        let h = &groups()[i].1;
        let chains = lat.maximal_chains();
        let chain = &chains[c % chains.len()];
        prop_assert_eq!(telescope(h, chain), h.generator(lat.bottom(), lat.top()));
    }

    #[test]
    fn psi_v_round_trip_is_invisible_to_abelianization(pick in any::<usize>(), w in prop::collection::vec((any::<usize>(), any::<bool>()), 0..10), z in prop::collection::vec((any::<usize>(), any::<bool>()), 0..10)) {
        let i = pick % insts().len();
        let (g, h) = &groups()[i];
        let psi = Psi::new(g, h, &insts()[i].lat).unwrap();
        let word = |gens: usize, raw: &[(usize, bool)]| -> Vec<i64> {
            raw.iter().map(|&(x, s)| {
                let v = taulab::groups::gen(x % gens);
                if s { v } else { -v }
            }).collect()
        };
        let w = word(g.pres.gens.len(), &w);
        let z = word(h.pres.gens.len(), &z);
        prop_assert!(!g.pres.abelian_distinct(&psi.v(&psi.psi(&w)), &w));
        prop_assert!(!h.pres.abelian_distinct(&psi.psi(&psi.v(&z)), &z));
        prop_assert_eq!(g.pres.abelianization().0, h.pres.abelianization().0);
    }
}

#[test]
fn extension_preserves_global_dimension_and_radical() {
    for inst in insts() {
        for m in [2, 3] {
            let up = tensor_up(&inst.alg, m).unwrap();
            let emb = embedding(inst.alg.field(), m).unwrap();
            let rad = emb.embed_mat(inst.alg.radical()).row_basis();
            assert_eq!(up.radical().row_basis(), rad, "{} m={m}", inst.name);
            let up = taulab::rep::alg_ref(up);
            let gl = ModCat::new(&inst.alg).unwrap().gl_dim();
            assert_eq!(ModCat::new(&up).unwrap().gl_dim(), gl, "{} m={m}", inst.name);
        }
    }
}

