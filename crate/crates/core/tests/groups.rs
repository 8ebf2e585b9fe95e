use taulab::groups::*;
use taulab::hall::Hall;
use taulab::instances::*;
use taulab::tau::TauTilting;
use taulab::tors::{ClosureData, Lattice};
use taulab::wcat::WCat;

fn all_instances() -> Vec<(String, taulab::algebra::AlgRef)> {
    let mut v: Vec<(String, _)> = desk_f2().into_iter().map(|(n, a)| (n.to_string(), a)).collect();
    let k = f4();
    v.push(("A2/F4".into(), a2(&k)));
    v.push(("preproj-A2/F4".into(), preproj_a2(&k)));
    v.push(("A3-rad2/F4".into(), a3_rad2(&k)));
    v
}

#[test]
fn dual_numbers_presentations() {
    let t = TauTilting::of_algebra(&dual_numbers(&f2())).unwrap();
    let lat = Lattice::new(&t).unwrap();
    let g = picture_group(&t, &lat).unwrap();
    assert_eq!(g.pres.gens.len(), 3);
    assert_eq!(g.pres.relations.len(), 2);
    assert_eq!(g.pres.abelianization(), (1, vec![]));
    let h = interval_heart_group(&t, lat.classes());
    assert_eq!(h.intervals().count(), 3);
    assert_eq!(h.pres.abelianization(), (1, vec![]));
}

#[test]
fn a2_picture_group() {
    let t = TauTilting::of_algebra(&a2(&f2())).unwrap();
    let cat = t.catalog();
    let lat = Lattice::new(&t).unwrap();
    let g = picture_group(&t, &lat).unwrap();
    assert_eq!(g.x.len(), 3);
    assert_eq!(g.y.len(), 5);
    assert_eq!(lat.covers().len(), 5);
    assert_eq!(g.pres.relations.len(), 6);

    let (s1, s2, p1) = (cat.simple_index(0), cat.simple_index(1), cat.proj_index(0));
    let x = |b: usize| gen(g.x[&b]);
    let mut words = chain_words(&g, &lat);
    words.sort_by_key(|w| w.len());
    assert_eq!(words[0], vec![x(s1), x(s2)]);
    assert_eq!(words[1], vec![x(s2), x(p1), x(s1)]);
    let hall = Hall::new(&t, 3).unwrap();
    assert!(check_chain_relations(&t, &g, &lat, &hall));
    // the abelianisation forces X_{P1} = e there, but not X_{S1} = X_{S2}
    assert!(!g.pres.abelian_distinct(&[x(p1)], &[]));
    assert!(g.pres.abelian_distinct(&[x(s1)], &[x(s2)]));
}

#[test]
fn psi_and_iota_on_every_instance() {
    for (name, alg) in all_instances() {
        let t = TauTilting::of_algebra(&alg).unwrap();
        let lat = Lattice::new(&t).unwrap();
        let g = picture_group(&t, &lat).unwrap();
        let h = interval_heart_group(&t, lat.classes());
        let psi = Psi::new(&g, &h, &lat).unwrap();
        let r = psi.report(&t);
        assert!(r.ok(), "{name}");
        let full = ClosureData::new(&t).unwrap().oracle_classes(&t).unwrap();
        let hf = interval_heart_group(&t, &full);
        assert!(iota_is_isomorphism(&h, &hf), "{name}");
        for ch in lat.maximal_chains() {
            assert_eq!(telescope(&h, &ch), h.generator(lat.bottom(), lat.top()), "{name}");
        }
    }
}

#[test]
fn hall_certificates_and_gamma() {
    for (name, alg) in all_instances() {
        let t = TauTilting::of_algebra(&alg).unwrap();
        let lat = Lattice::new(&t).unwrap();
        let hall = Hall::new(&t, Hall::default_level(&t)).unwrap();
        let g = picture_group(&t, &lat).unwrap();
        assert!(heart_controlled_cert(&t, &lat, &hall, &g).ok(), "{name}");
        assert!(check_chain_relations(&t, &g, &lat, &hall), "{name}");
        let c = WCat::new(&t).unwrap();
        assert!(check_gamma(&t, &c, &hall).ok(), "{name}");
    }
}

#[test]
fn lattices_transport_across_fields() {
    for (small, big) in [(a2(&f2()), a2(&f4())), (a3_rad2(&f2()), a3_rad2(&f4())), (dual_numbers(&f2()), dual_numbers(&f4()))] {
        let (t1, t2) = (TauTilting::of_algebra(&small).unwrap(), TauTilting::of_algebra(&big).unwrap());
        let (l1, l2) = (Lattice::new(&t1).unwrap(), Lattice::new(&t2).unwrap());
        let eta = lattice_isomorphism(l1.classes(), l2.classes()).expect("isomorphic lattices");
        let (h1, h2) = (interval_heart_group(&t1, l1.classes()), interval_heart_group(&t2, l2.classes()));
        assert!(check_transport(&t1, &h1, &t2, &h2, &eta));
        let id = lattice_isomorphism(l1.classes(), l1.classes()).unwrap();
        assert!(check_transport(&t1, &h1, &t1, &h1, &id));
    }
    let t1 = TauTilting::of_algebra(&a2(&f2())).unwrap();
    let t2 = TauTilting::of_algebra(&dual_numbers(&f2())).unwrap();
    assert!(lattice_isomorphism(Lattice::new(&t1).unwrap().classes(), Lattice::new(&t2).unwrap().classes()).is_none());
}
