use taulab::bits;
use taulab::instances::*;
use taulab::tau::{Pair, TauTilting};
use taulab::tors::*;

#[test]
fn lattices_agree_with_the_oracle() {
    for (name, alg) in desk_f2().into_iter().chain([("preproj-A2/F4", preproj_a2(&f4()))]) {
        let t = TauTilting::of_algebra(&alg).unwrap();
        let lat = Lattice::new(&t).unwrap();
        let data = ClosureData::new(&t).unwrap();
        assert!(check_against_oracle(&t, &lat, &data).unwrap(), "{name}");
        assert!(lat.check_lattice(&t), "{name}");
        assert!(check_torf_duality(&t, &lat), "{name}");
        assert!(check_semibrick_labels(&t, &lat).unwrap(), "{name}");
        assert!(check_perp_hearts(&t, &lat).unwrap(), "{name}");
        for p in t.pairs() {
            assert!(check_interval_labels(&t, &lat, p).unwrap(), "{name} {p:?}");
        }
        assert_eq!(f_bricks(&t).unwrap(), bricks(&t).unwrap(), "{name}");
    }
}

#[test]
fn a2_examples() {
    let t = TauTilting::of_algebra(&a2(&f2())).unwrap();
    let c = t.catalog();
    let (s1, s2, p1) = (c.simple_index(0), c.simple_index(1), c.proj_index(0));
    assert_eq!(torsion_closure(&t, bits::set_of([s1])), bits::set_of([s1]));
    assert_eq!(torsion_closure(&t, bits::set_of([s2])), bits::set_of([s2]));
    assert_eq!(filt(&t, bits::set_of([s1, s2])), t.all());
    assert_eq!(f_bricks(&t).unwrap(), bits::set_of([s1, s2, p1]));
    let lat = Lattice::new(&t).unwrap();
    assert_eq!(lat.len(), 5);
    assert_eq!(lat.down_labels(lat.top()), bits::set_of([s1, s2]));
    let u = t.u_class(&Pair::new(vec![p1], vec![]));
    assert_eq!(heart(&t, u, t.all()), bits::set_of([s2]));
    let pre = TauTilting::of_algebra(&preproj_a2(&f4())).unwrap();
    let plat = Lattice::new(&pre).unwrap();
    assert_eq!(plat.covers().len(), 6);
    assert_eq!(plat.maximal_chains().len(), 2);
}
