use taulab::instances::*;
use taulab::scalarext::ExtensionContext;
use taulab::tau::TauTilting;
use taulab::tors::Lattice;
use taulab::wcat::*;

#[test]
fn structure_on_the_desk() {
    for (name, alg) in desk_f2() {
        let t = TauTilting::of_algebra(&alg).unwrap();
        let lat = Lattice::new(&t).unwrap();
        let c = WCat::new(&t).unwrap();
        assert!(c.check_category(), "{name}");
        assert!(c.check_containment_is_inclusion(), "{name}");
        assert!(check_identifications(&lat, &c).unwrap(), "{name}");
        assert!(check_objects(&t, &c).unwrap(), "{name}");
        println!("{name}: {} objects, {} morphisms", c.objects().len(), c.morphisms().len());
    }
}

#[test]
fn dual_numbers_and_a2() {
    let k = f2();
    let t = TauTilting::of_algebra(&dual_numbers(&k)).unwrap();
    let c = WCat::new(&t).unwrap();
    assert_eq!(c.objects().len(), 2);
    let (zero, whole) = (c.object_index(0).unwrap(), c.object_index(t.all()).unwrap());
    assert_eq!(c.hom(whole, zero).len(), 2);
    assert_eq!(c.hom(whole, whole).len(), 1);
    assert!(c.hom(zero, whole).is_empty());

    let t = TauTilting::of_algebra(&a2(&k)).unwrap();
    let c = WCat::new(&t).unwrap();
    assert_eq!(c.objects().len(), 5);
    let cat = t.catalog();
    for w in [cat.simple_index(0), cat.simple_index(1), cat.proj_index(0)] {
        assert!(c.object_index(1 << w).is_some());
    }
}

#[test]
fn extension_functor_is_faithful() {
    for (name, alg) in desk_f2() {
        let ctx = ExtensionContext::new(&alg, 2).unwrap();
        let rep = verify_functor(&ctx).unwrap();
        assert!(rep.ok(), "{name}: {:?}", rep.failures());
    }
}

#[test]
fn a2_functor_is_bijective() {
    let ctx = ExtensionContext::new(&a2(&f2()), 2).unwrap();
    let (b, g) = (WCat::new(&ctx.base).unwrap(), WCat::new(&ctx.big).unwrap());
    let f = functor(&ctx, &b, &g).unwrap();
    let mut objs = f.objects.clone();
    objs.sort();
    objs.dedup();
    assert_eq!(objs.len(), g.objects().len());
    assert_eq!(b.morphisms().len(), g.morphisms().len());
}
