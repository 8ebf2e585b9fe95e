use taulab::bits;
use taulab::instances::*;
use taulab::scalarext::ExtensionContext;

#[test]
fn every_check_passes_on_the_desk() {
    for (name, alg) in desk_f2() {
        let ctx = ExtensionContext::new(&alg, 2).unwrap();
        let rep = ctx.verify().unwrap();
        for c in &rep.checks {
            println!("{name:>14} {:<28} {}", c.name, if c.ok { "ok" } else { "FAIL" });
        }
        assert!(rep.ok(), "{name}: {:?}", rep.failures());
    }
}

#[test]
fn twisted_algebra_lifts() {
    let ctx = ExtensionContext::new(&lambda_tw(), 2).unwrap();
    assert_eq!(ctx.base.stt_len(), 2);
    assert_eq!(ctx.big.stt_len(), 6);
    assert_eq!(ctx.d, vec![vec![1], vec![1]]);
    let s = ctx.base.catalog().simple_index(0);
    assert_eq!(bits::count(ctx.lift_brick(s).unwrap()), 2);
    assert_ne!(ctx.summand_witnesses(ctx.base.all()).unwrap(), 0);
}

#[test]
fn b2_species_lift_table() {
    let ctx = ExtensionContext::new(&b2_species(), 2).unwrap();
    assert_eq!(ctx.base.len(), 4);
    assert_eq!(ctx.big.rank(), 3);
    let bc = ctx.base.catalog();
    let p2 = bc.proj_index(1);
    assert_eq!(bits::count(ctx.ext_support(1 << p2)), 2);
    assert_eq!(bits::count(ctx.ext_support(1 << bc.proj_index(0))), 1);
}
