use taulab::bits;
use taulab::instances::*;
use taulab::tau::{Item, Pair, TauTilting};

fn theory(alg: &taulab::algebra::AlgRef) -> TauTilting {
    TauTilting::of_algebra(alg).expect("theory")
}

#[test]
fn support_tau_tilting_counts() {
    let k = f2();
    assert_eq!(theory(&a2(&k)).stt_len(), 5);
    assert_eq!(theory(&dual_numbers(&k)).stt_len(), 2);
    assert_eq!(theory(&preproj_a2(&f4())).stt_len(), 6);
    assert_eq!(theory(&lambda_tw()).stt_len(), 2);
    assert_eq!(theory(&a3_rad2(&k)).stt_len(), 12);
}

#[test]
fn every_pair_passes_the_structural_checks() {
    for (name, alg) in desk_f2() {
        let t = theory(&alg);
        assert!(t.covers_are_mutations(), "{name}");
        let fan = t.check_fan().unwrap();
        assert!(fan.ok(), "{name}: {fan:?}");
        for s in 0..t.stt_len() {
            let p = t.stt_pair(s);
            assert!(t.check_h(p), "{name}");
            assert_eq!(&t.ext_projective_pair(t.stt_fac(s)), p, "{name}");
        }
        for p in t.pairs() {
            let red = t.jasso_reduce(p).unwrap();
            assert!(t.verify_reduction(&red), "{name} {p:?}");
            assert!(t.check_wide(red.wide).unwrap(), "{name} {p:?}");
            assert_eq!(bits::count(t.relative_simples(red.wide)), t.rank() - p.size(), "{name} {p:?}");
        }
    }
}

#[test]
fn a2_completions_and_perpendicular() {
    let alg = a2(&f2());
    let t = theory(&alg);
    let c = t.catalog();
    let (s1, p1, s2) = (c.simple_index(0), c.proj_index(0), c.simple_index(1));
    let b = t.bongartz(&Pair::new(vec![s1], vec![])).unwrap();
    assert_eq!(b, Pair::new(vec![s1, p1], vec![]));
    assert_eq!(t.bongartz(&Pair::default()).unwrap(), Pair::new(vec![c.proj_index(0), c.proj_index(1)], vec![]));
    assert_eq!(t.cobongartz(&Pair::default()).unwrap(), Pair::new(vec![], vec![0, 1]));
    assert_eq!(t.tau_perp(&Pair::new(vec![p1], vec![])), bits::set_of([s2]));
    assert_eq!(t.g_vector(s1), &[1, -1]);
    assert_eq!(t.tf_orderings(&[p1, c.proj_index(1)]).len(), 2);
    assert!(t.is_tilting(&[s1, p1]));
}

#[test]
fn exceptional_sequence_counts() {
    for (name, alg) in desk_f2() {
        let t = theory(&alg);
        for len in 0..=t.rank() {
            let signed = t.exceptional_sequences(len, true).unwrap();
            assert_eq!(signed.len() as u64, t.ordered_decomposition_count(len), "{name} signed {len}");
            let unsigned = t.exceptional_sequences(len, false).unwrap();
            assert_eq!(unsigned.len() as u64, t.tf_ordering_count(len), "{name} unsigned {len}");
            assert!(unsigned.iter().all(|s| s.iter().all(|x| matches!(x, Item::Module(_)))));
        }
    }
    let t = theory(&a2(&f2()));
    assert_eq!(t.exceptional_sequences(2, true).unwrap().len(), 10);
    assert_eq!(theory(&dual_numbers(&f2())).exceptional_sequences(1, true).unwrap().len(), 2);
}
