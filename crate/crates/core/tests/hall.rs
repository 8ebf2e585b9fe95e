use taulab::hall::*;
use taulab::instances::*;
use taulab::tau::TauTilting;
use taulab::tors::Lattice;

fn gauss_binom(n: u32, k: u32, q: i64) -> i64 {
    let mut num = 1i64;
    let mut den = 1i64;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

#[test]
fn a2_hall_numbers() {
    let t = TauTilting::of_algebra(&a2(&f2())).unwrap();
    let cat = t.catalog();
    let (s1, s2, p1) = (cat.simple_index(0), cat.simple_index(1), cat.proj_index(0));
    let h = Hall::new(&t, 3).unwrap();
    let k = |i: usize| cat.unit_key(i);
    let sum = |a: usize, b: usize| {
        let mut x = cat.unit_key(a);
        x[b] += 1;
        x
    };
    assert_eq!(h.number(&k(s1), &k(s2), &k(p1)), 1);
    assert_eq!(h.number(&k(s2), &k(s1), &k(p1)), 0);
    assert_eq!(h.number(&k(s2), &k(s2), &sum(s2, s2)), 3);

    let ab = h.mul(&h.basis(&k(s1)), &h.basis(&k(s2)));
    let ba = h.mul(&h.basis(&k(s2)), &h.basis(&k(s1)));
    let mut expect = h.basis(&sum(s1, s2));
    expect.coeffs.insert(k(p1), 1);
    assert_eq!(ab, expect);
    assert_eq!(ba, h.basis(&sum(s1, s2)));
    assert_ne!(ab, ba);

    // direct enumeration agrees with the table
    for m in h.keys_of_length(1).iter().chain(h.keys_of_length(2)) {
        for n in h.keys_of_length(1) {
            let l = cat.key_length(m) + 1;
            for e in h.keys_of_length(l) {
                let direct = hall_number(&cat.module(m), &cat.module(n), &cat.module(e)).unwrap();
                assert_eq!(direct, h.number(m, n, e));
            }
        }
    }
}

#[test]
fn a2_series() {
    let t = TauTilting::of_algebra(&a2(&f2())).unwrap();
    let cat = t.catalog();
    let s1 = cat.simple_index(0);
    let h2 = Hall::new(&t, 2).unwrap();
    let e = h2.e_of_set(t.all());
    assert_eq!(e.coeffs.len(), 7);
    assert!(e.coeffs.values().all(|&c| c == 1));
    assert_eq!(h2.e_of_set(1 << s1).coeffs.len(), 3);
    assert_eq!(h2.e_of_set(0), h2.unit());

    let h = Hall::new(&t, 3).unwrap();
    let inv = h.invert(&h.e_of_set(1 << s1)).unwrap();
    // a_n with Σ_k [n choose k]_2 a_k = 0
    let mut a = vec![1i64];
    for n in 1..=3u32 {
        let s: i64 = (0..n).map(|k| gauss_binom(n, k, 2) * a[k as usize]).sum();
        a.push(-s);
    }
    for (n, &c) in a.iter().enumerate() {
        let mut key = cat.zero_key();
        key[s1] = n as u32;
        assert_eq!(inv.get(&key), c);
    }
    assert_eq!(&a, &[1, -1, 2, -8]);
    assert!(h.invert(&h.e_of(|k| k.iter().any(|&c| c > 0))).is_err());
}

#[test]
fn dual_numbers_inverse() {
    let t = TauTilting::of_algebra(&dual_numbers(&f2())).unwrap();
    let h = Hall::new(&t, 3).unwrap();
    let e = h.e_of_set(t.all());
    let f = h.invert(&e).unwrap();
    assert_eq!(h.mul(&e, &f), h.unit());
    assert_eq!(h.mul(&f, &e), h.unit());
}

#[test]
fn suite_on_every_instance() {
    let mut all = desk_f2();
    all.push(("preproj-A2/F4", preproj_a2(&f4())));
    all.push(("A2/F4", a2(&f4())));
    for (name, alg) in all {
        let t = TauTilting::of_algebra(&alg).unwrap();
        let lat = Lattice::new(&t).unwrap();
        let h = Hall::new(&t, Hall::default_level(&t) + 1).unwrap();
        let r = h.report(&lat).unwrap();
        println!("{name}: {r:?}");
        assert!(r.ok(), "{name}: {r:?}");
    }
}
