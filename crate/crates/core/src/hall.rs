//! Completed Ringel–Hall algebra over a finite field, truncated by composition length.

use std::collections::BTreeMap;

use crate::bits::{self, IndSet};
use crate::error::{Error, Result};
use crate::rep::catalog::{Catalog, Key};
use crate::rep::{iso, Rep, SUBMODULE_CAP};
use crate::tau::TauTilting;
use crate::tors::{self, Lattice};

/// Finitely many integer coefficients on iso-classes of length at most the truncation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HallSeries {
    pub coeffs: BTreeMap<Key, i64>,
}

impl HallSeries {
    pub fn get(&self, k: &Key) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }
    fn add_to(&mut self, k: &Key, v: i64) {
        if v == 0 {
            return;
        }
        let e = self.coeffs.entry(k.clone()).or_insert(0);
        *e += v;
        if *e == 0 {
            self.coeffs.remove(k);
        }
    }
    pub fn support(&self) -> impl Iterator<Item = &Key> {
        self.coeffs.keys()
    }
    pub fn sub(&self, o: &HallSeries) -> HallSeries {
        let mut out = self.clone();
        for (k, v) in &o.coeffs {
            out.add_to(k, -v);
        }
        out
    }
}

/// `c^E_{M,N} = #{M' ⊆ E : M' ≅ N, E/M' ≅ M}` by direct enumeration with isomorphism tests.
pub fn hall_number(m: &Rep, n: &Rep, e: &Rep) -> Result<u64> {
    if e.dim_vector().iter().zip(m.dim_vector()).zip(n.dim_vector()).any(|((a, b), c)| *a != b + c) {
        return Ok(0);
    }
    let mut count = 0;
    for u in e.submodules(SUBMODULE_CAP)? {
        if u.rows() != n.dim() {
            continue;
        }
        if iso(&e.sub(&u).0, n)? && iso(&e.quotient(&u).0, m)? {
            count += 1;
        }
    }
    Ok(count)
}

pub struct Hall<'a> {
    t: &'a TauTilting,
    level: usize,
    by_len: Vec<Vec<Key>>,
    /// `E ↦ {(key(E/U), key(U)) ↦ count}` over all submodules `U ⊆ E`.
    table: BTreeMap<Key, BTreeMap<(Key, Key), u64>>,
    submodule_counts: BTreeMap<Key, u64>,
}

impl<'a> Hall<'a> {
    pub fn new(t: &'a TauTilting, level: usize) -> Result<Hall<'a>> {
        let cat = t.catalog();
        let by_len: Vec<Vec<Key>> = (0..=level).map(|l| cat.keys_of_length(l)).collect();
        let mut table = BTreeMap::new();
        let mut submodule_counts = BTreeMap::new();
        for keys in &by_len {
            for k in keys {
                let e = cat.module(k);
                let subs = e.submodules(SUBMODULE_CAP)?;
                submodule_counts.insert(k.clone(), subs.len() as u64);
                let mut row: BTreeMap<(Key, Key), u64> = BTreeMap::new();
                for u in subs {
                    let ku = cat.key(&e.sub(&u).0)?;
                    let kq = cat.key(&e.quotient(&u).0)?;
                    *row.entry((kq, ku)).or_insert(0) += 1;
                }
                table.insert(k.clone(), row);
            }
        }
        Ok(Hall { t, level, by_len, table, submodule_counts })
    }

    /// Default truncation: the largest length of an indecomposable.
    pub fn default_level(t: &TauTilting) -> usize {
        t.catalog().max_length()
    }

    pub fn level(&self) -> usize {
        self.level
    }
    pub fn catalog(&self) -> &Catalog {
        self.t.catalog()
    }
    pub fn keys(&self) -> impl Iterator<Item = &Key> {
        self.by_len.iter().flatten()
    }
    pub fn keys_of_length(&self, l: usize) -> &[Key] {
        &self.by_len[l]
    }

    /// Tabulated `c^E_{M,N}`.
    pub fn number(&self, m: &Key, n: &Key, e: &Key) -> u64 {
        self.table.get(e).and_then(|r| r.get(&(m.clone(), n.clone()))).copied().unwrap_or(0)
    }

    pub fn unit(&self) -> HallSeries {
        self.basis(&self.catalog().zero_key())
    }
    pub fn basis(&self, k: &Key) -> HallSeries {
        let mut s = HallSeries::default();
        s.add_to(k, 1);
        s
    }

    pub fn mul(&self, f: &HallSeries, g: &HallSeries) -> HallSeries {
        let mut out = HallSeries::default();
        for (e, row) in &self.table {
            let mut c = 0i64;
            for ((m, n), &cnt) in row {
                c += f.get(m) * g.get(n) * cnt as i64;
            }
            out.add_to(e, c);
        }
        out
    }

    pub fn product(&self, factors: &[HallSeries]) -> HallSeries {
        factors.iter().fold(self.unit(), |acc, x| self.mul(&acc, x))
    }

    /// `E_C` for the additive closure of a set of indecomposables.
    pub fn e_of_set(&self, s: IndSet) -> HallSeries {
        self.e_of(|k| k.iter().enumerate().all(|(i, &c)| c == 0 || bits::has(s, i)))
    }

    pub fn e_of(&self, pred: impl Fn(&Key) -> bool) -> HallSeries {
        let mut out = HallSeries::default();
        for k in self.keys() {
            if pred(k) {
                out.add_to(k, 1);
            }
        }
        out
    }

    /// Two-sided inverse by the length recursion; both sides are computed and compared.
    pub fn invert(&self, e: &HallSeries) -> Result<HallSeries> {
        let zero = self.catalog().zero_key();
        if e.get(&zero) != 1 {
            return Err(Error::Input("series without constant term 1 is not invertible".into()));
        }
        let right = self.invert_side(e, true);
        let left = self.invert_side(e, false);
        if left != right {
            return Err(Error::Check("left and right inverses differ".into()));
        }
        Ok(right)
    }

    fn invert_side(&self, e: &HallSeries, right: bool) -> HallSeries {
        let mut g = self.unit();
        for l in 1..=self.level {
            let p = if right { self.mul(e, &g) } else { self.mul(&g, e) };
            let mut fl = HallSeries::default();
            for k in &self.by_len[l] {
                fl.add_to(k, -p.get(k));
            }
            for (k, v) in fl.coeffs {
                g.add_to(&k, v);
            }
        }
        g
    }

    /// `ϕ(Z_{[U,T]}) = E_{U^⊥ ∩ T}`.
    pub fn phi(&self, u: IndSet, t: IndSet) -> HallSeries {
        self.e_of_set(tors::heart(self.t, u, t))
    }

    /// Keys where `E_{T_m ∩ T_{m-1}^⊥} ⋯ E_{T_1 ∩ T_0^⊥}` differs from `E_{mod}`.
    pub fn factorization_diff(&self, chain: &[IndSet]) -> HallSeries {
        let factors: Vec<HallSeries> = chain.windows(2).rev().map(|w| self.phi(w[0], w[1])).collect();
        self.product(&factors).sub(&self.e_of_set(self.t.all()))
    }
}

#[derive(Clone, Debug, Default)]
pub struct HallReport {
    pub unit: bool,
    pub associative: bool,
    pub conservation: bool,
    pub inverses: bool,
    pub non_invertible_rejected: bool,
    pub factorizations: usize,
    pub factorization_failures: usize,
    pub phi_relations: bool,
    pub heart_controlled: bool,
}

impl HallReport {
    pub fn ok(&self) -> bool {
        self.unit
            && self.associative
            && self.conservation
            && self.inverses
            && self.non_invertible_rejected
            && self.factorization_failures == 0
            && self.phi_relations
            && self.heart_controlled
    }
}

impl Hall<'_> {
    pub fn check_unit(&self) -> bool {
        let u = self.unit();
        self.keys().all(|k| {
            let b = self.basis(k);
            self.mul(&u, &b) == b && self.mul(&b, &u) == b
        })
    }

    pub fn check_associative(&self) -> bool {
        let keys: Vec<&Key> = self.keys().collect();
        let cat = self.catalog();
        for a in &keys {
            for b in &keys {
                let lab = cat.key_length(a) + cat.key_length(b);
                if lab > self.level {
                    continue;
                }
                let ab = self.mul(&self.basis(a), &self.basis(b));
                for c in &keys {
                    if lab + cat.key_length(c) > self.level {
                        continue;
                    }
                    let bc = self.mul(&self.basis(b), &self.basis(c));
                    if self.mul(&ab, &self.basis(c)) != self.mul(&self.basis(a), &bc) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every submodule is counted once: `Σ_{M,N} c^E_{M,N} = #Sub(E)`.
    pub fn check_conservation(&self) -> bool {
        self.table.iter().all(|(e, row)| row.values().sum::<u64>() == self.submodule_counts[e])
    }

    /// Inverses of `E_C` for every torsion class and every heart, and rejection of a series
    /// without constant term.
    pub fn check_inverses(&self, lat: &Lattice) -> Result<(bool, bool)> {
        let mut ok = true;
        let mut seen = std::collections::BTreeSet::new();
        for &a in lat.classes() {
            seen.insert(a);
            for &b in lat.classes() {
                if bits::subset(a, b) {
                    seen.insert(tors::heart(self.t, a, b));
                }
            }
        }
        for &c in &seen {
            let e = self.e_of_set(c);
            let f = self.invert(&e)?;
            ok &= self.mul(&e, &f) == self.unit() && self.mul(&f, &e) == self.unit();
        }
        let zero = self.catalog().zero_key();
        let nonunit = self.e_of(|k| *k != zero);
        Ok((ok, self.invert(&nonunit).is_err()))
    }

    pub fn check_phi_relations(&self, lat: &Lattice) -> bool {
        let cls = lat.classes();
        for &t in cls {
            if self.phi(t, t) != self.unit() {
                return false;
            }
        }
        for &v in cls {
            for &u in cls {
                if !bits::subset(v, u) {
                    continue;
                }
                for &t in cls {
                    if bits::subset(u, t) && self.mul(&self.phi(u, t), &self.phi(v, u)) != self.phi(v, t) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Equal `ϕ`-images exactly when hearts are equal, over all pairs of intervals.
    pub fn heart_controlled(&self, lat: &Lattice) -> bool {
        let cls = lat.classes();
        let ivs: Vec<(IndSet, IndSet)> =
            cls.iter().flat_map(|&u| cls.iter().filter(move |&&t| bits::subset(u, t)).map(move |&t| (u, t))).collect();
        let hearts: Vec<IndSet> = ivs.iter().map(|&(u, t)| tors::heart(self.t, u, t)).collect();
        let phis: Vec<HallSeries> = ivs.iter().map(|&(u, t)| self.phi(u, t)).collect();
        (0..ivs.len()).all(|i| (0..i).all(|j| (phis[i] == phis[j]) == (hearts[i] == hearts[j])))
    }

    pub fn report(&self, lat: &Lattice) -> Result<HallReport> {
        let (inverses, non_invertible_rejected) = self.check_inverses(lat)?;
        let chains = lat.maximal_chains();
        let failures = chains
            .iter()
            .filter(|c| {
                let cl: Vec<IndSet> = c.iter().map(|&i| lat.class(i)).collect();
                !self.factorization_diff(&cl).coeffs.is_empty()
            })
            .count();
        Ok(HallReport {
            unit: self.check_unit(),
            associative: self.check_associative(),
            conservation: self.check_conservation(),
            inverses,
            non_invertible_rejected,
            factorizations: chains.len(),
            factorization_failures: failures,
            phi_relations: self.check_phi_relations(lat),
            heart_controlled: self.heart_controlled(lat),
        })
    }
}
