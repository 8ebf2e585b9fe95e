//! Torsion classes, the labelled Hasse quiver, semibricks, wide subcategories and the
//! hearts of intervals.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::algebra::endomorphism_algebra;
use crate::bits::{self, IndSet};
use crate::error::{Error, Result};
use crate::gf::Mat;
use crate::rep::{decompose, is_brick, Rep, SUBMODULE_CAP};
use crate::tau::{support, Pair, TauTilting};

/// Largest catalogue for which the brute-force torsion class oracle runs.
pub const ORACLE_IND_CAP: usize = 22;

/// `T(S) = ⊥(S^⊥)`, the smallest torsion class containing `S`.
pub fn torsion_closure(t: &TauTilting, s: IndSet) -> IndSet {
    t.left_perp(t.perp(s))
}

/// Smallest torsion-free class containing `S`: `(⊥S)^⊥`.
pub fn torsionfree_closure(t: &TauTilting, s: IndSet) -> IndSet {
    t.perp(t.left_perp(s))
}

/// Quotient supports of every indecomposable, from an explicit submodule sweep.
pub struct ClosureData {
    pub quot: Vec<IndSet>,
}

impl ClosureData {
    pub fn new(t: &TauTilting) -> Result<ClosureData> {
        let cat = t.catalog();
        let mut quot = Vec::with_capacity(cat.len());
        for i in 0..cat.len() {
            let x = cat.ind(i);
            let mut s = 0;
            for u in x.submodules(SUBMODULE_CAP)? {
                if u.rows() < x.dim() {
                    s |= support(cat, &x.quotient(&u).0)?;
                }
            }
            quot.push(s);
        }
        Ok(ClosureData { quot })
    }

    /// Closed under quotients and under middle terms of extensions between members.
    pub fn is_closed(&self, t: &TauTilting, s: IndSet) -> bool {
        let ms = bits::members(s);
        ms.iter().all(|&i| bits::subset(self.quot[i], s))
            && ms.iter().all(|&i| ms.iter().all(|&j| bits::subset(t.ext_middle(i, j), s)))
    }

    /// Least fixed point of quotient and extension closure above `s`.
    pub fn closure(&self, t: &TauTilting, mut s: IndSet) -> IndSet {
        loop {
            let ms = bits::members(s);
            let mut next = s;
            for &i in &ms {
                next |= self.quot[i];
                for &j in &ms {
                    next |= t.ext_middle(i, j);
                }
            }
            if next == s {
                return s;
            }
            s = next;
        }
    }

    /// Every closed subset of the catalogue, by exhaustive enumeration.
    pub fn oracle_classes(&self, t: &TauTilting) -> Result<Vec<IndSet>> {
        let k = t.len();
        if k > ORACLE_IND_CAP {
            return Err(Error::Cap(format!("{k} indecomposables exceed the oracle cap {ORACLE_IND_CAP}")));
        }
        let mut out: Vec<IndSet> = (0..1u64 << k).filter(|&s| self.is_closed(t, s)).collect();
        out.sort_by_key(|&s| (bits::count(s), s));
        Ok(out)
    }
}

/// A cover `lower ⋖ upper` with its brick label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub lower: usize,
    pub upper: usize,
    pub label: usize,
}

/// Torsion classes (the `Fac M` of the support τ-tilting pairs, in the same order) and
/// the labelled Hasse quiver.
pub struct Lattice {
    classes: Vec<IndSet>,
    covers: Vec<Cover>,
}

/// `U^⊥ ∩ T`.
pub fn heart(t: &TauTilting, u: IndSet, tt: IndSet) -> IndSet {
    t.perp(u) & tt
}

impl Lattice {
    pub fn new(t: &TauTilting) -> Result<Lattice> {
        let classes: Vec<IndSet> = (0..t.stt_len()).map(|s| t.stt_fac(s)).collect();
        let k = classes.len();
        let below = |a: usize, b: usize| a != b && bits::subset(classes[a], classes[b]);
        let mut covers = Vec::new();
        for a in 0..k {
            for b in 0..k {
                if below(a, b) && !(0..k).any(|c| below(a, c) && below(c, b)) {
                    let h = heart(t, classes[a], classes[b]);
                    let label = bits::members(h)
                        .into_iter()
                        .min_by_key(|&i| (t.catalog().ind(i).dim(), i))
                        .ok_or_else(|| Error::Check("empty heart at a cover".into()))?;
                    if !is_brick(t.catalog().ind(label))? || filt(t, bits::set_of([label])) != h {
                        return Err(Error::Check("heart of a cover is not filtered by one brick".into()));
                    }
                    covers.push(Cover { lower: a, upper: b, label });
                }
            }
        }
        Ok(Lattice { classes, covers })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
    pub fn classes(&self) -> &[IndSet] {
        &self.classes
    }
    pub fn class(&self, i: usize) -> IndSet {
        self.classes[i]
    }
    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }
    pub fn index_of(&self, s: IndSet) -> Option<usize> {
        self.classes.iter().position(|&c| c == s)
    }
    pub fn bottom(&self) -> usize {
        0
    }
    pub fn top(&self) -> usize {
        self.classes.len() - 1
    }
    pub fn leq(&self, a: usize, b: usize) -> bool {
        bits::subset(self.classes[a], self.classes[b])
    }

    /// Labels of the arrows leaving `i` downwards (covers with upper end `i`).
    pub fn down_labels(&self, i: usize) -> IndSet {
        bits::set_of(self.covers.iter().filter(|c| c.upper == i).map(|c| c.label))
    }
    /// Labels of the covers with lower end `i`.
    pub fn up_labels(&self, i: usize) -> IndSet {
        bits::set_of(self.covers.iter().filter(|c| c.lower == i).map(|c| c.label))
    }

    pub fn join(&self, t: &TauTilting, a: usize, b: usize) -> Option<usize> {
        self.index_of(torsion_closure(t, self.classes[a] | self.classes[b]))
    }
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.index_of(self.classes[a] & self.classes[b])
    }

    /// Joins and meets exist everywhere, are least/greatest bounds, and absorb.
    pub fn check_lattice(&self, t: &TauTilting) -> bool {
        let k = self.len();
        for a in 0..k {
            for b in 0..k {
                let (Some(j), Some(m)) = (self.join(t, a, b), self.meet(a, b)) else { return false };
                let lub = (0..k).filter(|&c| self.leq(a, c) && self.leq(b, c)).all(|c| self.leq(j, c));
                let glb = (0..k).filter(|&c| self.leq(c, a) && self.leq(c, b)).all(|c| self.leq(c, m));
                if !lub || !glb || !self.leq(a, j) || !self.leq(m, a) {
                    return false;
                }
                if self.meet(a, j) != Some(a) || self.join(t, a, m) != Some(a) {
                    return false;
                }
            }
        }
        true
    }

    /// Maximal chains from the bottom to the top, as class indices.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = vec![self.bottom()];
        fn rec(l: &Lattice, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let last = *cur.last().unwrap();
            if last == l.top() {
                out.push(cur.clone());
                return;
            }
            for c in l.covers.iter().filter(|c| c.lower == last) {
                cur.push(c.upper);
                rec(l, cur, out);
                cur.pop();
            }
        }
        if !self.is_empty() {
            rec(self, &mut cur, &mut out);
        }
        out
    }

    pub fn cover(&self, lower: usize, upper: usize) -> Option<&Cover> {
        self.covers.iter().find(|c| c.lower == lower && c.upper == upper)
    }

    /// Hasse quiver in DOT, arrows pointing from the larger class down.
    pub fn to_dot(&self, t: &TauTilting) -> String {
        let cat = t.catalog();
        let mut s = String::from("digraph tors {\n  rankdir=TB;\n");
        for (i, &c) in self.classes.iter().enumerate() {
            let _ = writeln!(s, "  t{i} [label=\"{}\"];", cat.set_name(&bits::members(c)));
        }
        for c in &self.covers {
            let _ = writeln!(s, "  t{} -> t{} [label=\"{}\"];", c.upper, c.lower, cat.name(c.label));
        }
        s.push_str("}\n");
        s
    }
}

/// `Filt(S)` for a semibrick `S`: objects with a filtration whose factors lie in `S`.
pub fn filt(t: &TauTilting, s: IndSet) -> IndSet {
    let cat = t.catalog();
    let mut order: Vec<usize> = (0..t.len()).collect();
    order.sort_by_key(|&i| (cat.ind(i).dim(), i));
    let mut out = s;
    for j in order {
        if bits::has(out, j) {
            continue;
        }
        let hit = bits::members(s).into_iter().any(|i| t.mono_cokernel(i, j).is_some_and(|c| bits::subset(c, out)));
        if hit {
            out |= 1 << j;
        }
    }
    out
}

pub fn is_semibrick(t: &TauTilting, s: IndSet) -> Result<bool> {
    let ms = bits::members(s);
    for &i in &ms {
        if !is_brick(t.catalog().ind(i))? {
            return Ok(false);
        }
    }
    Ok(ms.iter().all(|&i| ms.iter().all(|&j| i == j || t.catalog().homdim(i, j) == 0)))
}

pub fn wide_from_semibrick(t: &TauTilting, s: IndSet) -> Result<IndSet> {
    if !is_semibrick(t, s)? {
        return Err(Error::Input("not a semibrick".into()));
    }
    Ok(filt(t, s))
}

pub fn simples_of_wide(t: &TauTilting, w: IndSet) -> IndSet {
    t.relative_simples(w)
}

/// Radical endomorphisms of a basic module, as matrices.
fn radical_endomorphisms(m: &Rep) -> Result<Vec<Mat>> {
    let e = endomorphism_algebra(m, false)?;
    let rad = e.alg.radical();
    Ok((0..rad.rows()).map(|r| e.matrix(rad.row(r))).collect())
}

/// `ind(M / rad_{End M} M)` for the basic module on `m`.
pub fn left_finite_semibrick(t: &TauTilting, m: &[usize]) -> Result<IndSet> {
    if m.is_empty() {
        return Ok(0);
    }
    let cat = t.catalog();
    let x = cat.basic(m);
    let f = x.field().clone();
    let img = radical_endomorphisms(&x)?.iter().fold(Mat::zeros(&f, 0, x.dim()), |acc, h| acc.vstack(h)).row_basis();
    let q = x.quotient(&img).0;
    let mut out = 0;
    for y in decompose(&q)? {
        out |= 1 << cat.index_of(&y)?;
    }
    Ok(out)
}

/// `ind(soc_{End N} N)` for the basic module on `n`.
pub fn right_finite_semibrick(t: &TauTilting, n: &[usize]) -> Result<IndSet> {
    if n.is_empty() {
        return Ok(0);
    }
    let cat = t.catalog();
    let x = cat.basic(n);
    let f = x.field().clone();
    let big = radical_endomorphisms(&x)?.iter().fold(Mat::zeros(&f, x.dim(), 0), |acc, h| acc.hstack(h));
    let soc = if big.cols() == 0 { Mat::identity(&f, x.dim()) } else { big.left_kernel() };
    let s = x.sub(&soc).0;
    let mut out = 0;
    for y in decompose(&s)? {
        out |= 1 << cat.index_of(&y)?;
    }
    Ok(out)
}

/// All catalogued bricks.
pub fn bricks(t: &TauTilting) -> Result<IndSet> {
    let mut out = 0;
    for i in 0..t.len() {
        if is_brick(t.catalog().ind(i))? {
            out |= 1 << i;
        }
    }
    Ok(out)
}

/// Union of the left-finite semibricks over all support τ-tilting pairs.
pub fn f_bricks(t: &TauTilting) -> Result<IndSet> {
    let mut out = 0;
    for s in 0..t.stt_len() {
        out |= left_finite_semibrick(t, &t.stt_pair(s).m)?;
    }
    Ok(out)
}

/// At every class, the down labels are the left-finite semibrick of its pair and the
/// up labels are the right-finite semibrick of the image under `H`.
pub fn check_semibrick_labels(t: &TauTilting, lat: &Lattice) -> Result<bool> {
    for s in 0..lat.len() {
        let p = t.stt_pair(s);
        if lat.down_labels(s) != left_finite_semibrick(t, &p.m)? {
            return Ok(false);
        }
        if lat.up_labels(s) != right_finite_semibrick(t, &t.h_map(p).n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Down labels at the top of the interval of a pair and up labels at its bottom.
pub fn interval_semibricks(t: &TauTilting, lat: &Lattice, p: &Pair) -> Result<(IndSet, IndSet)> {
    let top = lat.index_of(t.t_class(p)).ok_or_else(|| Error::Check("top of interval is not a class".into()))?;
    let bot = lat.index_of(t.u_class(p)).ok_or_else(|| Error::Check("bottom of interval is not a class".into()))?;
    Ok((lat.down_labels(top), lat.up_labels(bot)))
}

/// For every τ-rigid pair: the heart of its interval is `W`, it is filtered by the
/// common labels at the two ends, and those labels come from the two completions.
pub fn check_perp_hearts(t: &TauTilting, lat: &Lattice) -> Result<bool> {
    for p in t.pairs() {
        let w = t.tau_perp(p);
        if heart(t, t.u_class(p), t.t_class(p)) != w {
            return Ok(false);
        }
        let (bl, br) = interval_semibricks(t, lat, p)?;
        if filt(t, bl & br) != w || simples_of_wide(t, w) != bl & br {
            return Ok(false);
        }
        if bl != left_finite_semibrick(t, &t.bongartz(p)?.m)? {
            return Ok(false);
        }
        if br != right_finite_semibrick(t, &t.h_map(&t.cobongartz(p)?).n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The interval of a pair maps onto the lattice of its reduction with cover labels
/// carried along.
pub fn check_interval_labels(t: &TauTilting, lat: &Lattice, p: &Pair) -> Result<bool> {
    let red = t.jasso_reduce(p)?;
    let (u, top) = (t.u_class(p), t.t_class(p));
    let Some(g) = &red.gamma else {
        return Ok(u == top);
    };
    let glat = Lattice::new(g)?;
    for c in lat.covers() {
        let (a, b) = (lat.class(c.lower), lat.class(c.upper));
        if !(bits::subset(u, a) && bits::subset(b, top)) {
            continue;
        }
        let (ga, gb) = (red.transport(a & red.wide), red.transport(b & red.wide));
        let (Some(ia), Some(ib)) = (glat.index_of(ga), glat.index_of(gb)) else { return Ok(false) };
        let Some(gc) = glat.cover(ia, ib) else { return Ok(false) };
        if !red.to_gamma.get(&c.label).is_some_and(|&l| l == gc.label) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Classes of the lattice agree with the oracle, with the fixed-point closure, and are
/// recovered from their Ext-projectives.
pub fn check_against_oracle(t: &TauTilting, lat: &Lattice, data: &ClosureData) -> Result<bool> {
    let oracle = data.oracle_classes(t)?;
    if oracle != lat.classes() {
        return Ok(false);
    }
    for &c in lat.classes() {
        if data.closure(t, c) != c || torsion_closure(t, c) != c {
            return Ok(false);
        }
    }
    // closures of single indecomposables by both routes
    for i in 0..t.len() {
        if data.closure(t, 1 << i) != torsion_closure(t, 1 << i) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `T ↦ T^⊥` is an order-reversing bijection onto the torsion-free classes.
pub fn check_torf_duality(t: &TauTilting, lat: &Lattice) -> bool {
    let torf: Vec<IndSet> = lat.classes().iter().map(|&c| t.perp(c)).collect();
    if torf.iter().collect::<BTreeSet<_>>().len() != torf.len() {
        return false;
    }
    let back = lat.classes().iter().zip(&torf).all(|(&c, &f)| t.left_perp(f) == c && torsionfree_closure(t, f) == f);
    let rev = (0..lat.len()).all(|a| (0..lat.len()).all(|b| lat.leq(a, b) == bits::subset(torf[b], torf[a])));
    back && rev
}
