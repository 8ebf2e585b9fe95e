//! τ-rigid and support τ-tilting pairs over a catalogue of indecomposables: completions,
//! the H-map, the g-vector fan, τ-perpendicular reduction and τ-exceptional sequences.
//!
//! Everything here is indexed by catalogue positions. Module computations happen once,
//! in [`TauTilting::new`]; afterwards most questions are bitset arithmetic.

use std::collections::{BTreeMap, BTreeSet};

use num::{Signed, Zero};

use crate::algebra::{endomorphism_algebra, permutations, AlgRef};
use crate::bits::{self, IndSet};
use crate::error::{Error, Result};
use crate::gf::{count_vectors, lin_comb, nth_vector, Mat};
use crate::rat::{self, Q};
use crate::rep::catalog::EnumOptions;
use crate::rep::{hom, trace, Catalog, Rep, HOM_SCAN_CAP};

/// Cap on the number of extension classes whose middle terms are inspected per pair.
pub const EXT_CLASS_CAP: u64 = 1 << 12;

/// A basic pair `(⊕_{i∈m} X_i, ⊕_{v∈p} P_v)` by catalogue indices and vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub m: Vec<usize>,
    pub p: Vec<usize>,
}

impl Pair {
    pub fn new(mut m: Vec<usize>, mut p: Vec<usize>) -> Pair {
        m.sort_unstable();
        m.dedup();
        p.sort_unstable();
        p.dedup();
        Pair { m, p }
    }

    pub fn size(&self) -> usize {
        self.m.len() + self.p.len()
    }

    /// Whether `self` is a direct summand of `o`.
    pub fn is_sub_of(&self, o: &Pair) -> bool {
        self.m.iter().all(|x| o.m.contains(x)) && self.p.iter().all(|x| o.p.contains(x))
    }

    pub fn union(&self, o: &Pair) -> Pair {
        Pair::new([self.m.clone(), o.m.clone()].concat(), [self.p.clone(), o.p.clone()].concat())
    }

    pub fn m_set(&self) -> IndSet {
        bits::set_of(self.m.iter().copied())
    }
}

/// A basic τ⁻¹-rigid pair `(⊕_{i∈n} X_i, ⊕_{v∈q} I_v)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvPair {
    pub n: Vec<usize>,
    pub q: Vec<usize>,
}

/// An entry of a signed τ-exceptional sequence: a module or a shifted (relative)
/// projective, both by catalogue index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Item {
    Module(usize),
    Shifted(usize),
}

/// Outcome of the g-vector fan checks.
#[derive(Clone, Debug, Default)]
pub struct FanReport {
    pub maximal_cones: usize,
    /// Generators of every maximal cone are linearly independent.
    pub simplicial: bool,
    /// Distinct τ-rigid indecomposables and shifted projectives have distinct g-vectors.
    pub distinct_rays: bool,
    /// Every facet lies in exactly two maximal cones, on opposite sides.
    pub facets_two_sided: bool,
    /// Every τ-rigid pair is a face of each of its completions found by search.
    pub faces: bool,
    /// Number of maximal cones containing a generic point.
    pub generic_point_cones: usize,
}

impl FanReport {
    pub fn ok(&self) -> bool {
        self.simplicial && self.distinct_rays && self.facets_two_sided && self.faces && self.generic_point_cones == 1
    }
}

/// Exhaustive search of a Hom space for a nonzero element with a property.
pub fn scan_hom(basis: &[Mat], mut pred: impl FnMut(&Mat) -> bool) -> Result<Option<Mat>> {
    if basis.is_empty() {
        return Ok(None);
    }
    let f = basis[0].field().clone();
    let (r, c) = (basis[0].rows(), basis[0].cols());
    let total = count_vectors(&f, basis.len())
        .filter(|&t| t <= HOM_SCAN_CAP)
        .ok_or_else(|| Error::Cap(format!("Hom space of dimension {} too large to scan", basis.len())))?;
    for idx in 1..total {
        let h = lin_comb(&f, &nth_vector(&f, basis.len(), idx), basis, r, c);
        if pred(&h) {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// Catalogue indices of the summands of `M` (with multiplicity dropped).
pub fn support(cat: &Catalog, m: &Rep) -> Result<IndSet> {
    Ok(bits::set_of(cat.key_support(&cat.key(m)?)))
}

pub struct TauTilting {
    cat: Catalog,
    n: usize,
    dimv: Vec<Vec<usize>>,
    /// `tau_hom[i][j] = dim Hom(X_i, τX_j)`.
    tau_hom: Vec<Vec<usize>>,
    rigid: Vec<bool>,
    /// `traces[i][j]`: trace of `X_i` in `X_j`, as a row basis.
    traces: Vec<Vec<Mat>>,
    /// `homs[j][i]`: all of `Hom(X_j, X_i)` side by side, `dim X_j` rows.
    homs: Vec<Vec<Mat>>,
    ext: Vec<Vec<usize>>,
    /// Union of the summands of middle terms of all nonsplit extensions `0 → X_j → E → X_i → 0`.
    ext_mid: Vec<Vec<IndSet>>,
    /// Support of the cokernel of a proper monomorphism `X_i → X_j`, when one exists.
    mono_coker: Vec<Vec<Option<IndSet>>>,
    gvec: Vec<Vec<i64>>,
    pairs: Vec<Pair>,
    fac: Vec<IndSet>,
    /// Indices into `pairs` of the support τ-tilting pairs, ordered by torsion class.
    stt: Vec<usize>,
}

impl TauTilting {
    /// Enumerate the indecomposables of `alg` and build the theory on top.
    pub fn of_algebra(alg: &AlgRef) -> Result<TauTilting> {
        TauTilting::new(Catalog::build(alg, EnumOptions::default())?)
    }

    pub fn new(cat: Catalog) -> Result<TauTilting> {
        let k = cat.len();
        if k > bits::MAX_IND {
            return Err(Error::Cap(format!("{k} indecomposables exceed the bitset width {}", bits::MAX_IND)));
        }
        let n = cat.cat().num_vertices();
        let inds = cat.inds().to_vec();
        let dimv: Vec<Vec<usize>> = inds.iter().map(|x| x.dim_vector()).collect();
        let tau_hom: Vec<Vec<usize>> = (0..k)
            .map(|i| (0..k).map(|j| cat.tau_index(j).map_or(0, |t| cat.homdim(i, t))).collect())
            .collect();
        let rigid = (0..k).map(|i| tau_hom[i][i] == 0).collect();
        let traces = (0..k).map(|i| (0..k).map(|j| trace(&inds[i], &inds[j])).collect()).collect();
        let f = cat.alg().field().clone();
        let homs = (0..k)
            .map(|j| {
                (0..k)
                    .map(|i| hom(&inds[j], &inds[i]).iter().fold(Mat::zeros(&f, inds[j].dim(), 0), |acc, h| acc.hstack(h)))
                    .collect()
            })
            .collect();
        let mut ext = vec![vec![0; k]; k];
        let mut ext_mid = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                let e = cat.cat().ext1(&inds[i], &inds[j]);
                ext[i][j] = e.dim();
                if e.dim() == 0 {
                    continue;
                }
                let total = count_vectors(&f, e.dim())
                    .filter(|&t| t <= EXT_CLASS_CAP)
                    .ok_or_else(|| Error::Cap("too many extension classes".into()))?;
                for idx in 1..total {
                    let (mid, _, _) = e.middle_term(&nth_vector(&f, e.dim(), idx));
                    ext_mid[i][j] |= support(&cat, &mid)?;
                }
            }
        }
        let mut mono_coker = vec![vec![None; k]; k];
        for i in 0..k {
            for j in 0..k {
                let (a, b) = (&inds[i], &inds[j]);
                if a.dim() >= b.dim() || dimv[i].iter().zip(&dimv[j]).any(|(x, y)| x > y) || cat.homdim(i, j) == 0 {
                    continue;
                }
                if let Some(phi) = scan_hom(&hom(a, b), |h| h.rank() == a.dim())? {
                    let (c, _, _) = b.quotient(&phi);
                    mono_coker[i][j] = Some(support(&cat, &c)?);
                }
            }
        }
        let gvec = inds.iter().map(|x| cat.cat().g_vector(x)).collect();
        let mut t = TauTilting {
            cat,
            n,
            dimv,
            tau_hom,
            rigid,
            traces,
            homs,
            ext,
            ext_mid,
            mono_coker,
            gvec,
            pairs: Vec::new(),
            fac: Vec::new(),
            stt: Vec::new(),
        };
        t.enumerate_pairs()?;
        Ok(t)
    }

    fn compatible(&self, a: Item, b: Item) -> bool {
        match (a, b) {
            (Item::Module(i), Item::Module(j)) => self.tau_hom[i][j] == 0 && self.tau_hom[j][i] == 0,
            (Item::Module(i), Item::Shifted(v)) | (Item::Shifted(v), Item::Module(i)) => self.dimv[i][v] == 0,
            (Item::Shifted(_), Item::Shifted(_)) => true,
        }
    }

    /// Clique search on the compatibility graph of τ-rigid indecomposables and shifted
    /// projectives (here `Item::Shifted(v)` carries a vertex).
    fn enumerate_pairs(&mut self) -> Result<()> {
        let mut items: Vec<Item> = (0..self.cat.len()).filter(|&i| self.rigid[i]).map(Item::Module).collect();
        items.extend((0..self.n).map(Item::Shifted));
        let mut out = Vec::new();
        let mut cur: Vec<Item> = Vec::new();
        fn rec(t: &TauTilting, items: &[Item], start: usize, cur: &mut Vec<Item>, out: &mut Vec<Pair>) {
            let m = cur.iter().filter_map(|x| if let Item::Module(i) = x { Some(*i) } else { None }).collect();
            let p = cur.iter().filter_map(|x| if let Item::Shifted(v) = x { Some(*v) } else { None }).collect();
            out.push(Pair::new(m, p));
            for s in start..items.len() {
                if cur.iter().all(|&c| t.compatible(c, items[s])) {
                    cur.push(items[s]);
                    rec(t, items, s + 1, cur, out);
                    cur.pop();
                }
            }
        }
        rec(self, &items, 0, &mut cur, &mut out);
        if out.iter().any(|p| p.size() > self.n) {
            return Err(Error::Check("τ-rigid pair with more summands than simples".into()));
        }
        out.sort_by(|a, b| (a.size(), a).cmp(&(b.size(), b)));
        self.fac = out.iter().map(|p| self.fac_of(p.m_set())).collect();
        self.pairs = out;
        let mut stt: Vec<usize> = (0..self.pairs.len()).filter(|&i| self.pairs[i].size() == self.n).collect();
        stt.sort_by_key(|&i| (bits::count(self.fac[i]), self.fac[i]));
        let distinct: BTreeSet<IndSet> = stt.iter().map(|&i| self.fac[i]).collect();
        if distinct.len() != stt.len() {
            return Err(Error::Check("two support τ-tilting pairs share a torsion class".into()));
        }
        self.stt = stt;
        Ok(())
    }

    pub fn catalog(&self) -> &Catalog {
        &self.cat
    }
    pub fn alg(&self) -> &AlgRef {
        self.cat.alg()
    }
    /// Number of simples.
    pub fn rank(&self) -> usize {
        self.n
    }
    pub fn len(&self) -> usize {
        self.cat.len()
    }
    pub fn is_empty(&self) -> bool {
        self.cat.is_empty()
    }
    pub fn all(&self) -> IndSet {
        bits::full(self.cat.len())
    }
    pub fn dim_vector(&self, i: usize) -> &[usize] {
        &self.dimv[i]
    }
    pub fn g_vector(&self, i: usize) -> &[i64] {
        &self.gvec[i]
    }
    pub fn ext_dim(&self, i: usize, j: usize) -> usize {
        self.ext[i][j]
    }
    pub fn ext_middle(&self, i: usize, j: usize) -> IndSet {
        self.ext_mid[i][j]
    }
    /// Cokernel support of a proper monomorphism `X_i → X_j`, if there is one.
    pub fn mono_cokernel(&self, i: usize, j: usize) -> Option<IndSet> {
        self.mono_coker[i][j]
    }
    pub fn is_rigid_ind(&self, i: usize) -> bool {
        self.rigid[i]
    }

    /// All basic τ-rigid pairs, by size.
    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }
    /// Support τ-tilting pairs ordered by torsion class size.
    pub fn stt(&self) -> Vec<&Pair> {
        self.stt.iter().map(|&i| &self.pairs[i]).collect()
    }
    pub fn stt_len(&self) -> usize {
        self.stt.len()
    }
    pub fn stt_pair(&self, s: usize) -> &Pair {
        &self.pairs[self.stt[s]]
    }
    /// `Fac M` of the `s`-th support τ-tilting pair.
    pub fn stt_fac(&self, s: usize) -> IndSet {
        self.fac[self.stt[s]]
    }
    pub fn stt_index(&self, p: &Pair) -> Option<usize> {
        self.stt.iter().position(|&i| &self.pairs[i] == p)
    }
    pub fn stt_index_of_fac(&self, t: IndSet) -> Option<usize> {
        self.stt.iter().position(|&i| self.fac[i] == t)
    }

    /// `Fac(⊕_{i∈s} X_i)`.
    pub fn fac_of(&self, s: IndSet) -> IndSet {
        let ms = bits::members(s);
        let f = self.cat.alg().field();
        let mut out = 0;
        for j in 0..self.cat.len() {
            let d = self.cat.ind(j).dim();
            let rows = ms.iter().fold(Mat::zeros(f, 0, d), |acc, &i| acc.vstack(&self.traces[i][j]));
            if rows.rank() == d {
                out |= 1 << j;
            }
        }
        out
    }

    /// `Sub(⊕_{i∈s} X_i)`.
    pub fn sub_of(&self, s: IndSet) -> IndSet {
        let ms = bits::members(s);
        let f = self.cat.alg().field();
        let mut out = 0;
        for j in 0..self.cat.len() {
            let d = self.cat.ind(j).dim();
            let cols = ms.iter().fold(Mat::zeros(f, d, 0), |acc, &i| acc.hstack(&self.homs[j][i]));
            if cols.rank() == d {
                out |= 1 << j;
            }
        }
        out
    }

    /// `S^⊥ = {Y : Hom(S, Y) = 0}`.
    pub fn perp(&self, s: IndSet) -> IndSet {
        let ms = bits::members(s);
        bits::set_of((0..self.cat.len()).filter(|&j| ms.iter().all(|&i| self.cat.homdim(i, j) == 0)))
    }

    /// `⊥S = {Y : Hom(Y, S) = 0}`.
    pub fn left_perp(&self, s: IndSet) -> IndSet {
        let ms = bits::members(s);
        bits::set_of((0..self.cat.len()).filter(|&j| ms.iter().all(|&i| self.cat.homdim(j, i) == 0)))
    }

    /// Indecomposables vanishing at every vertex of `p`, i.e. `P^⊥`.
    pub fn vertex_perp(&self, p: &[usize]) -> IndSet {
        bits::set_of((0..self.cat.len()).filter(|&j| p.iter().all(|&v| self.dimv[j][v] == 0)))
    }

    /// Torsion class `Fac M` at the bottom of the interval of a pair.
    pub fn u_class(&self, p: &Pair) -> IndSet {
        self.fac_of(p.m_set())
    }

    /// Torsion class `⊥τM ∩ P^⊥` at the top of the interval of a pair.
    pub fn t_class(&self, p: &Pair) -> IndSet {
        let ok = |j: usize| p.m.iter().all(|&i| self.tau_hom[j][i] == 0);
        bits::set_of((0..self.cat.len()).filter(|&j| ok(j))) & self.vertex_perp(&p.p)
    }

    /// `W = M^⊥ ∩ ⊥τM ∩ P^⊥`.
    pub fn tau_perp(&self, p: &Pair) -> IndSet {
        self.perp(p.m_set()) & self.t_class(p)
    }

    pub fn is_tau_rigid_set(&self, m: &[usize]) -> bool {
        m.iter().all(|&i| m.iter().all(|&j| self.tau_hom[i][j] == 0))
    }

    pub fn is_tau_rigid_pair(&self, p: &Pair) -> bool {
        self.is_tau_rigid_set(&p.m) && p.m.iter().all(|&i| p.p.iter().all(|&v| self.dimv[i][v] == 0))
    }

    pub fn is_support_tau_tilting(&self, p: &Pair) -> bool {
        self.is_tau_rigid_pair(p) && p.size() == self.n
    }

    /// The largest basic Ext-projective of a torsion class, with the vertices it misses.
    pub fn ext_projective_pair(&self, t: IndSet) -> Pair {
        let ts = bits::members(t);
        let m = ts.iter().copied().filter(|&i| ts.iter().all(|&j| self.ext[i][j] == 0)).collect();
        let p = (0..self.n).filter(|&v| ts.iter().all(|&j| self.dimv[j][v] == 0)).collect();
        Pair::new(m, p)
    }

    /// Completion with torsion class `⊥τM ∩ P^⊥`.
    pub fn bongartz(&self, p: &Pair) -> Result<Pair> {
        let t = self.t_class(p);
        let s = self.stt_index_of_fac(t).ok_or_else(|| Error::Check("no completion with the Bongartz class".into()))?;
        let q = self.stt_pair(s).clone();
        if !p.is_sub_of(&q) || q.p != p.p {
            return Err(Error::Check("Bongartz completion does not contain the pair".into()));
        }
        Ok(q)
    }

    /// Completion with torsion class `Fac M`.
    pub fn cobongartz(&self, p: &Pair) -> Result<Pair> {
        let u = self.u_class(p);
        let s = self.stt_index_of_fac(u).ok_or_else(|| Error::Check("no completion with the co-Bongartz class".into()))?;
        let q = self.stt_pair(s).clone();
        if !p.is_sub_of(&q) {
            return Err(Error::Check("co-Bongartz completion does not contain the pair".into()));
        }
        Ok(q)
    }

    /// `H(M, P) = (τM ⊕ νP, νM_pr)`.
    pub fn h_map(&self, p: &Pair) -> InvPair {
        let mut n: Vec<usize> = p.m.iter().filter_map(|&i| self.cat.tau_index(i)).collect();
        n.extend(p.p.iter().map(|&v| self.cat.inj_index(v)));
        let q = p.m.iter().filter_map(|&i| self.cat.projective_vertex(i)).collect();
        let mut out = InvPair { n, q };
        out.n.sort_unstable();
        out.n.dedup();
        out.q.sort_unstable();
        out
    }

    pub fn is_tau_inv_rigid_pair(&self, p: &InvPair) -> bool {
        let tinv_hom = |i: usize, j: usize| self.cat.tau_inv_index(i).map_or(0, |t| self.cat.homdim(t, j));
        p.n.iter().all(|&i| p.n.iter().all(|&j| tinv_hom(i, j) == 0))
            && p.n.iter().all(|&j| p.q.iter().all(|&v| self.dimv[j][v] == 0))
    }

    /// `H(M, P)` is support τ⁻¹-tilting and `Sub N = (Fac M)^⊥`.
    pub fn check_h(&self, p: &Pair) -> bool {
        let h = self.h_map(p);
        self.is_tau_inv_rigid_pair(&h)
            && h.n.len() + h.q.len() == self.n
            && self.sub_of(bits::set_of(h.n.iter().copied())) == self.perp(self.u_class(p))
    }

    /// Generators of the g-vector cone of a pair.
    pub fn cone(&self, p: &Pair) -> Vec<Vec<i64>> {
        let mut g: Vec<Vec<i64>> = p.m.iter().map(|&i| self.gvec[i].clone()).collect();
        for &v in &p.p {
            let mut e = vec![0; self.n];
            e[v] = -1;
            g.push(e);
        }
        g
    }

    pub fn check_fan(&self) -> Result<FanReport> {
        let n = self.n;
        let mut rep = FanReport { maximal_cones: self.stt.len(), ..Default::default() };
        let cones: Vec<Vec<Vec<Q>>> =
            self.stt.iter().map(|&i| self.cone(&self.pairs[i]).iter().map(|g| rat::qvec(g)).collect()).collect();
        rep.simplicial = cones.iter().all(|c| rat::rank(c) == n);
        let mut rays: Vec<Vec<i64>> = (0..self.cat.len()).filter(|&i| self.rigid[i]).map(|i| self.gvec[i].clone()).collect();
        rays.extend((0..n).map(|v| {
            let mut e = vec![0; n];
            e[v] = -1;
            e
        }));
        rep.distinct_rays = rays.iter().collect::<BTreeSet<_>>().len() == rays.len();
        // facets: drop one generator of each maximal pair
        let items = |p: &Pair| -> Vec<Item> {
            p.m.iter().map(|&i| Item::Module(i)).chain(p.p.iter().map(|&v| Item::Shifted(v))).collect()
        };
        let mut facets: BTreeMap<Vec<Item>, Vec<(usize, Item)>> = BTreeMap::new();
        for (s, &i) in self.stt.iter().enumerate() {
            let it = items(&self.pairs[i]);
            for drop in 0..it.len() {
                let mut f = it.clone();
                let out = f.remove(drop);
                facets.entry(f).or_default().push((s, out));
            }
        }
        let gen_of = |x: Item| -> Vec<Q> {
            match x {
                Item::Module(i) => rat::qvec(&self.gvec[i]),
                Item::Shifted(v) => (0..n).map(|w| rat::q(if w == v { -1 } else { 0 })).collect(),
            }
        };
        let mut normals = Vec::new();
        rep.facets_two_sided = true;
        for (f, sides) in &facets {
            if sides.len() != 2 {
                rep.facets_two_sided = false;
                continue;
            }
            let rows: Vec<Vec<Q>> = f.iter().map(|&x| gen_of(x)).collect();
            let ns = rat::nullspace(&rows, n);
            if ns.len() != 1 {
                rep.facets_two_sided = false;
                continue;
            }
            let a = rat::dot(&ns[0], &gen_of(sides[0].1));
            let b = rat::dot(&ns[0], &gen_of(sides[1].1));
            if a.is_zero() || b.is_zero() || a.is_positive() == b.is_positive() {
                rep.facets_two_sided = false;
            }
            normals.push(ns[0].clone());
        }
        rep.faces = true;
        for p in &self.pairs {
            let ok = self.bongartz(p).is_ok_and(|q| p.is_sub_of(&q)) && self.cobongartz(p).is_ok_and(|q| p.is_sub_of(&q));
            rep.faces &= ok;
        }
        // a point off every facet hyperplane
        let generic = (1..200i64)
            .map(|s| (0..n).map(|i| rat::q((s * 7 + 3).pow(i as u32 + 1) % 101 - 50)).collect::<Vec<Q>>())
            .find(|v| normals.iter().all(|nm| !rat::dot(nm, v).is_zero()) && v.iter().any(|x| !x.is_zero()));
        rep.generic_point_cones = match generic {
            Some(v) => cones.iter().filter(|c| rat::in_cone(c, &v)).count(),
            None => 0,
        };
        if n == 0 {
            rep.generic_point_cones = 1;
        }
        Ok(rep)
    }

    /// Whether the Fac-inclusion covers among support τ-tilting pairs are exactly the
    /// pairs differing in one summand.
    pub fn covers_are_mutations(&self) -> bool {
        let k = self.stt.len();
        for a in 0..k {
            for b in 0..k {
                let (fa, fb) = (self.stt_fac(a), self.stt_fac(b));
                let cover = fa != fb
                    && bits::subset(fa, fb)
                    && !(0..k).any(|c| {
                        let fc = self.stt_fac(c);
                        fc != fa && fc != fb && bits::subset(fa, fc) && bits::subset(fc, fb)
                    });
                let (pa, pb) = (self.stt_pair(a), self.stt_pair(b));
                let common = pa.m.iter().filter(|x| pb.m.contains(x)).count() + pa.p.iter().filter(|x| pb.p.contains(x)).count();
                let mutation = bits::subset(fa, fb) && fa != fb && common + 1 == self.n;
                if cover != mutation {
                    return false;
                }
            }
        }
        true
    }

    /// Relative projectives of a wide subcategory: `X ∈ W` with `Ext¹(X, W) = 0`.
    pub fn relative_projectives(&self, w: IndSet) -> Vec<usize> {
        let ws = bits::members(w);
        ws.iter().copied().filter(|&i| ws.iter().all(|&j| self.ext[i][j] == 0)).collect()
    }

    /// Simple objects of a wide subcategory: members without a proper subobject in `W`.
    pub fn relative_simples(&self, w: IndSet) -> IndSet {
        let ws = bits::members(w);
        bits::set_of(ws.iter().copied().filter(|&j| !ws.iter().any(|&i| self.mono_coker[i][j].is_some_and(|c| bits::subset(c, w)))))
    }

    /// Kernels and cokernels of all maps between indecomposables of `W`, and middle terms of
    /// extensions between them, have all summands in `W`.
    pub fn check_wide(&self, w: IndSet) -> Result<bool> {
        let ws = bits::members(w);
        for &i in &ws {
            for &j in &ws {
                if !bits::subset(self.ext_mid[i][j], w) {
                    return Ok(false);
                }
                if !self.maps_stay_in(i, j, w)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn maps_stay_in(&self, i: usize, j: usize, w: IndSet) -> Result<bool> {
        let (a, b) = (self.cat.ind(i), self.cat.ind(j));
        let mut err = None;
        let found = scan_hom(&hom(a, b), |h| {
            let k = a.sub(&h.left_kernel()).0;
            let c = b.quotient(&h.row_basis()).0;
            match (support(&self.cat, &k), support(&self.cat, &c)) {
                (Ok(sk), Ok(sc)) => !bits::subset(sk | sc, w),
                (Err(e), _) | (_, Err(e)) => {
                    err = Some(e);
                    true
                }
            }
        })?;
        if let Some(e) = err {
            return Err(e);
        }
        Ok(found.is_none())
    }

    /// Reduction of the τ-perpendicular category of a pair to a module category.
    pub fn jasso_reduce(&self, p: &Pair) -> Result<Reduction> {
        if !self.is_tau_rigid_pair(p) {
            return Err(Error::Input("pair is not τ-rigid".into()));
        }
        let w = self.tau_perp(p);
        let rel = self.relative_projectives(w);
        let expect = self.n - p.size();
        if rel.len() != expect {
            return Err(Error::Check(format!("{} relative projectives, expected {expect}", rel.len())));
        }
        if w == 0 {
            return Ok(Reduction { pair: p.clone(), wide: 0, rel_proj: Vec::new(), gamma: None, to_gamma: BTreeMap::new(), from_gamma: Vec::new() });
        }
        let q = self.cat.basic(&rel);
        let end = endomorphism_algebra(&q, true)?;
        let gamma = TauTilting::of_algebra(&end.alg)?;
        let mut to_gamma = BTreeMap::new();
        for i in bits::members(w) {
            let (hx, _) = end.hom_functor(&q, self.cat.ind(i))?;
            to_gamma.insert(i, gamma.cat.index_of(&hx)?);
        }
        let mut from_gamma = vec![usize::MAX; gamma.len()];
        for (&i, &g) in &to_gamma {
            if from_gamma[g] != usize::MAX {
                return Err(Error::Check("transport is not injective".into()));
            }
            from_gamma[g] = i;
        }
        if from_gamma.contains(&usize::MAX) {
            return Err(Error::Check("transport is not surjective".into()));
        }
        let rel_proj = (0..gamma.n).map(|v| from_gamma[gamma.cat.proj_index(v)]).collect::<Vec<_>>();
        if rel_proj.iter().collect::<BTreeSet<_>>() != rel.iter().collect::<BTreeSet<_>>() {
            return Err(Error::Check("projectives of the reduction are not the relative projectives".into()));
        }
        Ok(Reduction { pair: p.clone(), wide: w, rel_proj, gamma: Some(Box::new(gamma)), to_gamma, from_gamma })
    }

    /// The map `T ↦ T ∩ W` is an order isomorphism from the interval of the pair onto
    /// the torsion classes of the reduction.
    pub fn verify_reduction(&self, red: &Reduction) -> bool {
        let (u, t) = (self.u_class(&red.pair), self.t_class(&red.pair));
        let interval: Vec<IndSet> =
            (0..self.stt.len()).map(|s| self.stt_fac(s)).filter(|&f| bits::subset(u, f) && bits::subset(f, t)).collect();
        let Some(g) = &red.gamma else {
            return interval.len() == 1;
        };
        let image: Vec<IndSet> = interval.iter().map(|&f| red.transport(f & red.wide)).collect();
        let target: BTreeSet<IndSet> = (0..g.stt.len()).map(|s| g.stt_fac(s)).collect();
        if image.iter().collect::<BTreeSet<_>>().len() != image.len() || image.iter().copied().collect::<BTreeSet<_>>() != target {
            return false;
        }
        (0..interval.len()).all(|a| {
            (0..interval.len()).all(|b| bits::subset(interval[a], interval[b]) == bits::subset(image[a], image[b]))
        })
    }

    /// Orderings `M_1 ⊕ ⋯ ⊕ M_r` of a basic module with `M_i ∉ Fac(⊕_{j>i} M_j)`.
    pub fn tf_orderings(&self, m: &[usize]) -> Vec<Vec<usize>> {
        permutations(m.len())
            .into_iter()
            .map(|perm| perm.into_iter().map(|i| m[i]).collect::<Vec<_>>())
            .filter(|ord| self.is_tf_ordered(ord))
            .collect()
    }

    pub fn is_tf_ordered(&self, ord: &[usize]) -> bool {
        (0..ord.len()).all(|i| !bits::has(self.fac_of(bits::set_of(ord[i + 1..].iter().copied())), ord[i]))
    }

    /// Ordered pieces, each a set of indecomposables, with no indecomposable of a piece
    /// generated by the later pieces.
    pub fn is_weakly_tf_preordered(&self, pieces: &[IndSet]) -> bool {
        (0..pieces.len()).all(|i| {
            let later = pieces[i + 1..].iter().fold(0, |a, &b| a | b);
            pieces[i] & self.fac_of(later) == 0
        })
    }

    /// All signed (or unsigned) τ-exceptional sequences of length `len`, first entry first.
    pub fn exceptional_sequences(&self, len: usize, signed: bool) -> Result<Vec<Vec<Item>>> {
        if len == 0 {
            return Ok(vec![Vec::new()]);
        }
        let mut last: Vec<(Item, Pair)> =
            (0..self.cat.len()).filter(|&i| self.rigid[i]).map(|i| (Item::Module(i), Pair::new(vec![i], vec![]))).collect();
        if signed {
            last.extend((0..self.n).map(|v| (Item::Shifted(self.cat.proj_index(v)), Pair::new(vec![], vec![v]))));
        }
        let mut out = Vec::new();
        for (item, pair) in last {
            let red = self.jasso_reduce(&pair)?;
            let heads = match &red.gamma {
                None if len == 1 => vec![Vec::new()],
                None => Vec::new(),
                Some(g) => g.exceptional_sequences(len - 1, signed)?,
            };
            for h in heads {
                let mut s: Vec<Item> = h
                    .into_iter()
                    .map(|x| match x {
                        Item::Module(j) => Item::Module(red.from_gamma[j]),
                        Item::Shifted(j) => Item::Shifted(red.from_gamma[j]),
                    })
                    .collect();
                s.push(item);
                out.push(s);
            }
        }
        out.sort();
        Ok(out)
    }

    /// `Σ_{pairs of size t} t!`: ordered decompositions of τ-rigid pairs into indecomposables.
    pub fn ordered_decomposition_count(&self, t: usize) -> u64 {
        let fact: u64 = (1..=t as u64).product();
        self.pairs.iter().filter(|p| p.size() == t).count() as u64 * fact
    }

    /// Total number of TF-orderings of τ-rigid modules with `t` summands.
    pub fn tf_ordering_count(&self, t: usize) -> u64 {
        self.pairs.iter().filter(|p| p.p.is_empty() && p.m.len() == t).map(|p| self.tf_orderings(&p.m).len() as u64).sum()
    }

    /// `pd M ≤ 1`, `Ext¹(M, M) = 0` and `|M| = |Λ|`.
    pub fn is_tilting(&self, m: &[usize]) -> bool {
        m.len() == self.n
            && m.iter().all(|&i| m.iter().all(|&j| self.ext[i][j] == 0))
            && m.iter().all(|&i| self.cat.cat().proj_dim(self.cat.ind(i)).is_some_and(|d| d <= 1))
    }
}

/// A τ-perpendicular category `W` together with the algebra `Γ` with `W ≃ mod Γ`.
pub struct Reduction {
    pub pair: Pair,
    pub wide: IndSet,
    /// Relative projective of `W` at each vertex of `Γ`.
    pub rel_proj: Vec<usize>,
    pub gamma: Option<Box<TauTilting>>,
    pub to_gamma: BTreeMap<usize, usize>,
    pub from_gamma: Vec<usize>,
}

impl Reduction {
    /// Image of a subset of `W` in the catalogue of `Γ`.
    pub fn transport(&self, s: IndSet) -> IndSet {
        bits::set_of(bits::members(s).into_iter().map(|i| self.to_gamma[&i]))
    }

    /// Preimage of a subset of the catalogue of `Γ`.
    pub fn pull_back(&self, s: IndSet) -> IndSet {
        bits::set_of(bits::members(s).into_iter().map(|g| self.from_gamma[g]))
    }
}
