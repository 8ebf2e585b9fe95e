//! Enumeration of indecomposables for representation-finite algebras and canonical
//! isomorphism-class keys.

use std::collections::BTreeMap;

use num::rational::Ratio;
use num::{One, Zero};

use super::modcat::ModCat;
use super::{decompose, hom_dim, iso, Rep};
use crate::algebra::AlgRef;
use crate::error::{Error, Result};
use crate::gf::{count_vectors, nth_vector, Elem, Mat};

/// Multiplicity of each catalogued indecomposable.
pub type Key = Vec<u32>;

#[derive(Clone, Debug)]
pub struct EnumOptions {
    /// Abort (possibly infinite type) beyond this many indecomposables.
    pub max_ind: usize,
    /// Abort beyond this total dimension of an indecomposable.
    pub max_dim: usize,
    /// Cap on the number of extension classes tried per AR pair.
    pub max_classes: u64,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { max_ind: 64, max_dim: 48, max_classes: 1 << 10 }
    }
}

/// Outcome of the brute-force completeness sweep.
#[derive(Clone, Debug, Default)]
pub struct Certificate {
    pub dim_vectors_checked: Vec<Vec<usize>>,
    pub dim_vectors_skipped: Vec<Vec<usize>>,
    pub modules_checked: u64,
    /// A module that does not decompose into catalogued summands.
    pub missing: Option<Vec<usize>>,
}

impl Certificate {
    pub fn ok(&self) -> bool {
        self.missing.is_none()
    }
}

pub struct Catalog {
    cat: ModCat,
    ind: Vec<Rep>,
    names: Vec<String>,
    homdim: Vec<Vec<usize>>,
    hinv: Vec<Vec<Ratio<i64>>>,
    tau: Vec<Option<usize>>,
    tau_inv: Vec<Option<usize>>,
    proj_index: Vec<usize>,
    inj_index: Vec<usize>,
    simple_index: Vec<usize>,
}

fn invert_rational(h: &[Vec<usize>]) -> Option<Vec<Vec<Ratio<i64>>>> {
    let n = h.len();
    let mut a: Vec<Vec<Ratio<i64>>> = h
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Ratio<i64>> = row.iter().map(|&x| Ratio::from_integer(x as i64)).collect();
            r.extend((0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let m = a[r][c];
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot) {
                    *x -= m * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

struct Builder<'a> {
    cat: &'a ModCat,
    list: Vec<Rep>,
    opts: EnumOptions,
}

impl Builder<'_> {
    fn find(&self, x: &Rep) -> Result<Option<usize>> {
        let dv = x.dim_vector();
        for (i, y) in self.list.iter().enumerate() {
            if y.dim_vector() == dv && iso(x, y)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    fn add(&mut self, x: Rep) -> Result<()> {
        if x.dim() == 0 {
            return Ok(());
        }
        for s in decompose(&x)? {
            if self.find(&s)?.is_none() {
                if s.dim() > self.opts.max_dim || self.list.len() >= self.opts.max_ind {
                    return Err(Error::Cap("closure not reached within cap (possibly infinite type)".into()));
                }
                self.list.push(s);
            }
        }
        Ok(())
    }
}

fn sort_key(cat: &ModCat, x: &Rep) -> (usize, Vec<usize>, Vec<usize>, Vec<usize>) {
    (x.dim(), x.dim_vector(), cat.top_vector(x), x.socle().0.dim_vector())
}

impl Catalog {
    /// Closure of simples, projectives and injectives under τ, τ⁻¹ and middle terms
    /// of extensions in `Ext¹(X, τX)`.
    pub fn build(alg: &AlgRef, opts: EnumOptions) -> Result<Catalog> {
        let cat = ModCat::new(alg)?;
        let n = cat.num_vertices();
        let mut b = Builder { cat: &cat, list: Vec::new(), opts };
        for i in 0..n {
            b.add(cat.simple(i).clone())?;
            b.add(cat.projective(i).clone())?;
            b.add(cat.injective(i).clone())?;
        }
        let mut head = 0;
        while head < b.list.len() {
            let x = b.list[head].clone();
            head += 1;
            let t = b.cat.tau(&x);
            b.add(b.cat.tau_inv(&x))?;
            if t.dim() > 0 {
                let e = b.cat.ext1(&x, &t);
                let f = x.field().clone();
                let total = count_vectors(&f, e.dim()).unwrap_or(u64::MAX).min(b.opts.max_classes);
                for idx in 1..total {
                    let c = nth_vector(&f, e.dim(), idx);
                    if c.iter().rev().find(|&&v| v != 0) != Some(&1) {
                        continue;
                    }
                    b.add(e.middle_term(&c).0)?;
                }
                b.add(t)?;
            }
        }
        let mut list = b.list;
        let keys: Vec<_> = list.iter().map(|x| sort_key(&cat, x)).collect();
        let mut order: Vec<usize> = (0..list.len()).collect();
        order.sort_by(|&a, &c| keys[a].cmp(&keys[c]).then(a.cmp(&c)));
        list = order.iter().map(|&i| list[i].clone()).collect();
        Catalog::from_list(cat, list)
    }

    /// Catalogue from an explicit complete list of pairwise non-isomorphic indecomposables.
    pub fn from_list(cat: ModCat, ind: Vec<Rep>) -> Result<Catalog> {
        let k = ind.len();
        let homdim: Vec<Vec<usize>> = (0..k).map(|i| (0..k).map(|j| hom_dim(&ind[i], &ind[j])).collect()).collect();
        let hinv = invert_rational(&homdim).ok_or_else(|| Error::Check("Hom-dimension matrix is singular".into()))?;
        let mut c = Catalog {
            cat,
            ind,
            names: Vec::new(),
            homdim,
            hinv,
            tau: Vec::new(),
            tau_inv: Vec::new(),
            proj_index: Vec::new(),
            inj_index: Vec::new(),
            simple_index: Vec::new(),
        };
        let n = c.cat.num_vertices();
        for i in 0..n {
            let p = c.index_of(&c.cat.projective(i).clone())?;
            let q = c.index_of(&c.cat.injective(i).clone())?;
            let s = c.index_of(&c.cat.simple(i).clone())?;
            c.proj_index.push(p);
            c.inj_index.push(q);
            c.simple_index.push(s);
        }
        for i in 0..k {
            let t = c.cat.tau(&c.ind[i]);
            let ti = c.cat.tau_inv(&c.ind[i]);
            let a = if t.dim() == 0 { None } else { Some(c.index_of(&t)?) };
            let b = if ti.dim() == 0 { None } else { Some(c.index_of(&ti)?) };
            c.tau.push(a);
            c.tau_inv.push(b);
        }
        let vnames = c.cat.alg().vertex_names().to_vec();
        for i in 0..k {
            let name = if let Some(v) = c.simple_index.iter().position(|&x| x == i) {
                format!("S{}", vnames[v])
            } else if let Some(v) = c.proj_index.iter().position(|&x| x == i) {
                format!("P{}", vnames[v])
            } else if let Some(v) = c.inj_index.iter().position(|&x| x == i) {
                format!("I{}", vnames[v])
            } else {
                format!("M{i}")
            };
            c.names.push(name);
        }
        Ok(c)
    }

    pub fn cat(&self) -> &ModCat {
        &self.cat
    }
    pub fn alg(&self) -> &AlgRef {
        self.cat.alg()
    }
    pub fn len(&self) -> usize {
        self.ind.len()
    }
    pub fn is_empty(&self) -> bool {
        self.ind.is_empty()
    }
    pub fn ind(&self, i: usize) -> &Rep {
        &self.ind[i]
    }
    pub fn inds(&self) -> &[Rep] {
        &self.ind
    }
    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn homdim(&self, i: usize, j: usize) -> usize {
        self.homdim[i][j]
    }
    pub fn tau_index(&self, i: usize) -> Option<usize> {
        self.tau[i]
    }
    pub fn tau_inv_index(&self, i: usize) -> Option<usize> {
        self.tau_inv[i]
    }
    pub fn proj_index(&self, v: usize) -> usize {
        self.proj_index[v]
    }
    pub fn inj_index(&self, v: usize) -> usize {
        self.inj_index[v]
    }
    pub fn simple_index(&self, v: usize) -> usize {
        self.simple_index[v]
    }
    /// Vertex of the projective with catalogue index `i`, if any.
    pub fn projective_vertex(&self, i: usize) -> Option<usize> {
        self.proj_index.iter().position(|&x| x == i)
    }
    pub fn max_length(&self) -> usize {
        self.ind.iter().map(|x| x.length()).max().unwrap_or(0)
    }

    /// `dim Hom(X_i, M)` for every catalogued `X_i`.
    pub fn hom_vector(&self, m: &Rep) -> Vec<usize> {
        self.ind.iter().map(|x| hom_dim(x, m)).collect()
    }

    /// Multiplicities of the catalogued indecomposables in `M`.
    pub fn key(&self, m: &Rep) -> Result<Key> {
        let h = self.hom_vector(m);
        let mut key = Vec::with_capacity(self.len());
        for row in &self.hinv {
            let v: Ratio<i64> = row.iter().zip(&h).map(|(a, &b)| *a * Ratio::from_integer(b as i64)).sum();
            if !v.is_integer() || v < Ratio::zero() {
                return Err(Error::Check("module has a summand outside the catalogue".into()));
            }
            key.push(*v.numer() as u32);
        }
        let mut dv = vec![0usize; m.alg().num_vertices()];
        for (j, &c) in key.iter().enumerate() {
            for (t, d) in self.ind[j].dim_vector().into_iter().enumerate() {
                dv[t] += c as usize * d;
            }
        }
        if dv != m.dim_vector() {
            return Err(Error::Check("module has a summand outside the catalogue".into()));
        }
        Ok(key)
    }

    /// Catalogue index of an indecomposable.
    pub fn index_of(&self, x: &Rep) -> Result<usize> {
        let k = self.key(x)?;
        let total: u32 = k.iter().sum();
        if total != 1 {
            return Err(Error::Check("module is not indecomposable".into()));
        }
        Ok(k.iter().position(|&c| c == 1).unwrap())
    }

    pub fn zero_key(&self) -> Key {
        vec![0; self.len()]
    }

    pub fn unit_key(&self, i: usize) -> Key {
        let mut k = self.zero_key();
        k[i] = 1;
        k
    }

    pub fn key_length(&self, k: &Key) -> usize {
        k.iter().enumerate().map(|(i, &c)| c as usize * self.ind[i].length()).sum()
    }

    pub fn key_support(&self, k: &Key) -> Vec<usize> {
        k.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| i).collect()
    }

    /// `⊕ X_i^{k_i}`.
    pub fn module(&self, k: &Key) -> Rep {
        let parts: Vec<&Rep> =
            k.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat(&self.ind[i]).take(c as usize)).collect();
        if parts.is_empty() {
            Rep::zero(self.alg())
        } else {
            Rep::direct_sum(&parts).0
        }
    }

    /// Basic module `⊕_{i ∈ s} X_i`.
    pub fn basic(&self, s: &[usize]) -> Rep {
        let mut k = self.zero_key();
        for &i in s {
            k[i] = 1;
        }
        self.module(&k)
    }

    pub fn key_name(&self, k: &Key) -> String {
        let parts: Vec<String> = k
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| if c == 1 { self.names[i].clone() } else { format!("{}^{}", self.names[i], c) })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            format!("{{{}}}", parts.join(", "))
        }
    }

    pub fn set_name(&self, s: &[usize]) -> String {
        let parts: Vec<&str> = s.iter().map(|&i| self.names[i].as_str()).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// All keys of total composition length exactly `l`.
    pub fn keys_of_length(&self, l: usize) -> Vec<Key> {
        let lens: Vec<usize> = self.ind.iter().map(|x| x.length()).collect();
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.len()];
        fn rec(i: usize, rem: usize, lens: &[usize], cur: &mut Vec<u32>, out: &mut Vec<Key>) {
            if i == lens.len() {
                if rem == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let mut c = 0;
            loop {
                cur[i] = c;
                rec(i + 1, rem - c as usize * lens[i], lens, cur, out);
                if (c as usize + 1) * lens[i] > rem {
                    break;
                }
                c += 1;
            }
            cur[i] = 0;
        }
        rec(0, l, &lens, &mut cur, &mut out);
        out.sort();
        out
    }

    /// Brute-force sweep over all modules with dimension vector of total at most
    /// `max_total`, skipping dimension vectors with more than `cand_cap` candidates.
    pub fn certify(&self, max_total: usize, cand_cap: u64) -> Result<Certificate> {
        let alg = self.alg().clone();
        let f = alg.field().clone();
        let n = alg.num_vertices();
        let sd: Vec<usize> = (0..n).map(|i| alg.simple_dim(i)).collect();
        let mut dvs: Vec<Vec<usize>> = Vec::new();
        let mut cur = vec![0usize; n];
        fn rec(i: usize, rem: usize, sd: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == sd.len() {
                if cur.iter().any(|&x| x > 0) {
                    out.push(cur.clone());
                }
                return;
            }
            let mut d = 0;
            while d <= rem {
                cur[i] = d;
                rec(i + 1, rem - d, sd, cur, out);
                d += sd[i];
            }
            cur[i] = 0;
        }
        rec(0, max_total, &sd, &mut cur, &mut dvs);
        dvs.sort_by_key(|d| (d.iter().sum::<usize>(), d.clone()));
        let mut cert = Certificate::default();
        let corners = alg.generator_corners().to_vec();
        for dv in dvs {
            let total: usize = dv.iter().sum();
            let mut off = vec![0];
            for i in 0..n {
                off.push(off[i] + dv[i]);
            }
            let entries: usize = corners.iter().skip(n).map(|&(i, j)| dv[i] * dv[j]).sum();
            let count = count_vectors(&f, entries).filter(|&c| c <= cand_cap);
            let Some(count) = count else {
                cert.dim_vectors_skipped.push(dv);
                continue;
            };
            let mut base: Vec<Mat> = Vec::new();
            for i in 0..n {
                let mut e = Mat::zeros(&f, total, total);
                for r in off[i]..off[i + 1] {
                    e.set(r, r, 1);
                }
                base.push(e);
            }
            let mut skipped = false;
            for idx in 0..count {
                let v: Vec<Elem> = nth_vector(&f, entries, idx);
                let mut gens = base.clone();
                let mut pos = 0;
                for &(i, j) in corners.iter().skip(n) {
                    let mut g = Mat::zeros(&f, total, total);
                    for r in 0..dv[i] {
                        for c in 0..dv[j] {
                            g.set(off[i] + r, off[j] + c, v[pos]);
                            pos += 1;
                        }
                    }
                    gens.push(g);
                }
                let Ok(m) = Rep::from_gen_mats(&alg, gens) else { continue };
                cert.modules_checked += 1;
                let ok = match self.key(&m) {
                    Ok(k) => iso(&m, &self.module(&k)),
                    Err(Error::Cap(e)) => Err(Error::Cap(e)),
                    Err(_) => Ok(false),
                };
                match ok {
                    Ok(true) => {}
                    Ok(false) => {
                        cert.missing = Some(dv.clone());
                        cert.dim_vectors_checked.push(dv);
                        return Ok(cert);
                    }
                    // a module too large for the exact tests: skip the whole dimension vector
                    Err(Error::Cap(_)) => {
                        skipped = true;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            if skipped {
                cert.dim_vectors_skipped.push(dv);
            } else {
                cert.dim_vectors_checked.push(dv);
            }
        }
        Ok(cert)
    }

    /// Indices grouped by dimension vector, for reports.
    pub fn by_dim_vector(&self) -> BTreeMap<Vec<usize>, Vec<usize>> {
        let mut m: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (i, x) in self.ind.iter().enumerate() {
            m.entry(x.dim_vector()).or_default().push(i);
        }
        m
    }
}
