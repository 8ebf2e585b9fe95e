//! Right modules over an [`Algebra`], stored in a vertex-graded basis.
//!
//! A module `M` is given by the matrices of the algebra generators acting on row
//! vectors (`v ↦ v·ρ(a)`). The basis is always ordered so that `M e_1`, `M e_2`, ...
//! occupy consecutive blocks; every generator lies in a corner `e_i A e_j` and so
//! only has a nonzero block from `M e_i` to `M e_j`.

pub mod catalog;
pub mod modcat;

use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgRef, Algebra};
use crate::error::{Error, Result};
use crate::gf::{count_vectors, lin_comb, nth_vector, vec_mat, Elem, Field, Mat, RowCoords};

pub use catalog::{Catalog, Key};
pub use modcat::{solve_in_span, Ext1, ModCat, Nakayama, Presentation, ProjCover, TauData, TauInvData};

/// Cap on exhaustive scans of Hom spaces and endomorphism rings.
pub const HOM_SCAN_CAP: u64 = 1 << 20;
/// Cap on the number of submodules produced by [`Rep::submodules`].
pub const SUBMODULE_CAP: usize = 1 << 18;

static ISO_SEED: AtomicU64 = AtomicU64::new(0x7a75_5eed);

/// Seed for the randomized invertibility sweep in [`iso`] and [`decompose`].
pub fn set_seed(seed: u64) {
    ISO_SEED.store(seed, Ordering::Relaxed);
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(ISO_SEED.load(Ordering::Relaxed))
}

#[derive(Clone)]
pub struct Rep {
    alg: AlgRef,
    off: Vec<usize>,
    gens: Vec<Mat>,
}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep(dim {:?})", self.dim_vector())
    }
}

impl Rep {
    /// Module from generator matrices, validated against the algebra relations.
    pub fn from_gen_mats(alg: &AlgRef, gens: Vec<Mat>) -> Result<Rep> {
        if gens.len() != alg.generators().len() {
            return Err(Error::Dim(format!("expected {} generator matrices, got {}", alg.generators().len(), gens.len())));
        }
        let d = gens.first().map(|g| g.rows()).unwrap_or(0);
        if gens.iter().any(|g| g.rows() != d || g.cols() != d) {
            return Err(Error::Dim("generator matrices must be square of equal size".into()));
        }
        let raw = Rep { alg: alg.clone(), off: vec![0; alg.num_vertices() + 1], gens: gens.clone() };
        if !raw.satisfies_relations() {
            return Err(Error::Check("matrices do not satisfy the algebra relations".into()));
        }
        Ok(Rep::build(alg, gens).0)
    }

    /// Grade a (valid) module. Returns the module and the change of basis whose rows are
    /// the new basis vectors in old coordinates.
    pub(crate) fn build(alg: &AlgRef, gens: Vec<Mat>) -> (Rep, Mat) {
        let n = alg.num_vertices();
        let f = alg.field();
        let d = gens.first().map(|g| g.rows()).unwrap_or(0);
        let mut off = vec![0];
        let mut t = Mat::zeros(f, 0, d);
        for g in gens.iter().take(n) {
            let b = g.row_basis();
            off.push(off.last().unwrap() + b.rows());
            t = t.vstack(&b);
        }
        if n == 0 || d == 0 {
            let off = vec![0; n + 1];
            return (Rep { alg: alg.clone(), off, gens: vec![Mat::zeros(f, 0, 0); alg.generators().len()] }, t);
        }
        let id = Mat::identity(f, d);
        if t == id {
            return (Rep { alg: alg.clone(), off, gens }, t);
        }
        let tinv = t.inverse().expect("idempotent images span the module");
        let gens = gens.iter().map(|g| t.mul(g).mul(&tinv)).collect();
        (Rep { alg: alg.clone(), off, gens }, t)
    }

    pub fn zero(alg: &AlgRef) -> Rep {
        Rep::build(alg, vec![Mat::zeros(alg.field(), 0, 0); alg.generators().len()]).0
    }

    /// The regular module `A_A`. Returns the module and the change of basis
    /// (rows: graded basis in algebra coordinates).
    pub fn regular(alg: &AlgRef) -> (Rep, Mat) {
        let gens = alg.generators().iter().map(|g| alg.right_mult_matrix(g)).collect();
        Rep::build(alg, gens)
    }

    pub fn alg(&self) -> &AlgRef {
        &self.alg
    }
    pub fn field(&self) -> &Field {
        self.alg.field()
    }
    pub fn dim(&self) -> usize {
        *self.off.last().unwrap()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn offsets(&self) -> &[usize] {
        &self.off
    }
    pub fn gen_mats(&self) -> &[Mat] {
        &self.gens
    }
    pub fn vertex_dim(&self, i: usize) -> usize {
        self.off[i + 1] - self.off[i]
    }
    /// `dim_k M e_i` for each vertex.
    pub fn dim_vector(&self) -> Vec<usize> {
        (0..self.alg.num_vertices()).map(|i| self.vertex_dim(i)).collect()
    }
    /// Composition multiplicities `[M : S_i]`.
    pub fn class(&self) -> Vec<usize> {
        (0..self.alg.num_vertices()).map(|i| self.vertex_dim(i) / self.alg.simple_dim(i)).collect()
    }
    /// Composition length.
    pub fn length(&self) -> usize {
        self.class().iter().sum()
    }

    /// Action matrices of every algebra basis element.
    pub fn basis_action(&self) -> Vec<Mat> {
        let d = self.dim();
        self.alg.basis_words().iter().map(|w| self.alg.eval_words(w, &self.gens, d)).collect()
    }

    /// Action matrix of an arbitrary algebra element, given the basis action.
    pub fn act_with(&self, basis_action: &[Mat], x: &[Elem]) -> Mat {
        lin_comb(self.field(), x, basis_action, self.dim(), self.dim())
    }

    fn satisfies_relations(&self) -> bool {
        let alg = &self.alg;
        let f = alg.field();
        let d = self.gens.first().map(|g| g.rows()).unwrap_or(0);
        let acts: Vec<Mat> = alg.basis_words().iter().map(|w| alg.eval_words(w, &self.gens, d)).collect();
        if lin_comb(f, alg.unit(), &acts, d, d) != Mat::identity(f, d) {
            return false;
        }
        for (g, m) in alg.generators().iter().zip(&self.gens) {
            if &lin_comb(f, g, &acts, d, d) != m {
                return false;
            }
        }
        let dim = alg.dim();
        for i in 0..dim {
            for j in 0..dim {
                let prod = alg.basis_product(i, j);
                if acts[i].mul(&acts[j]) != lin_comb(f, &prod, &acts, d, d) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether the stored matrices define a module.
    pub fn check_module(&self) -> bool {
        self.satisfies_relations()
    }

    /// Smallest submodule containing the given rows, as an echelon row basis.
    pub fn closure(&self, rows: &Mat) -> Mat {
        let mut basis = rows.row_basis();
        loop {
            let mut ext = basis.clone();
            for g in &self.gens {
                ext = ext.vstack(&basis.mul(g));
            }
            let nb = ext.row_basis();
            if nb.rows() == basis.rows() {
                return nb;
            }
            basis = nb;
        }
    }

    pub fn is_submodule(&self, rows: &Mat) -> bool {
        self.gens.iter().all(|g| rows.row_space_contains(&rows.mul(g)))
    }

    /// Submodule spanned by the (invariant) rows. Returns it with its inclusion map.
    pub fn sub(&self, rows: &Mat) -> (Rep, Mat) {
        let f = self.field();
        let basis = rows.row_basis();
        if basis.rows() == 0 {
            return (Rep::zero(&self.alg), Mat::zeros(f, 0, self.dim()));
        }
        let rc = RowCoords::new(&basis);
        let gens: Vec<Mat> = self
            .gens
            .iter()
            .map(|g| {
                let img = basis.mul(g);
                let rows: Vec<Vec<Elem>> = (0..img.rows()).map(|r| rc.coords(img.row(r))).collect();
                Mat::from_rows(f, basis.rows(), &rows)
            })
            .collect();
        let (rep, t) = Rep::build(&self.alg, gens);
        let incl = t.mul(&basis);
        (rep, incl)
    }

    /// Quotient by the (invariant) rows. Returns the quotient, the projection
    /// (`dim M × dim Q`) and a section (`dim Q × dim M`) of representatives.
    pub fn quotient(&self, rows: &Mat) -> (Rep, Mat, Mat) {
        let f = self.field();
        let d = self.dim();
        let (r, piv) = rows.rref();
        let s = r.select_rows(&(0..piv.len()).collect::<Vec<_>>());
        let free: Vec<usize> = (0..d).filter(|c| !piv.contains(c)).collect();
        let reduce = |v: &[Elem]| -> Vec<Elem> {
            let mut w = v.to_vec();
            for (i, &p) in piv.iter().enumerate() {
                let c = w[p];
                if c != 0 {
                    let nc = f.neg(c);
                    for (j, x) in w.iter_mut().enumerate() {
                        let y = s.get(i, j);
                        if y != 0 {
                            *x = f.add(*x, f.mul(nc, y));
                        }
                    }
                }
            }
            free.iter().map(|&c| w[c]).collect()
        };
        let q = free.len();
        let mut section = Mat::zeros(f, q, d);
        for (k, &c) in free.iter().enumerate() {
            section.set(k, c, 1);
        }
        let gens: Vec<Mat> = self
            .gens
            .iter()
            .map(|g| {
                let img = section.mul(g);
                let rows: Vec<Vec<Elem>> = (0..q).map(|k| reduce(img.row(k))).collect();
                Mat::from_rows(f, q, &rows)
            })
            .collect();
        let proj_rows: Vec<Vec<Elem>> = (0..d)
            .map(|t| {
                let mut e = vec![0; d];
                e[t] = 1;
                reduce(&e)
            })
            .collect();
        let proj = Mat::from_rows(f, q, &proj_rows);
        let (rep, t) = Rep::build(&self.alg, gens);
        if rep.dim() == 0 {
            return (rep, Mat::zeros(f, d, 0), Mat::zeros(f, 0, d));
        }
        let tinv = t.inverse().expect("change of basis");
        (rep, proj.mul(&tinv), t.mul(&section))
    }

    /// Direct sum; returns the change of basis from the concatenated basis
    /// (rows: new basis vectors in concatenated coordinates).
    pub fn direct_sum(parts: &[&Rep]) -> (Rep, Mat) {
        let alg = parts.first().map(|p| p.alg.clone()).expect("nonempty direct sum");
        let f = alg.field().clone();
        let gens: Vec<Mat> = (0..alg.generators().len())
            .map(|t| {
                let blocks: Vec<&Mat> = parts.iter().map(|p| &p.gens[t]).collect();
                Mat::block_diag(&f, &blocks)
            })
            .collect();
        Rep::build(&alg, gens)
    }

    /// Direct sum with injections (`dim part × dim sum`) and projections (`dim sum × dim part`).
    pub fn direct_sum_maps(parts: &[&Rep]) -> (Rep, Vec<Mat>, Vec<Mat>) {
        let (sum, t) = Rep::direct_sum(parts);
        let f = sum.field().clone();
        let total = sum.dim();
        let tinv = if total == 0 { Mat::zeros(&f, 0, 0) } else { t.inverse().expect("permutation") };
        let mut inj = Vec::new();
        let mut proj = Vec::new();
        let mut start = 0;
        for p in parts {
            let idx: Vec<usize> = (start..start + p.dim()).collect();
            inj.push(tinv.select_rows(&idx));
            proj.push(t.select_cols(&idx));
            start += p.dim();
        }
        (sum, inj, proj)
    }

    pub fn power(&self, k: usize) -> Rep {
        if k == 0 {
            return Rep::zero(&self.alg);
        }
        let parts: Vec<&Rep> = (0..k).map(|_| self).collect();
        Rep::direct_sum(&parts).0
    }

    /// Same module over an algebra with identical basis and structure (e.g. a re-assembled copy).
    pub fn with_algebra(&self, alg: &AlgRef) -> Rep {
        let acts = self.basis_action();
        let gens = alg.generators().iter().map(|g| self.act_with(&acts, g)).collect();
        Rep::build(alg, gens).0
    }

    /// The k-dual `D M`, a right module over `op` (the opposite algebra on the same basis).
    pub fn dual(&self, op: &AlgRef) -> Rep {
        let acts = self.basis_action();
        let gens = op.generators().iter().map(|g| self.act_with(&acts, g).transpose()).collect();
        Rep::build(op, gens).0
    }

    /// Transport along an invertible matrix `t` (rows: new basis in old coordinates).
    pub fn conjugate(&self, t: &Mat) -> Rep {
        let tinv = t.inverse().expect("invertible change of basis");
        let gens = self.gens.iter().map(|g| t.mul(g).mul(&tinv)).collect();
        Rep::build(&self.alg, gens).0
    }

    /// Whether `h` (`dim M × dim N`) is a module map `self → n`.
    pub fn is_hom_to(&self, n: &Rep, h: &Mat) -> bool {
        self.gens.iter().zip(&n.gens).all(|(a, b)| a.mul(h) == h.mul(b))
    }

    /// Radical `M·rad A` with its inclusion.
    pub fn radical(&self) -> (Rep, Mat) {
        let rows = self.radical_rows();
        self.sub(&rows)
    }

    fn radical_rows(&self) -> Mat {
        let f = self.field();
        let acts = self.basis_action();
        let rad = self.alg.radical();
        let mut rows = Mat::zeros(f, 0, self.dim());
        for r in 0..rad.rows() {
            rows = rows.vstack(&self.act_with(&acts, rad.row(r)));
        }
        rows.row_basis()
    }

    /// Top `M / rad M` with its projection.
    pub fn top(&self) -> (Rep, Mat) {
        let (q, p, _) = self.quotient(&self.radical_rows());
        (q, p)
    }

    /// Socle: the annihilator of `rad A`, with its inclusion.
    pub fn socle(&self) -> (Rep, Mat) {
        let f = self.field();
        let acts = self.basis_action();
        let rad = self.alg.radical();
        let mut big = Mat::zeros(f, self.dim(), 0);
        for r in 0..rad.rows() {
            big = big.hstack(&self.act_with(&acts, rad.row(r)));
        }
        let rows = if big.cols() == 0 { Mat::identity(f, self.dim()) } else { big.left_kernel() };
        self.sub(&rows)
    }

    /// All submodules as echelon row bases, starting with `0` and ending anywhere.
    pub fn submodules(&self, cap: usize) -> Result<Vec<Mat>> {
        let f = self.field().clone();
        let d = self.dim();
        // cyclic submodules generated by homogeneous vectors
        let mut cyclic: Vec<Mat> = Vec::new();
        let mut seen: HashSet<Mat> = HashSet::new();
        for i in 0..self.alg.num_vertices() {
            let di = self.vertex_dim(i);
            let count = count_vectors(&f, di).filter(|&c| c <= HOM_SCAN_CAP).ok_or_else(|| {
                Error::Cap(format!("vertex space of dimension {di} too large for submodule scan"))
            })?;
            for idx in 1..count {
                let c = nth_vector(&f, di, idx);
                // only vectors whose leading nonzero coordinate is 1
                if c.iter().rev().find(|&&x| x != 0) != Some(&1) {
                    continue;
                }
                let mut v = vec![0; d];
                v[self.off[i]..self.off[i + 1]].copy_from_slice(&c);
                let s = self.closure(&Mat::row_vec(&f, &v));
                if seen.insert(s.clone()) {
                    cyclic.push(s);
                }
            }
        }
        let zero = Mat::zeros(&f, 0, d);
        let mut all = vec![zero.clone()];
        let mut known: HashSet<Mat> = HashSet::new();
        known.insert(zero);
        let mut head = 0;
        while head < all.len() {
            let s = all[head].clone();
            head += 1;
            for c in &cyclic {
                let t = s.vstack(c).row_basis();
                if known.insert(t.clone()) {
                    all.push(t);
                    if all.len() > cap {
                        return Err(Error::Cap(format!("more than {cap} submodules")));
                    }
                }
            }
        }
        Ok(all)
    }
}

/// Basis of `Hom_A(M, N)` as `dim M × dim N` intertwiners.
pub fn hom(m: &Rep, n: &Rep) -> Vec<Mat> {
    let alg = &m.alg;
    let f = alg.field().clone();
    let nv = alg.num_vertices();
    let mut ustart = vec![0];
    for i in 0..nv {
        ustart.push(ustart[i] + m.vertex_dim(i) * n.vertex_dim(i));
    }
    let nu = ustart[nv];
    if nu == 0 {
        return Vec::new();
    }
    let mut eqs: Vec<Vec<Elem>> = Vec::new();
    for (t, &(i, j)) in alg.generator_corners().iter().enumerate() {
        if t < nv {
            continue;
        }
        let (mi, mj, ni, nj) = (m.vertex_dim(i), m.vertex_dim(j), n.vertex_dim(i), n.vertex_dim(j));
        if mi * nj == 0 {
            continue;
        }
        let a = m.gens[t].block(m.off[i], m.off[j], mi, mj);
        let b = n.gens[t].block(n.off[i], n.off[j], ni, nj);
        // (A H_j − H_i B)[r][c] = 0
        for r in 0..mi {
            for c in 0..nj {
                let mut row = vec![0; nu];
                for s in 0..mj {
                    let x = a.get(r, s);
                    if x != 0 {
                        let u = ustart[j] + s * nj + c;
                        row[u] = f.add(row[u], x);
                    }
                }
                for s in 0..ni {
                    let y = b.get(s, c);
                    if y != 0 {
                        let u = ustart[i] + r * ni + s;
                        row[u] = f.sub(row[u], y);
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    eqs.push(row);
                }
            }
        }
    }
    let ker = if eqs.is_empty() { Mat::identity(&f, nu) } else { Mat::from_rows(&f, nu, &eqs).kernel() };
    (0..ker.rows())
        .map(|k| {
            let v = ker.row(k);
            let mut h = Mat::zeros(&f, m.dim(), n.dim());
            for i in 0..nv {
                let (mi, ni) = (m.vertex_dim(i), n.vertex_dim(i));
                for r in 0..mi {
                    for c in 0..ni {
                        h.set(m.off[i] + r, n.off[i] + c, v[ustart[i] + r * ni + c]);
                    }
                }
            }
            h
        })
        .collect()
}

pub fn hom_dim(m: &Rep, n: &Rep) -> usize {
    hom(m, n).len()
}

fn random_combination(f: &Field, basis: &[Mat], rng: &mut ChaCha8Rng) -> Mat {
    let c: Vec<Elem> = (0..basis.len()).map(|_| rng.gen_range(0..f.q())).collect();
    lin_comb(f, &c, basis, basis[0].rows(), basis[0].cols())
}

/// An isomorphism `M → N` if one exists.
pub fn find_iso(m: &Rep, n: &Rep) -> Result<Option<Mat>> {
    if m.dim_vector() != n.dim_vector() {
        return Ok(None);
    }
    let f = m.field().clone();
    if m.dim() == 0 {
        return Ok(Some(Mat::zeros(&f, 0, 0)));
    }
    let h = hom(m, n);
    if h.is_empty() {
        return Ok(None);
    }
    if hom_dim(m, m) != h.len() || hom_dim(n, n) != h.len() || hom_dim(n, m) != h.len() {
        return Ok(None);
    }
    let mut r = rng();
    for _ in 0..32 {
        let x = random_combination(&f, &h, &mut r);
        if x.is_invertible() {
            return Ok(Some(x));
        }
    }
    let total = count_vectors(&f, h.len())
        .filter(|&c| c <= HOM_SCAN_CAP)
        .ok_or_else(|| Error::Cap(format!("Hom space of dimension {} too large to scan", h.len())))?;
    for idx in 1..total {
        let c = nth_vector(&f, h.len(), idx);
        let x = lin_comb(&f, &c, &h, m.dim(), n.dim());
        if x.is_invertible() {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

pub fn iso(m: &Rep, n: &Rep) -> Result<bool> {
    Ok(find_iso(m, n)?.is_some())
}

fn fitting_image(phi: &Mat) -> Mat {
    let mut p = phi.clone();
    let mut r = p.rank();
    loop {
        let q = p.mul(&p);
        let rq = q.rank();
        if rq == r {
            return p;
        }
        p = q;
        r = rq;
    }
}

/// A nontrivial splitting `M = im ⊕ ker` from a non-nilpotent non-invertible endomorphism.
fn split(m: &Rep) -> Result<Option<(Mat, Mat)>> {
    let f = m.field().clone();
    let e = hom(m, m);
    if e.len() <= 1 {
        return Ok(None);
    }
    let d = m.dim();
    let try_phi = |phi: &Mat| -> Option<(Mat, Mat)> {
        let p = fitting_image(phi);
        let r = p.rank();
        if r > 0 && r < d {
            Some((p.row_basis(), p.left_kernel()))
        } else {
            None
        }
    };
    for phi in &e {
        if let Some(s) = try_phi(phi) {
            return Ok(Some(s));
        }
    }
    let mut r = rng();
    for _ in 0..64 {
        let phi = random_combination(&f, &e, &mut r);
        if let Some(s) = try_phi(&phi) {
            return Ok(Some(s));
        }
    }
    let total = count_vectors(&f, e.len())
        .filter(|&c| c <= HOM_SCAN_CAP)
        .ok_or_else(|| Error::Cap(format!("endomorphism ring of dimension {} too large to scan", e.len())))?;
    for idx in 1..total {
        let c = nth_vector(&f, e.len(), idx);
        let phi = lin_comb(&f, &c, &e, d, d);
        if let Some(s) = try_phi(&phi) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Krull–Schmidt decomposition into indecomposable summands.
pub fn decompose(m: &Rep) -> Result<Vec<Rep>> {
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.dim() == 0 {
            continue;
        }
        match split(&x)? {
            None => out.push(x),
            Some((im, ker)) => {
                stack.push(x.sub(&ker).0);
                stack.push(x.sub(&im).0);
            }
        }
    }
    Ok(out)
}

/// Decomposition with the split injections (`dim X_k × dim M`) of each summand.
pub fn decompose_with_maps(m: &Rep) -> Result<Vec<(Rep, Mat)>> {
    let mut out = Vec::new();
    let id = Mat::identity(m.field(), m.dim());
    let mut stack = vec![(m.clone(), id)];
    while let Some((x, incl)) = stack.pop() {
        if x.dim() == 0 {
            continue;
        }
        match split(&x)? {
            None => out.push((x, incl)),
            Some((im, ker)) => {
                let (a, ia) = x.sub(&im);
                let (b, ib) = x.sub(&ker);
                stack.push((b, ib.mul(&incl)));
                stack.push((a, ia.mul(&incl)));
            }
        }
    }
    Ok(out)
}

pub fn is_indecomposable(m: &Rep) -> Result<bool> {
    Ok(m.dim() > 0 && split(m)?.is_none())
}

/// Whether `End(M)` is a division algebra: every nonzero endomorphism invertible.
pub fn is_brick(m: &Rep) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(false);
    }
    let f = m.field().clone();
    let e = hom(m, m);
    let total = count_vectors(&f, e.len())
        .filter(|&c| c <= HOM_SCAN_CAP)
        .ok_or_else(|| Error::Cap(format!("endomorphism ring of dimension {} too large to scan", e.len())))?;
    for idx in 1..total {
        let c = nth_vector(&f, e.len(), idx);
        if !lin_comb(&f, &c, &e, m.dim(), m.dim()).is_invertible() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Trace of `M` in `X`: the sum of images of all maps `M → X`, as row basis.
pub fn trace(m: &Rep, x: &Rep) -> Mat {
    let f = x.field();
    let mut rows = Mat::zeros(f, 0, x.dim());
    for h in hom(m, x) {
        rows = rows.vstack(&h);
    }
    rows.row_basis()
}

/// Whether `X` is a quotient of some `M^r`.
pub fn in_gen(x: &Rep, m: &Rep) -> bool {
    trace(m, x).rows() == x.dim()
}

/// `f_N(X) = X / trace(N in X)`.
pub fn torsionfree_quotient(x: &Rep, n: &Rep) -> Rep {
    x.quotient(&trace(n, x)).0
}

/// Reject-style intersection of kernels: the largest submodule of `X` killed by all maps `X → M`.
pub fn reject(x: &Rep, m: &Rep) -> Mat {
    let f = x.field();
    let mut big = Mat::zeros(f, x.dim(), 0);
    for h in hom(x, m) {
        big = big.hstack(&h);
    }
    if big.cols() == 0 {
        Mat::identity(f, x.dim())
    } else {
        big.left_kernel()
    }
}

/// Whether `X` embeds into some `M^r`.
pub fn in_cogen(x: &Rep, m: &Rep) -> bool {
    reject(x, m).rank() == 0
}

/// Convenience: wrap an owned algebra.
pub fn alg_ref(a: Algebra) -> AlgRef {
    Arc::new(a)
}

/// Image of a vector under a matrix, re-exported for callers building maps row by row.
pub fn apply(v: &[Elem], h: &Mat) -> Vec<Elem> {
    vec_mat(v, h)
}

#[cfg(test)]
mod tests;
