//! Projectives, presentations, the Nakayama functor, Auslander–Reiten translates and Ext¹.

use super::{hom, Rep};
use crate::algebra::AlgRef;
use crate::error::{Error, Result};
use crate::gf::{Elem, Mat, RowCoords};

/// Cap on syzygy steps when computing projective dimensions.
pub const SYZYGY_CAP: usize = 16;

/// The indecomposable projectives, simples and injectives of an algebra, plus the
/// same data for the opposite algebra (used for τ⁻¹ by duality).
pub struct ModCat {
    alg: AlgRef,
    proj: Vec<Rep>,
    proj_coords: Vec<RowCoords>,
    proj_basis: Vec<Mat>,
    left_mult: Vec<Mat>,
    simple: Vec<Rep>,
    inj: Vec<Rep>,
    op: Option<Box<ModCat>>,
}

#[derive(Clone, Debug)]
pub struct ProjCover {
    /// Vertex of each indecomposable summand, in the order they were chosen.
    pub tops: Vec<usize>,
    pub rep: Rep,
    /// `dim P × dim M`.
    pub map: Mat,
}

/// Minimal projective presentation `P¹ → P⁰ → M → 0`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p0: ProjCover,
    pub omega: Rep,
    /// `dim Ω × dim P⁰`.
    pub omega_incl: Mat,
    pub p1: ProjCover,
    /// `dim P¹ × dim P⁰`.
    pub d: Mat,
}

/// `ν X = D Hom(X, A)`, with the Hom bases used for the dual basis.
pub struct Nakayama {
    pub rep: Rep,
    homs: Vec<Vec<Mat>>,
    coords: Vec<Option<RowCoords>>,
    off: Vec<usize>,
}

/// `Ext¹(M, N)` realized as `Hom(ΩM, N)` modulo maps extending to `P⁰`.
#[derive(Clone, Debug)]
pub struct Ext1 {
    pub pres: Presentation,
    pub n: Rep,
    /// Representative cocycles `ΩM → N`, a basis of the quotient.
    pub cocycles: Vec<Mat>,
}

impl Ext1 {
    pub fn dim(&self) -> usize {
        self.cocycles.len()
    }

    /// Middle term of the extension with the given class coordinates:
    /// returns `E`, the map `N → E` and the map `E → M`.
    pub fn middle_term(&self, coeffs: &[Elem]) -> (Rep, Mat, Mat) {
        let f = self.n.field().clone();
        let p0 = &self.pres.p0;
        let om = &self.pres.omega;
        let mut class = Mat::zeros(&f, om.dim(), self.n.dim());
        for (c, z) in coeffs.iter().zip(&self.cocycles) {
            class.axpy(*c, z);
        }
        let (sum, inj, proj) = Rep::direct_sum_maps(&[&p0.rep, &self.n]);
        let rel = self.pres.omega_incl.mul(&inj[0]).sub(&class.mul(&inj[1]));
        let (e, q, sec) = sum.quotient(&rel);
        let n_to_e = inj[1].mul(&q);
        let e_to_m = sec.mul(&proj[0]).mul(&p0.map);
        (e, n_to_e, e_to_m)
    }
}

pub struct TauData {
    pub rep: Rep,
    /// `dim τX × dim νP¹`.
    incl: Mat,
    pres: Presentation,
    n1: Nakayama,
}

pub struct TauInvData {
    pub rep: Rep,
    op_data: TauData,
}

fn flatten(h: &Mat) -> Vec<Elem> {
    h.data().to_vec()
}

/// Coefficients `c` with `Σ c_l g(basis_l) = target`, combined back into `Σ c_l basis_l`.
pub fn solve_in_span(
    basis: &[Mat],
    shape: (usize, usize),
    target: &Mat,
    g: impl Fn(&Mat) -> Mat,
) -> Option<Mat> {
    let f = target.field().clone();
    if target.is_zero() {
        return Some(Mat::zeros(&f, shape.0, shape.1));
    }
    if basis.is_empty() {
        return None;
    }
    let rows: Vec<Vec<Elem>> = basis.iter().map(|b| flatten(&g(b))).collect();
    let a = Mat::from_rows(&f, rows[0].len(), &rows);
    let c = a.solve_left(&flatten(target))?;
    let mut out = Mat::zeros(&f, basis[0].rows(), basis[0].cols());
    for (x, b) in c.iter().zip(basis) {
        out.axpy(*x, b);
    }
    Some(out)
}

impl ModCat {
    pub fn new(alg: &AlgRef) -> Result<ModCat> {
        let mut cat = ModCat::core(alg)?;
        let op = std::sync::Arc::new(alg.opposite()?);
        cat.op = Some(Box::new(ModCat::core(&op)?));
        Ok(cat)
    }

    fn core(alg: &AlgRef) -> Result<ModCat> {
        let f = alg.field().clone();
        let n = alg.num_vertices();
        let mut proj = Vec::new();
        let mut proj_coords = Vec::new();
        let mut proj_basis = Vec::new();
        for i in 0..n {
            let mut b = Mat::zeros(&f, 0, alg.dim());
            for k in 0..n {
                b = b.vstack(&alg.corner(i, k));
            }
            let rc = RowCoords::new(&b);
            let gens: Vec<Mat> = alg
                .generators()
                .iter()
                .map(|g| {
                    let rows: Vec<Vec<Elem>> = (0..b.rows()).map(|r| rc.coords(&alg.mul(b.row(r), g))).collect();
                    Mat::from_rows(&f, b.rows(), &rows)
                })
                .collect();
            let (p, t) = Rep::build(alg, gens);
            if t != Mat::identity(&f, b.rows()) {
                return Err(Error::Check("projective basis not graded".into()));
            }
            proj.push(p);
            proj_coords.push(rc);
            proj_basis.push(b);
        }
        let left_mult: Vec<Mat> = alg
            .generators()
            .iter()
            .zip(alg.generator_corners())
            .map(|(g, &(i, j))| {
                let b = &proj_basis[j];
                let rows: Vec<Vec<Elem>> =
                    (0..b.rows()).map(|r| proj_coords[i].coords(&alg.mul(g, b.row(r)))).collect();
                Mat::from_rows(&f, proj_basis[i].rows(), &rows)
            })
            .collect();
        let simple = proj.iter().map(|p| p.top().0).collect();
        let mut cat = ModCat { alg: alg.clone(), proj, proj_coords, proj_basis, left_mult, simple, inj: Vec::new(), op: None };
        cat.inj = (0..n).map(|i| cat.nakayama(&cat.proj[i]).rep).collect();
        Ok(cat)
    }

    pub fn alg(&self) -> &AlgRef {
        &self.alg
    }
    pub fn num_vertices(&self) -> usize {
        self.alg.num_vertices()
    }
    pub fn projective(&self, i: usize) -> &Rep {
        &self.proj[i]
    }
    pub fn simple(&self, i: usize) -> &Rep {
        &self.simple[i]
    }
    pub fn injective(&self, i: usize) -> &Rep {
        &self.inj[i]
    }
    pub fn op(&self) -> &ModCat {
        self.op.as_deref().expect("opposite category built by ModCat::new")
    }
    /// Basis of `P_i = e_i A` as algebra elements (rows).
    pub fn projective_basis(&self, i: usize) -> &Mat {
        &self.proj_basis[i]
    }
    /// Coordinates of an algebra element of `e_i A` in the basis of `P_i`.
    pub fn projective_coords(&self, i: usize, a: &[Elem]) -> Vec<Elem> {
        self.proj_coords[i].coords(a)
    }
    /// The regular module `⊕ P_i`.
    pub fn regular(&self) -> Rep {
        let parts: Vec<&Rep> = self.proj.iter().collect();
        Rep::direct_sum(&parts).0
    }
    /// `⊕_i P_i^{mult_i}`.
    pub fn projective_sum(&self, mult: &[usize]) -> Rep {
        let parts: Vec<&Rep> = mult.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat(&self.proj[i]).take(m)).collect();
        if parts.is_empty() {
            Rep::zero(&self.alg)
        } else {
            Rep::direct_sum(&parts).0
        }
    }

    /// The map `P_i → M` sending `e_i` to `v ∈ M e_i`.
    pub fn proj_map(&self, i: usize, v: &[Elem], acts: &[Mat], m: &Rep) -> Mat {
        let b = &self.proj_basis[i];
        let f = self.alg.field();
        let rows: Vec<Vec<Elem>> =
            (0..b.rows()).map(|r| crate::gf::vec_mat(v, &m.act_with(acts, b.row(r)))).collect();
        if rows.is_empty() {
            return Mat::zeros(f, 0, m.dim());
        }
        Mat::from_rows(f, m.dim(), &rows)
    }

    pub fn projective_cover(&self, m: &Rep) -> ProjCover {
        let f = self.alg.field().clone();
        let acts = m.basis_action();
        let mut s = m.radical_rows();
        let mut tops = Vec::new();
        let mut maps = Vec::new();
        for i in 0..self.num_vertices() {
            for r in m.offsets()[i]..m.offsets()[i + 1] {
                if s.rows() == m.dim() {
                    break;
                }
                let mut v = vec![0; m.dim()];
                v[r] = 1;
                if s.row_space_contains(&Mat::row_vec(&f, &v)) {
                    continue;
                }
                let pm = self.proj_map(i, &v, &acts, m);
                s = s.vstack(&pm).row_basis();
                tops.push(i);
                maps.push(pm);
            }
        }
        if tops.is_empty() {
            return ProjCover { tops, rep: Rep::zero(&self.alg), map: Mat::zeros(&f, 0, m.dim()) };
        }
        let parts: Vec<&Rep> = tops.iter().map(|&i| &self.proj[i]).collect();
        let (p, t) = Rep::direct_sum(&parts);
        let mut concat = Mat::zeros(&f, 0, m.dim());
        for pm in &maps {
            concat = concat.vstack(pm);
        }
        ProjCover { tops, rep: p, map: t.mul(&concat) }
    }

    /// Syzygy `ΩM` with its inclusion into the projective cover.
    pub fn syzygy(&self, m: &Rep) -> (ProjCover, Rep, Mat) {
        let cover = self.projective_cover(m);
        let ker = cover.map.left_kernel();
        let (om, incl) = cover.rep.sub(&ker);
        (cover, om, incl)
    }

    pub fn min_presentation(&self, m: &Rep) -> Presentation {
        let (p0, omega, omega_incl) = self.syzygy(m);
        let p1 = self.projective_cover(&omega);
        let d = p1.map.mul(&omega_incl);
        Presentation { p0, omega, omega_incl, p1, d }
    }

    /// `g^M = [P⁰] − [P¹]` in the basis of indecomposable projectives.
    pub fn g_vector(&self, m: &Rep) -> Vec<i64> {
        let pres = self.min_presentation(m);
        let mut g = vec![0i64; self.num_vertices()];
        for &i in &pres.p0.tops {
            g[i] += 1;
        }
        for &i in &pres.p1.tops {
            g[i] -= 1;
        }
        g
    }

    /// Multiplicities of the indecomposable projectives in a projective module's top.
    pub fn top_vector(&self, m: &Rep) -> Vec<usize> {
        let mut v = vec![0; self.num_vertices()];
        for &i in &self.projective_cover(m).tops {
            v[i] += 1;
        }
        v
    }

    pub fn is_projective(&self, m: &Rep) -> bool {
        self.projective_cover(m).rep.dim() == m.dim()
    }

    pub fn is_injective(&self, m: &Rep) -> bool {
        let op = self.op();
        op.is_projective(&m.dual(op.alg()))
    }

    /// Projective dimension, or `None` if no syzygy vanishes within the cap.
    pub fn proj_dim(&self, m: &Rep) -> Option<usize> {
        let mut x = m.clone();
        for k in 0..=SYZYGY_CAP {
            let (_, om, _) = self.syzygy(&x);
            if om.dim() == 0 {
                return Some(k);
            }
            x = om;
        }
        None
    }

    /// Global dimension (maximum over simples), or `None` beyond the syzygy cap.
    pub fn gl_dim(&self) -> Option<usize> {
        let mut best = 0;
        for s in &self.simple {
            best = best.max(self.proj_dim(s)?);
        }
        Some(best)
    }

    /// `Ext²(S_i, S_j) = 0` for all simples, i.e. every simple has projective dimension ≤ 1.
    pub fn is_hereditary(&self) -> bool {
        self.simple.iter().all(|s| {
            let (_, om, _) = self.syzygy(s);
            self.is_projective(&om)
        })
    }

    pub fn nakayama(&self, x: &Rep) -> Nakayama {
        let alg = &self.alg;
        let f = alg.field().clone();
        let n = self.num_vertices();
        let mut homs = Vec::new();
        let mut coords = Vec::new();
        let mut off = vec![0];
        for i in 0..n {
            let h = hom(x, &self.proj[i]);
            off.push(off[i] + h.len());
            coords.push(if h.is_empty() {
                None
            } else {
                let rows: Vec<Vec<Elem>> = h.iter().map(flatten).collect();
                Some(RowCoords::new(&Mat::from_rows(&f, rows[0].len(), &rows)))
            });
            homs.push(h);
        }
        let total = off[n];
        let gens: Vec<Mat> = alg
            .generator_corners()
            .iter()
            .enumerate()
            .map(|(t, &(i, j))| {
                let mut lam = Mat::zeros(&f, total, total);
                for (l, fj) in homs[j].iter().enumerate() {
                    let g = fj.mul(&self.left_mult[t]);
                    if g.is_zero() {
                        continue;
                    }
                    let c = coords[i].as_ref().expect("nonzero image in Hom(X, P_i)").coords(&flatten(&g));
                    for (k, &ck) in c.iter().enumerate() {
                        lam.set(off[j] + l, off[i] + k, ck);
                    }
                }
                lam.transpose()
            })
            .collect();
        let (rep, t) = Rep::build(alg, gens);
        debug_assert!(t == Mat::identity(&f, total));
        Nakayama { rep, homs, coords, off }
    }

    /// `ν(u) : νX → νY` for `u : X → Y`.
    pub fn nakayama_map(&self, u: &Mat, nx: &Nakayama, ny: &Nakayama) -> Mat {
        let f = self.alg.field().clone();
        let mut c = Mat::zeros(&f, ny.rep.dim(), nx.rep.dim());
        for i in 0..self.num_vertices() {
            for (l, fy) in ny.homs[i].iter().enumerate() {
                let g = u.mul(fy);
                if g.is_zero() {
                    continue;
                }
                let co = nx.coords[i].as_ref().expect("nonzero image in Hom(X, P_i)").coords(&flatten(&g));
                for (k, &ck) in co.iter().enumerate() {
                    c.set(ny.off[i] + l, nx.off[i] + k, ck);
                }
            }
        }
        c.transpose()
    }

    /// Auslander–Reiten translate `τM = ker(νP¹ → νP⁰)`.
    pub fn tau(&self, m: &Rep) -> Rep {
        let pres = self.min_presentation(m);
        if pres.p1.rep.dim() == 0 {
            return Rep::zero(&self.alg);
        }
        let n1 = self.nakayama(&pres.p1.rep);
        let n0 = self.nakayama(&pres.p0.rep);
        let nd = self.nakayama_map(&pres.d, &n1, &n0);
        n1.rep.sub(&nd.left_kernel()).0
    }

    /// `τM` together with its realization inside `νP¹`, for functoriality.
    pub fn tau_data(&self, m: &Rep) -> TauData {
        let pres = self.min_presentation(m);
        let n1 = self.nakayama(&pres.p1.rep);
        let n0 = self.nakayama(&pres.p0.rep);
        let nd = self.nakayama_map(&pres.d, &n1, &n0);
        let (rep, incl) = if n1.rep.dim() == 0 { (Rep::zero(&self.alg), Mat::zeros(self.alg.field(), 0, 0)) } else { n1.rep.sub(&nd.left_kernel()) };
        TauData { rep, incl, pres, n1 }
    }

    /// `τ(v) : τX → τY` for `v : X → Y`, by lifting `v` through the minimal presentations.
    pub fn tau_map(&self, tx: &TauData, ty: &TauData, v: &Mat) -> Result<Mat> {
        let f = self.alg.field().clone();
        if tx.rep.dim() == 0 || ty.rep.dim() == 0 {
            return Ok(Mat::zeros(&f, tx.rep.dim(), ty.rep.dim()));
        }
        let (px, py) = (&tx.pres, &ty.pres);
        // φ0 : P⁰_X → P⁰_Y with φ0·π_Y = π_X·v
        let target0 = px.p0.map.mul(v);
        let shape0 = (px.p0.rep.dim(), py.p0.rep.dim());
        let phi0 = solve_in_span(&hom(&px.p0.rep, &py.p0.rep), shape0, &target0, |h| h.mul(&py.p0.map))
            .ok_or_else(|| Error::Check("no lift through projective covers".into()))?;
        // φ1 : P¹_X → P¹_Y with φ1·d_Y = d_X·φ0
        let target1 = px.d.mul(&phi0);
        let shape1 = (px.p1.rep.dim(), py.p1.rep.dim());
        let phi1 = solve_in_span(&hom(&px.p1.rep, &py.p1.rep), shape1, &target1, |h| h.mul(&py.d))
            .ok_or_else(|| Error::Check("no lift through syzygies".into()))?;
        let nphi = self.nakayama_map(&phi1, &tx.n1, &ty.n1);
        let img = tx.incl.mul(&nphi);
        let rc = RowCoords::new(&ty.incl);
        let rows: Vec<Vec<Elem>> = (0..img.rows())
            .map(|r| rc.try_coords(img.row(r)).ok_or_else(|| Error::Check("image outside τY".into())))
            .collect::<Result<_>>()?;
        Ok(Mat::from_rows(&f, ty.rep.dim(), &rows))
    }

    /// `τ⁻¹M` realized as `D τ_{op} D M`.
    pub fn tau_inv_data(&self, m: &Rep) -> TauInvData {
        let op = self.op();
        let dm = m.dual(op.alg());
        let t = op.tau_data(&dm);
        let rep = t.rep.dual(&self.alg);
        TauInvData { rep, op_data: t }
    }

    /// `τ⁻¹(u) : τ⁻¹X → τ⁻¹Y` for `u : X → Y`.
    pub fn tau_inv_map(&self, tx: &TauInvData, ty: &TauInvData, u: &Mat) -> Result<Mat> {
        let v = self.op().tau_map(&ty.op_data, &tx.op_data, &u.transpose())?;
        Ok(v.transpose())
    }

    /// `τ⁻¹M = D τ_{op} D M`.
    pub fn tau_inv(&self, m: &Rep) -> Rep {
        let op = self.op();
        let t = op.tau(&m.dual(op.alg()));
        t.dual(&self.alg)
    }

    pub fn ext1(&self, m: &Rep, n: &Rep) -> Ext1 {
        let f = self.alg.field().clone();
        let pres = self.min_presentation(m);
        let hs = hom(&pres.omega, n);
        let width = pres.omega.dim() * n.dim();
        let mut span = Mat::zeros(&f, 0, width);
        if width > 0 {
            for h in hom(&pres.p0.rep, n) {
                span = span.vstack(&Mat::row_vec(&f, &flatten(&pres.omega_incl.mul(&h))));
            }
        }
        span = span.row_basis();
        let mut cocycles = Vec::new();
        for h in hs {
            let row = Mat::row_vec(&f, &flatten(&h));
            if span.row_space_contains(&row) {
                continue;
            }
            span = span.vstack(&row).row_basis();
            cocycles.push(h);
        }
        Ext1 { pres, n: n.clone(), cocycles }
    }

    pub fn ext1_dim(&self, m: &Rep, n: &Rep) -> usize {
        self.ext1(m, n).dim()
    }
}
