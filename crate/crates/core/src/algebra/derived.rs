//! Algebras built from modules: endomorphism rings and preprojective algebras.

use std::sync::Arc;

use super::{AlgRef, Algebra, AlgebraData, Presentation};
use crate::error::{Error, Result};
use crate::gf::{Elem, Mat, RowCoords};
use crate::rep::{hom, ModCat, Rep, TauInvData};

/// Cap on the number of graded pieces of a preprojective algebra.
pub const PREPROJECTIVE_DEGREE_CAP: usize = 32;

/// `End(M)` (or its opposite) on the basis of a Hom space.
pub struct EndAlgebra {
    pub alg: AlgRef,
    /// Endomorphism matrices, one per algebra basis element.
    pub basis: Vec<Mat>,
    pub opposite: bool,
    coords: RowCoords,
}

fn flatten(h: &Mat) -> Vec<Elem> {
    h.data().to_vec()
}

/// Structure constants from a list of matrices closed under a product.
fn table_from(basis: &[Mat], coords: &RowCoords, prod: impl Fn(&Mat, &Mat) -> Mat) -> Vec<Elem> {
    let d = basis.len();
    let mut t = vec![0; d * d * d];
    for i in 0..d {
        for j in 0..d {
            let c = coords.coords(&flatten(&prod(&basis[i], &basis[j])));
            for (k, x) in c.into_iter().enumerate() {
                t[(i * d + j) * d + k] = x;
            }
        }
    }
    t
}

/// Endomorphism algebra of a nonzero module. The product is composition in diagrammatic
/// order (`a·b` = first `a`, then `b`), so `M` is a right module over it; with
/// `opposite` the product is reversed and `Hom(M, X)` becomes a right module.
pub fn endomorphism_algebra(m: &Rep, opposite: bool) -> Result<EndAlgebra> {
    if m.dim() == 0 {
        return Err(Error::Input("endomorphism algebra of the zero module".into()));
    }
    let f = m.field().clone();
    let basis = hom(m, m);
    let rows: Vec<Vec<Elem>> = basis.iter().map(flatten).collect();
    let coords = RowCoords::new(&Mat::from_rows(&f, rows[0].len(), &rows));
    let table = if opposite {
        table_from(&basis, &coords, |a, b| b.mul(a))
    } else {
        table_from(&basis, &coords, |a, b| a.mul(b))
    };
    let unit = coords.coords(&flatten(&Mat::identity(&f, m.dim())));
    let names = (0..basis.len()).map(|i| format!("h{i}")).collect();
    let alg = Algebra::assemble(AlgebraData {
        field: f,
        names,
        table,
        unit,
        idempotents: None,
        vertex_names: None,
        radical: None,
        presentation: Presentation::Derived(if opposite { "endomorphism-op" } else { "endomorphism" }.into()),
    })?;
    Ok(EndAlgebra { alg: Arc::new(alg), basis, opposite, coords })
}

impl EndAlgebra {
    /// The matrix of an algebra element.
    pub fn matrix(&self, x: &[Elem]) -> Mat {
        let (r, c) = (self.basis[0].rows(), self.basis[0].cols());
        crate::gf::lin_comb(self.alg.field(), x, &self.basis, r, c)
    }

    /// Coordinates of an endomorphism.
    pub fn coords(&self, h: &Mat) -> Vec<Elem> {
        self.coords.coords(&flatten(h))
    }

    /// `M` as a right module over `End(M)` (diagrammatic product only).
    pub fn tautological_module(&self) -> Result<Rep> {
        if self.opposite {
            return Err(Error::Input("M is a left module over the opposite endomorphism algebra".into()));
        }
        let gens = self.alg.generators().iter().map(|g| self.matrix(g)).collect();
        Ok(Rep::build(&self.alg, gens).0)
    }

    /// `Hom(M, X)` as a right module over `End(M)^op`, with the Hom basis used.
    pub fn hom_functor(&self, m: &Rep, x: &Rep) -> Result<(Rep, Vec<Mat>)> {
        if !self.opposite {
            return Err(Error::Input("Hom(M, -) needs the opposite endomorphism algebra".into()));
        }
        let f = x.field().clone();
        let hb = hom(m, x);
        if hb.is_empty() {
            return Ok((Rep::zero(&self.alg), hb));
        }
        let rows: Vec<Vec<Elem>> = hb.iter().map(flatten).collect();
        let rc = RowCoords::new(&Mat::from_rows(&f, rows[0].len(), &rows));
        let gens = self
            .alg
            .generators()
            .iter()
            .map(|g| {
                let gm = self.matrix(g);
                let rows: Vec<Vec<Elem>> = hb.iter().map(|h| rc.coords(&flatten(&gm.mul(h)))).collect();
                Mat::from_rows(&f, hb.len(), &rows)
            })
            .collect();
        let (rep, t) = Rep::build(&self.alg, gens);
        // re-express the Hom basis in the graded coordinates
        let basis = (0..t.rows())
            .map(|r| {
                let mut h = Mat::zeros(&f, m.dim(), x.dim());
                for (c, &coef) in t.row(r).iter().enumerate() {
                    h.axpy(coef, &hb[c]);
                }
                h
            })
            .collect();
        Ok((rep, basis))
    }
}

/// Graded preprojective algebra `⊕_i Hom(P, τ^{-i} P)` of a hereditary algebra.
pub struct Preprojective {
    pub alg: AlgRef,
    /// Dimension of each graded piece.
    pub degree_dims: Vec<usize>,
}

/// Product `u_r · u_s = τ^{-s}(u_r) ∘ u_s`, i.e. first `u_s : P → τ^{-s}P`, then
/// `τ^{-s}(u_r) : τ^{-s}P → τ^{-(r+s)}P`.
pub fn preprojective_algebra(cat: &ModCat, p: &Rep) -> Result<Preprojective> {
    if !cat.is_hereditary() {
        return Err(Error::Input("preprojective algebra needs a hereditary algebra".into()));
    }
    if !cat.is_projective(p) {
        return Err(Error::Input("preprojective algebra needs a projective module".into()));
    }
    let f = cat.alg().field().clone();
    // chain X_0 = P, X_{i+1} = τ^{-1} X_i
    let mut mods: Vec<Rep> = vec![p.clone()];
    let mut data: Vec<TauInvData> = Vec::new();
    loop {
        let d = cat.tau_inv_data(mods.last().unwrap());
        let next = d.rep.clone();
        data.push(d);
        if next.dim() == 0 {
            break;
        }
        if mods.len() > PREPROJECTIVE_DEGREE_CAP {
            return Err(Error::Cap("grading of the preprojective algebra does not terminate".into()));
        }
        mods.push(next);
    }
    let top = mods.len();
    let homs: Vec<Vec<Mat>> = mods.iter().map(|x| hom(p, x)).collect();
    let mut start = vec![0];
    for h in &homs {
        start.push(start.last().unwrap() + h.len());
    }
    let dim = start[top];
    let coords: Vec<Option<RowCoords>> = homs
        .iter()
        .map(|h| {
            if h.is_empty() {
                None
            } else {
                let rows: Vec<Vec<Elem>> = h.iter().map(flatten).collect();
                Some(RowCoords::new(&Mat::from_rows(&f, rows[0].len(), &rows)))
            }
        })
        .collect();
    // iterate τ^{-1} on a map X_a → X_b, s times
    let shift = |u: &Mat, a: usize, b: usize, s: usize| -> Result<Option<Mat>> {
        let mut u = u.clone();
        for t in 0..s {
            if b + t + 1 >= top {
                return Ok(None);
            }
            u = cat.tau_inv_map(&data[a + t], &data[b + t], &u)?;
        }
        Ok(Some(u))
    };
    let mut table = vec![0; dim * dim * dim];
    for r in 0..top {
        for (x, ur) in homs[r].iter().enumerate() {
            for s in 0..top {
                if r + s >= top {
                    continue;
                }
                for (y, us) in homs[s].iter().enumerate() {
                    let Some(sh) = shift(ur, 0, r, s)? else { continue };
                    let prod = us.mul(&sh);
                    if prod.is_zero() {
                        continue;
                    }
                    let c = coords[r + s].as_ref().expect("nonzero product").coords(&flatten(&prod));
                    let (i, j) = (start[r] + x, start[s] + y);
                    for (k, v) in c.into_iter().enumerate() {
                        table[(i * dim + j) * dim + start[r + s] + k] = v;
                    }
                }
            }
        }
    }
    let mut unit = vec![0; dim];
    if let Some(c0) = &coords[0] {
        for (k, v) in c0.coords(&flatten(&Mat::identity(&f, p.dim()))).into_iter().enumerate() {
            unit[k] = v;
        }
    }
    let names = (0..dim).map(|i| format!("u{i}")).collect();
    let alg = Algebra::assemble(AlgebraData {
        field: f,
        names,
        table,
        unit,
        idempotents: None,
        vertex_names: None,
        radical: None,
        presentation: Presentation::Derived("preprojective".into()),
    })?;
    Ok(Preprojective { alg: Arc::new(alg), degree_dims: homs.iter().map(|h| h.len()).collect() })
}
