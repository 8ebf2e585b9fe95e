//! King stability: semistability through explicit submodule sweeps, wall cones, and the
//! pullback of stability conditions along scalar extension.

use std::collections::BTreeSet;

use num::integer::gcd;
use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, Q};
use crate::rep::{Rep, SUBMODULE_CAP};
use crate::scalarext::{ExtensionContext, Report};
use crate::tau::TauTilting;

/// A linear form on the Grothendieck group, one coordinate per simple.
pub type Theta = Vec<Q>;

pub fn theta(v: &[i64]) -> Theta {
    rat::qvec(v)
}

/// `θ([M])` for a class vector.
pub fn pairing(th: &[Q], class: &[usize]) -> Q {
    th.iter().zip(class).map(|(a, &c)| *a * rat::q(c as i64)).sum()
}

/// Composition vectors of all submodules (including `0` and `M`).
pub fn submodule_classes(m: &Rep) -> Result<Vec<Vec<usize>>> {
    Ok(m.submodules(SUBMODULE_CAP)?.iter().map(|u| m.sub(u).0.class()).collect())
}

pub fn submodule_dim_vectors(m: &Rep) -> Result<BTreeSet<Vec<usize>>> {
    Ok(submodule_classes(m)?.into_iter().collect())
}

pub fn is_semistable(m: &Rep, th: &[Q]) -> Result<bool> {
    if pairing(th, &m.class()) != Q::zero() {
        return Ok(false);
    }
    Ok(submodule_classes(m)?.iter().all(|c| !pairing(th, c).is_positive()))
}

/// Semistable with `θ(L) < 0` for every nonzero proper submodule.
pub fn is_stable(m: &Rep, th: &[Q]) -> Result<bool> {
    if m.dim() == 0 || pairing(th, &m.class()) != Q::zero() {
        return Ok(false);
    }
    let full = m.class();
    Ok(submodule_classes(m)?
        .iter()
        .filter(|c| c.iter().any(|&x| x > 0) && **c != full)
        .all(|c| pairing(th, c).is_negative()))
}

/// `Θ_M = {θ : θ([M]) = 0, θ([L]) ≤ 0 for every submodule L}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub eq: Vec<i64>,
    /// Primitive integer normals, sorted, without zero or multiples of `eq`.
    pub ineqs: Vec<Vec<i64>>,
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |a, &b| gcd(a, b));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

impl Wall {
    pub fn of(m: &Rep) -> Result<Wall> {
        if m.dim() == 0 {
            return Err(Error::Input("walls are defined for nonzero modules".into()));
        }
        let eq: Vec<i64> = m.class().iter().map(|&x| x as i64).collect();
        let pe = primitive(&eq);
        let mut set = BTreeSet::new();
        for c in submodule_classes(m)? {
            let v: Vec<i64> = c.iter().map(|&x| x as i64).collect();
            let p = primitive(&v);
            if p.iter().all(|&x| x == 0) || p == pe {
                continue;
            }
            set.insert(p);
        }
        Ok(Wall { eq, ineqs: set.into_iter().collect() })
    }

    pub fn contains(&self, th: &[Q]) -> bool {
        rat::dot(th, &rat::qvec(&self.eq)).is_zero() && self.ineqs.iter().all(|l| !rat::dot(th, &rat::qvec(l)).is_positive())
    }

    /// Normals whose nonnegative span, together with `±eq`, is the dual cone.
    fn dual_generators(&self) -> Vec<Vec<Q>> {
        let e = rat::qvec(&self.eq);
        let mut g: Vec<Vec<Q>> = self.ineqs.iter().map(|l| rat::qvec(l)).collect();
        g.push(e.clone());
        g.push(e.iter().map(|x| -*x).collect());
        g
    }

    /// Whether `{Aθ : θ ∈ self}` lies in `other`; `a[j][i]` is the coefficient of `θ_i`
    /// in `(Aθ)_j`. Farkas: each defining form of `other`, pulled back, must lie in the
    /// polar cone of `self`.
    pub fn image_inside(&self, a_t: &[Vec<Q>], other: &Wall) -> bool {
        let pull = |f: &[Q]| -> Vec<Q> {
            let n = a_t.first().map_or(0, |r| r.len());
            (0..n).map(|i| a_t.iter().zip(f).map(|(row, x)| row[i] * *x).sum()).collect()
        };
        let gens = self.dual_generators();
        let eq = rat::qvec(&other.eq);
        let neg: Vec<Q> = eq.iter().map(|x| -*x).collect();
        let ok_eq = rat::in_cone(&gens, &pull(&eq)) && rat::in_cone(&gens, &pull(&neg));
        ok_eq && other.ineqs.iter().all(|l| rat::in_cone(&gens, &pull(&rat::qvec(l))))
    }
}

/// All integer points of `[-r, r]^n`.
pub fn grid(n: usize, r: i64) -> Vec<Theta> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (-r..=r).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out.iter().map(|v| theta(v)).collect()
}

/// `θ|^*_Λ`: the form `[M'] ↦ θ([M'|_Λ])` on the classes of `Λ_K`.
pub fn pullback(ctx: &ExtensionContext, th: &[Q]) -> Theta {
    let nk = ctx.big.rank();
    (0..nk).map(|j| ctx.r.iter().zip(th).map(|(row, x)| *x * rat::q(row[j] as i64)).sum()).collect()
}

/// Matrix of the pullback, one row per coordinate of `Λ_K`.
pub fn pullback_matrix(ctx: &ExtensionContext) -> Vec<Vec<Q>> {
    let n = ctx.base.rank();
    (0..ctx.big.rank()).map(|j| (0..n).map(|i| rat::q(ctx.r[i][j] as i64)).collect()).collect()
}

/// The stability condition `⟨g, −⟩` in class coordinates.
pub fn theta_of_g(t: &TauTilting, g: &[Q]) -> Theta {
    let alg = t.alg();
    g.iter().enumerate().map(|(j, x)| *x * rat::q(alg.simple_dim(j) as i64)).collect()
}

/// Walls of every catalogued indecomposable.
pub fn walls(t: &TauTilting) -> Result<Vec<Wall>> {
    t.catalog().inds().iter().map(Wall::of).collect()
}

/// Interior points of maximal g-cones make no indecomposable semistable, and wall
/// membership agrees with the direct test on the grid.
pub fn check_chambers(t: &TauTilting) -> Result<bool> {
    let ws = walls(t)?;
    for s in 0..t.stt_len() {
        let cone = t.cone(t.stt_pair(s));
        let g: Vec<Q> = (0..t.rank()).map(|v| rat::q(cone.iter().map(|c| c[v]).sum())).collect();
        let th = theta_of_g(t, &g);
        for (i, w) in ws.iter().enumerate() {
            if w.contains(&th) || is_semistable(t.catalog().ind(i), &th)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Sampled closure of each wall under addition and positive scaling, and agreement of
/// the H-description with the submodule test.
pub fn check_walls(t: &TauTilting, r: i64) -> Result<bool> {
    let pts = grid(t.rank(), r);
    for (i, w) in walls(t)?.iter().enumerate() {
        let x = t.catalog().ind(i);
        let mut inside = Vec::new();
        for th in &pts {
            let c = w.contains(th);
            if c != is_semistable(x, th)? {
                return Ok(false);
            }
            if c {
                inside.push(th.clone());
            }
        }
        if !w.contains(&vec![Q::zero(); t.rank()]) {
            return Ok(false);
        }
        for a in &inside {
            let scaled: Theta = a.iter().map(|v| *v * rat::q(3)).collect();
            if !w.contains(&scaled) {
                return Ok(false);
            }
            for b in &inside {
                let sum: Theta = a.iter().zip(b).map(|(p, q)| *p + *q).collect();
                if !w.contains(&sum) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Submodules of `M` and quotients of `M` (submodules of the dual) are equinumerous.
pub fn check_sub_quotient_symmetry(t: &TauTilting) -> Result<bool> {
    let op = t.catalog().cat().op().alg().clone();
    for x in t.catalog().inds() {
        if x.submodules(SUBMODULE_CAP)?.len() != x.dual(&op).submodules(SUBMODULE_CAP)?.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pairing scales by the degree, semistability transfers in both directions on the
/// grid `[-r, r]^n`, and walls map into walls.
pub fn verify_extension(ctx: &ExtensionContext, r: i64) -> Result<Report> {
    let mut rep = Report::default();
    let b = &ctx.base;
    let deg = rat::q(ctx.emb.m as i64);
    let mut pts = grid(b.rank(), r);
    // facet normals of the maximal g-cones
    for s in 0..b.stt_len() {
        let cone = b.cone(b.stt_pair(s));
        for drop in 0..cone.len() {
            let rows: Vec<Vec<Q>> = cone.iter().enumerate().filter(|(k, _)| *k != drop).map(|(_, c)| rat::qvec(c)).collect();
            for nrm in rat::nullspace(&rows, b.rank()) {
                pts.push(theta_of_g(b, &nrm));
            }
        }
    }
    let ext: Vec<Rep> = b.catalog().inds().iter().map(|x| ctx.extend_rep(x)).collect();
    let base_walls = walls(b)?;
    let ext_walls: Vec<Wall> = ext.iter().map(Wall::of).collect::<Result<_>>()?;

    let mut w = None;
    for th in &pts {
        let pb = pullback(ctx, th);
        for (i, x) in b.catalog().inds().iter().enumerate() {
            if pairing(&pb, &ext[i].class()) != deg * pairing(th, &x.class()) {
                w = Some(format!("{} at {:?}", b.catalog().name(i), th));
            }
        }
    }
    rep.push("pairing-scales", w);

    let mut w = None;
    for th in &pts {
        let pb = pullback(ctx, th);
        for i in 0..b.len() {
            if base_walls[i].contains(th) != ext_walls[i].contains(&pb) {
                w = Some(format!("{} at {:?}", b.catalog().name(i), th));
            }
        }
    }
    rep.push("semistability-transfer", w);

    let a = pullback_matrix(ctx);
    let w = (0..b.len()).find(|&i| !base_walls[i].image_inside(&a, &ext_walls[i]));
    rep.push("walls-embed", w.map(|i| b.catalog().name(i).to_string()));
    Ok(rep)
}
