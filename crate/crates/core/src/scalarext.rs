//! Scalar extension `− ⊗_k K` along `F_q ⊂ F_{q^m}` and restriction back, with the induced
//! maps on τ-rigid pairs, torsion classes and semibricks, and the compatibility checks
//! between the two τ-tilting theories.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{tensor_up_with, AlgRef};
use crate::bits::{self, IndSet};
use crate::error::{Error, Result};
use crate::gf::{embedding, lin_comb, FieldEmbedding, Mat};
use crate::rat;
use crate::rep::{decompose, Key, Rep};
use crate::tau::{InvPair, Pair, TauTilting};
use crate::tors::{filt, is_semibrick, left_finite_semibrick, right_finite_semibrick};

/// One named check with an optional witness of failure.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }

    pub fn push(&mut self, name: &'static str, witness: Option<String>) {
        self.checks.push(Check { name, ok: witness.is_none(), witness });
    }
}

pub struct ExtensionContext {
    pub emb: FieldEmbedding,
    pub base: TauTilting,
    pub big: TauTilting,
    /// `d[i][j]`: multiplicity of the `i`-th projective of `Λ_K` in `(P_j)_K`.
    pub d: Vec<Vec<i64>>,
    /// `r[i][j] = [S'_j|_Λ : S_i]`.
    pub r: Vec<Vec<usize>>,
    ext_key: Vec<Key>,
}

impl ExtensionContext {
    pub fn new(alg: &AlgRef, m: u32) -> Result<ExtensionContext> {
        let emb = embedding(alg.field(), m)?;
        let big_alg = Arc::new(tensor_up_with(alg, &emb)?);
        let base = TauTilting::of_algebra(alg)?;
        let big = TauTilting::of_algebra(&big_alg)?;
        let mut ctx = ExtensionContext { emb, base, big, d: Vec::new(), r: Vec::new(), ext_key: Vec::new() };
        let mut keys = Vec::new();
        for i in 0..ctx.base.len() {
            keys.push(ctx.big.catalog().key(&ctx.extend_rep(ctx.base.catalog().ind(i)))?);
        }
        ctx.ext_key = keys;
        let (n, nk) = (ctx.base.rank(), ctx.big.rank());
        let bc = ctx.big.catalog();
        ctx.d = (0..nk)
            .map(|i| (0..n).map(|j| ctx.ext_key[ctx.base.catalog().proj_index(j)][bc.proj_index(i)] as i64).collect())
            .collect();
        let mut r = vec![vec![0; nk]; n];
        for j in 0..nk {
            let c = ctx.restrict_rep(bc.cat().simple(j)).class();
            for i in 0..n {
                r[i][j] = c[i];
            }
        }
        ctx.r = r;
        Ok(ctx)
    }

    pub fn degree(&self) -> u32 {
        self.emb.m as u32
    }

    /// `M_K`, with the change of basis (rows: graded basis of `M_K` in the coordinates of
    /// `M ⊗ K`).
    pub fn extend_rep_with_basis(&self, m: &Rep) -> (Rep, Mat) {
        let big = self.big.alg();
        let bf = big.field().clone();
        let acts: Vec<Mat> = m.basis_action().iter().map(|a| self.emb.embed_mat(a)).collect();
        let d = m.dim();
        let gens = big.generators().iter().map(|g| lin_comb(&bf, g, &acts, d, d)).collect();
        Rep::build(big, gens)
    }

    pub fn extend_rep(&self, m: &Rep) -> Rep {
        self.extend_rep_with_basis(m).0
    }

    /// `M'|_Λ`: every entry replaced by its regular representation over the small field.
    pub fn restrict_rep(&self, m: &Rep) -> Rep {
        let base = self.base.alg();
        let f = base.field().clone();
        let acts: Vec<Mat> = m.basis_action().iter().map(|a| self.emb.restrict_mat(a)).collect();
        let d = m.dim() * self.emb.m;
        let gens = base.generators().iter().map(|g| lin_comb(&f, g, &acts, d, d)).collect();
        Rep::build(base, gens).0
    }

    /// Catalogue key of `(X_i)_K`.
    pub fn ext_key(&self, i: usize) -> &Key {
        &self.ext_key[i]
    }

    /// Indecomposable summands of `(⊕_{i∈s} X_i)_K`.
    pub fn ext_support(&self, s: IndSet) -> IndSet {
        bits::members(s).into_iter().fold(0, |acc, i| acc | bits::set_of(self.big.catalog().key_support(&self.ext_key[i])))
    }

    fn ext_support_of(&self, v: &[usize]) -> Vec<usize> {
        bits::members(self.ext_support(bits::set_of(v.iter().copied())))
    }

    /// Vertices of `Λ_K` whose projectives are summands of `(⊕_{v∈p} P_v)_K`.
    fn lift_vertices(&self, p: &[usize]) -> Vec<usize> {
        (0..self.big.rank()).filter(|&i| p.iter().any(|&v| self.d[i][v] > 0)).collect()
    }

    /// `(M_K^b, P_K^b)`.
    pub fn lift_pair(&self, p: &Pair) -> Result<Pair> {
        if !self.base.is_tau_rigid_pair(p) {
            return Err(Error::Input("pair is not τ-rigid".into()));
        }
        Ok(Pair::new(self.ext_support_of(&p.m), self.lift_vertices(&p.p)))
    }

    /// `(N_K^b, Q_K^b)` for a τ⁻¹-rigid pair, injectives by vertex.
    pub fn lift_inv_pair(&self, p: &InvPair) -> InvPair {
        let bc = self.big.catalog();
        let inj_sup = self.ext_support(bits::set_of(p.q.iter().map(|&v| self.base.catalog().inj_index(v))));
        let mut q: Vec<usize> = (0..self.big.rank()).filter(|&i| bits::has(inj_sup, bc.inj_index(i))).collect();
        q.sort_unstable();
        InvPair { n: self.ext_support_of(&p.n), q }
    }

    /// `T_K = Fac N_K` for a torsion class `T = Fac N` of `Λ`.
    pub fn lift_torsion(&self, t: IndSet) -> Result<IndSet> {
        let s = self.base.stt_index_of_fac(t).ok_or_else(|| Error::Input("not a torsion class".into()))?;
        Ok(self.big.fac_of(self.ext_support(self.base.stt_pair(s).m_set())))
    }

    /// `ind(B_K)` for a brick `B`.
    pub fn lift_brick(&self, i: usize) -> Result<IndSet> {
        if !crate::rep::is_brick(self.base.catalog().ind(i))? {
            return Err(Error::Input("not a brick".into()));
        }
        Ok(self.ext_support(1 << i))
    }

    /// Indecomposables of `T_K` that are not the extension of any indecomposable of `T`.
    pub fn summand_witnesses(&self, t: IndSet) -> Result<IndSet> {
        let tk = self.lift_torsion(t)?;
        let whole: BTreeSet<Key> = bits::members(t).into_iter().map(|i| self.ext_key[i].clone()).collect();
        Ok(bits::set_of(bits::members(tk).into_iter().filter(|&j| !whole.contains(&self.big.catalog().unit_key(j)))))
    }

    /// `D·g`.
    pub fn map_g(&self, g: &[i64]) -> Vec<i64> {
        self.d.iter().map(|row| row.iter().zip(g).map(|(a, b)| a * b).sum()).collect()
    }

    /// Ordered refinements of the lifted pieces of a TF-ordering that are TF-ordered.
    pub fn tf_refinements(&self, ord: &[usize]) -> Vec<Vec<usize>> {
        let pieces: Vec<Vec<usize>> = ord.iter().map(|&i| bits::members(self.ext_support(1 << i))).collect();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(ctx: &ExtensionContext, pieces: &[Vec<usize>], k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k == pieces.len() {
                if ctx.big.is_tf_ordered(cur) {
                    out.push(cur.clone());
                }
                return;
            }
            for perm in crate::algebra::permutations(pieces[k].len()) {
                let len = cur.len();
                cur.extend(perm.iter().map(|&i| pieces[k][i]));
                rec(ctx, pieces, k + 1, cur, out);
                cur.truncate(len);
            }
        }
        rec(self, &pieces, 0, &mut cur, &mut out);
        // pieces can share summands; only orderings of the basic module count
        out.retain(|o| o.iter().collect::<BTreeSet<_>>().len() == o.len());
        out
    }

    /// Run every compatibility check between the theories of `Λ` and `Λ_K`.
    pub fn verify(&self) -> Result<Report> {
        let mut rep = Report::default();
        let (b, g) = (&self.base, &self.big);
        let (bc, gc) = (b.catalog(), g.catalog());
        let k = b.len();
        let sup = |i: usize| self.ext_support(1 << i);
        let name = |i: usize| bc.name(i).to_string();

        // indecomposables share a summand after extension only if isomorphic
        let w = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).find(|&(i, j)| ((sup(i) & sup(j)) != 0) != (i == j));
        rep.push("common-summands", w.map(|(i, j)| format!("{} {}", name(i), name(j))));
        let w = (0..k).find_map(|i| {
            (0..k).flat_map(|a| (a..k).map(move |c| (a, c))).find(|&(a, c)| {
                let divides = i == a || i == c;
                divides != ((sup(i) & (sup(a) | sup(c))) != 0)
            })
            .map(|(a, c)| format!("{} in {}+{}", name(i), name(a), name(c)))
        });
        rep.push("summand-detection", w);

        // basic modules are determined by the summands of their extensions
        let cap = k.min(12);
        let mut seen = std::collections::BTreeMap::new();
        let mut w = None;
        for s in 0..1u64 << cap {
            if let Some(prev) = seen.insert(self.ext_support(s), s) {
                w = Some(format!("{} vs {}", bc.set_name(&bits::members(prev)), bc.set_name(&bits::members(s))));
                break;
            }
        }
        rep.push("basic-iso-reflection", w);
        let mut keyset = std::collections::BTreeMap::new();
        let mut w = None;
        for l in 0..=3 {
            for key in bc.keys_of_length(l) {
                let mut img = gc.zero_key();
                for (i, &c) in key.iter().enumerate() {
                    for (x, y) in img.iter_mut().zip(&self.ext_key[i]) {
                        *x += c * y;
                    }
                }
                if let Some(prev) = keyset.insert(img, key.clone()) {
                    w = Some(format!("{} vs {}", bc.key_name(&prev), bc.key_name(&key)));
                }
            }
        }
        rep.push("iso-reflection", w);
        // additivity on a sample of sums
        let mut w = None;
        for i in 0..k.min(4) {
            for j in i..k.min(4) {
                let s = Rep::direct_sum(&[bc.ind(i), bc.ind(j)]).0;
                let key = gc.key(&self.extend_rep(&s))?;
                let expect: Key = self.ext_key[i].iter().zip(&self.ext_key[j]).map(|(a, c)| a + c).collect();
                if key != expect {
                    w = Some(format!("{}+{}", name(i), name(j)));
                }
            }
        }
        rep.push("additivity", w);

        // common summands of sums
        let small: Vec<IndSet> = (0..k).map(|i| 1u64 << i).chain((0..k).flat_map(|i| (i + 1..k).map(move |j| (1u64 << i) | (1 << j)))).collect();
        let w = small.iter().flat_map(|&a| small.iter().map(move |&c| (a, c))).find(|&(a, c)| {
            self.ext_support(a & c) != self.ext_support(a) & self.ext_support(c)
        });
        rep.push("common-summands-of-sums", w.map(|(a, c)| format!("{a:b} {c:b}")));

        // projectives
        let proj_big: IndSet = bits::set_of((0..g.rank()).map(|i| gc.proj_index(i)));
        let w = (0..b.rank()).find(|&v| !bits::subset(sup(bc.proj_index(v)), proj_big));
        let covered = (0..g.rank()).all(|i| self.d[i].iter().any(|&x| x > 0));
        rep.push("projectives", if let Some(v) = w { Some(format!("P{v}")) } else if covered { None } else { Some("uncovered projective".into()) });

        // Hom and Ext dimensions
        let mut w = None;
        for i in 0..k {
            let xi = self.extend_rep(bc.ind(i));
            for j in 0..k {
                let xj = self.extend_rep(bc.ind(j));
                if crate::rep::hom_dim(&xi, &xj) != bc.homdim(i, j) || g.catalog().cat().ext1_dim(&xi, &xj) != b.ext_dim(i, j) {
                    w = Some(format!("{} {}", name(i), name(j)));
                }
            }
        }
        rep.push("hom-ext-dimensions", w);

        // radicals and socles
        let same_span = |a: &Mat, c: &Mat| a.rank() == c.rank() && a.vstack(c).rank() == a.rank();
        let alg_rad = self.emb.embed_mat(b.alg().radical());
        let mut w = if same_span(&alg_rad, g.alg().radical()) { None } else { Some("algebra radical".to_string()) };
        for i in 0..k {
            let x = bc.ind(i);
            let (xk, t) = self.extend_rep_with_basis(x);
            let tinv = t.inverse().expect("change of basis");
            let (_, rad) = x.radical();
            let (_, soc) = x.socle();
            let rad_k = self.emb.embed_mat(&rad).mul(&tinv);
            let soc_k = self.emb.embed_mat(&soc).mul(&tinv);
            if !same_span(&rad_k, &xk.radical().1) || !same_span(&soc_k, &xk.socle().1) {
                w = Some(name(i));
            }
        }
        rep.push("radical-socle", w);

        // restriction of extension, and restriction of summands
        let m = self.emb.m as u32;
        let mut w = None;
        for i in 0..k {
            let key = bc.key(&self.restrict_rep(&self.extend_rep(bc.ind(i))))?;
            let mut expect = bc.zero_key();
            expect[i] = m;
            if key != expect {
                w = Some(name(i));
            }
            for j in bits::members(sup(i)) {
                let kj = bc.key(&self.restrict_rep(gc.ind(j)))?;
                if kj.iter().enumerate().any(|(t, &c)| (t != i && c != 0) || (t == i && (c == 0 || c > m))) {
                    w = Some(format!("{} summand {}", name(i), gc.name(j)));
                }
            }
        }
        for j in 0..g.len() {
            let c = gc.ind(j).class();
            let rc: Vec<usize> = self.r.iter().map(|row| row.iter().zip(&c).map(|(a, x)| a * x).sum()).collect();
            if rc != self.restrict_rep(gc.ind(j)).class() {
                w = Some(format!("class of {}", gc.name(j)));
            }
        }
        rep.push("restriction", w);

        // Nakayama functor and τ
        let mut w = None;
        for i in 0..k {
            let x = bc.ind(i);
            let xk = self.extend_rep(x);
            let nu1 = gc.key(&self.extend_rep(&bc.cat().nakayama(x).rep))?;
            let nu2 = gc.key(&gc.cat().nakayama(&xk).rep)?;
            if nu1 != nu2 {
                w = Some(format!("ν {}", name(i)));
            }
            let t1 = gc.key(&self.extend_rep(&bc.cat().tau(x)))?;
            let t2 = gc.key(&gc.cat().tau(&xk))?;
            if t1 != t2 {
                w = Some(format!("τ {}", name(i)));
            }
        }
        rep.push("nakayama-and-tau", w);

        // τ-rigidity transfer, over pairs of at most two summands plus any projective part
        let mut w = None;
        for &s in &small {
            let ms = bits::members(s);
            for pv in 0..1u64 << b.rank() {
                let p = Pair::new(ms.clone(), bits::members(pv));
                let lifted = Pair::new(self.ext_support_of(&p.m), self.lift_vertices(&p.p));
                if b.is_tau_rigid_pair(&p) != g.is_tau_rigid_pair(&lifted) {
                    w = Some(format!("{p:?}"));
                }
            }
        }
        rep.push("tau-rigidity", w);

        let lifts: Vec<Pair> = b.pairs().iter().map(|p| self.lift_pair(p)).collect::<Result<_>>()?;
        let w = (0..b.stt_len()).find(|&s| {
            let q = self.lift_pair(b.stt_pair(s)).unwrap();
            !g.is_support_tau_tilting(&q)
        });
        rep.push("support-tau-tilting", w.map(|s| format!("{:?}", b.stt_pair(s))));
        let w = b.pairs().iter().find(|p| p.p.is_empty() && b.is_tilting(&p.m) && !g.is_tilting(&self.ext_support_of(&p.m)));
        rep.push("tilting", w.map(|p| format!("{p:?}")));

        // Fac inclusions among τ-rigid modules
        let mods: Vec<&Pair> = b.pairs().iter().filter(|p| p.p.is_empty()).collect();
        let w = mods.iter().flat_map(|a| mods.iter().map(move |c| (a, c))).find(|(a, c)| {
            let base_inc = bits::subset(b.fac_of(a.m_set()), b.fac_of(c.m_set()));
            let big_inc = bits::subset(g.fac_of(self.ext_support(a.m_set())), g.fac_of(self.ext_support(c.m_set())));
            base_inc != big_inc
        });
        rep.push("fac-inclusions", w.map(|(a, c)| format!("{a:?} {c:?}")));

        // embedding of posets
        let stt_img: Vec<usize> = (0..b.stt_len())
            .map(|s| g.stt_index(&self.lift_pair(b.stt_pair(s)).unwrap()).ok_or_else(|| Error::Check("lift not support τ-tilting".into())))
            .collect::<Result<_>>()?;
        let injective = stt_img.iter().collect::<BTreeSet<_>>().len() == stt_img.len();
        let order = (0..b.stt_len()).all(|x| {
            (0..b.stt_len()).all(|y| bits::subset(b.stt_fac(x), b.stt_fac(y)) == bits::subset(g.stt_fac(stt_img[x]), g.stt_fac(stt_img[y])))
        });
        rep.push("poset-embedding", if injective && order { None } else { Some(format!("{stt_img:?}")) });

        // torsion classes
        let mut w = None;
        for s in 0..b.stt_len() {
            if self.lift_torsion(b.stt_fac(s))? != g.stt_fac(stt_img[s]) {
                w = Some(format!("class {s}"));
            }
        }
        for p in &mods {
            let t = b.fac_of(p.m_set());
            if self.lift_torsion(t)? != g.fac_of(self.ext_support(p.m_set())) {
                w = Some(format!("{p:?}"));
            }
        }
        rep.push("torsion-lift", w);

        // H-map
        let w = (0..b.stt_len()).find(|&s| {
            let p = b.stt_pair(s);
            g.h_map(&self.lift_pair(p).unwrap()) != self.lift_inv_pair(&b.h_map(p))
        });
        rep.push("h-map", w.map(|s| format!("{:?}", b.stt_pair(s))));

        // g-vectors and cones
        let mut w = None;
        for i in 0..k {
            let direct = gc.cat().g_vector(&self.extend_rep(bc.ind(i)));
            let mapped = self.map_g(b.g_vector(i));
            let summed: Vec<i64> = (0..g.rank())
                .map(|v| self.ext_key[i].iter().enumerate().map(|(j, &c)| c as i64 * g.g_vector(j)[v]).sum())
                .collect();
            if direct != mapped || mapped != summed {
                w = Some(format!("g of {}", name(i)));
            }
        }
        let distinct = lifts.iter().collect::<BTreeSet<_>>().len() == lifts.len();
        if !distinct {
            w = Some("cone map not injective".into());
        }
        for (p, q) in b.pairs().iter().zip(&lifts) {
            let img: Vec<Vec<rat::Q>> = g.cone(q).iter().map(|c| rat::qvec(c)).collect();
            for gen in b.cone(p) {
                if !rat::in_cone(&img, &rat::qvec(&self.map_g(&gen))) {
                    w = Some(format!("cone of {p:?}"));
                }
            }
        }
        rep.push("g-fan", w);

        // completions and intervals
        let mut w = None;
        for (p, q) in b.pairs().iter().zip(&lifts) {
            if self.lift_pair(&b.cobongartz(p)?)? != g.cobongartz(q)? {
                w = Some(format!("co-Bongartz {p:?}"));
            }
            if self.lift_pair(&b.bongartz(p)?)? != g.bongartz(q)? {
                w = Some(format!("Bongartz {p:?}"));
            }
            if self.lift_torsion(b.u_class(p))? != g.u_class(q) || self.lift_torsion(b.t_class(p))? != g.t_class(q) {
                w = Some(format!("interval {p:?}"));
            }
        }
        rep.push("completions-and-intervals", w);

        // bricks and semibricks
        let bricks = crate::tors::bricks(b)?;
        let mut w = None;
        let mut images = BTreeSet::new();
        for i in bits::members(bricks) {
            let l = self.lift_brick(i)?;
            if !is_semibrick(g, l)? || !images.insert(l) {
                w = Some(name(i));
            }
            if crate::algebra::endomorphism_algebra(bc.ind(i), false)?.alg.dim() == 1 && bits::count(l) != 1 {
                w = Some(format!("{} with trivial endomorphisms splits", name(i)));
            }
        }
        for v in 0..b.rank() {
            let s = sup(bc.simple_index(v));
            if bits::members(s).iter().any(|&j| gc.ind(j).radical().0.dim() != 0) {
                w = Some(format!("S{v} not semisimple"));
            }
        }
        rep.push("bricks", w);
        let mut w = None;
        for p in b.pairs() {
            let l = self.ext_support(left_finite_semibrick(b, &p.m)?);
            if left_finite_semibrick(g, &self.ext_support_of(&p.m))? != l {
                w = Some(format!("left {p:?}"));
            }
        }
        for s in 0..b.stt_len() {
            let n = b.h_map(b.stt_pair(s)).n;
            if right_finite_semibrick(g, &self.ext_support_of(&n))? != self.ext_support(right_finite_semibrick(b, &n)?) {
                w = Some(format!("right {:?}", b.stt_pair(s)));
            }
        }
        rep.push("semibricks", w);

        // τ-perpendicular categories
        let mut w = None;
        for (p, q) in b.pairs().iter().zip(&lifts) {
            let (wb, wg) = (b.tau_perp(p), g.tau_perp(q));
            if (0..k).any(|i| bits::has(wb, i) != bits::subset(sup(i), wg)) {
                w = Some(format!("membership {p:?}"));
            }
            if filt(g, self.ext_support(b.relative_simples(wb))) != wg {
                w = Some(format!("simples {p:?}"));
            }
        }
        rep.push("perpendicular", w);

        // TF-orderings
        let mut w = None;
        for p in &mods {
            if p.m.len() != b.rank() {
                continue;
            }
            for ord in b.tf_orderings(&p.m) {
                let pieces: Vec<IndSet> = ord.iter().map(|&i| sup(i)).collect();
                if !g.is_weakly_tf_preordered(&pieces) || self.tf_refinements(&ord).is_empty() {
                    w = Some(format!("{ord:?}"));
                }
            }
        }
        rep.push("tf-orderings", w);

        // complete signed sequences inject
        let n = b.rank();
        let sb = b.exceptional_sequences(n, true)?.len();
        let sg = g.exceptional_sequences(g.rank(), true)?.len();
        rep.push("signed-sequence-count", if sb <= sg { None } else { Some(format!("{sb} > {sg}")) });
        Ok(rep)
    }

    /// Summands of the extension of each indecomposable, by name.
    pub fn lift_table(&self) -> Vec<(String, String)> {
        let (bc, gc) = (self.base.catalog(), self.big.catalog());
        (0..bc.len()).map(|i| (bc.name(i).to_string(), gc.key_name(&self.ext_key[i]))).collect()
    }
}

/// `M` decomposed after extension, for callers that want explicit summands.
pub fn extended_summands(ctx: &ExtensionContext, m: &Rep) -> Result<Vec<Rep>> {
    decompose(&ctx.extend_rep(m))
}
