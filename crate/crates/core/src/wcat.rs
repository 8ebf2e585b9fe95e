//! The τ-cluster morphism category in its interval model, and its image under scalar
//! extension.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::bits::{self, IndSet};
use crate::error::{Error, Result};
use crate::scalarext::{ExtensionContext, Report};
use crate::tau::{Pair, TauTilting};
use crate::tors::{self, Lattice};

/// A morphism class: source and target objects and `U_2 ∩ W_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorKey {
    pub src: usize,
    pub dst: usize,
    pub key: IndSet,
}

pub struct WCat {
    /// Distinct τ-perpendicular subcategories, sorted.
    objects: Vec<IndSet>,
    pairs: Vec<Pair>,
    obj_of: Vec<usize>,
    u: Vec<IndSet>,
    t: Vec<IndSet>,
    morphisms: Vec<MorKey>,
    index: BTreeMap<MorKey, usize>,
    /// Containments `[U_q, T_q] ⊆ [U_p, T_p]` representing each morphism.
    reps: Vec<Vec<(usize, usize)>>,
    comp: BTreeMap<(usize, usize), usize>,
}

impl WCat {
    pub fn new(t: &TauTilting) -> Result<WCat> {
        let pairs = t.pairs().to_vec();
        let u: Vec<IndSet> = pairs.iter().map(|p| t.u_class(p)).collect();
        let tt: Vec<IndSet> = pairs.iter().map(|p| t.t_class(p)).collect();
        let w: Vec<IndSet> = pairs.iter().map(|p| t.tau_perp(p)).collect();
        let objects: Vec<IndSet> = w.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let obj_of: Vec<usize> = w.iter().map(|x| objects.binary_search(x).unwrap()).collect();

        let mut index = BTreeMap::new();
        let mut morphisms = Vec::new();
        let mut reps: Vec<Vec<(usize, usize)>> = Vec::new();
        for a in 0..pairs.len() {
            for b in 0..pairs.len() {
                if !(bits::subset(u[a], u[b]) && bits::subset(tt[b], tt[a])) {
                    continue;
                }
                let k = MorKey { src: obj_of[a], dst: obj_of[b], key: u[b] & w[a] };
                let id = *index.entry(k).or_insert_with(|| {
                    morphisms.push(k);
                    reps.push(Vec::new());
                    morphisms.len() - 1
                });
                reps[id].push((a, b));
            }
        }
        let mut c = WCat { objects, pairs, obj_of, u, t: tt, morphisms, index, reps, comp: BTreeMap::new() };
        c.build_composition()?;
        Ok(c)
    }

    fn contains(&self, a: usize, b: usize) -> bool {
        bits::subset(self.u[a], self.u[b]) && bits::subset(self.t[b], self.t[a])
    }

    fn key_of(&self, a: usize, b: usize) -> MorKey {
        MorKey { src: self.obj_of[a], dst: self.obj_of[b], key: self.u[b] & self.objects[self.obj_of[a]] }
    }

    /// Every factorisation `p ≤ q ≤ r` through representatives must give the same class.
    fn build_composition(&mut self) -> Result<()> {
        let n = self.morphisms.len();
        for f in 0..n {
            for g in 0..n {
                if self.morphisms[f].dst != self.morphisms[g].src {
                    continue;
                }
                let mut results = BTreeSet::new();
                for &(p, q) in &self.reps[f] {
                    for &(q2, r) in &self.reps[g] {
                        if q2 == q {
                            results.insert(self.index[&self.key_of(p, r)]);
                        }
                    }
                }
                match results.len() {
                    1 => {
                        self.comp.insert((f, g), *results.iter().next().unwrap());
                    }
                    0 => return Err(Error::Check(format!("morphisms {f} and {g} have no common factorisation"))),
                    _ => return Err(Error::Check(format!("composite of {f} and {g} depends on representatives"))),
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &[IndSet] {
        &self.objects
    }
    pub fn morphisms(&self) -> &[MorKey] {
        &self.morphisms
    }
    pub fn representatives(&self, f: usize) -> &[(usize, usize)] {
        &self.reps[f]
    }
    pub fn pair(&self, i: usize) -> &Pair {
        &self.pairs[i]
    }
    pub fn object_of_pair(&self, i: usize) -> usize {
        self.obj_of[i]
    }
    /// Interval `[U, T]` of the `i`-th τ-rigid pair.
    pub fn interval(&self, i: usize) -> (IndSet, IndSet) {
        (self.u[i], self.t[i])
    }
    pub fn object_index(&self, w: IndSet) -> Option<usize> {
        self.objects.binary_search(&w).ok()
    }
    pub fn morphism_index(&self, k: &MorKey) -> Option<usize> {
        self.index.get(k).copied()
    }
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&f| self.morphisms[f].src == a && self.morphisms[f].dst == b).collect()
    }
    pub fn identity(&self, a: usize) -> usize {
        self.index[&MorKey { src: a, dst: a, key: 0 }]
    }
    /// `g ∘ f`.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.comp.get(&(f, g)).copied()
    }

    pub fn check_category(&self) -> bool {
        let n = self.morphisms.len();
        for a in 0..self.objects.len() {
            let Some(&id) = self.index.get(&MorKey { src: a, dst: a, key: 0 }) else { return false };
            if self.hom(a, a) != vec![id] {
                return false;
            }
        }
        for f in 0..n {
            let m = self.morphisms[f];
            if self.compose(self.identity(m.src), f) != Some(f) || self.compose(f, self.identity(m.dst)) != Some(f) {
                return false;
            }
            for g in 0..n {
                let Some(gf) = self.compose(f, g) else { continue };
                for h in 0..n {
                    if let Some(hg) = self.compose(g, h) {
                        if self.compose(gf, h) != self.compose(f, hg) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Interval containment between τ-rigid pairs is the same as being a summand.
    pub fn check_containment_is_inclusion(&self) -> bool {
        (0..self.pairs.len())
            .all(|a| (0..self.pairs.len()).all(|b| self.contains(a, b) == self.pairs[a].is_sub_of(&self.pairs[b])))
    }

    /// Non-identity morphisms that are not composites of two non-identities.
    pub fn irreducible(&self) -> Vec<usize> {
        let non_id: Vec<usize> = (0..self.morphisms.len()).filter(|&f| self.morphisms[f].src != self.morphisms[f].dst).collect();
        let composite: BTreeSet<usize> =
            non_id.iter().flat_map(|&f| non_id.iter().filter_map(move |&g| self.compose(f, g))).collect();
        non_id.into_iter().filter(|f| !composite.contains(f)).collect()
    }

    pub fn to_dot(&self, t: &TauTilting) -> String {
        let cat = t.catalog();
        let mut s = String::from("digraph wcat {\n  rankdir=TB;\n");
        for (i, &w) in self.objects.iter().enumerate() {
            let simples = bits::members(t.relative_simples(w));
            let label = if w == t.all() { "mod".to_string() } else { format!("Filt({})", cat.set_name(&simples)) };
            let _ = writeln!(s, "  w{i} [label=\"{label}\"];");
        }
        for f in self.irreducible() {
            let m = self.morphisms[f];
            let _ = writeln!(s, "  w{} -> w{} [label=\"{}\"];", m.src, m.dst, cat.set_name(&bits::members(m.key)));
        }
        s.push_str("}\n");
        s
    }
}

/// The six equivalent identifications of two representatives with equal end objects,
/// each computed directly.
fn conditions(lat: &Lattice, c: &WCat, a: usize, b: usize) -> Result<[Vec<IndSet>; 6]> {
    let w = c.objects[c.obj_of[a]];
    let (u, tt) = (c.u[b], c.t[b]);
    let lu = lat.index_of(u).ok_or_else(|| Error::Check("interval bottom is not a class".into()))?;
    let lt = lat.index_of(tt).ok_or_else(|| Error::Check("interval top is not a class".into()))?;
    let whole: BTreeSet<IndSet> =
        lat.classes().iter().filter(|&&x| bits::subset(u, x) && bits::subset(x, tt)).map(|&x| x & w).collect();
    Ok([
        whole.into_iter().collect(),
        vec![u & w, tt & w],
        vec![u & w],
        vec![tt & w],
        vec![lat.up_labels(lu) & w],
        vec![lat.down_labels(lt) & w],
    ])
}

/// For all pairs of representatives with the same end objects, conditions (1) through
/// (6) either all hold or all fail.
pub fn check_identifications(lat: &Lattice, c: &WCat) -> Result<bool> {
    let all: Vec<(usize, usize)> = c.reps.iter().flatten().copied().collect();
    let mut by_ends: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for &(a, b) in &all {
        by_ends.entry((c.obj_of[a], c.obj_of[b])).or_default().push((a, b));
    }
    for group in by_ends.values() {
        let conds: Vec<[Vec<IndSet>; 6]> = group.iter().map(|&(a, b)| conditions(lat, c, a, b)).collect::<Result<_>>()?;
        for i in 0..group.len() {
            for j in 0..i {
                let v: Vec<bool> = (0..6).map(|k| conds[i][k] == conds[j][k]).collect();
                if v.iter().any(|&x| x != v[0]) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Each object is a wide subcategory, generated by its relative simples.
pub fn check_objects(t: &TauTilting, c: &WCat) -> Result<bool> {
    for &w in c.objects() {
        if !t.check_wide(w)? || tors::filt(t, t.relative_simples(w)) != w {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The functor induced by `- ⊗_k K`.
pub struct Functor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

pub fn functor(ctx: &ExtensionContext, base: &WCat, big: &WCat) -> Result<Functor> {
    let lifted: Vec<Pair> = base.pairs.iter().map(|p| ctx.lift_pair(p)).collect::<Result<_>>()?;
    let big_index: BTreeMap<&Pair, usize> = big.pairs.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let image: Vec<usize> = lifted
        .iter()
        .map(|p| big_index.get(p).copied().ok_or_else(|| Error::Check("lifted pair is not τ-rigid".into())))
        .collect::<Result<_>>()?;

    let mut objects = vec![usize::MAX; base.objects.len()];
    for (i, &o) in base.obj_of.iter().enumerate() {
        let img = big.obj_of[image[i]];
        if objects[o] != usize::MAX && objects[o] != img {
            return Err(Error::Check("object image depends on the representative".into()));
        }
        objects[o] = img;
    }
    let mut morphisms = Vec::with_capacity(base.morphisms.len());
    for reps in &base.reps {
        let mut img = BTreeSet::new();
        for &(a, b) in reps {
            let (x, y) = (image[a], image[b]);
            if !big.contains(x, y) {
                return Err(Error::Check("lifted intervals are not nested".into()));
            }
            img.insert(big.index[&big.key_of(x, y)]);
        }
        if img.len() != 1 {
            return Err(Error::Check("morphism image depends on the representative".into()));
        }
        morphisms.push(*img.iter().next().unwrap());
    }
    Ok(Functor { objects, morphisms })
}

/// Functoriality, faithfulness and transport of relative simples.
pub fn verify_functor(ctx: &ExtensionContext) -> Result<Report> {
    let (base, big) = (WCat::new(&ctx.base)?, WCat::new(&ctx.big)?);
    let f = functor(ctx, &base, &big)?;
    let mut rep = Report::default();

    let w = (0..base.objects.len()).find(|&a| f.morphisms[base.identity(a)] != big.identity(f.objects[a]));
    rep.push("identities", w.map(|a| format!("object {a}")));

    let mut w = None;
    for (&(g, h), &gh) in &base.comp {
        if big.compose(f.morphisms[g], f.morphisms[h]) != Some(f.morphisms[gh]) {
            w = Some(format!("morphisms {g}, {h}"));
        }
    }
    rep.push("composition", w);

    let mut w = None;
    for a in 0..base.objects.len() {
        for b in 0..base.objects.len() {
            let hs = base.hom(a, b);
            let imgs: BTreeSet<usize> = hs.iter().map(|&m| f.morphisms[m]).collect();
            if imgs.len() != hs.len() {
                w = Some(format!("hom({a}, {b})"));
            }
        }
    }
    rep.push("faithful", w);

    // distinct morphisms in a hom-set have distinct T ∩ W, and the lifts keep them apart
    let mut w = None;
    for a in 0..base.objects.len() {
        for b in 0..base.objects.len() {
            let hs = base.hom(a, b);
            let top = |m: usize| {
                let (p, q) = base.reps[m][0];
                base.t[q] & base.objects[base.obj_of[p]]
            };
            for i in 0..hs.len() {
                for j in 0..i {
                    if top(hs[i]) == top(hs[j]) {
                        w = Some(format!("hom({a}, {b})"));
                    }
                }
            }
        }
    }
    rep.push("distinct-top-data", w);

    let mut w = None;
    for (a, &wa) in base.objects.iter().enumerate() {
        let s = ctx.base.relative_simples(wa);
        if tors::filt(&ctx.big, ctx.ext_support(s)) != big.objects[f.objects[a]] {
            w = Some(ctx.base.catalog().set_name(&bits::members(wa)));
        }
    }
    rep.push("perpendicular-transport", w);
    Ok(rep)
}
