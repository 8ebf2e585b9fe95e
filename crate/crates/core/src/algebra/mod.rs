//! Finite-dimensional algebras given by structure constants, built from bound quivers,
//! species over finite fields, scalar extension, endomorphism rings and preprojective
//! constructions.

pub mod derived;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use derived::{endomorphism_algebra, preprojective_algebra, EndAlgebra, Preprojective};

use crate::error::{Error, Result};
use crate::gf::{count_vectors, nth_vector, vec_add, vec_scale, Elem, Field, FieldEmbedding, Mat};

/// Cap on exhaustive scans over algebra elements.
pub const BRUTE_FORCE_CAP: u64 = 1 << 20;
/// Longest path considered before declaring a quotient infinite-dimensional.
pub const PATH_LENGTH_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: &[&str], arrows: &[(&str, usize, usize)]) -> Quiver {
        Quiver {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|&(n, s, t)| Arrow { name: n.to_string(), source: s, target: t })
                .collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut names = std::collections::HashSet::new();
        for a in &self.arrows {
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(Error::Input(format!("arrow {} references a missing vertex", a.name)));
            }
            if !names.insert(&a.name) {
                return Err(Error::Input(format!("duplicate arrow name {}", a.name)));
            }
        }
        Ok(())
    }

    /// Multiset of (source name, target name) pairs, sorted.
    pub fn arrow_multiset(&self) -> Vec<(String, String)> {
        let mut v: Vec<(String, String)> = self
            .arrows
            .iter()
            .map(|a| (self.vertices[a.source].clone(), self.vertices[a.target].clone()))
            .collect();
        v.sort();
        v
    }
}

/// A linear combination of paths; a path is a sequence of arrow indices read left to right.
pub type PathComb = Vec<(Elem, Vec<usize>)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpeciesVertex {
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpeciesArrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: u32,
    pub twist: u32,
}

/// Species over F_q: `D_a = F_{q^{d_a}}`, `X_α = F_{q^e}` with left action by multiplication
/// and right action twisted by the `twist`-th power of `z ↦ z^q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpeciesFq {
    pub vertices: Vec<SpeciesVertex>,
    pub arrows: Vec<SpeciesArrow>,
    /// Paths of this length and longer are set to zero.
    pub rad_power: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RTag {
    R,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BimoduleTag {
    Natural,
    Conjugate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RSpecies {
    pub vertices: Vec<(String, RTag)>,
    pub arrows: Vec<(String, usize, usize, BimoduleTag)>,
}

#[derive(Clone, Debug)]
pub enum Presentation {
    BoundQuiver { quiver: Quiver, relations: Vec<PathComb> },
    StructureConstants,
    Species(SpeciesFq),
    Derived(String),
}

impl Presentation {
    pub fn tag(&self) -> &'static str {
        match self {
            Presentation::BoundQuiver { .. } => "bound-quiver",
            Presentation::StructureConstants => "structure-constant",
            Presentation::Species(_) => "species",
            Presentation::Derived(_) => "derived",
        }
    }
}

/// A word in the generators with a coefficient.
pub type GenWord = (Elem, Vec<usize>);

pub struct Algebra {
    field: Field,
    names: Vec<String>,
    dim: usize,
    /// `prod[i*dim + j]` lists the nonzero `(k, c)` with `b_i b_j = Σ c b_k`.
    prod: Vec<Vec<(usize, Elem)>>,
    unit: Vec<Elem>,
    idempotents: Vec<Vec<Elem>>,
    vertex_names: Vec<String>,
    presentation: Presentation,
    radical: Mat,
    gens: Vec<Vec<Elem>>,
    gen_corner: Vec<(usize, usize)>,
    basis_words: Vec<Vec<GenWord>>,
}

pub type AlgRef = Arc<Algebra>;

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Algebra({} over {:?}, dim {}, {} idempotents)",
            self.presentation.tag(),
            self.field,
            self.dim,
            self.idempotents.len()
        )
    }
}

/// Raw ingredients for [`Algebra::assemble`].
pub struct AlgebraData {
    pub field: Field,
    pub names: Vec<String>,
    /// Dense `d × d × d` table: `table[(i*d + j)*d + k]` is the coefficient of `b_k` in `b_i b_j`.
    pub table: Vec<Elem>,
    pub unit: Vec<Elem>,
    pub idempotents: Option<Vec<Vec<Elem>>>,
    pub vertex_names: Option<Vec<String>>,
    pub radical: Option<Mat>,
    pub presentation: Presentation,
}

impl Algebra {
    /// Validate a structure-constant table and compute idempotents, radical and generators.
    pub fn assemble(data: AlgebraData) -> Result<Algebra> {
        let AlgebraData { field, names, table, unit, idempotents, vertex_names, radical, presentation } = data;
        let d = names.len();
        if table.len() != d * d * d || unit.len() != d {
            return Err(Error::Dim("structure-constant table does not match the basis".into()));
        }
        let mut prod = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let c = table[(i * d + j) * d + k];
                    if c != 0 {
                        prod[i * d + j].push((k, c));
                    }
                }
            }
        }
        let mut a = Algebra {
            field: field.clone(),
            names,
            dim: d,
            prod,
            unit,
            idempotents: Vec::new(),
            vertex_names: Vec::new(),
            presentation,
            radical: Mat::zeros(&field, 0, d),
            gens: Vec::new(),
            gen_corner: Vec::new(),
            basis_words: Vec::new(),
        };
        a.check_associative()?;
        a.check_unit()?;
        let idem = match idempotents {
            Some(v) => v,
            None => a.primitive_idempotents_search(vec![a.unit.clone()])?,
        };
        a.set_idempotents(idem)?;
        a.vertex_names = match vertex_names {
            Some(v) if v.len() == a.idempotents.len() => v,
            _ => (1..=a.idempotents.len()).map(|i| i.to_string()).collect(),
        };
        a.radical = match radical {
            Some(r) => r,
            None => a.compute_radical()?,
        };
        a.compute_generators();
        Ok(a)
    }

    fn check_associative(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for k in 0..d {
                    let left = self.mul(&ij, &self.basis_vec(k));
                    let jk = self.basis_product(j, k);
                    let right = self.mul(&self.basis_vec(i), &jk);
                    if left != right {
                        return Err(Error::Input(format!(
                            "multiplication is not associative on ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim {
            let b = self.basis_vec(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(Error::Input(format!("the given unit fails on {}", self.names[i])));
            }
        }
        Ok(())
    }

    fn set_idempotents(&mut self, idem: Vec<Vec<Elem>>) -> Result<()> {
        let f = &self.field;
        let mut sum = self.zero();
        for (i, e) in idem.iter().enumerate() {
            if e.len() != self.dim {
                return Err(Error::Dim("idempotent length".into()));
            }
            if self.mul(e, e) != *e || self.is_zero(e) {
                return Err(Error::Input(format!("element {i} is not a nonzero idempotent")));
            }
            for (j, e2) in idem.iter().enumerate() {
                if i != j && !self.is_zero(&self.mul(e, e2)) {
                    return Err(Error::Input(format!("idempotents {i} and {j} are not orthogonal")));
                }
            }
            sum = vec_add(f, &sum, e);
        }
        if sum != self.unit {
            return Err(Error::Input("idempotents do not sum to the unit".into()));
        }
        self.idempotents = idem;
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn unit(&self) -> &[Elem] {
        &self.unit
    }
    pub fn idempotents(&self) -> &[Vec<Elem>] {
        &self.idempotents
    }
    pub fn num_vertices(&self) -> usize {
        self.idempotents.len()
    }
    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }
    /// Basis of the Jacobson radical, as rows.
    pub fn radical(&self) -> &Mat {
        &self.radical
    }
    pub fn generators(&self) -> &[Vec<Elem>] {
        &self.gens
    }
    /// Corner `(i, j)` with `g ∈ e_i A e_j` for each generator.
    pub fn generator_corners(&self) -> &[(usize, usize)] {
        &self.gen_corner
    }
    /// Each basis element as a linear combination of words in the generators.
    pub fn basis_words(&self) -> &[Vec<GenWord>] {
        &self.basis_words
    }

    pub fn zero(&self) -> Vec<Elem> {
        vec![0; self.dim]
    }
    pub fn is_zero(&self, a: &[Elem]) -> bool {
        a.iter().all(|&x| x == 0)
    }
    pub fn basis_vec(&self, i: usize) -> Vec<Elem> {
        let mut v = self.zero();
        v[i] = 1;
        v
    }
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Elem> {
        let mut v = self.zero();
        for &(k, c) in &self.prod[i * self.dim + j] {
            v[k] = c;
        }
        v
    }
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Elem {
        self.prod[i * self.dim + j].iter().find(|&&(kk, _)| kk == k).map_or(0, |&(_, c)| c)
    }
    pub fn table(&self) -> Vec<Elem> {
        let d = self.dim;
        let mut t = vec![0; d * d * d];
        for i in 0..d {
            for j in 0..d {
                for &(k, c) in &self.prod[i * d + j] {
                    t[(i * d + j) * d + k] = c;
                }
            }
        }
        t
    }

    pub fn mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let d = self.dim;
        let mut r = vec![0; d];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let xy = f.mul(x, y);
                for &(k, c) in &self.prod[i * d + j] {
                    r[k] = f.add(r[k], f.mul(xy, c));
                }
            }
        }
        r
    }

    pub fn add(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        vec_add(&self.field, a, b)
    }
    pub fn sub(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| self.field.sub(x, y)).collect()
    }

    pub fn is_nilpotent(&self, a: &[Elem]) -> bool {
        let mut x = a.to_vec();
        for _ in 0..=self.dim {
            if self.is_zero(&x) {
                return true;
            }
            x = self.mul(&x, a);
        }
        self.is_zero(&x)
    }

    /// Matrix of `x ↦ x·a` on row vectors of coordinates.
    pub fn right_mult_matrix(&self, a: &[Elem]) -> Mat {
        let mut m = Mat::zeros(&self.field, self.dim, self.dim);
        for i in 0..self.dim {
            let r = self.mul(&self.basis_vec(i), a);
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }
    /// Matrix of `x ↦ a·x` on row vectors of coordinates.
    pub fn left_mult_matrix(&self, a: &[Elem]) -> Mat {
        let mut m = Mat::zeros(&self.field, self.dim, self.dim);
        for i in 0..self.dim {
            let r = self.mul(a, &self.basis_vec(i));
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// Basis (rows) of `e_i A e_j`.
    pub fn corner(&self, i: usize, j: usize) -> Mat {
        let ei = &self.idempotents[i];
        let ej = &self.idempotents[j];
        let rows: Vec<Vec<Elem>> =
            (0..self.dim).map(|k| self.mul(&self.mul(ei, &self.basis_vec(k)), ej)).collect();
        Mat::from_rows(&self.field, self.dim, &rows).row_basis()
    }

    /// Basis (rows) of the right ideal `e_i A`.
    pub fn right_ideal(&self, i: usize) -> Mat {
        let ei = &self.idempotents[i];
        let rows: Vec<Vec<Elem>> = (0..self.dim).map(|k| self.mul(ei, &self.basis_vec(k))).collect();
        Mat::from_rows(&self.field, self.dim, &rows).row_basis()
    }

    /// All elements of the span of `basis` (rows), if within the brute-force cap.
    fn span_elements(&self, basis: &Mat) -> Result<Vec<Vec<Elem>>> {
        let n = count_vectors(&self.field, basis.rows())
            .filter(|&n| n <= BRUTE_FORCE_CAP)
            .ok_or_else(|| Error::Cap(format!("{}^{} elements exceed the brute-force cap", self.field.q(), basis.rows())))?;
        Ok((0..n)
            .map(|t| {
                let c = nth_vector(&self.field, basis.rows(), t);
                let mut v = self.zero();
                for (s, &cs) in c.iter().enumerate() {
                    if cs != 0 {
                        v = vec_add(&self.field, &v, &vec_scale(&self.field, basis.row(s), cs));
                    }
                }
                v
            })
            .collect())
    }

    /// Refine the given orthogonal idempotents into primitive ones by exhaustive search
    /// inside each corner `eAe`.
    pub fn primitive_idempotents_search(&self, start: Vec<Vec<Elem>>) -> Result<Vec<Vec<Elem>>> {
        let mut out = Vec::new();
        let mut stack: Vec<Vec<Elem>> = start.into_iter().rev().collect();
        while let Some(e) = stack.pop() {
            let rows: Vec<Vec<Elem>> =
                (0..self.dim).map(|k| self.mul(&self.mul(&e, &self.basis_vec(k)), &e)).collect();
            let corner = Mat::from_rows(&self.field, self.dim, &rows).row_basis();
            let split = self
                .span_elements(&corner)?
                .into_iter()
                .find(|x| !self.is_zero(x) && *x != e && self.mul(x, x) == *x);
            match split {
                Some(x) => {
                    let rest = self.sub(&e, &x);
                    stack.push(rest);
                    stack.push(x);
                }
                None => out.push(e),
            }
        }
        Ok(out)
    }

    /// Radical via local corner algebras: `rad(e_i A e_i)` are the nilpotents (found by
    /// exhaustive scan) and `e_i rad e_j = {u : u·e_jAe_i ⊆ rad(e_iAe_i)}`.
    pub fn compute_radical(&self) -> Result<Mat> {
        let f = &self.field;
        let n = self.num_vertices();
        let mut local_rad = Vec::with_capacity(n);
        for i in 0..n {
            let c = self.corner(i, i);
            let elems = self.span_elements(&c)?;
            let nil: Vec<Vec<Elem>> = elems.into_iter().filter(|x| self.is_nilpotent(x)).collect();
            let count = nil.len() as u64;
            let basis = if nil.is_empty() {
                Mat::zeros(f, 0, self.dim)
            } else {
                Mat::from_rows(f, self.dim, &nil).row_basis()
            };
            if count_vectors(f, basis.rows()) != Some(count) {
                return Err(Error::Check(format!("nilpotents of corner {i} do not form a subspace")));
            }
            local_rad.push(basis);
        }
        let mut rows: Vec<Vec<Elem>> = Vec::new();
        for i in 0..n {
            rows.extend(local_rad[i].row_list());
            let perp = local_rad[i].kernel();
            let perp = if local_rad[i].rows() == 0 { Mat::identity(f, self.dim) } else { perp };
            for j in 0..n {
                if i == j {
                    continue;
                }
                let u = self.corner(i, j);
                if u.rows() == 0 {
                    continue;
                }
                let v = self.corner(j, i);
                // unknowns c_s; equations: for each v_t and perp vector w: Σ c_s (u_s v_t)·w = 0
                let mut eqs: Vec<Vec<Elem>> = Vec::new();
                for t in 0..v.rows() {
                    let prods: Vec<Vec<Elem>> = (0..u.rows()).map(|s| self.mul(u.row(s), v.row(t))).collect();
                    for w in 0..perp.rows() {
                        let eq: Vec<Elem> = prods
                            .iter()
                            .map(|p| {
                                p.iter().zip(perp.row(w)).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
                            })
                            .collect();
                        eqs.push(eq);
                    }
                }
                let sol = if eqs.is_empty() {
                    Mat::identity(f, u.rows())
                } else {
                    Mat::from_rows(f, u.rows(), &eqs).kernel()
                };
                for s in 0..sol.rows() {
                    let mut x = self.zero();
                    for (k, &c) in sol.row(s).iter().enumerate() {
                        x = vec_add(f, &x, &vec_scale(f, u.row(k), c));
                    }
                    rows.push(x);
                }
            }
        }
        if rows.is_empty() {
            return Ok(Mat::zeros(f, 0, self.dim));
        }
        Ok(Mat::from_rows(f, self.dim, &rows).row_basis())
    }

    /// Radical as the set `{x : x·a nilpotent for all a}` by full enumeration.
    pub fn radical_brute_force(&self) -> Result<Mat> {
        let all = self.span_elements(&Mat::identity(&self.field, self.dim))?;
        let basis: Vec<Vec<Elem>> = (0..self.dim).map(|i| self.basis_vec(i)).collect();
        // x·a nilpotent for all a is checked on all elements a.
        let mut rad = Vec::new();
        for x in &all {
            if !self.is_nilpotent(x) {
                continue;
            }
            let mut ok = true;
            for a in all.iter().chain(basis.iter()) {
                if !self.is_nilpotent(&self.mul(x, a)) {
                    ok = false;
                    break;
                }
            }
            if ok {
                rad.push(x.clone());
            }
        }
        if rad.is_empty() {
            return Ok(Mat::zeros(&self.field, 0, self.dim));
        }
        Ok(Mat::from_rows(&self.field, self.dim, &rad).row_basis())
    }

    /// Greedy homogeneous generating set: idempotents first, then corner basis vectors
    /// not already in the generated subalgebra.
    fn compute_generators(&mut self) {
        let f = self.field.clone();
        let n = self.num_vertices();
        let mut gens: Vec<Vec<Elem>> = Vec::new();
        let mut corners: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            gens.push(self.idempotents[i].clone());
            corners.push((i, i));
        }
        let mut span = self.word_closure(&gens);
        'outer: for i in 0..n {
            for j in 0..n {
                let c = self.corner(i, j);
                for s in 0..c.rows() {
                    if span.0.rows() == self.dim {
                        break 'outer;
                    }
                    let v = c.row(s).to_vec();
                    let test = Mat::from_rows(&f, self.dim, &[v.clone()]);
                    if span.0.row_space_contains(&test) {
                        continue;
                    }
                    gens.push(v);
                    corners.push((i, j));
                    span = self.word_closure(&gens);
                }
            }
        }
        let (elems, words) = span;
        // Express each basis vector through the independent word elements.
        let mut basis_words = Vec::with_capacity(self.dim);
        for k in 0..self.dim {
            let c = elems.solve_left(&self.basis_vec(k)).expect("generators span the algebra");
            let comb: Vec<GenWord> =
                c.iter().enumerate().filter(|(_, &x)| x != 0).map(|(t, &x)| (x, words[t].clone())).collect();
            basis_words.push(comb);
        }
        self.gens = gens;
        self.gen_corner = corners;
        self.basis_words = basis_words;
    }

    /// Span of all words in `gens` (including the empty word = unit): independent elements and
    /// their words.
    fn word_closure(&self, gens: &[Vec<Elem>]) -> (Mat, Vec<Vec<usize>>) {
        let f = &self.field;
        let mut elems: Vec<Vec<Elem>> = vec![self.unit.clone()];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut basis = Mat::from_rows(f, self.dim, &elems);
        let mut frontier = 0;
        while frontier < elems.len() {
            let x = elems[frontier].clone();
            let w = words[frontier].clone();
            frontier += 1;
            for (gi, g) in gens.iter().enumerate() {
                let y = self.mul(&x, g);
                if self.is_zero(&y) {
                    continue;
                }
                let test = Mat::from_rows(f, self.dim, &[y.clone()]);
                if basis.row_space_contains(&test) {
                    continue;
                }
                basis = basis.vstack(&test);
                elems.push(y);
                let mut nw = w.clone();
                nw.push(gi);
                words.push(nw);
            }
        }
        (Mat::from_rows(f, self.dim, &elems), words)
    }

    /// Evaluate a word combination given matrices for the generators.
    pub fn eval_words(&self, words: &[GenWord], gen_mats: &[Mat], size: usize) -> Mat {
        let f = &self.field;
        let mut r = Mat::zeros(f, size, size);
        for (c, w) in words {
            let mut m = Mat::identity(f, size);
            for &g in w {
                m = m.mul(&gen_mats[g]);
            }
            r.axpy(*c, &m);
        }
        r
    }

    /// The opposite algebra (transposed structure constants).
    pub fn opposite(&self) -> Result<Algebra> {
        let d = self.dim;
        let t = self.table();
        let mut top = vec![0; d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    top[(i * d + j) * d + k] = t[(j * d + i) * d + k];
                }
            }
        }
        Algebra::assemble(AlgebraData {
            field: self.field.clone(),
            names: self.names.clone(),
            table: top,
            unit: self.unit.clone(),
            idempotents: Some(self.idempotents.clone()),
            vertex_names: Some(self.vertex_names.clone()),
            radical: Some(self.radical.clone()),
            presentation: Presentation::Derived("opposite".into()),
        })
    }

    /// Dimension of the simple top `e_i A / e_i rad A` over the field.
    pub fn simple_dim(&self, i: usize) -> usize {
        let c = self.corner(i, i);
        let r = self.radical_corner(i, i);
        c.rows() - r.rows()
    }

    /// Basis of `e_i rad(A) e_j`.
    pub fn radical_corner(&self, i: usize, j: usize) -> Mat {
        let f = &self.field;
        let ei = &self.idempotents[i];
        let ej = &self.idempotents[j];
        let rows: Vec<Vec<Elem>> =
            (0..self.radical.rows()).map(|k| self.mul(&self.mul(ei, self.radical.row(k)), ej)).collect();
        if rows.is_empty() {
            return Mat::zeros(f, 0, self.dim);
        }
        Mat::from_rows(f, self.dim, &rows).row_basis()
    }

    /// Whether the idempotent list is primitive (no proper idempotent in any corner).
    pub fn idempotents_primitive(&self) -> Result<bool> {
        for e in &self.idempotents {
            if self.primitive_idempotents_search(vec![e.clone()])?.len() != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Path algebra of a quiver modulo homogeneous relations.
pub fn path_algebra(field: &Field, quiver: &Quiver, relations: &[PathComb]) -> Result<Algebra> {
    quiver.validate()?;
    let nv = quiver.vertices.len();
    let arrows = &quiver.arrows;
    let path_ok = |p: &[usize]| p.windows(2).all(|w| arrows[w[0]].target == arrows[w[1]].source);
    let mut rels: Vec<(usize, usize, usize, &PathComb)> = Vec::new();
    for (ri, r) in relations.iter().enumerate() {
        let terms: Vec<&(Elem, Vec<usize>)> = r.iter().filter(|(c, _)| *c != 0).collect();
        if terms.is_empty() {
            continue;
        }
        let len = terms[0].1.len();
        let (s, t) = (arrows[terms[0].1[0]].source, arrows[*terms[0].1.last().unwrap()].target);
        for (_, p) in &terms {
            if p.iter().any(|&a| a >= arrows.len()) || !path_ok(p) {
                return Err(Error::Input(format!("relation {ri} contains an invalid path")));
            }
            if p.len() != len {
                return Err(Error::Input(format!("relation {ri} is not homogeneous in path length")));
            }
            if arrows[p[0]].source != s || arrows[*p.last().unwrap()].target != t {
                return Err(Error::Input(format!("relation {ri} mixes endpoints")));
            }
        }
        if len < 2 {
            return Err(Error::Input(format!("relation {ri} is not admissible (length < 2)")));
        }
        rels.push((len, s, t, r));
    }

    // paths[l] = list of paths of length l >= 1
    let mut paths: Vec<Vec<Vec<usize>>> = vec![Vec::new(), (0..arrows.len()).map(|a| vec![a]).collect()];
    // quotient data per length: (basis paths, reduction of every path to quotient coords)
    let mut qbasis: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    let mut reduce: Vec<HashMap<Vec<usize>, Vec<Elem>>> = vec![HashMap::new()];
    let mut len = 1;
    loop {
        if len > PATH_LENGTH_CAP {
            return Err(Error::Cap("quotient does not become finite-dimensional within the path length cap".into()));
        }
        let ps = paths[len].clone();
        let index: HashMap<&Vec<usize>, usize> = ps.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut rows: Vec<Vec<Elem>> = Vec::new();
        for &(rl, s, t, r) in &rels {
            if rl > len {
                continue;
            }
            for a in 0..=(len - rl) {
                let b = len - rl - a;
                let prefixes: Vec<Vec<usize>> = if a == 0 {
                    vec![vec![]]
                } else {
                    paths[a].iter().filter(|p| arrows[*p.last().unwrap()].target == s).cloned().collect()
                };
                let suffixes: Vec<Vec<usize>> = if b == 0 {
                    vec![vec![]]
                } else {
                    paths[b].iter().filter(|p| arrows[p[0]].source == t).cloned().collect()
                };
                for pre in &prefixes {
                    for suf in &suffixes {
                        let mut row = vec![0; ps.len()];
                        for (c, p) in r.iter() {
                            let mut full = pre.clone();
                            full.extend_from_slice(p);
                            full.extend_from_slice(suf);
                            let k = index[&full];
                            row[k] = field.add(row[k], *c);
                        }
                        rows.push(row);
                    }
                }
            }
        }
        let (rr, piv) = if rows.is_empty() {
            (Mat::zeros(field, 0, ps.len()), Vec::new())
        } else {
            Mat::from_rows(field, ps.len(), &rows).rref()
        };
        let free: Vec<usize> = (0..ps.len()).filter(|c| !piv.contains(c)).collect();
        let free_pos: HashMap<usize, usize> = free.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut red = HashMap::new();
        for (pi, p) in ps.iter().enumerate() {
            let mut v = vec![0; free.len()];
            if let Some(&fp) = free_pos.get(&pi) {
                v[fp] = 1;
            } else {
                // p is a pivot: p ≡ -Σ (row entries on free columns)
                let ri = piv.iter().position(|&c| c == pi).unwrap();
                for (fi, &fc) in free.iter().enumerate() {
                    v[fi] = field.neg(rr.get(ri, fc));
                }
            }
            red.insert(p.clone(), v);
        }
        qbasis.push(free.iter().map(|&c| ps[c].clone()).collect());
        reduce.push(red);
        if free.is_empty() {
            break;
        }
        // extend to length len+1
        let mut next = Vec::new();
        for p in &ps {
            for (ai, a) in arrows.iter().enumerate() {
                if arrows[*p.last().unwrap()].target == a.source {
                    let mut np = p.clone();
                    np.push(ai);
                    next.push(np);
                }
            }
        }
        paths.push(next);
        len += 1;
        if paths[len].is_empty() {
            qbasis.push(Vec::new());
            reduce.push(HashMap::new());
            break;
        }
    }
    let maxlen = qbasis.len() - 1;

    // global basis: trivial paths then quotient bases by length
    let mut names: Vec<String> = quiver.vertices.iter().map(|v| format!("e{v}")).collect();
    let mut offset = vec![nv; maxlen + 2];
    let mut bpaths: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for l in 1..=maxlen {
        offset[l] = names.len();
        for p in &qbasis[l] {
            names.push(p.iter().map(|&a| arrows[a].name.clone()).collect::<Vec<_>>().join("*"));
            bpaths.push(p.clone());
        }
    }
    let d = names.len();
    let src = |k: usize, p: &Vec<usize>| if k < nv { k } else { arrows[p[0]].source };
    let tgt = |k: usize, p: &Vec<usize>| if k < nv { k } else { arrows[*p.last().unwrap()].target };
    let mut table = vec![0; d * d * d];
    for i in 0..d {
        for j in 0..d {
            let (pi, pj) = (&bpaths[i], &bpaths[j]);
            if tgt(i, pi) != src(j, pj) {
                continue;
            }
            let base = (i * d + j) * d;
            if i < nv {
                table[base + j] = 1;
            } else if j < nv {
                table[base + i] = 1;
            } else {
                let mut full = pi.clone();
                full.extend_from_slice(pj);
                let l = full.len();
                if l > maxlen || qbasis[l].is_empty() {
                    continue;
                }
                for (fi, &c) in reduce[l][&full].iter().enumerate() {
                    table[base + offset[l] + fi] = c;
                }
            }
        }
    }
    let mut unit = vec![0; d];
    let mut idem = Vec::new();
    for v in 0..nv {
        unit[v] = 1;
        let mut e = vec![0; d];
        e[v] = 1;
        idem.push(e);
    }
    let rad_rows: Vec<Vec<Elem>> = (nv..d)
        .map(|k| {
            let mut e = vec![0; d];
            e[k] = 1;
            e
        })
        .collect();
    let radical = Mat::from_rows(field, d, &rad_rows);
    Algebra::assemble(AlgebraData {
        field: field.clone(),
        names,
        table,
        unit,
        idempotents: Some(idem),
        vertex_names: Some(quiver.vertices.clone()),
        radical: Some(radical),
        presentation: Presentation::BoundQuiver { quiver: quiver.clone(), relations: relations.to_vec() },
    })
}

/// Algebra from a structure-constant table; idempotents and radical are searched for.
pub fn algebra_from_structure_constants(
    field: &Field,
    names: Vec<String>,
    table: Vec<Elem>,
    unit: Vec<Elem>,
) -> Result<Algebra> {
    Algebra::assemble(AlgebraData {
        field: field.clone(),
        names,
        table,
        unit,
        idempotents: None,
        vertex_names: None,
        radical: None,
        presentation: Presentation::StructureConstants,
    })
}

struct Subfield {
    gen: Elem,
    coords: HashMap<Elem, Vec<Elem>>,
}

impl Subfield {
    fn new(k: &Field, big: &Field, eps: &FieldEmbedding, degree: usize) -> Subfield {
        let q = k.q() as u64;
        let big_q = big.q() as u64;
        let exp = (big_q - 1) / (q.pow(degree as u32) - 1);
        let gen = big.pow(big.primitive(), exp);
        let mut coords = HashMap::new();
        let total = q.pow(degree as u32);
        for t in 0..total {
            let c = nth_vector(k, degree, t);
            let mut z = 0;
            let mut hp = 1;
            for &cj in &c {
                z = big.add(z, big.mul(eps.embed(cj), hp));
                hp = big.mul(hp, gen);
            }
            coords.insert(z, c);
        }
        Subfield { gen, coords }
    }
    fn basis(&self, big: &Field, i: usize) -> Elem {
        big.pow(self.gen, i as u64)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Tensor algebra of a species over `k`, truncated by `rad_power` if given.
pub fn species_algebra(k: &Field, s: &SpeciesFq) -> Result<Algebra> {
    let nv = s.vertices.len();
    for v in &s.vertices {
        if v.degree == 0 {
            return Err(Error::Input(format!("vertex {} has degree 0", v.name)));
        }
    }
    for a in &s.arrows {
        if a.source >= nv || a.target >= nv {
            return Err(Error::Input(format!("arrow {} references a missing vertex", a.name)));
        }
        let (ds, dt) = (s.vertices[a.source].degree, s.vertices[a.target].degree);
        if a.degree == 0 || a.degree % ds != 0 || a.degree % dt != 0 {
            return Err(Error::Input(format!(
                "arrow {} has degree {} which is not a common multiple of {} and {}",
                a.name, a.degree, ds, dt
            )));
        }
    }
    let mut big_deg = 1usize;
    for v in &s.vertices {
        big_deg = lcm(big_deg, v.degree as usize);
    }
    for a in &s.arrows {
        big_deg = lcm(big_deg, a.degree as usize);
    }
    let big = Field::new(k.p(), k.n() * big_deg as u32)?;
    let eps = FieldEmbedding::between(k, &big)?;
    let mut subfields: HashMap<usize, Subfield> = HashMap::new();
    for d in s.vertices.iter().map(|v| v.degree as usize).chain(s.arrows.iter().map(|a| a.degree as usize)) {
        subfields.entry(d).or_insert_with(|| Subfield::new(k, &big, &eps, d));
    }
    let qk = k.q() as u64;
    let twist = |a: &SpeciesArrow, y: Elem| -> Elem {
        let t = a.twist % s.vertices[a.target].degree;
        let mut z = y;
        for _ in 0..t {
            z = big.pow(z, qk);
        }
        z
    };

    // enumerate paths up to truncation
    let cyclic_cap = s.rad_power.unwrap_or(PATH_LENGTH_CAP + 1);
    let mut paths: Vec<Vec<usize>> = Vec::new();
    let mut layer: Vec<Vec<usize>> = (0..s.arrows.len()).map(|a| vec![a]).collect();
    let mut l = 1;
    while !layer.is_empty() && l < cyclic_cap {
        if l > PATH_LENGTH_CAP {
            return Err(Error::Cap("species tensor algebra is not nilpotent within the cap".into()));
        }
        paths.extend(layer.iter().cloned());
        let mut next = Vec::new();
        for p in &layer {
            for (ai, a) in s.arrows.iter().enumerate() {
                if s.arrows[*p.last().unwrap()].target == a.source {
                    let mut np = p.clone();
                    np.push(ai);
                    next.push(np);
                }
            }
        }
        layer = next;
        l += 1;
    }

    struct PathSpace {
        dims: Vec<usize>,
        free: Vec<usize>,
        reduce: Mat, // full × free: reduction of full tensor basis vectors
    }
    let mut spaces: Vec<PathSpace> = Vec::new();
    let path_index: HashMap<Vec<usize>, usize> = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    for p in &paths {
        let dims: Vec<usize> = p.iter().map(|&a| s.arrows[a].degree as usize).collect();
        let full: usize = dims.iter().product();
        let strides: Vec<usize> = (0..dims.len()).map(|j| dims[j + 1..].iter().product()).collect();
        let mut rows: Vec<Vec<Elem>> = Vec::new();
        for j in 0..p.len().saturating_sub(1) {
            let aj = &s.arrows[p[j]];
            let vb = aj.target;
            let db = s.vertices[vb].degree as usize;
            let sfb = &subfields[&db];
            let sfj = &subfields[&dims[j]];
            let sfj1 = &subfields[&dims[j + 1]];
            for sidx in 0..db {
                let y = sfb.basis(&big, sidx);
                for idx in 0..full {
                    let ij = (idx / strides[j]) % dims[j];
                    let ij1 = (idx / strides[j + 1]) % dims[j + 1];
                    let zj = sfj.basis(&big, ij);
                    let zj1 = sfj1.basis(&big, ij1);
                    let left = big.mul(zj, twist(aj, y));
                    let right = big.mul(y, zj1);
                    let cl = &sfj.coords[&left];
                    let cr = &sfj1.coords[&right];
                    let mut row = vec![0; full];
                    let base = idx - ij * strides[j] - ij1 * strides[j + 1];
                    for (u, &c) in cl.iter().enumerate() {
                        let t = base + u * strides[j] + ij1 * strides[j + 1];
                        row[t] = k.add(row[t], c);
                    }
                    for (u, &c) in cr.iter().enumerate() {
                        let t = base + ij * strides[j] + u * strides[j + 1];
                        row[t] = k.sub(row[t], c);
                    }
                    rows.push(row);
                }
            }
        }
        let (rr, piv) = if rows.is_empty() {
            (Mat::zeros(k, 0, full), Vec::new())
        } else {
            Mat::from_rows(k, full, &rows).rref()
        };
        let free: Vec<usize> = (0..full).filter(|c| !piv.contains(c)).collect();
        let mut reduce = Mat::zeros(k, full, free.len());
        for idx in 0..full {
            if let Some(fp) = free.iter().position(|&c| c == idx) {
                reduce.set(idx, fp, 1);
            } else {
                let ri = piv.iter().position(|&c| c == idx).unwrap();
                for (fi, &fc) in free.iter().enumerate() {
                    reduce.set(idx, fi, k.neg(rr.get(ri, fc)));
                }
            }
        }
        spaces.push(PathSpace { dims, free, reduce });
    }

    // global basis
    let mut names = Vec::new();
    let mut vert_off = Vec::new();
    for v in &s.vertices {
        vert_off.push(names.len());
        for i in 0..v.degree {
            names.push(format!("{}:{}", v.name, i));
        }
    }
    let mut path_off = Vec::new();
    for (pi, p) in paths.iter().enumerate() {
        path_off.push(names.len());
        let pname = p.iter().map(|&a| s.arrows[a].name.clone()).collect::<Vec<_>>().join(".");
        for fi in 0..spaces[pi].free.len() {
            names.push(format!("{pname}:{fi}"));
        }
    }
    let d = names.len();
    let mut table = vec![0; d * d * d];

    // helper: full-tensor coordinates of a pure tensor of big-field elements
    let pure = |pi: usize, zs: &[Elem]| -> Vec<Elem> {
        let sp = &spaces[pi];
        let mut v = vec![1];
        for (j, &z) in zs.iter().enumerate() {
            let c = &subfields[&sp.dims[j]].coords[&z];
            let mut nv2 = Vec::with_capacity(v.len() * c.len());
            for &x in &v {
                for &y in c {
                    nv2.push(k.mul(x, y));
                }
            }
            v = nv2;
        }
        crate::gf::vec_mat(&v, &sp.reduce)
    };
    // representative pure tensor (big-field factors) of a free basis vector
    let rep_factors = |pi: usize, fi: usize| -> Vec<Elem> {
        let sp = &spaces[pi];
        let idx = sp.free[fi];
        let mut out = Vec::new();
        let mut rem = idx;
        let strides: Vec<usize> = (0..sp.dims.len()).map(|j| sp.dims[j + 1..].iter().product()).collect();
        for (j, &st) in strides.iter().enumerate() {
            let i = rem / st;
            rem %= st;
            out.push(subfields[&sp.dims[j]].basis(&big, i));
        }
        out
    };

    for (va, v) in s.vertices.iter().enumerate() {
        let sf = &subfields[&(v.degree as usize)];
        for i in 0..v.degree as usize {
            let yi = sf.basis(&big, i);
            // D_a × D_a
            for j in 0..v.degree as usize {
                let prod = big.mul(yi, sf.basis(&big, j));
                let c = &sf.coords[&prod];
                let base = ((vert_off[va] + i) * d + vert_off[va] + j) * d;
                for (t, &x) in c.iter().enumerate() {
                    table[base + vert_off[va] + t] = x;
                }
            }
            // D_a × path and path × D_a
            for (pi, p) in paths.iter().enumerate() {
                for fi in 0..spaces[pi].free.len() {
                    let zs = rep_factors(pi, fi);
                    let bj = path_off[pi] + fi;
                    if s.arrows[p[0]].source == va {
                        let mut z2 = zs.clone();
                        z2[0] = big.mul(yi, z2[0]);
                        let c = pure(pi, &z2);
                        let base = ((vert_off[va] + i) * d + bj) * d;
                        for (t, &x) in c.iter().enumerate() {
                            table[base + path_off[pi] + t] = x;
                        }
                    }
                    let last = s.arrows[*p.last().unwrap()].clone();
                    if last.target == va {
                        let mut z2 = zs.clone();
                        let n = z2.len() - 1;
                        z2[n] = big.mul(z2[n], twist(&last, yi));
                        let c = pure(pi, &z2);
                        let base = (bj * d + vert_off[va] + i) * d;
                        for (t, &x) in c.iter().enumerate() {
                            table[base + path_off[pi] + t] = x;
                        }
                    }
                }
            }
        }
    }
    for (pi, p) in paths.iter().enumerate() {
        for (pj, pq) in paths.iter().enumerate() {
            if s.arrows[*p.last().unwrap()].target != s.arrows[pq[0]].source {
                continue;
            }
            let mut cat = p.clone();
            cat.extend_from_slice(pq);
            let Some(&pk) = path_index.get(&cat) else { continue };
            for fi in 0..spaces[pi].free.len() {
                let zi = rep_factors(pi, fi);
                for fj in 0..spaces[pj].free.len() {
                    let mut zs = zi.clone();
                    zs.extend(rep_factors(pj, fj));
                    let c = pure(pk, &zs);
                    let base = ((path_off[pi] + fi) * d + path_off[pj] + fj) * d;
                    for (t, &x) in c.iter().enumerate() {
                        table[base + path_off[pk] + t] = x;
                    }
                }
            }
        }
    }
    let mut unit = vec![0; d];
    let mut idem = Vec::new();
    for va in 0..nv {
        let mut e = vec![0; d];
        e[vert_off[va]] = 1;
        unit[vert_off[va]] = 1;
        idem.push(e);
    }
    let first_path = path_off.first().copied().unwrap_or(d);
    let rad_rows: Vec<Vec<Elem>> = (first_path..d)
        .map(|kk| {
            let mut e = vec![0; d];
            e[kk] = 1;
            e
        })
        .collect();
    let radical = if rad_rows.is_empty() { Mat::zeros(k, 0, d) } else { Mat::from_rows(k, d, &rad_rows) };
    Algebra::assemble(AlgebraData {
        field: k.clone(),
        names,
        table,
        unit,
        idempotents: Some(idem),
        vertex_names: Some(s.vertices.iter().map(|v| v.name.clone()).collect()),
        radical: Some(radical),
        presentation: Presentation::Species(s.clone()),
    })
}

/// Scalar extension `Λ ⊗ F_{q^m}`: same structure constants read in the bigger field,
/// idempotents refined by search.
pub fn tensor_up(a: &Algebra, m: u32) -> Result<Algebra> {
    let emb = crate::gf::embedding(a.field(), m)?;
    tensor_up_with(a, &emb)
}

pub fn tensor_up_with(a: &Algebra, emb: &FieldEmbedding) -> Result<Algebra> {
    let big = emb.big.clone();
    let up = |v: &[Elem]| -> Vec<Elem> { v.iter().map(|&x| emb.embed(x)).collect() };
    let table = up(&a.table());
    let unit = up(a.unit());
    let presentation = match a.presentation() {
        Presentation::BoundQuiver { quiver, relations } => Presentation::BoundQuiver {
            quiver: quiver.clone(),
            relations: relations
                .iter()
                .map(|r| r.iter().map(|(c, p)| (emb.embed(*c), p.clone())).collect())
                .collect(),
        },
        _ => Presentation::Derived(format!("{} tensored up to {}", a.presentation().tag(), big.name())),
    };
    let quiver_like = matches!(presentation, Presentation::BoundQuiver { .. });
    let old_idem: Vec<Vec<Elem>> = a.idempotents().iter().map(|e| up(e)).collect();
    // Build once with the old idempotents to search for refinements.
    let provisional = Algebra::assemble(AlgebraData {
        field: big.clone(),
        names: a.names().to_vec(),
        table: table.clone(),
        unit: unit.clone(),
        idempotents: Some(old_idem.clone()),
        vertex_names: Some(a.vertex_names().to_vec()),
        radical: Some(Mat::zeros(&big, 0, a.dim())),
        presentation: presentation.clone(),
    })?;
    let (idem, vnames) = if quiver_like {
        (old_idem, a.vertex_names().to_vec())
    } else {
        let mut idem = Vec::new();
        let mut names = Vec::new();
        for (i, e) in old_idem.iter().enumerate() {
            let parts = provisional.primitive_idempotents_search(vec![e.clone()])?;
            let vn = &a.vertex_names()[i];
            if parts.len() == 1 {
                names.push(vn.clone());
            } else {
                for t in 0..parts.len() {
                    names.push(format!("{vn}.{}", t + 1));
                }
            }
            idem.extend(parts);
        }
        (idem, names)
    };
    let radical = if quiver_like { Some(emb.embed_mat(a.radical())) } else { None };
    Algebra::assemble(AlgebraData {
        field: big,
        names: a.names().to_vec(),
        table,
        unit,
        idempotents: Some(idem),
        vertex_names: Some(vnames),
        radical,
        presentation,
    })
}

/// Prop-4.16-style complexification of an ℝ-species, as a quiver. The flag states that
/// radical-square-zero relations carry over to paths of length two.
pub fn complexify_species(s: &RSpecies) -> Result<(Quiver, bool)> {
    let mut vertices = Vec::new();
    let mut under = Vec::new();
    let mut over = Vec::new();
    for (name, tag) in &s.vertices {
        match tag {
            RTag::R => {
                under.push(vertices.len());
                over.push(vertices.len());
                vertices.push(name.clone());
            }
            RTag::C => {
                under.push(vertices.len());
                vertices.push(format!("{name}_"));
                over.push(vertices.len());
                vertices.push(format!("{name}^"));
            }
        }
    }
    let mut arrows = Vec::new();
    for (name, a, b, tag) in &s.arrows {
        if *a >= s.vertices.len() || *b >= s.vertices.len() {
            return Err(Error::Input(format!("arrow {name} references a missing vertex")));
        }
        let (ta, tb) = (s.vertices[*a].1, s.vertices[*b].1);
        let bar = format!("{name}^");
        let mut push = |n: &str, x: usize, y: usize| arrows.push(Arrow { name: n.to_string(), source: x, target: y });
        match (ta, tb, tag) {
            (RTag::R, RTag::R, BimoduleTag::Natural) => push(name, under[*a], under[*b]),
            (RTag::R, RTag::C, BimoduleTag::Natural) => {
                push(&format!("{name}_"), under[*a], under[*b]);
                push(&bar, under[*a], over[*b]);
            }
            (RTag::C, RTag::R, BimoduleTag::Natural) => {
                push(name, under[*a], under[*b]);
                push(&bar, over[*a], under[*b]);
            }
            (RTag::C, RTag::C, BimoduleTag::Natural) => {
                push(name, under[*a], under[*b]);
                push(&bar, over[*a], over[*b]);
            }
            (RTag::C, RTag::C, BimoduleTag::Conjugate) => {
                push(name, over[*a], under[*b]);
                push(&bar, under[*a], over[*b]);
            }
            _ => {
                return Err(Error::Input(format!(
                    "arrow {name}: a conjugate bimodule needs complex endpoints"
                )))
            }
        }
    }
    Ok((Quiver { vertices, arrows }, true))
}

/// Bounded search for an algebra isomorphism `a → b` respecting the idempotents up to a
/// permutation. Returns the matrix sending coordinates in `a` to coordinates in `b`.
/// Heuristic: only homogeneous generator images are tried, within `cap` candidates.
pub fn find_isomorphism(a: &Algebra, b: &Algebra, cap: u64) -> Option<Mat> {
    if a.field() != b.field() || a.dim() != b.dim() || a.num_vertices() != b.num_vertices() {
        return None;
    }
    let f = a.field();
    let n = a.num_vertices();
    let perms = permutations(n);
    for pi in perms {
        if (0..n).any(|i| (0..n).any(|j| a.corner(i, j).rows() != b.corner(pi[i], pi[j]).rows())) {
            continue;
        }
        // candidate images for the non-idempotent generators
        let corners = a.generator_corners();
        let mut choice_spaces: Vec<Mat> = Vec::new();
        let mut total: u64 = 1;
        for &(i, j) in corners.iter().skip(n) {
            let c = b.corner(pi[i], pi[j]);
            total = total.saturating_mul(count_vectors(f, c.rows()).unwrap_or(u64::MAX));
            choice_spaces.push(c);
        }
        if total > cap {
            continue;
        }
        let sizes: Vec<usize> = choice_spaces.iter().map(|c| c.rows()).collect();
        let total_dim: usize = sizes.iter().sum();
        for t in 0..total {
            let coeffs = nth_vector(f, total_dim, t);
            let mut images: Vec<Vec<Elem>> = (0..n).map(|i| b.idempotents()[pi[i]].clone()).collect();
            let mut off = 0;
            for c in &choice_spaces {
                let mut v = b.zero();
                for s in 0..c.rows() {
                    v = vec_add(f, &v, &vec_scale(f, c.row(s), coeffs[off + s]));
                }
                off += c.rows();
                images.push(v);
            }
            // image of each basis element via its generator words
            let mut phi = Mat::zeros(f, a.dim(), b.dim());
            for k in 0..a.dim() {
                let mut v = b.zero();
                for (c, w) in &a.basis_words()[k] {
                    let mut x = b.unit().to_vec();
                    for &g in w {
                        x = b.mul(&x, &images[g]);
                    }
                    v = vec_add(f, &v, &vec_scale(f, &x, *c));
                }
                for (j, &x) in v.iter().enumerate() {
                    phi.set(k, j, x);
                }
            }
            if !phi.is_invertible() {
                continue;
            }
            let ok = (0..a.dim()).all(|i| {
                (0..a.dim()).all(|j| {
                    let lhs = crate::gf::vec_mat(&a.basis_product(i, j), &phi);
                    let rhs = b.mul(phi.row(i), phi.row(j));
                    lhs == rhs
                })
            });
            if ok {
                return Some(phi);
            }
        }
    }
    None
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }

    #[test]
    fn a2_path_algebra() {
        let q = Quiver::new(&["1", "2"], &[("a", 0, 1)]);
        let a = path_algebra(&f2(), &q, &[]).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.radical().rows(), 1);
        assert_eq!(a.compute_radical().unwrap(), a.radical().row_basis());
    }

    #[test]
    fn loop_mod_square() {
        let q = Quiver::new(&["1"], &[("x", 0, 0)]);
        let a = path_algebra(&f2(), &q, &[vec![(1, vec![0, 0])]]).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(path_algebra(&f2(), &q, &[]).is_err());
    }

    #[test]
    fn f4_as_f2_algebra() {
        let f = f2();
        // basis 1, w with w^2 = w + 1
        let table = vec![1, 0, 0, 1, 0, 1, 1, 1];
        let a = algebra_from_structure_constants(&f, vec!["1".into(), "w".into()], table, vec![1, 0]).unwrap();
        assert_eq!(a.num_vertices(), 1);
        assert_eq!(a.radical().rows(), 0);
        let up = tensor_up(&a, 2).unwrap();
        assert_eq!(up.num_vertices(), 2);
    }

    #[test]
    fn non_associative_rejected() {
        let f = f2();
        // b1*b1 = b0 but b0 is not a unit for b1: inconsistent table
        let table = vec![1, 0, 0, 0, 0, 1, 1, 1];
        assert!(algebra_from_structure_constants(&f, vec!["a".into(), "b".into()], table, vec![1, 0]).is_err());
    }

    #[test]
    fn species_b2() {
        let s = SpeciesFq {
            vertices: vec![SpeciesVertex { name: "1".into(), degree: 1 }, SpeciesVertex { name: "2".into(), degree: 2 }],
            arrows: vec![SpeciesArrow { name: "a".into(), source: 0, target: 1, degree: 2, twist: 0 }],
            rad_power: None,
        };
        let a = species_algebra(&f2(), &s).unwrap();
        assert_eq!(a.dim(), 5);
        assert_eq!(a.compute_radical().unwrap(), a.radical().row_basis());
    }

    #[test]
    fn complexify_examples() {
        let s = RSpecies { vertices: vec![("1".into(), RTag::C)], arrows: vec![("a".into(), 0, 0, BimoduleTag::Conjugate)] };
        let (q, _) = complexify_species(&s).unwrap();
        assert_eq!(q.arrow_multiset(), vec![("1^".into(), "1_".into()), ("1_".into(), "1^".into())]);
    }
}
