//! Finite fields F_{p^n}, field embeddings and dense matrices over them.
//!
//! Elements are encoded as integers: the polynomial `c_0 + c_1 x + ... + c_{n-1} x^{n-1}`
//! is stored as `c_0 + c_1 p + ... + c_{n-1} p^{n-1}`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};

pub type Elem = u32;

/// Largest field size accepted by [`Field::new`].
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 16;

struct FieldInner {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u32>,
    neg: Vec<u32>,
}

#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.n == other.0.n
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Polynomials over F_p, coefficient vectors low degree first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let c = (r[r.len() - 1] * lead_inv) % p;
        let shift = r.len() - 1 - dm;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (c * mi) % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| (a * b) % p == 1).expect("unit mod p")
}

fn monic_from_code(code: u64, deg: u32, p: u32) -> Vec<u32> {
    let mut c = code;
    let mut v = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        v.push((c % p as u64) as u32);
        c /= p as u64;
    }
    v.push(1);
    v
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = (f.len() - 1) as u32;
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d);
        for code in 0..count {
            let g = monic_from_code(code, d, p);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Irreducibility of a polynomial over F_p, coefficients constant term first.
pub fn is_irreducible_poly(f: &[u32], p: u32) -> bool {
    f.len() >= 2 && is_irreducible(f, p)
}

/// Lexicographically least monic irreducible of degree `n` over F_p, comparing the
/// non-leading coefficients from the top degree down.
fn least_irreducible(p: u32, n: u32) -> Vec<u32> {
    if n == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(n);
    for code in 0..count {
        let f = monic_from_code(code, n, p);
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn digits(mut a: u32, p: u32, n: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(n as usize);
    for _ in 0..n {
        v.push(a % p);
        a /= p;
    }
    v
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl Field {
    pub fn new(p: u32, n: u32) -> Result<Field> {
        Field::with_bound(p, n, DEFAULT_FIELD_BOUND)
    }

    pub fn with_bound(p: u32, n: u32, bound: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::Input("extension degree must be positive".into()));
        }
        let q64 = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
        if q64 > bound {
            return Err(Error::Cap(format!("field size {p}^{n} exceeds {bound}")));
        }
        let q = q64 as u32;
        let modulus = least_irreducible(p, n);
        let qs = q as usize;

        let add = if p == 2 {
            Vec::new()
        } else {
            let mut t = vec![0u32; qs * qs];
            for a in 0..q {
                let da = digits(a, p, n);
                for b in 0..q {
                    let db = digits(b, p, n);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[a as usize * qs + b as usize] = undigits(&s, p);
                }
            }
            t
        };
        let neg: Vec<u32> = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits(a, p, n).iter().map(|&c| (p - c) % p).collect();
                undigits(&d, p)
            })
            .collect();

        let slow_mul = |a: u32, b: u32| -> u32 {
            let prod = poly_mul(&digits(a, p, n), &digits(b, p, n), p);
            let mut r = poly_rem(&prod, &modulus, p);
            r.resize(n as usize, 0);
            undigits(&r, p)
        };

        let mut exp = Vec::new();
        let mut log = vec![0u32; qs];
        if q == 2 {
            exp = vec![1, 1];
        } else {
            for g in 2..q {
                let mut powers = Vec::with_capacity(qs - 1);
                let mut x = 1u32;
                loop {
                    powers.push(x);
                    x = slow_mul(x, g);
                    if x == 1 {
                        break;
                    }
                }
                if powers.len() == qs - 1 {
                    exp = powers;
                    break;
                }
            }
            let base = exp.clone();
            exp.extend_from_slice(&base);
        }
        for (i, &x) in exp.iter().enumerate().take(qs - 1) {
            log[x as usize] = i as u32;
        }

        Ok(Field(Arc::new(FieldInner { p, n, q, modulus, exp, log, add, neg })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn n(&self) -> u32 {
        self.0.n
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.0.p == 2 {
            a ^ b
        } else {
            self.0.add[a as usize * self.0.q as usize + b as usize]
        }
    }
    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let i = self.0.log[a as usize] + self.0.log[b as usize];
        self.0.exp[i as usize]
    }
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let qm = self.0.q - 1;
        Some(self.0.exp[((qm - self.0.log[a as usize]) % qm) as usize])
    }
    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let qm = (self.0.q - 1) as u64;
        let l = (self.0.log[a as usize] as u64 * (e % qm)) % qm;
        self.0.exp[l as usize]
    }
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.0.p as u64)
    }
    /// A fixed generator of the multiplicative group.
    pub fn primitive(&self) -> Elem {
        if self.0.q == 2 {
            1
        } else {
            self.0.exp[1]
        }
    }
    /// The image of an integer in the prime field.
    pub fn from_int(&self, k: i64) -> Elem {
        k.rem_euclid(self.0.p as i64) as Elem
    }
    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.0.q
    }
    /// Coordinates over F_p.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        digits(a, self.0.p, self.0.n)
    }
    pub fn from_digits(&self, d: &[u32]) -> Elem {
        undigits(d, self.0.p)
    }
    pub fn prime_field(&self) -> Field {
        if self.0.n == 1 {
            self.clone()
        } else {
            Field::new(self.0.p, 1).expect("prime field")
        }
    }
    pub fn name(&self) -> String {
        format!("F_{}", self.0.q)
    }
}

/// An embedding `small → big` of degree `m`, with coordinates of `big` over `small`
/// in the basis `1, g, ..., g^{m-1}` for the primitive element `g` of `big`.
#[derive(Clone)]
pub struct FieldEmbedding {
    pub small: Field,
    pub big: Field,
    pub m: usize,
    image: Vec<Elem>,
    coords: Vec<Elem>,
}

impl FieldEmbedding {
    pub fn new(small: &Field, m: u32) -> Result<FieldEmbedding> {
        if m == 0 {
            return Err(Error::Input("extension degree must be positive".into()));
        }
        let n = small.n();
        let big_n = n.checked_mul(m).ok_or_else(|| Error::Cap("extension degree".into()))?;
        let big = Field::new(small.p(), big_n)?;
        FieldEmbedding::between(small, &big)
    }

    pub fn between(small: &Field, big: &Field) -> Result<FieldEmbedding> {
        let p = small.p();
        let n = small.n() as usize;
        if big.p() != p || big.n() as usize % n != 0 {
            return Err(Error::Input(format!("{small:?} is not a subfield of {big:?}")));
        }
        let m = big.n() as usize / n;
        let mod_small = small.modulus();
        // Least root of the small modulus in the big field is the image of x.
        let root = if n == 1 {
            0
        } else {
            big.elements()
                .find(|&y| {
                    let mut acc = 0;
                    for &c in mod_small.iter().rev() {
                        acc = big.add(big.mul(acc, y), c);
                    }
                    acc == 0
                })
                .ok_or_else(|| Error::Check("no root of the small modulus".into()))?
        };
        let image: Vec<Elem> = small
            .elements()
            .map(|a| {
                if n == 1 {
                    return a;
                }
                let mut acc = 0;
                for &c in small.digits(a).iter().rev() {
                    acc = big.add(big.mul(acc, root), c);
                }
                acc
            })
            .collect();

        let g = big.primitive();
        let fp = small.prime_field();
        let nm = n * m;
        // Rows: F_p coordinates of eps(x^i) g^j, indexed by j*n + i.
        let mut b = Mat::zeros(&fp, nm, nm);
        let mut gpow = 1;
        for j in 0..m {
            let mut xi = 1;
            for i in 0..n {
                let v = big.mul(image[xi as usize], gpow);
                for (c, d) in big.digits(v).into_iter().enumerate() {
                    b.set(j * n + i, c, d);
                }
                if n > 1 {
                    xi = small.mul(xi, small.p());
                }
            }
            gpow = big.mul(gpow, g);
        }
        let binv = b.inverse().ok_or_else(|| Error::Check("basis of the extension is singular".into()))?;
        let mut coords = vec![0; big.q() as usize * m];
        for y in big.elements() {
            let dv = big.digits(y);
            let row = Mat::from_vec(&fp, 1, nm, dv).mul(&binv);
            for j in 0..m {
                let ds: Vec<u32> = (0..n).map(|i| row.get(0, j * n + i)).collect();
                coords[y as usize * m + j] = small.from_digits(&ds);
            }
        }
        Ok(FieldEmbedding { small: small.clone(), big: big.clone(), m, image, coords })
    }

    #[inline]
    pub fn embed(&self, a: Elem) -> Elem {
        self.image[a as usize]
    }

    pub fn coords(&self, y: Elem) -> &[Elem] {
        let m = self.m;
        &self.coords[y as usize * m..(y as usize + 1) * m]
    }

    /// Matrix of right multiplication by `y` on `big` viewed as `small^m` (row vectors).
    pub fn regular(&self, y: Elem) -> Mat {
        let mut r = Mat::zeros(&self.small, self.m, self.m);
        let g = self.big.primitive();
        let mut basis = 1;
        for j in 0..self.m {
            let v = self.big.mul(basis, y);
            for (c, &x) in self.coords(v).iter().enumerate() {
                r.set(j, c, x);
            }
            basis = self.big.mul(basis, g);
        }
        r
    }

    pub fn embed_mat(&self, a: &Mat) -> Mat {
        Mat::from_vec(&self.big, a.rows(), a.cols(), a.data().iter().map(|&x| self.embed(x)).collect())
    }

    /// Block substitution of each entry by its regular representation.
    pub fn restrict_mat(&self, a: &Mat) -> Mat {
        let m = self.m;
        let mut r = Mat::zeros(&self.small, a.rows() * m, a.cols() * m);
        let mut cache: HashMap<Elem, Mat> = HashMap::new();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let y = a.get(i, j);
                if y == 0 {
                    continue;
                }
                let blk = cache.entry(y).or_insert_with(|| self.regular(y));
                for s in 0..m {
                    for t in 0..m {
                        r.set(i * m + s, j * m + t, blk.get(s, t));
                    }
                }
            }
        }
        r
    }

    /// Whether `y` lies in the image of the small field.
    pub fn is_in_small(&self, y: Elem) -> bool {
        self.coords(y)[1..].iter().all(|&c| c == 0)
    }
}

static EMBED_CACHE: Mutex<Option<HashMap<(u32, u32, u32), FieldEmbedding>>> = Mutex::new(None);

/// Cached embedding of `small` into its degree-`m` extension.
pub fn embedding(small: &Field, m: u32) -> Result<FieldEmbedding> {
    let key = (small.p(), small.n(), m);
    if let Some(e) = EMBED_CACHE.lock().unwrap().as_ref().and_then(|c| c.get(&key)) {
        return Ok(e.clone());
    }
    let e = FieldEmbedding::new(small, m)?;
    EMBED_CACHE.lock().unwrap().get_or_insert_with(HashMap::new).insert(key, e.clone());
    Ok(e)
}

/// Dense matrix over a finite field.
#[derive(Clone)]
pub struct Mat {
    f: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl PartialEq for Mat {
    fn eq(&self, o: &Self) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.data == o.data
    }
}
impl Eq for Mat {}
impl Hash for Mat {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.rows.hash(h);
        self.cols.hash(h);
        self.data.hash(h);
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", r.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(f: &Field, rows: usize, cols: usize) -> Mat {
        Mat { f: f.clone(), rows, cols, data: vec![0; rows * cols] }
    }
    pub fn identity(f: &Field, n: usize) -> Mat {
        let mut m = Mat::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }
    pub fn from_vec(f: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Mat {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Mat { f: f.clone(), rows, cols, data }
    }
    pub fn from_rows(f: &Field, cols: usize, rows: &[Vec<Elem>]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            data.extend_from_slice(r);
        }
        Mat { f: f.clone(), rows: rows.len(), cols, data }
    }
    pub fn row_vec(f: &Field, v: &[Elem]) -> Mat {
        Mat::from_vec(f, 1, v.len(), v.to_vec())
    }

    pub fn field(&self) -> &Field {
        &self.f
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[Elem] {
        &self.data
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn row_list(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(&self.f, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let f = &self.f;
        let mut r = Mat::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = &o.data[k * o.cols..(k + 1) * o.cols];
                let rrow = &mut r.data[i * o.cols..(i + 1) * o.cols];
                if a == 1 {
                    for (x, &y) in rrow.iter_mut().zip(orow) {
                        *x = f.add(*x, y);
                    }
                } else {
                    for (x, &y) in rrow.iter_mut().zip(orow) {
                        *x = f.add(*x, f.mul(a, y));
                    }
                }
            }
        }
        r
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix sum shape");
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| self.f.add(a, b)).collect();
        Mat { f: self.f.clone(), rows: self.rows, cols: self.cols, data }
    }
    pub fn sub(&self, o: &Mat) -> Mat {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix difference shape");
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| self.f.sub(a, b)).collect();
        Mat { f: self.f.clone(), rows: self.rows, cols: self.cols, data }
    }
    pub fn scale(&self, c: Elem) -> Mat {
        let data = self.data.iter().map(|&a| self.f.mul(a, c)).collect();
        Mat { f: self.f.clone(), rows: self.rows, cols: self.cols, data }
    }
    /// `self += c * o`
    pub fn axpy(&mut self, c: Elem, o: &Mat) {
        if c == 0 {
            return;
        }
        for (x, &y) in self.data.iter_mut().zip(&o.data) {
            *x = self.f.add(*x, self.f.mul(c, y));
        }
    }
    pub fn pow(&self, e: usize) -> Mat {
        let mut r = Mat::identity(&self.f, self.rows);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn hstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.rows, o.rows, "hstack rows");
        let mut r = Mat::zeros(&self.f, self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            r.data[i * r.cols..i * r.cols + self.cols].copy_from_slice(self.row(i));
            r.data[i * r.cols + self.cols..(i + 1) * r.cols].copy_from_slice(o.row(i));
        }
        r
    }
    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols, "vstack cols");
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Mat { f: self.f.clone(), rows: self.rows + o.rows, cols: self.cols, data }
    }
    pub fn block_diag(f: &Field, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut r = Mat::zeros(f, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    r.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        r
    }
    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Mat { f: self.f.clone(), rows: idx.len(), cols: self.cols, data }
    }
    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut r = Mat::zeros(&self.f, self.rows, idx.len());
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                r.set(i, c, self.get(i, j));
            }
        }
        r
    }
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut r = Mat::zeros(&self.f, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                r.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        r
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let f = &self.f;
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(pr) = (r..a.rows).find(|&i| a.get(i, c) != 0) else { continue };
            if pr != r {
                for j in 0..a.cols {
                    a.data.swap(pr * a.cols + j, r * a.cols + j);
                }
            }
            let inv = f.inv(a.get(r, c)).unwrap();
            if inv != 1 {
                for j in c..a.cols {
                    let v = f.mul(a.get(r, j), inv);
                    a.set(r, j, v);
                }
            }
            let prow: Vec<Elem> = a.row(r).to_vec();
            for i in 0..a.rows {
                if i == r {
                    continue;
                }
                let x = a.get(i, c);
                if x == 0 {
                    continue;
                }
                let nx = f.neg(x);
                let row = &mut a.data[i * a.cols..(i + 1) * a.cols];
                for j in c..row.len() {
                    if prow[j] != 0 {
                        row[j] = f.add(row[j], f.mul(nx, prow[j]));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis (as rows) of the row space, in reduced echelon form.
    pub fn row_basis(&self) -> Mat {
        let (r, piv) = self.rref();
        r.select_rows(&(0..piv.len()).collect::<Vec<_>>())
    }

    /// Rows spanning `{x : A xᵀ = 0}`.
    pub fn kernel(&self) -> Mat {
        let (r, piv) = self.rref();
        let f = &self.f;
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut k = Mat::zeros(f, free.len(), self.cols);
        for (t, &fc) in free.iter().enumerate() {
            k.set(t, fc, 1);
            for (i, &pc) in piv.iter().enumerate() {
                k.set(t, pc, f.neg(r.get(i, fc)));
            }
        }
        k
    }

    /// Rows spanning `{v : v A = 0}`.
    pub fn left_kernel(&self) -> Mat {
        self.transpose().kernel()
    }

    /// One solution of `A x = b` (column form), or `None` if inconsistent.
    pub fn solve(&self, b: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(b.len(), self.rows, "solve: right-hand side length");
        let f = &self.f;
        let aug = self.hstack(&Mat::from_vec(f, self.rows, 1, b.to_vec()));
        let (r, piv) = aug.rref();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in piv.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Some(x)
    }

    /// One solution of `x A = b` (row form).
    pub fn solve_left(&self, b: &[Elem]) -> Option<Vec<Elem>> {
        self.transpose().solve(b)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Mat::identity(&self.f, n));
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows).is_zero()
    }

    /// Coordinates of the row vector `v` in the basis given by the (independent) rows of `self`.
    pub fn coords_in_rows(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        self.solve_left(v)
    }

    /// Whether the rows of `o` lie in the row space of `self`.
    pub fn row_space_contains(&self, o: &Mat) -> bool {
        let r0 = self.rank();
        self.vstack(o).rank() == r0
    }
}

/// Fast coordinates with respect to a fixed set of independent rows.
#[derive(Clone, Debug)]
pub struct RowCoords {
    cols: Vec<usize>,
    inv: Mat,
    basis: Mat,
}

impl RowCoords {
    /// `basis` must have independent rows.
    pub fn new(basis: &Mat) -> RowCoords {
        let (_, cols) = basis.rref();
        let sub = basis.select_cols(&cols);
        let inv = sub.inverse().expect("independent rows");
        RowCoords { cols, inv, basis: basis.clone() }
    }

    pub fn len(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.rows() == 0
    }

    /// Coordinates of `v`, assumed to lie in the row space.
    pub fn coords(&self, v: &[Elem]) -> Vec<Elem> {
        let sub: Vec<Elem> = self.cols.iter().map(|&c| v[c]).collect();
        vec_mat(&sub, &self.inv)
    }

    /// Coordinates of `v`, or `None` if it is outside the row space.
    pub fn try_coords(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        let c = self.coords(v);
        if vec_mat(&c, &self.basis) == v {
            Some(c)
        } else {
            None
        }
    }
}

/// Vector helpers over a field.
pub fn vec_add(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vec_scale(f: &Field, a: &[Elem], c: Elem) -> Vec<Elem> {
    a.iter().map(|&x| f.mul(x, c)).collect()
}

/// Row vector times matrix.
pub fn vec_mat(v: &[Elem], a: &Mat) -> Vec<Elem> {
    let f = a.field();
    let mut r = vec![0; a.cols()];
    for (k, &x) in v.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, y) in a.row(k).iter().enumerate() {
            r[j] = f.add(r[j], f.mul(x, *y));
        }
    }
    r
}

/// The `idx`-th vector of `F_q^dim` in a fixed enumeration order.
pub fn nth_vector(f: &Field, dim: usize, mut idx: u64) -> Vec<Elem> {
    let q = f.q() as u64;
    let mut v = vec![0; dim];
    for x in v.iter_mut() {
        *x = (idx % q) as Elem;
        idx /= q;
    }
    v
}

/// `q^dim`, or `None` on overflow.
pub fn count_vectors(f: &Field, dim: usize) -> Option<u64> {
    (f.q() as u64).checked_pow(dim as u32)
}

/// Linear combination `Σ c_i m_i` of equally shaped matrices.
pub fn lin_comb(f: &Field, coeffs: &[Elem], mats: &[Mat], rows: usize, cols: usize) -> Mat {
    let mut r = Mat::zeros(f, rows, cols);
    for (c, m) in coeffs.iter().zip(mats) {
        r.axpy(*c, m);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let f8 = Field::new(2, 3).unwrap();
        assert_eq!(f8.modulus(), &[1, 1, 0, 1]);
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(f3.q(), 3);
        assert!(Field::new(4, 1).is_err());
        assert!(matches!(Field::new(2, 17), Err(Error::Cap(_))));
    }

    #[test]
    fn frobenius_on_f4() {
        let f4 = Field::new(2, 2).unwrap();
        // omega = x has code 2; omega^2 = omega + 1 has code 3
        assert_eq!(f4.frobenius(2), 3);
        assert_eq!(f4.frobenius(0), 0);
        assert_eq!(f4.frobenius(1), 1);
        for a in f4.elements() {
            assert_eq!(f4.frobenius(f4.frobenius(a)), a);
        }
    }

    #[test]
    fn field_axioms_f9() {
        let f = Field::new(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), 0);
            assert_eq!(f.pow(a, 9), a);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn embeddings() {
        let f2 = Field::new(2, 1).unwrap();
        let e = FieldEmbedding::new(&f2, 2).unwrap();
        assert_eq!(e.embed(1), 1);
        let f4 = Field::new(2, 2).unwrap();
        let id = FieldEmbedding::new(&f4, 1).unwrap();
        for a in f4.elements() {
            assert_eq!(id.embed(a), a);
        }
        let e16 = FieldEmbedding::new(&f2, 4).unwrap();
        assert_eq!(e16.regular(1), Mat::identity(&f2, 4));
        let e = FieldEmbedding::new(&f4, 2).unwrap();
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(e.embed(f4.mul(a, b)), e.big.mul(e.embed(a), e.embed(b)));
                assert_eq!(e.embed(f4.add(a, b)), e.big.add(e.embed(a), e.embed(b)));
            }
        }
        for y in e.big.elements() {
            for z in e.big.elements().step_by(5) {
                assert_eq!(e.regular(e.big.mul(y, z)), e.regular(y).mul(&e.regular(z)));
            }
        }
    }

    #[test]
    fn linear_algebra_basics() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(Mat::identity(&f2, 3).rank(), 3);
        let a = Mat::from_rows(&f2, 2, &[vec![1, 1]]);
        assert_eq!(a.kernel(), Mat::from_rows(&f2, 2, &[vec![1, 1]]));
        let z = Mat::zeros(&f2, 2, 2);
        assert!(z.solve(&[1, 0]).is_none());
    }
}
