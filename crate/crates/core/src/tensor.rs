//! Dense exact vectors, matrices and tensors over a based space.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A vector in coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element {
    coords: Vec<Scalar>,
}

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Shape("element of a zero-dimensional space".into()));
        }
        Ok(Element { coords })
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Element { coords: v.iter().map(|&x| Scalar::from_int(x)).collect() }
    }

    pub fn zero(n: usize) -> Self {
        Element { coords: vec![Scalar::zero(); n] }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut e = Element::zero(n);
        e.coords[i] = Scalar::one();
        e
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Element { coords: self.coords.iter().map(|x| x * s).collect() }
    }

    /// Coordinates split at `n`: the first `n` and the rest.
    pub fn split(&self, n: usize) -> (Element, Element) {
        (Element { coords: self.coords[..n].to_vec() }, Element { coords: self.coords[n..].to_vec() })
    }

    pub fn concat(&self, other: &Element) -> Element {
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        Element { coords }
    }

    /// Nonzero `(index, coefficient)` pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coords.iter().enumerate().filter(|(_, v)| !v.is_zero())
    }
}

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimension mismatch");
        Element { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimension mismatch");
        Element { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { coords: self.coords.iter().map(|x| -x).collect() }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

fn check_rows(rows: &[Vec<Scalar>], what: &str) -> Result<(usize, usize)> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if r == 0 || c == 0 {
        return Err(Error::Shape(format!("{what} must be nonempty")));
    }
    if let Some((i, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != c) {
        return Err(Error::Shape(format!("{what}: row {i} has length {}, expected {c}", row.len())));
    }
    Ok((r, c))
}

/// A linear map between coordinate spaces, stored as a row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinMap {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl LinMap {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LinMap { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        LinMap::from_fn(n, n, |i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        LinMap { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let (r, c) = check_rows(&rows, "matrix")?;
        Ok(LinMap { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        LinMap::from_rows(rows).expect("well-formed integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.cols).map(<[Scalar]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        LinMap::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        LinMap { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| x * s).collect() }
    }

    pub fn column(&self, j: usize) -> Element {
        Element { coords: (0..self.rows).map(|i| self.get(i, j).clone()).collect() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinMap) -> Result<LinMap> {
        if self.cols != other.rows {
            return Err(Error::dims(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self * other)
    }

    pub fn apply(&self, v: &Element) -> Result<Element> {
        if self.cols != v.dim() {
            return Err(Error::dims(format!("{}x{} map applied to a {}-vector", self.rows, self.cols, v.dim())));
        }
        Ok(self * v)
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &LinMap) -> LinMap {
        let (r, c) = (self.rows, self.cols);
        LinMap::from_fn(r + other.rows, c + other.cols, |i, j| match (i < r, j < c) {
            (true, true) => self.get(i, j).clone(),
            (false, false) => other.get(i - r, j - c).clone(),
            _ => Scalar::zero(),
        })
    }
}

impl<'a> Mul<&'a LinMap> for &'a LinMap {
    type Output = LinMap;
    fn mul(self, rhs: &LinMap) -> LinMap {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = LinMap::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Mul<&'a Element> for &'a LinMap {
    type Output = Element;
    fn mul(self, v: &Element) -> Element {
        assert_eq!(self.cols, v.dim(), "matrix-vector dimension mismatch");
        let mut out = Element::zero(self.rows);
        for (j, x) in v.support() {
            for i in 0..self.rows {
                let a = self.get(i, j);
                if !a.is_zero() {
                    out.coords[i] += a * x;
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a LinMap> for &'a LinMap {
    type Output = LinMap;
    fn add(self, rhs: &LinMap) -> LinMap {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "matrix sum shape mismatch");
        LinMap {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a LinMap> for &'a LinMap {
    type Output = LinMap;
    fn sub(self, rhs: &LinMap) -> LinMap {
        self + &(-rhs)
    }
}

impl Neg for &LinMap {
    type Output = LinMap;
    fn neg(self) -> LinMap {
        LinMap { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| -x).collect() }
    }
}

impl Add for LinMap {
    type Output = LinMap;
    fn add(self, rhs: LinMap) -> LinMap {
        &self + &rhs
    }
}

impl Sub for LinMap {
    type Output = LinMap;
    fn sub(self, rhs: LinMap) -> LinMap {
        &self - &rhs
    }
}

impl Neg for LinMap {
    type Output = LinMap;
    fn neg(self) -> LinMap {
        -&self
    }
}

/// How to dualize a matrix against the standard dual basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualMode {
    /// `⟨M*(f), v⟩ = ⟨f, M v⟩`: the transpose.
    Pairing,
    /// `⟨ρ*(a) f, v⟩ = -⟨f, ρ(a) v⟩`: the negated transpose.
    Rep,
}

pub fn dual_map(m: &LinMap, mode: DualMode) -> LinMap {
    match mode {
        DualMode::Pairing => m.transpose(),
        DualMode::Rep => -&m.transpose(),
    }
}

/// An element of `V ⊗ W`; `entry[i][j]` is the coefficient of `e_i ⊗ e_j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tensor2 {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Tensor2 {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Tensor2 { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Tensor2 { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let (r, c) = check_rows(&rows, "2-tensor")?;
        Ok(Tensor2 { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// `e_i ⊗ e_j` in an `n`-dimensional space.
    pub fn basis(n: usize, i: usize, j: usize) -> Self {
        let mut t = Tensor2::zeros(n, n);
        t.set(i, j, Scalar::one());
        t
    }

    /// `x ⊗ y`.
    pub fn outer(x: &Element, y: &Element) -> Self {
        Tensor2::from_fn(x.dim(), y.dim(), |i, j| x.get(i) * y.get(j))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        self.entries[i * self.cols + j] += v;
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.cols).map(<[Scalar]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Nonzero `(i, j, coefficient)` triples.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        let cols = self.cols;
        self.entries.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(p, v)| (p / cols, p % cols, v))
    }

    /// The flip `τ(x ⊗ y) = y ⊗ x`.
    pub fn flip(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::dims(format!("flip of a {}x{} tensor", self.rows, self.cols)));
        }
        Ok(self.transposed())
    }

    pub(crate) fn transposed(&self) -> Self {
        Tensor2::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Tensor2 { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| x * s).collect() }
    }

    pub fn as_linmap(&self) -> LinMap {
        LinMap { rows: self.rows, cols: self.cols, entries: self.entries.clone() }
    }

    pub fn from_linmap(m: &LinMap) -> Self {
        Tensor2 { rows: m.rows, cols: m.cols, entries: m.entries.clone() }
    }

    /// `(X ⊗ Y) t = X t Yᵀ`; `None` stands for the identity on that leg.
    pub fn lift(&self, x: Option<&LinMap>, y: Option<&LinMap>) -> Tensor2 {
        let mut m = self.as_linmap();
        if let Some(x) = x {
            m = x * &m;
        }
        if let Some(y) = y {
            m = &m * &y.transpose();
        }
        Tensor2::from_linmap(&m)
    }
}

impl<'a> Add<&'a Tensor2> for &'a Tensor2 {
    type Output = Tensor2;
    fn add(self, rhs: &Tensor2) -> Tensor2 {
        assert_eq!(self.dims(), rhs.dims(), "tensor sum shape mismatch");
        Tensor2 {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Tensor2> for &'a Tensor2 {
    type Output = Tensor2;
    fn sub(self, rhs: &Tensor2) -> Tensor2 {
        self + &(-rhs)
    }
}

impl Neg for &Tensor2 {
    type Output = Tensor2;
    fn neg(self) -> Tensor2 {
        Tensor2 { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| -x).collect() }
    }
}

impl Add for Tensor2 {
    type Output = Tensor2;
    fn add(self, rhs: Tensor2) -> Tensor2 {
        &self + &rhs
    }
}

impl Sub for Tensor2 {
    type Output = Tensor2;
    fn sub(self, rhs: Tensor2) -> Tensor2 {
        &self - &rhs
    }
}

impl Neg for Tensor2 {
    type Output = Tensor2;
    fn neg(self) -> Tensor2 {
        -&self
    }
}

/// A sum of Kronecker products `Σ Xᵢ ⊗ Yᵢ` acting on `A ⊗ A`.
#[derive(Clone, Debug)]
pub struct TensorOp {
    n: usize,
    terms: Vec<(LinMap, LinMap)>,
}

impl TensorOp {
    pub fn zero(n: usize) -> Self {
        TensorOp { n, terms: Vec::new() }
    }

    pub fn kron(x: LinMap, y: LinMap) -> Self {
        assert!(x.is_square() && y.is_square() && x.rows() == y.rows(), "kron of mismatched maps");
        TensorOp { n: x.rows(), terms: vec![(x, y)] }
    }

    /// `X ⊗ id`.
    pub fn left(x: LinMap) -> Self {
        let n = x.rows();
        TensorOp::kron(x, LinMap::identity(n))
    }

    /// `id ⊗ Y`.
    pub fn right(y: LinMap) -> Self {
        let n = y.rows();
        TensorOp::kron(LinMap::identity(n), y)
    }

    pub fn plus(mut self, other: TensorOp) -> Self {
        assert_eq!(self.n, other.n);
        self.terms.extend(other.terms);
        self
    }

    pub fn minus(self, other: TensorOp) -> Self {
        self.plus(other.scaled(&-Scalar::one()))
    }

    pub fn scaled(mut self, s: &Scalar) -> Self {
        for (x, _) in &mut self.terms {
            *x = x.scale(s);
        }
        self
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &TensorOp) -> Self {
        assert_eq!(self.n, other.n);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, b) in &self.terms {
            for (c, d) in &other.terms {
                terms.push((a * c, b * d));
            }
        }
        TensorOp { n: self.n, terms }
    }

    pub fn apply(&self, t: &Tensor2) -> Tensor2 {
        let mut out = Tensor2::zeros(t.rows(), t.cols());
        for (x, y) in &self.terms {
            out = &out + &t.lift(Some(x), Some(y));
        }
        out
    }
}

/// An element of `A ⊗ A ⊗ A` over an `n`-dimensional space.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tensor3 {
    n: usize,
    entries: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Tensor3 { n, entries: vec![Scalar::zero(); n * n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    entries.push(f(i, j, k));
                }
            }
        }
        Tensor3 { n, entries }
    }

    pub fn from_nested(data: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let n = data.len();
        if n == 0 {
            return Err(Error::Shape("3-tensor must be nonempty".into()));
        }
        for (i, plane) in data.iter().enumerate() {
            if plane.len() != n || plane.iter().any(|row| row.len() != n) {
                return Err(Error::Shape(format!("3-tensor slice {i} is not {n}x{n}")));
            }
        }
        Ok(Tensor3 { n, entries: data.into_iter().flatten().flatten().collect() })
    }

    /// `x ⊗ y ⊗ z`.
    pub fn outer(x: &Element, y: &Element, z: &Element) -> Self {
        Tensor3::from_fn(x.dim(), |i, j, k| x.get(i) * y.get(j) * z.get(k))
    }

    /// `v ⊗ t`.
    pub fn outer_left(v: &Element, t: &Tensor2) -> Self {
        Tensor3::from_fn(v.dim(), |i, j, k| v.get(i) * t.get(j, k))
    }

    /// `t ⊗ v`.
    pub fn outer_right(t: &Tensor2, v: &Element) -> Self {
        Tensor3::from_fn(v.dim(), |i, j, k| t.get(i, j) * v.get(k))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.entries[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let p = self.idx(i, j, k);
        self.entries[p] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, k: usize, v: &Scalar) {
        let p = self.idx(i, j, k);
        self.entries[p] += v;
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<Scalar>>> {
        let n = self.n;
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| self.get(i, j, k).clone()).collect()).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Nonzero `([i, j, k], coefficient)` pairs.
    pub fn support(&self) -> impl Iterator<Item = ([usize; 3], &Scalar)> {
        let n = self.n;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(p, v)| ([p / (n * n), (p / n) % n, p % n], v))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Tensor3 { n: self.n, entries: self.entries.iter().map(|x| x * s).collect() }
    }

    /// Moves the factor in position `p` to position `perm(p)`.
    pub fn permute(&self, perm: Perm3) -> Tensor3 {
        let mut out = Tensor3::zeros(self.n);
        for (idx, v) in self.support() {
            let mut dst = [0; 3];
            for p in 0..3 {
                dst[perm.0[p]] = idx[p];
            }
            out.set(dst[0], dst[1], dst[2], v.clone());
        }
        out
    }

    /// `(X ⊗ Y ⊗ Z) t`; `None` stands for the identity on that leg.
    pub fn lift(&self, x: Option<&LinMap>, y: Option<&LinMap>, z: Option<&LinMap>) -> Tensor3 {
        let mut t = self.clone();
        for (leg, m) in [(0usize, x), (1, y), (2, z)] {
            if let Some(m) = m {
                t = t.apply_leg(leg, m);
            }
        }
        t
    }

    fn apply_leg(&self, leg: usize, m: &LinMap) -> Tensor3 {
        let mut out = Tensor3::zeros(self.n);
        for (idx, v) in self.support() {
            let src = idx[leg];
            for dst in 0..self.n {
                let a = m.get(dst, src);
                if a.is_zero() {
                    continue;
                }
                let mut j = idx;
                j[leg] = dst;
                out.add_at(j[0], j[1], j[2], &(a * v));
            }
        }
        out
    }
}

impl<'a> Add<&'a Tensor3> for &'a Tensor3 {
    type Output = Tensor3;
    fn add(self, rhs: &Tensor3) -> Tensor3 {
        assert_eq!(self.n, rhs.n, "tensor sum shape mismatch");
        Tensor3 { n: self.n, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a Tensor3> for &'a Tensor3 {
    type Output = Tensor3;
    fn sub(self, rhs: &Tensor3) -> Tensor3 {
        self + &(-rhs)
    }
}

impl Neg for &Tensor3 {
    type Output = Tensor3;
    fn neg(self) -> Tensor3 {
        Tensor3 { n: self.n, entries: self.entries.iter().map(|x| -x).collect() }
    }
}

impl Add for Tensor3 {
    type Output = Tensor3;
    fn add(self, rhs: Tensor3) -> Tensor3 {
        &self + &rhs
    }
}

impl Sub for Tensor3 {
    type Output = Tensor3;
    fn sub(self, rhs: Tensor3) -> Tensor3 {
        &self - &rhs
    }
}

impl Neg for Tensor3 {
    type Output = Tensor3;
    fn neg(self) -> Tensor3 {
        -&self
    }
}

/// A permutation of the three tensor slots, stored 0-based as `p ↦ perm[p]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Perm3([usize; 3]);

impl Perm3 {
    pub const IDENTITY: Perm3 = Perm3([0, 1, 2]);

    /// From one-line notation over `{1, 2, 3}`: `images[p-1] = σ(p)`.
    pub fn new(images: [usize; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for &x in &images {
            if !(1..=3).contains(&x) || seen[x - 1] {
                return Err(Error::Shape(format!("{images:?} is not a permutation of 1,2,3")));
            }
            seen[x - 1] = true;
        }
        Ok(Perm3([images[0] - 1, images[1] - 1, images[2] - 1]))
    }

    /// The transposition swapping slots `a` and `b` (1-based).
    pub fn swap(a: usize, b: usize) -> Self {
        assert!(a != b && (1..=3).contains(&a) && (1..=3).contains(&b));
        let mut m = [0, 1, 2];
        m.swap(a - 1, b - 1);
        Perm3(m)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn after(self, other: Perm3) -> Perm3 {
        Perm3([self.0[other.0[0]], self.0[other.0[1]], self.0[other.0[2]]])
    }

    pub fn all() -> [Perm3; 6] {
        [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]].map(Perm3)
    }
}

pub fn flip(t: &Tensor2) -> Result<Tensor2> {
    t.flip()
}

pub fn permute3(t: &Tensor3, perm: Perm3) -> Tensor3 {
    t.permute(perm)
}

/// A tensor slot `1`, `2` or `3`.
pub type Slot = u8;

/// Placement of `r` in slots `(p, q)` and `r'` in slots `(s, t)` for
/// `r_pq ∗ r'_st`; exactly one slot is shared and receives the product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SlotPattern {
    first: (Slot, Slot),
    second: (Slot, Slot),
    shared: Slot,
}

impl SlotPattern {
    pub fn new(first: (Slot, Slot), second: (Slot, Slot)) -> Result<Self> {
        let bad = |why: &str| Err(Error::InvalidSlots(format!("{first:?},{second:?}: {why}")));
        for (a, b) in [first, second] {
            if !(1..=3).contains(&a) || !(1..=3).contains(&b) {
                return bad("slots must be 1, 2 or 3");
            }
            if a == b {
                return bad("a factor occupies two distinct slots");
            }
        }
        let shared: Vec<Slot> = [first.0, first.1].into_iter().filter(|s| *s == second.0 || *s == second.1).collect();
        if shared.len() != 1 {
            return bad("exactly one slot must be shared");
        }
        Ok(SlotPattern { first, second, shared: shared[0] })
    }

    pub fn first(&self) -> (Slot, Slot) {
        self.first
    }

    pub fn second(&self) -> (Slot, Slot) {
        self.second
    }

    pub fn shared(&self) -> Slot {
        self.shared
    }
}

impl fmt::Display for SlotPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}{} * r{}{}'", self.first.0, self.first.1, self.second.0, self.second.1)
    }
}

impl std::str::FromStr for SlotPattern {
    type Err = Error;

    /// Parses `"12,13"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSlots(format!("cannot parse {s:?}, expected e.g. \"12,13\""));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let pair = |x: &str| -> Result<(Slot, Slot)> {
            let d: Vec<u8> = x.trim().bytes().collect();
            if d.len() != 2 || !d.iter().all(u8::is_ascii_digit) {
                return Err(bad());
            }
            Ok((d[0] - b'0', d[1] - b'0'))
        };
        SlotPattern::new(pair(a)?, pair(b)?)
    }
}

/// The placement conventions used by the Yang-Baxter machinery, as
/// `((p, q), (s, t))` for `r_pq ∗ r'_st`.
pub const CONVENTIONS: [((Slot, Slot), (Slot, Slot)); 17] = [
    ((1, 2), (1, 3)),
    ((1, 2), (2, 3)),
    ((1, 3), (1, 2)),
    ((1, 3), (2, 1)),
    ((1, 3), (2, 3)),
    ((2, 1), (1, 3)),
    ((2, 1), (2, 3)),
    ((2, 1), (3, 1)),
    ((2, 1), (3, 2)),
    ((3, 1), (2, 1)),
    ((3, 1), (2, 3)),
    ((3, 1), (3, 2)),
    ((2, 3), (1, 2)),
    ((2, 3), (2, 1)),
    ((2, 3), (1, 3)),
    ((2, 3), (3, 1)),
    ((3, 2), (2, 1)),
];

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int_tensor2(n: usize, v: &[i64]) -> Tensor2 {
        Tensor2::from_fn(n, n, |i, j| Scalar::from_int(v[i * n + j]))
    }

    #[test]
    fn flip_examples() {
        // e2⊗e1* in a 4-dim space with basis (e1, e2, e1*, e2*)
        let t = Tensor2::basis(4, 1, 2);
        assert_eq!(t.flip().unwrap(), Tensor2::basis(4, 2, 1));
        let sym = &Tensor2::basis(4, 1, 2) + &Tensor2::basis(4, 2, 1);
        assert_eq!(sym.flip().unwrap(), sym);
        assert!(Tensor2::zeros(2, 3).flip().is_err());
    }

    #[test]
    fn permute_examples() {
        let n = 3;
        let e = |i| Element::basis(n, i);
        let t = Tensor3::outer(&e(0), &e(1), &e(2));
        assert_eq!(t.permute(Perm3::IDENTITY), t);
        assert_eq!(t.permute(Perm3::swap(2, 3)), Tensor3::outer(&e(0), &e(2), &e(1)));
        // cycle 1→2→3→1 sends x⊗y⊗z to z⊗x⊗y
        let cyc = Perm3::new([2, 3, 1]).unwrap();
        assert_eq!(t.permute(cyc), Tensor3::outer(&e(2), &e(0), &e(1)));
        assert!(Perm3::new([1, 1, 2]).is_err());
    }

    #[test]
    fn dual_map_modes() {
        let id = LinMap::identity(3);
        assert_eq!(dual_map(&id, DualMode::Rep), -&id);
        assert_eq!(dual_map(&id, DualMode::Pairing), id);
    }

    #[test]
    fn lift_matches_kronecker_definition() {
        let x = LinMap::from_int_rows(&[&[1, 2], &[0, 1]]);
        let y = LinMap::from_int_rows(&[&[0, 1], &[3, 0]]);
        let t = int_tensor2(2, &[1, -1, 2, 5]);
        // (X⊗Y)(e_i⊗e_j) = X e_i ⊗ Y e_j, summed with coefficients
        let mut expect = Tensor2::zeros(2, 2);
        for (i, j, c) in t.support() {
            let xi = x.column(i);
            let yj = y.column(j);
            expect = &expect + &Tensor2::outer(&xi, &yj).scale(c);
        }
        assert_eq!(t.lift(Some(&x), Some(&y)), expect);
        let op = TensorOp::kron(x, y);
        assert_eq!(op.apply(&t), expect);
    }

    #[test]
    fn slot_pattern_validation() {
        assert!(SlotPattern::new((1, 2), (1, 3)).is_ok());
        assert!(SlotPattern::new((1, 1), (1, 3)).is_err());
        assert!(SlotPattern::new((1, 2), (1, 2)).is_err());
        assert!(SlotPattern::new((1, 2), (2, 1)).is_err());
        assert!(SlotPattern::new((1, 4), (1, 3)).is_err());
        assert_eq!("23,13".parse::<SlotPattern>().unwrap().shared(), 3);
        for (a, b) in CONVENTIONS {
            SlotPattern::new(a, b).unwrap();
        }
    }

    fn arb_tensor3(n: usize) -> impl Strategy<Value = Tensor3> {
        proptest::collection::vec(-3i64..=3, n * n * n)
            .prop_map(move |v| Tensor3::from_fn(n, |i, j, k| Scalar::from_int(v[(i * n + j) * n + k])))
    }

    fn arb_tensor2(n: usize) -> impl Strategy<Value = Tensor2> {
        proptest::collection::vec(-3i64..=3, n * n).prop_map(move |v| int_tensor2(n, &v))
    }

    fn arb_perm() -> impl Strategy<Value = Perm3> {
        (0usize..6).prop_map(|i| Perm3::all()[i])
    }

    proptest! {
        #[test]
        fn flip_is_involution(t in arb_tensor2(3)) {
            prop_assert_eq!(t.flip().unwrap().flip().unwrap(), t);
        }

        #[test]
        fn permute_is_group_action(t in arb_tensor3(3), s in arb_perm(), r in arb_perm()) {
            prop_assert_eq!(t.permute(s).permute(r), t.permute(r.after(s)));
        }

        #[test]
        fn rep_dual_is_involution(v in proptest::collection::vec(-5i64..=5, 6)) {
            let m = LinMap::from_fn(2, 3, |i, j| Scalar::from_int(v[i * 3 + j]));
            prop_assert_eq!(dual_map(&dual_map(&m, DualMode::Rep), DualMode::Rep), m.clone());
            prop_assert_eq!(dual_map(&dual_map(&m, DualMode::Pairing), DualMode::Pairing), m);
        }
    }
}
