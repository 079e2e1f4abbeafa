//! Bilinear products given by structure constants.

use crate::error::{ensure_dim, Error, Result};
use crate::linalg;
use crate::scalar::Scalar;
use crate::tensor::{Element, LinMap, SlotPattern, Tensor2, Tensor3};

/// `e_i · e_j = Σ_k c[i][j][k] e_k` on an `n`-dimensional space.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StructureConstants {
    n: usize,
    c: Vec<Scalar>,
}

/// Which argument of the product is fixed by a multiplication matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `b ↦ a·b`
    Left,
    /// `b ↦ b·a`
    Right,
}

impl StructureConstants {
    pub fn zeros(n: usize) -> Self {
        StructureConstants { n, c: vec![Scalar::zero(); n * n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Self {
        let mut c = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c.push(f(i, j, k));
                }
            }
        }
        StructureConstants { n, c }
    }

    pub fn from_nested(data: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let t = Tensor3::from_nested(data)?;
        Ok(StructureConstants::from_tensor(&t))
    }

    /// Builds a table from `((i, j), product)` entries, all others zero.
    /// Indices are 0-based.
    pub fn from_products(n: usize, entries: &[((usize, usize), &[i64])]) -> Self {
        let mut s = StructureConstants::zeros(n);
        for ((i, j), v) in entries {
            assert_eq!(v.len(), n);
            for (k, x) in v.iter().enumerate() {
                s.set(*i, *j, k, Scalar::from_int(*x));
            }
        }
        s
    }

    pub fn from_tensor(t: &Tensor3) -> Self {
        StructureConstants::from_fn(t.dim(), |i, j, k| t.get(i, j, k).clone())
    }

    pub fn to_tensor(&self) -> Tensor3 {
        Tensor3::from_fn(self.n, |i, j, k| self.get(i, j, k).clone())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[(i * self.n + j) * self.n + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let p = (i * self.n + j) * self.n + k;
        self.c[p] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<Scalar>>> {
        self.to_tensor().to_nested()
    }

    /// `e_i · e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Element {
        let start = (i * self.n + j) * self.n;
        Element::new(self.c[start..start + self.n].to_vec()).expect("n > 0")
    }

    /// `a · b`, panicking on dimension mismatch.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        assert!(a.dim() == self.n && b.dim() == self.n, "product dimension mismatch");
        let mut out = vec![Scalar::zero(); self.n];
        for (i, x) in a.support() {
            for (j, y) in b.support() {
                let xy = x * y;
                let start = (i * self.n + j) * self.n;
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = &self.c[start + k];
                    if !c.is_zero() {
                        *slot += &xy * c;
                    }
                }
            }
        }
        Element::new(out).expect("n > 0")
    }

    /// Entrywise sum of two tables.
    pub fn plus(&self, other: &StructureConstants) -> StructureConstants {
        assert_eq!(self.n, other.n);
        StructureConstants { n: self.n, c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> StructureConstants {
        StructureConstants { n: self.n, c: self.c.iter().map(|x| x * s).collect() }
    }

    /// The opposite product `a ·ᵒᵖ b = b · a`.
    pub fn opposite(&self) -> StructureConstants {
        StructureConstants::from_fn(self.n, |i, j, k| self.get(j, i, k).clone())
    }

    /// The table in the basis `f_i = Σ_k p[k][i] e_k` (columns of `p`).
    pub fn change_basis(&self, p: &LinMap) -> Result<StructureConstants> {
        ensure_dim("basis change matrix", self.n, p.rows())?;
        let inv = linalg::inverse(p)?;
        let cols: Vec<Element> = (0..self.n).map(|i| p.column(i)).collect();
        let mut out = StructureConstants::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let prod = &inv * &self.mul(&cols[i], &cols[j]);
                for k in 0..self.n {
                    out.set(i, j, k, prod.get(k).clone());
                }
            }
        }
        Ok(out)
    }

    pub(crate) fn left_basis(&self, i: usize) -> LinMap {
        LinMap::from_fn(self.n, self.n, |k, j| self.get(i, j, k).clone())
    }

    pub(crate) fn right_basis(&self, j: usize) -> LinMap {
        LinMap::from_fn(self.n, self.n, |k, i| self.get(i, j, k).clone())
    }

    /// Multiplication matrix, panicking on dimension mismatch.
    pub fn mat(&self, a: &Element, side: Side) -> LinMap {
        assert_eq!(a.dim(), self.n, "multiplication matrix dimension mismatch");
        let mut out = LinMap::zeros(self.n, self.n);
        for (i, x) in a.support() {
            let m = match side {
                Side::Left => self.left_basis(i),
                Side::Right => self.right_basis(i),
            };
            out = &out + &m.scale(x);
        }
        out
    }
}

/// `Σ a_i b_j c[i][j][k] e_k`.
pub fn apply_op(op: &StructureConstants, a: &Element, b: &Element) -> Result<Element> {
    ensure_dim("first argument", op.dim(), a.dim())?;
    ensure_dim("second argument", op.dim(), b.dim())?;
    Ok(op.mul(a, b))
}

/// Matrix of `b ↦ a·b` (left) or `b ↦ b·a` (right).
pub fn mult_matrix(op: &StructureConstants, a: &Element, side: Side) -> Result<LinMap> {
    ensure_dim("multiplication matrix argument", op.dim(), a.dim())?;
    Ok(op.mat(a, side))
}

/// `r_pq ∗ r'_st`: `r` placed in slots `(p, q)`, `r2` in `(s, t)`, and the
/// shared slot receives the product of the two components landing there,
/// the one from `r` on the left.
pub fn placed_product(r: &Tensor2, r2: &Tensor2, op: &StructureConstants, slots: SlotPattern) -> Result<Tensor3> {
    let n = op.dim();
    for (what, t) in [("first tensor", r), ("second tensor", r2)] {
        if t.dims() != (n, n) {
            return Err(Error::dims(format!("{what} is {:?}, algebra has dimension {n}", t.dims())));
        }
    }
    let (p, q) = slots.first();
    let (s, t) = slots.second();
    let shared = slots.shared();
    let mut out = Tensor3::zeros(n);
    for (i, j, x) in r.support() {
        let comp1 = |slot: u8| if slot == p { Some(i) } else if slot == q { Some(j) } else { None };
        for (k, l, y) in r2.support() {
            let comp2 = |slot: u8| if slot == s { Some(k) } else if slot == t { Some(l) } else { None };
            let coef = x * y;
            let prod = op.basis_product(comp1(shared).unwrap(), comp2(shared).unwrap());
            let mut idx = [0usize; 3];
            for slot in 1..=3u8 {
                if slot != shared {
                    idx[slot as usize - 1] = comp1(slot).or_else(|| comp2(slot)).unwrap();
                }
            }
            for (m, c) in prod.support() {
                idx[shared as usize - 1] = m;
                out.add_at(idx[0], idx[1], idx[2], &(&coef * c));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::CONVENTIONS;
    use proptest::prelude::*;

    fn e(n: usize, i: usize) -> Element {
        Element::basis(n, i)
    }

    /// ◁ of the two-dimensional running example: e1◁e1=e1, e1◁e2=e2, e2◁e1=e2.
    fn ex_lhd() -> StructureConstants {
        StructureConstants::from_products(2, &[((0, 0), &[1, 0]), ((0, 1), &[0, 1]), ((1, 0), &[0, 1])])
    }

    #[test]
    fn apply_op_examples() {
        let l = ex_lhd();
        assert_eq!(apply_op(&l, &e(2, 0), &e(2, 1)).unwrap(), e(2, 1));
        assert!(apply_op(&StructureConstants::zeros(2), &e(2, 0), &e(2, 0)).unwrap().is_zero());
        // ▷ is zero there, so ∘ = ◁ and e2∘e2 = 0
        let circ = l.plus(&StructureConstants::zeros(2));
        assert!(apply_op(&circ, &e(2, 1), &e(2, 1)).unwrap().is_zero());
        assert!(apply_op(&l, &e(3, 0), &e(2, 0)).is_err());
    }

    #[test]
    fn mult_matrix_examples() {
        let l = ex_lhd();
        assert_eq!(mult_matrix(&l, &e(2, 0), Side::Left).unwrap(), LinMap::identity(2));
        assert!(mult_matrix(&l, &Element::zero(2), Side::Left).unwrap().is_zero());
        // R◁(e2): e1 ↦ e1◁e2 = e2, e2 ↦ e2◁e2 = 0
        let r = mult_matrix(&l, &e(2, 1), Side::Right).unwrap();
        assert_eq!(r, LinMap::from_int_rows(&[&[0, 0], &[1, 0]]));
    }

    /// Direct transcription of each displayed convention, for x⊗y and x'⊗y'
    /// given as basis indices.
    fn convention_by_hand(
        pat: ((u8, u8), (u8, u8)),
        op: &StructureConstants,
        (x, y): (usize, usize),
        (x2, y2): (usize, usize),
    ) -> Tensor3 {
        let n = op.dim();
        let v = |i| e(n, i);
        let pr = |a, b| op.mul(&v(a), &v(b));
        match pat {
            ((1, 2), (1, 3)) => Tensor3::outer(&pr(x, x2), &v(y), &v(y2)),
            ((1, 2), (2, 3)) => Tensor3::outer(&v(x), &pr(y, x2), &v(y2)),
            ((1, 3), (1, 2)) => Tensor3::outer(&pr(x, x2), &v(y2), &v(y)),
            ((1, 3), (2, 1)) => Tensor3::outer(&pr(x, y2), &v(x2), &v(y)),
            ((1, 3), (2, 3)) => Tensor3::outer(&v(x), &v(x2), &pr(y, y2)),
            ((2, 1), (1, 3)) => Tensor3::outer(&pr(y, x2), &v(x), &v(y2)),
            ((2, 1), (2, 3)) => Tensor3::outer(&v(y), &pr(x, x2), &v(y2)),
            ((2, 1), (3, 1)) => Tensor3::outer(&pr(y, y2), &v(x), &v(x2)),
            ((2, 1), (3, 2)) => Tensor3::outer(&v(y), &pr(x, y2), &v(x2)),
            ((3, 1), (2, 1)) => Tensor3::outer(&pr(y, y2), &v(x2), &v(x)),
            ((3, 1), (2, 3)) => Tensor3::outer(&v(y), &v(x2), &pr(x, y2)),
            ((3, 1), (3, 2)) => Tensor3::outer(&v(y), &v(y2), &pr(x, x2)),
            ((2, 3), (1, 2)) => Tensor3::outer(&v(x2), &pr(x, y2), &v(y)),
            ((2, 3), (2, 1)) => Tensor3::outer(&v(y2), &pr(x, x2), &v(y)),
            ((2, 3), (1, 3)) => Tensor3::outer(&v(x2), &v(x), &pr(y, y2)),
            ((2, 3), (3, 1)) => Tensor3::outer(&v(y2), &v(x), &pr(y, x2)),
            ((3, 2), (2, 1)) => Tensor3::outer(&v(y2), &pr(y, x2), &v(x)),
            other => panic!("no hand transcription for {other:?}"),
        }
    }

    fn random_table(n: usize, seed: u64) -> StructureConstants {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        StructureConstants::from_fn(n, |_, _, _| Scalar::from_int(rng.gen_range(-2..=2)))
    }

    #[test]
    fn all_conventions_match_hand_transcription() {
        let n = 3;
        let op = random_table(n, 7);
        for pat in CONVENTIONS {
            let slots = SlotPattern::new(pat.0, pat.1).unwrap();
            for (x, y, x2, y2) in [(0, 1, 2, 0), (1, 1, 0, 2), (2, 0, 1, 1)] {
                let got = placed_product(&Tensor2::basis(n, x, y), &Tensor2::basis(n, x2, y2), &op, slots).unwrap();
                assert_eq!(got, convention_by_hand(pat, &op, (x, y), (x2, y2)), "{slots}");
            }
        }
    }

    #[test]
    fn placed_product_examples() {
        let n = 3;
        let op = random_table(n, 3);
        let slots = SlotPattern::new((1, 2), (1, 3)).unwrap();
        let z = Tensor2::zeros(n, n);
        let r = Tensor2::basis(n, 0, 1);
        assert!(placed_product(&z, &r, &op, slots).unwrap().is_zero());
        assert!(placed_product(&r, &z, &op, slots).unwrap().is_zero());
        assert!(placed_product(&Tensor2::zeros(2, 2), &r, &op, slots).is_err());
    }

    #[test]
    fn change_basis_identity_is_noop() {
        let op = random_table(3, 11);
        assert_eq!(op.change_basis(&LinMap::identity(3)).unwrap(), op);
    }

    fn arb_t2(n: usize) -> impl Strategy<Value = Tensor2> {
        proptest::collection::vec(-3i64..=3, n * n)
            .prop_map(move |v| Tensor2::from_fn(n, n, |i, j| Scalar::from_int(v[i * n + j])))
    }

    proptest! {
        #[test]
        fn placed_product_is_bilinear(a in arb_t2(3), b in arb_t2(3), c in arb_t2(3), k in -3i64..=3, pi in 0usize..17) {
            let op = random_table(3, 5);
            let slots = SlotPattern::new(CONVENTIONS[pi].0, CONVENTIONS[pi].1).unwrap();
            let s = Scalar::from_int(k);
            let pp = |x: &Tensor2, y: &Tensor2| placed_product(x, y, &op, slots).unwrap();
            let lin_first = &a.scale(&s) + &b;
            prop_assert_eq!(pp(&lin_first, &c), &pp(&a, &c).scale(&s) + &pp(&b, &c));
            let lin_second = &b.scale(&s) + &c;
            prop_assert_eq!(pp(&a, &lin_second), &pp(&a, &b).scale(&s) + &pp(&a, &c));
        }
    }
}
