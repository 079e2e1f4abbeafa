//! Exact determinants, inverses and linear solves.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::{Element, LinMap};

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &LinMap) -> Result<Scalar> {
    if !m.is_square() {
        return Err(Error::dims(format!("determinant of a {}x{} matrix", m.rows(), m.cols())));
    }
    let n = m.rows();
    let mut a = m.to_rows();
    let mut sign = Scalar::one();
    let mut prev = Scalar::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return Ok(Scalar::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = &v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// Inverse by Gauss-Jordan elimination; `Error::Degenerate` if singular.
pub fn inverse(m: &LinMap) -> Result<LinMap> {
    if !m.is_square() {
        return Err(Error::dims(format!("inverse of a {}x{} matrix", m.rows(), m.cols())));
    }
    let n = m.rows();
    let mut a = m.to_rows();
    let mut inv = LinMap::identity(n).to_rows();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Degenerate)?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].recip().expect("nonzero pivot");
        for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
            *x = &*x * &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let d = &f * &a[col][j];
                a[r][j] -= d;
                let d = &f * &inv[col][j];
                inv[r][j] -= d;
            }
        }
    }
    LinMap::from_rows(inv)
}

/// Rank by exact row reduction.
pub fn rank(m: &LinMap) -> usize {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    for col in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, piv);
        let p = a[r][col].recip().expect("nonzero pivot");
        for i in r + 1..rows {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] * &p;
            for j in col..cols {
                let d = &f * &a[r][j];
                a[i][j] -= d;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Solves `m x = b` for square nonsingular `m`.
pub fn solve(m: &LinMap, b: &Element) -> Result<Element> {
    if m.rows() != b.dim() {
        return Err(Error::dims(format!("{}x{} system with a {}-vector", m.rows(), m.cols(), b.dim())));
    }
    inverse(m)?.apply(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_det(m: &[Vec<Scalar>]) -> Scalar {
        // cofactor expansion along the first row
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = Scalar::zero();
        for j in 0..n {
            let minor: Vec<Vec<Scalar>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
            let term = &m[0][j] * &naive_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn small_cases() {
        let m = LinMap::from_int_rows(&[&[0, 1], &[-1, 0]]);
        assert_eq!(determinant(&m).unwrap(), Scalar::one());
        assert_eq!(inverse(&m).unwrap(), LinMap::from_int_rows(&[&[0, -1], &[1, 0]]));
        assert!(matches!(inverse(&LinMap::zeros(2, 2)), Err(Error::Degenerate)));
        assert_eq!(determinant(&LinMap::zeros(3, 3)).unwrap(), Scalar::zero());
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(v in proptest::collection::vec(-4i64..=4, 16)) {
            let m = LinMap::from_fn(4, 4, |i, j| Scalar::from_int(v[i * 4 + j]));
            let d = determinant(&m).unwrap();
            prop_assert_eq!(d.clone(), naive_det(&m.to_rows()));
            match inverse(&m) {
                Ok(inv) => {
                    prop_assert!(!d.is_zero());
                    prop_assert_eq!(&m * &inv, LinMap::identity(4));
                }
                Err(_) => prop_assert!(d.is_zero()),
            }
            prop_assert_eq!(rank(&m) == 4, !d.is_zero());
        }
    }
}
