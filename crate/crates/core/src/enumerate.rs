//! Exhaustive enumeration of small pre-Novikov algebras.
//!
//! Candidates are screened with machine integers and every survivor is
//! re-checked in exact arithmetic.

use rayon::prelude::*;

use crate::algebras::PreNovikovAlgebra;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::structure::StructureConstants;

/// Flat `c[i][j][k]` at `(i * n + j) * n + k`.
type Table = Vec<i64>;

fn basis_prod(c: &Table, n: usize, i: usize, j: usize) -> &[i64] {
    &c[(i * n + j) * n..(i * n + j + 1) * n]
}

/// `e_i · v`.
fn lmul(c: &Table, n: usize, i: usize, v: &[i64]) -> Vec<i64> {
    let mut out = vec![0; n];
    for (j, &x) in v.iter().enumerate() {
        if x != 0 {
            for (o, &y) in out.iter_mut().zip(basis_prod(c, n, i, j)) {
                *o += x * y;
            }
        }
    }
    out
}

/// `v · e_k`.
fn rmul(c: &Table, n: usize, v: &[i64], k: usize) -> Vec<i64> {
    let mut out = vec![0; n];
    for (i, &x) in v.iter().enumerate() {
        if x != 0 {
            for (o, &y) in out.iter_mut().zip(basis_prod(c, n, i, k)) {
                *o += x * y;
            }
        }
    }
    out
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `(a◁b)◁c = (a◁c)◁b`, the one identity involving `◁` alone.
fn lhd_only(l: &Table, n: usize) -> bool {
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| rmul(l, n, basis_prod(l, n, i, j), k) == rmul(l, n, basis_prod(l, n, i, k), j))
        })
    })
}

/// The three identities that mix `◁` and `▷`.
fn mixed(l: &Table, r: &Table, circ: &Table, n: usize) -> bool {
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // (a∘b)▷c = (a▷c)◁b
                if rmul(r, n, basis_prod(circ, n, i, j), k) != rmul(l, n, basis_prod(r, n, i, k), j) {
                    return false;
                }
                // a▷(b▷c) = (a∘b)▷c + b▷(a▷c) - (b∘a)▷c
                let lhs = lmul(r, n, i, basis_prod(r, n, j, k));
                let rhs = sub(
                    &add(&rmul(r, n, basis_prod(circ, n, i, j), k), &lmul(r, n, j, basis_prod(r, n, i, k))),
                    &rmul(r, n, basis_prod(circ, n, j, i), k),
                );
                if lhs != rhs {
                    return false;
                }
                // a▷(b◁c) = (a▷b)◁c + b◁(a∘c) - (b◁a)◁c
                let lhs = lmul(r, n, i, basis_prod(l, n, j, k));
                let rhs = sub(
                    &add(&rmul(l, n, basis_prod(r, n, i, j), k), &lmul(l, n, j, basis_prod(circ, n, i, k))),
                    &rmul(l, n, basis_prod(l, n, j, i), k),
                );
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

fn all_tables(n: usize, values: &[i64]) -> Vec<Table> {
    let len = n * n * n;
    let total = values.len().pow(len as u32);
    (0..total)
        .map(|mut idx| {
            let mut t = vec![0; len];
            for slot in t.iter_mut().rev() {
                *slot = values[idx % values.len()];
                idx /= values.len();
            }
            t
        })
        .collect()
}

fn to_sc(t: &Table, n: usize) -> StructureConstants {
    StructureConstants::from_fn(n, |i, j, k| Scalar::from_int(t[(i * n + j) * n + k]))
}

/// Every pair of `n`-dimensional tables with entries in `values` that
/// satisfies the pre-Novikov identities, in lexicographic order of
/// `(◁, ▷)` by position in `values`.
pub fn pre_novikov_tables(n: usize, values: &[i64], budget: u128) -> Result<Vec<PreNovikovAlgebra>> {
    if values.is_empty() {
        return Err(Error::Precondition("value set is empty".into()));
    }
    let per_table = (values.len() as u128).checked_pow((n * n * n) as u32).unwrap_or(u128::MAX);
    let size = per_table.saturating_mul(per_table);
    if size > budget {
        return Err(Error::Budget { size, budget });
    }
    let tables = all_tables(n, values);
    let lhds: Vec<&Table> = tables.iter().filter(|l| lhd_only(l, n)).collect();
    let hits: Vec<(usize, usize)> = lhds
        .par_iter()
        .enumerate()
        .flat_map_iter(|(li, l)| {
            let tables = &tables;
            tables.iter().enumerate().filter_map(move |(ri, r)| {
                let circ: Table = add(l, r);
                mixed(l, r, &circ, n).then_some((li, ri))
            })
        })
        .collect();
    hits.into_iter()
        .map(|(li, ri)| {
            PreNovikovAlgebra::new(to_sc(lhds[li], n), to_sc(&tables[ri], n))
                .map_err(|e| Error::Internal(format!("integer screen accepted a non-pre-Novikov pair: {e}")))
        })
        .collect()
}

/// Number of `(◁, ▷)` pairs the enumeration visits.
pub fn candidate_count(n: usize, values: &[i64]) -> u128 {
    (values.len() as u128).pow((2 * n * n * n) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::PreNovikovTables;

    #[test]
    fn screen_agrees_with_exact_check_in_dimension_one() {
        let vals = [-1, 0, 1, 2];
        let found = pre_novikov_tables(1, &vals, 1 << 10).unwrap();
        let mut expected = Vec::new();
        for &l in &vals {
            for &r in &vals {
                let t = PreNovikovTables::new(to_sc(&vec![l], 1), to_sc(&vec![r], 1)).unwrap();
                if t.check().passed() {
                    expected.push(t);
                }
            }
        }
        let got: Vec<PreNovikovTables> = found.into_iter().map(PreNovikovAlgebra::into_tables).collect();
        assert_eq!(got, expected);
        assert_eq!(candidate_count(1, &vals), 16);
        assert!(matches!(pre_novikov_tables(2, &vals, 100), Err(Error::Budget { .. })));
    }
}
