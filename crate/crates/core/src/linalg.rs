//! Exact Gaussian elimination helpers over the rationals.

use crate::Rat;
use num_traits::{One, Zero};

/// Row-reduce `mat` in place; returns the pivot column of each nonzero row.
pub(crate) fn rref(mat: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return vec![];
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].clone();
        for x in &mut mat[r] {
            *x /= &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..cols {
                    let sub = &mat[r][j] * &f;
                    mat[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    mat.truncate(r);
    pivots
}

/// Basis of {x : Ax = 0} for the row list `a` with `ncols` columns.
pub(crate) fn nullspace_basis(a: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut mat: Vec<Vec<Rat>> = a.to_vec();
    let pivots = rref(&mut mat);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Rat::zero(); ncols];
        v[f] = Rat::one();
        for (row, &p) in mat.iter().zip(&pivots) {
            v[p] = -row[f].clone();
        }
        basis.push(v);
    }
    basis
}

/// One solution of Ax = b, if consistent.
pub(crate) fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.len(), b.len());
    let ncols = a.first().map_or(0, |r| r.len());
    let mut mat: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut mat);
    if pivots.last() == Some(&ncols) {
        return None; // pivot in the augmented column: inconsistent
    }
    let mut x = vec![Rat::zero(); ncols];
    for (row, &p) in mat.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Rank of the row list.
pub(crate) fn rank(a: &[Vec<Rat>]) -> usize {
    let mut mat = a.to_vec();
    rref(&mut mat);
    mat.len()
}

/// Is `v` in the row span of `basis`?
pub(crate) fn in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    if v.iter().all(|c| c.is_zero()) {
        return true;
    }
    let mut mat = basis.to_vec();
    let r0 = {
        let mut m = mat.clone();
        rref(&mut m);
        m.len()
    };
    mat.push(v.to_vec());
    rank(&mat) == r0
}
