//! Rank decomposition of a square matrix through `diag(I_r, 0)`.
//!
//! Orientation: the returned factors satisfy `P * S * Q = diag(I_r, 0)`.
//! The statement-form factors with `S = P' * diag(I_r, 0) * Q'` are
//! `P' = P^-1`, `Q' = Q^-1`.

use crate::error::{Error, Result};
use crate::matrix::{reduce, Matrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankDecomposition {
    pub p_mat: Matrix,
    pub q_mat: Matrix,
    pub rank: usize,
}

/// Computes invertible `P`, `Q` with `P * s * Q = diag(I_r, 0)`.
///
/// Row operations bring `s` to reduced row-echelon form `R = P * s`. Each
/// pivot column of `R` is then a unit vector `e_i`, so subtracting multiples
/// of it clears row `i` of every non-pivot column; swapping pivot column `c_i`
/// into position `i` finishes the reduction. `Q` accumulates those column
/// operations. The identity and the zero matrix need no operations and
/// yield `P = Q = I`.
pub fn rank_decompose(s: &Matrix) -> Result<RankDecomposition> {
    if !s.is_square() {
        return Err(Error::NotSquare { rows: s.rows(), cols: s.cols() });
    }
    let n = s.rows();
    let f = *s.field();
    let red = reduce(s, true);
    let rank = red.rank();
    let p_mat = red.left.expect("left factor recorded");

    // Q is built transposed so column operations become row operations.
    let mut qt = Matrix::identity(n, f);
    let is_pivot = {
        let mut v = vec![false; n];
        for &c in &red.pivots {
            v[c] = true;
        }
        v
    };
    for (i, &c) in red.pivots.iter().enumerate() {
        for j in (0..n).filter(|&j| !is_pivot[j]) {
            let factor = red.rref.get(i, j);
            if factor.is_zero() {
                continue;
            }
            // column j -= factor * column c
            let src = qt.row(c).to_vec();
            let w = qt.cols();
            f.sub_scaled(&mut qt.data_mut()[j * w..(j + 1) * w], &src, factor);
        }
    }
    for (i, &c) in red.pivots.iter().enumerate() {
        if c != i {
            let w = qt.cols();
            let data = qt.data_mut();
            for k in 0..w {
                data.swap(i * w + k, c * w + k);
            }
        }
    }

    Ok(RankDecomposition { p_mat, q_mat: qt.transpose(), rank })
}

/// True iff `d` is a valid decomposition of `s`: both factors invertible,
/// `P * s * Q = diag(I_r, 0)` and `r = rank(s)`.
pub fn decomposition_check(s: &Matrix, d: &RankDecomposition) -> bool {
    let n = s.rows();
    let shapes_ok =
        s.is_square() && [&d.p_mat, &d.q_mat].iter().all(|m| m.rows() == n && m.cols() == n && m.field() == s.field());
    if !shapes_ok || d.rank > n {
        return false;
    }
    if d.p_mat.inverse().is_err() || d.q_mat.inverse().is_err() {
        return false;
    }
    let Ok(product) = d.p_mat.mul(s).and_then(|ps| ps.mul(&d.q_mat)) else {
        return false;
    };
    product == Matrix::diag_identity_prefix(n, d.rank, *s.field()) && d.rank == s.rank()
}
