use crate::decompose::rank_decompose;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;

/// The `p x p` matrix `A` for which both `A` and `diag(I_r, 0) + A` are
/// invertible.
///
/// Layout along the diagonal, all other entries zero:
/// - `r` even: `r/2` copies of `[[0,1],[1,1]]`, then `I_{p-r}`;
/// - `r = 1`: `[[1,1],[1,0]]`, then `I_{p-2}`;
/// - `r` odd, `r > 1`: `[[1,1,1],[1,1,0],[1,0,0]]`, then `(r-3)/2` copies of
///   `[[0,1],[1,1]]`, then `I_{p-r}`.
///
/// Every entry is `0` or the field's one, so the same matrix works over any
/// field. Diagonal blocks of `diag(I_r, 0) + A` are `[[1,1],[1,2]]`
/// (determinant 1), `[[2,1],[1,0]]` (determinant -1) and
/// `[[2,1,1],[1,2,0],[1,0,1]]` (determinant 1). Both properties are
/// re-checked before returning.
pub fn lemma_a(p: usize, r: usize, field: FieldSpec) -> Result<Matrix> {
    if p < 2 {
        return Err(Error::BlockTooSmall(p));
    }
    if r > p {
        return Err(Error::BadRank { p, r });
    }
    let mut codes = vec![0u32; p * p];
    let mut put = |i: usize, j: usize| codes[i * p + j] = 1;

    let mut at = 0;
    let mut pairs = r / 2;
    if r == 1 {
        for (i, j) in [(0, 0), (0, 1), (1, 0)] {
            put(i, j);
        }
        at = 2;
        pairs = 0;
    } else if r % 2 == 1 {
        for (i, j) in [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)] {
            put(i, j);
        }
        at = 3;
        pairs = (r - 3) / 2;
    }
    for _ in 0..pairs {
        for (i, j) in [(0, 1), (1, 0), (1, 1)] {
            put(at + i, at + j);
        }
        at += 2;
    }
    for k in at..p {
        put(k, k);
    }

    let a = Matrix::from_codes(p, p, field, &codes)?;
    if !a.is_invertible() {
        return Err(Error::Invariant("perturbation matrix is singular"));
    }
    if !Matrix::diag_identity_prefix(p, r, field).add(&a)?.is_invertible() {
        return Err(Error::Invariant("diag(I_r, 0) + A is singular"));
    }
    Ok(a)
}

/// Output of [`complete_w`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    /// `W = P^-1 * A * Q^-1`.
    pub w: Matrix,
    /// `s + W`, the new bottom-right block.
    pub corner: Matrix,
    /// Rank of `s`.
    pub rank: usize,
}

/// Finds an invertible `W` such that `s + W` is invertible.
///
/// With `P * s * Q = diag(I_r, 0)` and `A = lemma_a(p, r)`,
/// `s + W = P^-1 * (diag(I_r, 0) + A) * Q^-1`.
pub fn complete_w(s: &Matrix) -> Result<Completion> {
    let d = rank_decompose(s)?;
    let a = lemma_a(s.rows(), d.rank, *s.field())?;
    let w = d.p_mat.inverse()?.mul(&a)?.mul(&d.q_mat.inverse()?)?;
    let corner = s.add(&w)?;
    Ok(Completion { w, corner, rank: d.rank })
}
