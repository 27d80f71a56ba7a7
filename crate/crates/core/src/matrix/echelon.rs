use crate::field::FieldElement;

use super::Matrix;

/// Result of Gauss-Jordan reduction to reduced row-echelon form.
pub(crate) struct Reduction {
    pub rref: Matrix,
    /// Pivot column of each pivot row, in row order.
    pub pivots: Vec<usize>,
    /// `left * input = rref`, present when requested.
    pub left: Option<Matrix>,
}

impl Reduction {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Reduces `m` to RREF with row swaps, row scaling and row additions only.
///
/// The pivot of each column is the first nonzero entry at or below the
/// current row. Pivots are scaled to one and every other entry of the pivot
/// column is cleared. When `record` is set, the same row operations are
/// applied to an identity matrix to produce the left factor.
pub(crate) fn reduce(m: &Matrix, record: bool) -> Reduction {
    let (rows, cols) = (m.rows(), m.cols());
    let f = *m.field();
    let mut work = m.clone();
    let mut left = record.then(|| Matrix::identity(rows, f));
    let mut pivots = Vec::new();

    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(src) = (row..rows).find(|&r| !work.get(r, col).is_zero()) else {
            continue;
        };
        if src != row {
            swap_rows(work.data_mut(), cols, src, row);
            if let Some(l) = left.as_mut() {
                swap_rows(l.data_mut(), rows, src, row);
            }
        }
        let scale = f.inv(work.get(row, col)).expect("pivot is nonzero");
        f.scale_in_place(row_mut(work.data_mut(), cols, row), scale);
        if let Some(l) = left.as_mut() {
            f.scale_in_place(row_mut(l.data_mut(), rows, row), scale);
        }
        for other in 0..rows {
            if other == row {
                continue;
            }
            let factor = work.get(other, col);
            if factor.is_zero() {
                continue;
            }
            let (dst, src) = two_rows(work.data_mut(), cols, other, row);
            f.sub_scaled(dst, src, factor);
            if let Some(l) = left.as_mut() {
                let (dst, src) = two_rows(l.data_mut(), rows, other, row);
                f.sub_scaled(dst, src, factor);
            }
        }
        pivots.push(col);
        row += 1;
    }

    Reduction { rref: work, pivots, left }
}

fn row_mut(data: &mut [FieldElement], width: usize, r: usize) -> &mut [FieldElement] {
    &mut data[r * width..(r + 1) * width]
}

fn swap_rows(data: &mut [FieldElement], width: usize, a: usize, b: usize) {
    let (dst, src) = two_rows(data, width, a, b);
    dst.swap_with_slice(src);
}

/// Disjoint mutable/shared views of rows `dst` and `src` (`dst != src`).
fn two_rows(
    data: &mut [FieldElement],
    width: usize,
    dst: usize,
    src: usize,
) -> (&mut [FieldElement], &mut [FieldElement]) {
    debug_assert_ne!(dst, src);
    if dst < src {
        let (lo, hi) = data.split_at_mut(src * width);
        (&mut lo[dst * width..(dst + 1) * width], &mut hi[..width])
    } else {
        let (lo, hi) = data.split_at_mut(dst * width);
        (&mut hi[..width], &mut lo[src * width..(src + 1) * width])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::rng::SplitMix64;

    #[test]
    fn left_factor_reproduces_rref() {
        let f = FieldSpec::prime(7).unwrap();
        let mut rng = SplitMix64::new(5);
        for _ in 0..50 {
            let m = Matrix::random(4, 6, f, &mut rng);
            let red = reduce(&m, true);
            assert_eq!(red.left.unwrap().mul(&m).unwrap(), red.rref);
            // pivot columns are strictly increasing unit vectors
            for (r, &c) in red.pivots.iter().enumerate() {
                for i in 0..4 {
                    let want = if i == r { FieldElement::ONE } else { FieldElement::ZERO };
                    assert_eq!(red.rref.get(i, c), want);
                }
            }
            assert!(red.pivots.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn identity_needs_no_operations() {
        let f = FieldSpec::binary(4).unwrap();
        let red = reduce(&Matrix::identity(5, f), true);
        assert_eq!(red.left.unwrap(), Matrix::identity(5, f));
        assert_eq!(red.pivots, vec![0, 1, 2, 3, 4]);
    }
}
