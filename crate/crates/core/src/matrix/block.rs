use crate::error::{Error, Result};
use crate::field::FieldElement;

use super::Matrix;

/// Borrowed view of the `p x p` block in block-row `i`, block-column `j`.
#[derive(Debug, Clone, Copy)]
pub struct BlockView<'a> {
    parent: &'a Matrix,
    p: usize,
    i: usize,
    j: usize,
}

impl<'a> BlockView<'a> {
    pub fn block_size(&self) -> usize {
        self.p
    }

    pub fn position(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        assert!(r < self.p && c < self.p);
        self.parent.get(self.i * self.p + r, self.j * self.p + c)
    }

    pub fn to_matrix(&self) -> Matrix {
        self.parent.submatrix(self.i * self.p, self.j * self.p, self.p, self.p)
    }
}

fn divides(p: usize, n: usize, what: &str) -> Result<()> {
    if p == 0 || !n.is_multiple_of(p) {
        return Err(Error::BlockSizeMismatch(format!("{p} does not divide {what} {n}")));
    }
    Ok(())
}

impl Matrix {
    /// Number of `p x p` blocks along each axis.
    pub fn block_grid(&self, p: usize) -> Result<(usize, usize)> {
        divides(p, self.rows, "row count")?;
        divides(p, self.cols, "column count")?;
        Ok((self.rows / p, self.cols / p))
    }

    pub fn block_view(&self, p: usize, i: usize, j: usize) -> Result<BlockView<'_>> {
        let (br, bc) = self.block_grid(p)?;
        if i >= br || j >= bc {
            return Err(Error::IndexOutOfRange { i, j, block_rows: br, block_cols: bc });
        }
        Ok(BlockView { parent: self, p, i, j })
    }

    pub fn block(&self, p: usize, i: usize, j: usize) -> Result<Matrix> {
        Ok(self.block_view(p, i, j)?.to_matrix())
    }

    /// Block-row `i`: the `p x cols` strip of rows `i*p..(i+1)*p`.
    pub fn blocks_row(&self, p: usize, i: usize) -> Result<Matrix> {
        divides(p, self.rows, "row count")?;
        let br = self.rows / p;
        if i >= br {
            return Err(Error::IndexOutOfRange { i, j: 0, block_rows: br, block_cols: self.cols / p.max(1) });
        }
        Ok(self.submatrix(i * p, 0, p, self.cols))
    }

    /// Block-column `j`: the `rows x p` strip of columns `j*p..(j+1)*p`.
    pub fn blocks_col(&self, p: usize, j: usize) -> Result<Matrix> {
        divides(p, self.cols, "column count")?;
        let bc = self.cols / p;
        if j >= bc {
            return Err(Error::IndexOutOfRange { i: 0, j, block_rows: self.rows / p.max(1), block_cols: bc });
        }
        Ok(self.submatrix(0, j * p, self.rows, p))
    }

    /// Copy of the `rows x cols` window at `(r0, c0)`; panics when out of range.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "window out of range");
        let mut data = Vec::with_capacity(rows * cols);
        for r in r0..r0 + rows {
            data.extend_from_slice(&self.row(r)[c0..c0 + cols]);
        }
        Matrix::from_parts(rows, cols, self.field, data)
    }

    /// Tiles a grid of matrices. Matrices in one grid row share a row count,
    /// matrices in one grid column share a column count.
    pub fn assemble(grid: &[Vec<Matrix>]) -> Result<Matrix> {
        let first =
            grid.first().and_then(|r| r.first()).ok_or_else(|| Error::BlockSizeMismatch("empty block grid".into()))?;
        let field = first.field;
        let widths: Vec<usize> = grid[0].iter().map(Matrix::cols).collect();
        for (gi, grid_row) in grid.iter().enumerate() {
            if grid_row.len() != widths.len() {
                return Err(Error::BlockSizeMismatch(format!(
                    "grid row {gi} has {} blocks, expected {}",
                    grid_row.len(),
                    widths.len()
                )));
            }
            let height = grid_row[0].rows;
            for (gj, m) in grid_row.iter().enumerate() {
                if m.field != field {
                    return Err(Error::FieldMismatch { left: field.to_string(), right: m.field.to_string() });
                }
                if m.rows != height || m.cols != widths[gj] {
                    return Err(Error::BlockSizeMismatch(format!(
                        "block ({gi}, {gj}) is {}x{}, expected {height}x{}",
                        m.rows, m.cols, widths[gj]
                    )));
                }
            }
        }
        let cols: usize = widths.iter().sum();
        let rows: usize = grid.iter().map(|r| r[0].rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for grid_row in grid {
            for r in 0..grid_row[0].rows {
                for m in grid_row {
                    data.extend_from_slice(m.row(r));
                }
            }
        }
        Ok(Matrix::from_parts(rows, cols, field, data))
    }

    /// All `p x p` blocks in row-major grid order.
    pub fn blocks(&self, p: usize) -> Result<Vec<Vec<Matrix>>> {
        let (br, bc) = self.block_grid(p)?;
        Ok((0..br).map(|i| (0..bc).map(|j| self.submatrix(i * p, j * p, p, p)).collect()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::rng::SplitMix64;

    #[test]
    fn identity_blocks() {
        let f = FieldSpec::prime(2).unwrap();
        let i4 = Matrix::identity(4, f);
        assert_eq!(i4.block(2, 0, 0).unwrap(), Matrix::identity(2, f));
        assert_eq!(i4.block(2, 0, 1).unwrap(), Matrix::zero(2, 2, f));
        let v = i4.block_view(2, 1, 1).unwrap();
        assert_eq!(v.get(1, 1), FieldElement::ONE);
        assert_eq!(v.position(), (1, 1));
    }

    #[test]
    fn strips_have_expected_shapes() {
        let f = FieldSpec::prime(3).unwrap();
        let m = Matrix::random(6, 6, f, &mut SplitMix64::new(2));
        let x = m.blocks_row(2, 1).unwrap();
        let y = m.blocks_col(2, 2).unwrap();
        assert_eq!((x.rows(), x.cols()), (2, 6));
        assert_eq!((y.rows(), y.cols()), (6, 2));
        assert_eq!(x.block(2, 0, 2).unwrap(), m.block(2, 1, 2).unwrap());
        assert_eq!(y.block(2, 1, 0).unwrap(), m.block(2, 1, 2).unwrap());
    }

    #[test]
    fn index_and_size_errors() {
        let f = FieldSpec::prime(2).unwrap();
        let m = Matrix::identity(4, f);
        assert!(matches!(m.block(3, 0, 0), Err(Error::BlockSizeMismatch(_))));
        assert!(matches!(m.block(0, 0, 0), Err(Error::BlockSizeMismatch(_))));
        assert!(matches!(m.block(2, 2, 0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(m.blocks_row(2, 2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(m.blocks_col(3, 0), Err(Error::BlockSizeMismatch(_))));
        let a = Matrix::identity(2, f);
        let b = Matrix::identity(3, f);
        assert!(matches!(Matrix::assemble(&[vec![a.clone(), b]]), Err(Error::BlockSizeMismatch(_))));
        assert!(matches!(Matrix::assemble(&[vec![a.clone()], vec![a.clone(), a]]), Err(Error::BlockSizeMismatch(_))));
        assert!(Matrix::assemble(&[]).is_err());
    }

    #[test]
    fn assemble_mixed_shapes() {
        let f = FieldSpec::prime(5).unwrap();
        let mut rng = SplitMix64::new(8);
        let m = Matrix::random(5, 5, f, &mut rng);
        let grid = vec![
            vec![m.submatrix(0, 0, 3, 3), m.submatrix(0, 3, 3, 2)],
            vec![m.submatrix(3, 0, 2, 3), m.submatrix(3, 3, 2, 2)],
        ];
        assert_eq!(Matrix::assemble(&grid).unwrap(), m);
    }
}
