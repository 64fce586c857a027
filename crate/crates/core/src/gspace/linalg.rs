//! Dense matrices over an exact coefficient field, with deterministic
//! Gaussian elimination: first nonzero pivot scanning rows top to bottom
//! in fixed column order, no pivoting heuristics.

use crate::qarith::{FieldDescriptor, FieldElement};

/// A dense row-major matrix of exact field elements. The descriptor is
/// carried explicitly so degenerate shapes (zero rows or columns) stay
/// well-typed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    desc: FieldDescriptor,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(desc: &FieldDescriptor, rows: usize, cols: usize) -> Self {
        Matrix {
            desc: desc.clone(),
            rows,
            cols,
            data: vec![desc.zero(); rows * cols],
        }
    }

    pub fn identity(desc: &FieldDescriptor, n: usize) -> Self {
        let mut m = Self::zeros(desc, n, n);
        for i in 0..n {
            m.set(i, i, desc.one());
        }
        m
    }

    pub fn from_rows(desc: &FieldDescriptor, rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix {
            desc: desc.clone(),
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = &FieldElement> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            desc: self.desc.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn scaled(&self, c: &FieldElement) -> Matrix {
        Matrix {
            desc: self.desc.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            desc: self.desc.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            desc: self.desc.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = Matrix::zeros(&self.desc, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let prod = a.mul(b);
                        let slot = out.get(i, j).add(&prod);
                        out.set(i, j, slot);
                    }
                }
            }
        }
        out
    }

    /// Copy a block of `src` into `self` with its top-left corner at
    /// `(row, col)`.
    pub fn paste(&mut self, row: usize, col: usize, src: &Matrix) {
        assert!(row + src.rows <= self.rows && col + src.cols <= self.cols);
        for i in 0..src.rows {
            for j in 0..src.cols {
                self.set(row + i, col + j, src.get(i, j).clone());
            }
        }
    }

    pub fn column_select(&self, cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            desc: self.desc.clone(),
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    pub fn row_slice(&self, start: usize, len: usize) -> Matrix {
        assert!(start + len <= self.rows);
        Matrix {
            desc: self.desc.clone(),
            rows: len,
            cols: self.cols,
            data: self.data[start * self.cols..(start + len) * self.cols].to_vec(),
        }
    }

    pub fn column_slice(&self, start: usize, len: usize) -> Matrix {
        self.column_select(&(start..start + len).collect::<Vec<_>>())
    }

    /// Stack vertically: `self` on top of `below`.
    pub fn vstack(&self, below: &Matrix) -> Matrix {
        assert_eq!(self.cols, below.cols);
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Matrix {
            desc: self.desc.clone(),
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        }
    }

    /// Kronecker product with row index `(i0, i1) ↦ i0·rows(b) + i1`.
    pub fn kronecker(&self, b: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(&self.desc, self.rows * b.rows, self.cols * b.cols);
        for i0 in 0..self.rows {
            for j0 in 0..self.cols {
                let a = self.get(i0, j0);
                if a.is_zero() {
                    continue;
                }
                for i1 in 0..b.rows {
                    for j1 in 0..b.cols {
                        let v = b.get(i1, j1);
                        if !v.is_zero() {
                            out.set(i0 * b.rows + i1, j0 * b.cols + j1, a.mul(v));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Result of reduced row elimination: rank, pivot columns in increasing
/// order, and the reduced matrix whose first `rank` rows express every
/// column of the input in the pivot-column basis.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    pub reduced: Matrix,
}

/// Gauss–Jordan elimination with the deterministic pivot rule.
pub fn rref(m: &Matrix) -> Elimination {
    let mut a = m.clone();
    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..a.cols {
        if pivot_row >= a.rows {
            break;
        }
        let found = (pivot_row..a.rows).find(|&r| !a.get(r, col).is_zero());
        let Some(r) = found else { continue };
        if r != pivot_row {
            for j in 0..a.cols {
                let tmp = a.get(r, j).clone();
                a.set(r, j, a.get(pivot_row, j).clone());
                a.set(pivot_row, j, tmp);
            }
        }
        let inv = a
            .get(pivot_row, col)
            .inv()
            .expect("pivot entry is nonzero");
        for j in col..a.cols {
            let v = a.get(pivot_row, j).mul(&inv);
            a.set(pivot_row, j, v);
        }
        for r in 0..a.rows {
            if r == pivot_row {
                continue;
            }
            let factor = a.get(r, col).clone();
            if factor.is_zero() {
                continue;
            }
            for j in col..a.cols {
                let v = a.get(r, j).sub(&factor.mul(a.get(pivot_row, j)));
                a.set(r, j, v);
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }
    Elimination {
        rank: pivot_cols.len(),
        pivot_cols,
        reduced: a,
    }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).rank
}

/// Basis of the column space: the pivot columns of the original matrix.
pub fn column_space_basis(m: &Matrix) -> Matrix {
    let elim = rref(m);
    m.column_select(&elim.pivot_cols)
}

/// Solve `M · X = rhs` for one `X` (the pivot-based particular solution),
/// or `None` when some column of `rhs` is outside the column space.
pub fn solve(m: &Matrix, rhs: &Matrix) -> Option<Matrix> {
    assert_eq!(m.rows, rhs.rows);
    let mut aug = Matrix::zeros(&m.desc, m.rows, m.cols + rhs.cols);
    aug.paste(0, 0, m);
    aug.paste(0, m.cols, rhs);
    let elim = rref(&aug);
    let mut x = Matrix::zeros(&m.desc, m.cols, rhs.cols);
    for (row, &col) in elim.pivot_cols.iter().enumerate() {
        if col >= m.cols {
            return None; // a pivot in the rhs block: inconsistent system
        }
        for j in 0..rhs.cols {
            x.set(col, j, elim.reduced.get(row, m.cols + j).clone());
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::FieldDescriptor;

    fn fp7(vals: &[&[i64]]) -> Matrix {
        let desc = FieldDescriptor::Prime(7);
        Matrix::from_rows(
            &desc,
            vals.iter()
                .map(|row| row.iter().map(|&v| desc.from_i64(v)).collect())
                .collect(),
        )
    }

    fn rat(vals: &[&[i64]]) -> Matrix {
        let desc = FieldDescriptor::Rational;
        Matrix::from_rows(
            &desc,
            vals.iter()
                .map(|row| row.iter().map(|&v| desc.from_i64(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_rank_and_pivots() {
        let m = rat(&[&[1, 2, 1], &[2, 4, 0], &[3, 6, 0]]);
        let elim = rref(&m);
        assert_eq!(elim.rank, 2);
        assert_eq!(elim.pivot_cols, vec![0, 2]);

        let z = Matrix::zeros(&FieldDescriptor::Rational, 3, 2);
        assert_eq!(rank(&z), 0);
        let empty = Matrix::zeros(&FieldDescriptor::Rational, 0, 4);
        assert_eq!(rank(&empty), 0);
    }

    #[test]
    fn reduced_rows_express_columns_in_pivot_basis() {
        let m = fp7(&[&[1, 2, 3], &[2, 4, 5], &[3, 6, 1]]);
        let elim = rref(&m);
        let basis = m.column_select(&elim.pivot_cols);
        let coords = elim.reduced.row_slice(0, elim.rank);
        assert_eq!(basis.mul(&coords), m);
    }

    #[test]
    fn solve_recovers_solutions() {
        let m = rat(&[&[2, 0], &[0, 3], &[2, 3]]);
        let rhs = rat(&[&[4], &[6], &[10]]);
        let x = solve(&m, &rhs).unwrap();
        assert_eq!(m.mul(&x), rhs);
        // inconsistent
        let bad = rat(&[&[4], &[6], &[11]]);
        assert!(solve(&m, &bad).is_none());
    }

    #[test]
    fn degenerate_shapes_compose() {
        let desc = FieldDescriptor::Rational;
        let a = Matrix::zeros(&desc, 3, 0);
        let b = Matrix::zeros(&desc, 0, 2);
        let p = a.mul(&b);
        assert_eq!((p.rows(), p.cols()), (3, 2));
        assert!(p.is_zero());
    }

    #[test]
    fn kronecker_shape_and_values() {
        let a = rat(&[&[1, 2]]);
        let b = rat(&[&[3], &[4]]);
        let k = a.kronecker(&b);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(k, rat(&[&[3, 6], &[4, 8]]));
    }

    #[test]
    fn product_over_fp() {
        let a = fp7(&[&[1, 2], &[3, 4]]);
        let b = fp7(&[&[5, 6], &[0, 1]]);
        assert_eq!(a.mul(&b), fp7(&[&[5, 1], &[1, 1]]));
    }
}
