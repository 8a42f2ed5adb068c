use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
///
/// Zero-sized shapes are legal: a `0 x n` or `n x 0` matrix behaves as the
/// unique map to or from the zero module.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors. Panics if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Builds a `rows x cols` matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for (k, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(idx.len(), self.cols);
        for (k, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m[(k, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Horizontal concatenation `[self other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += &self[(i, j)] * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_column_zero(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self[(i, j)].is_zero())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += factor * row[source]`
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = &self[(source, j)] * factor;
            self[(target, j)] += delta;
        }
    }

    /// `col[target] += factor * col[source]`
    pub fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = &self[(i, source)] * factor;
            self[(i, target)] += delta;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = x;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = x;
        }
    }

    /// Applies the 2x2 transform `[[p, q], [r, s]]` to rows `a` and `b`:
    /// `row_a <- p row_a + q row_b`, `row_b <- r row_a + s row_b`.
    pub fn combine_rows(&mut self, a: usize, b: usize, t: &[BigInt; 4]) {
        for j in 0..self.cols {
            let x = self[(a, j)].clone();
            let y = self[(b, j)].clone();
            self[(a, j)] = &t[0] * &x + &t[1] * &y;
            self[(b, j)] = &t[2] * &x + &t[3] * &y;
        }
    }

    /// Column analogue of [`combine_rows`](Self::combine_rows):
    /// `col_a <- p col_a + r col_b`, `col_b <- q col_a + s col_b`,
    /// i.e. right multiplication by `[[p, q], [r, s]]` on columns `(a, b)`.
    pub fn combine_cols(&mut self, a: usize, b: usize, t: &[BigInt; 4]) {
        for i in 0..self.rows {
            let x = self[(i, a)].clone();
            let y = self[(i, b)].clone();
            self[(i, a)] = &t[0] * &x + &t[2] * &y;
            self[(i, b)] = &t[1] * &x + &t[3] * &y;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    /// Rank over the rationals (fraction-free row echelon).
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let Some(p) = (rank..a.rows).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(rank, p);
            for i in rank + 1..a.rows {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                let pivot = a[(rank, col)].clone();
                for j in col..a.cols {
                    let v = &a[(i, j)] * &pivot - &a[(rank, j)] * &f;
                    a[(i, j)] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}{}", self.rows, self.cols, self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(&a * &b, IntMatrix::from_rows(&[vec![2, 1], vec![4, 3]]));
        assert_eq!(
            a.transpose(),
            IntMatrix::from_rows(&[vec![1, 3], vec![2, 4]])
        );
    }

    #[test]
    fn zero_dimensional_shapes_compose() {
        let a = IntMatrix::zeros(3, 0);
        let b = IntMatrix::zeros(0, 2);
        let p = &a * &b;
        assert_eq!((p.rows(), p.cols()), (3, 2));
        assert!(p.is_zero());
        assert_eq!(IntMatrix::identity(0).determinant(), BigInt::one());
    }

    #[test]
    fn determinant_and_rank() {
        let m = IntMatrix::from_rows(&[vec![-2, 0, 0], vec![-4, 6, 0], vec![1, 1, 2]]);
        assert_eq!(m.determinant(), BigInt::from(-24));
        assert_eq!(m.rank(), 3);
        let s = IntMatrix::from_rows(&[vec![1, 1], vec![2, 2]]);
        assert_eq!(s.determinant(), BigInt::zero());
        assert_eq!(s.rank(), 1);
        let z = IntMatrix::from_rows(&[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(z.determinant(), BigInt::from(-1));
    }
}
