use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith normal form `s = u * m * v` with unimodular `u`, `v`.
///
/// The diagonal of `s` is non-negative and forms a divisibility chain; the
/// number of nonzero diagonal entries is the rank of `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    u_inv: IntMatrix,
}

impl SnfDecomposition {
    /// Diagonal entries `s_0 | s_1 | ...` of length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Inverse of `u`, tracked alongside the row operations.
    pub fn u_inverse(&self) -> &IntMatrix {
        &self.u_inv
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    /// row[target] += f * row[source]
    fn add_row(&mut self, target: usize, source: usize, f: &BigInt) {
        self.a.add_row_multiple(target, source, f);
        self.u.add_row_multiple(target, source, f);
        self.u_inv.add_col_multiple(source, target, &-f);
    }

    /// col[target] += f * col[source]
    fn add_col(&mut self, target: usize, source: usize, f: &BigInt) {
        self.a.add_col_multiple(target, source, f);
        self.v.add_col_multiple(target, source, f);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Position of the nonzero entry of least absolute value in the
    /// trailing submatrix `[t.., t..]`, first in row-major order on ties.
    fn smallest_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    best = Some((i, j, ax));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Clears row `t` to the right of the pivot as far as division allows.
    /// Returns true when a nonzero remainder is left behind.
    fn reduce_pivot_row(&mut self, t: usize) -> bool {
        let p = self.a[(t, t)].clone();
        let mut dirty = false;
        for j in t + 1..self.a.cols() {
            let q = self.a[(t, j)].div_floor(&p);
            self.add_col(j, t, &-q);
            dirty |= !self.a[(t, j)].is_zero();
        }
        dirty
    }

    fn reduce_pivot_col(&mut self, t: usize) -> bool {
        let p = self.a[(t, t)].clone();
        let mut dirty = false;
        for i in t + 1..self.a.rows() {
            let q = self.a[(i, t)].div_floor(&p);
            self.add_row(i, t, &-q);
            dirty |= !self.a[(i, t)].is_zero();
        }
        dirty
    }

    fn first_non_multiple(&self, t: usize) -> Option<usize> {
        let p = &self.a[(t, t)];
        for i in t + 1..self.a.rows() {
            for j in t + 1..self.a.cols() {
                if !self.a[(i, j)].is_multiple_of(p) {
                    return Some(i);
                }
            }
        }
        None
    }
}

/// Smith normal form by smallest-pivot-first elimination. Deterministic: the
/// same input always yields the same transforms.
pub fn snf(m: &IntMatrix) -> SnfDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = Reducer {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
    };
    for t in 0..rows.min(cols) {
        let Some(_) = r.smallest_entry(t) else { break };
        loop {
            // |pivot| strictly decreases on every pass through this loop
            let (pi, pj) = r.smallest_entry(t).expect("submatrix is nonzero");
            r.swap_rows(t, pi);
            r.swap_cols(t, pj);
            let col_dirty = r.reduce_pivot_col(t);
            let row_dirty = r.reduce_pivot_row(t);
            if col_dirty || row_dirty {
                continue;
            }
            match r.first_non_multiple(t) {
                Some(i) => {
                    r.add_row(t, i, &BigInt::from(1));
                    let dirty = r.reduce_pivot_row(t);
                    debug_assert!(dirty);
                }
                None => break,
            }
        }
        if r.a[(t, t)].is_negative() {
            r.negate_row(t);
        }
    }
    SnfDecomposition {
        s: r.a,
        u: r.u,
        v: r.v,
        u_inv: r.u_inv,
    }
}
