use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::IntMatrix;

/// Exact solution of `m x = v` over Q by Gauss-Jordan elimination.
///
/// Free variables are set to zero, so the answer is deterministic. Returns
/// `None` when the system is inconsistent.
pub fn solve_rational(m: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigRational>> {
    assert_eq!(m.rows(), v.len(), "right-hand side length mismatch");
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut r: Vec<BigRational> = (0..cols)
                .map(|j| BigRational::from_integer(m[(i, j)].clone()))
                .collect();
            r.push(BigRational::from_integer(v[i].clone()));
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            let pivot_row = a[r].clone();
            for (x, p) in a[i][c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= p * &f;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][cols].clone();
    }
    Some(x)
}
