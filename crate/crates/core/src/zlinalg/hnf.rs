use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Extended gcd with a fixed tie-breaking rule: returns `(g, s, t)` with
/// `g = gcd(a, b) >= 0` and `s*a + t*b = g`. When `a` divides `b` the
/// cofactors are `(sign a, 0)`, so already-reduced inputs are left alone.
pub fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if b.is_zero() {
        let s = if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        return (a.abs(), s, BigInt::zero());
    }
    if a.is_zero() {
        let t = if b.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        return (b.abs(), BigInt::zero(), t);
    }
    if b.is_multiple_of(a) {
        let s = if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        return (a.abs(), s, BigInt::zero());
    }
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Column-style Hermite normal form.
///
/// Returns `(h, u)` with `h = m * u`, `u` unimodular, and `h` in lower
/// column-echelon form: the nonzero columns come first, each has a positive
/// pivot strictly below the previous pivot, and every other entry in a pivot
/// row is reduced into `[0, pivot)`. Two matrices have the same column lattice
/// iff their `h` agree.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(cols);
    let mut pc = 0;
    for i in 0..rows {
        if pc == cols {
            break;
        }
        for j in pc + 1..cols {
            if h[(i, j)].is_zero() {
                continue;
            }
            let a = h[(i, pc)].clone();
            let b = h[(i, j)].clone();
            let (g, s, t) = xgcd(&a, &b);
            let tr = [s, -(&b / &g), t, &a / &g];
            h.combine_cols(pc, j, &tr);
            u.combine_cols(pc, j, &tr);
        }
        if h[(i, pc)].is_zero() {
            continue;
        }
        if h[(i, pc)].is_negative() {
            h.negate_col(pc);
            u.negate_col(pc);
        }
        let p = h[(i, pc)].clone();
        for j in 0..pc {
            let q = h[(i, j)].div_floor(&p);
            if !q.is_zero() {
                let f = -q;
                h.add_col_multiple(j, pc, &f);
                u.add_col_multiple(j, pc, &f);
            }
        }
        pc += 1;
    }
    (h, u)
}

/// Number of nonzero columns of a column HNF.
fn hnf_rank(h: &IntMatrix) -> usize {
    (0..h.cols()).take_while(|&j| !h.is_column_zero(j)).count()
}

/// Canonical basis (nonzero HNF columns) of the lattice spanned by the columns of `m`.
pub fn column_lattice_basis(m: &IntMatrix) -> IntMatrix {
    let (h, _) = hnf(m);
    let r = hnf_rank(&h);
    h.select_columns(&(0..r).collect::<Vec<_>>())
}

pub fn same_column_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    column_lattice_basis(a) == column_lattice_basis(b)
}

/// Whether `v` lies in the column lattice of `m`.
pub fn lattice_contains(m: &IntMatrix, v: &[BigInt]) -> bool {
    let extended = m.hstack(&IntMatrix::from_columns(m.rows(), &[v.to_vec()]));
    same_column_lattice(m, &extended)
}

/// A Z-basis of `{x : m x = 0}` as the columns of the returned matrix,
/// normalized to its own column HNF. Has `cols(m) - rank(m)` columns.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf(m);
    let r = hnf_rank(&h);
    let k = u.select_columns(&(r..m.cols()).collect::<Vec<_>>());
    hnf(&k).0
}
