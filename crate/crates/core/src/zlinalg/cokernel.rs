use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{snf, FgAbelianGroup, IntMatrix};

/// Coordinate map `Z^rows -> Z^r + (+) Z/d_i` onto the canonical cokernel.
///
/// Output coordinates list the free summands first, then the torsion
/// summands in ascending invariant-factor order; torsion coordinates are
/// reduced into `[0, d_i)`.
#[derive(Clone, Debug)]
pub struct CokernelMap {
    u: IntMatrix,
    u_inv: IntMatrix,
    free_rows: Vec<usize>,
    torsion_rows: Vec<(usize, BigInt)>,
}

impl CokernelMap {
    pub fn source_dim(&self) -> usize {
        self.u.rows()
    }

    pub fn target_len(&self) -> usize {
        self.free_rows.len() + self.torsion_rows.len()
    }

    pub fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.u.mul_vec(x);
        let mut out: Vec<BigInt> = self.free_rows.iter().map(|&i| y[i].clone()).collect();
        out.extend(self.torsion_rows.iter().map(|(i, d)| y[*i].mod_floor(d)));
        out
    }

    /// Representatives in `Z^rows` of the canonical generators, in the same
    /// order as the output coordinates of [`project`](Self::project).
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.free_rows
            .iter()
            .chain(self.torsion_rows.iter().map(|(i, _)| i))
            .map(|&i| self.u_inv.column(i))
            .collect()
    }

    /// Generators of the torsion summands together with their orders.
    pub fn torsion_generators(&self) -> Vec<(Vec<BigInt>, BigInt)> {
        self.torsion_rows
            .iter()
            .map(|(i, d)| (self.u_inv.column(*i), d.clone()))
            .collect()
    }

    pub fn is_zero_image(&self, x: &[BigInt]) -> bool {
        self.project(x).iter().all(Zero::is_zero)
    }
}

/// `Z^rows / (column lattice of m)` in canonical form together with its
/// discrete-log coordinate map.
pub fn cokernel(m: &IntMatrix) -> (FgAbelianGroup, CokernelMap) {
    let d = snf(m);
    let diag = d.diagonal();
    let rank = d.rank();
    let torsion_rows: Vec<(usize, BigInt)> = diag
        .iter()
        .enumerate()
        .take(rank)
        .filter(|(_, s)| *s > &BigInt::from(1))
        .map(|(i, s)| (i, s.clone()))
        .collect();
    let free_rows: Vec<usize> = (rank..m.rows()).collect();
    let group = FgAbelianGroup::from_snf_diagonal(m.rows() - rank, &diag[..rank]);
    let map = CokernelMap {
        u_inv: d.u_inverse().clone(),
        u: d.u,
        free_rows,
        torsion_rows,
    };
    (group, map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn segment_cokernel_is_z2() {
        let m = IntMatrix::from_rows(&[vec![-6, 4]]);
        let (g, map) = cokernel(&m);
        assert_eq!(g, FgAbelianGroup::cyclic(2));
        assert!(map.is_zero_image(&big(&[4])));
        assert_eq!(map.project(&big(&[1])), big(&[1]));
    }

    #[test]
    fn identity_and_empty_cases() {
        assert!(cokernel(&IntMatrix::identity(3)).0.is_trivial());
        let (g, map) = cokernel(&IntMatrix::zeros(2, 0));
        assert_eq!(g, FgAbelianGroup::free(2));
        assert_eq!(map.project(&big(&[3, -1])), big(&[3, -1]));
    }

    #[test]
    fn torsion_bq_matrix_has_trivial_cokernel() {
        let m = IntMatrix::from_rows(&[vec![-2, 3, 0, 0], vec![-2, 0, 5, 0], vec![-1, 1, 1, 2]]);
        assert!(cokernel(&m).0.is_trivial());
    }

    #[test]
    fn projection_kills_image_and_hits_generators() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let (g, map) = cokernel(&m);
        assert_eq!(g.invariant_factors(), big(&[2, 6, 12]).as_slice());
        for col in m.columns() {
            assert!(map.is_zero_image(&col));
        }
        for (k, gen) in map.generators().iter().enumerate() {
            let p = map.project(gen);
            for (i, x) in p.iter().enumerate() {
                assert_eq!(*x, BigInt::from((i == k) as i64));
            }
        }
    }
}
