use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{snf, IntMatrix};

/// A finitely generated abelian group `Z^r + Z/d_1 + ... + Z/d_k` in
/// invariant-factor form: every `d_i >= 2` and `d_i | d_{i+1}`. Two groups
/// are isomorphic iff they compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FgAbelianGroup {
    free_rank: usize,
    #[serde(serialize_with = "crate::document::bigint_vec::serialize")]
    invariant_factors: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders(0, &[order.into()])
    }

    /// `Z^free_rank + (+)_i Z/orders_i`, canonicalized. An order of 0 means a
    /// free summand, an order of 1 is dropped, signs are ignored.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[BigInt]) -> Self {
        let d = snf(&IntMatrix::diagonal(orders));
        Self::from_snf_diagonal(free_rank, &d.diagonal())
    }

    /// Reads the group off an SNF diagonal: zero entries are free summands.
    pub(crate) fn from_snf_diagonal(extra_free: usize, diagonal: &[BigInt]) -> Self {
        let mut free_rank = extra_free;
        let mut invariant_factors = Vec::new();
        for x in diagonal {
            if x.is_zero() {
                free_rank += 1;
            } else if !x.is_one() {
                invariant_factors.push(x.abs());
            }
        }
        debug_assert!(invariant_factors
            .windows(2)
            .all(|w| w[1].is_multiple_of(&w[0])));
        FgAbelianGroup {
            free_rank,
            invariant_factors,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    /// Order of the torsion subgroup; 1 for a torsion-free group.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Exponent of the torsion subgroup (the largest invariant factor).
    pub fn exponent(&self) -> BigInt {
        self.invariant_factors
            .last()
            .cloned()
            .unwrap_or_else(BigInt::one)
    }

    pub fn torsion(&self) -> Self {
        FgAbelianGroup {
            free_rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.free_rank + self.invariant_factors.len() <= 1
    }

    /// Direct sum, canonicalized.
    pub fn direct_sum(&self, other: &FgAbelianGroup) -> Self {
        let orders: Vec<BigInt> = self
            .invariant_factors
            .iter()
            .chain(&other.invariant_factors)
            .cloned()
            .collect();
        Self::from_cyclic_orders(self.free_rank + other.free_rank, &orders)
    }
}

impl fmt::Display for FgAbelianGroup {
    /// `Z^r x Z/d1 x Z/d2`, with `Z` for rank one and `1` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" x "))
    }
}
