//! Exact integer linear algebra: Hermite and Smith normal forms with
//! unimodular transforms, kernels, cokernels as finitely generated abelian
//! groups, and exact rational solving.

mod cokernel;
mod group;
mod hnf;
mod matrix;
mod rational;
mod snf;

pub use cokernel::{cokernel, CokernelMap};
pub use group::FgAbelianGroup;
pub use hnf::{
    column_lattice_basis, hnf, kernel_basis, lattice_contains, same_column_lattice, xgcd,
};
pub use matrix::IntMatrix;
pub use rational::solve_rational;
pub use snf::{snf, SnfDecomposition};
