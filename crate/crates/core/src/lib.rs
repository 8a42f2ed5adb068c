//! Invariants of toric Deligne-Mumford stacks computed from stacky fans by
//! exact integer linear algebra.
//!
//! A [`StackyFan`] is built from an ambient module `N = Z^d + (+) Z/q_i`, a
//! lift `B` of the ray map and a list of maximal cones. From it the crate
//! computes the dual group, the acting group `G`, isotropy groups, the
//! component group `G/G0`, the universal-cover fan, the global-quotient test
//! and the (fake) weighted projective classification.

pub mod classify;
pub mod document;
mod error;
pub mod fan;
pub mod fixtures;
pub mod isotropy;
pub mod selftest;
pub mod sheared;
pub mod zlinalg;

pub use classify::{classify_wps, torsion_gcd_check, WpsKind, WpsReport};
pub use document::{DocumentError, FanDocument};
pub use error::{Error, Result};
pub use fan::{make_stacky_fan, AmbientModule, Cone, LieGroupDescriptor, StackyFan};
pub use isotropy::{PointPattern, RationalCharacter};
pub use sheared::ShearedSimplex;
pub use zlinalg::{FgAbelianGroup, IntMatrix};
