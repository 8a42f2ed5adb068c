//! The worked examples used throughout the tests and the bundled documents.

use num_bigint::BigInt;

use crate::fan::{make_stacky_fan, AmbientModule, Cone, StackyFan};
use crate::zlinalg::IntMatrix;

fn cones(list: &[&[usize]]) -> Vec<Cone> {
    list.iter().map(|c| Cone::new(c.iter().copied())).collect()
}

fn triangle() -> Vec<Cone> {
    cones(&[&[0, 1], &[0, 2], &[1, 2]])
}

/// Labelled simplex with labels 2, 3, 5: the weighted projective stack P(15,10,6).
pub fn p15_10_6() -> StackyFan {
    let b = IntMatrix::from_rows(&[vec![-2, 3, 0], vec![-2, 0, 5]]);
    make_stacky_fan(AmbientModule::free(2), b, triangle(), true).expect("valid fixture")
}

/// The same rays over `N = Z^2 + Z/2`, with torsion row `x + y + z mod 2`:
/// the weighted projective stack P(30,20,12).
pub fn torsion_wps() -> StackyFan {
    let module = AmbientModule::new(2, vec![BigInt::from(2)]).expect("q >= 2");
    let b = IntMatrix::from_rows(&[vec![-2, 3, 0], vec![-2, 0, 5], vec![-1, 1, 1]]);
    make_stacky_fan(module, b, triangle(), true).expect("valid fixture")
}

/// Complete fan with four rays over `N = Z^2 + Z/2`.
pub fn fig2() -> StackyFan {
    let module = AmbientModule::new(2, vec![BigInt::from(2)]).expect("q >= 2");
    let b = IntMatrix::from_rows(&[vec![-2, 0, 3, 0], vec![-4, 6, 0, -2], vec![1, 1, 1, 1]]);
    let max = cones(&[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
    make_stacky_fan(module, b, max, true).expect("valid fixture")
}

/// Segment in `N = Z` with endpoint labels `r` and `s`: `beta = [-s r]`.
pub fn segment(r: i64, s: i64) -> StackyFan {
    assert!(r > 0 && s > 0, "labels must be positive");
    let b = IntMatrix::from_rows(&[vec![-s, r]]);
    make_stacky_fan(AmbientModule::free(1), b, cones(&[&[0], &[1]]), true).expect("valid fixture")
}

/// The fan of the projective plane.
pub fn p2() -> StackyFan {
    let b = IntMatrix::from_rows(&[vec![-1, 1, 0], vec![-1, 0, 1]]);
    make_stacky_fan(AmbientModule::free(2), b, triangle(), true).expect("valid fixture")
}

/// Every named fixture, in a fixed order.
pub fn all() -> Vec<(&'static str, StackyFan)> {
    vec![
        ("p15_10_6", p15_10_6()),
        ("torsion_wps", torsion_wps()),
        ("fig2", fig2()),
        ("segment_4_6", segment(4, 6)),
        ("segment_2_2", segment(2, 2)),
        ("p2", p2()),
    ]
}
