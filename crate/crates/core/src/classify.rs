//! Recognition of weighted projective and fake weighted projective stacks.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::document::bigint_vec;
use crate::fan::StackyFan;
use crate::isotropy::{component_group, universal_cover};
use crate::zlinalg::{kernel_basis, FgAbelianGroup};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WpsKind {
    WeightedProjective,
    FakeWeightedProjective,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WpsReport {
    pub kind: WpsKind,
    /// Positive generator of `ker beta`; for the fake case this is also the
    /// generator of `ker beta0` on the universal cover.
    #[serde(serialize_with = "opt_weights")]
    pub weights: Option<Vec<BigInt>>,
    pub dual_group: FgAbelianGroup,
    pub component_group: FgAbelianGroup,
    pub cover_weights_source: &'static str,
}

fn opt_weights<S: serde::Serializer>(
    w: &Option<Vec<BigInt>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match w {
        Some(v) => bigint_vec::serialize(v, s),
        None => s.serialize_none(),
    }
}

fn render_weights(w: &[BigInt]) -> String {
    let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
    format!("P({})", parts.join(","))
}

impl fmt::Display for WpsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, &self.weights) {
            (WpsKind::WeightedProjective, Some(w)) => {
                write!(f, "weighted projective: {}", render_weights(w))
            }
            (WpsKind::FakeWeightedProjective, Some(w)) => write!(
                f,
                "fake weighted projective: cover {}, \u{39b} \u{2245} {}",
                render_weights(w),
                self.component_group
            ),
            _ => write!(f, "neither (n \u{2260} d+1)"),
        }
    }
}

/// Positive generator of `ker beta`, read off `ker [B Q]` by dropping the
/// last `l` coordinates. Needs `n = d + 1`.
pub fn kernel_weights(fan: &StackyFan) -> Result<Vec<BigInt>> {
    let k = kernel_basis(&fan.bq_matrix());
    if k.cols() != 1 {
        return Err(Error::ShapeMismatch(format!(
            "kernel of [B Q] has rank {}, expected 1",
            k.cols()
        )));
    }
    let mut w: Vec<BigInt> = k.column(0)[..fan.n_rays()].to_vec();
    if w.iter().all(|x| !x.is_positive()) {
        w.iter_mut().for_each(|x| *x = -x.clone());
    }
    if w.iter().any(|x| !x.is_positive()) {
        return Err(Error::MixedSignKernel(w));
    }
    Ok(w)
}

pub fn classify_wps(fan: &StackyFan) -> Result<WpsReport> {
    if !fan.is_polytopal() {
        return Err(Error::NotPolytopal);
    }
    let component = component_group(fan);
    if !component.is_finite() {
        return Err(Error::InfiniteCokernel(component.free_rank()));
    }
    let dual = fan.dual_group();
    if fan.n_rays() != fan.dim() + 1 {
        return Ok(WpsReport {
            kind: WpsKind::Neither,
            weights: None,
            dual_group: dual,
            component_group: component,
            cover_weights_source: "none: not a simplex",
        });
    }
    debug_assert_eq!(dual.free_rank(), 1);
    if dual.is_torsion_free() {
        let weights = kernel_weights(fan)?;
        return Ok(WpsReport {
            kind: WpsKind::WeightedProjective,
            weights: Some(weights),
            dual_group: dual,
            component_group: component,
            cover_weights_source: "ker beta",
        });
    }
    let cover = universal_cover(fan)?;
    let weights = kernel_weights(&cover)?;
    Ok(WpsReport {
        kind: WpsKind::FakeWeightedProjective,
        weights: Some(weights),
        dual_group: dual,
        component_group: component,
        cover_weights_source: "ker beta0 of the universal cover",
    })
}

/// `gcd(weights) = |Tor(N)|` for a weighted projective stack.
pub fn torsion_gcd_check(fan: &StackyFan) -> Result<bool> {
    let report = classify_wps(fan)?;
    match (report.kind, report.weights) {
        (WpsKind::WeightedProjective, Some(w)) => {
            let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            Ok(g == fan.module().torsion_group().torsion_order())
        }
        _ => Err(Error::NotWps),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn weighted_projective_fixtures() {
        let r = classify_wps(&fixtures::p15_10_6()).unwrap();
        assert_eq!(r.kind, WpsKind::WeightedProjective);
        assert_eq!(r.weights, Some(big(&[15, 10, 6])));
        assert_eq!(r.to_string(), "weighted projective: P(15,10,6)");

        let t = fixtures::torsion_wps();
        let r = classify_wps(&t).unwrap();
        assert_eq!(r.weights, Some(big(&[30, 20, 12])));
        assert!(torsion_gcd_check(&t).unwrap());
    }

    #[test]
    fn fake_and_neither() {
        let r = classify_wps(&fixtures::segment(4, 6)).unwrap();
        assert_eq!(r.kind, WpsKind::FakeWeightedProjective);
        assert_eq!(r.weights, Some(big(&[2, 3])));
        assert_eq!(
            r.to_string(),
            "fake weighted projective: cover P(2,3), \u{39b} \u{2245} Z/2"
        );
        assert_eq!(
            torsion_gcd_check(&fixtures::segment(4, 6)),
            Err(Error::NotWps)
        );

        let r = classify_wps(&fixtures::fig2()).unwrap();
        assert_eq!(r.kind, WpsKind::Neither);
        assert_eq!(r.to_string(), "neither (n \u{2260} d+1)");
    }
}
