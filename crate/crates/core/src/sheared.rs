//! Labelled sheared simplices and their closed-form invariants.
//!
//! `Delta(a)` has rays `a, e_1, ..., e_d` with labels `m_0, ..., m_d`, so
//! `beta(e_0) = -m_0 a` and `beta(e_j) = m_j e_j`. Ray 0 carries the
//! convention `a_0 = 1` wherever a gcd over surviving rays is taken.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::classify::{classify_wps, WpsKind};
use crate::document::bigint_vec;
use crate::fan::{make_stacky_fan, AmbientModule, Cone, StackyFan};
use crate::isotropy::{
    component_group, is_connected_free, is_global_quotient, isotropy_group, isotropy_of_pattern,
    PointPattern,
};
use crate::zlinalg::{cokernel, FgAbelianGroup, IntMatrix};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ShearedSimplex {
    #[serde(with = "bigint_vec")]
    a: Vec<BigInt>,
    #[serde(with = "bigint_vec")]
    m: Vec<BigInt>,
}

impl ShearedSimplex {
    /// `a = (a_1, ..., a_d)` positive and primitive, `m = (m_0, ..., m_d)` positive.
    pub fn new(a: Vec<BigInt>, m: Vec<BigInt>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::ShapeMismatch("shear vector must be nonempty".into()));
        }
        if m.len() != a.len() + 1 {
            return Err(Error::ShapeMismatch(format!(
                "{} labels given, a has length {} so {} are needed",
                m.len(),
                a.len(),
                a.len() + 1
            )));
        }
        if let Some(i) = a.iter().position(|x| !x.is_positive()) {
            return Err(Error::NonPositive(format!("a_{} = {}", i + 1, a[i])));
        }
        if let Some(i) = m.iter().position(|x| !x.is_positive()) {
            return Err(Error::NonPositive(format!("m_{i} = {}", m[i])));
        }
        let g = a.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            return Err(Error::NotPrimitive(g));
        }
        Ok(ShearedSimplex { a, m })
    }

    pub fn from_i64(a: &[i64], m: &[i64]) -> Result<Self> {
        Self::new(
            a.iter().map(|&x| x.into()).collect(),
            m.iter().map(|&x| x.into()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[BigInt] {
        &self.a
    }

    pub fn labels(&self) -> &[BigInt] {
        &self.m
    }

    /// `a_i` with `a_0 = 1`.
    fn a_ext(&self, i: usize) -> BigInt {
        if i == 0 {
            BigInt::one()
        } else {
            self.a[i - 1].clone()
        }
    }

    /// The maximal cones: all `d`-element subsets of `{0, ..., d}`.
    pub fn max_cones(&self) -> Vec<Cone> {
        let d = self.dim();
        (0..=d)
            .rev()
            .map(|skip| Cone::new((0..=d).filter(|&i| i != skip)))
            .collect()
    }

    pub fn lift_matrix(&self) -> IntMatrix {
        let d = self.dim();
        let mut b = IntMatrix::zeros(d, d + 1);
        for i in 0..d {
            b[(i, 0)] = -(&self.m[0] * &self.a[i]);
            b[(i, i + 1)] = self.m[i + 1].clone();
        }
        b
    }

    pub fn build(&self) -> StackyFan {
        make_stacky_fan(
            AmbientModule::free(self.dim()),
            self.lift_matrix(),
            self.max_cones(),
            true,
        )
        .expect("sheared simplices always give valid fans")
    }

    /// `(+) Z/m_i` modulo the class of `(1, a_1, ..., a_d)`.
    pub fn component_group_closed(&self) -> FgAbelianGroup {
        let d = self.dim();
        let mut rel = IntMatrix::zeros(d + 1, d + 2);
        for i in 0..=d {
            rel[(i, i)] = self.m[i].clone();
            rel[(i, d + 1)] = self.a_ext(i);
        }
        cokernel(&rel).0
    }

    fn product(&self) -> BigInt {
        self.m.iter().product()
    }

    /// `(M/m_0, M a_1/m_1, ..., M a_d/m_d)` with `M = prod m_i`.
    fn candidate_weights(&self) -> Vec<BigInt> {
        let big_m = self.product();
        (0..=self.dim())
            .map(|i| &big_m * self.a_ext(i) / &self.m[i])
            .collect()
    }

    pub fn wps_criterion(&self) -> WpsCriterion {
        let d = self.dim();
        let pairwise = (0..=d).all(|i| (i + 1..=d).all(|j| self.m[i].gcd(&self.m[j]).is_one()));
        let coprime = (1..=d).all(|i| self.a_ext(i).gcd(&self.m[i]).is_one());
        let weights = self.candidate_weights();
        let gcd_condition = weights
            .iter()
            .fold(BigInt::zero(), |acc, x| acc.gcd(x))
            .is_one();
        let holds = pairwise && coprime;
        WpsCriterion {
            holds,
            gcd_condition,
            weights: holds.then_some(weights),
        }
    }

    fn check_pattern(&self, pattern: &PointPattern) -> Result<()> {
        let n = self.dim() + 1;
        if let Some(&index) = pattern.zero_set().iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index, n });
        }
        if pattern.zero_set().len() == n {
            return Err(Error::NotInZSigma(Cone::new(
                pattern.zero_set().iter().copied(),
            )));
        }
        Ok(())
    }

    /// `d_z = gcd(a_j : j not in I_z)` with `a_0 = 1`.
    pub fn d_z(&self, pattern: &PointPattern) -> BigInt {
        (0..=self.dim())
            .filter(|&j| !pattern.contains(j))
            .fold(BigInt::zero(), |acc, j| acc.gcd(&self.a_ext(j)))
    }

    /// Isotropy from the closed formula, valid when the stack is weighted
    /// projective.
    pub fn wps_isotropy_closed(&self, pattern: &PointPattern) -> Result<FgAbelianGroup> {
        if !self.wps_criterion().holds {
            return Err(Error::NotWps);
        }
        self.check_pattern(pattern)?;
        let orders: Vec<BigInt> = pattern
            .zero_set()
            .iter()
            .map(|&i| self.m[i].clone())
            .collect();
        if !pattern.contains(0) {
            return Ok(FgAbelianGroup::from_cyclic_orders(0, &orders));
        }
        let m_z: BigInt = orders.iter().product();
        Ok(FgAbelianGroup::cyclic(m_z * self.d_z(pattern)))
    }

    /// The extension `0 -> (+)_{i in I_z} Z/m_i -> stab(z) -> Z/d_z -> 0`,
    /// with the middle term computed by the general pipeline.
    pub fn isotropy_extension(&self, pattern: &PointPattern) -> Result<IsotropyExtension> {
        self.check_pattern(pattern)?;
        let orders: Vec<BigInt> = pattern
            .zero_set()
            .iter()
            .map(|&i| self.m[i].clone())
            .collect();
        let sub = FgAbelianGroup::from_cyclic_orders(0, &orders);
        let quot = FgAbelianGroup::cyclic(self.d_z(pattern));
        let full = isotropy_of_pattern(&self.build(), pattern)?;
        debug_assert_eq!(
            full.torsion_order(),
            sub.torsion_order() * quot.torsion_order()
        );
        Ok(IsotropyExtension { sub, quot, full })
    }

    /// `m_i = m_0 a_i` for every `i >= 1`.
    pub fn global_quotient_closed(&self) -> bool {
        (1..=self.dim()).all(|i| self.m[i] == &self.m[0] * self.a_ext(i))
    }

    fn require_planar(&self) -> Result<()> {
        if self.dim() == 2 {
            Ok(())
        } else {
            Err(Error::NotPlanar(self.dim()))
        }
    }

    /// Isotropy at zeros `{0, 1}`: `Z/g + Z/(m_0 m_1 a_2 / g)`, `g = gcd(m_0, m_1)`.
    pub fn planar_vertex_isotropy(&self) -> Result<FgAbelianGroup> {
        self.require_planar()?;
        Ok(self.planar_formula(1, 2))
    }

    /// Isotropy at zeros `{0, 2}`: indices 1 and 2 exchanged.
    pub fn planar_vertex_isotropy_mirrored(&self) -> Result<FgAbelianGroup> {
        self.require_planar()?;
        Ok(self.planar_formula(2, 1))
    }

    fn planar_formula(&self, zero: usize, other: usize) -> FgAbelianGroup {
        let g = self.m[0].gcd(&self.m[zero]);
        let second = &self.m[0] * &self.m[zero] * self.a_ext(other) / &g;
        FgAbelianGroup::from_cyclic_orders(0, &[g, second])
    }

    /// Every row of the four-case vertex isotropy table, evaluated on this simplex.
    pub fn table1(&self) -> Result<Table1Report> {
        self.require_planar()?;
        let fan = self.build();
        let ones = self.m.iter().all(One::is_one);
        let unit_a = self.a.iter().all(One::is_one);
        let at_01 = isotropy_group(&fan, &Cone::new([0, 1]))?;
        let at_02 = isotropy_group(&fan, &Cone::new([0, 2]))?;
        let closed_01 = self.planar_formula(1, 2);
        let closed_02 = self.planar_formula(2, 1);
        let g = self.m[0].gcd(&self.m[1]);
        let general = FgAbelianGroup::from_cyclic_orders(
            0,
            &[g.clone(), &self.m[0] * &self.m[1] * &self.a[1] / &g],
        );
        let rows = [
            (
                "m0=m1=m2=1",
                "a1=a2=1",
                ones && unit_a,
                FgAbelianGroup::trivial(),
                false,
            ),
            (
                "m0=m1=m2=1",
                "a1,a2 arbitrary",
                ones,
                FgAbelianGroup::cyclic(self.a[0].clone()),
                true,
            ),
            (
                "m0,m1,m2 arbitrary",
                "a1=a2=1",
                unit_a,
                FgAbelianGroup::from_cyclic_orders(0, &[self.m[0].clone(), self.m[1].clone()]),
                false,
            ),
            (
                "m0,m1,m2 arbitrary",
                "a1,a2 arbitrary",
                true,
                general,
                false,
            ),
        ];
        let rows = rows
            .into_iter()
            .map(|(labels, lengths, applies, printed, mirrored)| {
                let (vertex, closed, pipeline) = if mirrored {
                    (Cone::new([0, 2]), closed_02.clone(), at_02.clone())
                } else {
                    (Cone::new([0, 1]), closed_01.clone(), at_01.clone())
                };
                let printed = applies.then_some(printed);
                let agrees = closed == pipeline && printed.as_ref().is_none_or(|p| *p == pipeline);
                Table1Row {
                    labels,
                    lengths,
                    applies,
                    vertex,
                    printed,
                    closed_form: closed,
                    pipeline,
                    agrees,
                    note: mirrored.then_some(ROW2_NOTE),
                }
            })
            .collect();
        Ok(Table1Report { rows })
    }

    /// The summary printed for `stacky sheared --report`.
    pub fn report(&self) -> ShearedReport {
        let fan = self.build();
        ShearedReport {
            wps: self.wps_criterion(),
            component_group: self.component_group_closed(),
            global_quotient: self.global_quotient_closed(),
            smooth: is_connected_free(&fan).expect("sheared fans have finite cokernel"),
            table1: self.table1().ok(),
        }
    }
}

const ROW2_NOTE: &str = "the printed Z/a1 is the isotropy at zeros {0,2}; \
     at zeros {0,1} the general formula gives Z/a2";

/// One-zero 2x2 Smith form: `[[a, b], [c, 0]] ~ diag(g, |bc|/g)`, `g = gcd(a, b, c)`.
pub fn snf_one_zero_2x2(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<(BigInt, BigInt)> {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(Error::ZeroEntry);
    }
    let g = a.gcd(b).gcd(c);
    let second = (b * c).abs() / &g;
    Ok((g, second))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WpsCriterion {
    /// Pairwise-coprime labels and `gcd(a_i, m_i) = 1`.
    pub holds: bool,
    /// `gcd(M/m_0, M a_1/m_1, ...) = 1`; always equal to `holds`.
    pub gcd_condition: bool,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_vec")]
    pub weights: Option<Vec<BigInt>>,
}

fn opt_vec<S: serde::Serializer>(
    w: &Option<Vec<BigInt>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match w {
        Some(v) => bigint_vec::serialize(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotropyExtension {
    pub sub: FgAbelianGroup,
    pub quot: FgAbelianGroup,
    pub full: FgAbelianGroup,
}

impl fmt::Display for IsotropyExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sub {}; quot {}; full {}",
            self.sub, self.quot, self.full
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub labels: &'static str,
    pub lengths: &'static str,
    pub applies: bool,
    pub vertex: Cone,
    /// The table's entry evaluated on this simplex, when the row applies.
    pub printed: Option<FgAbelianGroup>,
    pub closed_form: FgAbelianGroup,
    pub pipeline: FgAbelianGroup,
    pub agrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Report {
    pub rows: Vec<Table1Row>,
}

impl Table1Report {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agrees)
    }
}

impl fmt::Display for Table1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, r) in self.rows.iter().enumerate() {
            let printed = match &r.printed {
                Some(p) => p.to_string(),
                None => "n/a".to_string(),
            };
            write!(
                f,
                "row {}: {}, {}: table {}; closed {}; pipeline {} at zeros {}; {}",
                k + 1,
                r.labels,
                r.lengths,
                printed,
                r.closed_form,
                r.pipeline,
                r.vertex,
                if r.agrees { "agree" } else { "DISAGREE" }
            )?;
            if let (Some(note), true) = (r.note, r.applies) {
                write!(f, " ({note})")?;
            }
            if k + 1 < self.rows.len() {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShearedReport {
    pub wps: WpsCriterion,
    pub component_group: FgAbelianGroup,
    pub global_quotient: bool,
    pub smooth: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table1: Option<Table1Report>,
}

impl fmt::Display for ShearedReport {
    /// First line only; the vertex table is printed separately.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.wps.weights {
            Some(w) => {
                let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
                write!(f, "WPS: P({})", parts.join(","))?;
            }
            None => write!(f, "not WPS")?,
        }
        if self.smooth {
            return write!(f, "; smooth");
        }
        if self.component_group.is_trivial() {
            write!(f, "; G/G0 trivial")?;
        } else {
            write!(f, "; G/G0 \u{2245} {}", self.component_group)?;
        }
        if self.global_quotient {
            write!(f, "; global quotient")
        } else {
            write!(f, "; not global quotient")
        }
    }
}

/// The general-pipeline counterparts of every closed form, for
/// differential checks.
pub struct PipelineView {
    pub fan: StackyFan,
}

impl PipelineView {
    pub fn new(s: &ShearedSimplex) -> Self {
        PipelineView { fan: s.build() }
    }

    pub fn component_group(&self) -> FgAbelianGroup {
        component_group(&self.fan)
    }

    pub fn is_wps(&self) -> bool {
        classify_wps(&self.fan).map(|r| r.kind) == Ok(WpsKind::WeightedProjective)
    }

    pub fn weights(&self) -> Option<Vec<BigInt>> {
        classify_wps(&self.fan)
            .ok()
            .filter(|r| r.kind == WpsKind::WeightedProjective)
            .and_then(|r| r.weights)
    }

    pub fn is_global_quotient(&self) -> bool {
        is_global_quotient(&self.fan)
            .map(|t| t.holds)
            .unwrap_or(false)
    }
}
