//! Stacky fans `(N, Sigma, beta)` over a finitely generated abelian group.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::zlinalg::{cokernel, FgAbelianGroup, IntMatrix};
use crate::{Error, Result};

/// A set of ray indices, kept sorted and free of duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Cone(v)
    }

    pub fn empty() -> Self {
        Cone(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &Cone) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    /// All subsets, including the empty cone and the cone itself.
    pub fn faces(&self) -> Vec<Cone> {
        let k = self.0.len();
        (0u64..1 << k)
            .map(|mask| {
                Cone(
                    (0..k)
                        .filter(|b| mask >> b & 1 == 1)
                        .map(|b| self.0[b])
                        .collect(),
                )
            })
            .collect()
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `N = Z^d + (+)_i Z/q_i`. Elements are vectors in `Z^(d+l)` whose last `l`
/// coordinates are read modulo the `q_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AmbientModule {
    free_rank: usize,
    torsion_orders: Vec<BigInt>,
}

impl AmbientModule {
    pub fn new(free_rank: usize, torsion_orders: Vec<BigInt>) -> Result<Self> {
        if let Some(q) = torsion_orders.iter().find(|q| **q < BigInt::from(2)) {
            return Err(Error::InvalidTorsionOrder(q.clone()));
        }
        Ok(AmbientModule {
            free_rank,
            torsion_orders,
        })
    }

    pub fn free(d: usize) -> Self {
        AmbientModule {
            free_rank: d,
            torsion_orders: Vec::new(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[BigInt] {
        &self.torsion_orders
    }

    /// Number `l` of torsion generators.
    pub fn torsion_len(&self) -> usize {
        self.torsion_orders.len()
    }

    /// Length `d + l` of the coordinate vectors.
    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion_orders.len()
    }

    pub fn is_free(&self) -> bool {
        self.torsion_orders.is_empty()
    }

    /// The resolution `Q: Z^l -> Z^(d+l)`, `e_i -> q_i e_(d+i)`.
    pub fn resolution_matrix(&self) -> IntMatrix {
        let mut q = IntMatrix::zeros(self.dim(), self.torsion_len());
        for (i, qi) in self.torsion_orders.iter().enumerate() {
            q[(self.free_rank + i, i)] = qi.clone();
        }
        q
    }

    /// `Tor(N)` in canonical form.
    pub fn torsion_group(&self) -> FgAbelianGroup {
        FgAbelianGroup::from_cyclic_orders(0, &self.torsion_orders)
    }

    /// `N` itself in canonical form.
    pub fn as_group(&self) -> FgAbelianGroup {
        FgAbelianGroup::from_cyclic_orders(self.free_rank, &self.torsion_orders)
    }

    fn normalize_rows(&self, b: &mut IntMatrix) {
        for (i, q) in self.torsion_orders.iter().enumerate() {
            let r = self.free_rank + i;
            for j in 0..b.cols() {
                b[(r, j)] = b[(r, j)].mod_floor(q);
            }
        }
    }
}

impl fmt::Display for AmbientModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_group())
    }
}

/// One condition checked when a stacky fan is validated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    Shape,
    NonzeroRays,
    RaysSpan,
    SimplicialCones,
    NonNestedCones,
    FiniteCokernel,
}

impl Condition {
    pub const ALL: [Condition; 6] = [
        Condition::Shape,
        Condition::NonzeroRays,
        Condition::RaysSpan,
        Condition::SimplicialCones,
        Condition::NonNestedCones,
        Condition::FiniteCokernel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::Shape => "shape",
            Condition::NonzeroRays => "nonzero rays",
            Condition::RaysSpan => "rays span",
            Condition::SimplicialCones => "simplicial cones",
            Condition::NonNestedCones => "non-nested cones",
            Condition::FiniteCokernel => "finite cokernel",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Error),
    /// Not evaluated: an earlier structural check failed, or (for the
    /// cokernel check) the fan is not flagged polytopal.
    Skipped,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub checks: Vec<(Condition, Outcome)>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.first_error().is_none()
    }

    pub fn first_error(&self) -> Option<&Error> {
        self.checks.iter().find_map(|(_, o)| match o {
            Outcome::Fail(e) => Some(e),
            _ => None,
        })
    }
}

/// A validated stacky fan. Column `j` of `b` lifts `beta(e_j)` to
/// `Z^(d+l)`; torsion rows hold residues in `[0, q_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackyFan {
    module: AmbientModule,
    b: IntMatrix,
    max_cones: Vec<Cone>,
    polytopal: bool,
}

struct Prepared {
    b: IntMatrix,
    cones: Vec<Cone>,
}

fn prepare(module: &AmbientModule, b: &IntMatrix, max_cones: &[Cone]) -> Result<Prepared> {
    if b.rows() != module.dim() {
        return Err(Error::ShapeMismatch(format!(
            "lift matrix has {} rows, N needs {}",
            b.rows(),
            module.dim()
        )));
    }
    let n = b.cols();
    for cone in max_cones {
        if let Some(&index) = cone.indices().iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index, n });
        }
    }
    let mut b = b.clone();
    module.normalize_rows(&mut b);
    let mut cones: Vec<Cone> = max_cones.to_vec();
    cones.sort();
    cones.dedup();
    if cones.is_empty() {
        cones.push(Cone::empty());
    }
    Ok(Prepared { b, cones })
}

fn check_nonzero(top: &IntMatrix) -> Result<()> {
    match (0..top.cols()).find(|&j| top.is_column_zero(j)) {
        Some(j) => Err(Error::ZeroRay(j)),
        None => Ok(()),
    }
}

fn check_span(top: &IntMatrix) -> Result<()> {
    let rank = top.rank();
    if rank == top.rows() {
        Ok(())
    } else {
        Err(Error::RaysDoNotSpan {
            rank,
            expected: top.rows(),
        })
    }
}

fn check_simplicial(top: &IntMatrix, cones: &[Cone]) -> Result<()> {
    for cone in cones {
        if top.select_columns(cone.indices()).rank() != cone.len() {
            return Err(Error::NonSimplicialCone(cone.clone()));
        }
    }
    Ok(())
}

fn check_nested(cones: &[Cone]) -> Result<()> {
    for a in cones {
        for b in cones {
            if a != b && a.is_subset(b) {
                return Err(Error::NestedCones(a.clone(), b.clone()));
            }
        }
    }
    Ok(())
}

fn check_finite(module: &AmbientModule, b: &IntMatrix) -> Result<()> {
    let g = cokernel(&b.hstack(&module.resolution_matrix())).0;
    if g.is_finite() {
        Ok(())
    } else {
        Err(Error::InfiniteCokernel(g.free_rank()))
    }
}

/// Runs every stacky-fan check and reports each outcome separately.
pub fn validate(
    module: &AmbientModule,
    b: &IntMatrix,
    max_cones: &[Cone],
    polytopal: bool,
) -> ValidationReport {
    let prepared = match prepare(module, b, max_cones) {
        Ok(p) => p,
        Err(e) => {
            let mut checks = vec![(Condition::Shape, Outcome::Fail(e))];
            checks.extend(Condition::ALL[1..].iter().map(|&c| (c, Outcome::Skipped)));
            return ValidationReport { checks };
        }
    };
    let top = prepared
        .b
        .select_rows(&(0..module.free_rank()).collect::<Vec<_>>());
    let outcome = |r: Result<()>| match r {
        Ok(()) => Outcome::Pass,
        Err(e) => Outcome::Fail(e),
    };
    let finite = if polytopal {
        outcome(check_finite(module, &prepared.b))
    } else {
        Outcome::Skipped
    };
    ValidationReport {
        checks: vec![
            (Condition::Shape, Outcome::Pass),
            (Condition::NonzeroRays, outcome(check_nonzero(&top))),
            (Condition::RaysSpan, outcome(check_span(&top))),
            (
                Condition::SimplicialCones,
                outcome(check_simplicial(&top, &prepared.cones)),
            ),
            (
                Condition::NonNestedCones,
                outcome(check_nested(&prepared.cones)),
            ),
            (Condition::FiniteCokernel, finite),
        ],
    }
}

/// Validates the data and builds the fan. Torsion rows of `b` are reduced
/// into `[0, q_i)`; an empty cone list means the fan consisting of the
/// origin only.
pub fn make_stacky_fan(
    module: AmbientModule,
    b: IntMatrix,
    max_cones: Vec<Cone>,
    polytopal: bool,
) -> Result<StackyFan> {
    let report = validate(&module, &b, &max_cones, polytopal);
    if let Some(e) = report.first_error() {
        return Err(e.clone());
    }
    let Prepared { b, cones } = prepare(&module, &b, &max_cones)?;
    Ok(StackyFan {
        module,
        b,
        max_cones: cones,
        polytopal,
    })
}

impl StackyFan {
    pub fn module(&self) -> &AmbientModule {
        &self.module
    }

    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    pub fn n_rays(&self) -> usize {
        self.b.cols()
    }

    /// Free rank `d` of `N`.
    pub fn dim(&self) -> usize {
        self.module.free_rank()
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn is_polytopal(&self) -> bool {
        self.polytopal
    }

    pub fn is_face(&self, cone: &Cone) -> bool {
        self.max_cones.iter().any(|m| cone.is_subset(m))
    }

    /// Every face of every maximal cone, ascending and without repeats.
    pub fn faces(&self) -> Vec<Cone> {
        let set: BTreeSet<Cone> = self.max_cones.iter().flat_map(Cone::faces).collect();
        set.into_iter().collect()
    }

    /// `[B Q]`, of shape `(d+l) x (n+l)`.
    pub fn bq_matrix(&self) -> IntMatrix {
        self.b.hstack(&self.module.resolution_matrix())
    }

    /// `[B_sigma Q]`: the columns of `B` indexed by the cone, then `Q`.
    pub fn cone_matrix(&self, cone: &Cone) -> IntMatrix {
        self.b
            .select_columns(cone.indices())
            .hstack(&self.module.resolution_matrix())
    }

    /// `DG(beta) = coker([B Q]^T)`.
    pub fn dual_group(&self) -> FgAbelianGroup {
        cokernel(&self.bq_matrix().transpose()).0
    }

    pub fn structure_of_g(&self) -> LieGroupDescriptor {
        let dg = self.dual_group();
        LieGroupDescriptor {
            torus_rank: dg.free_rank(),
            finite_part: dg.torsion(),
        }
    }
}

/// `G = Hom(DG(beta), T) = T^k x (finite abelian group)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieGroupDescriptor {
    pub torus_rank: usize,
    pub finite_part: FgAbelianGroup,
}

impl fmt::Display for LieGroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.torus_rank {
            0 => {}
            1 => parts.push("T".to_string()),
            k => parts.push(format!("T^{k}")),
        }
        if !self.finite_part.is_trivial() {
            parts.push(self.finite_part.to_string());
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}
