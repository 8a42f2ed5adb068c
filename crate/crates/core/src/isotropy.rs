//! Isotropy groups, the component group, the universal-cover fan and the
//! global-quotient tests.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::fan::{make_stacky_fan, AmbientModule, Cone, StackyFan};
use crate::zlinalg::{
    cokernel, column_lattice_basis, lattice_contains, snf, solve_rational, FgAbelianGroup,
    IntMatrix,
};
use crate::{Error, Result};

/// The zero set `I_z = {i : z_i = 0}` of a point `z` in `C^n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PointPattern {
    zero_set: Cone,
}

impl PointPattern {
    pub fn new(zeros: impl IntoIterator<Item = usize>) -> Self {
        PointPattern {
            zero_set: Cone::new(zeros),
        }
    }

    pub fn zero_set(&self) -> &[usize] {
        self.zero_set.indices()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.zero_set.contains(i)
    }
}

/// An element `exp(2 pi i c)` of `(S^1)^n`, stored as `c` reduced into `[0, 1)^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalCharacter {
    coords: Vec<BigRational>,
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

impl RationalCharacter {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RationalCharacter {
            coords: coords.iter().map(frac).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        RationalCharacter {
            coords: vec![BigRational::zero(); n],
        }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Order in `(Q/Z)^n`: the lcm of the denominators.
    pub fn order(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn add(&self, other: &RationalCharacter) -> Self {
        RationalCharacter::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let k = BigRational::from_integer(k.clone());
        RationalCharacter::new(self.coords.iter().map(|c| c * &k).collect())
    }

    /// `B c`, which is integral exactly when the character lies in `K_D`.
    pub fn image(&self, b: &IntMatrix) -> Vec<BigRational> {
        (0..b.rows())
            .map(|i| {
                (0..b.cols())
                    .map(|j| BigRational::from_integer(b[(i, j)].clone()) * &self.coords[j])
                    .sum()
            })
            .collect()
    }

    fn rendered(&self) -> Vec<String> {
        self.coords.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for RationalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.rendered().join(", "))
    }
}

impl Serialize for RationalCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rendered().serialize(s)
    }
}

/// Whether `x` lies in the subgroup of `(Q/Z)^n` generated by `gens`.
pub fn character_in_subgroup(gens: &[RationalCharacter], x: &RationalCharacter) -> bool {
    let n = x.coords.len();
    let denom = gens
        .iter()
        .chain(std::iter::once(x))
        .flat_map(|g| g.coords.iter())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled = |g: &RationalCharacter| -> Vec<BigInt> {
        g.coords
            .iter()
            .map(|c| (c * BigRational::from_integer(denom.clone())).to_integer())
            .collect()
    };
    let mut columns: Vec<Vec<BigInt>> = gens.iter().map(scaled).collect();
    for i in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[i] = denom.clone();
        columns.push(e);
    }
    lattice_contains(&IntMatrix::from_columns(n, &columns), &scaled(x))
}

fn check_indices(fan: &StackyFan, indices: &[usize]) -> Result<()> {
    let n = fan.n_rays();
    match indices.iter().find(|&&i| i >= n) {
        Some(&index) => Err(Error::IndexOutOfRange { index, n }),
        None => Ok(()),
    }
}

fn require_face(fan: &StackyFan, cone: &Cone) -> Result<()> {
    check_indices(fan, cone.indices())?;
    if fan.is_face(cone) {
        Ok(())
    } else {
        Err(Error::InvalidCone(cone.clone()))
    }
}

/// `sigma_z`: the zero set itself, provided some maximal cone contains it.
pub fn minimal_cone(fan: &StackyFan, pattern: &PointPattern) -> Result<Cone> {
    check_indices(fan, pattern.zero_set())?;
    if fan.is_face(&pattern.zero_set) {
        Ok(pattern.zero_set.clone())
    } else {
        Err(Error::NotInZSigma(pattern.zero_set.clone()))
    }
}

/// `N / N_sigma = coker [B_sigma Q]`, free part included.
pub fn cone_quotient(fan: &StackyFan, cone: &Cone) -> Result<FgAbelianGroup> {
    require_face(fan, cone)?;
    Ok(cokernel(&fan.cone_matrix(cone)).0)
}

/// `Gamma_sigma = Tor(N / N_sigma)`.
pub fn isotropy_group(fan: &StackyFan, cone: &Cone) -> Result<FgAbelianGroup> {
    Ok(cone_quotient(fan, cone)?.torsion())
}

pub fn isotropy_of_pattern(fan: &StackyFan, pattern: &PointPattern) -> Result<FgAbelianGroup> {
    isotropy_group(fan, &minimal_cone(fan, pattern)?)
}

/// Generators of `Gamma_sigma` inside `(S^1)^n` for free `N`, one per
/// invariant factor, each paired with its order.
///
/// For a generator `x` of order `m` in `Tor(N / N_sigma)` the character is
/// `y / m` where `B_sigma y = m x`, with `y` supported on the cone.
pub fn isotropy_generators(
    fan: &StackyFan,
    cone: &Cone,
) -> Result<Vec<(RationalCharacter, BigInt)>> {
    if !fan.module().is_free() {
        return Err(Error::TorsionAmbient);
    }
    require_face(fan, cone)?;
    let b_sigma = fan.b().select_columns(cone.indices());
    let (_, map) = cokernel(&b_sigma);
    let n = fan.n_rays();
    let gens = map
        .torsion_generators()
        .into_iter()
        .map(|(x, m)| {
            let target: Vec<BigInt> = x.iter().map(|xi| xi * &m).collect();
            let y = solve_rational(&b_sigma, &target)
                .expect("m x lies in the span of the cone generators");
            let mq = BigRational::from_integer(m.clone());
            let mut coords = vec![BigRational::zero(); n];
            for (k, &i) in cone.indices().iter().enumerate() {
                debug_assert!(y[k].is_integer());
                coords[i] = &y[k] / &mq;
            }
            let chi = RationalCharacter::new(coords);
            debug_assert_eq!(chi.order(), m);
            (chi, m)
        })
        .collect();
    Ok(gens)
}

/// `G/G0 = coker beta = coker [B Q]`.
pub fn component_group(fan: &StackyFan) -> FgAbelianGroup {
    cokernel(&fan.bq_matrix()).0
}

fn require_finite(fan: &StackyFan) -> Result<()> {
    let g = component_group(fan);
    if g.is_finite() {
        Ok(())
    } else {
        Err(Error::InfiniteCokernel(g.free_rank()))
    }
}

/// `N0 = im beta` presented as an ambient module, with the lift of the
/// rays in its coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageSublattice {
    pub module: AmbientModule,
    pub b0: IntMatrix,
    /// Columns: the canonical HNF basis of `L = im B + im Q` in `Z^(d+l)`.
    pub basis: IntMatrix,
    /// Maps coordinates with respect to `basis` to coordinates of `module`.
    pub coordinates: IntMatrix,
    pub surjective: bool,
}

fn express_in_basis(h: &IntMatrix, m: &IntMatrix) -> IntMatrix {
    let cols: Vec<Vec<BigInt>> = m
        .columns()
        .iter()
        .map(|c| {
            solve_rational(h, c)
                .expect("column lies in the lattice")
                .into_iter()
                .map(|x| {
                    assert!(x.is_integer(), "column lies in the lattice");
                    x.to_integer()
                })
                .collect()
        })
        .collect();
    IntMatrix::from_columns(h.cols(), &cols)
}

pub fn image_sublattice(fan: &StackyFan) -> Result<ImageSublattice> {
    require_finite(fan)?;
    let dim = fan.module().dim();
    let basis = column_lattice_basis(&fan.bq_matrix());
    if basis == IntMatrix::identity(dim) {
        return Ok(ImageSublattice {
            module: fan.module().clone(),
            b0: fan.b().clone(),
            basis: basis.clone(),
            coordinates: basis,
            surjective: true,
        });
    }
    let b_prime = express_in_basis(&basis, fan.b());
    let q_prime = express_in_basis(&basis, &fan.module().resolution_matrix());
    let l = fan.module().torsion_len();
    let d = snf(&q_prime);
    let diag = d.diagonal();
    let torsion: Vec<usize> = (0..l).filter(|&i| diag[i] > BigInt::one()).collect();
    let rows: Vec<usize> = (l..dim).chain(torsion.iter().copied()).collect();
    let coordinates = d.u.select_rows(&rows);
    let module = AmbientModule::new(
        fan.module().free_rank(),
        torsion.iter().map(|&i| diag[i].clone()).collect(),
    )?;
    let mut b0 = &coordinates * &b_prime;
    for (k, &i) in torsion.iter().enumerate() {
        let r = fan.module().free_rank() + k;
        for j in 0..b0.cols() {
            b0[(r, j)] = b0[(r, j)].mod_floor(&diag[i]);
        }
    }
    Ok(ImageSublattice {
        module,
        b0,
        basis,
        coordinates,
        surjective: false,
    })
}

/// The fan `(N0, Sigma, beta0)` with the same maximal cones. Returns the fan
/// itself when `beta` is already surjective.
pub fn universal_cover(fan: &StackyFan) -> Result<StackyFan> {
    let image = image_sublattice(fan)?;
    if image.surjective {
        return Ok(fan.clone());
    }
    make_stacky_fan(
        image.module,
        image.b0,
        fan.max_cones().to_vec(),
        fan.is_polytopal(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalQuotientTest {
    pub holds: bool,
    /// First maximal cone (in ascending order) with `N_sigma != N0`.
    pub witness: Option<Cone>,
}

/// `N_sigma = N0` for every maximal cone, compared as lattices in `Z^(d+l)`.
pub fn is_global_quotient(fan: &StackyFan) -> Result<GlobalQuotientTest> {
    require_finite(fan)?;
    let target = column_lattice_basis(&fan.bq_matrix());
    let witness = fan
        .max_cones()
        .iter()
        .find(|c| column_lattice_basis(&fan.cone_matrix(c)) != target)
        .cloned();
    Ok(GlobalQuotientTest {
        holds: witness.is_none(),
        witness,
    })
}

/// `N_sigma = N` for every maximal cone: `G` is connected and acts freely.
pub fn is_connected_free(fan: &StackyFan) -> Result<bool> {
    require_finite(fan)?;
    let full = IntMatrix::identity(fan.module().dim());
    Ok(fan
        .max_cones()
        .iter()
        .all(|c| column_lattice_basis(&fan.cone_matrix(c)) == full))
}
