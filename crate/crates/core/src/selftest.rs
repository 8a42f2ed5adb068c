//! Seeded randomized self-checks: closed forms against the general
//! pipeline, and normal-form invariants on random matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{classify_wps, WpsKind};
use crate::fan::Cone;
use crate::isotropy::{isotropy_group, isotropy_of_pattern, PointPattern};
use crate::sheared::{PipelineView, ShearedSimplex};
use crate::zlinalg::{cokernel, snf, IntMatrix};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug, Default)]
pub struct Summary {
    pub instances: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl Summary {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: Summary) {
        self.instances += other.instances;
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random sheared simplex with `d <= max_d`, `a_i <= a_max`, `m_i <= m_max`.
pub fn random_sheared(rng: &mut impl Rng, max_d: usize, a_max: i64, m_max: i64) -> ShearedSimplex {
    let d = rng.random_range(1..=max_d);
    loop {
        let a: Vec<i64> = (0..d).map(|_| rng.random_range(1..=a_max)).collect();
        if a.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
            continue;
        }
        let m: Vec<i64> = (0..=d).map(|_| rng.random_range(1..=m_max)).collect();
        return ShearedSimplex::from_i64(&a, &m).expect("a is primitive and positive");
    }
}

/// Zero sets that define points of `Z_Sigma`: every proper subset of `{0, ..., d}`.
pub fn valid_patterns(d: usize) -> Vec<PointPattern> {
    (0u32..(1 << (d + 1)) - 1)
        .map(|mask| PointPattern::new((0..=d).filter(|i| mask >> i & 1 == 1)))
        .collect()
}

/// Compares every closed form of one sheared simplex with the pipeline.
pub fn check_sheared(s: &ShearedSimplex, out: &mut Summary) {
    let view = PipelineView::new(s);
    let tag = format!("a={:?} m={:?}", s.a(), s.labels());
    out.instances += 1;

    let closed = s.component_group_closed();
    let piped = view.component_group();
    out.check(closed == piped, || {
        format!("{tag}: component group {closed} vs {piped}")
    });

    let crit = s.wps_criterion();
    let kind = classify_wps(&view.fan).map(|r| r.kind);
    out.check(kind.is_ok() && kind != Ok(WpsKind::Neither), || {
        format!("{tag}: classification {kind:?}")
    });
    out.check(crit.holds == view.is_wps(), || {
        format!(
            "{tag}: WPS criterion {} vs pipeline {}",
            crit.holds,
            view.is_wps()
        )
    });
    out.check(crit.holds == crit.gcd_condition, || {
        format!("{tag}: coprimality and gcd conditions disagree")
    });
    if let Some(w) = &crit.weights {
        let piped = view.weights();
        out.check(piped.as_ref() == Some(w), || {
            format!("{tag}: weights {w:?} vs {piped:?}")
        });
        let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        out.check(g.is_one(), || format!("{tag}: gcd of weights is {g}"));
    }

    for pattern in valid_patterns(s.dim()) {
        let truth = match isotropy_of_pattern(&view.fan, &pattern) {
            Ok(g) => g,
            Err(e) => {
                out.check(false, || {
                    format!("{tag}: zeros {:?}: {e}", pattern.zero_set())
                });
                continue;
            }
        };
        if crit.holds {
            let closed = s.wps_isotropy_closed(&pattern);
            out.check(closed.as_ref() == Ok(&truth), || {
                format!(
                    "{tag}: zeros {:?}: WPS isotropy {closed:?} vs {truth}",
                    pattern.zero_set()
                )
            });
        }
        match s.isotropy_extension(&pattern) {
            Ok(ext) => {
                let expected: BigInt = s.d_z(&pattern)
                    * pattern
                        .zero_set()
                        .iter()
                        .map(|&i| s.labels()[i].clone())
                        .product::<BigInt>();
                out.check(
                    ext.full == truth && ext.full.torsion_order() == expected,
                    || {
                        format!(
                        "{tag}: zeros {:?}: extension {ext} vs {truth}, expected order {expected}",
                        pattern.zero_set()
                    )
                    },
                );
            }
            Err(e) => out.check(false, || format!("{tag}: extension: {e}")),
        }
    }

    let gq = s.global_quotient_closed();
    out.check(gq == view.is_global_quotient(), || {
        format!("{tag}: global quotient closed {gq} vs pipeline")
    });

    if s.dim() == 2 {
        for (closed, zeros) in [
            (s.planar_vertex_isotropy(), Cone::new([0, 1])),
            (s.planar_vertex_isotropy_mirrored(), Cone::new([0, 2])),
        ] {
            let piped = isotropy_group(&view.fan, &zeros);
            out.check(closed.is_ok() && closed == piped, || {
                format!("{tag}: planar vertex {zeros}: {closed:?} vs {piped:?}")
            });
        }
    }
}

/// `count` random sheared simplices with `d <= 3`, `a_i <= 20`, `m_i <= 12`.
pub fn sheared_differential(seed: u64, count: usize) -> Summary {
    let mut r = rng(seed);
    let mut out = Summary::default();
    for _ in 0..count {
        check_sheared(&random_sheared(&mut r, 3, 20, 12), &mut out);
    }
    out
}

pub fn random_matrix(rng: &mut impl Rng, max_dim: usize, bound: i64) -> IntMatrix {
    let rows = rng.random_range(1..=max_dim);
    let cols = rng.random_range(1..=max_dim);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| rng.random_range(-bound..=bound))
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&data)
}

/// Smith-form and cokernel invariants on one matrix.
pub fn check_matrix(m: &IntMatrix, out: &mut Summary) {
    out.instances += 1;
    let d = snf(m);
    let tag = m.to_string();
    out.check(&(&d.u * m) * &d.v == d.s, || format!("{tag}: u m v != s"));
    out.check(d.u.determinant().abs().is_one(), || format!("{tag}: det u"));
    out.check(d.v.determinant().abs().is_one(), || format!("{tag}: det v"));
    out.check(
        &d.u * d.u_inverse() == IntMatrix::identity(m.rows()),
        || format!("{tag}: u_inv"),
    );
    let diag = d.diagonal();
    let off_diagonal_zero =
        (0..d.s.rows()).all(|i| (0..d.s.cols()).all(|j| i == j || d.s[(i, j)].is_zero()));
    out.check(off_diagonal_zero, || format!("{tag}: s not diagonal"));
    out.check(diag.iter().all(|x| !x.is_negative()), || {
        format!("{tag}: negative diagonal")
    });
    let chain = diag.windows(2).all(|w| {
        if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].is_multiple_of(&w[0])
        }
    });
    out.check(chain, || format!("{tag}: divisibility chain {diag:?}"));
    out.check(d.rank() == m.rank(), || format!("{tag}: rank"));

    let (g, map) = cokernel(m);
    if m.rows() == m.cols() {
        let det = m.determinant().abs();
        if !det.is_zero() {
            out.check(g.is_finite() && g.torsion_order() == det, || {
                format!("{tag}: torsion order {} vs |det| {det}", g.torsion_order())
            });
        }
    }
    out.check(m.columns().iter().all(|c| map.is_zero_image(c)), || {
        format!("{tag}: projection does not kill the image")
    });
    for (k, gen) in map.generators().iter().enumerate() {
        let p = map.project(gen);
        let unit = p
            .iter()
            .enumerate()
            .all(|(i, x)| *x == BigInt::from((i == k) as i64));
        out.check(unit, || format!("{tag}: generator {k} projects to {p:?}"));
    }
}

/// `count` random matrices with dimensions `<= 5` and entries in `[-9, 9]`.
pub fn zlinalg_properties(seed: u64, count: usize) -> Summary {
    let mut r = rng(seed);
    let mut out = Summary::default();
    for _ in 0..count {
        check_matrix(&random_matrix(&mut r, 5, 9), &mut out);
    }
    out
}

/// Both suites, as run by `stacky selftest`.
pub fn run_all(seed: u64) -> Summary {
    let mut out = zlinalg_properties(seed, 500);
    out.merge(sheared_differential(seed.wrapping_add(1), 200));
    out
}
