//! Independent oracles for the integration tests. Everything here uses
//! machine integers and elementary arithmetic only, never the library's
//! normal forms.
#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stackyfan::IntMatrix;

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn to_i64(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| i64::try_from(x).expect("small entries"))
                .collect()
        })
        .collect()
}

pub fn big(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

/// Determinant by permutation expansion.
pub fn det_leibniz(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total: i128 = 0;
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        let prod: i128 = (0..n).map(|i| m[i][p[i]] as i128).product();
        total += sign * prod;
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Absolute values of all `rows x rows` minors.
pub fn maximal_minors(m: &[Vec<i64>]) -> Vec<i128> {
    let r = m.len();
    let c = m.first().map_or(0, Vec::len);
    combinations(c, r)
        .into_iter()
        .map(|cols| {
            let sub: Vec<Vec<i64>> = m
                .iter()
                .map(|row| cols.iter().map(|&j| row[j]).collect())
                .collect();
            det_leibniz(&sub).abs()
        })
        .collect()
}

/// Order and exponent of `Z^r / (column lattice)` by enumerating the
/// subgroup generated by the columns inside `(Z/D)^r`, where `D` is the
/// smallest nonzero maximal minor (so `D Z^r` lies in the lattice).
/// Returns `None` when the cokernel is infinite or `D > bound`.
pub fn brute_force_cokernel(m: &[Vec<i64>], bound: i64) -> Option<(u64, u64)> {
    let r = m.len();
    let c = m.first().map_or(0, Vec::len);
    let d = maximal_minors(m).into_iter().filter(|&x| x != 0).min()? as i64;
    if d > bound {
        return None;
    }
    let encode = |v: &[i64]| v.iter().fold(0i64, |acc, &x| acc * d + x.rem_euclid(d));
    let gens: Vec<Vec<i64>> = (0..c)
        .map(|j| (0..r).map(|i| m[i][j].rem_euclid(d)).collect())
        .collect();
    let mut seen: HashSet<i64> = HashSet::new();
    let zero = vec![0i64; r];
    seen.insert(encode(&zero));
    let mut stack = vec![zero];
    while let Some(v) = stack.pop() {
        for g in &gens {
            let w: Vec<i64> = v
                .iter()
                .zip(g)
                .map(|(a, b)| (a + b).rem_euclid(d))
                .collect();
            if seen.insert(encode(&w)) {
                stack.push(w);
            }
        }
    }
    let total = (d as u64).pow(r as u32);
    let order = total / seen.len() as u64;
    let exponent = (1..=d)
        .filter(|k| d % k == 0)
        .find(|&k| {
            (0..r).all(|i| {
                let mut e = vec![0i64; r];
                e[i] = k;
                seen.contains(&encode(&e))
            })
        })
        .expect("d kills the quotient") as u64;
    Some((order, exponent))
}

/// Invariant factors of a 2x2 integer matrix from its minors: the first is
/// the gcd of the entries, the product is `|det|`.
pub fn snf_2x2_by_minors(m: [[i64; 2]; 2]) -> (i64, i64) {
    let g = gcd(gcd(m[0][0], m[0][1]), gcd(m[1][0], m[1][1]));
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs();
    if g == 0 {
        (0, 0)
    } else {
        (g, det / g)
    }
}

/// Whether `b w = 0`.
pub fn in_kernel(b: &[Vec<i64>], w: &[i64]) -> bool {
    b.iter()
        .all(|row| row.iter().zip(w).map(|(x, y)| x * y).sum::<i64>() == 0)
}

/// Canonical invariant factors (each >= 2, divisibility chain) of a finite
/// group given as a direct sum of cyclic groups, via prime-power splitting.
pub fn canonical_factors(orders: &[i64]) -> Vec<i64> {
    let mut prime_powers: Vec<(i64, Vec<i64>)> = Vec::new();
    for &o in orders {
        let mut n = o.abs();
        let mut p = 2;
        while n > 1 {
            if n % p == 0 {
                let mut q = 1;
                while n % p == 0 {
                    n /= p;
                    q *= p;
                }
                match prime_powers.iter_mut().find(|(pp, _)| *pp == p) {
                    Some((_, v)) => v.push(q),
                    None => prime_powers.push((p, vec![q])),
                }
            }
            p += 1;
        }
    }
    let len = prime_powers.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut factors = vec![1i64; len];
    for (_, mut v) in prime_powers {
        v.sort_unstable_by(|a, b| b.cmp(a));
        for (k, q) in v.into_iter().enumerate() {
            factors[len - 1 - k] *= q;
        }
    }
    factors
}

/// Seeded instance generator for the randomized suites.
pub struct Stream(ChaCha8Rng);

impl Stream {
    pub fn new(seed: u64) -> Self {
        Stream(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.0.random_range(lo..=hi)
    }

    pub fn primitive(&mut self, d: usize, max: i64) -> Vec<i64> {
        loop {
            let a: Vec<i64> = (0..d).map(|_| self.range(1, max)).collect();
            if a.iter().fold(0, |g, &x| gcd(g, x)) == 1 {
                return a;
            }
        }
    }
}

/// Determinant of an arbitrary-precision matrix by permutation expansion.
pub fn det_big(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = BigInt::from(0);
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let prod: BigInt = (0..n).map(|i| m[(i, p[i])].clone()).product();
        if inversions % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    });
    total
}

/// Invariant factors as machine integers.
pub fn factors_i64(g: &stackyfan::FgAbelianGroup) -> Vec<i64> {
    g.invariant_factors()
        .iter()
        .map(|x| i64::try_from(x).expect("small factor"))
        .collect()
}
