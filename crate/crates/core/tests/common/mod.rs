//! Slow, independent reference implementations used as test oracles.
//! Nothing here calls into the library's linear algebra or chart code.
#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}

/// All exponent vectors of `n` variables with total degree at most `d`,
/// by brute force over the cube `[0, d]^n`.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let total = (d as usize + 1).pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let e: Vec<u32> = (0..n)
            .map(|_| {
                let x = (c % (d as usize + 1)) as u32;
                c /= d as usize + 1;
                x
            })
            .collect();
        if e.iter().sum::<u32>() <= d {
            out.push(e);
        }
    }
    out
}

fn pow(x: &Q, e: u32) -> Q {
    (0..e).fold(Q::one(), |acc, _| acc * x)
}

pub fn mono_value(e: &[u32], u: &[Q]) -> Q {
    e.iter()
        .zip(u)
        .fold(Q::one(), |acc, (&k, x)| acc * pow(x, k))
}

/// d/du_j of u^e, by the power rule.
pub fn mono_partial(e: &[u32], u: &[Q], j: usize) -> Q {
    if e[j] == 0 {
        return Q::zero();
    }
    let mut f = e.to_vec();
    f[j] -= 1;
    q(e[j] as i64) * mono_value(&f, u)
}

pub fn veronese(n: usize, d: u32, u: &[Q]) -> Vec<Q> {
    monomials(n, d).iter().map(|e| mono_value(e, u)).collect()
}

pub fn veronese_partial(n: usize, d: u32, u: &[Q], j: usize) -> Vec<Q> {
    monomials(n, d)
        .iter()
        .map(|e| mono_partial(e, u, j))
        .collect()
}

/// Rank by textbook fraction Gaussian elimination on a list of row vectors.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut a: Vec<Vec<Q>> = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[r][c];
            let pivot = a[r].clone();
            for (x, p) in a[i][c..cols].iter_mut().zip(&pivot[c..cols]) {
                *x -= &f * p;
            }
        }
        r += 1;
    }
    r
}

/// Spanning vectors of the affine tangent cones of `V_{n,d}` at `points`.
pub fn secant_vectors(n: usize, d: u32, points: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut v = Vec::new();
    for u in points {
        v.push(veronese(n, d, u));
        for j in 0..n {
            v.push(veronese_partial(n, d, u, j));
        }
    }
    v
}

/// Spanning vectors of the tangent cones of `P^k x V_{n,d}` at
/// `(lambda^(j), u^(j))`, as flat `(k+1)(r+1)` vectors.
pub fn segre_vectors(n: usize, d: u32, lambdas: &[Vec<Q>], points: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut v = Vec::new();
    for (lam, u) in lambdas.iter().zip(points) {
        let p = veronese(n, d, u);
        let k1 = lam.len();
        for alpha in 0..k1 {
            let mut w = vec![Q::zero(); k1 * p.len()];
            w[alpha * p.len()..(alpha + 1) * p.len()].clone_from_slice(&p);
            v.push(w);
        }
        for j in 0..n {
            let dp = veronese_partial(n, d, u, j);
            v.push(
                lam.iter()
                    .flat_map(|l| dp.iter().map(move |x| l * x))
                    .collect(),
            );
        }
    }
    v
}

/// Coefficient of `t` in the polynomial `t -> f(t)` of degree at most `deg`,
/// from its values at `t = 0..=deg` (Lagrange).
pub fn linear_coefficient(values: &[Q]) -> Q {
    // f(t) = sum_i v_i prod_{m != i} (t - m)/(i - m); take d/dt at 0
    let deg = values.len();
    let mut out = Q::zero();
    for (i, v) in values.iter().enumerate() {
        let mut denom = Q::one();
        for m in 0..deg {
            if m != i {
                denom *= q(i as i64 - m as i64);
            }
        }
        // derivative at 0 of prod_{m != i} (t - m)
        let mut deriv = Q::zero();
        for skip in 0..deg {
            if skip == i {
                continue;
            }
            let mut prod = Q::one();
            for m in 0..deg {
                if m != i && m != skip {
                    prod *= q(-(m as i64));
                }
            }
            deriv += prod;
        }
        out += v * deriv / denom;
    }
    out
}

/// Points `(1+j, 2+j^2+3j, ...)` with small distinct coordinates; general
/// enough for the low-degree instances below.
pub fn points(n: usize, count: usize, salt: i64) -> Vec<Vec<Q>> {
    (0..count as i64)
        .map(|j| {
            (0..n as i64)
                .map(|c| q(1 + j + salt + (c + 1) * (j * j + 3 * j + 7 * c + salt * salt) % 97))
                .collect()
        })
        .collect()
}
