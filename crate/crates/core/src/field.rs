//! Exact arithmetic domains.
//!
//! Two domains are supported: a large prime field `F_p` (elements are `u64`
//! residues) and the rationals (elements are arbitrary-precision
//! [`BigRational`]). Both implement [`Field`], so the rank machinery and the
//! matrix builders are written once and instantiated per domain.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::{self, DenseMatrix};
use crate::random::RandomSource;

/// Mersenne prime 2^61 - 1.
pub const DEFAULT_PRIME: u64 = (1u64 << 61) - 1;

/// Smallest modulus accepted for randomized rank tests.
pub const MIN_PRIME: u64 = 1u64 << 40;

/// Rational samples are drawn from `[-H, H] \ {0}` with this `H`.
pub const RATIONAL_SAMPLE_HEIGHT: i64 = 1 << 15;

/// Which exact domain a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArithmeticDomain {
    PrimeField(u64),
    Rational,
}

impl ArithmeticDomain {
    pub fn default_prime() -> Self {
        ArithmeticDomain::PrimeField(DEFAULT_PRIME)
    }

    /// Checks the modulus invariant (prime, above [`MIN_PRIME`], below 2^63).
    pub fn validate(&self) -> Result<(), Error> {
        match *self {
            ArithmeticDomain::Rational => Ok(()),
            ArithmeticDomain::PrimeField(p) => {
                if p <= MIN_PRIME || p >= (1u64 << 63) {
                    Err(Error::InvalidDomain(format!(
                        "modulus {p} outside (2^40, 2^63)"
                    )))
                } else if !is_prime_u64(p) {
                    Err(Error::InvalidDomain(format!("modulus {p} is not prime")))
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl Default for ArithmeticDomain {
    fn default() -> Self {
        Self::default_prime()
    }
}

impl fmt::Display for ArithmeticDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithmeticDomain::PrimeField(p) => write!(f, "prime:{p}"),
            ArithmeticDomain::Rational => f.write_str("rational"),
        }
    }
}

impl FromStr for ArithmeticDomain {
    type Err = Error;

    /// Accepts `rational`, `prime` (default modulus) or `prime:<modulus>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let dom = match s {
            "rational" => ArithmeticDomain::Rational,
            "prime" => ArithmeticDomain::default_prime(),
            _ => {
                let digits = s
                    .strip_prefix("prime:")
                    .ok_or_else(|| Error::InvalidDomain(format!("unknown domain `{s}`")))?;
                let p: u64 = digits
                    .parse()
                    .map_err(|_| Error::InvalidDomain(format!("bad modulus `{digits}`")))?;
                ArithmeticDomain::PrimeField(p)
            }
        };
        dom.validate()?;
        Ok(dom)
    }
}

impl Serialize for ArithmeticDomain {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ArithmeticDomain {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for &a in &SMALL {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An exact field with an explicit context value.
///
/// Operations take `&self` because the prime field needs its modulus; the
/// rationals ignore it.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn domain(&self) -> ArithmeticDomain;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Uniform draw from the nonzero elements (prime field) or from a fixed
    /// integer box without zero (rationals).
    fn sample_nonzero(&self, rng: &mut RandomSource) -> Self::Elem;

    fn pow(&self, base: &Self::Elem, mut exp: u32) -> Self::Elem {
        let mut acc = self.one();
        let mut b = base.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            exp >>= 1;
            if exp > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    /// Exact rank. The default is Gaussian elimination with nonzero pivoting.
    fn rank(&self, m: &DenseMatrix<Self::Elem>) -> usize {
        matrix::gaussian_rank(self, m)
    }
}

/// `F_p` for a 64-bit prime `p < 2^63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, Error> {
        ArithmeticDomain::PrimeField(p).validate()?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i64(&self, v: i64) -> u64 {
        let r = v.rem_euclid(self.p as i64);
        r as u64
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn domain(&self) -> ArithmeticDomain {
        ArithmeticDomain::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let mut acc = 1u64;
        let mut b = *a;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        Some(acc)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sample_nonzero(&self, rng: &mut RandomSource) -> u64 {
        rng.rng().random_range(1..self.p)
    }
}

/// The rationals, with fraction-free elimination for rank.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn domain(&self) -> ArithmeticDomain {
        ArithmeticDomain::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sample_nonzero(&self, rng: &mut RandomSource) -> BigRational {
        let h = RATIONAL_SAMPLE_HEIGHT;
        let mut v = rng.rng().random_range(-h..h);
        if v >= 0 {
            v += 1;
        }
        self.from_i64(v)
    }

    fn rank(&self, m: &DenseMatrix<BigRational>) -> usize {
        bareiss_rank(integer_rows(m))
    }
}

/// Scales each row by the lcm of its denominators.
fn integer_rows(m: &DenseMatrix<BigRational>) -> Vec<Vec<BigInt>> {
    use num_integer::Integer;
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) elimination; every intermediate entry is a minor
/// of the input, so the division by the previous pivot is exact.
pub(crate) fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..cols {
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}
