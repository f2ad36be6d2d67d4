//! Affine charts of Veronese varieties and Segre products `P^k x V`.
//!
//! The Veronese map is taken on the chart `x_0 = 1`: a point `u` in affine
//! `n`-space maps to the vector of all monomials of degree `<= d` in `u`,
//! listed in graded-lexicographic order with the constant monomial first.
//! Derivatives are read off the exponent vectors, so every matrix built here
//! is exact.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::DenseMatrix;

/// Default cap on the number of monomials `C(n+d, d)`.
pub const DEFAULT_MONOMIAL_GUARD: usize = 10_000;

/// Parameter coordinates of a chart point.
pub type AffinePoint<E> = Vec<E>;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// All exponent vectors in `n` variables of total degree `<= d`, graded
/// lexicographic (degree ascending, then lex descending within a degree).
pub fn grlex_exponents(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn fill(n: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(deg);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=deg).rev() {
            prefix.push(e);
            fill(n, deg - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for deg in 0..=d {
        if n == 0 {
            if deg == 0 {
                out.push(Vec::new());
            }
            continue;
        }
        fill(n, deg, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VeroneseChart {
    n: usize,
    d: u32,
    exponents: Vec<Vec<u32>>,
}

impl VeroneseChart {
    pub fn new(n: usize, d: u32) -> Result<Self> {
        Self::with_guard(n, d, DEFAULT_MONOMIAL_GUARD)
    }

    /// Refuses charts with more than `guard` monomials.
    pub fn with_guard(n: usize, d: u32, guard: usize) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidQuery(format!(
                "Veronese chart needs n >= 1 and d >= 1 (got n={n}, d={d})"
            )));
        }
        let count = binomial(n as u64 + d as u64, d as u64);
        if count > guard as u128 {
            return Err(Error::GuardExceeded {
                monomials: usize::try_from(count).unwrap_or(usize::MAX),
                limit: guard,
            });
        }
        Ok(VeroneseChart {
            n,
            d,
            exponents: grlex_exponents(n, d),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// `r` with `V_{n,d}` in `P^r`.
    pub fn r(&self) -> usize {
        self.exponents.len() - 1
    }

    /// Number of monomials, `r + 1`.
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    /// Position of an exponent vector, if it lies in the chart.
    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.exponents.iter().position(|x| x.as_slice() == e)
    }

    fn check_point<E>(&self, u: &[E]) -> Result<()> {
        if u.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: u.len(),
            });
        }
        Ok(())
    }

    fn power_table<F: Field>(&self, field: &F, u: &[F::Elem]) -> Vec<Vec<F::Elem>> {
        u.iter()
            .map(|x| {
                let mut pows = Vec::with_capacity(self.d as usize + 1);
                pows.push(field.one());
                for e in 1..=self.d as usize {
                    let next = field.mul(&pows[e - 1], x);
                    pows.push(next);
                }
                pows
            })
            .collect()
    }
}

/// `p(u)`: every chart monomial evaluated at `u`.
pub fn veronese_eval<F: Field>(
    field: &F,
    chart: &VeroneseChart,
    u: &[F::Elem],
) -> Result<Vec<F::Elem>> {
    chart.check_point(u)?;
    let pows = chart.power_table(field, u);
    Ok(chart
        .exponents
        .iter()
        .map(|e| {
            e.iter().enumerate().fold(field.one(), |acc, (j, &ej)| {
                field.mul(&acc, &pows[j][ej as usize])
            })
        })
        .collect())
}

/// `(r+1) x n` matrix whose column `j` is `dp/du_j` at `u`.
pub fn veronese_jacobian<F: Field>(
    field: &F,
    chart: &VeroneseChart,
    u: &[F::Elem],
) -> Result<DenseMatrix<F::Elem>> {
    chart.check_point(u)?;
    let pows = chart.power_table(field, u);
    let mut m = DenseMatrix::filled(chart.len(), chart.n, field.zero());
    for (beta, e) in chart.exponents.iter().enumerate() {
        for j in 0..chart.n {
            if e[j] == 0 {
                continue;
            }
            let mut v = field.from_i64(e[j] as i64);
            for (m_idx, &em) in e.iter().enumerate() {
                let exp = if m_idx == j { em - 1 } else { em };
                v = field.mul(&v, &pows[m_idx][exp as usize]);
            }
            m.set(beta, j, v);
        }
    }
    Ok(m)
}

/// The Segre product `P^k x V_{n,d}` in `P^{(k+1)(r+1)-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegreProductChart {
    k: usize,
    base: VeroneseChart,
}

impl SegreProductChart {
    pub fn new(k: usize, base: VeroneseChart) -> Self {
        SegreProductChart { k, base }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> &VeroneseChart {
        &self.base
    }

    /// Affine ambient dimension `(k+1)(r+1)`.
    pub fn ambient_len(&self) -> usize {
        (self.k + 1) * self.base.len()
    }

    /// Columns of one tangent block, `k + 1 + n`.
    pub fn block_cols(&self) -> usize {
        self.k + 1 + self.base.n
    }
}

/// Tangent block of the Segre product at `(lambda, p(u))`.
///
/// Columns `0..=k` place `p(u)` in row-block `alpha`; column `k+1+j` is
/// `(lambda_0 p_{u_j}, ..., lambda_k p_{u_j})`. Its column span equals the
/// affine tangent space of the Segre product at that point.
pub fn segre_tangent_block<F: Field>(
    field: &F,
    chart: &SegreProductChart,
    lambda: &[F::Elem],
    u: &[F::Elem],
) -> Result<DenseMatrix<F::Elem>> {
    let k = chart.k;
    if lambda.len() != k + 1 {
        return Err(Error::DimensionMismatch {
            expected: k + 1,
            got: lambda.len(),
        });
    }
    if field.is_zero(&lambda[0]) {
        return Err(Error::OutsideChart("lambda_0 = 0".into()));
    }
    let base = &chart.base;
    let p = veronese_eval(field, base, u)?;
    let jac = veronese_jacobian(field, base, u)?;
    let len = base.len();
    let mut m = DenseMatrix::filled(chart.ambient_len(), chart.block_cols(), field.zero());
    for (alpha, lam) in lambda.iter().enumerate() {
        for (beta, x) in p.iter().enumerate() {
            m.set(alpha * len + beta, alpha, x.clone());
        }
        for j in 0..base.n {
            for beta in 0..len {
                let v = field.mul(lam, jac.get(beta, j));
                m.set(alpha * len + beta, k + 1 + j, v);
            }
        }
    }
    Ok(m)
}

fn check_frame<F: Field>(
    field: &F,
    chart: &VeroneseChart,
    k: usize,
    h: usize,
    lambda: &DenseMatrix<F::Elem>,
    points: &[AffinePoint<F::Elem>],
) -> Result<()> {
    if lambda.rows() != k + 1 || lambda.cols() != h + 1 {
        return Err(Error::DimensionMismatch {
            expected: (k + 1) * (h + 1),
            got: lambda.rows() * lambda.cols(),
        });
    }
    if points.len() != h + 1 {
        return Err(Error::DimensionMismatch {
            expected: h + 1,
            got: points.len(),
        });
    }
    if lambda.entries().iter().any(|x| field.is_zero(x)) {
        return Err(Error::Precondition("lambda has a zero entry".into()));
    }
    for p in points {
        chart.check_point(p)?;
    }
    for (a, p) in points.iter().enumerate() {
        if points[..a].iter().any(|q| q == p) {
            return Err(Error::Precondition("sample points are not distinct".into()));
        }
    }
    Ok(())
}

/// Jacobian of `(lambda, u^(0..=h)) -> (sum_j lambda_ij p(u^(j)))_i`.
///
/// Rows: `(k+1)(r+1)`. Columns: first the `(h+1)(k+1)` derivatives in
/// `lambda_ij` (ordered `j` major, `i` minor), then the `(h+1) n`
/// derivatives in `u^(j)_m` (ordered `j` major, `m` minor).
pub fn grassmann_jacobian<F: Field>(
    field: &F,
    chart: &VeroneseChart,
    k: usize,
    h: usize,
    lambda: &DenseMatrix<F::Elem>,
    points: &[AffinePoint<F::Elem>],
) -> Result<DenseMatrix<F::Elem>> {
    check_frame(field, chart, k, h, lambda, points)?;
    let len = chart.len();
    let n = chart.n;
    let rows = (k + 1) * len;
    let cols = (h + 1) * (k + 1 + n);
    let mut m = DenseMatrix::filled(rows, cols, field.zero());
    let mut deriv_col = (h + 1) * (k + 1);
    for (j, u) in points.iter().enumerate() {
        let p = veronese_eval(field, chart, u)?;
        let jac = veronese_jacobian(field, chart, u)?;
        for i in 0..=k {
            let col = j * (k + 1) + i;
            for (beta, x) in p.iter().enumerate() {
                m.set(i * len + beta, col, x.clone());
            }
        }
        for mm in 0..n {
            for i in 0..=k {
                let lam = lambda.get(i, j);
                for beta in 0..len {
                    m.set(i * len + beta, deriv_col, field.mul(lam, jac.get(beta, mm)));
                }
            }
            deriv_col += 1;
        }
    }
    Ok(m)
}

/// Terracini matrix of `Sec_h` of the Segre product: the `h+1` tangent
/// blocks at `(lambda column j, u^(j))`, side by side.
pub fn segre_terracini_matrix<F: Field>(
    field: &F,
    chart: &SegreProductChart,
    lambda: &DenseMatrix<F::Elem>,
    points: &[AffinePoint<F::Elem>],
) -> Result<DenseMatrix<F::Elem>> {
    let h = points.len().saturating_sub(1);
    check_frame(field, &chart.base, chart.k, h, lambda, points)?;
    let blocks = points
        .iter()
        .enumerate()
        .map(|(j, u)| segre_tangent_block(field, chart, &lambda.column(j), u))
        .collect::<Result<Vec<_>>>()?;
    DenseMatrix::hstack(&blocks)
}

/// Terracini matrix of `Sec_h(V_{n,d})`: one block of rows `(p | J)^T` per point,
/// `(h+1)(n+1)` rows against `r+1` columns.
pub fn veronese_terracini_matrix<F: Field>(
    field: &F,
    chart: &VeroneseChart,
    points: &[AffinePoint<F::Elem>],
) -> Result<DenseMatrix<F::Elem>> {
    let mut rows = Vec::with_capacity(points.len() * (chart.n + 1));
    for u in points {
        rows.push(veronese_eval(field, chart, u)?);
        let jac = veronese_jacobian(field, chart, u)?;
        for j in 0..chart.n {
            rows.push(jac.column(j));
        }
    }
    DenseMatrix::from_rows(rows, chart.len())
}
