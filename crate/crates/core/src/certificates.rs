//! Certificates of defectivity.
//!
//! A covector `a` annihilating the Terracini matrix of `Sec_h(P^k x V_{n,d})`
//! is a hyperplane `sum a_{alpha beta} X_{alpha beta} = 0` containing all the
//! tangent spaces. Reshaped into `k+1` rows it gives forms
//! `g_alpha = sum_beta a_{alpha beta} p_beta`, a `k`-dimensional linear system
//! with a fixed parametrisation, and the annihilation conditions say:
//!
//! * every `g_alpha` vanishes at every sampled point `p^(j)`;
//! * the member `sum_alpha lambda^(j)_alpha g_alpha` is singular at `p^(j)`.
//!
//! [`extract_certificate`] rebuilds the forms and checks both condition sets
//! by evaluating polynomials, independently of the matrix product.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ArithmeticDomain, Field, PrimeField, Rationals};
use crate::matrix::{left_null_space, null_space, DenseMatrix};
use crate::poly::Poly;
use crate::random::RandomSource;
use crate::terracini::{expected_dim_segre, sample_frame, trial_source, Frame, SecantQuery};
use crate::varieties::{segre_terracini_matrix, AffinePoint, SegreProductChart, VeroneseChart};

/// Coefficients `a_{alpha beta}` of a hyperplane of the Segre ambient space.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperplaneCoefficients<E> {
    /// `(k+1) x (r+1)`.
    pub a: DenseMatrix<E>,
}

impl<E: Clone> HyperplaneCoefficients<E> {
    pub fn from_covector<F: Field<Elem = E>>(
        field: &F,
        k: usize,
        chart_len: usize,
        covector: &[E],
    ) -> Result<Self> {
        if covector.len() != (k + 1) * chart_len {
            return Err(Error::DimensionMismatch {
                expected: (k + 1) * chart_len,
                got: covector.len(),
            });
        }
        if covector.iter().all(|x| field.is_zero(x)) {
            return Err(Error::Precondition("covector is zero".into()));
        }
        Ok(HyperplaneCoefficients {
            a: DenseMatrix::from_entries(k + 1, chart_len, covector.to_vec())?,
        })
    }
}

/// A Terracini matrix of the Segre product together with the sample it was
/// built from.
#[derive(Debug, Clone)]
pub struct SegreInstance<E> {
    pub chart: SegreProductChart,
    pub frame: Frame<E>,
    pub matrix: DenseMatrix<E>,
}

impl<E: Clone + PartialEq + std::fmt::Display> SegreInstance<E> {
    pub fn new<F: Field<Elem = E>>(
        field: &F,
        chart: SegreProductChart,
        frame: Frame<E>,
    ) -> Result<Self> {
        let matrix = segre_terracini_matrix(field, &chart, &frame.lambda, &frame.points)?;
        Ok(SegreInstance {
            chart,
            frame,
            matrix,
        })
    }

    /// The instance the Segre route builds for trial `t` of `query`.
    pub fn for_trial<F: Field<Elem = E>>(field: &F, query: &SecantQuery, t: usize) -> Result<Self> {
        query.validate()?;
        let chart = SegreProductChart::new(query.k, query.chart()?);
        let mut rng = trial_source(query.seed, t);
        let frame = sample_frame(field, query.n, query.k, query.h, &mut rng)?;
        Self::new(field, chart, frame)
    }
}

/// A `k`-dimensional linear system of degree-`d` forms with its
/// parametrisation, plus the sample it is certified against.
#[derive(Debug, Clone)]
pub struct LinearSystemCertificate<E> {
    pub k: usize,
    pub forms: Vec<Poly<E>>,
    pub assigned_points: Vec<AffinePoint<E>>,
    /// `lambda^(j)`, one vector of length `k+1` per point.
    pub assigned_parameters: Vec<Vec<E>>,
    pub verified: bool,
}

impl<E: Clone + PartialEq + std::fmt::Display> LinearSystemCertificate<E> {
    /// The member `sum_alpha lambda_alpha g_alpha`.
    pub fn member<F: Field<Elem = E>>(&self, field: &F, lambda: &[E]) -> Poly<E> {
        let nvars = self.forms[0].nvars();
        self.forms
            .iter()
            .zip(lambda)
            .fold(Poly::zero(nvars), |acc, (g, l)| {
                acc.add(field, &g.scale(field, l))
            })
    }

    /// Checks base-point and tangency conditions; returns the first failure.
    pub fn check<F: Field<Elem = E>>(&self, field: &F) -> std::result::Result<(), String> {
        for (j, (pt, lam)) in self
            .assigned_points
            .iter()
            .zip(&self.assigned_parameters)
            .enumerate()
        {
            for (alpha, g) in self.forms.iter().enumerate() {
                if !field.is_zero(&g.eval(field, pt)) {
                    return Err(format!("form {alpha} does not vanish at point {j}"));
                }
            }
            let member = self.member(field, lam);
            for gamma in 0..pt.len() {
                if !field.is_zero(&member.partial(field, gamma).eval(field, pt)) {
                    return Err(format!(
                        "member at parameter {j} is not singular at point {j} (direction {gamma})"
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Turns a left-null covector of `inst.matrix` into a verified certificate.
pub fn extract_certificate<F: Field>(
    field: &F,
    inst: &SegreInstance<F::Elem>,
    covector: &[F::Elem],
) -> Result<LinearSystemCertificate<F::Elem>> {
    let base = inst.chart.base();
    let k = inst.chart.k();
    let coeffs = HyperplaneCoefficients::from_covector(field, k, base.len(), covector)?;
    let forms = (0..=k)
        .map(|alpha| Poly::from_chart(field, base, coeffs.a.row(alpha)))
        .collect();
    let mut cert = LinearSystemCertificate {
        k,
        forms,
        assigned_points: inst.frame.points.clone(),
        assigned_parameters: (0..inst.frame.points.len())
            .map(|j| inst.frame.lambda.column(j))
            .collect(),
        verified: false,
    };
    cert.check(field).map_err(Error::Inconsistent)?;
    cert.verified = true;
    Ok(cert)
}

/// One certificate per basis vector of the left null space.
pub fn certificates<F: Field>(
    field: &F,
    inst: &SegreInstance<F::Elem>,
) -> Result<Vec<LinearSystemCertificate<F::Elem>>> {
    left_null_space(field, &inst.matrix)
        .iter()
        .map(|v| extract_certificate(field, inst, v))
        .collect()
}

/// Number of independent verified certificates at the best of the query's
/// trial samples (the one of maximal rank). When the matrix has more rows
/// than columns, `rows - cols` of them exist for dimensional reasons alone.
pub fn count_certificates(query: &SecantQuery) -> Result<usize> {
    fn run<F: Field>(field: &F, query: &SecantQuery) -> Result<usize> {
        let mut best = usize::MAX;
        for t in 0..query.trials {
            let inst = SegreInstance::for_trial(field, query, t)?;
            let certs = certificates(field, &inst)?;
            best = best.min(certs.iter().filter(|c| c.verified).count());
        }
        Ok(best)
    }
    match query.domain {
        ArithmeticDomain::PrimeField(p) => run(&PrimeField::new(p)?, query),
        ArithmeticDomain::Rational => run(&Rationals, query),
    }
}

/// No three of the plane points are collinear.
pub fn no_three_collinear<F: Field>(field: &F, points: &[AffinePoint<F::Elem>]) -> bool {
    let det = |a: &[F::Elem], b: &[F::Elem], c: &[F::Elem]| {
        // | 1 a0 a1 ; 1 b0 b1 ; 1 c0 c1 |
        let t1 = field.mul(&field.sub(&b[0], &a[0]), &field.sub(&c[1], &a[1]));
        let t2 = field.mul(&field.sub(&c[0], &a[0]), &field.sub(&b[1], &a[1]));
        field.sub(&t1, &t2)
    };
    let m = points.len();
    for i in 0..m {
        for j in i + 1..m {
            for l in j + 1..m {
                if field.is_zero(&det(&points[i], &points[j], &points[l])) {
                    return false;
                }
            }
        }
    }
    true
}

fn distinct_parameters<F: Field>(field: &F, lambda: &DenseMatrix<F::Elem>) -> bool {
    let h1 = lambda.cols();
    for a in 0..h1 {
        for b in a + 1..h1 {
            let x = field.mul(lambda.get(0, a), lambda.get(1, b));
            let y = field.mul(lambda.get(1, a), lambda.get(0, b));
            if x == y {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyConfig {
    pub seed: u64,
    pub domain: ArithmeticDomain,
    pub max_resamples: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            seed: crate::terracini::DEFAULT_SEED,
            domain: ArithmeticDomain::default_prime(),
            max_resamples: 16,
        }
    }
}

/// End-to-end reproduction of the `(1,4)`-defect of the Veronese surface
/// `V_{2,3}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct V23Report {
    pub seed: u64,
    pub domain: ArithmeticDomain,
    pub resamples: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub expected_dim: i64,
    pub computed_dim: i64,
    pub defect: usize,
    pub certificates: usize,
    pub certificate_verified: bool,
    /// Both generators of the pencil are divisible by the conic through the
    /// five points.
    pub fixed_conic_divides: bool,
    /// The residual pencil of lines passes through `p^(j)` at parameter
    /// `lambda^(j)`.
    pub moving_part_incident: bool,
    pub fixed_component: String,
    pub moving_part: Vec<String>,
}

impl V23Report {
    pub fn passed(&self) -> bool {
        self.defect == 1
            && self.certificates == 1
            && self.certificate_verified
            && self.fixed_conic_divides
            && self.moving_part_incident
    }
}

/// Unique (up to scale) conic through five plane points in general position.
pub fn conic_through<F: Field>(
    field: &F,
    points: &[AffinePoint<F::Elem>],
) -> Result<Poly<F::Elem>> {
    let conics = VeroneseChart::new(2, 2)?;
    let rows = points
        .iter()
        .map(|p| crate::varieties::veronese_eval(field, &conics, p))
        .collect::<Result<Vec<_>>>()?;
    let m = DenseMatrix::from_rows(rows, conics.len())?;
    let kernel = null_space(field, &m);
    if kernel.len() != 1 {
        return Err(Error::Precondition(format!(
            "expected a unique conic, found a {}-dimensional family",
            kernel.len()
        )));
    }
    Ok(Poly::from_chart(field, &conics, &kernel[0]))
}

/// Runs the `V_{2,3}` pipeline with a caller-supplied frame sampler; frames
/// with three collinear points or repeated parameters are redrawn.
pub fn certify_v23_with<F, S>(field: &F, cfg: &CertifyConfig, mut sampler: S) -> Result<V23Report>
where
    F: Field,
    S: FnMut() -> Result<Frame<F::Elem>>,
{
    let mut resamples = 0;
    let frame = loop {
        let frame = sampler()?;
        if no_three_collinear(field, &frame.points) && distinct_parameters(field, &frame.lambda) {
            break frame;
        }
        resamples += 1;
        if resamples > cfg.max_resamples {
            return Err(Error::DegenerateSample {
                attempts: resamples,
            });
        }
    };

    let base = VeroneseChart::new(2, 3)?;
    let chart = SegreProductChart::new(1, base.clone());
    let inst = SegreInstance::new(field, chart, frame)?;
    let rank = field.rank(&inst.matrix);
    if rank != 19 {
        return Err(Error::Inconsistent(format!(
            "expected rank 19, got {rank} for\n{}",
            inst.matrix
        )));
    }
    let null = left_null_space(field, &inst.matrix);
    if null.len() != 1 {
        return Err(Error::Inconsistent(format!(
            "expected one null covector, got {} for\n{}",
            null.len(),
            inst.matrix
        )));
    }
    let cert = extract_certificate(field, &inst, &null[0])?;

    let conic = conic_through(field, &inst.frame.points)?;
    let mut fixed_conic_divides = true;
    let mut moving = Vec::new();
    for g in &cert.forms {
        let (q, rem) = g.div_rem(field, &conic);
        fixed_conic_divides &= rem.is_zero() && q.degree().is_some_and(|d| d <= 1);
        moving.push(q);
    }
    let moving_part_incident = fixed_conic_divides
        && inst
            .frame
            .points
            .iter()
            .zip(&cert.assigned_parameters)
            .all(|(pt, lam)| {
                let line = moving.iter().zip(lam).fold(Poly::zero(2), |acc, (q, l)| {
                    acc.add(field, &q.scale(field, l))
                });
                field.is_zero(&line.eval(field, pt))
            });

    let expected = expected_dim_segre(2, base.r(), 1, 4);
    let computed = rank as i64 - 1;
    Ok(V23Report {
        seed: cfg.seed,
        domain: field.domain(),
        resamples,
        rows: inst.matrix.rows(),
        cols: inst.matrix.cols(),
        rank,
        expected_dim: expected,
        computed_dim: computed,
        defect: (expected - computed) as usize,
        certificates: null.len(),
        certificate_verified: cert.verified,
        fixed_conic_divides,
        moving_part_incident,
        fixed_component: conic.to_string(),
        moving_part: moving.iter().map(|q| q.to_string()).collect(),
    })
}

/// Samples five general points and parameters, confirms the rank drop of
/// the `20 x 20` Terracini matrix, extracts the unique certificate and checks
/// that the pencil is `conic * (pencil of lines)`.
pub fn certify_v23(cfg: &CertifyConfig) -> Result<V23Report> {
    fn run<F: Field>(field: &F, cfg: &CertifyConfig) -> Result<V23Report> {
        let mut rng = RandomSource::new(cfg.seed);
        certify_v23_with(field, cfg, || sample_frame(field, 2, 1, 4, &mut rng))
    }
    match cfg.domain {
        ArithmeticDomain::PrimeField(p) => run(&PrimeField::new(p)?, cfg),
        ArithmeticDomain::Rational => run(&Rationals, cfg),
    }
}

/// Input of the pencil case analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCheckInput {
    pub d: u32,
    /// Degree of the fixed base curve.
    pub m: u32,
    pub h: u32,
    pub delta: u32,
}

impl CaseCheckInput {
    pub fn new(d: u32, m: u32, h: u32, delta: u32) -> Result<Self> {
        if m == 0 || m > d {
            return Err(Error::InvalidQuery(format!(
                "need 1 <= m <= d (m={m}, d={d})"
            )));
        }
        if h == 0 || delta == 0 {
            return Err(Error::InvalidQuery("need h >= 1 and delta >= 1".into()));
        }
        Ok(CaseCheckInput { d, m, h, delta })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Inequality {
    /// `m(m+3)/2 >= h+1`: the base curve passes through the `h+1` points.
    BaseCurveThroughPoints,
    /// `h+1 >= (d(d+3)+3-delta)/4`: the secant dimension falls short.
    SecantShortfall,
    /// `(d-m)(d-m+3)+1 >= (d(d+3)+3-delta)/4 + delta - 1`: fibre count for
    /// the moving parts.
    MovingPartFibre,
    /// `d - m < (d+3)/5`.
    ResidualDegree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict", content = "violated")]
pub enum CaseVerdict {
    Consistent,
    Contradiction(Inequality),
}

type Q = Ratio<i64>;

fn q(v: i64) -> Q {
    Q::from_integer(v)
}

/// Evaluates the base-curve inequalities exactly; reports the first one
/// that fails.
pub fn case_check(input: &CaseCheckInput) -> CaseVerdict {
    let (d, m, h, delta) = (
        input.d as i64,
        input.m as i64,
        input.h as i64,
        input.delta as i64,
    );
    let shortfall = Q::new(d * (d + 3) + 3 - delta, 4);
    let checks = [
        (
            Inequality::BaseCurveThroughPoints,
            Q::new(m * (m + 3), 2) >= q(h + 1),
        ),
        (Inequality::SecantShortfall, q(h + 1) >= shortfall),
        (
            Inequality::MovingPartFibre,
            q((d - m) * (d - m + 3) + 1) >= shortfall + q(delta - 1),
        ),
        (Inequality::ResidualDegree, q(d - m) < Q::new(d + 3, 5)),
    ];
    checks
        .into_iter()
        .find(|(_, ok)| !ok)
        .map_or(CaseVerdict::Consistent, |(which, _)| {
            CaseVerdict::Contradiction(which)
        })
}

/// Range of `delta` left open by the inequalities for a given `(d, m)`,
/// with `h` as large as the base curve allows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DefectBounds {
    /// Largest `h` with `m(m+3)/2 >= h+1`.
    pub h_max: i64,
    /// From `h+1 >= (d(d+3)+3-delta)/4` at `h = h_max`.
    pub delta_min: Q,
    /// From the moving-part fibre count.
    pub delta_max: Q,
}

impl DefectBounds {
    pub fn is_empty(&self) -> bool {
        self.delta_min > self.delta_max
    }
}

pub fn case_bounds(d: u32, m: u32) -> DefectBounds {
    let (d, m) = (d as i64, m as i64);
    let h_max = m * (m + 3) / 2 - 1;
    let delta_min = q(d * (d + 3) + 3 - 4 * (h_max + 1));
    // 4((d-m)(d-m+3)+1) >= d(d+3)+3-delta + 4delta - 4
    let delta_max = Q::new(4 * ((d - m) * (d - m + 3) + 1) - d * (d + 3) + 1, 3);
    DefectBounds {
        h_max,
        delta_min,
        delta_max,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_curve_verdicts() {
        let b = case_bounds(2, 1);
        assert_eq!((b.delta_min, b.delta_max), (q(5), Q::new(11, 3)));
        assert!(b.is_empty());
        let b = case_bounds(3, 1);
        assert_eq!((b.delta_min, b.delta_max), (q(13), q(9)));
        assert!(b.is_empty());
        let b = case_bounds(3, 2);
        assert_eq!((b.h_max, b.delta_min, b.delta_max), (4, q(1), q(1)));

        let ok = CaseCheckInput::new(3, 2, 4, 1).unwrap();
        assert_eq!(case_check(&ok), CaseVerdict::Consistent);
        for h in 1..=10 {
            for delta in 1..=15 {
                for (d, m) in [(2, 1), (3, 1)] {
                    let v = case_check(&CaseCheckInput::new(d, m, h, delta).unwrap());
                    assert!(matches!(v, CaseVerdict::Contradiction(_)));
                }
            }
        }
    }

    #[test]
    fn invalid_inputs() {
        assert!(CaseCheckInput::new(3, 0, 4, 1).is_err());
        assert!(CaseCheckInput::new(3, 4, 4, 1).is_err());
        assert!(CaseCheckInput::new(3, 2, 0, 1).is_err());
        assert!(CaseCheckInput::new(3, 2, 4, 0).is_err());
    }

    #[test]
    fn zero_covector_rejected() {
        let f = PrimeField::default();
        let q = SecantQuery::grassmann(2, 2, 0, 1);
        let inst = SegreInstance::for_trial(&f, &q, 0).unwrap();
        let zero = vec![0u64; inst.matrix.rows()];
        assert!(matches!(
            extract_certificate(&f, &inst, &zero),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn non_null_covector_is_inconsistent() {
        let f = PrimeField::default();
        let q = SecantQuery::grassmann(2, 3, 1, 4);
        let inst = SegreInstance::for_trial(&f, &q, 0).unwrap();
        let mut v = vec![0u64; inst.matrix.rows()];
        v[0] = 1;
        assert!(matches!(
            extract_certificate(&f, &inst, &v),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn collinear_detection() {
        let q = Rationals;
        let pts: Vec<Vec<_>> = [[1, 1], [2, 2], [3, 3], [1, 5]]
            .iter()
            .map(|p| p.iter().map(|&x| q.from_i64(x)).collect())
            .collect();
        assert!(!no_three_collinear(&q, &pts));
        assert!(no_three_collinear(&q, &pts[1..]));
    }
}
