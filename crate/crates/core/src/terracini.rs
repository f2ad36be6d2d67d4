//! Secant and Grassmann-secant dimensions by Terracini rank tests.
//!
//! Every computation samples random chart points, stacks tangent data into
//! a matrix and takes its exact rank. A random point can only lower the
//! rank, so the maximum over trials is a lower bound on the generic rank and
//! the reported defect is an upper bound that is exact with high probability.
//!
//! Grassmann defects are computed on two routes:
//!
//! * **direct**: the Jacobian of `(lambda, points) -> (sum_j lambda_ij p^(j))_i`,
//!   with defect equal to its rank deficiency from `min(rows, cols)`;
//! * **Segre**: the Terracini matrix of `Sec_h(P^k x V)`, with defect measured
//!   against the ordinary expected secant dimension.
//!
//! Row and column counts of the direct Jacobian exceed the two branches of the
//! Grassmann expected dimension by exactly `(k+1)^2`, the dimension of the
//! fibres of the map sending a frame to the `k`-plane it spans; the reports
//! carry that number so expected and computed dimensions use Grassmann
//! conventions.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ArithmeticDomain, Field, PrimeField, Rationals};
use crate::matrix::DenseMatrix;
use crate::random::{cell_label, mix_seed, RandomSource};
use crate::varieties::{
    grassmann_jacobian, segre_terracini_matrix, veronese_terracini_matrix, AffinePoint,
    SegreProductChart, VeroneseChart, DEFAULT_MONOMIAL_GUARD,
};

pub const DEFAULT_SEED: u64 = 0x7E44_AC11_1915;
pub const DEFAULT_TRIALS: usize = 3;

/// Flagged defects are re-checked over the rationals when the matrix has at
/// most this many rows.
pub const RATIONAL_RECHECK_ROWS: usize = 120;

const SAMPLE_RETRIES: usize = 32;

/// Runs `$body` with `$f` bound to the concrete field for `$dom`.
macro_rules! with_field {
    ($dom:expr, |$f:ident| $body:expr) => {
        match $dom {
            ArithmeticDomain::PrimeField(p) => {
                let $f = &PrimeField::new(p)?;
                $body
            }
            ArithmeticDomain::Rational => {
                let $f = &Rationals;
                $body
            }
        }
    };
}
#[allow(unused_imports)]
pub(crate) use with_field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Direct,
    Segre,
    Both,
}

/// One secant or Grassmann-secant question about `V_{n,d}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantQuery {
    pub n: usize,
    pub d: u32,
    pub h: usize,
    /// `0` for ordinary secants.
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub domain: ArithmeticDomain,
    /// Re-run flagged prime-field results over the rationals.
    #[serde(default)]
    pub rational_recheck: bool,
    #[serde(default = "default_guard")]
    pub monomial_guard: usize,
}

fn default_guard() -> usize {
    DEFAULT_MONOMIAL_GUARD
}

impl SecantQuery {
    pub fn secant(n: usize, d: u32, h: usize) -> Self {
        Self::grassmann(n, d, 0, h)
    }

    pub fn grassmann(n: usize, d: u32, k: usize, h: usize) -> Self {
        SecantQuery {
            n,
            d,
            h,
            k,
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            domain: ArithmeticDomain::default_prime(),
            rational_recheck: false,
            monomial_guard: DEFAULT_MONOMIAL_GUARD,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_domain(mut self, domain: ArithmeticDomain) -> Self {
        self.domain = domain;
        self
    }

    pub fn with_rational_recheck(mut self, on: bool) -> Self {
        self.rational_recheck = on;
        self
    }

    pub fn with_guard(mut self, guard: usize) -> Self {
        self.monomial_guard = guard;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.d == 0 {
            return Err(Error::InvalidQuery("n and d must be positive".into()));
        }
        if self.h < self.k {
            return Err(Error::InvalidQuery(format!(
                "h = {} < k = {}: a k-plane needs k+1 spanning points",
                self.h, self.k
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidQuery("at least one trial is required".into()));
        }
        self.domain.validate()
    }

    pub fn chart(&self) -> Result<VeroneseChart> {
        VeroneseChart::with_guard(self.n, self.d, self.monomial_guard)
    }

    pub fn trial_source(&self, t: usize) -> RandomSource {
        trial_source(self.seed, t)
    }
}

/// Random stream of trial `t`; it does not depend on the trial count, so
/// more trials only ever extend a run.
pub fn trial_source(seed: u64, t: usize) -> RandomSource {
    RandomSource::new(seed).derive(t as u64)
}

/// Result of a rational re-check of a flagged prime-field report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub domain: ArithmeticDomain,
    pub trials: Vec<usize>,
    pub defect: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectReport {
    pub query: SecantQuery,
    pub expected_dim: i64,
    pub computed_dim: i64,
    pub defect: usize,
    pub route: Route,
    pub max_rank_observed: usize,
    /// Rank observed in each trial.
    pub trials: Vec<usize>,
    pub rows: usize,
    pub cols: usize,
    /// Dimension subtracted from the matrix size to reach the expected
    /// dimension (`(k+1)^2` on the direct route, `1` for projective spans).
    pub fiber_dim: usize,
    pub domain: ArithmeticDomain,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl DefectReport {
    pub fn is_defective(&self) -> bool {
        self.defect > 0
    }
}

/// Expected dimension of `Sec_h(V)` for `V` of dimension `n` in `P^r`.
pub fn expected_dim_secant(n: usize, r: usize, h: usize) -> i64 {
    (((n + 1) * (h + 1)) as i64 - 1).min(r as i64)
}

/// Expected dimension of the Grassmann secant variety `Sec_{k,h}(V)`.
pub fn expected_dim_grassmann(n: usize, r: usize, k: usize, h: usize) -> i64 {
    let (n, r, k, h) = (n as i64, r as i64, k as i64, h as i64);
    ((h + 1) * n + (k + 1) * (h - k)).min((k + 1) * (r - k))
}

/// Expected dimension of `Sec_h(P^k x V)` in `P^{(k+1)(r+1)-1}`.
pub fn expected_dim_segre(n: usize, r: usize, k: usize, h: usize) -> i64 {
    (((h + 1) * (k + n + 1)) as i64 - 1).min(((k + 1) * (r + 1)) as i64 - 1)
}

/// Smallest `h` at which the Grassmann expected dimension hits its ambient
/// branch, plus two.
pub fn default_h_max(n: usize, r: usize, k: usize) -> usize {
    let need = (k + 1) * (r + 1);
    let per_point = n + k + 1;
    let h_fill = need.div_ceil(per_point).saturating_sub(1);
    h_fill.max(k) + 2
}

/// A sampled frame: `(k+1) x (h+1)` nonzero coefficients and `h+1`
/// pairwise distinct chart points with nonzero coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame<E> {
    pub lambda: DenseMatrix<E>,
    pub points: Vec<AffinePoint<E>>,
}

pub fn sample_frame<F: Field>(
    field: &F,
    n: usize,
    k: usize,
    h: usize,
    rng: &mut RandomSource,
) -> Result<Frame<F::Elem>> {
    for _ in 0..SAMPLE_RETRIES {
        let points: Vec<Vec<F::Elem>> = (0..=h)
            .map(|_| (0..n).map(|_| field.sample_nonzero(rng)).collect())
            .collect();
        let distinct = points
            .iter()
            .enumerate()
            .all(|(a, p)| points[..a].iter().all(|q| q != p));
        if !distinct {
            continue;
        }
        let lambda = DenseMatrix::from_entries(
            k + 1,
            h + 1,
            (0..(k + 1) * (h + 1))
                .map(|_| field.sample_nonzero(rng))
                .collect(),
        )?;
        return Ok(Frame { lambda, points });
    }
    Err(Error::DegenerateSample {
        attempts: SAMPLE_RETRIES,
    })
}

/// Rank of the ordinary Terracini matrix of `Sec_h(V_{n,d})` at `points`.
pub fn secant_rank_at<F: Field>(
    field: &F,
    chart: &VeroneseChart,
    points: &[AffinePoint<F::Elem>],
) -> Result<usize> {
    Ok(field.rank(&veronese_terracini_matrix(field, chart, points)?))
}

fn secant_dim_in<F: Field>(field: &F, query: &SecantQuery) -> Result<DefectReport> {
    let chart = query.chart()?;
    let (n, h) = (query.n, query.h);
    let mut trials = Vec::with_capacity(query.trials);
    for t in 0..query.trials {
        let mut rng = query.trial_source(t);
        let frame = sample_frame(field, n, 0, h, &mut rng)?;
        trials.push(secant_rank_at(field, &chart, &frame.points)?);
    }
    let max_rank = *trials.iter().max().expect("trials >= 1");
    let expected = expected_dim_secant(n, chart.r(), h);
    let computed = max_rank as i64 - 1;
    let defect = expected - computed;
    if defect < 0 {
        return Err(Error::Inconsistent(format!(
            "secant rank {max_rank} exceeds expected dimension {expected}"
        )));
    }
    Ok(DefectReport {
        query: query.clone(),
        expected_dim: expected,
        computed_dim: computed,
        defect: defect as usize,
        route: Route::Direct,
        max_rank_observed: max_rank,
        trials,
        rows: (h + 1) * (n + 1),
        cols: chart.len(),
        fiber_dim: 1,
        domain: field.domain(),
        seed: query.seed,
        verification: None,
        warnings: Vec::new(),
    })
}

/// Dimension and defect of `Sec_h(V_{n,d})` (the query's `k` must be 0).
pub fn secant_dim(query: &SecantQuery) -> Result<DefectReport> {
    query.validate()?;
    if query.k != 0 {
        return Err(Error::InvalidQuery("ordinary secants need k = 0".into()));
    }
    let report = with_field!(query.domain, |f| secant_dim_in(f, query))?;
    recheck(report, secant_dim_in)
}

/// Ranks of the direct Jacobian and the Segre matrix at one frame.
fn grassmann_ranks_at<F: Field>(
    field: &F,
    chart: &VeroneseChart,
    k: usize,
    frame: &Frame<F::Elem>,
    route: Route,
) -> Result<(Option<usize>, Option<usize>)> {
    let h = frame.points.len() - 1;
    let direct = match route {
        Route::Direct | Route::Both => Some(field.rank(&grassmann_jacobian(
            field,
            chart,
            k,
            h,
            &frame.lambda,
            &frame.points,
        )?)),
        Route::Segre => None,
    };
    let segre = match route {
        Route::Segre | Route::Both => {
            let seg = SegreProductChart::new(k, chart.clone());
            Some(field.rank(&segre_terracini_matrix(
                field,
                &seg,
                &frame.lambda,
                &frame.points,
            )?))
        }
        Route::Direct => None,
    };
    Ok((direct, segre))
}

/// Outcome of a Grassmann query; holds one report per requested route.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrassmannOutcome {
    pub direct: Option<DefectReport>,
    pub segre: Option<DefectReport>,
}

impl GrassmannOutcome {
    pub fn defect(&self) -> usize {
        self.direct
            .as_ref()
            .or(self.segre.as_ref())
            .map_or(0, |r| r.defect)
    }

    pub fn reports(&self) -> impl Iterator<Item = &DefectReport> {
        self.direct.iter().chain(self.segre.iter())
    }
}

fn grassmann_in<F: Field>(
    field: &F,
    query: &SecantQuery,
    route: Route,
) -> Result<GrassmannOutcome> {
    let chart = query.chart()?;
    let (n, k, h) = (query.n, query.k, query.h);
    let r = chart.r();
    let mut direct_ranks = Vec::new();
    let mut segre_ranks = Vec::new();
    for t in 0..query.trials {
        let mut rng = query.trial_source(t);
        let frame = sample_frame(field, n, k, h, &mut rng)?;
        let (dr, sr) = grassmann_ranks_at(field, &chart, k, &frame, route)?;
        direct_ranks.extend(dr);
        segre_ranks.extend(sr);
    }
    let rows = (k + 1) * (r + 1);
    let cols = (h + 1) * (k + 1 + n);
    let full = rows.min(cols);
    let fiber = (k + 1) * (k + 1);
    let base = DefectReport {
        query: query.clone(),
        expected_dim: 0,
        computed_dim: 0,
        defect: 0,
        route,
        max_rank_observed: 0,
        trials: Vec::new(),
        rows,
        cols,
        fiber_dim: 0,
        domain: field.domain(),
        seed: query.seed,
        verification: None,
        warnings: Vec::new(),
    };
    let direct = (!direct_ranks.is_empty()).then(|| {
        let max_rank = *direct_ranks.iter().max().unwrap();
        let defect = full - max_rank;
        let expected = expected_dim_grassmann(n, r, k, h);
        DefectReport {
            expected_dim: expected,
            computed_dim: expected - defect as i64,
            defect,
            route: Route::Direct,
            max_rank_observed: max_rank,
            trials: direct_ranks,
            fiber_dim: fiber,
            ..base.clone()
        }
    });
    let segre = (!segre_ranks.is_empty()).then(|| {
        let max_rank = *segre_ranks.iter().max().unwrap();
        let expected = expected_dim_segre(n, r, k, h);
        let computed = max_rank as i64 - 1;
        DefectReport {
            expected_dim: expected,
            computed_dim: computed,
            defect: (expected - computed) as usize,
            route: Route::Segre,
            max_rank_observed: max_rank,
            trials: segre_ranks,
            fiber_dim: 1,
            ..base.clone()
        }
    });
    Ok(GrassmannOutcome { direct, segre })
}

fn finish_grassmann(query: &SecantQuery, route: Route) -> Result<GrassmannOutcome> {
    let outcome = with_field!(query.domain, |f| grassmann_in(f, query, route))?;
    let direct = outcome
        .direct
        .map(|r| recheck(r, |f, q| grassmann_route_in(f, q, Route::Direct)))
        .transpose()?;
    let segre = outcome
        .segre
        .map(|r| recheck(r, |f, q| grassmann_route_in(f, q, Route::Segre)))
        .transpose()?;
    if let (Some(a), Some(b)) = (&direct, &segre) {
        if a.defect != b.defect {
            return Err(Error::RouteMismatch {
                direct: a.defect,
                segre: b.defect,
            });
        }
    }
    Ok(GrassmannOutcome { direct, segre })
}

fn grassmann_route_in<F: Field>(field: &F, q: &SecantQuery, route: Route) -> Result<DefectReport> {
    let out = grassmann_in(field, q, route)?;
    Ok(match route {
        Route::Segre => out.segre,
        _ => out.direct,
    }
    .expect("route requested"))
}

/// Grassmann defect from the rank deficiency of the direct Jacobian.
pub fn grassmann_defect_direct(query: &SecantQuery) -> Result<DefectReport> {
    query.validate()?;
    Ok(finish_grassmann(query, Route::Direct)?
        .direct
        .expect("direct route"))
}

/// Grassmann defect as the ordinary secant defect of `P^k x V_{n,d}`.
pub fn grassmann_defect_via_segre(query: &SecantQuery) -> Result<DefectReport> {
    query.validate()?;
    Ok(finish_grassmann(query, Route::Segre)?
        .segre
        .expect("segre route"))
}

/// Runs the requested routes on shared samples. With [`Route::Both`] the two
/// defects must agree, otherwise [`Error::RouteMismatch`].
pub fn grassmann_defect(query: &SecantQuery, route: Route) -> Result<GrassmannOutcome> {
    query.validate()?;
    finish_grassmann(query, route)
}

/// Re-runs a flagged prime-field report over the rationals when the query
/// asks for it and the matrix is small enough. The final defect is the
/// smaller of the two (each is a one-sided upper bound).
fn recheck<G>(mut report: DefectReport, run: G) -> Result<DefectReport>
where
    G: Fn(&Rationals, &SecantQuery) -> Result<DefectReport>,
{
    let q = &report.query;
    let eligible = q.rational_recheck
        && report.defect > 0
        && matches!(report.domain, ArithmeticDomain::PrimeField(_))
        && report.rows <= RATIONAL_RECHECK_ROWS;
    if !eligible {
        return Ok(report);
    }
    let rq = q.clone().with_domain(ArithmeticDomain::Rational);
    let exact = run(&Rationals, &rq)?;
    if exact.defect != report.defect {
        report.warnings.push(format!(
            "rational re-check found defect {} (prime field: {})",
            exact.defect, report.defect
        ));
    }
    if exact.defect < report.defect {
        let drop = (report.defect - exact.defect) as i64;
        report.defect = exact.defect;
        report.computed_dim += drop;
        report.max_rank_observed = exact.max_rank_observed;
    }
    report.verification = Some(Verification {
        domain: ArithmeticDomain::Rational,
        trials: exact.trials,
        defect: exact.defect,
    });
    Ok(report)
}

/// Grid scan settings.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub n: usize,
    pub k: usize,
    pub d_range: RangeInclusive<u32>,
    pub h_range: RangeInclusive<usize>,
    pub trials: usize,
    pub seed: u64,
    pub domain: ArithmeticDomain,
    pub rational_recheck: bool,
    pub monomial_guard: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl ScanConfig {
    pub fn new(k: usize, d_range: RangeInclusive<u32>, h_range: RangeInclusive<usize>) -> Self {
        ScanConfig {
            n: 2,
            k,
            d_range,
            h_range,
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            domain: ArithmeticDomain::default_prime(),
            rational_recheck: true,
            monomial_guard: DEFAULT_MONOMIAL_GUARD,
            jobs: None,
        }
    }

    /// Query for one cell, seeded by `seed ^ hash(cell)`.
    pub fn cell_query(&self, d: u32, h: usize) -> SecantQuery {
        let label = cell_label(&[self.n as u64, d as u64, self.k as u64, h as u64]);
        SecantQuery {
            n: self.n,
            d,
            h,
            k: self.k,
            trials: self.trials,
            seed: mix_seed(self.seed, label),
            domain: self.domain,
            rational_recheck: self.rational_recheck,
            monomial_guard: self.monomial_guard,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCell {
    pub n: usize,
    pub d: u32,
    pub k: usize,
    pub h: usize,
    pub outcome: std::result::Result<GrassmannOutcome, String>,
}

impl ScanCell {
    pub fn defect(&self) -> Option<usize> {
        self.outcome.as_ref().ok().map(|o| o.defect())
    }

    pub fn flagged(&self) -> bool {
        self.defect().is_some_and(|d| d > 0)
    }
}

/// Both-route Grassmann defects over a `(d, h)` grid, in grid order.
/// Per-cell failures are recorded in the cell, not propagated.
pub fn scan(config: &ScanConfig) -> Result<Vec<ScanCell>> {
    let cells: Vec<(u32, usize)> = config
        .d_range
        .clone()
        .flat_map(|d| config.h_range.clone().map(move |h| (d, h)))
        .collect();
    let run = |&(d, h): &(u32, usize)| {
        let q = config.cell_query(d, h);
        ScanCell {
            n: config.n,
            d,
            k: config.k,
            h,
            outcome: grassmann_defect(&q, Route::Both).map_err(|e| e.to_string()),
        }
    };
    match config.jobs {
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
            Ok(pool.install(|| cells.par_iter().map(run).collect()))
        }
        None => Ok(cells.par_iter().map(run).collect()),
    }
}
