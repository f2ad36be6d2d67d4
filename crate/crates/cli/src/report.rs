//! Report types printed by the CLI and their renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use terracini_core::certificates::{CaseCheckInput, CaseVerdict, V23Report};
use terracini_core::interpolation::InterpReport;
use terracini_core::terracini::{DefectReport, GrassmannOutcome, Route, ScanCell, SecantQuery};
use terracini_core::ArithmeticDomain;

/// Top-level report of `secant` and `grassmann`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryReport {
    pub query: SecantQuery,
    pub expected_dim: i64,
    pub computed_dim: i64,
    pub defect: usize,
    pub route: Route,
    /// Rank per trial on the leading route.
    pub trials: Vec<usize>,
    pub domain: ArithmeticDomain,
    pub seed: u64,
    #[serde(default)]
    pub warnings: Vec<String>,
    /// Per-route detail; the leading route comes first.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub routes: Vec<DefectReport>,
}

impl QueryReport {
    pub fn from_secant(r: DefectReport) -> Self {
        QueryReport {
            query: r.query.clone(),
            expected_dim: r.expected_dim,
            computed_dim: r.computed_dim,
            defect: r.defect,
            route: r.route,
            trials: r.trials.clone(),
            domain: r.domain,
            seed: r.seed,
            warnings: r.warnings.clone(),
            routes: vec![r],
        }
    }

    pub fn from_grassmann(out: GrassmannOutcome, route: Route) -> Self {
        let routes: Vec<DefectReport> = out.reports().cloned().collect();
        let mut rep = Self::from_secant(routes[0].clone());
        rep.route = route;
        rep.warnings = routes.iter().flat_map(|r| r.warnings.clone()).collect();
        rep.routes = routes;
        rep
    }

    pub fn route(&self, route: Route) -> Option<&DefectReport> {
        self.routes.iter().find(|r| r.route == route)
    }
}

pub fn decode_report(json: &str) -> serde_json::Result<QueryReport> {
    serde_json::from_str(json)
}

/// One flattened scan cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: usize,
    pub d: u32,
    pub k: usize,
    pub h: usize,
    pub seed: Option<u64>,
    pub expected_dim: Option<i64>,
    pub computed_dim: Option<i64>,
    pub direct_defect: Option<usize>,
    pub segre_expected_dim: Option<i64>,
    pub segre_computed_dim: Option<i64>,
    pub segre_defect: Option<usize>,
    pub flagged: bool,
    pub verified: Option<String>,
    pub error: Option<String>,
}

impl From<&ScanCell> for ScanRow {
    fn from(c: &ScanCell) -> Self {
        let (direct, segre, err) = match &c.outcome {
            Ok(o) => (o.direct.as_ref(), o.segre.as_ref(), None),
            Err(e) => (None, None, Some(e.clone())),
        };
        let verified = direct
            .into_iter()
            .chain(segre)
            .find_map(|r| r.verification.as_ref())
            .map(|v| v.domain.to_string());
        ScanRow {
            n: c.n,
            d: c.d,
            k: c.k,
            h: c.h,
            seed: direct.or(segre).map(|r| r.seed),
            expected_dim: direct.map(|r| r.expected_dim),
            computed_dim: direct.map(|r| r.computed_dim),
            direct_defect: direct.map(|r| r.defect),
            segre_expected_dim: segre.map(|r| r.expected_dim),
            segre_computed_dim: segre.map(|r| r.computed_dim),
            segre_defect: segre.map(|r| r.defect),
            flagged: c.flagged(),
            verified,
            error: err,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub domain: ArithmeticDomain,
    pub trials: usize,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn flagged(&self) -> impl Iterator<Item = &ScanRow> {
        self.rows.iter().filter(|r| r.flagged)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyReport {
    pub runs: Vec<V23Report>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub input: CaseCheckInput,
    pub verdict: CaseVerdict,
    pub h_max: i64,
    /// Exact rationals written `p/q`.
    pub delta_min: String,
    pub delta_max: String,
}

/// Any report the CLI prints.
pub enum Output {
    Query(QueryReport),
    Scan(ScanReport),
    Interp(InterpReport),
    Certify(CertifyReport),
    Case(CaseReport),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".into(), |x| x.to_string())
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn ranks(v: &[usize]) -> String {
    format!("[{}]", join(v, ", "))
}

fn query_label(q: &SecantQuery) -> String {
    if q.k == 0 {
        format!("n={} d={} h={}", q.n, q.d, q.h)
    } else {
        format!("n={} d={} k={} h={}", q.n, q.d, q.k, q.h)
    }
}

impl Output {
    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        match format {
            Format::Json => {
                let mut s = match self {
                    Output::Query(r) => serde_json::to_string_pretty(r),
                    Output::Scan(r) => serde_json::to_string_pretty(r),
                    Output::Interp(r) => serde_json::to_string_pretty(r),
                    Output::Certify(r) => serde_json::to_string_pretty(r),
                    Output::Case(r) => serde_json::to_string_pretty(r),
                }?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.csv(),
            Format::Table => Ok(self.table()),
        }
    }

    fn csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        match self {
            Output::Query(r) => {
                w.write_record([
                    "n",
                    "d",
                    "k",
                    "h",
                    "route",
                    "expected_dim",
                    "computed_dim",
                    "defect",
                    "trials",
                    "domain",
                    "seed",
                    "warnings",
                ])?;
                for d in &r.routes {
                    w.write_record([
                        r.query.n.to_string(),
                        r.query.d.to_string(),
                        r.query.k.to_string(),
                        r.query.h.to_string(),
                        route_name(d.route).to_string(),
                        d.expected_dim.to_string(),
                        d.computed_dim.to_string(),
                        d.defect.to_string(),
                        join(&d.trials, ";"),
                        d.domain.to_string(),
                        d.seed.to_string(),
                        d.warnings.join(" | "),
                    ])?;
                }
            }
            Output::Scan(r) => {
                for row in &r.rows {
                    w.serialize(row)?;
                }
            }
            Output::Interp(r) => {
                w.write_record([
                    "n",
                    "d",
                    "points",
                    "virtual_dim",
                    "expected_dim",
                    "actual_dim",
                    "special",
                    "trials",
                    "domain",
                    "seed",
                    "warnings",
                ])?;
                w.write_record([
                    r.n.to_string(),
                    r.d.to_string(),
                    r.points.to_string(),
                    r.dims.virtual_dim.to_string(),
                    r.dims.expected_dim.to_string(),
                    r.dims.actual_dim.to_string(),
                    r.dims.special.to_string(),
                    join(&r.trials, ";"),
                    r.domain.to_string(),
                    r.seed.to_string(),
                    r.warnings.join(" | "),
                ])?;
            }
            Output::Certify(r) => {
                w.write_record([
                    "seed",
                    "domain",
                    "rank",
                    "expected_dim",
                    "computed_dim",
                    "defect",
                    "certificates",
                    "verified",
                    "fixed_conic_divides",
                    "moving_part_incident",
                    "passed",
                ])?;
                for v in &r.runs {
                    w.write_record([
                        v.seed.to_string(),
                        v.domain.to_string(),
                        v.rank.to_string(),
                        v.expected_dim.to_string(),
                        v.computed_dim.to_string(),
                        v.defect.to_string(),
                        v.certificates.to_string(),
                        v.certificate_verified.to_string(),
                        v.fixed_conic_divides.to_string(),
                        v.moving_part_incident.to_string(),
                        v.passed().to_string(),
                    ])?;
                }
            }
            Output::Case(r) => {
                w.write_record([
                    "d",
                    "m",
                    "h",
                    "delta",
                    "verdict",
                    "h_max",
                    "delta_min",
                    "delta_max",
                ])?;
                w.write_record([
                    r.input.d.to_string(),
                    r.input.m.to_string(),
                    r.input.h.to_string(),
                    r.input.delta.to_string(),
                    verdict_label(&r.verdict),
                    r.h_max.to_string(),
                    r.delta_min.clone(),
                    r.delta_max.clone(),
                ])?;
            }
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    fn table(&self) -> String {
        let mut s = String::new();
        match self {
            Output::Query(r) => {
                let kind = if r.query.k == 0 && r.routes.len() == 1 && r.routes[0].fiber_dim == 1 {
                    "secant"
                } else {
                    "grassmann"
                };
                let _ = writeln!(s, "query         {kind} {}", query_label(&r.query));
                let _ = writeln!(s, "domain        {}", r.domain);
                let _ = writeln!(s, "seed          {}", r.seed);
                let _ = writeln!(s, "expected_dim  {}", r.expected_dim);
                let _ = writeln!(s, "computed_dim  {}", r.computed_dim);
                let _ = writeln!(s, "defect        {}", r.defect);
                let _ = writeln!(s, "trials        {}", ranks(&r.trials));
                if r.routes.len() > 1 || kind == "grassmann" {
                    for d in &r.routes {
                        let name = route_name(d.route);
                        let _ = writeln!(
                            s,
                            "route {name:<7} expected {} computed {} defect {} ranks {} ({} x {})",
                            d.expected_dim,
                            d.computed_dim,
                            d.defect,
                            ranks(&d.trials),
                            d.rows,
                            d.cols
                        );
                    }
                }
                for d in &r.routes {
                    if let Some(v) = &d.verification {
                        let _ = writeln!(
                            s,
                            "verified      {} route over {} defect {} ranks {}",
                            route_name(d.route),
                            v.domain,
                            v.defect,
                            ranks(&v.trials)
                        );
                    }
                }
                for w in &r.warnings {
                    let _ = writeln!(s, "warning       {w}");
                }
            }
            Output::Scan(r) => {
                let _ = writeln!(
                    s,
                    "{:>3} {:>3} {:>3} {:>3} {:>9} {:>9} {:>7} {:>7} {:>4}  note",
                    "n", "d", "k", "h", "expected", "computed", "direct", "segre", "flag"
                );
                for row in &r.rows {
                    let note = match (&row.error, &row.verified) {
                        (Some(e), _) => e.clone(),
                        (None, Some(v)) => format!("verified over {v}"),
                        _ => String::new(),
                    };
                    let _ = writeln!(
                        s,
                        "{:>3} {:>3} {:>3} {:>3} {:>9} {:>9} {:>7} {:>7} {:>4}  {}",
                        row.n,
                        row.d,
                        row.k,
                        row.h,
                        opt(&row.expected_dim),
                        opt(&row.computed_dim),
                        opt(&row.direct_defect),
                        opt(&row.segre_defect),
                        if row.flagged { "*" } else { "" },
                        note
                    );
                }
                let flagged: Vec<String> =
                    r.flagged().map(|c| format!("({},{})", c.d, c.h)).collect();
                let _ = writeln!(
                    s,
                    "flagged: {}",
                    if flagged.is_empty() {
                        "none".to_string()
                    } else {
                        flagged.join(" ")
                    }
                );
            }
            Output::Interp(r) => {
                let _ = writeln!(s, "system        L_{{{},{}}}(2^{})", r.n, r.d, r.points);
                let _ = writeln!(s, "domain        {}", r.domain);
                let _ = writeln!(s, "seed          {}", r.seed);
                let _ = writeln!(s, "virtual_dim   {}", r.dims.virtual_dim);
                let _ = writeln!(s, "expected_dim  {}", r.dims.expected_dim);
                let _ = writeln!(s, "actual_dim    {}", r.dims.actual_dim);
                let _ = writeln!(s, "special       {}", r.dims.special);
                let _ = writeln!(s, "trials        {}", ranks(&r.trials));
                for w in &r.warnings {
                    let _ = writeln!(s, "warning       {w}");
                }
            }
            Output::Certify(r) => {
                for v in &r.runs {
                    let _ = writeln!(
                        s,
                        "seed {}: rank {}/{} defect {} certificates {} verified {} conic divides {} moving part {}{}",
                        v.seed,
                        v.rank,
                        v.rows,
                        v.defect,
                        v.certificates,
                        v.certificate_verified,
                        v.fixed_conic_divides,
                        v.moving_part_incident,
                        if v.resamples > 0 {
                            format!(" (resampled {}x)", v.resamples)
                        } else {
                            String::new()
                        }
                    );
                    let _ = writeln!(s, "  fixed conic  {}", v.fixed_component);
                    for (i, m) in v.moving_part.iter().enumerate() {
                        let _ = writeln!(s, "  line g{i}/C    {m}");
                    }
                }
                let _ = writeln!(s, "{}", if r.passed { "PASS" } else { "FAIL" });
            }
            Output::Case(r) => {
                let _ = writeln!(
                    s,
                    "d={} m={} h={} delta={}: {}",
                    r.input.d,
                    r.input.m,
                    r.input.h,
                    r.input.delta,
                    verdict_label(&r.verdict)
                );
                let _ = writeln!(
                    s,
                    "with h <= {}: delta >= {}, delta <= {}",
                    r.h_max, r.delta_min, r.delta_max
                );
            }
        }
        s
    }
}

pub fn verdict_label(v: &CaseVerdict) -> String {
    match v {
        CaseVerdict::Consistent => "Consistent".into(),
        CaseVerdict::Contradiction(which) => format!("Contradiction({which:?})"),
    }
}

fn route_name(r: Route) -> &'static str {
    match r {
        Route::Direct => "direct",
        Route::Segre => "segre",
        Route::Both => "both",
    }
}
