//! Pearson correlation, log-linear exponential fits, and the report tables
//! built from benchmark records.
//!
//! The working hypothesis behind the tables: runtimes grow exponentially in
//! some graph parameter, so the logarithm of the runtime is correlated and
//! regressed against the parameter value.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::bench::BenchRecord;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("series lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("runtime {0} is not positive")]
    NonPositiveRuntime(f64),
    #[error("parameter series has zero variance")]
    DegenerateParams,
}

/// Sample Pearson correlation coefficient. `Ok(None)` means "undefined":
/// one of the series has zero variance.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<Option<f64>, StatsError> {
    if xs.len() != ys.len() {
        return Err(StatsError::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(StatsError::TooFewPoints(xs.len()));
    }
    // A constant series has zero variance by definition; test the values
    // directly so accumulation roundoff cannot turn "undefined" into a
    // spurious coefficient.
    if xs.iter().all(|&x| x == xs[0]) || ys.iter().all(|&y| y == ys[0]) {
        return Ok(None);
    }
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mean_x;
        let dy = y - mean_y;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    if var_x == 0.0 || var_y == 0.0 {
        return Ok(None);
    }
    // Rounding can push perfectly collinear data a hair past 1.
    Ok(Some((cov / (var_x.sqrt() * var_y.sqrt())).clamp(-1.0, 1.0)))
}

/// An exponential law `t = beta * alpha^p` recovered by least squares on
/// `ln t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpFit {
    pub alpha: f64,
    pub beta: f64,
}

/// Fits `ln t = p ln(alpha) + ln(beta)` and exponentiates the line back.
/// Runtimes must be positive and the parameters must not all coincide.
pub fn fit_exponential(params: &[f64], runtimes: &[f64]) -> Result<ExpFit, StatsError> {
    if params.len() != runtimes.len() {
        return Err(StatsError::LengthMismatch {
            left: params.len(),
            right: runtimes.len(),
        });
    }
    if params.len() < 2 {
        return Err(StatsError::TooFewPoints(params.len()));
    }
    for &t in runtimes {
        if t <= 0.0 {
            return Err(StatsError::NonPositiveRuntime(t));
        }
    }
    if params.iter().all(|&p| p == params[0]) {
        return Err(StatsError::DegenerateParams);
    }
    let n = params.len() as f64;
    let mean_p = params.iter().sum::<f64>() / n;
    let logs: Vec<f64> = runtimes.iter().map(|&t| t.ln()).collect();
    let mean_l = logs.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&p, &l) in params.iter().zip(&logs) {
        let dp = p - mean_p;
        sxx += dp * dp;
        sxy += dp * (l - mean_l);
    }
    if sxx == 0.0 {
        return Err(StatsError::DegenerateParams);
    }
    let slope = sxy / sxx;
    let intercept = mean_l - slope * mean_p;
    Ok(ExpFit {
        alpha: slope.exp(),
        beta: intercept.exp(),
    })
}

/// Parameters a record can be plotted or correlated against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    N,
    M,
    Dx,
    Gap,
    Solution,
    Runtime,
}

impl Param {
    pub fn name(&self) -> &'static str {
        match self {
            Param::N => "n",
            Param::M => "m",
            Param::Dx => "d_x",
            Param::Gap => "gap",
            Param::Solution => "solution",
            Param::Runtime => "runtime_seconds",
        }
    }

    pub fn value(&self, r: &BenchRecord) -> f64 {
        match self {
            Param::N => r.n as f64,
            Param::M => r.m as f64,
            Param::Dx => r.d_x as f64,
            Param::Gap => r.gap as f64,
            Param::Solution => r.solution as f64,
            Param::Runtime => r.runtime_seconds,
        }
    }
}

impl std::str::FromStr for Param {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "n" => Ok(Param::N),
            "m" => Ok(Param::M),
            "d_x" | "dx" => Ok(Param::Dx),
            "gap" => Ok(Param::Gap),
            "solution" => Ok(Param::Solution),
            "runtime" | "runtime_seconds" => Ok(Param::Runtime),
            other => Err(format!("unknown parameter '{other}'")),
        }
    }
}

/// One (problem, variant, parameter) cell of the correlation report.
#[derive(Clone, Debug)]
pub struct CorrelationRow {
    /// Problem label including s and, when it differs, the kernel radius
    /// (e.g. "2club", "3plex-2").
    pub problem: String,
    pub variant: String,
    pub parameter: &'static str,
    pub pearson_r: Option<f64>,
    pub fit: Option<ExpFit>,
    pub sample_count: usize,
    /// Rows removed before analysis (timeouts and sub-floor runtimes).
    pub excluded_count: usize,
}

#[derive(Clone, Debug, Default)]
pub struct CorrelationReport {
    pub rows: Vec<CorrelationRow>,
}

impl CorrelationReport {
    /// True when every record was filtered out and no cell could be formed.
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// CSV with the paper's 2-decimal rounding for r plus a full-precision
    /// sidecar column; undefined cells print "na".
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "problem,variant,parameter,pearson_r,pearson_r_full,fit_alpha,fit_beta,sample_count,excluded_count\n",
        );
        for row in &self.rows {
            let (r2, rf) = match row.pearson_r {
                Some(r) => (format!("{r:.2}"), format!("{r}")),
                None => ("na".into(), "na".into()),
            };
            let (alpha, beta) = match row.fit {
                Some(f) => (format!("{}", f.alpha), format!("{}", f.beta)),
                None => ("na".into(), "na".into()),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                row.problem,
                row.variant,
                row.parameter,
                r2,
                rf,
                alpha,
                beta,
                row.sample_count,
                row.excluded_count
            ));
        }
        out
    }
}

/// What to correlate: gap convention offset (the defining formula uses 1)
/// and whether to divide the theorems' polynomial factors out of the
/// runtime first.
#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    pub gap_offset: i64,
    pub adjust_polynomial: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            gap_offset: 1,
            adjust_polynomial: false,
        }
    }
}

fn problem_label(r: &BenchRecord) -> String {
    if r.problem == "clique" {
        return "clique".into();
    }
    if r.x == r.s {
        format!("{}{}", r.s, r.problem)
    } else {
        format!("{}{}-{}", r.s, r.problem, r.x)
    }
}

fn adjusted_runtime(r: &BenchRecord, opts: &AnalysisOptions) -> f64 {
    if !opts.adjust_polynomial {
        return r.runtime_seconds;
    }
    // Polynomial factors of the per-problem bounds: d^3 n for distance-based
    // checks (clubs and the distance-2 plex kernel), d^2 n otherwise.
    let d = r.d_x.max(1) as f64;
    let n = r.n.max(1) as f64;
    let divisor = match (r.problem.as_str(), r.x == r.s) {
        ("club", _) => d.powi(3) * n,
        ("plex", true) => d.powi(2) * n,
        ("plex", false) => d.powi(3) * n,
        _ => d.powi(2) * n,
    };
    r.runtime_seconds / divisor
}

/// Builds the per-(problem, variant) x {n, d_x, gap} correlation table over
/// unfiltered records.
pub fn correlation_table(records: &[BenchRecord], opts: &AnalysisOptions) -> CorrelationReport {
    let mut groups: BTreeMap<(String, String), (Vec<&BenchRecord>, usize)> = BTreeMap::new();
    for r in records {
        let key = (problem_label(r), r.variant.clone());
        let entry = groups.entry(key).or_default();
        if r.filtered {
            entry.1 += 1;
        } else {
            entry.0.push(r);
        }
    }
    let mut rows = Vec::new();
    for ((problem, variant), (rs, excluded)) in groups {
        if rs.is_empty() {
            continue;
        }
        for param in [Param::N, Param::Dx, Param::Gap] {
            let xs: Vec<f64> = rs
                .iter()
                .map(|r| match param {
                    Param::Gap => (r.d_x as i64 - r.solution as i64 + opts.gap_offset) as f64,
                    p => p.value(r),
                })
                .collect();
            let runtimes: Vec<f64> = rs.iter().map(|r| adjusted_runtime(r, opts)).collect();
            let usable = runtimes.iter().all(|&t| t > 0.0) && xs.len() >= 2;
            let (r_val, fit) = if usable {
                let logs: Vec<f64> = runtimes.iter().map(|&t| t.ln()).collect();
                let r_val = pearson(&xs, &logs).unwrap_or(None);
                let fit = fit_exponential(&xs, &runtimes).ok();
                (r_val, fit)
            } else {
                (None, None)
            };
            rows.push(CorrelationRow {
                problem: problem.clone(),
                variant: variant.clone(),
                parameter: param.name(),
                pearson_r: r_val,
                fit,
                sample_count: rs.len(),
                excluded_count: excluded,
            });
        }
    }
    CorrelationReport { rows }
}

/// One row of the mean-runtime summary.
#[derive(Clone, Debug)]
pub struct SummaryRow {
    pub problem: String,
    pub variant: String,
    pub mean_runtime: f64,
    pub sample_count: usize,
    pub excluded_count: usize,
}

/// Arithmetic mean runtime per (problem, variant) over unfiltered rows.
pub fn summary_table(records: &[BenchRecord]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(String, String), (Vec<f64>, usize)> = BTreeMap::new();
    for r in records {
        let key = (problem_label(r), r.variant.clone());
        let entry = groups.entry(key).or_default();
        if r.filtered {
            entry.1 += 1;
        } else {
            entry.0.push(r.runtime_seconds);
        }
    }
    groups
        .into_iter()
        .filter(|(_, (ts, _))| !ts.is_empty())
        .map(|((problem, variant), (ts, excluded))| SummaryRow {
            problem,
            variant,
            mean_runtime: ts.iter().sum::<f64>() / ts.len() as f64,
            sample_count: ts.len(),
            excluded_count: excluded,
        })
        .collect()
}

pub fn summary_to_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from("problem,variant,mean_runtime_seconds,sample_count,excluded_count\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.problem, r.variant, r.mean_runtime, r.sample_count, r.excluded_count
        ));
    }
    out
}

/// Plot-ready two-column CSV of (x, y) parameter pairs, one row per
/// unfiltered record.
pub fn scatter_data(records: &[BenchRecord], x: Param, y: Param) -> String {
    let mut out = format!("{},{}\n", x.name(), y.name());
    for r in records.iter().filter(|r| !r.filtered) {
        out.push_str(&format!("{},{}\n", x.value(r), y.value(r)));
    }
    out
}
