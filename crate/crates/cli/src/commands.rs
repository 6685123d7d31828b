use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;
use std::path::PathBuf;

use quarter_median::elliptical::{efficiency_table, sample_points};
use quarter_median::montecarlo::{run_experiment, theoretical_limits, EstimatorSummary, Limit};
use quarter_median::solver::{median_curve, scan_count_curve, solve_scan, SolveMode};
use quarter_median::{
    solve_exact, DensityGenerator, EllipticalModel, Error as CoreError, EstimatorId, ExperimentConfig,
    ExperimentReport, Family, Point2, PointSet, QuarterMedianSolution, RandomStream,
};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::input::read_points;
use crate::output::{json_document, table, write_file, Manifest};
use crate::reference::{self, PUBLISHED_REPS};
use crate::svg;

pub const DEFAULT_GRID: usize = 360;
pub const MIN_PLOT_GRID: usize = 8;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_N: usize = 100;
pub const DEFAULT_REPS: usize = 1000;
/// Two-sided normal quantiles for 95% and 99% bands.
pub const Z95: f64 = 1.959_963_984_540_054;
pub const Z99: f64 = 2.575_829_303_548_901;

fn fmt6(v: f64) -> String {
    format!("{v:.6}")
}

// ---------------------------------------------------------------- solve

#[derive(Debug, Clone, Serialize)]
pub struct SolveConfig {
    pub input: PathBuf,
    pub method: String,
    pub grid: Option<usize>,
    pub max_solutions: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolutionOut {
    pub theta: [f64; 2],
    pub alpha: f64,
    pub alpha_degrees: f64,
    pub half_masses: [f64; 4],
    pub quad_masses: [f64; 4],
}

impl From<&QuarterMedianSolution> for SolutionOut {
    fn from(s: &QuarterMedianSolution) -> Self {
        SolutionOut {
            theta: [s.theta.x, s.theta.y],
            alpha: s.frame.alpha(),
            alpha_degrees: s.frame.degrees(),
            half_masses: s.half_masses,
            quad_masses: s.quad_masses,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub observations: usize,
    pub distinct_points: usize,
    pub method: &'static str,
    /// Set when the scan found nothing and the exact solver was used.
    pub fallback_to_exact: bool,
    pub candidates_checked: usize,
    pub solution_count: usize,
    pub canonical: SolutionOut,
    pub solutions: Vec<SolutionOut>,
}

pub fn solve(cfg: &SolveConfig, command: &[String], json: bool, out: &mut String) -> CliResult<()> {
    let manifest = Manifest::new(command, None, cfg);
    let raw = read_points(&cfg.input)?;
    let points = PointSet::new(&raw)?;
    let (result, fallback) = match cfg.method.as_str() {
        "exact" => (solve_exact(&points)?, false),
        "scan" => match solve_scan(&points, cfg.grid.unwrap_or(DEFAULT_GRID)) {
            Ok(r) => (r, false),
            Err(CoreError::NotFound) => (solve_exact(&points)?, true),
            Err(e) => return Err(e.into()),
        },
        other => return Err(CliError::Input(format!("unknown method '{other}' (expected exact or scan)"))),
    };
    let report = SolveReport {
        observations: points.observations(),
        distinct_points: points.len(),
        method: match result.mode {
            SolveMode::Exact => "exact",
            SolveMode::Scan => "scan",
        },
        fallback_to_exact: fallback,
        candidates_checked: result.candidates_checked,
        solution_count: result.solutions.len(),
        canonical: (&result.canonical).into(),
        solutions: result.solutions.iter().take(cfg.max_solutions).map(Into::into).collect(),
    };
    if json {
        out.push_str(&json_document(&manifest, &report));
        return Ok(());
    }
    out.push_str(&manifest.comment_block());
    let c = &report.canonical;
    let summary = [
        ("observations", report.observations.to_string()),
        ("distinct points", report.distinct_points.to_string()),
        ("method", report.method.to_string() + if fallback { " (scan found nothing)" } else { "" }),
        ("candidates checked", report.candidates_checked.to_string()),
        ("solutions", report.solution_count.to_string()),
        ("theta", format!("({}, {})", c.theta[0], c.theta[1])),
        ("alpha (rad)", c.alpha.to_string()),
        ("alpha (deg)", c.alpha_degrees.to_string()),
        ("half-plane masses", join(&c.half_masses)),
        ("quadrant masses", join(&c.quad_masses)),
    ];
    for (k, v) in summary {
        writeln!(out, "{k:<20}{v}").unwrap();
    }
    writeln!(
        out,
        "\nsolutions (showing {} of {}, ordered by alpha then theta)",
        report.solutions.len(),
        report.solution_count
    )
    .unwrap();
    let rows: Vec<Vec<String>> = report
        .solutions
        .iter()
        .enumerate()
        .map(|(i, s)| {
            vec![
                (i + 1).to_string(),
                s.theta[0].to_string(),
                s.theta[1].to_string(),
                s.alpha.to_string(),
                s.alpha_degrees.to_string(),
                join(&s.quad_masses),
            ]
        })
        .collect();
    out.push_str(&table(&["#", "theta_x", "theta_y", "alpha_rad", "alpha_deg", "quadrant masses"], &rows));
    Ok(())
}

fn join(v: &[f64]) -> String {
    v.iter().map(f64::to_string).collect::<Vec<_>>().join(" ")
}

// ---------------------------------------------------------------- curve / scan

#[derive(Debug, Clone, Serialize)]
pub struct PlotConfig {
    pub input: PathBuf,
    pub grid: usize,
    pub out_svg: Option<PathBuf>,
    pub out_csv: Option<PathBuf>,
}

impl PlotConfig {
    fn check(&self) -> CliResult<()> {
        if self.grid < MIN_PLOT_GRID {
            return Err(CliError::Input(format!("grid must be at least {MIN_PLOT_GRID}, got {}", self.grid)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveReport {
    pub observations: usize,
    pub grid: usize,
    pub valid_samples: usize,
    pub files: Vec<PathBuf>,
}

pub fn curve(cfg: &PlotConfig, command: &[String], json: bool, out: &mut String) -> CliResult<()> {
    cfg.check()?;
    let manifest = Manifest::new(command, None, cfg);
    let raw = read_points(&cfg.input)?;
    let points = PointSet::new(&raw)?;
    let samples = median_curve(&points, cfg.grid)?;

    let mut csv = manifest.comment_block();
    csv.push_str("alpha,x,y,valid\n");
    for s in &samples {
        writeln!(csv, "{},{},{},{}", s.alpha, s.point.x, s.point.y, s.valid).unwrap();
    }
    let files = emit_files(cfg, &csv, || svg::curve(points.points(), &samples, &manifest.to_json()))?;
    if files.is_empty() {
        out.push_str(&csv);
        return Ok(());
    }
    let report = CurveReport {
        observations: points.observations(),
        grid: cfg.grid,
        valid_samples: samples.iter().filter(|s| s.valid).count(),
        files,
    };
    if json {
        out.push_str(&json_document(&manifest, &report));
    } else {
        out.push_str(&manifest.comment_block());
        writeln!(out, "{:<16}{}", "observations", report.observations).unwrap();
        writeln!(out, "{:<16}{}", "grid", report.grid).unwrap();
        writeln!(out, "{:<16}{}", "valid samples", report.valid_samples).unwrap();
        for f in &report.files {
            writeln!(out, "{:<16}{}", "wrote", f.display()).unwrap();
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub observations: usize,
    pub grid: usize,
    pub quarter: f64,
    pub min_count: f64,
    pub max_count: f64,
    /// Grid angles where the count equals `n/4` exactly.
    pub hits: usize,
    pub files: Vec<PathBuf>,
}

pub fn scan(cfg: &PlotConfig, command: &[String], json: bool, out: &mut String) -> CliResult<()> {
    cfg.check()?;
    let manifest = Manifest::new(command, None, cfg);
    let raw = read_points(&cfg.input)?;
    let points = PointSet::new(&raw)?;
    let counts = scan_count_curve(&points, cfg.grid)?;
    let n = points.observations();

    let mut csv = manifest.comment_block();
    csv.push_str("alpha,count\n");
    for (a, c) in &counts {
        writeln!(csv, "{a},{c}").unwrap();
    }
    let files = emit_files(cfg, &csv, || svg::scan(&counts, n, &manifest.to_json()))?;
    if files.is_empty() {
        out.push_str(&csv);
        return Ok(());
    }
    let quarter = n as f64 / 4.0;
    let report = ScanReport {
        observations: n,
        grid: cfg.grid,
        quarter,
        min_count: counts.iter().map(|c| c.1).fold(f64::INFINITY, f64::min),
        max_count: counts.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max),
        hits: counts.iter().filter(|c| c.1 == quarter).count(),
        files,
    };
    if json {
        out.push_str(&json_document(&manifest, &report));
    } else {
        out.push_str(&manifest.comment_block());
        writeln!(out, "{:<16}{}", "observations", report.observations).unwrap();
        writeln!(out, "{:<16}{}", "grid", report.grid).unwrap();
        writeln!(out, "{:<16}{}", "n/4", report.quarter).unwrap();
        writeln!(out, "{:<16}{} .. {}", "count range", report.min_count, report.max_count).unwrap();
        writeln!(out, "{:<16}{}", "hits at n/4", report.hits).unwrap();
        for f in &report.files {
            writeln!(out, "{:<16}{}", "wrote", f.display()).unwrap();
        }
    }
    Ok(())
}

fn emit_files(cfg: &PlotConfig, csv: &str, svg: impl FnOnce() -> String) -> CliResult<Vec<PathBuf>> {
    let mut files = Vec::new();
    if let Some(p) = &cfg.out_csv {
        write_file(p, csv)?;
        files.push(p.clone());
    }
    if let Some(p) = &cfg.out_svg {
        write_file(p, &svg())?;
        files.push(p.clone());
    }
    Ok(files)
}

// ---------------------------------------------------------------- models

/// Elliptical model flags as given on the command line; unset fields take
/// defaults in [`ModelSpec::build`].
#[derive(Debug, Clone, Default, Serialize)]
pub struct ModelSpec {
    pub family: String,
    pub mu: [f64; 2],
    pub lambda1: f64,
    pub lambda2: f64,
    pub orientation: f64,
}

impl ModelSpec {
    /// `lambda` selects `Σ = diag(1, λ)` and overrides the eigenvalue flags.
    pub fn resolve(
        family: Option<String>,
        mu: Option<Point2>,
        lambda: Option<f64>,
        lambda1: Option<f64>,
        lambda2: Option<f64>,
        orientation: Option<f64>,
    ) -> CliResult<ModelSpec> {
        let family = family.unwrap_or_else(|| "normal".into());
        let mu = mu.unwrap_or(Point2::ORIGIN);
        let (l1, l2, o) = match lambda {
            Some(l) if l > 1.0 => (l, 1.0, FRAC_PI_2),
            Some(l) => (1.0, l, 0.0),
            None => (lambda1.unwrap_or(1.0), lambda2.unwrap_or(1.0), orientation.unwrap_or(0.0)),
        };
        Ok(ModelSpec { family, mu: [mu.x, mu.y], lambda1: l1, lambda2: l2, orientation: o })
    }

    pub fn build(&self) -> CliResult<EllipticalModel> {
        let family: Family = self.family.parse()?;
        let generator = DensityGenerator::built_in(family)?;
        Ok(EllipticalModel::new(
            Point2::new(self.mu[0], self.mu[1]),
            self.lambda1,
            self.lambda2,
            self.orientation,
            generator,
        )?)
    }
}

// ---------------------------------------------------------------- sample

#[derive(Debug, Clone, Serialize)]
pub struct SampleConfig {
    pub model: ModelSpec,
    pub n: usize,
    pub out_csv: Option<PathBuf>,
}

pub fn sample(cfg: &SampleConfig, seed: u64, command: &[String], out: &mut String) -> CliResult<()> {
    if cfg.n == 0 {
        return Err(CliError::Input("sample size must be positive".into()));
    }
    let model = cfg.model.build()?;
    let manifest = Manifest::new(command, Some(seed), cfg);
    let points = sample_points(&model, cfg.n, &RandomStream::new(seed))?;
    let mut csv = manifest.comment_block();
    csv.push_str("x,y\n");
    for p in &points {
        writeln!(csv, "{},{}", p.x, p.y).unwrap();
    }
    match &cfg.out_csv {
        Some(p) => {
            write_file(p, &csv)?;
            out.push_str(&manifest.comment_block());
            writeln!(out, "wrote {} rows to {}", points.len(), p.display()).unwrap();
        }
        None => out.push_str(&csv),
    }
    Ok(())
}

// ---------------------------------------------------------------- simulate

#[derive(Debug, Clone, Serialize)]
pub struct SimulateConfig {
    pub model: ModelSpec,
    pub n: usize,
    pub reps: usize,
    pub estimators: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EstimatorOut {
    pub estimator: &'static str,
    pub completed: usize,
    pub failed: usize,
    pub m_hat: [f64; 2],
    pub l_hat: [f64; 2],
    pub l_se: [f64; 2],
    pub band95: [[f64; 2]; 2],
    /// Limiting eigenvalues, or null with `limit_note` explaining why.
    pub limit: Option<[f64; 2]>,
    pub limit_note: Option<&'static str>,
    pub ratio_to_limit: Option<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AngleOut {
    pub mean: f64,
    pub scaled_variance: f64,
    pub limit: Option<f64>,
    pub correlation_with_theta: [f64; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct SimulateReport {
    pub n: usize,
    pub reps: usize,
    pub estimators: Vec<EstimatorOut>,
    pub angle: Option<AngleOut>,
}

fn estimator_out(s: &EstimatorSummary, limits: &[(EstimatorId, Limit)]) -> EstimatorOut {
    let limit = limits.iter().find(|(id, _)| *id == s.id).map(|(_, l)| *l);
    let value = limit.and_then(|l| l.value());
    EstimatorOut {
        estimator: s.id.name(),
        completed: s.completed,
        failed: s.failures.len(),
        m_hat: [s.m_hat.x, s.m_hat.y],
        l_hat: s.l_hat,
        l_se: s.l_se,
        band95: s.band(Z95),
        limit: value,
        limit_note: match limit {
            Some(Limit::Unavailable(why)) => Some(why),
            _ => None,
        },
        ratio_to_limit: value.map(|v| [s.l_hat[0] / v[0], s.l_hat[1] / v[1]]),
    }
}

fn simulate_report(report: &ExperimentReport, model: &EllipticalModel) -> SimulateReport {
    let limits = theoretical_limits(model);
    SimulateReport {
        n: report.n,
        reps: report.reps,
        estimators: report.estimators.iter().map(|s| estimator_out(s, &limits)).collect(),
        angle: report.angle.map(|a| AngleOut {
            mean: a.mean,
            scaled_variance: a.scaled_variance,
            limit: a.theoretical,
            correlation_with_theta: a.correlation,
        }),
    }
}

fn first_failure(report: &ExperimentReport) -> Option<CliError> {
    report.estimators.iter().find_map(|s| {
        s.failures.first().map(|f| {
            CliError::Numerical(format!(
                "{} failed in replication {} ({} failures in total): {}",
                s.id,
                f.rep,
                s.failures.len(),
                f.message
            ))
        })
    })
}

pub fn parse_estimators(list: &str) -> CliResult<Vec<EstimatorId>> {
    Ok(EstimatorId::parse_list(list)?)
}

pub fn simulate(cfg: &SimulateConfig, seed: u64, command: &[String], json: bool, out: &mut String) -> CliResult<()> {
    let model = cfg.model.build()?;
    let estimators = parse_estimators(&cfg.estimators.join(","))?;
    let manifest = Manifest::new(command, Some(seed), cfg);
    let config = ExperimentConfig { model: model.clone(), n: cfg.n, reps: cfg.reps, estimators, master_seed: seed };
    let report = run_experiment(&config)?;
    let sim = simulate_report(&report, &model);
    if json {
        out.push_str(&json_document(&manifest, &sim));
    } else {
        out.push_str(&manifest.comment_block());
        render_simulate(&sim, out);
    }
    match first_failure(&report) {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn render_simulate(sim: &SimulateReport, out: &mut String) {
    writeln!(out, "n = {}, replications = {}\n", sim.n, sim.reps).unwrap();
    let rows: Vec<Vec<String>> = sim
        .estimators
        .iter()
        .map(|e| {
            vec![
                e.estimator.to_string(),
                e.completed.to_string(),
                fmt6(e.m_hat[0]),
                fmt6(e.m_hat[1]),
                fmt6(e.l_hat[0]),
                fmt6(e.l_hat[1]),
                format!("[{}, {}]", fmt6(e.band95[0][0]), fmt6(e.band95[0][1])),
                format!("[{}, {}]", fmt6(e.band95[1][0]), fmt6(e.band95[1][1])),
            ]
        })
        .collect();
    out.push_str(&table(&["estimator", "completed", "m1", "m2", "l1", "l2", "l1 95% band", "l2 95% band"], &rows));
    out.push('\n');
    let rows: Vec<Vec<String>> = sim
        .estimators
        .iter()
        .map(|e| match (e.limit, e.ratio_to_limit) {
            (Some(l), Some(r)) => vec![
                e.estimator.to_string(),
                fmt6(l[0]),
                fmt6(l[1]),
                format!("{:.4}", r[0]),
                format!("{:.4}", r[1]),
                String::new(),
            ],
            _ => vec![
                e.estimator.to_string(),
                "-".into(),
                "-".into(),
                "-".into(),
                "-".into(),
                e.limit_note.unwrap_or("").to_string(),
            ],
        })
        .collect();
    out.push_str(&table(&["estimator", "limit l1", "limit l2", "l1/limit", "l2/limit", "note"], &rows));
    if let Some(a) = &sim.angle {
        writeln!(out).unwrap();
        writeln!(out, "{:<28}{}", "angle: mean(alpha_n - alpha)", fmt6(a.mean)).unwrap();
        writeln!(out, "{:<28}{}", "angle: n Var(alpha_n)", fmt6(a.scaled_variance)).unwrap();
        let limit = a.limit.map_or_else(|| "- (eigenvalues coincide)".to_string(), fmt6);
        writeln!(out, "{:<28}{}", "angle: limit", limit).unwrap();
        writeln!(
            out,
            "{:<28}{} {}",
            "angle: corr with theta",
            fmt6(a.correlation_with_theta[0]),
            fmt6(a.correlation_with_theta[1])
        )
        .unwrap();
    }
}

// ---------------------------------------------------------------- full scale

#[derive(Debug, Clone, Serialize)]
pub struct FullScaleConfig {
    pub n: usize,
    pub reps: usize,
    pub estimators: Vec<String>,
    pub lambdas: Vec<f64>,
    pub families: Vec<&'static str>,
    /// Band half-width is `z · se · √(1 + reps / published reps)`.
    pub z: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FullScaleCell {
    pub lambda: f64,
    pub family: &'static str,
    pub estimator: &'static str,
    pub master_seed: u64,
    pub completed: usize,
    pub l_hat: [f64; 2],
    pub band: [[f64; 2]; 2],
    pub published: Option<[f64; 2]>,
    pub inside: Option<[bool; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FullScaleReport {
    pub cells: Vec<FullScaleCell>,
    pub compared: usize,
    pub inside: usize,
    pub failures: usize,
}

pub fn full_scale(
    cfg: &FullScaleConfig,
    seed: u64,
    command: &[String],
    json: bool,
    out: &mut String,
    progress: &mut dyn FnMut(&str),
) -> CliResult<()> {
    let estimators = parse_estimators(&cfg.estimators.join(","))?;
    let manifest = Manifest::new(command, Some(seed), cfg);
    let widen = (1.0 + cfg.reps as f64 / PUBLISHED_REPS as f64).sqrt();
    let mut cells = Vec::new();
    let mut failure: Option<CliError> = None;
    let mut failures = 0;
    let mut index = 0u64;
    for &lambda in &cfg.lambdas {
        for name in &cfg.families {
            let family: Family = name.parse()?;
            let model = EllipticalModel::axis_aligned(DensityGenerator::built_in(family)?, lambda)?;
            let cell_seed = RandomStream::new(seed).split(index).stream_index;
            index += 1;
            progress(&format!("lambda={lambda} family={name} seed={cell_seed}"));
            let config = ExperimentConfig {
                model,
                n: cfg.n,
                reps: cfg.reps,
                estimators: estimators.clone(),
                master_seed: cell_seed,
            };
            let report = run_experiment(&config)?;
            if failure.is_none() {
                failure = first_failure(&report);
            }
            failures += report.failure_count();
            for s in &report.estimators {
                let band = [0, 1].map(|i| {
                    let h = cfg.z * s.l_se[i] * widen;
                    [s.l_hat[i] - h, s.l_hat[i] + h]
                });
                let published = reference::published(lambda, family, s.id).map(|r| r.l_hat);
                let inside = published.map(|p| [0, 1].map(|i| band[i][0] <= p[i] && p[i] <= band[i][1]));
                cells.push(FullScaleCell {
                    lambda,
                    family: family.name(),
                    estimator: s.id.name(),
                    master_seed: cell_seed,
                    completed: s.completed,
                    l_hat: s.l_hat,
                    band,
                    published,
                    inside,
                });
            }
        }
    }
    let compared = cells.iter().filter(|c| c.inside.is_some()).count() * 2;
    let inside = cells.iter().filter_map(|c| c.inside).flatten().filter(|&b| b).count();
    let report = FullScaleReport { cells, compared, inside, failures };
    if json {
        out.push_str(&json_document(&manifest, &report));
    } else {
        out.push_str(&manifest.comment_block());
        let rows: Vec<Vec<String>> = report
            .cells
            .iter()
            .map(|c| {
                let p = |i: usize| c.published.map_or("-".to_string(), |p| fmt6(p[i]));
                let ok = |i: usize| match c.inside {
                    Some(v) if v[i] => "yes",
                    Some(_) => "NO",
                    None => "-",
                };
                vec![
                    c.lambda.to_string(),
                    c.family.to_string(),
                    c.estimator.to_string(),
                    fmt6(c.l_hat[0]),
                    format!("[{}, {}]", fmt6(c.band[0][0]), fmt6(c.band[0][1])),
                    p(0),
                    ok(0).into(),
                    fmt6(c.l_hat[1]),
                    format!("[{}, {}]", fmt6(c.band[1][0]), fmt6(c.band[1][1])),
                    p(1),
                    ok(1).into(),
                ]
            })
            .collect();
        out.push_str(&table(
            &["lambda", "family", "estimator", "l1", "l1 99% band", "published", "in", "l2", "l2 99% band", "published", "in"],
            &rows,
        ));
        writeln!(out, "\npublished values inside bands: {} of {}", report.inside, report.compared).unwrap();
    }
    match failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

// ---------------------------------------------------------------- efficiencies

#[derive(Debug, Clone, Serialize)]
pub struct EfficiencyOut {
    pub family: &'static str,
    pub eff_mean_ml: Option<f64>,
    pub eff_mean_ml_exact: &'static str,
    pub eff_qmed_ml: f64,
    pub eff_qmed_ml_exact: &'static str,
}

fn closed_forms(family: Family) -> (&'static str, &'static str) {
    match family {
        Family::Normal => ("1", "2/π"),
        Family::DoubleExponential => ("2/3", "8/π²"),
        Family::Cauchy => ("-", "20/(3π²)"),
        Family::Pearson2 => ("2/3", "256/(75π²)"),
        Family::Logistic | Family::Custom => ("-", "-"),
    }
}

pub fn efficiencies_report() -> Vec<EfficiencyOut> {
    efficiency_table()
        .iter()
        .map(|r| {
            let (m, q) = closed_forms(r.family);
            EfficiencyOut {
                family: r.family.name(),
                eff_mean_ml: r.eff_mean_ml,
                eff_mean_ml_exact: m,
                eff_qmed_ml: r.eff_qmed_ml,
                eff_qmed_ml_exact: q,
            }
        })
        .collect()
}

pub fn efficiencies(command: &[String], json: bool, out: &mut String) -> CliResult<()> {
    let manifest = Manifest::new(command, None, ());
    let rows = efficiencies_report();
    if json {
        out.push_str(&json_document(&manifest, &rows));
        return Ok(());
    }
    out.push_str(&manifest.comment_block());
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.family.to_string(),
                r.eff_mean_ml_exact.to_string(),
                r.eff_mean_ml.map_or("-".to_string(), |v| format!("{v:.8}")),
                r.eff_qmed_ml_exact.to_string(),
                format!("{:.8}", r.eff_qmed_ml),
            ]
        })
        .collect();
    out.push_str(&table(&["family", "eff(Mean,ML)", "decimal", "eff(QMed,ML)", "decimal"], &cells));
    Ok(())
}
