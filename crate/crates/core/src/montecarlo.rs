//! Seeded replication engine for the √n-scaled estimator experiments.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::elliptical::{sample, sigma2_alpha, sigma2_qmed, EllipticalModel, Family};
use crate::error::{Error, Result};
use crate::estimators::{smed_spherical_variance, EstimatorId};
use crate::exec::Execution;
use crate::geometry::Frame;
use crate::point::{Point2, Sym2};
use crate::solver::canonical_quarter_median;

/// A reproducible random stream: ChaCha8 keyed by `master_seed`
/// (via `seed_from_u64`) on the 64-bit stream `stream_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RandomStream {
    pub master_seed: u64,
    pub stream_index: u64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RandomStream {
    pub fn new(master_seed: u64) -> Self {
        RandomStream { master_seed, stream_index: 0 }
    }

    /// Substream `r`: same key, stream index
    /// `splitmix64(stream_index ⊕ splitmix64(r))`.
    pub fn split(&self, r: u64) -> Self {
        RandomStream {
            master_seed: self.master_seed,
            stream_index: splitmix64(self.stream_index ^ splitmix64(r)),
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_index);
        rng
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub model: EllipticalModel,
    pub n: usize,
    pub reps: usize,
    pub estimators: Vec<EstimatorId>,
    pub master_seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 4 {
            return Err(Error::InvalidInput(format!("sample size must be at least 4, got {}", self.n)));
        }
        if self.reps < 2 {
            return Err(Error::InvalidInput(format!("need at least 2 replications, got {}", self.reps)));
        }
        if self.estimators.is_empty() {
            return Err(Error::InvalidInput("no estimators requested".into()));
        }
        for (i, id) in self.estimators.iter().enumerate() {
            if self.estimators[..i].contains(id) {
                return Err(Error::InvalidInput(format!("estimator {id} requested twice")));
            }
        }
        Ok(())
    }
}

/// A replication in which an estimator failed; it is excluded from that
/// estimator's statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationFailure {
    pub rep: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorSummary {
    pub id: EstimatorId,
    /// Replications that contributed.
    pub completed: usize,
    /// Mean of `√n (est − μ)`.
    pub m_hat: Point2,
    /// Empirical covariance of `√n (est − μ)` (divisor `r − 1`).
    pub covariance: Sym2,
    /// Eigenvalues of `covariance`, descending.
    pub l_hat: [f64; 2],
    /// Standard errors of `l_hat` by the delta method.
    pub l_se: [f64; 2],
    pub failures: Vec<ReplicationFailure>,
}

impl EstimatorSummary {
    /// Symmetric normal band `l_hat ± z · se` for each eigenvalue.
    pub fn band(&self, z: f64) -> [[f64; 2]; 2] {
        [0, 1].map(|i| [self.l_hat[i] - z * self.l_se[i], self.l_hat[i] + z * self.l_se[i]])
    }
}

/// Statistics of the quarter median's frame angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleStats {
    /// Mean of `α_n − α`, wrapped into `(−π/4, π/4]`.
    pub mean: f64,
    /// `n · Var(α_n − α)`.
    pub scaled_variance: f64,
    /// Limiting variance; `None` when the eigenvalues coincide.
    pub theoretical: Option<f64>,
    /// Correlation of `α_n` with the two components of `θ_n`.
    pub correlation: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub n: usize,
    pub reps: usize,
    pub master_seed: u64,
    pub estimators: Vec<EstimatorSummary>,
    pub angle: Option<AngleStats>,
    pub wall_time: Duration,
}

impl ExperimentReport {
    pub fn summary(&self, id: EstimatorId) -> Option<&EstimatorSummary> {
        self.estimators.iter().find(|s| s.id == id)
    }

    pub fn failure_count(&self) -> usize {
        self.estimators.iter().map(|s| s.failures.len()).sum()
    }
}

struct Replication {
    estimates: Vec<std::result::Result<Point2, String>>,
    alpha: Option<f64>,
}

fn replicate(config: &ExperimentConfig, root: &RandomStream, r: usize) -> Replication {
    let stream = root.split(r as u64);
    let points = match sample(&config.model, config.n, &stream) {
        Ok(p) => p,
        Err(e) => {
            return Replication {
                estimates: config.estimators.iter().map(|_| Err(e.to_string())).collect(),
                alpha: None,
            }
        }
    };
    let mut alpha = None;
    let estimates = config
        .estimators
        .iter()
        .map(|&id| {
            if id == EstimatorId::Qmed {
                canonical_quarter_median(&points).map(|s| {
                    alpha = Some(s.frame.alpha());
                    s.theta
                })
            } else {
                id.estimate(&points)
            }
            .map_err(|e| e.to_string())
        })
        .collect();
    Replication { estimates, alpha }
}

/// Runs the experiment with the default execution mode.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    run_experiment_with(config, Execution::default())
}

/// Runs `reps` independent replications (replication `r` draws from
/// `RandomStream::new(master_seed).split(r)`) and aggregates them in
/// replication order, so the report does not depend on the schedule.
pub fn run_experiment_with(config: &ExperimentConfig, exec: Execution) -> Result<ExperimentReport> {
    config.validate()?;
    let start = Instant::now();
    let root = RandomStream::new(config.master_seed);
    let reps = exec.map_range(config.reps, |r| replicate(config, &root, r));
    let scale = (config.n as f64).sqrt();
    let mu = config.model.mu;

    let mut estimators = Vec::with_capacity(config.estimators.len());
    for (slot, &id) in config.estimators.iter().enumerate() {
        let mut devs = Vec::with_capacity(reps.len());
        let mut failures = Vec::new();
        for (r, rep) in reps.iter().enumerate() {
            match &rep.estimates[slot] {
                Ok(p) => devs.push((*p - mu) * scale),
                Err(message) => failures.push(ReplicationFailure { rep: r, message: message.clone() }),
            }
        }
        estimators.push(summarize(id, &devs, failures));
    }

    let angle = match config.estimators.iter().position(|&id| id == EstimatorId::Qmed) {
        Some(slot) => {
            let truth = config.model.frame();
            let mut diffs = Vec::new();
            let mut thetas = Vec::new();
            for rep in &reps {
                if let (Some(a), Ok(t)) = (rep.alpha, &rep.estimates[slot]) {
                    diffs.push(Frame::new(a).angle_diff(&truth));
                    thetas.push(*t);
                }
            }
            angle_stats(config, &diffs, &thetas)
        }
        None => None,
    };

    Ok(ExperimentReport {
        n: config.n,
        reps: config.reps,
        master_seed: config.master_seed,
        estimators,
        angle,
        wall_time: start.elapsed(),
    })
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (s, k) = xs.fold((0.0, 0usize), |(s, k), x| (s + x, k + 1));
    s / k as f64
}

fn summarize(id: EstimatorId, devs: &[Point2], failures: Vec<ReplicationFailure>) -> EstimatorSummary {
    let r = devs.len();
    if r < 2 {
        return EstimatorSummary {
            id,
            completed: r,
            m_hat: Point2::new(f64::NAN, f64::NAN),
            covariance: Sym2 { xx: f64::NAN, xy: f64::NAN, yy: f64::NAN },
            l_hat: [f64::NAN; 2],
            l_se: [f64::NAN; 2],
            failures,
        };
    }
    let m = Point2::new(mean(devs.iter().map(|d| d.x)), mean(devs.iter().map(|d| d.y)));
    let mut cov = Sym2 { xx: 0.0, xy: 0.0, yy: 0.0 };
    for d in devs {
        let c = *d - m;
        cov.xx += c.x * c.x;
        cov.xy += c.x * c.y;
        cov.yy += c.y * c.y;
    }
    let cov = cov.scale(1.0 / (r - 1) as f64);
    let l = cov.eigenvalues();
    let v1 = cov.leading_eigenvector();
    let vecs = [v1, v1.perp()];
    // l_i = mean of (v_iᵀ(d − m))²; its standard error is the sample
    // standard deviation of those squares over √r.
    let l_se = [0, 1].map(|i| {
        let sq: Vec<f64> = devs.iter().map(|d| vecs[i].dot(*d - m).powi(2)).collect();
        let mu = mean(sq.iter().copied());
        let var = sq.iter().map(|s| (s - mu).powi(2)).sum::<f64>() / (r - 1) as f64;
        (var / r as f64).sqrt()
    });
    EstimatorSummary { id, completed: r, m_hat: m, covariance: cov, l_hat: l, l_se, failures }
}

fn correlation(a: &[f64], b: &[f64]) -> f64 {
    let ma = mean(a.iter().copied());
    let mb = mean(b.iter().copied());
    let mut sab = 0.0;
    let mut saa = 0.0;
    let mut sbb = 0.0;
    for (x, y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma) * (x - ma);
        sbb += (y - mb) * (y - mb);
    }
    sab / (saa * sbb).sqrt()
}

fn angle_stats(config: &ExperimentConfig, diffs: &[f64], thetas: &[Point2]) -> Option<AngleStats> {
    if diffs.len() < 2 {
        return None;
    }
    let m = mean(diffs.iter().copied());
    let var = diffs.iter().map(|d| (d - m).powi(2)).sum::<f64>() / (diffs.len() - 1) as f64;
    let model = &config.model;
    let xs: Vec<f64> = thetas.iter().map(|t| t.x).collect();
    let ys: Vec<f64> = thetas.iter().map(|t| t.y).collect();
    Some(AngleStats {
        mean: m,
        scaled_variance: config.n as f64 * var,
        theoretical: sigma2_alpha(&model.generator, model.lambda1, model.lambda2).ok(),
        correlation: [correlation(diffs, &xs), correlation(diffs, &ys)],
    })
}

/// A theoretical limiting covariance, given by its eigenvalues, or the
/// reason none is available.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Limit {
    Available([f64; 2]),
    Unavailable(&'static str),
}

impl Limit {
    pub fn value(&self) -> Option<[f64; 2]> {
        match self {
            Limit::Available(v) => Some(*v),
            Limit::Unavailable(_) => None,
        }
    }
}

/// Limiting covariance eigenvalues of `√n (est − μ)` where known, for every
/// estimator in [`EstimatorId::ALL`] order.
///
/// The spatial median limit is only given for spherical models; for
/// `Σ = diag(1, λ)` under normality the published simulated values (e.g.
/// 1.274100 and 1.032058 at λ = 0.9) come from a series expansion that is
/// not implemented here. The Tukey median limit is unknown.
pub fn theoretical_limits(model: &EllipticalModel) -> Vec<(EstimatorId, Limit)> {
    let (l1, l2) = (model.lambda1, model.lambda2);
    let g = &model.generator;
    EstimatorId::ALL
        .iter()
        .map(|&id| {
            let limit = match id {
                EstimatorId::Qmed => {
                    let s = sigma2_qmed(g);
                    Limit::Available([s * l1, s * l2])
                }
                EstimatorId::Omed => {
                    if g.family() == Family::Normal {
                        Limit::Available([4.0 / PI * l1, 4.0 / PI * l2])
                    } else {
                        Limit::Unavailable("known for the normal family only")
                    }
                }
                EstimatorId::Smed => {
                    if l1 == l2 {
                        match smed_spherical_variance(g) {
                            Ok(s) => Limit::Available([s * l1, s * l2]),
                            Err(_) => Limit::Unavailable("E(1/R) could not be evaluated"),
                        }
                    } else {
                        Limit::Unavailable("closed form known for spherical models only")
                    }
                }
                EstimatorId::Tmed => Limit::Unavailable("limiting distribution unknown"),
                EstimatorId::Mean => match g.covariance_factor() {
                    Some(m) => Limit::Available([m * l1, m * l2]),
                    None => Limit::Unavailable("infinite variance"),
                },
            };
            (id, limit)
        })
        .collect()
}

/// Outcome of [`angle_clt_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleCheck {
    pub empirical_var: f64,
    pub theoretical: f64,
    pub correlation: [f64; 2],
    pub failures: usize,
}

/// Compares `n · Var(α_n − α)` with its limit for a strictly elliptical
/// model.
pub fn angle_clt_check(model: &EllipticalModel, n: usize, reps: usize, master_seed: u64) -> Result<AngleCheck> {
    let theoretical = sigma2_alpha(&model.generator, model.lambda1, model.lambda2)?;
    let config = ExperimentConfig {
        model: model.clone(),
        n,
        reps,
        estimators: vec![EstimatorId::Qmed],
        master_seed,
    };
    let report = run_experiment(&config)?;
    let stats = report
        .angle
        .ok_or_else(|| Error::numerical("fewer than two replications produced an angle"))?;
    Ok(AngleCheck {
        empirical_var: stats.scaled_variance,
        theoretical,
        correlation: stats.correlation,
        failures: report.failure_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptical::DensityGenerator;
    use rand::RngCore;

    fn config(reps: usize, estimators: Vec<EstimatorId>) -> ExperimentConfig {
        ExperimentConfig {
            model: EllipticalModel::axis_aligned(DensityGenerator::normal(), 0.5).unwrap(),
            n: 30,
            reps,
            estimators,
            master_seed: 42,
        }
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let s = RandomStream::new(9);
        assert_eq!(s.split(3).rng().next_u64(), s.split(3).rng().next_u64());
        assert_ne!(s.split(3).rng().next_u64(), s.split(4).rng().next_u64());
        assert_ne!(s.split(3).split(0), s.split(0).split(3));
    }

    #[test]
    fn config_validation() {
        let mut c = config(10, vec![EstimatorId::Qmed]);
        assert!(c.validate().is_ok());
        c.n = 3;
        assert!(c.validate().is_err());
        let c = config(1, vec![EstimatorId::Qmed]);
        assert!(c.validate().is_err());
        let c = config(5, vec![EstimatorId::Mean, EstimatorId::Mean]);
        assert!(c.validate().is_err());
    }

    #[test]
    fn reports_are_deterministic_across_execution_modes() {
        let c = config(12, EstimatorId::ALL.to_vec());
        let mut a = run_experiment_with(&c, Execution::Sequential).unwrap();
        let mut b = run_experiment_with(&c, Execution::Parallel).unwrap();
        a.wall_time = Duration::ZERO;
        b.wall_time = Duration::ZERO;
        assert_eq!(a, b);
        assert_eq!(a.failure_count(), 0);
        for s in &a.estimators {
            assert!(s.l_hat[0] >= s.l_hat[1] && s.l_hat[1] >= 0.0);
        }
        assert!(a.angle.is_some());
    }

    #[test]
    fn smoke_two_replications() {
        let r = run_experiment(&config(2, vec![EstimatorId::Qmed, EstimatorId::Smed])).unwrap();
        assert_eq!(r.estimators.len(), 2);
        assert_eq!(r.summary(EstimatorId::Smed).unwrap().completed, 2);
    }

    #[test]
    fn theoretical_limit_examples() {
        let m = EllipticalModel::axis_aligned(DensityGenerator::normal(), 0.1).unwrap();
        let lim = theoretical_limits(&m);
        let get = |id| lim.iter().find(|(i, _)| *i == id).unwrap().1;
        let q = get(EstimatorId::Qmed).value().unwrap();
        assert!((q[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-6 && (q[1] - 0.157080).abs() < 1e-6);
        assert!(matches!(get(EstimatorId::Tmed), Limit::Unavailable(_)));
        assert!(matches!(get(EstimatorId::Smed), Limit::Unavailable(_)));

        let m = EllipticalModel::axis_aligned(DensityGenerator::normal(), 0.01).unwrap();
        let o = theoretical_limits(&m)[2].1.value().unwrap();
        assert!((o[0] - 1.273240).abs() < 1e-6 && (o[1] - 0.012732).abs() < 1e-6);

        let m = EllipticalModel::axis_aligned(DensityGenerator::normal(), 1.0).unwrap();
        let s = theoretical_limits(&m)[1].1.value().unwrap();
        assert!((s[0] - 4.0 / PI).abs() < 1e-8);

        let m = EllipticalModel::axis_aligned(DensityGenerator::cauchy(), 0.5).unwrap();
        assert!(matches!(theoretical_limits(&m)[4].1, Limit::Unavailable(_)));
    }

    #[test]
    fn angle_check_is_reproducible() {
        let m = EllipticalModel::axis_aligned(DensityGenerator::normal(), 0.25).unwrap();
        let a = angle_clt_check(&m, 40, 20, 9).unwrap();
        let b = angle_clt_check(&m, 40, 20, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.theoretical, sigma2_alpha(&m.generator, 1.0, 0.25).unwrap());
        assert_eq!(a.failures, 0);
        assert!(a.empirical_var > 0.0);

        let spherical = EllipticalModel::axis_aligned(DensityGenerator::normal(), 1.0).unwrap();
        assert!(matches!(angle_clt_check(&spherical, 40, 20, 9), Err(Error::DegenerateModel(_))));
    }
}
