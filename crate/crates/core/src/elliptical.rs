//! Bivariate elliptical distributions `Ell₂(μ, Σ; h)`.
//!
//! A density generator `h` on `[0, ∞)` defines the density
//! `f(x) = h((x−μ)ᵀ Σ⁻¹ (x−μ)) / (c₂(h) √det Σ)`. The constants
//! `c₁(h) = 2 ∫₀^∞ h(r²) dr` and `c₂(h) = 2π ∫₀^∞ r h(r²) dr` drive every
//! closed-form asymptotic quantity here: the marginal density at the median
//! is `c₁ / (c₂ √(aᵀΣa))`, so the quarter median has limiting covariance
//! `c₂² / (2c₁)² · Σ`.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::RngCore;

use crate::error::{Error, Result};
use crate::geometry::{Frame, PointSet};
use crate::montecarlo::RandomStream;
use crate::numeric::{integrate_half_line, invert_cdf_half_line, QuadOptions};
use crate::point::{Point2, Sym2};

/// `ζ(−1/2)`, used for the logistic generator's `c₁`.
const ZETA_MINUS_HALF: f64 = -0.207_886_224_977_354_57;

/// Fisher information constant of the symmetric bivariate logistic family,
/// `4 ∫₀^∞ t ((1−e^{−t})/(1+e^{−t}))² e^{−t}/(1+e^{−t})² dt`.
pub const LOGISTIC_FISHER: f64 = 1.590_862_907_413_260_4;

/// Absolute tolerance used for generator quadratures.
pub const CK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Normal,
    DoubleExponential,
    Cauchy,
    Pearson2,
    Logistic,
    Custom,
}

impl Family {
    pub const BUILT_IN: [Family; 5] = [
        Family::Normal,
        Family::DoubleExponential,
        Family::Cauchy,
        Family::Pearson2,
        Family::Logistic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Normal => "normal",
            Family::DoubleExponential => "double_exponential",
            Family::Cauchy => "cauchy",
            Family::Pearson2 => "pearson2",
            Family::Logistic => "logistic",
            Family::Custom => "custom",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "normal" | "gaussian" => Ok(Family::Normal),
            "double_exponential" | "doubleexponential" | "mde" | "laplace" => Ok(Family::DoubleExponential),
            "cauchy" => Ok(Family::Cauchy),
            "pearson2" | "pearson_ii" | "smpii" => Ok(Family::Pearson2),
            "logistic" | "sml" => Ok(Family::Logistic),
            other => Err(Error::InvalidInput(format!("unknown distribution family '{other}'"))),
        }
    }
}

type GeneratorFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A density generator `h` together with its constants `c₁(h)`, `c₂(h)`.
#[derive(Clone)]
pub struct DensityGenerator {
    family: Family,
    h: GeneratorFn,
    c1: f64,
    c2: f64,
}

impl fmt::Debug for DensityGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DensityGenerator")
            .field("family", &self.family)
            .field("c1", &self.c1)
            .field("c2", &self.c2)
            .finish()
    }
}

fn logistic_h(t: f64) -> f64 {
    let e = (-t).exp();
    e / ((1.0 + e) * (1.0 + e))
}

impl DensityGenerator {
    /// `h(t) = e^{−t/2}`.
    pub fn normal() -> Self {
        DensityGenerator {
            family: Family::Normal,
            h: Arc::new(|t: f64| (-0.5 * t).exp()),
            c1: (2.0 * PI).sqrt(),
            c2: 2.0 * PI,
        }
    }

    /// `h(t) = e^{−√t/2}`.
    pub fn double_exponential() -> Self {
        DensityGenerator {
            family: Family::DoubleExponential,
            h: Arc::new(|t: f64| (-0.5 * t.sqrt()).exp()),
            c1: 4.0,
            c2: 8.0 * PI,
        }
    }

    /// `h(t) = (1 + t)^{−3/2}`.
    pub fn cauchy() -> Self {
        DensityGenerator {
            family: Family::Cauchy,
            h: Arc::new(|t: f64| (1.0 + t).powf(-1.5)),
            c1: 2.0,
            c2: 2.0 * PI,
        }
    }

    /// `h(t) = (1 − t)²` on `[0, 1]`, zero beyond.
    pub fn pearson2() -> Self {
        DensityGenerator {
            family: Family::Pearson2,
            h: Arc::new(|t: f64| if t < 1.0 { (1.0 - t) * (1.0 - t) } else { 0.0 }),
            c1: 16.0 / 15.0,
            c2: PI / 3.0,
        }
    }

    /// `h(t) = e^{−t} / (1 + e^{−t})²`.
    pub fn logistic() -> Self {
        // ∫ t^{-1/2} Σ (−1)^{k+1} k e^{−kt} dt = √π Σ (−1)^{k+1} √k = √π η(−1/2).
        let eta = (1.0 - 2.0 * SQRT_2) * ZETA_MINUS_HALF;
        DensityGenerator {
            family: Family::Logistic,
            h: Arc::new(logistic_h),
            c1: PI.sqrt() * eta,
            c2: PI / 2.0,
        }
    }

    /// A built-in generator by family. `Custom` is rejected.
    pub fn built_in(family: Family) -> Result<Self> {
        match family {
            Family::Normal => Ok(Self::normal()),
            Family::DoubleExponential => Ok(Self::double_exponential()),
            Family::Cauchy => Ok(Self::cauchy()),
            Family::Pearson2 => Ok(Self::pearson2()),
            Family::Logistic => Ok(Self::logistic()),
            Family::Custom => Err(Error::InvalidInput("custom generators need a function".into())),
        }
    }

    /// A user-supplied generator; constants are found by quadrature.
    pub fn custom<F>(h: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let h: GeneratorFn = Arc::new(h);
        let c1 = ck_quadrature(&*h, 1)?;
        let c2 = ck_quadrature(&*h, 2)?;
        if !(c1 > 0.0 && c2 > 0.0) {
            return Err(Error::InvalidInput(format!(
                "generator constants must be positive (c1 = {c1}, c2 = {c2})"
            )));
        }
        Ok(DensityGenerator {
            family: Family::Custom,
            h,
            c1,
            c2,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn h(&self, t: f64) -> f64 {
        (self.h)(t)
    }

    /// Density of `R = ‖X‖` for `X ~ Sym₂(h)`: `(2π/c₂) r h(r²)`.
    pub fn radial_density(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        2.0 * PI / self.c2 * r * self.h(r * r)
    }

    /// Distribution function of `R = ‖X‖`.
    pub fn radial_cdf(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        let r2 = r * r;
        match self.family {
            Family::Normal => -(-0.5 * r2).exp_m1(),
            Family::DoubleExponential => 1.0 - (-0.5 * r).exp() * (1.0 + 0.5 * r),
            Family::Cauchy => 1.0 - 1.0 / (1.0 + r2).sqrt(),
            Family::Pearson2 => {
                if r >= 1.0 {
                    1.0
                } else {
                    let s = 1.0 - r2;
                    1.0 - s * s * s
                }
            }
            Family::Logistic => (0.5 * r2).tanh(),
            Family::Custom => {
                // (π/c₂) ∫₀^{r²} h(t) dt = (2π/c₂) ∫₀^r s h(s²) ds
                let opts = QuadOptions { abs_tol: 1e-13, ..QuadOptions::default() };
                crate::numeric::integrate(|s| s * self.h(s * s), 0.0, r, opts)
                    .map(|q| (2.0 * PI / self.c2 * q.value).min(1.0))
                    .unwrap_or(f64::NAN)
            }
        }
    }

    /// `E‖X‖²/2` for `X ~ Sym₂(h)`, i.e. the covariance factor of the
    /// family. `None` when the second moment is infinite.
    pub fn covariance_factor(&self) -> Option<f64> {
        match self.family {
            Family::Normal => Some(1.0),
            Family::DoubleExponential => Some(12.0),
            Family::Cauchy => None,
            Family::Pearson2 => Some(0.125),
            Family::Logistic => Some(std::f64::consts::LN_2),
            Family::Custom => {
                let q = integrate_half_line(|r| r * r * self.radial_density(r), QuadOptions::default()).ok()?;
                Some(0.5 * q.value)
            }
        }
    }

    /// Asymptotic variance factor of the maximum likelihood location
    /// estimator (inverse Fisher information per unit Σ). Known for the
    /// built-in families only.
    pub fn ml_variance_factor(&self) -> Option<f64> {
        match self.family {
            Family::Normal => Some(1.0),
            Family::DoubleExponential => Some(8.0),
            Family::Cauchy => Some(5.0 / 3.0),
            Family::Pearson2 => Some(1.0 / 12.0),
            Family::Logistic => Some(1.0 / LOGISTIC_FISHER),
            Family::Custom => None,
        }
    }
}

/// `c_k(h)` for `k ∈ {1, 2}` by adaptive quadrature after the substitution
/// `t = r²`, which removes the `t^{−1/2}` endpoint singularity of `c₁`.
pub fn ck_quadrature<F: Fn(f64) -> f64 + ?Sized>(h: &F, k: u32) -> Result<f64> {
    let opts = QuadOptions { abs_tol: CK_TOL, ..QuadOptions::default() };
    match k {
        1 => Ok(2.0 * integrate_half_line(|r| h(r * r), opts)?.value),
        2 => Ok(2.0 * PI * integrate_half_line(|r| r * h(r * r), opts)?.value),
        _ => Err(Error::InvalidInput(format!("c_k is only defined here for k = 1, 2 (got {k})"))),
    }
}

/// `σ²_QMed = c₂² / (2c₁)²`.
pub fn sigma2_qmed(generator: &DensityGenerator) -> f64 {
    let r = generator.c2 / (2.0 * generator.c1);
    r * r
}

/// Limiting variance of `√n(α_n − α)` for the frame angle of the quarter
/// median, `c₂² λ₁ λ₂ / (4 c₁² (√λ₁ − √λ₂)²)`.
pub fn sigma2_alpha(generator: &DensityGenerator, lambda1: f64, lambda2: f64) -> Result<f64> {
    if !(lambda1 > 0.0 && lambda2 > 0.0) {
        return Err(Error::InvalidInput("eigenvalues must be positive".into()));
    }
    let gap = lambda1.sqrt() - lambda2.sqrt();
    if gap == 0.0 {
        return Err(Error::DegenerateModel(
            "equal eigenvalues: the frame is not identifiable".into(),
        ));
    }
    let c1 = generator.c1;
    let c2 = generator.c2;
    Ok(c2 * c2 * lambda1 * lambda2 / (4.0 * c1 * c1 * gap * gap))
}

/// Inverse distribution function of `R = ‖X‖`, `X ~ Sym₂(h)`.
pub fn radial_quantile(generator: &DensityGenerator, u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::InvalidInput(format!("quantile level {u} outside (0, 1)")));
    }
    let r = match generator.family {
        Family::Normal => (-2.0 * (-u).ln_1p()).sqrt(),
        Family::Cauchy => {
            let v = 1.0 - u;
            ((1.0 / (v * v)) - 1.0).sqrt()
        }
        // 1 − (1 − r²)³ = u
        Family::Pearson2 => (1.0 - (1.0 - u).cbrt()).max(0.0).sqrt(),
        // tanh(r²/2) = u
        Family::Logistic => ((1.0 + u) / (1.0 - u)).ln().sqrt(),
        // R ~ Gamma(2, scale 2); no closed-form inverse.
        Family::DoubleExponential | Family::Custom => {
            invert_cdf_half_line(|r| generator.radial_cdf(r), u, 1e-12)?
        }
    };
    Ok(r)
}

/// An elliptical model `Ell₂(μ, Σ; h)` with `Σ = λ₁ b₁b₁ᵀ + λ₂ b₂b₂ᵀ`,
/// `b₁ = (cos φ, sin φ)` the major axis at angle `φ = orientation`.
#[derive(Debug, Clone)]
pub struct EllipticalModel {
    pub mu: Point2,
    pub lambda1: f64,
    pub lambda2: f64,
    pub orientation: f64,
    pub generator: DensityGenerator,
}

impl EllipticalModel {
    pub fn new(
        mu: Point2,
        lambda1: f64,
        lambda2: f64,
        orientation: f64,
        generator: DensityGenerator,
    ) -> Result<Self> {
        if !(lambda1.is_finite() && lambda2.is_finite() && lambda1 > 0.0 && lambda2 > 0.0) {
            return Err(Error::InvalidInput(format!(
                "dispersion eigenvalues must be positive, got ({lambda1}, {lambda2})"
            )));
        }
        if lambda1 < lambda2 {
            return Err(Error::InvalidInput(format!(
                "expected lambda1 >= lambda2, got ({lambda1}, {lambda2})"
            )));
        }
        if !(mu.is_finite() && orientation.is_finite()) {
            return Err(Error::InvalidInput("location and orientation must be finite".into()));
        }
        Ok(EllipticalModel { mu, lambda1, lambda2, orientation, generator })
    }

    /// Centered model with `Σ = diag(1, λ)`, the layout of the simulation
    /// study.
    pub fn axis_aligned(generator: DensityGenerator, lambda: f64) -> Result<Self> {
        if lambda > 1.0 {
            return Self::new(Point2::ORIGIN, lambda, 1.0, std::f64::consts::FRAC_PI_2, generator);
        }
        Self::new(Point2::ORIGIN, 1.0, lambda, 0.0, generator)
    }

    pub fn is_strictly_elliptical(&self) -> bool {
        self.lambda1 > self.lambda2
    }

    /// Principal axes `(b₁, b₂)`.
    pub fn axes(&self) -> (Point2, Point2) {
        let (s, c) = self.orientation.sin_cos();
        (Point2::new(c, s), Point2::new(-s, c))
    }

    /// The equivalence class of the principal axes.
    pub fn frame(&self) -> Frame {
        Frame::new(self.orientation)
    }

    pub fn sigma(&self) -> Sym2 {
        let (b1, b2) = self.axes();
        Sym2 {
            xx: self.lambda1 * b1.x * b1.x + self.lambda2 * b2.x * b2.x,
            xy: self.lambda1 * b1.x * b1.y + self.lambda2 * b2.x * b2.y,
            yy: self.lambda1 * b1.y * b1.y + self.lambda2 * b2.y * b2.y,
        }
    }

    /// Maps a standard spherical draw `z` to this model.
    pub fn transform(&self, z: Point2) -> Point2 {
        let (b1, b2) = self.axes();
        self.mu + b1 * (self.lambda1.sqrt() * z.x) + b2 * (self.lambda2.sqrt() * z.y)
    }

    /// `(x−μ)ᵀ Σ⁻¹ (x−μ)`.
    pub fn mahalanobis_sq(&self, x: Point2) -> f64 {
        let (b1, b2) = self.axes();
        let d = x - self.mu;
        let u = b1.dot(d);
        let v = b2.dot(d);
        u * u / self.lambda1 + v * v / self.lambda2
    }
}

/// Draws `n` points from `Sym₂(h)` using the radial–angular representation.
pub fn sample_standard(generator: &DensityGenerator, n: usize, stream: &RandomStream) -> Result<Vec<Point2>> {
    let mut rng = stream.rng();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let u = open_unit(&mut rng);
        let v = unit(&mut rng);
        let r = radial_quantile(generator, u)?;
        let (s, c) = (2.0 * PI * v).sin_cos();
        out.push(Point2::new(r * c, r * s));
    }
    Ok(out)
}

/// Draws `n` raw observations from the model, in draw order.
pub fn sample_points(model: &EllipticalModel, n: usize, stream: &RandomStream) -> Result<Vec<Point2>> {
    if n == 0 {
        return Err(Error::InvalidInput("sample size must be at least 1".into()));
    }
    Ok(sample_standard(&model.generator, n, stream)?
        .into_iter()
        .map(|z| model.transform(z))
        .collect())
}

/// Draws an empirical distribution of `n` observations from the model.
pub fn sample(model: &EllipticalModel, n: usize, stream: &RandomStream) -> Result<PointSet> {
    PointSet::new(&sample_points(model, n, stream)?)
}

// Uniform on (0, 1) with 53 random bits, never hitting either endpoint.
fn open_unit(rng: &mut impl RngCore) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

// Uniform on [0, 1).
fn unit(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Elliptical density at `x`.
pub fn density(model: &EllipticalModel, x: Point2) -> f64 {
    let det = model.lambda1 * model.lambda2;
    model.generator.h(model.mahalanobis_sq(x)) / (model.generator.c2 * det.sqrt())
}

/// Density of `⟨a, X⟩` at its median `⟨a, μ⟩`: `c₁ / (c₂ √(aᵀΣa))`.
pub fn marginal_density_at_median(model: &EllipticalModel, a: Point2) -> Result<f64> {
    if (a.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInput("direction must be a unit vector".into()));
    }
    let spread = model.sigma().quad_form(a);
    Ok(model.generator.c1 / (model.generator.c2 * spread.sqrt()))
}

/// Per-axis limiting variances `1 / (2 f_{bᵢ}(M_{bᵢ}))²` of the marginal
/// medians along the principal axes, in `(b₁, b₂)` order.
pub fn delta_matrix(model: &EllipticalModel) -> Result<Sym2> {
    let (b1, b2) = model.axes();
    let f1 = marginal_density_at_median(model, b1)?;
    let f2 = marginal_density_at_median(model, b2)?;
    Ok(Sym2::diag(1.0 / (4.0 * f1 * f1), 1.0 / (4.0 * f2 * f2)))
}

/// `σ²_QMed · Σ`.
pub fn qmed_asymptotic_covariance(model: &EllipticalModel) -> Sym2 {
    model.sigma().scale(sigma2_qmed(&model.generator))
}

/// Relative asymptotic efficiency entry for one family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyRow {
    pub family: Family,
    /// `σ²_ML / σ²_Mean`; `None` where the mean has no finite variance.
    pub eff_mean_ml: Option<f64>,
    /// `σ²_ML / σ²_QMed`.
    pub eff_qmed_ml: f64,
}

/// Efficiencies of the sample mean and the quarter median relative to the
/// maximum likelihood estimator for the five built-in families.
pub fn efficiency_table() -> Vec<EfficiencyRow> {
    Family::BUILT_IN
        .iter()
        .map(|&family| {
            let g = DensityGenerator::built_in(family).expect("built-in family");
            let ml = g.ml_variance_factor().expect("built-in family has ML constant");
            EfficiencyRow {
                family,
                eff_mean_ml: g.covariance_factor().map(|m| ml / m),
                eff_qmed_ml: ml / sigma2_qmed(&g),
            }
        })
        .collect()
}
