//! The quarter median: a rotation-equivariant bivariate median defined by
//! splitting a distribution into four quadrants of (at least) equal mass.
//!
//! [`solver::solve_exact`] finds every solution `(θ, frame)` of a finite
//! point set by checking the marginal-median grid in the frames spanned by
//! pairs of points. The crate also provides elliptical model tooling
//! ([`elliptical`]), competing location estimators ([`estimators`]) and a
//! seeded Monte Carlo harness ([`montecarlo`]).
//!
//! ```
//! use quarter_median::{solve_exact, Point2, PointSet};
//!
//! let pts = PointSet::new(&[
//!     Point2::new(0.0, 0.0),
//!     Point2::new(0.5, 1.0),
//!     Point2::new(1.0, 0.5),
//! ])?;
//! let result = solve_exact(&pts)?;
//! assert!(result
//!     .solutions
//!     .iter()
//!     .any(|s| s.theta == Point2::new(0.5, 0.5) && s.frame.alpha() == 0.0));
//! assert!(result.canonical.is_valid());
//! # Ok::<(), quarter_median::Error>(())
//! ```

pub mod elliptical;
pub mod error;
pub mod estimators;
pub mod exec;
pub mod geometry;
pub mod montecarlo;
pub mod numeric;
pub mod point;
pub mod solver;

pub use elliptical::{DensityGenerator, EllipticalModel, Family};
pub use error::{Error, Result};
pub use estimators::EstimatorId;
pub use exec::Execution;
pub use geometry::{mass_report, psi, Frame, MassReport, PointSet};
pub use montecarlo::{run_experiment, ExperimentConfig, ExperimentReport, RandomStream};
pub use point::{Point2, Sym2};
pub use solver::{canonical_quarter_median, solve_exact, solve_scan, QuarterMedianSolution, SolveResult};
