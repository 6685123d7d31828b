//! Quarter median solvers for planar point sets.
//!
//! [`solve_exact`] enumerates the finite candidate set: for every pair of
//! distinct points, the frame whose first axis runs along the line through
//! them, combined with each of the ≤9 marginal medians in that frame. Some
//! element of this set always solves the problem. [`solve_scan`] is a
//! cheaper heuristic that follows the rotating midpoint median.
//!
//! Among all validated solutions the canonical one is the lexicographic
//! minimum of `(α, θx, θy)`. Point sets are stored in a canonical order, so
//! the result depends only on the empirical distribution.

use std::cmp::Ordering;
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geometry::{
    dedup3, mass_report, median_of_pairs, psi, Frame, MassReport, PointSet, MASS_TOL,
    SIGN_TOL,
};
use crate::point::Point2;

/// A validated (or candidate) quarter median with its frame and masses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarterMedianSolution {
    pub theta: Point2,
    pub frame: Frame,
    pub half_masses: [f64; 4],
    pub quad_masses: [f64; 4],
}

impl QuarterMedianSolution {
    fn from_report(theta: Point2, frame: Frame, r: &MassReport) -> Self {
        QuarterMedianSolution {
            theta,
            frame,
            half_masses: r.half_masses,
            quad_masses: r.quad_masses,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.half_masses.iter().all(|&m| m >= 0.5 - MASS_TOL)
            && self.quad_masses.iter().all(|&m| m >= 0.25 - MASS_TOL)
    }

    fn lex_cmp(&self, other: &Self) -> Ordering {
        self.frame
            .alpha()
            .total_cmp(&other.frame.alpha())
            .then_with(|| self.theta.lex_cmp(&other.theta))
    }
}

/// Direction of the line through two distinct stored points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateDirection {
    pub i: usize,
    pub j: usize,
    pub b: Point2,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    Exact,
    Scan,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    /// Distinct validated solutions in lexicographic `(α, θx, θy)` order.
    pub solutions: Vec<QuarterMedianSolution>,
    pub canonical: QuarterMedianSolution,
    pub candidates_checked: usize,
    pub mode: SolveMode,
}

/// One candidate direction per unordered pair of stored points.
pub fn candidate_directions(points: &PointSet) -> Result<Vec<CandidateDirection>> {
    let pts = points.points();
    if pts.len() < 2 {
        return Err(Error::DegenerateInput(format!(
            "need at least 2 distinct points, got {}",
            pts.len()
        )));
    }
    let mut out = Vec::with_capacity(pts.len() * (pts.len() - 1) / 2);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = pts[j] - pts[i];
            let b = d * (1.0 / d.norm());
            out.push(CandidateDirection {
                i,
                j,
                b,
                alpha: Frame::from_direction(b).alpha(),
            });
        }
    }
    Ok(out)
}

/// Distinct candidate frame angles in ascending order: the pairwise
/// directions plus the coordinate axes themselves.
fn distinct_alphas(points: &PointSet) -> Result<Vec<f64>> {
    let mut alphas: Vec<f64> = candidate_directions(points)?.iter().map(|d| d.alpha).collect();
    alphas.push(0.0);
    alphas.sort_unstable_by(f64::total_cmp);
    alphas.dedup_by(|a, b| a.to_bits() == b.to_bits());
    Ok(alphas)
}

/// Projection scratch space reused across frames.
struct FrameScratch {
    proj: Vec<Point2>,
    pairs: Vec<(f64, f64)>,
}

impl FrameScratch {
    fn new(n: usize) -> Self {
        FrameScratch {
            proj: Vec::with_capacity(n),
            pairs: Vec::with_capacity(n),
        }
    }
}

/// Validated solutions among the marginal-median grid of one frame, in
/// grid order. Returns the number of grid points examined alongside.
fn solutions_in_frame(
    points: &PointSet,
    frame: Frame,
    scratch: &mut FrameScratch,
    out: &mut Vec<QuarterMedianSolution>,
) -> usize {
    let (b1, b2) = frame.axes();
    scratch.proj.clear();
    scratch.proj.extend(points.points().iter().map(|p| Point2::new(b1.dot(*p), b2.dot(*p))));

    scratch.pairs.clear();
    scratch.pairs.extend(scratch.proj.iter().zip(points.weights()).map(|(p, &w)| (p.x, w)));
    let m1 = median_of_pairs(&mut scratch.pairs);
    scratch.pairs.clear();
    scratch.pairs.extend(scratch.proj.iter().zip(points.weights()).map(|(p, &w)| (p.y, w)));
    let m2 = median_of_pairs(&mut scratch.pairs);

    let e1s = dedup3(m1.as_array());
    let e2s = dedup3(m2.as_array());
    let mut checked = 0;
    for &e1 in &e1s {
        for &e2 in &e2s {
            checked += 1;
            let eta = Point2::new(e1, e2);
            let theta = frame.from_frame(eta);
            // Quick screen in frame coordinates; the closed half-plane
            // conditions hold for any marginal median, so only quadrants
            // can fail here. The authoritative check is `mass_report`.
            let tol = SIGN_TOL * points.scale().max(theta.max_abs());
            let mut quad = [0.0f64; 4];
            for (p, &w) in scratch.proj.iter().zip(points.weights()) {
                let d1 = p.x - e1;
                let d2 = p.y - e2;
                let (p1, m1) = (d1 >= -tol, d1 <= tol);
                let (p2, m2) = (d2 >= -tol, d2 <= tol);
                if p1 && p2 {
                    quad[0] += w;
                }
                if p1 && m2 {
                    quad[1] += w;
                }
                if m1 && p2 {
                    quad[2] += w;
                }
                if m1 && m2 {
                    quad[3] += w;
                }
            }
            // Slightly looser than the final test so rounding differences
            // between the two routes cannot hide a solution.
            if quad.iter().any(|&m| m < 0.25 - 1e-9) {
                continue;
            }
            let report = mass_report(points, theta, frame);
            if report.is_valid() {
                out.push(QuarterMedianSolution::from_report(theta, frame, &report));
            }
        }
    }
    checked
}

fn singleton_solution(points: &PointSet) -> QuarterMedianSolution {
    let theta = points.points()[0];
    let frame = Frame::CANONICAL;
    QuarterMedianSolution::from_report(theta, frame, &mass_report(points, theta, frame))
}

fn sort_dedup(mut sols: Vec<QuarterMedianSolution>, scale: f64) -> Vec<QuarterMedianSolution> {
    sols.sort_by(|a, b| a.lex_cmp(b));
    let tol = SIGN_TOL * scale.max(1.0);
    sols.dedup_by(|later, kept| {
        (later.frame.alpha() - kept.frame.alpha()).abs() <= 1e-12
            && (later.theta - kept.theta).max_abs() <= tol
    });
    sols
}

/// Exact solver: all validated solutions from the pairwise-direction
/// candidate set, using the default execution mode.
pub fn solve_exact(points: &PointSet) -> Result<SolveResult> {
    solve_exact_with(points, Execution::default())
}

/// [`solve_exact`] with an explicit execution mode. The result does not
/// depend on the mode.
pub fn solve_exact_with(points: &PointSet, exec: Execution) -> Result<SolveResult> {
    if points.len() == 1 {
        let s = singleton_solution(points);
        return Ok(SolveResult {
            solutions: vec![s],
            canonical: s,
            candidates_checked: 1,
            mode: SolveMode::Exact,
        });
    }
    let alphas = distinct_alphas(points)?;
    let per_frame = exec.map(&alphas, |&alpha| {
        let mut scratch = FrameScratch::new(points.len());
        let mut sols = Vec::new();
        let checked = solutions_in_frame(points, Frame::new(alpha), &mut scratch, &mut sols);
        (checked, sols)
    });
    let candidates_checked = per_frame.iter().map(|(c, _)| c).sum();
    let all: Vec<QuarterMedianSolution> = per_frame.into_iter().flat_map(|(_, s)| s).collect();
    let solutions = sort_dedup(all, points.scale());
    let canonical = *solutions.first().ok_or_else(|| {
        Error::Internal(format!(
            "no candidate passed validation among {candidates_checked} checked ({} points)",
            points.len()
        ))
    })?;
    Ok(SolveResult {
        solutions,
        canonical,
        candidates_checked,
        mode: SolveMode::Exact,
    })
}

/// The canonical solution of [`solve_exact`], found by visiting candidate
/// frames in increasing angle and stopping at the first that validates.
pub fn canonical_quarter_median(points: &PointSet) -> Result<QuarterMedianSolution> {
    if points.len() == 1 {
        return Ok(singleton_solution(points));
    }
    let alphas = distinct_alphas(points)?;
    let mut scratch = FrameScratch::new(points.len());
    let mut sols = Vec::new();
    for &alpha in &alphas {
        solutions_in_frame(points, Frame::new(alpha), &mut scratch, &mut sols);
        if !sols.is_empty() {
            sols.sort_by(|a, b| a.lex_cmp(b));
            return Ok(sols[0]);
        }
    }
    Err(Error::Internal(format!(
        "no candidate passed validation ({} points, {} frames)",
        points.len(),
        alphas.len()
    )))
}

/// Open upper-right quadrant mass at the rotating midpoint median, scaled
/// to observation counts, on `grid` equally spaced angles in `[0, π/2)`.
pub fn scan_count_curve(points: &PointSet, grid: usize) -> Result<Vec<(f64, f64)>> {
    if grid < 2 {
        return Err(Error::InvalidInput(format!("grid must be at least 2, got {grid}")));
    }
    Ok((0..grid)
        .map(|g| {
            let alpha = grid_angle(g, grid);
            (alpha, open_upper_right_count(points, alpha))
        })
        .collect())
}

fn grid_angle(g: usize, grid: usize) -> f64 {
    FRAC_PI_2 * g as f64 / grid as f64
}

/// Count of observations strictly inside the upper-right quadrant at the
/// midpoint median for frame angle `alpha` (any real).
pub fn open_upper_right_count(points: &PointSet, alpha: f64) -> f64 {
    let frame = Frame::new(alpha);
    let theta = psi(points, frame);
    // Measure in the uncanonicalized axes so "upper right" follows α.
    let (s, c) = alpha.sin_cos();
    let b1 = Point2::new(c, s);
    let b2 = Point2::new(-s, c);
    let tol = SIGN_TOL * points.scale().max(theta.max_abs());
    let mass: f64 = points
        .iter()
        .filter(|(p, _)| {
            let d = *p - theta;
            b1.dot(d) > tol && b2.dot(d) > tol
        })
        .fold(0.0, |acc, (_, w)| acc + w);
    mass * points.observations() as f64
}

/// Angles in `[0, π/2)` at which the order of projections on either axis
/// can change, sorted ascending.
pub fn event_angles(points: &PointSet) -> Result<Vec<f64>> {
    let mut ev: Vec<f64> = candidate_directions(points)?
        .iter()
        .map(|d| d.alpha.rem_euclid(FRAC_PI_2))
        .map(|a| if a >= FRAC_PI_2 { 0.0 } else { a })
        .collect();
    ev.sort_unstable_by(f64::total_cmp);
    ev.dedup_by(|a, b| a.to_bits() == b.to_bits());
    Ok(ev)
}

/// Heuristic angle-scan solver: evaluates the count curve on a grid,
/// bisects over event angles inside every grid cell where the count crosses
/// a quarter of the observations, and validates the marginal-median
/// candidates found there and at grid angles whose count is within one of
/// that target. May miss narrow solution windows.
pub fn solve_scan(points: &PointSet, grid: usize) -> Result<SolveResult> {
    if grid < 2 {
        return Err(Error::InvalidInput(format!("grid must be at least 2, got {grid}")));
    }
    if points.len() == 1 {
        let s = singleton_solution(points);
        return Ok(SolveResult {
            solutions: vec![s],
            canonical: s,
            candidates_checked: 1,
            mode: SolveMode::Scan,
        });
    }
    let target = points.observations() as f64 / 4.0;
    let events = event_angles(points)?;
    let f = |alpha: f64| open_upper_right_count(points, alpha) - target;

    let mut probe_angles: Vec<f64> = Vec::new();
    let values: Vec<f64> = (0..=grid).map(|g| f(grid_angle(g, grid))).collect();
    for g in 0..grid {
        let (a0, a1) = (grid_angle(g, grid), grid_angle(g + 1, grid));
        let (v0, v1) = (values[g], values[g + 1]);
        // With n not divisible by 4 the count can only come within 1 of n/4.
        if v0.abs() < 1.0 {
            probe_angles.push(a0);
        }
        if v0.signum() == v1.signum() && v0 != 0.0 && v1 != 0.0 {
            continue;
        }
        // Events strictly inside the cell, bisected over interval indices:
        // interval k lies between events[k-1] and events[k].
        let lo_idx = events.partition_point(|&e| e <= a0);
        let hi_idx = events.partition_point(|&e| e < a1);
        if lo_idx >= hi_idx {
            continue;
        }
        let interval_mid = |k: usize| -> f64 {
            let left = if k == lo_idx { a0 } else { events[k - 1] };
            let right = if k == hi_idx { a1 } else { events[k] };
            0.5 * (left + right)
        };
        let (mut lo, mut hi) = (lo_idx, hi_idx);
        let vlo = f(interval_mid(lo));
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            let vm = f(interval_mid(mid));
            if vm == 0.0 {
                probe_angles.push(interval_mid(mid));
            }
            if vm != 0.0 && vm.signum() == vlo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // The count changes across the event separating intervals lo and hi.
        probe_angles.push(events[lo]);
        probe_angles.push(interval_mid(lo));
        probe_angles.push(interval_mid(hi));
    }

    let mut sols = Vec::new();
    let mut checked = 0;
    let mut scratch = FrameScratch::new(points.len());
    probe_angles.sort_unstable_by(f64::total_cmp);
    probe_angles.dedup_by(|a, b| a.to_bits() == b.to_bits());
    for &alpha in &probe_angles {
        let frame = Frame::new(alpha);
        checked += solutions_in_frame(points, frame, &mut scratch, &mut sols);
        let theta = psi(points, frame);
        let report = mass_report(points, theta, frame);
        checked += 1;
        if report.is_valid() {
            sols.push(QuarterMedianSolution::from_report(theta, frame, &report));
        }
    }
    let solutions = sort_dedup(sols, points.scale());
    let canonical = *solutions.first().ok_or(Error::NotFound)?;
    Ok(SolveResult {
        solutions,
        canonical,
        candidates_checked: checked,
        mode: SolveMode::Scan,
    })
}

/// One sample of the median curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub alpha: f64,
    pub point: Point2,
    pub valid: bool,
}

/// The rotating midpoint median `Ψ` on `grid` equally spaced angles in
/// `[0, π/2)`, flagged where it is a quarter median for that frame.
pub fn median_curve(points: &PointSet, grid: usize) -> Result<Vec<CurvePoint>> {
    if grid < 2 {
        return Err(Error::InvalidInput(format!("grid must be at least 2, got {grid}")));
    }
    Ok((0..grid)
        .map(|g| {
            let alpha = grid_angle(g, grid);
            let frame = Frame::new(alpha);
            let point = psi(points, frame);
            let valid = mass_report(points, point, frame).is_valid();
            CurvePoint { alpha, point, valid }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[(f64, f64)]) -> PointSet {
        PointSet::new(&v.iter().map(|&p| p.into()).collect::<Vec<Point2>>()).unwrap()
    }

    fn has(sols: &[QuarterMedianSolution], theta: (f64, f64), alpha: f64) -> bool {
        sols.iter().any(|s| {
            (s.frame.alpha() - alpha).abs() < 1e-12 && s.theta.dist(theta.into()) < 1e-12
        })
    }

    fn square() -> PointSet {
        set(&[(1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)])
    }

    #[test]
    fn direction_counts() {
        assert_eq!(candidate_directions(&set(&[(0.0, 0.0), (1.0, 2.0)])).unwrap().len(), 1);
        assert_eq!(candidate_directions(&set(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])).unwrap().len(), 3);
        let many: Vec<(f64, f64)> = (0..76).map(|k| (k as f64, ((k * k) % 31) as f64)).collect();
        assert_eq!(candidate_directions(&set(&many)).unwrap().len(), 2850);
        assert!(matches!(
            candidate_directions(&set(&[(1.0, 1.0), (1.0, 1.0)])),
            Err(Error::DegenerateInput(_))
        ));
        for d in candidate_directions(&set(&many)).unwrap() {
            assert!((d.b.norm() - 1.0).abs() < 1e-12);
            assert!(d.alpha >= -std::f64::consts::FRAC_PI_4 && d.alpha < std::f64::consts::FRAC_PI_4);
        }
    }

    #[test]
    fn exact_three_point() {
        let r = solve_exact(&set(&[(0.0, 0.0), (0.5, 1.0), (1.0, 0.5)])).unwrap();
        assert!(has(&r.solutions, (0.5, 0.5), 0.0));
        assert!(r.solutions.iter().all(|s| s.is_valid()));
        assert_eq!(r.mode, SolveMode::Exact);
    }

    #[test]
    fn exact_six_point() {
        let six = set(&[(-2.0, -2.0), (-1.0, 3.0), (1.0, -1.0), (2.0, 2.0), (3.0, 4.0), (4.0, 0.0)]);
        let r = solve_exact(&six).unwrap();
        assert!(has(&r.solutions, (2.0, 2.0), 0.0));
        assert!(!has(&r.solutions, (1.5, 1.0), 0.0));
        assert!(!mass_report(&six, Point2::new(1.5, 1.0), Frame::CANONICAL).is_valid());
    }

    #[test]
    fn exact_singleton() {
        let r = solve_exact(&set(&[(5.0, -3.0)])).unwrap();
        assert_eq!(r.canonical.theta, Point2::new(5.0, -3.0));
        assert_eq!(r.canonical.frame.alpha(), 0.0);
        assert_eq!(canonical_quarter_median(&set(&[(5.0, -3.0)])).unwrap(), r.canonical);
    }

    #[test]
    fn collinear_and_duplicates() {
        let line = set(&[(0.0, 0.0), (1.0, 2.0), (2.0, 4.0), (3.0, 6.0), (1.0, 2.0)]);
        let r = solve_exact(&line).unwrap();
        assert!(r.canonical.frame.alpha().is_finite());
        assert!(r.solutions.iter().all(|s| s.is_valid()));
    }

    #[test]
    fn count_curve_examples() {
        let c = scan_count_curve(&square(), 8).unwrap();
        assert_eq!(c.len(), 8);
        assert_eq!(c[0], (0.0, 1.0));
        let c = scan_count_curve(&set(&[(2.0, 3.0)]), 16).unwrap();
        assert!(c.iter().all(|&(_, n)| n == 0.0));
        assert!(scan_count_curve(&square(), 1).is_err());
    }

    #[test]
    fn scan_agrees_with_exact_on_small_examples() {
        let three = set(&[(0.0, 0.0), (0.5, 1.0), (1.0, 0.5)]);
        let r = solve_scan(&three, 360).unwrap();
        assert_eq!(r.mode, SolveMode::Scan);
        assert!(has(&r.solutions, (0.5, 0.5), 0.0));
        let r = solve_scan(&square(), 360).unwrap();
        assert!(r.solutions.iter().any(|s| s.frame.alpha() == 0.0 && s.theta.norm() < 1e-12));
        for s in &r.solutions {
            assert!(mass_report(&square(), s.theta, s.frame).is_valid());
        }
    }

    #[test]
    fn curve_examples() {
        let c = median_curve(&square(), 12).unwrap();
        assert!(c.iter().all(|p| p.valid && p.point.norm() < 1e-12));
        let c = median_curve(&set(&[(1.0, -4.0)]), 5).unwrap();
        assert!(c.iter().all(|p| p.point.dist(Point2::new(1.0, -4.0)) < 1e-12 && p.valid));
        let six = set(&[(-2.0, -2.0), (-1.0, 3.0), (1.0, -1.0), (2.0, 2.0), (3.0, 4.0), (4.0, 0.0)]);
        let c = median_curve(&six, 90).unwrap();
        // Midpoint median at α = 0 is (1.5, 1), which fails; (2, 2) is reached
        // at other angles of the curve.
        assert_eq!(c[0].point, Point2::new(1.5, 1.0));
        assert!(!c[0].valid);
    }

    fn arb_set(max: usize) -> impl Strategy<Value = Vec<Point2>> {
        prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64).prop_map(Point2::from), 1..max)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn exact_always_finds_validated_solution(raw in arb_set(25)) {
            let s = PointSet::new(&raw).unwrap();
            let r = solve_exact(&s).unwrap();
            for sol in &r.solutions {
                prop_assert!(mass_report(&s, sol.theta, sol.frame).is_valid());
            }
            prop_assert_eq!(canonical_quarter_median(&s).unwrap(), r.canonical);
        }

        #[test]
        fn scan_hits_validate(raw in arb_set(16)) {
            let s = PointSet::new(&raw).unwrap();
            if let Ok(r) = solve_scan(&s, 64) {
                for sol in &r.solutions {
                    prop_assert!(mass_report(&s, sol.theta, sol.frame).is_valid());
                }
            }
        }

        #[test]
        fn count_curve_is_constant_between_events(raw in arb_set(9), k in 0usize..1000, t in 0.05..0.95f64, u in 0.05..0.95f64) {
            let s = PointSet::new(&raw).unwrap();
            prop_assume!(s.len() >= 2);
            let mut cuts = vec![0.0];
            cuts.extend(event_angles(&s).unwrap());
            cuts.push(FRAC_PI_2);
            let k = k % (cuts.len() - 1);
            let (a, b) = (cuts[k], cuts[k + 1]);
            prop_assume!(b - a > 1e-6);
            let x = a + t * (b - a);
            let y = a + u * (b - a);
            prop_assert_eq!(open_upper_right_count(&s, x), open_upper_right_count(&s, y));
        }
    }
}
