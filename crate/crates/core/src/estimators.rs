//! Competing location estimators: sample mean, spatial median, Oja median
//! and an approximate Tukey median.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample as sample_indices;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::elliptical::{DensityGenerator, CK_TOL};
use crate::error::{Error, Result};
use crate::geometry::{univariate_median, PointSet, MASS_TOL};
use crate::numeric::{integrate_half_line, QuadOptions};
use crate::point::Point2;
use crate::solver::canonical_quarter_median;

/// Iteration cap for the spatial median.
pub const WEISZFELD_MAX_ITER: usize = 10_000;

/// Default step tolerance for the spatial median, relative to the data scale.
pub const SMED_TOL: f64 = 1e-11;

/// Default objective tolerance for the Oja median.
pub const OMED_TOL: f64 = 1e-9;

/// Maximum number of line intersections examined by [`tukey_median_approx`].
pub const TUKEY_CANDIDATE_CAP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EstimatorId {
    Qmed,
    Smed,
    Omed,
    Tmed,
    Mean,
}

impl EstimatorId {
    pub const ALL: [EstimatorId; 5] = [
        EstimatorId::Qmed,
        EstimatorId::Smed,
        EstimatorId::Omed,
        EstimatorId::Tmed,
        EstimatorId::Mean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EstimatorId::Qmed => "qmed",
            EstimatorId::Smed => "smed",
            EstimatorId::Omed => "omed",
            EstimatorId::Tmed => "tmed",
            EstimatorId::Mean => "mean",
        }
    }

    /// Comma-separated list, e.g. `"qmed,smed"`. Duplicates are rejected.
    pub fn parse_list(s: &str) -> Result<Vec<EstimatorId>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let id: EstimatorId = part.parse()?;
            if out.contains(&id) {
                return Err(Error::InvalidInput(format!("estimator '{part}' listed twice")));
            }
            out.push(id);
        }
        if out.is_empty() {
            return Err(Error::InvalidInput("no estimators given".into()));
        }
        Ok(out)
    }

    /// Evaluates this estimator with its default tolerances.
    pub fn estimate(self, points: &PointSet) -> Result<Point2> {
        match self {
            EstimatorId::Qmed => Ok(canonical_quarter_median(points)?.theta),
            EstimatorId::Smed => spatial_median(points, SMED_TOL),
            EstimatorId::Omed => oja_median(points, OMED_TOL),
            EstimatorId::Tmed => Ok(tukey_median_approx(points).point),
            EstimatorId::Mean => Ok(sample_mean(points)),
        }
    }
}

impl fmt::Display for EstimatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EstimatorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EstimatorId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown estimator '{s}'")))
    }
}

pub fn sample_mean(points: &PointSet) -> Point2 {
    let mut acc = Point2::ORIGIN;
    for (p, w) in points.iter() {
        acc = acc + p * w;
    }
    acc
}

fn distance_sum(points: &PointSet, y: Point2) -> f64 {
    points.iter().map(|(p, w)| w * p.dist(y)).sum()
}

// Weighted sum of unit vectors from y towards the data, skipping `skip`.
fn pull(points: &PointSet, y: Point2, skip: Option<usize>) -> Point2 {
    let mut g = Point2::ORIGIN;
    for (k, (p, w)) in points.iter().enumerate() {
        if Some(k) == skip {
            continue;
        }
        let d = p.dist(y);
        if d > 0.0 {
            g = g + (p - y) * (w / d);
        }
    }
    g
}

/// Minimizer of `Σ w_k ‖x − x_k‖`.
///
/// Data points are screened first with the subgradient condition
/// `‖Σ_{k≠j} w_k (x_k − x_j)/‖x_k − x_j‖‖ ≤ w_j`; otherwise the modified
/// Weiszfeld iteration of Vardi and Zhang runs from the mean. The iteration
/// stops once a step is shorter than `tol · (1 + scale)`.
pub fn spatial_median(points: &PointSet, tol: f64) -> Result<Point2> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    if points.len() == 1 {
        return Ok(points.points()[0]);
    }
    if let Some(j) = (0..points.len()).find(|&j| {
        let x = points.points()[j];
        pull(points, x, Some(j)).norm() <= points.weights()[j]
    }) {
        return Ok(points.points()[j]);
    }

    let step_tol = tol * (1.0 + points.scale());
    let mut y = sample_mean(points);
    let mut obj = distance_sum(points, y);
    for _ in 0..WEISZFELD_MAX_ITER {
        let anchor = points.points().iter().position(|&p| p == y);
        let mut num = Point2::ORIGIN;
        let mut den = 0.0;
        for (k, (p, w)) in points.iter().enumerate() {
            if Some(k) == anchor {
                continue;
            }
            let d = p.dist(y);
            num = num + p * (w / d);
            den += w / d;
        }
        let t = num * (1.0 / den);
        let next = match anchor {
            None => t,
            Some(j) => {
                let r = pull(points, y, Some(j)).norm();
                let eta = points.weights()[j];
                if r <= eta {
                    return Ok(y);
                }
                let a = 1.0 - eta / r;
                t * a + y * (1.0 - a)
            }
        };
        let next_obj = distance_sum(points, next);
        debug_assert!(
            next_obj <= obj * (1.0 + 1e-12) + 1e-300,
            "Weiszfeld objective increased: {obj} -> {next_obj}"
        );
        let step = next.dist(y);
        y = next;
        obj = next_obj;
        if step <= step_tol {
            return Ok(y);
        }
    }
    Err(Error::Numerical {
        message: format!("spatial median did not converge in {WEISZFELD_MAX_ITER} iterations"),
        best: Some(y),
    })
}

/// Limiting variance factor of the spatial median under a spherical model
/// `Sym₂(h)`: `2 (E 1/R)^{−2}`, with `E 1/R` by quadrature of `f_R(r)/r`.
pub fn smed_spherical_variance(generator: &DensityGenerator) -> Result<f64> {
    let scale = 2.0 * PI / generator.c2();
    let opts = QuadOptions { abs_tol: CK_TOL, ..QuadOptions::default() };
    let e_inv = integrate_half_line(|r| scale * generator.h(r * r), opts)?.value;
    if !(e_inv.is_finite() && e_inv > 0.0) {
        return Err(Error::numerical(format!("E(1/R) evaluated to {e_inv}")));
    }
    Ok(2.0 / (e_inv * e_inv))
}

/// The lines through all pairs of distinct points, stored so that
/// `det(x_k − θ, x_l − θ) = c + θ·n` and weighted by `w_k w_l / 2`.
struct PairLines {
    ends: Vec<(usize, usize)>,
    c: Vec<f64>,
    nx: Vec<f64>,
    ny: Vec<f64>,
    w: Vec<f64>,
}

impl PairLines {
    fn new(points: &PointSet) -> Self {
        let m = points.len() * points.len().saturating_sub(1) / 2;
        let mut lines = PairLines {
            ends: Vec::with_capacity(m),
            c: Vec::with_capacity(m),
            nx: Vec::with_capacity(m),
            ny: Vec::with_capacity(m),
            w: Vec::with_capacity(m),
        };
        let pts = points.points();
        let ws = points.weights();
        for k in 0..pts.len() {
            for l in k + 1..pts.len() {
                let (a, b) = (pts[k], pts[l]);
                lines.ends.push((k, l));
                lines.c.push(a.cross(b));
                lines.nx.push(a.y - b.y);
                lines.ny.push(b.x - a.x);
                lines.w.push(0.5 * ws[k] * ws[l]);
            }
        }
        lines
    }

    fn len(&self) -> usize {
        self.c.len()
    }

    fn share_endpoint(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.ends[i], self.ends[j]);
        a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
    }

    fn objective(&self, t: Point2) -> f64 {
        let mut s = 0.0;
        for i in 0..self.c.len() {
            s += self.w[i] * (self.c[i] + t.x * self.nx[i] + t.y * self.ny[i]).abs();
        }
        s
    }

    fn distance(&self, i: usize, t: Point2) -> f64 {
        (self.c[i] + t.x * self.nx[i] + t.y * self.ny[i]).abs() / self.nx[i].hypot(self.ny[i])
    }

    fn intersect(&self, i: usize, j: usize) -> Option<Point2> {
        // Solve nx·x + ny·y = −c for both lines.
        let det = self.nx[i] * self.ny[j] - self.ny[i] * self.nx[j];
        let norm = self.nx[i].hypot(self.ny[i]) * self.nx[j].hypot(self.ny[j]);
        if det.abs() <= 1e-12 * norm {
            return None;
        }
        let x = (-self.c[i] * self.ny[j] + self.c[j] * self.ny[i]) / det;
        let y = (-self.nx[i] * self.c[j] + self.nx[j] * self.c[i]) / det;
        let p = Point2::new(x, y);
        p.is_finite().then_some(p)
    }
}

/// The empirical Oja objective
/// `Σ_{k<l} w_k w_l · ½ |det(x_k − θ, x_l − θ)|`.
pub fn oja_objective(points: &PointSet, theta: Point2) -> f64 {
    PairLines::new(points).objective(theta)
}

fn is_collinear(points: &PointSet) -> bool {
    let pts = points.points();
    if pts.len() < 3 {
        return true;
    }
    let a = pts[0];
    let b = pts[pts.len() - 1];
    let d = b - a;
    let tol = 1e-12 * (1.0 + points.scale()) * d.norm();
    pts.iter().all(|&p| d.cross(p - a).abs() <= tol)
}

fn nelder_mead<F: Fn(Point2) -> f64>(f: &F, start: Point2, step: f64, tol: f64) -> (Point2, f64) {
    let mut simplex = [
        start,
        start + Point2::new(step, 0.0),
        start + Point2::new(0.0, step),
    ];
    let mut vals = simplex.map(f);
    for _ in 0..2000 {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        simplex = idx.map(|i| simplex[i]);
        vals = idx.map(|i| vals[i]);
        let size = simplex[1].dist(simplex[0]).max(simplex[2].dist(simplex[0]));
        if vals[2] - vals[0] <= tol * (1.0 + vals[0].abs()) && size <= 1e-9 * (1.0 + step) {
            break;
        }
        let centroid = (simplex[0] + simplex[1]) * 0.5;
        let worst = simplex[2];
        let reflected = centroid + (centroid - worst);
        let fr = f(reflected);
        if fr < vals[0] {
            let expanded = centroid + (centroid - worst) * 2.0;
            let fe = f(expanded);
            if fe < fr {
                simplex[2] = expanded;
                vals[2] = fe;
            } else {
                simplex[2] = reflected;
                vals[2] = fr;
            }
        } else if fr < vals[1] {
            simplex[2] = reflected;
            vals[2] = fr;
        } else {
            let (contracted, fc) = if fr < vals[2] {
                let c = centroid + (reflected - centroid) * 0.5;
                (c, f(c))
            } else {
                let c = centroid + (worst - centroid) * 0.5;
                (c, f(c))
            };
            if fc < vals[2].min(fr) {
                simplex[2] = contracted;
                vals[2] = fc;
            } else {
                for i in 1..3 {
                    simplex[i] = simplex[0] + (simplex[i] - simplex[0]) * 0.5;
                    vals[i] = f(simplex[i]);
                }
            }
        }
    }
    let best = (0..3).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap_or(0);
    (simplex[best], vals[best])
}

// Nearest arrangement vertex to `p`: the best intersection among the
// lines closest to it.
fn snap_to_vertex(lines: &PairLines, p: Point2) -> Option<(Point2, f64)> {
    const NEAREST: usize = 12;
    let mut order: Vec<usize> = (0..lines.len()).collect();
    let k = NEAREST.min(order.len());
    if k < 2 {
        return None;
    }
    order.select_nth_unstable_by(k - 1, |&a, &b| {
        lines.distance(a, p).total_cmp(&lines.distance(b, p)).then(a.cmp(&b))
    });
    let mut near = order[..k].to_vec();
    near.sort_unstable();
    let mut best: Option<(Point2, f64)> = None;
    for a in 0..near.len() {
        for b in a + 1..near.len() {
            if let Some(q) = lines.intersect(near[a], near[b]) {
                let v = lines.objective(q);
                if best.is_none_or(|(_, bv)| v < bv) {
                    best = Some((q, v));
                }
            }
        }
    }
    best
}

// Vertices adjacent to `u` along the arrangement lines passing through it.
fn vertex_neighbors(lines: &PairLines, u: Point2, on_tol: f64) -> Vec<Point2> {
    let through: Vec<usize> = (0..lines.len()).filter(|&i| lines.distance(i, u) <= on_tol).collect();
    let mut out = Vec::new();
    for &i in &through {
        let n = Point2::new(lines.nx[i], lines.ny[i]);
        let d = n.perp() * (1.0 / n.norm());
        let (mut fwd, mut back) = (f64::INFINITY, f64::NEG_INFINITY);
        for j in 0..lines.len() {
            let slope = lines.nx[j] * d.x + lines.ny[j] * d.y;
            let nj = lines.nx[j].hypot(lines.ny[j]);
            if slope.abs() <= 1e-12 * nj || lines.distance(j, u) <= on_tol {
                continue;
            }
            let t = -(lines.c[j] + lines.nx[j] * u.x + lines.ny[j] * u.y) / slope;
            if t > 0.0 {
                fwd = fwd.min(t);
            } else if t < 0.0 {
                back = back.max(t);
            }
        }
        for t in [fwd, back] {
            if t.is_finite() {
                out.push(u + d * t);
            }
        }
    }
    out
}

// The objective is convex and piecewise linear with kinks on the pair
// lines, so a vertex is a global minimizer exactly when no arrangement edge
// leaving it descends. Walk downhill along edges, then collect the vertices
// of the (possibly flat) minimizing polygon and return their centroid.
fn minimize_on_arrangement(lines: &PairLines, start: Point2, start_val: f64, scale: f64) -> Point2 {
    let on_tol = 1e-10 * (1.0 + scale);
    let (mut u, mut fu) = (start, start_val);
    for _ in 0..10_000 {
        let step = vertex_neighbors(lines, u, on_tol)
            .into_iter()
            .map(|q| (q, lines.objective(q)))
            .filter(|&(_, v)| v < fu - 1e-14 * (1.0 + fu))
            .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.lex_cmp(&b.0)));
        match step {
            Some((q, v)) => {
                u = q;
                fu = v;
            }
            None => break,
        }
    }
    let flat = fu + 1e-11 * (1.0 + fu);
    let same = |a: Point2, b: Point2| a.dist(b) <= on_tol;
    let mut found = vec![u];
    let mut next = 0;
    while next < found.len() && found.len() < 10_000 {
        let v = found[next];
        next += 1;
        for q in vertex_neighbors(lines, v, on_tol) {
            if lines.objective(q) <= flat && !found.iter().any(|&f| same(f, q)) {
                found.push(q);
            }
        }
    }
    found.sort_by(|a, b| a.lex_cmp(b));
    let sum = found.iter().fold(Point2::ORIGIN, |acc, &p| acc + p);
    sum * (1.0 / found.len() as f64)
}

/// Minimizer of [`oja_objective`], by Nelder–Mead from three starts (mean,
/// spatial median, coordinatewise median) followed by an exact descent over
/// vertices of the pair-line arrangement. When the minimizer is not unique
/// the centroid of the vertices of the minimizing polygon is returned.
pub fn oja_median(points: &PointSet, tol: f64) -> Result<Point2> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    if is_collinear(points) {
        return Err(Error::DegenerateInput(
            "the Oja median needs at least three non-collinear points".into(),
        ));
    }
    let lines = PairLines::new(points);
    let f = |t: Point2| lines.objective(t);
    let xs: Vec<f64> = points.points().iter().map(|p| p.x).collect();
    let ys: Vec<f64> = points.points().iter().map(|p| p.y).collect();
    let cw = Point2::new(
        univariate_median(&xs, points.weights())?.mid,
        univariate_median(&ys, points.weights())?.mid,
    );
    let mut starts = vec![sample_mean(points), cw];
    if let Ok(s) = spatial_median(points, SMED_TOL) {
        starts.push(s);
    }
    let step = 0.1 * (1.0 + points.scale());
    let mut best: Option<(Point2, f64)> = None;
    for s in starts {
        let (p, v) = nelder_mead(&f, s, step, tol);
        best = match best {
            Some((bp, bv)) if bv < v || (bv == v && bp.lex_cmp(&p) != Ordering::Greater) => Some((bp, bv)),
            _ => Some((p, v)),
        };
    }
    let (p, _) = best.expect("at least one start");
    let (vertex, val) = snap_to_vertex(&lines, p).ok_or_else(|| Error::Internal("no arrangement vertex".into()))?;
    Ok(minimize_on_arrangement(&lines, vertex, val, points.scale()))
}

/// Halfspace depth of `theta`: the smallest mass of a closed half-plane
/// whose boundary passes through `theta`.
pub fn tukey_depth(points: &PointSet, theta: Point2) -> f64 {
    let mut at_theta = 0.0;
    let mut dirs: Vec<(Point2, f64)> = Vec::with_capacity(points.len());
    for (p, w) in points.iter() {
        if p == theta {
            at_theta += w;
        } else {
            dirs.push((p - theta, w));
        }
    }
    if dirs.is_empty() {
        return at_theta.min(1.0);
    }
    dirs.sort_by(|a, b| angle_cmp(a.0, b.0));
    let other: f64 = dirs.iter().map(|d| d.1).sum();
    let coord_tol = 1e-13 * points.scale().max(theta.max_abs()).max(f64::MIN_POSITIVE);
    // Largest mass in a half-open arc [φ_i, φ_i + π); its complement is the
    // smallest closed half-plane.
    let m = dirs.len();
    let in_arc = |i: usize, j: usize| {
        let (a, b) = (dirs[i].0, dirs[j].0);
        // Directions within rounding of collinear count as collinear, so
        // computed arrangement vertices keep the depth of the exact vertex.
        // A perturbation δ of θ moves the cross product by about
        // |δ|(|a| + |b|), and |δ| is a few ulps of the coordinates.
        let c = a.cross(b);
        let tol = coord_tol * (a.norm() + b.norm());
        c > tol || (c.abs() <= tol && a.dot(b) > 0.0)
    };
    let mut best = 0.0f64;
    let mut j = 0usize;
    let mut mass = 0.0;
    for i in 0..m {
        if j < i + 1 {
            j = i + 1;
            mass = dirs[i].1;
        }
        while j < i + m && in_arc(i, j % m) {
            mass += dirs[j % m].1;
            j += 1;
        }
        best = best.max(mass);
        mass -= dirs[i].1;
    }
    (at_theta + (other - best).max(0.0)).clamp(0.0, 1.0)
}

// Counterclockwise angular order starting from the positive x axis.
fn angle_cmp(a: Point2, b: Point2) -> Ordering {
    let half = |p: Point2| if p.y > 0.0 || (p.y == 0.0 && p.x > 0.0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| 0.0f64.total_cmp(&a.cross(b)))
}

/// Result of [`tukey_median_approx`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TukeyMedian {
    pub point: Point2,
    pub depth: f64,
    /// Number of candidate points whose depth was evaluated.
    pub candidates: usize,
}

/// Approximate Tukey median: the average of the deepest points among the
/// data points and the intersections of lines through data pairs.
///
/// Intersections are first filtered by an outer polygon of the region of
/// depth at least the best data-point depth (quantile bounds of the
/// projections on 256 fixed directions), and at most
/// [`TUKEY_CANDIDATE_CAP`] of them are kept, chosen by a fixed seed.
pub fn tukey_median_approx(points: &PointSet) -> TukeyMedian {
    let pts = points.points();
    if pts.len() == 1 {
        return TukeyMedian { point: pts[0], depth: 1.0, candidates: 1 };
    }
    let point_depths: Vec<f64> = pts.iter().map(|&p| tukey_depth(points, p)).collect();
    let floor = point_depths.iter().copied().fold(0.0, f64::max);

    let bounds = depth_polygon(points, floor);
    let slack = 1e-9 * (1.0 + points.scale());
    let inside = |p: Point2| bounds.iter().all(|&(u, q)| u.dot(p) <= q + slack);
    let lines = PairLines::new(points);
    let live: Vec<usize> = (0..lines.len()).filter(|&i| line_meets(&lines, i, &bounds, slack)).collect();
    let mut extra = Vec::new();
    for a in 0..live.len() {
        for b in a + 1..live.len() {
            // Lines sharing a data point meet at that point, already listed.
            if lines.share_endpoint(live[a], live[b]) {
                continue;
            }
            if let Some(p) = lines.intersect(live[a], live[b]) {
                if inside(p) {
                    extra.push(p);
                }
            }
        }
    }
    // Concurrent lines give the same vertex up to rounding; keep one copy.
    extra.sort_by(|a, b| a.lex_cmp(b));
    extra.dedup_by(|a, b| (*a - *b).max_abs() <= slack * 1e-3);
    if extra.len() > TUKEY_CANDIDATE_CAP {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0074_756b_6579);
        let mut keep = sample_indices(&mut rng, extra.len(), TUKEY_CANDIDATE_CAP).into_vec();
        keep.sort_unstable();
        extra = keep.into_iter().map(|i| extra[i]).collect();
    }

    // Visit candidates from the centre of the deepest data points outwards
    // and skip any outside the outer polygon at the best depth so far; such
    // points are shallower than that depth, so the argmax set is unchanged.
    let centre = {
        let deepest: Vec<Point2> =
            pts.iter().zip(&point_depths).filter(|(_, &d)| d >= floor - MASS_TOL).map(|(p, _)| *p).collect();
        deepest.iter().fold(Point2::ORIGIN, |a, &p| a + p) * (1.0 / deepest.len() as f64)
    };
    let mut order: Vec<usize> = (0..extra.len()).collect();
    order.sort_by(|&a, &b| {
        extra[a]
            .dist(centre)
            .total_cmp(&extra[b].dist(centre))
            .then_with(|| extra[a].lex_cmp(&extra[b]))
    });
    let mut best = floor;
    let mut bounds = bounds;
    let mut extra_depths: Vec<Option<f64>> = vec![None; extra.len()];
    for &k in &order {
        let p = extra[k];
        if !bounds.iter().all(|&(u, q)| u.dot(p) <= q + slack) {
            continue;
        }
        let d = tukey_depth(points, p);
        extra_depths[k] = Some(d);
        if d > best + MASS_TOL {
            best = d;
            bounds = depth_polygon(points, best);
        }
    }

    let evaluated = pts.len() + extra_depths.iter().filter(|d| d.is_some()).count();
    let mut sum = Point2::ORIGIN;
    let mut count = 0usize;
    let all = pts.iter().zip(point_depths.iter().map(|&d| Some(d))).chain(extra.iter().zip(extra_depths));
    for (p, d) in all {
        if d.is_some_and(|d| d >= best - MASS_TOL) {
            sum = sum + *p;
            count += 1;
        }
    }
    let point = sum * (1.0 / count as f64);
    TukeyMedian { point, depth: tukey_depth(points, point), candidates: evaluated }
}

// Half-planes u·x ≤ q that contain every point of depth ≥ `level`.
fn depth_polygon(points: &PointSet, level: f64) -> Vec<(Point2, f64)> {
    const DIRECTIONS: usize = 256;
    let mut out = Vec::with_capacity(DIRECTIONS);
    let mut proj: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for k in 0..DIRECTIONS {
        let (s, c) = (2.0 * PI * k as f64 / DIRECTIONS as f64).sin_cos();
        let u = Point2::new(c, s);
        proj.clear();
        proj.extend(points.iter().map(|(p, w)| (u.dot(p), w)));
        proj.sort_by(|a, b| b.0.total_cmp(&a.0));
        // θ with depth ≥ level has mass ≥ level in {u·x ≥ u·θ}.
        let mut acc = 0.0;
        let mut q = proj[proj.len() - 1].0;
        for &(v, w) in &proj {
            acc += w;
            if acc >= level - MASS_TOL {
                q = v;
                break;
            }
        }
        out.push((u, q));
    }
    out
}

// Whether line `i` passes within `slack` of the polygon's half-plane
// intersection, tested by clipping the line parametrically.
fn line_meets(lines: &PairLines, i: usize, bounds: &[(Point2, f64)], slack: f64) -> bool {
    let n = Point2::new(lines.nx[i], lines.ny[i]);
    let nn = n.norm_sq();
    if nn == 0.0 {
        return false;
    }
    let base = n * (-lines.c[i] / nn);
    let dir = n.perp();
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for &(u, q) in bounds {
        let a = u.dot(dir);
        let b = q + slack - u.dot(base);
        if a == 0.0 {
            if b < 0.0 {
                return false;
            }
        } else if a > 0.0 {
            hi = hi.min(b / a);
        } else {
            lo = lo.max(b / a);
        }
        if lo > hi {
            return false;
        }
    }
    true
}
