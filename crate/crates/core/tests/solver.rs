use proptest::prelude::*;
use quarter_median::elliptical::{sample_points, DensityGenerator, EllipticalModel, Family};
use quarter_median::solver::{canonical_quarter_median, solve_exact_with, solve_scan};
use quarter_median::{mass_report, Execution, Frame, MassReport, Point2, PointSet, RandomStream};

fn dataset(seed: u64, n: usize, family: usize) -> Vec<Point2> {
    let g = DensityGenerator::built_in(Family::BUILT_IN[family % 5]).unwrap();
    let m = EllipticalModel::new(Point2::new(1.0, -2.0), 3.0, 0.4, 0.9, g).unwrap();
    sample_points(&m, n, &RandomStream::new(seed)).unwrap()
}

fn counts(r: &MassReport, n: usize) -> ([i64; 4], [i64; 4]) {
    let mut h = r.half_masses.map(|m| (m * n as f64).round() as i64);
    let mut q = r.quad_masses.map(|m| (m * n as f64).round() as i64);
    h.sort_unstable();
    q.sort_unstable();
    (h, q)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_solver_always_validates(seed in 0u64..100_000, n in 1usize..80, family in 0usize..5) {
        let ps = PointSet::new(&dataset(seed, n, family)).unwrap();
        let r = solve_exact_with(&ps, Execution::Sequential).unwrap();
        prop_assert!(r.canonical.is_valid());
        prop_assert!(mass_report(&ps, r.canonical.theta, r.canonical.frame).is_valid());
        prop_assert_eq!(canonical_quarter_median(&ps).unwrap(), r.canonical);
        prop_assert_eq!(solve_exact_with(&ps, Execution::Parallel).unwrap().solutions, r.solutions);
    }

    #[test]
    fn degenerate_sets_are_solved(seed in 0u64..100_000, n in 2usize..40, dups in 0usize..5) {
        // Points on a line with repeated rows.
        let base = dataset(seed, n, 0);
        let dir = Point2::new(0.6, 0.8);
        let mut raw: Vec<Point2> = base.iter().map(|p| dir * p.x.round()).collect();
        for k in 0..dups {
            raw.push(raw[k % raw.len()]);
        }
        let ps = PointSet::new(&raw).unwrap();
        let r = solve_exact_with(&ps, Execution::Sequential).unwrap();
        prop_assert!(mass_report(&ps, r.canonical.theta, r.canonical.frame).is_valid());
    }

    #[test]
    fn canonical_solution_is_equivariant(
        seed in 0u64..100_000,
        n in 1usize..60,
        angle in -3.1f64..3.1,
        scale in 0.01f64..100.0,
        sx in -50.0f64..50.0,
        sy in -50.0f64..50.0,
    ) {
        let raw = dataset(seed, n, seed as usize);
        let shift = Point2::new(sx, sy);
        let map = |p: Point2| p.rotate(angle) * scale + shift;
        let ps = PointSet::new(&raw).unwrap();
        let moved = PointSet::new(&raw.iter().map(|&p| map(p)).collect::<Vec<_>>()).unwrap();
        let sol = canonical_quarter_median(&ps).unwrap();
        let theta = map(sol.theta);
        let frame = Frame::new(sol.frame.alpha() + angle);
        let before = mass_report(&ps, sol.theta, sol.frame);
        let after = mass_report(&moved, theta, frame);
        prop_assert!(after.is_valid());
        prop_assert_eq!(counts(&before, n), counts(&after, n));
    }

    #[test]
    fn row_order_does_not_matter(seed in 0u64..100_000, n in 2usize..60, rot in 1usize..59) {
        let mut raw = dataset(seed, n, 3);
        let a = canonical_quarter_median(&PointSet::new(&raw).unwrap()).unwrap();
        raw.rotate_left(rot % n);
        raw.reverse();
        let b = canonical_quarter_median(&PointSet::new(&raw).unwrap()).unwrap();
        prop_assert_eq!(a.theta.x.to_bits(), b.theta.x.to_bits());
        prop_assert_eq!(a.theta.y.to_bits(), b.theta.y.to_bits());
        prop_assert_eq!(a.frame.alpha().to_bits(), b.frame.alpha().to_bits());
    }

    #[test]
    fn scan_hits_validate(seed in 0u64..100_000, n in 4usize..40) {
        let ps = PointSet::new(&dataset(seed, n, 1)).unwrap();
        if let Ok(r) = solve_scan(&ps, 90) {
            for s in &r.solutions {
                prop_assert!(mass_report(&ps, s.theta, s.frame).is_valid());
            }
        }
    }
}
