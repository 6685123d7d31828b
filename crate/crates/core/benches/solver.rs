use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use quarter_median::elliptical::sample;
use quarter_median::solver::solve_exact_with;
use quarter_median::{DensityGenerator, EllipticalModel, Execution, RandomStream};

fn bench_solve_exact(c: &mut Criterion) {
    let model = EllipticalModel::axis_aligned(DensityGenerator::normal(), 0.5).unwrap();
    let mut group = c.benchmark_group("solve_exact");
    group.sample_size(10);
    for n in [50usize, 100, 200] {
        let points = sample(&model, n, &RandomStream::new(1)).unwrap();
        for (label, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
            group.bench_with_input(BenchmarkId::new(label, n), &points, |b, pts| {
                b.iter(|| solve_exact_with(pts, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_solve_exact);
criterion_main!(benches);
