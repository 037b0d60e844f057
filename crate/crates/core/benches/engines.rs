use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use pvform::enriques::{enumerate_separations, EnumerationOptions};
use pvform::par::Execution;
use pvform::quadspace::QuadraticSpace;
use pvform::surface::SurfaceUnion;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_separations");
    for case in ["4V1+2S", "V2+2V1+3S", "V3+V1+4S"] {
        let u: SurfaceUnion = case.parse().unwrap();
        for (name, execution) in MODES {
            let opts = EnumerationOptions {
                execution,
                ..Default::default()
            };
            group.bench_with_input(BenchmarkId::new(name, case), &u, |b, u| {
                b.iter(|| enumerate_separations(black_box(u), &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn brown_sweep(c: &mut Criterion) {
    let spaces: Vec<QuadraticSpace> = QuadraticSpace::enumerate_all(4).collect();
    let mut group = c.benchmark_group("brown_dim4_sweep");
    group.sample_size(10);
    for (name, execution) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| execution.map(&spaces, |s| s.brown() == s.brown_by_decomposition()))
        });
    }
    group.finish();
}

criterion_group!(benches, enumeration, brown_sweep);
criterion_main!(benches);
