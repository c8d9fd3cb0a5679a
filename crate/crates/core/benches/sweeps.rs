use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hypercoh::exec::map_ordered;
use hypercoh::moments::{verify_moments, weight_case, MomentFilter};
use hypercoh::statistics::{mandel_q, sample_photon_counts};
use hypercoh::{Execution, ParamSet, Parity, StateSpec};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn moments(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_moments");
    group.sample_size(10);
    for spec in ["/", "2.5/", "1.5,2.2/1.3"] {
        let case = weight_case(&ParamSet::parse(spec).unwrap()).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, spec), &case, |b, case| {
                b.iter(|| verify_moments(black_box(case), 20, 1e-10, MomentFilter::All, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn mandel_grid(c: &mut Criterion) {
    let params = ParamSet::parse("1.5/0.8").unwrap();
    let xs: Vec<f64> = (1..=400).map(|i| f64::from(i) * 0.02).collect();
    let mut group = c.benchmark_group("mandel_grid_400");
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                map_ordered(exec, &xs, |&x| {
                    mandel_q(&StateSpec::with_x(params.clone(), Parity::Even, x).unwrap()).unwrap().q_value
                })
            })
        });
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let state = StateSpec::with_x(ParamSet::empty(), Parity::Even, 4.0).unwrap();
    let mut group = c.benchmark_group("sample_1e6");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| sample_photon_counts(&state, 1_000_000, 42, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, moments, mandel_grid, sampling);
criterion_main!(benches);
