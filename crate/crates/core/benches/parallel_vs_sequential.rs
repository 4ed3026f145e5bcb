use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hoops::enumerate::{enumerate_hoops_with, sqrt_census, EnumerateOptions};
use hoops::parametric::{ParametricHoop, SamplePlan};
use hoops::term::{run_catalog, FiniteModel, Model, ParametricModel};
use hoops::Exec;

const STRATEGIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate size 6");
    g.sample_size(20);
    for (name, exec) in STRATEGIES {
        let opts = EnumerateOptions {
            extended: true,
            exec,
        };
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| enumerate_hoops_with(6, opts).unwrap())
        });
    }
    g.finish();
}

fn census(c: &mut Criterion) {
    let models = enumerate_hoops_with(
        6,
        EnumerateOptions {
            extended: true,
            exec: Exec::default(),
        },
    )
    .unwrap();
    let mut g = c.benchmark_group("census size 6");
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| sqrt_census(&models, exec))
        });
    }
    g.finish();
}

fn audits(c: &mut Criterion) {
    let sampled =
        ParametricModel::new(ParametricHoop::lukasiewicz(), SamplePlan::default()).unwrap();
    let finite: Vec<FiniteModel> = (1..=5)
        .flat_map(|n| {
            enumerate_hoops_with(n, EnumerateOptions::default())
                .unwrap()
                .models
        })
        .map(FiniteModel::new)
        .collect();
    let mut g = c.benchmark_group("catalog audit");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::new("lukasiewicz 256 samples", name), |b| {
            b.iter(|| run_catalog(Model::Sampled(&sampled), None, exec))
        });
        g.bench_function(BenchmarkId::new("enumerated up to 5", name), |b| {
            b.iter(|| {
                for m in &finite {
                    run_catalog(Model::Finite(m), None, exec);
                }
            })
        });
    }
    g.finish();
}

criterion_group!(benches, enumeration, census, audits);
criterion_main!(benches);
