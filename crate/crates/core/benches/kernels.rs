use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use eunorm::cocycles::{self, CocOptions};
use eunorm::fixtures::{self, SurfaceTriangulation};
use eunorm::montecarlo::{itu_estimate, ItuOptions, SampleMode};
use eunorm::random::{self, trial_rng, DEFAULT_RANGE};
use eunorm::simplicial::{euler_number, EulerMode};
use eunorm::verify::{run_suite, Suite, VerifyConfig};
use eunorm::ExecPolicy;

const POLICIES: [(&str, ExecPolicy); 2] = [("sequential", ExecPolicy::Sequential), ("parallel", ExecPolicy::Parallel)];

fn naive_deflation(c: &mut Criterion) {
    let mut group = c.benchmark_group("coc_naive_n2");
    let tuples: Vec<_> = (0..32)
        .map(|t| random::flag_tuple(&mut trial_rng(1, t), 2, 3, DEFAULT_RANGE, 0.3))
        .collect();
    for (name, policy) in POLICIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                for fs in &tuples {
                    cocycles::coc(fs, CocOptions::naive().with_policy(policy)).unwrap();
                }
            })
        });
    }
    group.bench_function("factorized", |b| {
        b.iter(|| {
            for fs in &tuples {
                cocycles::coc(fs, CocOptions::factorized()).unwrap();
            }
        })
    });
    group.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let mut group = c.benchmark_group("itu_100k");
    let gs = eunorm::io::MatrixTupleFile {
        n: 2,
        gs: vec![vec![vec![1.0, 0.0], vec![0.0, 1.0]], vec![vec![2.0, 1.0], vec![1.0, 1.0]], vec![vec![0.0, -1.0], vec![1.0, 0.5]]],
    }
    .into_matrices()
    .unwrap();
    for (name, policy) in POLICIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| itu_estimate(&gs, ItuOptions::new(100_000, 7, SampleMode::Ball).with_policy(policy)).unwrap())
        });
    }
    group.finish();
}

fn genus_two_euler(c: &mut Criterion) {
    let mut group = c.benchmark_group("euler_genus2");
    let surface = SurfaceTriangulation::new(2).unwrap();
    let gens = fixtures::exact_surface_representation(&fixtures::fuchsian_generators(2)).unwrap();
    let section = fixtures::random_section(&mut trial_rng(3, 0), surface.vertex_count, 2, DEFAULT_RANGE);
    let bundle = surface.bundle(&gens, section).unwrap();
    for (name, policy) in POLICIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| euler_number(&bundle, EulerMode::Smillie, policy).unwrap())
        });
    }
    group.finish();
}

fn verify_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_cocycle_coco_64");
    group.sample_size(20);
    for (name, policy) in POLICIES {
        let cfg = VerifyConfig {
            seed: 1,
            trials: 64,
            policy,
            ..VerifyConfig::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| run_suite(Suite::CocycleCoco, &cfg)));
    }
    group.finish();
}

criterion_group!(benches, naive_deflation, monte_carlo, genus_two_euler, verify_suite);
criterion_main!(benches);
