use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use genus_core::genus::SolverOptions;
use genus_core::scaffold::{gamma_t, milgram_graph};
use genus_core::survey::{census, generate_cubic, CensusOptions, CubicFilters, DEFAULT_STATE_BUDGET};
use genus_core::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn solver(exec: Exec) -> SolverOptions {
    SolverOptions {
        exec,
        ..SolverOptions::default()
    }
}

fn bench_census(c: &mut Criterion) {
    let graphs = generate_cubic(14, CubicFilters::census(), DEFAULT_STATE_BUDGET).unwrap();
    let mut group = c.benchmark_group("census_n14");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = CensusOptions {
            solver: solver(exec),
            ..CensusOptions::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| census(black_box(graphs.clone()).into_iter().enumerate(), 14, "bench", &opts).unwrap())
        });
    }
    group.finish();
}

fn bench_chordings(c: &mut Criterion) {
    let (host, t) = milgram_graph(6).unwrap();
    let mut group = c.benchmark_group("gamma_t_k6");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = solver(exec);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| gamma_t(black_box(&host), &t, &opts).unwrap().gamma)
        });
    }
    group.finish();
}

fn bench_min_genus(c: &mut Criterion) {
    let g = genus_core::named::k33();
    let mut big = g.clone();
    for _ in 0..2 {
        let v = big.vertices()[0];
        big = genus_core::bar_amalgamation(&big, v, &g, g.vertices()[0]).unwrap();
    }
    let mut group = c.benchmark_group("min_genus_k33x3");
    for (name, exec) in MODES {
        let opts = solver(exec);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| genus_core::genus::min_genus(black_box(&big), &opts).unwrap().genus)
        });
    }
    group.finish();
}

criterion_group!(benches, bench_census, bench_chordings, bench_min_genus);
criterion_main!(benches);
