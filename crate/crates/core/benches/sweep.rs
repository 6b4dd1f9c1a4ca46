use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hessmult_core::solver::{a_matrix, DescentTable, HessTable};
use hessmult_core::{Exec, HessFunction};

fn execs() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn descent_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("descent_table");
    group.sample_size(10);
    for n in [7usize, 8] {
        for (name, exec) in execs() {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| DescentTable::build(black_box(n), 9, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn hess_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("hess_table");
    group.sample_size(10);
    let h: HessFunction = "3,4,5,6,7,8,8,8".parse().unwrap();
    for (name, exec) in execs() {
        group.bench_function(BenchmarkId::new(name, h.n()), |b| {
            b.iter(|| HessTable::build(black_box(&h), 9, exec).unwrap())
        });
    }
    group.finish();
}

fn a_matrix_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("a_matrix");
    group.sample_size(10);
    for (name, exec) in execs() {
        group.bench_function(BenchmarkId::new(name, 8), |b| {
            b.iter(|| a_matrix(black_box(8), 9, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, descent_table, hess_table, a_matrix_build);
criterion_main!(benches);
