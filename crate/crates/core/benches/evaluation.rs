use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use opm_core::{cps_structure, eval_objective_with, lookup, setup, EvalRequest, ExecPolicy};

fn assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("eval_objective");
    for (name, n) in [("rosenbr", 1_000), ("rosenbr", 100_000), ("lminsurf", 10_000), ("dixmaanl", 30_000)] {
        let p = lookup(name).unwrap();
        let x = setup(p, &[n as f64]).unwrap().x0;
        let s = cps_structure(p, n).unwrap();
        for (label, policy) in [("sequential", ExecPolicy::Sequential), ("parallel", ExecPolicy::Parallel)] {
            group.bench_with_input(BenchmarkId::new(format!("{name}/{label}"), n), &x, |b, x| {
                b.iter(|| eval_objective_with(policy, p, black_box(x), EvalRequest::ALL, Some(&s)).unwrap())
            });
        }
    }
    group.finish();
}

fn structure_reuse(c: &mut Criterion) {
    let p = lookup("rosenbr").unwrap();
    let n = 10_000;
    let x = setup(p, &[n as f64]).unwrap().x0;
    let s = cps_structure(p, n).unwrap();
    let mut group = c.benchmark_group("structure");
    group.bench_function("cached", |b| {
        b.iter(|| eval_objective_with(ExecPolicy::Auto, p, black_box(&x), EvalRequest::GRADIENT, Some(&s)).unwrap())
    });
    group.bench_function("rebuilt", |b| {
        b.iter(|| eval_objective_with(ExecPolicy::Auto, p, black_box(&x), EvalRequest::GRADIENT, None).unwrap())
    });
    group.finish();
}

criterion_group!(benches, assembly, structure_reuse);
criterion_main!(benches);
