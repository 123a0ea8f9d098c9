use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mclab_bench::explicit;
use mclab_core::reductions::formula_fixed_formula;
use mclab_core::{mc_exists, to_buchi};

fn tableau(c: &mut Criterion) {
    let mut g = c.benchmark_group("to_buchi");
    for n in [2, 3, 4] {
        let phi = formula_fixed_formula(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &phi, |b, phi| b.iter(|| to_buchi(phi).unwrap()));
    }
    g.finish();
}

fn check(c: &mut Criterion) {
    let mut g = c.benchmark_group("mc_exists");
    for (name, model_fixed) in [("model_fixed", true), ("formula_fixed", false)] {
        for n in [2, 3] {
            let (k, phi) = explicit(n, model_fixed);
            g.bench_with_input(BenchmarkId::new(name, n), &(k, phi), |b, (k, phi)| {
                b.iter(|| mc_exists(k, phi).unwrap().holds)
            });
        }
    }
    g.finish();
}

criterion_group!(benches, tableau, check);
criterion_main!(benches);
