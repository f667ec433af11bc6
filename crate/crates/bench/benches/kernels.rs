use std::collections::BTreeMap;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fracwave_bench::{linspace, order, ORDERS};
use fracwave_core::{
    derive_system, evaluate_solution, jumarie_derivative, mittag_leffler_real, solve_closed_form, solve_numeric,
    AuxParams, ClosedFormParams, Family, QuadratureSpec, SignBranch, SolutionSpec, Symbol, WaveEquation,
};

fn mittag_leffler(c: &mut Criterion) {
    let xs = linspace(-5.0, 5.0, 64);
    let mut group = c.benchmark_group("mittag_leffler");
    for alpha in ORDERS {
        group.bench_with_input(BenchmarkId::from_parameter(alpha), &alpha, |b, &alpha| {
            b.iter(|| {
                xs.iter()
                    .map(|&x| mittag_leffler_real(alpha, black_box(x)).unwrap())
                    .sum::<f64>()
            })
        });
    }
    group.finish();
}

fn jumarie(c: &mut Criterion) {
    let spec = QuadratureSpec::default();
    let mut group = c.benchmark_group("jumarie_derivative");
    for alpha in [0.3, 0.5, 0.8] {
        group.bench_with_input(BenchmarkId::from_parameter(alpha), &alpha, |b, &alpha| {
            b.iter(|| jumarie_derivative(|xi: f64| xi.powf(1.5), order(alpha), black_box(1.0), &spec).unwrap())
        });
    }
    group.finish();
}

fn solvers(c: &mut Criterion) {
    c.bench_function("derive_system/kdv", |b| {
        b.iter(|| derive_system(black_box(WaveEquation::Kdv)))
    });

    let params = ClosedFormParams::from_f64(1.0, 0.5, -1.0, 0.25).unwrap();
    c.bench_function("solve_closed_form/kdv", |b| {
        b.iter(|| solve_closed_form(WaveEquation::Kdv, black_box(&params)).unwrap())
    });

    let system = derive_system(WaveEquation::Mkdv);
    let fixed: BTreeMap<Symbol, f64> = [(Symbol::Dispersion, 1.0), (Symbol::Lambda, 0.5), (Symbol::Mu, -1.0)]
        .into_iter()
        .collect();
    c.bench_function("solve_numeric/mkdv_64_starts", |b| {
        b.iter(|| solve_numeric(&system, black_box(&fixed), 64).unwrap())
    });
}

fn sampling(c: &mut Criterion) {
    let aux = AuxParams::new(0.0, -1.0, 1.0, 0.0).unwrap();
    let xs = linspace(-5.0, 5.0, 256);
    let mut group = c.benchmark_group("evaluate_solution/kdv_sech");
    for alpha in ORDERS {
        let spec = SolutionSpec::new(
            WaveEquation::Kdv,
            Family::Sech,
            order(alpha),
            aux,
            0.0,
            1.0,
            SignBranch::Plus,
        )
        .unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(alpha), &spec, |b, spec| {
            b.iter(|| {
                xs.iter()
                    .filter_map(|&x| evaluate_solution(spec, black_box(x), 0.1).ok())
                    .sum::<f64>()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, mittag_leffler, jumarie, solvers, sampling);
criterion_main!(benches);
