use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use indexbound::bounds::{bound_report, SearchOptions};
use indexbound::charsum::trace_distribution;
use indexbound::poly::{minimize_index, support_class, DEFAULT_BUDGET};
use indexbound_bench::{fixture, ONE};

fn distributions(c: &mut Criterion) {
    let mut group = c.benchmark_group("trace_distribution");
    for (p, m) in [(3u64, 3u32), (2, 8), (3, 6), (2, 12)] {
        let (field, f) = fixture(p, m, "x^13 + a*x^4 + x", 1);
        group.bench_with_input(BenchmarkId::from_parameter(field.q()), &f, |b, f| {
            b.iter(|| trace_distribution(&field, black_box(f), ONE).unwrap())
        });
    }
    group.finish();
}

fn searches(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimize_index");
    for (p, m, expr) in [
        (3u64, 3u32, "x^25 + a*x^4"),
        (3, 4, "x^44 + a*x^28"),
        (2, 8, "x^57 + a*x^12"),
        (2, 6, "x^27 + a*x^9 + x^3"),
    ] {
        let (field, f) = fixture(p, m, expr, 1);
        group.bench_function(format!("{expr} over {}", field.q()), |b| {
            b.iter(|| minimize_index(&field, black_box(&f), ONE, DEFAULT_BUDGET).unwrap())
        });
    }
    group.finish();
}

fn reports(c: &mut Criterion) {
    let (field, f) = fixture(3, 4, "x^108 + a*x^2", 1);
    c.bench_function("bound_report with oracle, q = 81", |b| {
        b.iter(|| bound_report(&field, black_box(&f), ONE, SearchOptions::default(), true).unwrap())
    });
    c.bench_function("support_class table row (3, 5, 154, 11)", |b| {
        b.iter(|| support_class(black_box(&[154, 11]), 3, 5, DEFAULT_BUDGET).unwrap())
    });
}

criterion_group!(benches, distributions, searches, reports);
criterion_main!(benches);
