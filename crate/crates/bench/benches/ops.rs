use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use poinf::congruence::{alpha_f, sigma_equiv};
use poinf::dsl::{eval_str, print};
use poinf::equations::solve_right;
use poinf::oracle::{bf_check, enumerate_elements, truncate, RandomParams};
use poinf::quotient::iota_map;
use poinf_bench::{elements, equations, plus_elements};

fn params(max_window: u32) -> RandomParams {
    RandomParams { max_window, max_shift: 4, hole_budget: 6 }
}

fn element_ops(c: &mut Criterion) {
    let mut g = c.benchmark_group("element");
    for w in [4, 8, 16] {
        let es = elements(64, params(w));
        g.bench_with_input(BenchmarkId::new("compose", w), &es, |b, es| {
            b.iter(|| es.windows(2).map(|p| p[0].compose(&p[1]).bound()).sum::<u32>())
        });
        g.bench_with_input(BenchmarkId::new("normalize", w), &es, |b, es| {
            let big: Vec<_> = es.iter().map(|a| a.expand(a.bound() + 6)).collect();
            b.iter(|| big.iter().map(|a| a.normalize().bound()).sum::<u32>())
        });
        g.bench_with_input(BenchmarkId::new("validate", w), &es, |b, es| {
            b.iter(|| es.iter().filter(|a| a.plus().validate().is_valid()).count())
        });
    }
    g.finish();
}

fn oracle_ops(c: &mut Criterion) {
    let es = elements(16, params(8));
    c.bench_function("oracle/bf_check_24", |b| {
        b.iter(|| es.iter().filter(|a| bf_check(&truncate(a, 24)).is_valid()).count())
    });
    c.bench_function("oracle/enumerate_2_1", |b| b.iter(|| enumerate_elements(black_box(2), black_box(1)).len()));
}

fn quotient_ops(c: &mut Criterion) {
    let es = elements(64, params(8));
    let ps = plus_elements(64, params(8));
    c.bench_function("quotient/iota_map", |b| {
        b.iter(|| es.iter().map(|a| iota_map(a).word.support_len()).sum::<usize>())
    });
    c.bench_function("quotient/alpha_f", |b| b.iter(|| ps.iter().map(|a| alpha_f(a).unwrap().bound()).sum::<u32>()));
    c.bench_function("quotient/sigma_equiv", |b| {
        b.iter(|| ps.windows(2).filter(|p| sigma_equiv(&p[0], &p[1])).count())
    });
}

fn solve_ops(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_right");
    for w in [2, 4, 6] {
        let eqs = equations(16, RandomParams { max_window: w, max_shift: 2, hole_budget: 4 });
        g.bench_with_input(BenchmarkId::from_parameter(w), &eqs, |b, eqs| {
            b.iter(|| eqs.iter().map(|(a, x)| solve_right(a, x, None).unwrap().len()).sum::<usize>())
        });
    }
    g.finish();
}

fn dsl_ops(c: &mut Criterion) {
    let es = elements(64, params(6));
    let texts: Vec<String> = es.iter().map(print).collect();
    c.bench_function("dsl/print", |b| b.iter(|| es.iter().map(|a| print(a).len()).sum::<usize>()));
    c.bench_function("dsl/eval", |b| b.iter(|| texts.iter().map(|t| eval_str(t).unwrap().bound()).sum::<u32>()));
}

criterion_group!(benches, element_ops, oracle_ops, quotient_ops, solve_ops, dsl_ops);
criterion_main!(benches);
